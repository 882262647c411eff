// Member page: participation badge and the two friend lists.

import { ApiClient, UserProfile } from "../api.js";
import { el, link } from "../dom.js";

const BADGES: Record<string, string> = {
  passive_consumption: "Passive consumer",
  active_consumption: "Active consumer",
  passive_production: "Passive producer",
  active_production: "Active producer",
};

export function renderProfile(profile: UserProfile, api: ApiClient,
                              refresh: () => void,
                              notify: (message: string, isError?: boolean) => void): HTMLElement {
  const root = el("div.profile", el("h2", profile.username));
  const badge = el("span.participation-badge", BADGES[profile.participation_state]
    ?? profile.participation_state);
  badge.dataset.state = profile.participation_state;
  root.append(el("p", "since ", el("span.since", profile.created_at), " · ", badge));

  root.append(renderNames("Follows", profile.friends, "friends"));
  root.append(renderNames("Followers", profile.followers, "followers"));

  const self = api.credentials?.username;
  if (self && self !== profile.username && !profile.followers.includes(self)) {
    const button = el("button.follow", `Follow ${profile.username}`);
    button.addEventListener("click", async () => {
      try {
        await api.addFriend(self, profile.username);
        refresh();
      } catch (err) {
        notify(String((err as Error).message), true);
      }
    });
    root.append(button);
  }
  return root;
}

function renderNames(heading: string, names: string[], className: string): HTMLElement {
  const box = el(`section.${className}`, el("h3", heading));
  if (!names.length) {
    box.append(el("p.empty", "nobody yet"));
    return box;
  }
  const list = el("ul");
  for (const name of names) {
    list.append(el("li", link(`#/users/${name}`, name)));
  }
  box.append(list);
  return box;
}
