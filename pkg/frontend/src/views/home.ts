// Home page: the four discovery lists, in exactly the order the API sent.

import { FrontEntry, FrontPage } from "../api.js";
import { el, link } from "../dom.js";

const LISTS: { key: keyof FrontPage; heading: string; metric: (e: FrontEntry) => string }[] = [
  { key: "newest", heading: "Newest", metric: (e) => e.uploaded_at ?? "" },
  {
    key: "top_rated",
    heading: "Top rated",
    metric: (e) => (e.rating_mean !== undefined ? `★ ${e.rating_mean} (${e.rating_count})` : ""),
  },
  { key: "most_remixed", heading: "Most remixed", metric: (e) => `${e.remix_count} remixes` },
  { key: "featured", heading: "Featured", metric: (e) => e.uploaded_at ?? "" },
];

export function renderHome(page: FrontPage): HTMLElement {
  const root = el("div.home");
  for (const section of LISTS) {
    const entries = page[section.key];
    const box = el("section.front-list", el("h2", section.heading));
    box.dataset.list = section.key;
    if (entries.length === 0) {
      box.append(el("p.empty", "Nothing here yet."));
    } else {
      const ul = el("ul");
      for (const entry of entries) {
        const li = el(
          "li.front-entry",
          link(`#/projects/${entry.project_id}`, entry.title, "title"),
          el("span.author", ` by ${entry.author} `),
          el("span.metric", section.metric(entry)),
        );
        li.dataset.projectId = String(entry.project_id);
        ul.append(li);
      }
      box.append(ul);
    }
    root.append(box);
  }
  return root;
}

export function renderApiDownBanner(onRetry: () => void): HTMLElement {
  const button = el("button.retry", "Retry");
  button.addEventListener("click", onRetry);
  return el("div.banner.error", el("span", "The server is unreachable. "), button);
}
