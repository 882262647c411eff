// Hash-routed single page app. Responses landing after a newer
// navigation are discarded via a request sequence number.

import { ApiClient } from "./api.js";
import { clear, el, link } from "./dom.js";
import { renderApiDownBanner, renderHome } from "./views/home.js";
import { loadStoredCredentials, renderLogin, storeCredentials } from "./views/login.js";
import { renderProfile } from "./views/profile.js";
import { renderProject } from "./views/project.js";
import { renderUploadError, renderUploadForm, renderUploadResult } from "./views/upload.js";

export class App {
  api: ApiClient;
  main: HTMLElement;
  header: HTMLElement;
  notices: HTMLElement;
  private seq = 0;
  private routedHash: string | null = null;

  constructor(root: HTMLElement, api = new ApiClient()) {
    this.api = api;
    this.api.credentials = loadStoredCredentials();
    this.header = el("header.topbar");
    this.notices = el("div.notices");
    this.main = el("main.content");
    root.append(this.header, this.notices, this.main);
    // programmatic navigation may already have routed this hash; only
    // genuine user navigation re-renders
    window.addEventListener("hashchange", () => {
      if ((window.location.hash || "#/") !== this.routedHash) {
        void this.route();
      }
    });
  }

  start(): Promise<void> {
    return this.route();
  }

  notify(message: string, isError = false): void {
    const note = el(isError ? "div.notice.error" : "div.notice", message);
    this.notices.append(note);
    setTimeout(() => note.remove(), 6000);
  }

  private renderHeader(): void {
    clear(this.header);
    this.header.append(
      link("#/", "remixhub", "brand"),
      link("#/upload", "share a project", "nav-upload"),
    );
    const who = this.api.credentials;
    if (who) {
      const out = el("button.logout", "sign out");
      out.addEventListener("click", () => {
        this.api.credentials = null;
        storeCredentials(null);
        void this.route();
      });
      this.header.append(link(`#/users/${who.username}`, who.username, "whoami"), out);
    } else {
      this.header.append(link("#/login", "sign in", "nav-login"));
    }
  }

  async route(): Promise<void> {
    const ticket = ++this.seq;
    this.renderHeader();
    const hash = window.location.hash || "#/";
    this.routedHash = hash;
    const parts = hash.replace(/^#\//, "").split("/").filter(Boolean);

    const show = (node: HTMLElement) => {
      if (ticket === this.seq) {
        clear(this.main).append(node);
      }
    };

    try {
      if (parts.length === 0) {
        show(renderHome(await this.api.frontPage()));
      } else if (parts[0] === "projects" && parts[1]) {
        const id = Number(parts[1]);
        const summary = await this.api.projectSummary(id);
        show(renderProject(summary, {
          api: this.api,
          projectId: id,
          refresh: () => void this.route(),
          notify: (m, e) => this.notify(m, e),
        }));
      } else if (parts[0] === "users" && parts[1]) {
        const profile = await this.api.profile(parts[1]);
        show(renderProfile(profile, this.api, () => void this.route(),
                           (m, e) => this.notify(m, e)));
      } else if (parts[0] === "upload") {
        const view = el("div");
        view.append(renderUploadForm(
          this.api,
          (resp) => {
            view.append(renderUploadResult(resp));
          },
          (code, message) => {
            view.append(renderUploadError(code, message));
          },
        ));
        show(view);
      } else if (parts[0] === "login") {
        show(renderLogin(this.api, () => {
          window.location.hash = "#/";
          void this.route();
        }, (m, e) => this.notify(m, e)));
      } else {
        show(el("div.not-found", el("h2", "404"), el("p", "No such page.")));
      }
    } catch (err) {
      const failure = err as { status?: number; message: string };
      if (failure.status === 404) {
        show(el("div.not-found", el("h2", "404"), el("p", failure.message)));
      } else if (failure.status !== undefined) {
        show(el("div.error-page", el("h2", "Request failed"), el("p", failure.message)));
      } else {
        show(renderApiDownBanner(() => void this.route()));
      }
    }
  }
}

export function mount(root: HTMLElement): App {
  const app = new App(root);
  void app.start();
  return app;
}

declare global {
  interface Window {
    remixhubApp?: App;
  }
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  window.remixhubApp = mount(document.getElementById("app") as HTMLElement);
}
