// Rendering is a pure function of API payloads: every value on screen
// must be traceable to one payload field, in the payload's order.

import { describe, expect, it } from "vitest";

import { FrontPage, LineageNode, ProjectSummary, UploadResponse } from "../src/api.js";
import { renderHome } from "../src/views/home.js";
import { renderInventory, renderLineageNode, renderProject } from "../src/views/project.js";
import { renderUploadError, renderUploadResult } from "../src/views/upload.js";
import { renderProfile } from "../src/views/profile.js";
import { ApiClient } from "../src/api.js";

const noopDeps = {
  api: new ApiClient("http://unused.invalid"),
  projectId: 2,
  refresh: () => {},
  notify: () => {},
};

function frontPage(): FrontPage {
  return {
    featured: [],
    most_remixed: [
      { author: "ana", project_id: 1, title: "Cat", remix_count: 3 },
      { author: "ben", project_id: 2, title: "Dog", remix_count: 3 },
    ],
    newest: [
      { author: "ben", project_id: 2, title: "Dog", uploaded_at: "2026-05-02T10:00:00Z" },
      { author: "ana", project_id: 1, title: "Cat", uploaded_at: "2026-05-01T10:00:00Z" },
    ],
    top_rated: [
      { author: "ana", project_id: 1, title: "Cat", rating_mean: "4.50", rating_count: 2 },
    ],
  };
}

describe("home", () => {
  it("renders the four lists in payload order, no client sorting", () => {
    const page = renderHome(frontPage());
    const lists = page.querySelectorAll("section.front-list");
    expect(lists.length).toBe(4);

    const newest = page.querySelector('[data-list="newest"]')!;
    const ids = [...newest.querySelectorAll("li")].map((li) => li.dataset.projectId);
    expect(ids).toEqual(["2", "1"]); // exactly as the payload ordered them

    const remixed = page.querySelector('[data-list="most_remixed"]')!;
    const remixIds = [...remixed.querySelectorAll("li")].map((li) => li.dataset.projectId);
    expect(remixIds).toEqual(["1", "2"]);
    expect(remixed.textContent).toContain("3 remixes");

    const rated = page.querySelector('[data-list="top_rated"]')!;
    expect(rated.textContent).toContain("★ 4.50 (2)");
  });

  it("shows empty-state text for empty lists", () => {
    const page = renderHome({ featured: [], most_remixed: [], newest: [], top_rated: [] });
    const empties = page.querySelectorAll("p.empty");
    expect(empties.length).toBe(4);
  });
});

function summary(): ProjectSummary {
  return {
    author: "ben",
    based_on: { author: "ana", project_id: 1, title: "Cat" },
    comments: [
      { author: "cyd", comment_id: 1, created_at: "2026-05-02T11:00:00Z",
        project_id: 2, text: "love it" },
      { author: "ana", comment_id: 2, created_at: "2026-05-02T12:00:00Z",
        project_id: 2, text: "me too" },
    ],
    download_count: 7,
    galleries: [{ gallery_id: 1, name: "picks" }],
    rating_count: 2,
    rating_mean: "4.50",
    remix_count: 0,
    reuses: [{ author: "ana", overlap: 0.5, project_id: 1, title: "Cat" }],
    tags: ["cats", "remix"],
    title: "Dog",
    uploaded_at: "2026-05-02T10:00:00Z",
    view_count: 41,
  };
}

describe("project page", () => {
  it("shows summary fields verbatim", () => {
    const page = renderProject(summary(), noopDeps);
    expect(page.querySelector("h2.title")!.textContent).toBe("Dog");
    expect(page.querySelector(".byline")!.textContent).toContain("by ben");
    expect(page.querySelector(".downloads")!.textContent).toBe("7 downloads");
    expect(page.querySelector(".views")!.textContent).toBe("41 views");
    expect(page.querySelector(".rating-mean")!.textContent).toBe("★ 4.50 from 2 ratings");
    const tags = [...page.querySelectorAll(".tag")].map((t) => t.textContent);
    expect(tags).toEqual(["cats", "remix"]);
  });

  it("links based_on to the parent page", () => {
    const page = renderProject(summary(), noopDeps);
    const basedOn = page.querySelector("p.based-on a") as HTMLAnchorElement;
    expect(basedOn.getAttribute("href")).toBe("#/projects/1");
    expect(basedOn.textContent).toBe("Cat by ana");
  });

  it("lists comments chronologically as sent", () => {
    const page = renderProject(summary(), noopDeps);
    const texts = [...page.querySelectorAll(".comment-text")].map((c) => c.textContent);
    expect(texts).toEqual(["love it", "me too"]);
    const ids = [...page.querySelectorAll("li.comment")].map((c) => c.dataset.commentId);
    expect(ids).toEqual(["1", "2"]);
  });

  it("shows detected reuse with the server's overlap value", () => {
    const page = renderProject(summary(), noopDeps);
    expect(page.querySelector(".reuse")!.textContent).toContain("overlap 0.5");
  });

  it("renders without a rating when the field is absent", () => {
    const bare = { ...summary(), rating_count: 0, comments: [], reuses: [] };
    delete (bare as Partial<ProjectSummary>).rating_mean;
    const page = renderProject(bare, noopDeps);
    expect(page.querySelector(".rating-mean")!.textContent).toBe("not rated yet");
  });
});

describe("lineage tree", () => {
  it("renders nested, expandable nodes", () => {
    const tree: LineageNode = {
      author: "ben", children: [
        { author: "ana", children: [
          { author: "ana", children: [], kind: "declared", overlap: 0.25,
            project_id: 1, title: "Origin" },
        ], kind: "declared", overlap: 0.5, project_id: 2, title: "Cat" },
      ], kind: null, overlap: null, project_id: 3, title: "Dog",
    };
    const node = renderLineageNode(tree, true);
    expect(node.tagName).toBe("DETAILS");
    expect((node as HTMLDetailsElement).open).toBe(true);
    expect(node.dataset.projectId).toBe("3");
    const inner = node.querySelector('[data-project-id="2"]')!;
    expect(inner.textContent).toContain("[declared 0.5]");
    expect(inner.querySelector('[data-project-id="1"]')).not.toBeNull();
  });
});

describe("upload panels", () => {
  it("renders a success panel with links from the response", () => {
    const resp: UploadResponse = {
      based_on: 1,
      content_hash: "ab".repeat(32),
      detected: [{ id: 1, overlap: 0.5 }],
      project_id: 2,
    };
    const panel = renderUploadResult(resp);
    expect(panel.querySelector(".new-id a")!.getAttribute("href")).toBe("#/projects/2");
    expect(panel.querySelector(".based-on a")!.getAttribute("href")).toBe("#/projects/1");
    expect(panel.querySelector(".detected")!.textContent).toContain("overlap 0.5");
  });

  it("renders duplicate uploads with a link to the original", () => {
    const panel = renderUploadResult({
      content_hash: "cd".repeat(32), detected: [], duplicate_of: 5, project_id: 5,
    });
    expect(panel.querySelector(".duplicate a")!.getAttribute("href")).toBe("#/projects/5");
  });

  it("surfaces server error codes verbatim", () => {
    const panel = renderUploadError("MalformedSyntax", "not a JSON document");
    expect(panel.querySelector(".error-code")!.textContent).toBe("MalformedSyntax");
    expect(panel.querySelector(".error-message")!.textContent).toBe("not a JSON document");
  });
});

describe("profile", () => {
  it("shows the participation badge straight from the payload", () => {
    const page = renderProfile({
      created_at: "2026-01-01T00:00:00Z",
      followers: ["ana"],
      friends: ["ben", "cyd"],
      is_admin: false,
      participation_state: "active_consumption",
      username: "dora",
    }, new ApiClient("http://unused.invalid"), () => {}, () => {});
    const badge = page.querySelector(".participation-badge")!;
    expect(badge.getAttribute("data-state")).toBe("active_consumption");
    const friends = [...page.querySelectorAll("section.friends li")].map((x) => x.textContent);
    expect(friends).toEqual(["ben", "cyd"]);
  });
});

describe("structure inventory", () => {
  it("lists sprite names and counts from the file document", () => {
    const node = renderInventory({
      stage: { name: "stage", costumes: [], sounds: [], scripts: [[{}]] },
      sprites: [
        { name: "cat", costumes: ["a", "b"], sounds: [], scripts: [[{}], [{}]] },
      ],
      assets: { aa: { kind: "image" }, bb: { kind: "audio" } },
    });
    const rows = [...node.querySelectorAll("li.sprite")].map((x) => x.textContent);
    expect(rows[0]).toContain("stage — 1 scripts, 0 costumes, 0 sounds");
    expect(rows[1]).toContain("cat — 2 scripts, 2 costumes, 0 sounds");
    expect(node.querySelector(".asset-count")!.textContent).toBe("2 assets");
  });
});
