// Project page: summary fields verbatim, social widgets, lineage tree.
// Posting a comment or rating re-renders from a fresh summary fetch;
// the page itself never reloads.

import { ApiClient, LineageNode, ProjectSummary } from "../api.js";
import { el, link } from "../dom.js";

export interface ProjectDeps {
  api: ApiClient;
  projectId: number;
  refresh: () => void; // re-fetch + re-render this view in place
  notify: (message: string, isError?: boolean) => void;
}

export function renderProject(summary: ProjectSummary, deps: ProjectDeps): HTMLElement {
  const root = el("div.project");
  root.append(
    el("h2.title", summary.title),
    el(
      "p.byline",
      `by ${summary.author} · uploaded ${summary.uploaded_at} · `,
      el("span.downloads", `${summary.download_count} downloads`),
      " · ",
      el("span.views", `${summary.view_count} views`),
    ),
  );

  if (summary.based_on) {
    root.append(
      el(
        "p.based-on",
        "based on ",
        link(`#/projects/${summary.based_on.project_id}`,
             `${summary.based_on.title} by ${summary.based_on.author}`),
      ),
    );
  }

  if (summary.reuses.length) {
    const items = summary.reuses.map((r) =>
      el(
        "li.reuse",
        link(`#/projects/${r.project_id}`, r.title),
        el("span", ` by ${r.author} — overlap ${r.overlap}`),
      ),
    );
    root.append(el("section.reuses", el("h3", "Detected reuse"), el("ul", ...items)));
  }

  root.append(renderRating(summary, deps));
  root.append(renderTags(summary, deps));
  root.append(renderGalleries(summary));
  root.append(renderStructurePanel(deps));
  root.append(renderComments(summary, deps));

  const lineageBox = el("section.lineage", el("h3", "Lineage"));
  root.append(lineageBox);
  void loadLineage(lineageBox, deps);

  return root;
}

function renderRating(summary: ProjectSummary, deps: ProjectDeps): HTMLElement {
  const box = el("section.rating", el("h3", "Rating"));
  const shown =
    summary.rating_mean !== undefined
      ? `★ ${summary.rating_mean} from ${summary.rating_count} ratings`
      : "not rated yet";
  box.append(el("p.rating-mean", shown));
  const widget = el("div.rate-widget");
  for (let stars = 1; stars <= 5; stars++) {
    const button = el("button.star", `${stars}★`);
    button.addEventListener("click", async () => {
      try {
        await deps.api.rate(deps.projectId, stars);
        deps.refresh();
      } catch (err) {
        deps.notify(String((err as Error).message), true);
      }
    });
    widget.append(button);
  }
  box.append(widget);
  return box;
}

function renderTags(summary: ProjectSummary, deps: ProjectDeps): HTMLElement {
  const box = el("section.tags", el("h3", "Tags"));
  const list = el("ul.tag-list");
  for (const label of summary.tags) {
    list.append(el("li.tag", label));
  }
  box.append(list);
  const input = document.createElement("input");
  input.placeholder = "new tag";
  const button = el("button.add-tag", "Tag it");
  button.addEventListener("click", async () => {
    try {
      await deps.api.tag(deps.projectId, input.value);
      deps.refresh();
    } catch (err) {
      deps.notify(String((err as Error).message), true);
    }
  });
  box.append(el("div.tag-form", input, button));
  return box;
}

function renderGalleries(summary: ProjectSummary): HTMLElement {
  const box = el("section.galleries", el("h3", "Galleries"));
  if (!summary.galleries.length) {
    box.append(el("p.empty", "Not curated into any gallery."));
    return box;
  }
  const list = el("ul");
  for (const g of summary.galleries) {
    list.append(el("li.gallery", g.name));
  }
  box.append(list);
  return box;
}

function renderComments(summary: ProjectSummary, deps: ProjectDeps): HTMLElement {
  const box = el("section.comments", el("h3", `Comments (${summary.comments.length})`));
  const list = el("ol.comment-list");
  for (const c of summary.comments) {
    const item = el(
      "li.comment",
      el("span.comment-author", c.author),
      el("span.comment-when", ` at ${c.created_at}: `),
      el("span.comment-text", c.text),
    );
    item.dataset.commentId = String(c.comment_id);
    list.append(item);
  }
  box.append(list);

  const input = document.createElement("textarea");
  input.placeholder = "say something nice";
  input.className = "comment-input";
  const button = el("button.post-comment", "Post");
  button.addEventListener("click", async () => {
    try {
      await deps.api.comment(deps.projectId, input.value);
      deps.refresh();
    } catch (err) {
      deps.notify(String((err as Error).message), true);
    }
  });
  box.append(el("div.comment-form", input, button));
  return box;
}

// The summary carries no file contents; structure is loaded on demand
// through the authenticated file route (which records the download).
function renderStructurePanel(deps: ProjectDeps): HTMLElement {
  const box = el("section.structure", el("h3", "Inside this project"));
  const button = el("button.load-structure", "Download & show structure");
  const target = el("div.inventory");
  button.addEventListener("click", async () => {
    try {
      const blob = await deps.api.downloadFile(deps.projectId);
      const doc = JSON.parse(await blob.text());
      target.textContent = "";
      target.append(renderInventory(doc));
    } catch (err) {
      deps.notify(String((err as Error).message), true);
    }
  });
  box.append(button, target);
  return box;
}

interface FileSprite {
  name: string;
  costumes: string[];
  sounds: string[];
  scripts: unknown[][];
}

export function renderInventory(doc: {
  stage: FileSprite;
  sprites: FileSprite[];
  assets: Record<string, { kind: string }>;
}): HTMLElement {
  const list = el("ul.sprite-list");
  for (const sprite of [doc.stage, ...doc.sprites]) {
    list.append(
      el(
        "li.sprite",
        el("span.sprite-name", sprite.name),
        el(
          "span.sprite-counts",
          ` — ${sprite.scripts.length} scripts, ${sprite.costumes.length} costumes,` +
            ` ${sprite.sounds.length} sounds`,
        ),
      ),
    );
  }
  const assetCount = Object.keys(doc.assets).length;
  return el("div", list, el("p.asset-count", `${assetCount} assets`));
}

async function loadLineage(box: HTMLElement, deps: ProjectDeps): Promise<void> {
  try {
    const tree = await deps.api.lineage(deps.projectId, "ancestors", 5);
    const down = await deps.api.lineage(deps.projectId, "descendants", 5);
    box.append(el("h4", "Ancestors"), renderLineageNode(tree, true));
    box.append(el("h4", "Remixes"), renderLineageNode(down, true));
  } catch (err) {
    box.append(el("p.error", `lineage unavailable: ${(err as Error).message}`));
  }
}

export function renderLineageNode(node: LineageNode, isRoot = false): HTMLElement {
  const label = el(
    "span.lineage-label",
    link(`#/projects/${node.project_id}`, node.title),
    el("span", ` by ${node.author}`),
    node.kind ? el("span.edge-kind", ` [${node.kind}${formatOverlap(node.overlap)}]`) : null,
  );
  if (!node.children.length) {
    const leaf = el("div.lineage-node.leaf", label);
    leaf.dataset.projectId = String(node.project_id);
    return leaf;
  }
  const details = document.createElement("details");
  if (isRoot) details.open = true;
  details.className = "lineage-node";
  details.dataset.projectId = String(node.project_id);
  const head = document.createElement("summary");
  head.append(label);
  details.append(head);
  for (const child of node.children) {
    details.append(renderLineageNode(child));
  }
  return details;
}

function formatOverlap(overlap: number | null): string {
  return overlap === null ? "" : ` ${overlap}`;
}
