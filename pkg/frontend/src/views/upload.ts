// Upload flow: post raw .pmp bytes, show the server's verdict verbatim.

import { ApiClient, UploadResponse } from "../api.js";
import { el, link } from "../dom.js";

export function renderUploadForm(api: ApiClient, onDone: (resp: UploadResponse) => void,
                                 onError: (code: string, message: string) => void): HTMLElement {
  const root = el("div.upload", el("h2", "Share a project"));
  const input = document.createElement("input");
  input.type = "file";
  input.accept = ".pmp";
  const button = el("button.do-upload", "Upload");
  button.addEventListener("click", async () => {
    const file = input.files?.[0];
    if (!file) {
      onError("NoFile", "choose a .pmp file first");
      return;
    }
    try {
      onDone(await api.upload(await file.arrayBuffer()));
    } catch (err) {
      const failure = err as { code?: string; message: string };
      onError(failure.code ?? "Error", failure.message);
    }
  });
  root.append(el("div.upload-form", input, button));
  return root;
}

export function renderUploadResult(resp: UploadResponse): HTMLElement {
  const panel = el("div.upload-result.success", el("h3", "Uploaded"));
  panel.append(
    el("p.new-id", "project ", link(`#/projects/${resp.project_id}`, `#${resp.project_id}`)),
    el("p.content-hash", `content ${resp.content_hash}`),
  );
  if (resp.duplicate_of !== undefined) {
    panel.append(
      el(
        "p.duplicate",
        "identical content already shared as ",
        link(`#/projects/${resp.duplicate_of}`, `#${resp.duplicate_of}`),
      ),
    );
  }
  if (resp.based_on !== undefined) {
    panel.append(
      el("p.based-on", "based on ", link(`#/projects/${resp.based_on}`, `#${resp.based_on}`)),
    );
  }
  if (resp.detected.length) {
    const items = resp.detected.map((d) =>
      el("li", link(`#/projects/${d.id}`, `#${d.id}`), el("span", ` overlap ${d.overlap}`)),
    );
    panel.append(el("div.detected", el("p", "detected reuse of:"), el("ul", ...items)));
  }
  return panel;
}

export function renderUploadError(code: string, message: string): HTMLElement {
  return el(
    "div.upload-result.error",
    el("h3", "Upload failed"),
    el("p.error-code", code),
    el("p.error-message", message),
  );
}
