// Tiny DOM builder: el("div.card", el("h2", title), ...) — no framework.

export type Child = Node | string | null | undefined;

export function el(selector: string, ...children: Child[]): HTMLElement {
  const [tag, ...classes] = selector.split(".");
  const node = document.createElement(tag || "div");
  if (classes.length) node.className = classes.join(" ");
  for (const child of children) {
    if (child === null || child === undefined) continue;
    node.append(typeof child === "string" ? document.createTextNode(child) : child);
  }
  return node;
}

export function link(href: string, text: string, className?: string): HTMLAnchorElement {
  const a = document.createElement("a");
  a.href = href;
  a.textContent = text;
  if (className) a.className = className;
  return a;
}

export function clear(node: HTMLElement): HTMLElement {
  node.textContent = "";
  return node;
}
