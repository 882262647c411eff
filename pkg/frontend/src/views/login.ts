// Session box: members paste the token they got at account creation.

import { ApiClient, Credentials } from "../api.js";
import { el } from "../dom.js";

const STORAGE_KEY = "remixhub.credentials";

export function loadStoredCredentials(): Credentials | null {
  try {
    const raw = sessionStorage.getItem(STORAGE_KEY);
    return raw ? (JSON.parse(raw) as Credentials) : null;
  } catch {
    return null;
  }
}

export function storeCredentials(credentials: Credentials | null): void {
  if (credentials === null) {
    sessionStorage.removeItem(STORAGE_KEY);
  } else {
    sessionStorage.setItem(STORAGE_KEY, JSON.stringify(credentials));
  }
}

export function renderLogin(api: ApiClient, onChange: () => void,
                            notify: (message: string, isError?: boolean) => void): HTMLElement {
  const root = el("div.login", el("h2", "Sign in"));
  const name = document.createElement("input");
  name.placeholder = "username";
  name.className = "login-name";
  const token = document.createElement("input");
  token.placeholder = "access token";
  token.type = "password";
  token.className = "login-token";
  const button = el("button.do-login", "Sign in");
  button.addEventListener("click", async () => {
    try {
      await api.profile(name.value); // confirms the account exists
      api.credentials = { username: name.value, token: token.value };
      storeCredentials(api.credentials);
      onChange();
    } catch (err) {
      notify(String((err as Error).message), true);
    }
  });
  root.append(el("div.login-form", name, token, button));
  root.append(el("p.hint",
    "Tokens are issued when an account is created (POST /api/users or `remixhub user add`)."));
  return root;
}
