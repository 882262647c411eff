// Typed client for the /api routes. Every value shown in the UI comes
// straight out of these payloads; the client never aggregates or sorts.

export interface Credentials {
  username: string;
  token: string;
}

export interface ApiError {
  code: string;
  message: string;
}

export class ApiFailure extends Error {
  code: string;
  status: number;

  constructor(status: number, body: ApiError) {
    super(body.message || body.code);
    this.code = body.code;
    this.status = status;
  }
}

export interface ProjectRef {
  author: string;
  project_id: number;
  title: string;
}

export interface FrontEntry extends ProjectRef {
  uploaded_at?: string;
  rating_mean?: string;
  rating_count?: number;
  remix_count?: number;
}

export interface FrontPage {
  featured: FrontEntry[];
  most_remixed: FrontEntry[];
  newest: FrontEntry[];
  top_rated: FrontEntry[];
}

export interface CommentDoc {
  author: string;
  comment_id: number;
  created_at: string;
  project_id: number;
  text: string;
}

export interface ReuseDoc extends ProjectRef {
  overlap: number;
}

export interface ProjectSummary {
  author: string;
  based_on: ProjectRef | null;
  comments: CommentDoc[];
  download_count: number;
  galleries: { gallery_id: number; name: string }[];
  rating_count: number;
  rating_mean?: string;
  remix_count: number;
  reuses: ReuseDoc[];
  tags: string[];
  title: string;
  uploaded_at: string;
  view_count: number;
}

export interface LineageNode {
  author: string;
  children: LineageNode[];
  kind: string | null;
  overlap: number | null;
  project_id: number;
  title: string;
}

export interface UploadResponse {
  based_on?: number;
  content_hash: string;
  detected: { id: number; overlap: number }[];
  duplicate_of?: number;
  project_id: number;
}

export interface UserProfile {
  created_at: string;
  followers: string[];
  friends: string[];
  is_admin: boolean;
  participation_state: string;
  username: string;
}

export interface CommunityStats {
  counts: Record<string, number>;
  total_users: number;
  window_days: number;
}

export class ApiClient {
  base: string;
  credentials: Credentials | null = null;

  constructor(base = "") {
    this.base = base;
  }

  private headers(): Record<string, string> {
    return this.credentials
      ? { Authorization: `Bearer ${this.credentials.token}` }
      : {};
  }

  private async request<T>(method: string, path: string, body?: BodyInit,
                           contentType?: string): Promise<T> {
    const headers = this.headers();
    if (contentType) headers["Content-Type"] = contentType;
    const resp = await fetch(`${this.base}/api${path}`, { method, headers, body });
    if (!resp.ok) {
      let payload: ApiError;
      try {
        payload = (await resp.json()) as ApiError;
      } catch {
        payload = { code: `HTTP${resp.status}`, message: resp.statusText };
      }
      throw new ApiFailure(resp.status, payload);
    }
    return (await resp.json()) as T;
  }

  private post<T>(path: string, body: unknown): Promise<T> {
    return this.request<T>("POST", path, JSON.stringify(body), "application/json");
  }

  health(): Promise<{ status: string }> {
    return this.request("GET", "/health");
  }

  frontPage(): Promise<FrontPage> {
    return this.request("GET", "/front");
  }

  projectSummary(id: number): Promise<ProjectSummary> {
    return this.request("GET", `/projects/${id}`);
  }

  lineage(id: number, direction: "ancestors" | "descendants", depth: number): Promise<LineageNode> {
    return this.request("GET", `/projects/${id}/lineage?direction=${direction}&depth=${depth}`);
  }

  async downloadFile(id: number): Promise<Blob> {
    const resp = await fetch(`${this.base}/api/projects/${id}/file`, {
      headers: this.headers(),
    });
    if (!resp.ok) {
      throw new ApiFailure(resp.status, (await resp.json()) as ApiError);
    }
    return resp.blob();
  }

  upload(bytes: ArrayBuffer | Uint8Array | string): Promise<UploadResponse> {
    return this.request("POST", "/projects", bytes as BodyInit, "application/octet-stream");
  }

  createUser(username: string): Promise<{ token: string; username: string }> {
    return this.post("/users", { username });
  }

  profile(name: string): Promise<UserProfile> {
    return this.request("GET", `/users/${encodeURIComponent(name)}`);
  }

  addFriend(from: string, to: string): Promise<{ created_at: string; from: string; to: string }> {
    return this.post(`/users/${encodeURIComponent(from)}/friends`, { to });
  }

  tag(id: number, label: string): Promise<unknown> {
    return this.post(`/projects/${id}/tags`, { label });
  }

  comment(id: number, text: string): Promise<CommentDoc> {
    return this.post(`/projects/${id}/comments`, { text });
  }

  rate(id: number, stars: number): Promise<unknown> {
    return this.post(`/projects/${id}/rating`, { stars });
  }

  stats(windowDays?: number): Promise<CommunityStats> {
    const query = windowDays ? `?window_days=${windowDays}` : "";
    return this.request("GET", `/stats${query}`);
  }
}
