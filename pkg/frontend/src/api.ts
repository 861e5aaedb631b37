// Thin client for the local review API. The fetch function is injectable so
// tests can run without a server; the session token travels in a header on
// every call.

export interface Prefilled {
  is_child: string;
  farther_away: string;
  reason: string;
}

export interface SheetRow {
  index: number;
  parent: string;
  child: string;
  training: boolean;
  prefilled?: Prefilled;
}

export interface Sheet {
  version: number;
  total: number;
  training_prefix: number;
  pairs: SheetRow[];
}

export interface Progress {
  judged: number;
  total: number;
  next_index: number | null;
  judged_indices: number[];
}

export interface VerdictBody {
  pair_index: number;
  is_child: string;
  farther_away: string;
  reason: string;
}

export type PostResult =
  | { ok: true }
  | { ok: false; status: number; detail: string };

type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private base: string,
    private token: string | null,
    private fetchFn: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private headers(extra?: Record<string, string>): Record<string, string> {
    const headers: Record<string, string> = { ...extra };
    if (this.token) headers["X-Session-Token"] = this.token;
    return headers;
  }

  private async getJson<T>(path: string): Promise<T> {
    const response = await this.fetchFn(this.base + path, {
      headers: this.headers(),
    });
    if (!response.ok) {
      throw new Error(`GET ${path} failed: ${response.status}`);
    }
    return (await response.json()) as T;
  }

  getSheet(): Promise<Sheet> {
    return this.getJson<Sheet>("/api/sheet");
  }

  getProgress(): Promise<Progress> {
    return this.getJson<Progress>("/api/progress");
  }

  async postJudgment(body: VerdictBody): Promise<PostResult> {
    const response = await this.fetchFn(this.base + "/api/judgment", {
      method: "POST",
      headers: this.headers({ "Content-Type": "application/json" }),
      body: JSON.stringify(body),
    });
    if (response.ok) return { ok: true };
    let detail = `HTTP ${response.status}`;
    try {
      const payload = (await response.json()) as { detail?: string };
      if (payload.detail) detail = payload.detail;
    } catch {
      // non-JSON error body: keep the status text
    }
    return { ok: false, status: response.status, detail };
  }

  async exportCsv(): Promise<string> {
    const response = await this.fetchFn(this.base + "/api/export", {
      headers: this.headers(),
    });
    if (!response.ok) {
      throw new Error(`export failed: ${response.status}`);
    }
    return response.text();
  }
}

// token arrives in the page URL the server prints at startup (?token=...)
export function tokenFromLocation(search: string): string | null {
  return new URLSearchParams(search).get("token");
}
