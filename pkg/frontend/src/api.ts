import type { ApiErrorBody, Hint, PresetInfo, SessionView } from "./types.js";

export class ServiceError extends Error {
  constructor(
    public status: number,
    public kind: string,
    detail: string,
  ) {
    super(detail);
  }
}

export class ApiClient {
  constructor(private base: string) {}

  private async call<T>(path: string, init?: RequestInit): Promise<T> {
    const resp = await fetch(this.base + path, {
      headers: { "content-type": "application/json" },
      ...init,
    });
    if (resp.status === 204) return undefined as T;
    const body = await resp.json();
    if (!resp.ok) {
      const err = body as ApiErrorBody;
      throw new ServiceError(resp.status, err.error?.kind ?? "unknown", err.error?.detail ?? "");
    }
    return body as T;
  }

  presets(): Promise<{ presets: PresetInfo[] }> {
    return this.call("/presets");
  }

  createSession(body: unknown): Promise<SessionView> {
    return this.call("/sessions", { method: "POST", body: JSON.stringify(body) });
  }

  getSession(id: string): Promise<SessionView> {
    return this.call(`/sessions/${id}`);
  }

  pick(id: string, vertex: number): Promise<SessionView> {
    return this.call(`/sessions/${id}/moves`, {
      method: "POST",
      body: JSON.stringify({ vertex }),
    });
  }

  colour(id: string, colour: number): Promise<SessionView> {
    return this.call(`/sessions/${id}/moves`, {
      method: "POST",
      body: JSON.stringify({ colour }),
    });
  }

  engineMove(id: string): Promise<SessionView> {
    return this.call(`/sessions/${id}/engine-move`, { method: "POST" });
  }

  hint(id: string): Promise<Hint> {
    return this.call(`/sessions/${id}/hint`);
  }

  undo(id: string): Promise<SessionView> {
    return this.call(`/sessions/${id}/undo`, { method: "POST" });
  }

  remove(id: string): Promise<void> {
    return this.call(`/sessions/${id}`, { method: "DELETE" });
  }
}
