/**
 * Typed client for the session service. The playground never evaluates
 * movement rules itself; every state shown on screen comes from these
 * endpoints, so the backend stays the single source of algorithmic truth.
 */

export type NodePair = [number, number];

export interface ParticleInfo {
  pid: number;
  nodes: NodePair[];
  shape: "contracted" | "expanded";
}

export interface ActivableMove {
  pid: number;
  condition: string;
  resulting_nodes: NodePair[];
}

export interface SessionState {
  id: string;
  occupancy: Record<string, number>;
  particles: ParticleInfo[];
  activable: ActivableMove[];
  progress: number[];
  leaders: number[];
  final: boolean;
  step_count: number;
  boundaries: { r_max: number; q_max: number };
}

export interface StepEventPayload {
  step: number;
  pid: number;
  condition: string;
  nodes_before: NodePair[];
  nodes_after: NodePair[];
  progress_after: number[];
}

export interface CheckPayload {
  passed: boolean;
  violations: { invariant: string; subject: string; detail: string }[];
}

export interface ActivateResponse {
  state: SessionState;
  event: StepEventPayload;
  check: CheckPayload;
}

export interface AutoResponse {
  state: SessionState;
  events: StepEventPayload[];
}

export interface ServiceErrorBody {
  code: string;
  message: string;
  detail?: unknown;
}

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly body: ServiceErrorBody,
  ) {
    super(`${body.code}: ${body.message}`);
  }
}

export type FetchLike = (
  input: string,
  init?: { method?: string; headers?: Record<string, string>; body?: string },
) => Promise<{ status: number; json(): Promise<unknown> }>;

export class TrielectClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(
    method: string,
    path: string,
    body?: string,
  ): Promise<T> {
    const response = await this.fetchImpl(this.baseUrl + path, {
      method,
      headers: { "content-type": "application/json" },
      body,
    });
    if (response.status === 204) {
      return undefined as T;
    }
    const payload = (await response.json()) as T | ServiceErrorBody;
    if (response.status >= 400) {
      throw new ApiError(response.status, payload as ServiceErrorBody);
    }
    return payload as T;
  }

  createSession(configText: string): Promise<SessionState> {
    return this.request("POST", "/sessions", configText);
  }

  getState(id: string): Promise<SessionState> {
    return this.request("GET", `/sessions/${id}`);
  }

  activate(id: string, pid: number): Promise<ActivateResponse> {
    return this.request("POST", `/sessions/${id}/activate`, JSON.stringify({ pid }));
  }

  auto(
    id: string,
    strategy: string,
    steps: number,
    seed: number,
  ): Promise<AutoResponse> {
    return this.request(
      "POST",
      `/sessions/${id}/auto`,
      JSON.stringify({ strategy, steps, seed }),
    );
  }

  undo(id: string): Promise<SessionState> {
    return this.request("POST", `/sessions/${id}/undo`);
  }

  deleteSession(id: string): Promise<void> {
    return this.request("DELETE", `/sessions/${id}`);
  }
}
