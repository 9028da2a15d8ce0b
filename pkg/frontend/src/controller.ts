/**
 * Session state machine behind the playground.
 *
 * The human is the unfair scheduler: any highlighted (activable) particle
 * may be fired, nothing else. The controller keeps at most one mutating
 * request in flight, rebuilds its whole view from the last service payload
 * (so a resync after any error reproduces the exact board), and watches the
 * progress readout: the backend guarantees a strict lexicographic decrease
 * on every step, and a violation would be surfaced as a bug banner rather
 * than hidden.
 */

import { ApiError } from "./api.js";
import type {
  ActivateResponse,
  AutoResponse,
  SessionState,
  StepEventPayload,
} from "./api.js";
import { BoardViewModel, buildBoard, compareProgress } from "./board.js";

/** The slice of the service client the playground needs (structural, so
 * tests can substitute a scripted double). */
export interface SessionApi {
  createSession(configText: string): Promise<SessionState>;
  getState(id: string): Promise<SessionState>;
  activate(id: string, pid: number): Promise<ActivateResponse>;
  auto(
    id: string,
    strategy: string,
    steps: number,
    seed: number,
  ): Promise<AutoResponse>;
  undo(id: string): Promise<SessionState>;
}

export interface PlaygroundView {
  board: BoardViewModel | null;
  sessionId: string | null;
  busy: boolean;
  autoplaying: boolean;
  error: string | null;
  lastEvent: StepEventPayload | null;
  progressHistory: number[][];
  progressMonotone: boolean;
}

export interface AutoplayOptions {
  strategy: string;
  seed: number;
  batch: number;
  intervalMs: number;
}

type Listener = (view: PlaygroundView) => void;
type Timer = ReturnType<typeof setInterval>;

export class PlaygroundController {
  private state: SessionState | null = null;
  private busy = false;
  private error: string | null = null;
  private lastEvent: StepEventPayload | null = null;
  private progressHistory: number[][] = [];
  private progressMonotone = true;
  private listeners: Listener[] = [];
  private timer: Timer | null = null;
  private autoplayOptions: AutoplayOptions | null = null;

  constructor(private readonly api: SessionApi) {}

  subscribe(listener: Listener): void {
    this.listeners.push(listener);
  }

  get view(): PlaygroundView {
    return {
      board: this.state ? buildBoard(this.state) : null,
      sessionId: this.state?.id ?? null,
      busy: this.busy,
      autoplaying: this.timer !== null,
      error: this.error,
      lastEvent: this.lastEvent,
      progressHistory: this.progressHistory.map((p) => [...p]),
      progressMonotone: this.progressMonotone,
    };
  }

  private emit(): void {
    const snapshot = this.view;
    for (const listener of this.listeners) {
      listener(snapshot);
    }
  }

  private adoptState(state: SessionState, stepped: boolean): void {
    if (stepped && this.progressHistory.length > 0) {
      const previous = this.progressHistory[this.progressHistory.length - 1];
      if (compareProgress(state.progress, previous) >= 0) {
        this.progressMonotone = false;
      }
      this.progressHistory.push([...state.progress]);
    } else {
      this.progressHistory = [[...state.progress]];
      this.progressMonotone = true;
    }
    this.state = state;
  }

  async loadSession(configText: string): Promise<void> {
    this.stopAutoplay();
    this.busy = true;
    this.emit();
    try {
      const state = await this.api.createSession(configText);
      this.lastEvent = null;
      this.error = null;
      this.adoptState(state, false);
    } catch (err) {
      // Board stays exactly as it was; the failure is only reported.
      this.error = err instanceof ApiError ? err.message : String(err);
    } finally {
      this.busy = false;
      this.emit();
    }
  }

  canClick(pid: number): boolean {
    return (
      this.state !== null &&
      !this.busy &&
      this.timer === null &&
      this.state.activable.some((m) => m.pid === pid)
    );
  }

  async clickParticle(pid: number): Promise<void> {
    if (!this.state || !this.canClick(pid)) {
      return; // client-side guard: no request leaves the browser
    }
    this.busy = true;
    this.emit();
    try {
      const response = await this.api.activate(this.state.id, pid);
      this.lastEvent = response.event;
      this.error = response.check.passed
        ? null
        : `backend invariant violation: ${response.check.violations[0]?.invariant}`;
      this.adoptState(response.state, true);
    } catch (err) {
      if (err instanceof ApiError) {
        // Raced an autoplay batch or a stale board: show it and resync.
        this.error = err.message;
        await this.resync();
      } else {
        this.error = String(err);
      }
    } finally {
      this.busy = false;
      this.emit();
    }
  }

  async undo(): Promise<void> {
    if (!this.state || this.busy) {
      return;
    }
    this.stopAutoplay();
    this.busy = true;
    this.emit();
    try {
      const state = await this.api.undo(this.state.id);
      this.lastEvent = null;
      this.error = null;
      this.adoptState(state, false);
    } catch (err) {
      this.error = err instanceof ApiError ? err.message : String(err);
    } finally {
      this.busy = false;
      this.emit();
    }
  }

  async resync(): Promise<void> {
    if (!this.state) {
      return;
    }
    const state = await this.api.getState(this.state.id);
    this.adoptState(state, false);
    this.emit();
  }

  startAutoplay(options: AutoplayOptions): void {
    if (!this.state || this.timer !== null || this.state.final) {
      return;
    }
    this.autoplayOptions = options;
    this.timer = setInterval(() => {
      void this.autoplayTick();
    }, options.intervalMs);
    this.emit();
  }

  stopAutoplay(): void {
    if (this.timer !== null) {
      clearInterval(this.timer);
      this.timer = null;
      this.emit();
    }
  }

  /** One autoplay batch; exposed so tests can drive it deterministically. */
  async autoplayTick(): Promise<void> {
    if (!this.state || this.busy || !this.autoplayOptions) {
      return;
    }
    this.busy = true;
    this.emit();
    try {
      const { strategy, seed, batch } = this.autoplayOptions;
      const response = await this.api.auto(this.state.id, strategy, batch, seed);
      for (const event of response.events) {
        if (this.progressHistory.length > 0) {
          const previous = this.progressHistory[this.progressHistory.length - 1];
          if (compareProgress(event.progress_after, previous) >= 0) {
            this.progressMonotone = false;
          }
        }
        this.progressHistory.push([...event.progress_after]);
        this.lastEvent = event;
      }
      this.state = response.state;
      this.error = null;
      if (response.state.final) {
        this.stopAutoplay();
      }
    } catch (err) {
      this.error = err instanceof ApiError ? err.message : String(err);
      this.stopAutoplay(); // pause with the banner showing
    } finally {
      this.busy = false;
      this.emit();
    }
  }
}
