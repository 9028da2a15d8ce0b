/**
 * Playground flow against a scripted service double whose payloads were
 * captured from the real backend: load the two-particle column, click the
 * highlighted particle twice, end on the final board with one leader badge
 * and a strictly decreasing progress readout. Invalid clicks never mutate
 * the board, and a server rejection resyncs it.
 */

import { describe, expect, it } from "vitest";

import { ApiError } from "../src/api.js";
import type {
  ActivateResponse,
  AutoResponse,
  ServiceErrorBody,
  SessionState,
} from "../src/api.js";
import { compareProgress } from "../src/board.js";
import { PlaygroundController, SessionApi } from "../src/controller.js";
import fixtures from "./fixtures/twostacked.json";

const createState = fixtures.create as SessionState;
const firstClick = fixtures.first_click as ActivateResponse;
const secondClick = fixtures.second_click as ActivateResponse;
const undoState = fixtures.undo as SessionState;
const autoFinish = fixtures.auto_finish as AutoResponse;
const invalidClick = fixtures.invalid_click as { status: number; body: ServiceErrorBody };
const invalidConfig = fixtures.invalid_config as { status: number; body: ServiceErrorBody };

class ScriptedApi implements SessionApi {
  calls: string[] = [];
  activations: ActivateResponse[] = [firstClick, secondClick];
  rejectNextActivate = false;

  async createSession(configText: string): Promise<SessionState> {
    this.calls.push("create");
    if (configText === "BAD") {
      throw new ApiError(invalidConfig.status, invalidConfig.body);
    }
    return structuredClone(createState);
  }

  async getState(): Promise<SessionState> {
    this.calls.push("get");
    return structuredClone(createState);
  }

  async activate(_id: string, pid: number): Promise<ActivateResponse> {
    this.calls.push(`activate:${pid}`);
    if (this.rejectNextActivate) {
      this.rejectNextActivate = false;
      throw new ApiError(invalidClick.status, invalidClick.body);
    }
    const next = this.activations.shift();
    if (!next) {
      throw new Error("script exhausted");
    }
    return structuredClone(next);
  }

  async auto(): Promise<AutoResponse> {
    this.calls.push("auto");
    return structuredClone(autoFinish);
  }

  async undo(): Promise<SessionState> {
    this.calls.push("undo");
    return structuredClone(undoState);
  }
}

async function loaded(): Promise<[PlaygroundController, ScriptedApi]> {
  const api = new ScriptedApi();
  const controller = new PlaygroundController(api);
  await controller.loadSession("whatever");
  return [controller, api];
}

describe("loading a session", () => {
  it("shows the highlighted particle with its condition", async () => {
    const [controller] = await loaded();
    const board = controller.view.board!;
    expect(board.activablePids).toEqual([0]);
    expect(board.final).toBe(false);
    expect(board.nodes.filter((n) => n.leader)).toEqual([]);
  });

  it("keeps the board untouched when the backend rejects the config", async () => {
    const api = new ScriptedApi();
    const controller = new PlaygroundController(api);
    await controller.loadSession("BAD");
    expect(controller.view.board).toBeNull();
    expect(controller.view.error).toContain("not-connected");
  });
});

describe("clicking until the run is over", () => {
  it("elects exactly one leader with a strictly decreasing readout", async () => {
    const [controller] = await loaded();
    await controller.clickParticle(0);
    expect(controller.view.board!.final).toBe(false);
    await controller.clickParticle(0);

    const view = controller.view;
    const board = view.board!;
    expect(board.final).toBe(true);
    expect(board.leaders).toEqual([1]);
    expect(board.nodes.filter((n) => n.leader).map((n) => n.pid)).toEqual([1]);
    expect(board.activablePids).toEqual([]);

    expect(view.progressHistory).toHaveLength(3);
    for (let i = 1; i < view.progressHistory.length; i += 1) {
      expect(
        compareProgress(view.progressHistory[i], view.progressHistory[i - 1]),
      ).toBeLessThan(0);
    }
    expect(view.progressMonotone).toBe(true);
  });
});

describe("invalid clicks", () => {
  it("sends no request for a particle that is not highlighted", async () => {
    const [controller, api] = await loaded();
    const before = JSON.stringify(controller.view.board);
    await controller.clickParticle(1); // not activable: pure client guard
    expect(api.calls.filter((c) => c.startsWith("activate"))).toHaveLength(0);
    expect(JSON.stringify(controller.view.board)).toBe(before);
    expect(controller.view.error).toBeNull();
  });

  it("resyncs the board when the server rejects a stale click", async () => {
    const [controller, api] = await loaded();
    const before = JSON.stringify(controller.view.board);
    api.rejectNextActivate = true;
    await controller.clickParticle(0);
    expect(api.calls).toContain("get"); // resynced from the service
    expect(JSON.stringify(controller.view.board)).toBe(before);
    expect(controller.view.error).toContain("not-activable");
  });
});

describe("undo", () => {
  it("returns to the service-reported previous state", async () => {
    const [controller] = await loaded();
    await controller.clickParticle(0);
    await controller.undo();
    const board = controller.view.board!;
    expect(board.stepCount).toBe(undoState.step_count);
    expect(board.final).toBe(false);
    expect(board.activablePids).toEqual([0]);
  });
});

describe("autoplay", () => {
  it("runs batches until the backend reports a final state", async () => {
    const [controller] = await loaded();
    controller.startAutoplay({
      strategy: "random",
      seed: 3,
      batch: 50,
      intervalMs: 1_000_000, // ticks are driven manually below
    });
    expect(controller.view.autoplaying).toBe(true);
    await controller.autoplayTick();
    const view = controller.view;
    expect(view.board!.final).toBe(true);
    expect(view.board!.leaders).toEqual([1]);
    expect(view.autoplaying).toBe(false); // stopped itself on final
    expect(view.progressMonotone).toBe(true);
  });

  it("ignores clicks while running", async () => {
    const [controller, api] = await loaded();
    controller.startAutoplay({
      strategy: "random",
      seed: 3,
      batch: 1,
      intervalMs: 1_000_000,
    });
    await controller.clickParticle(0);
    expect(api.calls.filter((c) => c.startsWith("activate"))).toHaveLength(0);
    controller.stopAutoplay();
  });
});
