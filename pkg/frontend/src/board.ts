/**
 * Pure view-model construction: service state in, drawing instructions out.
 * Axial coordinates map to the plane as x = q + r/2, y = r * sqrt(3)/2 with
 * y growing downward, the same convention the backend renderer uses.
 */

import type { NodePair, SessionState } from "./api.js";

export const SCALE = 46;
export const NODE_RADIUS = 13;

export interface Point {
  x: number;
  y: number;
}

export interface NodeGlyph extends Point {
  pid: number;
  key: string;
  leader: boolean;
  activable: boolean;
  condition?: string;
}

export interface LinkGlyph {
  pid: number;
  x1: number;
  y1: number;
  x2: number;
  y2: number;
}

export interface GhostGlyph {
  pid: number;
  condition: string;
  points: Point[];
}

export interface BoardViewModel {
  nodes: NodeGlyph[];
  links: LinkGlyph[];
  ghosts: GhostGlyph[];
  leaders: number[];
  activablePids: number[];
  progress: number[];
  stepCount: number;
  final: boolean;
  viewBox: { x: number; y: number; width: number; height: number };
}

export function toCartesian([q, r]: NodePair): Point {
  return { x: (q + r / 2) * SCALE, y: r * (Math.sqrt(3) / 2) * SCALE };
}

export function buildBoard(state: SessionState): BoardViewModel {
  const activable = new Map(state.activable.map((m) => [m.pid, m]));
  // The leader predicate may hold for some particle mid-run; the badge only
  // means something once nothing can move, so it is gated on `final`.
  const leaderSet = new Set(state.final ? state.leaders : []);

  const nodes: NodeGlyph[] = [];
  const links: LinkGlyph[] = [];
  for (const particle of state.particles) {
    for (const node of particle.nodes) {
      const { x, y } = toCartesian(node);
      nodes.push({
        pid: particle.pid,
        key: `${node[0]},${node[1]}`,
        x,
        y,
        leader: leaderSet.has(particle.pid),
        activable: activable.has(particle.pid),
        condition: activable.get(particle.pid)?.condition,
      });
    }
    if (particle.nodes.length === 2) {
      const a = toCartesian(particle.nodes[0]);
      const b = toCartesian(particle.nodes[1]);
      links.push({ pid: particle.pid, x1: a.x, y1: a.y, x2: b.x, y2: b.y });
    }
  }

  const ghosts: GhostGlyph[] = state.activable.map((move) => ({
    pid: move.pid,
    condition: move.condition,
    points: move.resulting_nodes.map(toCartesian),
  }));

  const xs = nodes.map((n) => n.x);
  const ys = nodes.map((n) => n.y);
  const margin = 2 * SCALE;
  const minX = Math.min(...xs, 0) - margin;
  const minY = Math.min(...ys, 0) - margin;
  const maxX = Math.max(...xs, 0) + margin;
  const maxY = Math.max(...ys, 0) + margin;

  return {
    nodes,
    links,
    ghosts,
    leaders: [...state.leaders].sort((a, b) => a - b),
    activablePids: state.activable.map((m) => m.pid),
    progress: [...state.progress],
    stepCount: state.step_count,
    final: state.final,
    viewBox: { x: minX, y: minY, width: maxX - minX, height: maxY - minY },
  };
}

/** Strict lexicographic comparison: negative when a < b. */
export function compareProgress(a: number[], b: number[]): number {
  for (let i = 0; i < Math.max(a.length, b.length); i += 1) {
    const da = a[i] ?? 0;
    const db = b[i] ?? 0;
    if (da !== db) {
      return da < db ? -1 : 1;
    }
  }
  return 0;
}
