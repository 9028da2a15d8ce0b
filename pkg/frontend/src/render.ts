/**
 * SVG rendering of a board view-model plus the side-panel readouts.
 *
 * Particle circles and connectors are reconciled in place, keyed by
 * particle id, so CSS transitions on their geometry animate each atomic
 * move instead of redrawing the board from scratch. Ghost previews and
 * labels are cheap and rebuilt every frame.
 */

import type { PlaygroundView } from "./controller.js";
import { NODE_RADIUS } from "./board.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export interface RenderTargets {
  svg: SVGSVGElement;
  status: HTMLElement;
  progress: HTMLElement;
  monitor: HTMLElement;
}

export interface RenderHandlers {
  onParticleClick(pid: number): void;
}

function el<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string>,
): SVGElementTagNameMap[K] {
  const node = document.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, value);
  }
  return node;
}

function setAttrs(node: Element, attrs: Record<string, string>): void {
  for (const [key, value] of Object.entries(attrs)) {
    if (node.getAttribute(key) !== value) {
      node.setAttribute(key, value);
    }
  }
}

interface Layers {
  ghosts: SVGGElement;
  links: SVGGElement;
  particles: SVGGElement;
  labels: SVGGElement;
}

function layersOf(svg: SVGSVGElement): Layers {
  let ghosts = svg.querySelector<SVGGElement>("g[data-layer=ghosts]");
  if (!ghosts) {
    ghosts = el("g", { "data-layer": "ghosts" });
    const links = el("g", { "data-layer": "links" });
    const particles = el("g", { "data-layer": "particles" });
    const labels = el("g", { "data-layer": "labels" });
    svg.append(ghosts, links, particles, labels);
  }
  return {
    ghosts,
    links: svg.querySelector<SVGGElement>("g[data-layer=links]")!,
    particles: svg.querySelector<SVGGElement>("g[data-layer=particles]")!,
    labels: svg.querySelector<SVGGElement>("g[data-layer=labels]")!,
  };
}

export function renderView(
  targets: RenderTargets,
  view: PlaygroundView,
  handlers: RenderHandlers,
): void {
  const { svg } = targets;
  const board = view.board;
  if (!board) {
    svg.replaceChildren();
    targets.status.textContent = view.error
      ? `error: ${view.error}`
      : "load a configuration to begin";
    targets.status.className = view.error ? "status error" : "status";
    targets.progress.textContent = "";
    targets.monitor.textContent = "";
    return;
  }
  const layers = layersOf(svg);
  const { x, y, width, height } = board.viewBox;
  svg.setAttribute("viewBox", `${x} ${y} ${width} ${height}`);

  layers.ghosts.replaceChildren(
    ...board.ghosts.flatMap((ghost) =>
      ghost.points.map((point) =>
        el("circle", {
          cx: String(point.x),
          cy: String(point.y),
          r: String(NODE_RADIUS * 0.8),
          class: "ghost",
          "data-ghost-pid": String(ghost.pid),
        }),
      ),
    ),
  );

  // Connectors, keyed by pid; geometry updates animate via CSS.
  const liveLinks = new Set(board.links.map((l) => String(l.pid)));
  for (const stale of [...layers.links.children]) {
    if (!liveLinks.has(stale.getAttribute("data-pid") ?? "")) {
      stale.remove();
    }
  }
  for (const link of board.links) {
    const key = String(link.pid);
    let line = layers.links.querySelector(`line[data-pid="${key}"]`);
    if (!line) {
      line = el("line", { class: "link", "data-pid": key });
      layers.links.append(line);
    }
    setAttrs(line, {
      x1: String(link.x1),
      y1: String(link.y1),
      x2: String(link.x2),
      y2: String(link.y2),
    });
  }

  // Particle circles, keyed by pid plus endpoint slot.
  const liveNodes = new Map<string, (typeof board.nodes)[number]>();
  const slotCounter = new Map<number, number>();
  for (const node of board.nodes) {
    const slot = slotCounter.get(node.pid) ?? 0;
    slotCounter.set(node.pid, slot + 1);
    liveNodes.set(`${node.pid}:${slot}`, node);
  }
  for (const stale of [...layers.particles.children]) {
    if (!liveNodes.has(stale.getAttribute("data-key") ?? "")) {
      stale.remove();
    }
  }
  for (const [key, node] of liveNodes) {
    let circle = layers.particles.querySelector<SVGCircleElement>(
      `circle[data-key="${key}"]`,
    );
    if (!circle) {
      circle = el("circle", { "data-key": key, r: String(NODE_RADIUS) });
      circle.addEventListener("click", () => {
        const pid = Number(circle!.getAttribute("data-pid"));
        handlers.onParticleClick(pid);
      });
      layers.particles.append(circle);
    }
    setAttrs(circle, {
      cx: String(node.x),
      cy: String(node.y),
      "data-pid": String(node.pid),
      class: [
        "particle",
        node.activable ? "activable" : "",
        node.leader ? "leader" : "",
      ]
        .filter(Boolean)
        .join(" "),
    });
  }

  // Badges and condition labels are rebuilt each frame.
  const decorations: SVGElement[] = [];
  const seenLabel = new Set<number>();
  for (const node of board.nodes) {
    if (node.leader) {
      decorations.push(
        el("circle", {
          cx: String(node.x),
          cy: String(node.y),
          r: String(NODE_RADIUS + 6),
          class: "leader-badge",
        }),
      );
    }
    if (node.condition && !seenLabel.has(node.pid)) {
      seenLabel.add(node.pid);
      const label = el("text", {
        x: String(node.x + NODE_RADIUS + 3),
        y: String(node.y - NODE_RADIUS + 2),
        class: "condition",
      });
      label.textContent = node.condition;
      decorations.push(label);
    }
  }
  layers.labels.replaceChildren(...decorations);

  targets.status.textContent = view.error
    ? `error: ${view.error}`
    : board.final
      ? `final configuration - leader: particle ${board.leaders.join(", ")}`
      : view.autoplaying
        ? "autoplay running"
        : `your move: ${board.activablePids.length} particle(s) can act`;
  targets.status.className = view.error ? "status error" : "status";

  targets.progress.textContent =
    `step ${board.stepCount} | progress (${board.progress.join(", ")})`;
  targets.monitor.textContent = view.progressMonotone
    ? "progress strictly decreasing"
    : "BUG: progress did not decrease";
  targets.monitor.className = view.progressMonotone ? "monitor ok" : "monitor bad";
}
