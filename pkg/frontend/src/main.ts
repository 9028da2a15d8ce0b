/** Page wiring: inputs, buttons and the render loop. */

import { TrielectClient } from "./api.js";
import { PlaygroundController } from "./controller.js";
import { renderView } from "./render.js";

const SAMPLES: Record<string, string> = {
  "two stacked":
    '{"particles": [{"nodes": [[0, 0]]}, {"nodes": [[0, 1]]}]}',
  "stuck pair":
    '{"particles": [{"nodes": [[0, 0], [1, 0]]}, {"nodes": [[-1, 0]]}]}',
  "small ring":
    '{"particles": [{"nodes": [[1, 0]]}, {"nodes": [[0, 1]]}, {"nodes": [[-1, 1]]}, ' +
    '{"nodes": [[-1, 0]]}, {"nodes": [[0, -1]]}, {"nodes": [[1, -1]]}]}',
};

function byId<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) {
    throw new Error(`missing element #${id}`);
  }
  return node as T;
}

function start(): void {
  const controller = new PlaygroundController(new TrielectClient(""));
  const targets = {
    svg: byId<HTMLElement>("board") as unknown as SVGSVGElement,
    status: byId("status"),
    progress: byId("progress"),
    monitor: byId("monitor"),
  };
  const configInput = byId<HTMLTextAreaElement>("config-input");

  controller.subscribe((view) => {
    renderView(targets, view, {
      onParticleClick: (pid) => void controller.clickParticle(pid),
    });
    byId<HTMLButtonElement>("undo").disabled = view.busy || !view.sessionId;
    byId<HTMLButtonElement>("autoplay").textContent = view.autoplaying
      ? "pause"
      : "autoplay";
  });

  byId("load").addEventListener("click", () => {
    void controller.loadSession(configInput.value);
  });
  byId<HTMLInputElement>("config-file").addEventListener("change", (event) => {
    const file = (event.target as HTMLInputElement).files?.[0];
    if (!file) {
      return;
    }
    void file.text().then((text) => {
      configInput.value = text;
      void controller.loadSession(text);
    });
  });
  const samples = byId<HTMLSelectElement>("samples");
  for (const name of Object.keys(SAMPLES)) {
    const option = document.createElement("option");
    option.value = name;
    option.textContent = name;
    samples.append(option);
  }
  samples.addEventListener("change", () => {
    const text = SAMPLES[samples.value];
    if (text) {
      configInput.value = text;
      void controller.loadSession(text);
    }
  });
  byId("undo").addEventListener("click", () => void controller.undo());
  byId("autoplay").addEventListener("click", () => {
    if (controller.view.autoplaying) {
      controller.stopAutoplay();
    } else {
      const strategy = byId<HTMLSelectElement>("strategy").value;
      const speed = Number(byId<HTMLInputElement>("speed").value);
      controller.startAutoplay({
        strategy,
        seed: Math.floor(Math.random() * 1_000_000),
        batch: 1,
        intervalMs: Math.max(40, 1000 - speed * 9),
      });
    }
  });

  configInput.value = SAMPLES["two stacked"];
  void controller.loadSession(configInput.value);
}

document.addEventListener("DOMContentLoaded", start);
