"""Benchmark the compiled simulation kernel against the pure-Python twin.

Three workloads exercise the hot paths: per-activation decisions on a
static system, full scheduler runs, and model-check style successor
expansion with canonicalization. Usage::

    python benchmarks/bench_core.py [--repeat N]
"""

from __future__ import annotations

import argparse
import random
import time

from trielect.configuration import generate_random
from trielect.kernel import available_backends, make_state
from trielect.modelcheck import enumerate_forms


def _workload_decide(backend: str) -> int:
    """Recompute every particle's decision on 60 static systems."""
    ops = 0
    for seed in range(60):
        config = generate_random(1 + seed % 28, 0.4, 0.5, seed=seed)
        state = make_state([p.nodes for p in config.particles], backend)
        for _ in range(40):
            for i in range(len(config)):
                state.move_code(i)
                state.view_key(i)
                ops += 1
    return ops


def _workload_run(backend: str) -> int:
    """Scheduler runs to termination with greedy-style apply/revert probes."""
    rng = random.Random(7)
    steps = 0
    for seed in range(60):
        config = generate_random(1 + seed % 28, 0.35, 0.4, seed=1000 + seed)
        state = make_state([p.nodes for p in config.particles], backend)
        while state.count_activable():
            acts = state.activable()
            for i, _ in acts:  # one-step lookahead over every candidate
                record = state.apply(i)
                state.count_activable()
                state.revert(record)
            state.apply(rng.choice(acts)[0])
            steps += 1
            if steps % 64 == 0:
                state.is_connected()
                state.progress(50, 50)
    return steps


def _workload_expand(backend: str) -> int:
    """Model-check expansion: successors plus canonical keys, n = 3."""
    ops = 0
    for form in enumerate_forms(3, allow_expanded=True):
        state = make_state(form, backend)
        for i, _ in state.activable():
            record = state.apply(i)
            state.canonical_key()
            state.revert(record)
            ops += 1
    return ops


WORKLOADS = [
    ("decide+view_key", _workload_decide, "ops"),
    ("run+lookahead", _workload_run, "steps"),
    ("mc-expansion", _workload_expand, "edges"),
]


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    backends = available_backends()
    print(f"backends: {', '.join(backends)}")
    results: dict[tuple[str, str], float] = {}
    for name, fn, unit in WORKLOADS:
        for backend in backends:
            best = float("inf")
            count = 0
            for _ in range(args.repeat):
                start = time.perf_counter()
                count = fn(backend)
                best = min(best, time.perf_counter() - start)
            results[(name, backend)] = best
            print(f"{name:16s} [{backend}] {best:8.3f}s  ({count} {unit})")
    if "c" in backends and "py" in backends:
        print("\nspeedup (py / c):")
        for name, _, _ in WORKLOADS:
            ratio = results[(name, "py")] / results[(name, "c")]
            print(f"  {name:16s} {ratio:5.2f}x")


if __name__ == "__main__":
    main()
