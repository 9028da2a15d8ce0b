"""Deterministic drawings of configurations.

ASCII uses a doubled character lattice (column = 4q + 2r, row = 2r) so
expanded particles can show their connector between the endpoints; SVG
uses the cartesian embedding x = q + r/2, y = r*sqrt(3)/2. Rendering
never mutates the configuration and identical inputs give identical
bytes.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import verify
from .configuration import Configuration, boundaries
from .engine import activable
from .grid import to_cartesian


@dataclass(frozen=True)
class RenderSpec:
    format: str = "ascii"  # "ascii" or "svg"
    show_leaders: bool = False
    show_conditions: bool = False
    show_boundaries: bool = False


def render(config: Configuration, spec: RenderSpec = RenderSpec()) -> str:
    if spec.format == "ascii":
        return render_ascii(config, spec)
    if spec.format == "svg":
        return render_svg(config, spec)
    raise ValueError(f"unknown render format {spec.format!r}")


def _annotations(config: Configuration, spec: RenderSpec):
    leader_pids = set(verify.leaders(config)) if spec.show_leaders else set()
    conditions = dict(activable(config)) if spec.show_conditions else {}
    return leader_pids, conditions


def render_ascii(config: Configuration, spec: RenderSpec = RenderSpec()) -> str:
    if not config.particles:
        return "(empty configuration)\n"
    leader_pids, conditions = _annotations(config, spec)
    bounds = boundaries(config)

    cells: dict[tuple[int, int], str] = {}

    def put(col: int, row: int, ch: str) -> None:
        cells[(col, row)] = ch

    for p in sorted(config.particles, key=lambda p: p.pid):
        glyph = "*" if p.pid in leader_pids else "o"
        for n in p.nodes:
            put(4 * n.q + 2 * n.r, 2 * n.r, glyph)
        if len(p.nodes) == 2:
            a, b = sorted(p.nodes, key=lambda n: (n.r, n.q))
            ca, ra = 4 * a.q + 2 * a.r, 2 * a.r
            cb, rb = 4 * b.q + 2 * b.r, 2 * b.r
            mid = ((ca + cb) // 2, (ra + rb) // 2)
            if ra == rb:
                put(*mid, "-")
            elif cb > ca:
                put(*mid, "\\")
            else:
                put(*mid, "/")

    if spec.show_boundaries:
        cols = [c for c, _ in cells]
        rows = [r for _, r in cells]
        lo_c, hi_c = min(cols) - 2, max(cols) + 2
        floor = 2 * bounds.r_max + 1
        for c in range(lo_c, hi_c + 1):
            cells.setdefault((c, floor), "~")
        for r in range(min(rows), floor + 1):
            # One column right of the rightmost occupied diagonal.
            grid_r = r // 2
            cells.setdefault((4 * bounds.q_max + 2 * grid_r + 2, r), ":")

    cols = [c for c, _ in cells]
    rows = [r for _, r in cells]
    lo_c, hi_c = min(cols), max(cols)
    lo_r, hi_r = min(rows), max(rows)
    lines = []
    for r in range(lo_r, hi_r + 1):
        line = "".join(cells.get((c, r), " ") for c in range(lo_c, hi_c + 1))
        lines.append(line.rstrip())
    out = "\n".join(lines) + "\n"

    legend = []
    if spec.show_conditions:
        for pid in sorted(conditions):
            nodes = ",".join(str(tuple(n)) for n in config.particle(pid).nodes)
            legend.append(f"activable pid {pid}: {conditions[pid].value} at {nodes}")
    if spec.show_leaders:
        legend.append(f"leaders: {sorted(leader_pids)}")
    if legend:
        out += "\n".join(legend) + "\n"
    return out


_SCALE = 40.0
_RADIUS = 12.0


def render_svg(config: Configuration, spec: RenderSpec = RenderSpec()) -> str:
    leader_pids, conditions = _annotations(config, spec)
    bounds = boundaries(config) if config.particles else None

    points = {}
    for p in config.particles:
        for n in p.nodes:
            x, y = to_cartesian(n)
            points[n] = (x * _SCALE, y * _SCALE)
    if points:
        xs = [x for x, _ in points.values()]
        ys = [y for _, y in points.values()]
        lo_x, hi_x = min(xs) - 2 * _SCALE, max(xs) + 2 * _SCALE
        lo_y, hi_y = min(ys) - 2 * _SCALE, max(ys) + 2 * _SCALE
    else:
        lo_x = lo_y = -_SCALE
        hi_x = hi_y = _SCALE

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{lo_x:.1f} {lo_y:.1f} '
        f'{hi_x - lo_x:.1f} {hi_y - lo_y:.1f}">',
        '<rect width="100%" height="100%" x="{:.1f}" y="{:.1f}" fill="white"/>'.format(
            lo_x, lo_y
        ),
    ]

    if spec.show_boundaries and bounds is not None:
        floor_y = (bounds.r_max + 0.5) * (3**0.5 / 2) * _SCALE
        parts.append(
            f'<line x1="{lo_x:.1f}" y1="{floor_y:.1f}" x2="{hi_x:.1f}" y2="{floor_y:.1f}" '
            'stroke="#c33" stroke-dasharray="6,4" stroke-width="2"/>'
        )
        # Rightmost occupied diagonal: the line q = q_max + 0.5 in axial terms.
        r_lo, r_hi = -2, bounds.r_max + 2
        x1 = (bounds.q_max + 0.5 + r_lo / 2) * _SCALE
        y1 = r_lo * (3**0.5 / 2) * _SCALE
        x2 = (bounds.q_max + 0.5 + r_hi / 2) * _SCALE
        y2 = r_hi * (3**0.5 / 2) * _SCALE
        parts.append(
            f'<line x1="{x1:.1f}" y1="{y1:.1f}" x2="{x2:.1f}" y2="{y2:.1f}" '
            'stroke="#36c" stroke-dasharray="6,4" stroke-width="2"/>'
        )

    for p in sorted(config.particles, key=lambda p: p.pid):
        if len(p.nodes) == 2:
            (x1, y1), (x2, y2) = (points[n] for n in p.nodes)
            parts.append(
                f'<line x1="{x1:.1f}" y1="{y1:.1f}" x2="{x2:.1f}" y2="{y2:.1f}" '
                'stroke="#444" stroke-width="8"/>'
            )
    for p in sorted(config.particles, key=lambda p: p.pid):
        fill = "#d4a017" if p.pid in leader_pids else "#2c7fb8"
        for n in p.nodes:
            x, y = points[n]
            parts.append(
                f'<circle cx="{x:.1f}" cy="{y:.1f}" r="{_RADIUS:.1f}" '
                f'fill="{fill}" stroke="#222" stroke-width="1.5"/>'
            )
        if p.pid in leader_pids:
            x, y = points[p.nodes[0]]
            parts.append(
                f'<circle cx="{x:.1f}" cy="{y:.1f}" r="{_RADIUS + 6:.1f}" '
                'fill="none" stroke="#d4a017" stroke-width="2.5"/>'
            )
        if p.pid in conditions:
            x, y = points[p.nodes[0]]
            parts.append(
                f'<text x="{x + _RADIUS + 3:.1f}" y="{y - _RADIUS:.1f}" '
                f'font-size="13" font-family="monospace" fill="#a22">'
                f"{conditions[p.pid].value}</text>"
            )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
