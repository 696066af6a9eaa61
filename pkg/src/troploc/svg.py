"""SVG figures of a solved location instance.

Demand points are filled circles, distance bounds are diamonds around
them, the strip edges are vertical dashed lines and the optimal set is a
thick polyline.  Output is byte-for-byte deterministic.
"""

from __future__ import annotations

from xml.sax.saxutils import escape

from .location import LocationInstance, LocationSolution

WIDTH_PX = 640


def _num(v: float) -> str:
    s = f"{v:.4f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def _bbox(inst: LocationInstance, sol: LocationSolution):
    xs, ys = [0.0], [0.0]  # keep the origin (axes) in view
    for (r1, r2) in inst.points:
        xs.append(r1)
        ys.append(r2)
    if inst.uses_bounds:
        for (r1, r2), d in zip(inst.points, inst.distance_bounds):
            xs += [r1 - d, r1 + d]
            ys += [r2 - d, r2 + d]
    if inst.uses_strip:
        xs += list(inst.strip)
    for x1, x2 in sol.polyline:
        xs.append(x1)
        ys.append(x2)
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    # inflate by 10% of the larger side so degenerate extents still get room
    pad = 0.1 * max(x1 - x0, y1 - y0, 1.0)
    return x0 - pad, x1 + pad, y0 - pad, y1 + pad


def render_svg(inst: LocationInstance, sol: LocationSolution) -> str:
    """An SVG 1.1 document drawing ``inst`` and its optimal set."""
    xmin, xmax, ymin, ymax = _bbox(inst, sol)
    w, h = xmax - xmin, ymax - ymin
    unit = max(w, h) / 100.0
    height_px = round(WIDTH_PX * h / w)

    def P(x, y):
        # mathematical orientation: flip y
        return f"{_num(x)},{_num(-y)}"

    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{WIDTH_PX}" height="{height_px}" '
        f'viewBox="{_num(xmin)} {_num(-ymax)} {_num(w)} {_num(h)}">',
        f'<g font-family="sans-serif" font-size="{_num(3 * unit)}">',
    ]

    # axes
    out.append(
        f'<line class="axis" x1="{_num(xmin)}" y1="0" x2="{_num(xmax)}" y2="0" '
        f'stroke="#888" stroke-width="{_num(0.2 * unit)}"/>'
    )
    out.append(
        f'<line class="axis" x1="0" y1="{_num(-ymin)}" x2="0" y2="{_num(-ymax)}" '
        f'stroke="#888" stroke-width="{_num(0.2 * unit)}"/>'
    )
    out.append(f'<text x="{_num(xmax - 3 * unit)}" y="{_num(3 * unit)}">x1</text>')
    out.append(f'<text x="{_num(unit)}" y="{_num(-ymax + 3 * unit)}">x2</text>')

    if inst.uses_strip:
        for label, x in zip(("s", "t"), inst.strip):
            out.append(
                f'<line class="strip" x1="{_num(x)}" y1="{_num(-ymin)}" x2="{_num(x)}" '
                f'y2="{_num(-ymax)}" stroke="#36c" stroke-dasharray="{_num(unit)},{_num(unit)}" '
                f'stroke-width="{_num(0.3 * unit)}"/>'
            )
            out.append(f'<text x="{_num(x + 0.5 * unit)}" y="{_num(-ymin - unit)}">{label}</text>')

    if inst.uses_bounds:
        for (r1, r2), d in zip(inst.points, inst.distance_bounds):
            corners = " ".join(P(*c) for c in ((r1 + d, r2), (r1, r2 + d), (r1 - d, r2), (r1, r2 - d)))
            out.append(
                f'<polygon class="diamond" points="{corners}" fill="none" stroke="#555" '
                f'stroke-width="{_num(0.3 * unit)}"/>'
            )

    for j, (r1, r2) in enumerate(inst.points, 1):
        out.append(f'<circle class="demand" cx="{_num(r1)}" cy="{_num(-r2)}" r="{_num(unit)}" fill="black"/>')
        out.append(f'<text x="{_num(r1 + 1.2 * unit)}" y="{_num(-r2 - 1.2 * unit)}">{escape(f"r{j}")}</text>')

    first, last = sol.polyline[0], sol.polyline[-1]
    if all(v == first for v in sol.polyline):
        out.append(
            f'<circle class="solution" cx="{_num(first[0])}" cy="{_num(-first[1])}" '
            f'r="{_num(1.5 * unit)}" fill="#c00"/>'
        )
    else:
        pts = " ".join(P(*v) for v in sol.polyline)
        out.append(
            f'<polyline class="solution" points="{pts}" fill="none" stroke="#c00" '
            f'stroke-width="{_num(1.2 * unit)}" stroke-linecap="round"/>'
        )
        for label, (x1, x2) in (("x'", first), ("x''", last)):
            out.append(f'<circle class="endpoint" cx="{_num(x1)}" cy="{_num(-x2)}" r="{_num(unit)}" fill="#c00"/>')
            out.append(f'<text x="{_num(x1 + 1.2 * unit)}" y="{_num(-x2 + 3 * unit)}">{escape(label)}</text>')

    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
