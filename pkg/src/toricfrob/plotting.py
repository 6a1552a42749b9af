"""SVG diagrams of the Neron-Severi plane for Picard rank 2.

Draws the effective and nef extreme rays, the closed hull of the ray-class
zonotope (edges belonging to the half-open zonotope solid, the excluded ones
dashed), the support lattice points, and the ray class labels on a unit grid.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional

from .classes import ClassGroup, class_group, eff_cone, nef_cone
from .errors import RequiresRankTwo
from .fan import Fan
from .frobenius import fsupp
from .polyhedra import extreme_rays, half_open_member

SIZE = 800
MARGIN = 60


def _hull(points):
    """Monotone-chain convex hull over exact rational points."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _zonotope_hull(pi):
    sums = [(0, 0)]
    for v in pi:
        sums = [s for s in sums] + [(s[0] + v[0], s[1] + v[1]) for s in sums]
    return _hull(sums)


def plot_ns(fan: Fan, cg: Optional[ClassGroup] = None) -> str:
    cg = cg or class_group(fan)
    if cg.rank != 2:
        raise RequiresRankTwo("the diagram needs Picard rank 2, got %d" % cg.rank)
    pi = cg.pi_free
    hull = _zonotope_hull(pi)
    entries = fsupp(fan, cg)
    support = [e.cls for e in entries]

    xs = [p[0] for p in hull] + [p[0] for p in support] + [0]
    ys = [p[1] for p in hull] + [p[1] for p in support] + [0]
    lo_x, hi_x = min(xs) - 1, max(xs) + 1
    lo_y, hi_y = min(ys) - 1, max(ys) + 1
    span = max(hi_x - lo_x, hi_y - lo_y)
    unit = Fraction(SIZE - 2 * MARGIN, span)

    def sx(x):
        return float(MARGIN + (Fraction(x) - lo_x) * unit)

    def sy(y):
        return float(SIZE - MARGIN - (Fraction(y) - lo_y) * unit)

    def pt(x, y):
        return "%.2f,%.2f" % (sx(x), sy(y))

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        'width="%d" height="%d" viewBox="0 0 %d %d">' % (SIZE, SIZE, SIZE, SIZE),
        '<rect width="%d" height="%d" fill="white"/>' % (SIZE, SIZE),
    ]
    # lattice-unit grid
    for gx in range(lo_x, hi_x + 1):
        parts.append(
            '<line x1="%.2f" y1="%.2f" x2="%.2f" y2="%.2f" '
            'stroke="#e0e0e0" stroke-width="1"/>'
            % (sx(gx), sy(lo_y), sx(gx), sy(hi_y))
        )
    for gy in range(lo_y, hi_y + 1):
        parts.append(
            '<line x1="%.2f" y1="%.2f" x2="%.2f" y2="%.2f" '
            'stroke="#e0e0e0" stroke-width="1"/>'
            % (sx(lo_x), sy(gy), sx(hi_x), sy(gy))
        )
    # axes
    parts.append(
        '<line x1="%.2f" y1="%.2f" x2="%.2f" y2="%.2f" stroke="#999" stroke-width="1"/>'
        % (sx(lo_x), sy(0), sx(hi_x), sy(0))
    )
    parts.append(
        '<line x1="%.2f" y1="%.2f" x2="%.2f" y2="%.2f" stroke="#999" stroke-width="1"/>'
        % (sx(0), sy(lo_y), sx(0), sy(hi_y))
    )

    def ray_endpoint(g):
        # extend the ray from the origin to the plot boundary box
        scale = None
        for coord, lo, hi in ((g[0], lo_x, hi_x), (g[1], lo_y, hi_y)):
            if coord > 0:
                s = Fraction(hi, coord)
            elif coord < 0:
                s = Fraction(lo, coord)
            else:
                continue
            scale = s if scale is None else min(scale, s)
        scale = scale if scale is not None else Fraction(0)
        return (g[0] * scale, g[1] * scale)

    for g in sorted(extreme_rays(eff_cone(cg))):
        ex, ey = ray_endpoint(g)
        parts.append(
            '<line x1="%.2f" y1="%.2f" x2="%.2f" y2="%.2f" '
            'stroke="#cc4444" stroke-width="2" class="eff-ray"/>'
            % (sx(0), sy(0), sx(ex), sy(ey))
        )
    for g in sorted(extreme_rays(nef_cone(cg))):
        ex, ey = ray_endpoint(g)
        parts.append(
            '<line x1="%.2f" y1="%.2f" x2="%.2f" y2="%.2f" '
            'stroke="#4444cc" stroke-width="2" stroke-dasharray="8,4" class="nef-ray"/>'
            % (sx(0), sy(0), sx(ex), sy(ey))
        )

    # zonotope hull: solid where the edge midpoint is in the half-open set
    if len(hull) >= 2:
        parts.append(
            '<polygon points="%s" fill="#44aa44" fill-opacity="0.15" stroke="none"/>'
            % " ".join(pt(x, y) for x, y in hull)
        )
        n = len(hull)
        for i in range(n):
            a, b = hull[i], hull[(i + 1) % n]
            mid = (Fraction(a[0] + b[0], 2), Fraction(a[1] + b[1], 2))
            solid = half_open_member(pi, mid)
            style = 'stroke="#228822" stroke-width="2"'
            if not solid:
                style += ' stroke-dasharray="6,6"'
            parts.append(
                '<line x1="%.2f" y1="%.2f" x2="%.2f" y2="%.2f" %s class="zonotope-edge"/>'
                % (sx(a[0]), sy(a[1]), sx(b[0]), sy(b[1]), style)
            )

    for v in support:
        parts.append(
            '<circle cx="%.2f" cy="%.2f" r="5" fill="#882288" class="fsupp-point"/>'
            % (sx(v[0]), sy(v[1]))
        )
    parts.append(
        '<circle cx="%.2f" cy="%.2f" r="4" fill="#333" class="origin"/>' % (sx(0), sy(0))
    )

    seen = {}
    for i, g in enumerate(pi):
        seen.setdefault(g, []).append(i + 1)
    for g, idxs in sorted(seen.items()):
        label = ",".join("P%d" % i for i in idxs)
        parts.append(
            '<text x="%.2f" y="%.2f" font-size="14" fill="#444" class="ray-label">%s</text>'
            % (sx(g[0]) + 8, sy(g[1]) - 8, label)
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
