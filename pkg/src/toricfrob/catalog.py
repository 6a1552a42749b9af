"""Built-in fan catalog with a small name parser.

Names: projective(d), product(d1,...,dk), hirzebruch(n), delpezzo(k) for
k = 1..3, fatal_example, zero_nef_surface, weighted_projective(w0..wd),
blowup(name, (ray)).
"""

from __future__ import annotations

from itertools import combinations, product as iproduct

from .errors import UnknownName
from .exactlin import primitivize, smith_normal_form
from .fan import Fan, make_fan, star_subdivision


def projective(d: int) -> Fan:
    if d < 1:
        raise UnknownName("projective(d) needs d >= 1")
    rays = [tuple(1 if j == i else 0 for j in range(d)) for i in range(d)]
    rays.append(tuple(-1 for _ in range(d)))
    cones = list(combinations(range(d + 1), d))
    return make_fan(d, rays, cones, name="projective(%d)" % d)


def product_fan(*dims: int) -> Fan:
    fans = [projective(d) for d in dims]
    total = sum(dims)
    rays = []
    offsets = []
    pos = 0
    start = 0
    for f, d in zip(fans, dims):
        offsets.append(len(rays))
        for ray in f.rays:
            rays.append(tuple([0] * start + list(ray) + [0] * (total - start - d)))
        start += d
    cones = []
    for combo in iproduct(*[f.max_cones for f in fans]):
        cone = []
        for off, c in zip(offsets, combo):
            cone.extend(off + i for i in c)
        cones.append(tuple(sorted(cone)))
    name = "product(%s)" % ",".join(str(d) for d in dims)
    return make_fan(total, rays, cones, name=name)


def hirzebruch(n: int) -> Fan:
    if n < 0:
        raise UnknownName("hirzebruch(n) needs n >= 0")
    rays = [(1, 0), (0, 1), (-1, n), (0, -1)]
    cones = [(0, 1), (1, 2), (2, 3), (3, 0)]
    return make_fan(2, rays, cones, name="hirzebruch(%d)" % n)


_DELPEZZO_CENTERS = [(1, 1), (-1, 0), (0, -1)]


def delpezzo(k: int) -> Fan:
    if not 1 <= k <= 3:
        raise UnknownName("delpezzo(k) needs 1 <= k <= 3")
    fan = projective(2)
    for center in _DELPEZZO_CENTERS[:k]:
        fan = star_subdivision(fan, center)
    return Fan(fan.dim, fan.rays, fan.max_cones, name="delpezzo(%d)" % k)


def fatal_example() -> Fan:
    fan = star_subdivision(projective(3), (0, 3, 2))
    return Fan(fan.dim, fan.rays, fan.max_cones, name="fatal_example")


def zero_nef_surface() -> Fan:
    rays = [(1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1), (1, -1)]
    cones = [(i, (i + 1) % 7) for i in range(7)]
    return make_fan(2, rays, cones, name="zero_nef_surface")


def weighted_projective(*weights: int) -> Fan:
    if len(weights) < 2 or any(w <= 0 for w in weights):
        raise UnknownName("weighted_projective needs >= 2 positive weights")
    w = primitivize(weights)
    if w != tuple(weights):
        raise UnknownName("weights must be coprime")
    d = len(w) - 1
    # quotient Z^{d+1} / Z.w: rows of U from U w = e1 give the projection
    snf = smith_normal_form([[x] for x in w])
    U = snf.u
    rays = []
    for i in range(d + 1):
        img = tuple(U[row][i] for row in range(1, d + 1))
        rays.append(img)
    cones = list(combinations(range(d + 1), d))
    name = "weighted_projective(%s)" % ",".join(str(x) for x in weights)
    return make_fan(d, rays, cones, name=name)


def blowup(fan: Fan, ray) -> Fan:
    out = star_subdivision(fan, tuple(ray))
    name = "blowup(%s,%s)" % (fan.name or "fan", tuple(ray))
    return Fan(out.dim, out.rays, out.max_cones, name=name)


def _split_args(body: str) -> list[str]:
    parts = []
    depth = 0
    cur = []
    for ch in body:
        if ch == "," and depth == 0:
            parts.append("".join(cur).strip())
            cur = []
            continue
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        cur.append(ch)
    if cur:
        parts.append("".join(cur).strip())
    return [p for p in parts if p]


def catalog(name: str) -> Fan:
    text = name.strip()
    if "(" not in text:
        if text == "fatal_example":
            return fatal_example()
        if text == "zero_nef_surface":
            return zero_nef_surface()
        raise UnknownName("unknown catalog entry %r" % name)
    head, _, rest = text.partition("(")
    if not rest.endswith(")"):
        raise UnknownName("unbalanced parentheses in %r" % name)
    args = _split_args(rest[:-1])
    try:
        if head == "projective":
            return projective(int(args[0]))
        if head == "product":
            return product_fan(*[int(a) for a in args])
        if head == "hirzebruch":
            return hirzebruch(int(args[0]))
        if head == "delpezzo":
            return delpezzo(int(args[0]))
        if head == "weighted_projective":
            return weighted_projective(*[int(a) for a in args])
        if head == "blowup":
            inner = catalog(args[0])
            ray = tuple(int(x) for x in args[1].strip("()").split(","))
            return blowup(inner, ray)
    except UnknownName:
        raise
    except (ValueError, IndexError) as exc:
        raise UnknownName("bad arguments in %r: %s" % (name, exc)) from exc
    raise UnknownName("unknown catalog entry %r" % name)


def catalog_names() -> list[dict]:
    return [
        {"name": "projective(d)", "description": "projective space of dimension d"},
        {"name": "product(d1,...,dk)", "description": "product of projective spaces"},
        {"name": "hirzebruch(n)", "description": "Hirzebruch surface S_n"},
        {"name": "delpezzo(k)", "description": "plane blown up at k torus-fixed points (k = 1..3)"},
        {"name": "fatal_example", "description": "weighted blowup of 3-space along a plane conic direction"},
        {"name": "zero_nef_surface", "description": "seven-ray surface: the degree-6 del Pezzo blown up at a torus-fixed point (a = 0)"},
        {"name": "weighted_projective(w0,...,wd)", "description": "weighted projective space"},
        {"name": "blowup(name,(v))", "description": "star subdivision of a catalog fan at ray v"},
    ]


SMOOTH_CATALOG = [
    "projective(1)",
    "projective(2)",
    "projective(3)",
    "projective(4)",
    "product(1,1)",
    "product(1,2)",
    "product(1,3)",
    "product(2,2)",
    "product(1,1,1)",
    "hirzebruch(1)",
    "hirzebruch(2)",
    "hirzebruch(3)",
    "delpezzo(1)",
    "delpezzo(2)",
    "delpezzo(3)",
    "blowup(projective(3),(1,1,0))",
]
