"""Slope vectors, Newton and Hodge polygons, and admissibility bookkeeping.

Orientation is pinned by the rank-one Tate objects: the object of twist k
has slope vector (-k), etale type (k), de Rham type (-k), Hodge filtration
in degree -k and Hodge-Tate filtration in degree k.  Every signed quantity
in this module is defined so that those anchors hold.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import DimensionMismatch, IntegralityError, InvariantViolation
from .bilattice import BilatticedSpace, bb_side, bl_type
from .filtration import flag_type
from .lattice import CocharType, scale, standard_lattice
from .scalar import QQ

__all__ = [
    "SlopeVector",
    "Polygon",
    "AdmissibilityReport",
    "TateAnchor",
    "make_slopes",
    "slope_arith",
    "mazur_member",
    "basic_element",
    "is_basic_for_shape",
    "compact_mod_center",
    "admissibility_report",
    "tate_anchor",
    "polygon_of",
    "charpoly",
    "newton_point",
    "render_svg",
]


def _check_integrality(values):
    for lam, mult in Counter(values).items():
        if mult % lam.denominator:
            raise IntegralityError(
                f"slope {lam} occurs {mult} time(s); multiplicity must be a multiple of {lam.denominator}"
            )


class SlopeVector(tuple):
    """Weakly decreasing rational vector with Dieudonne-Manin multiplicities."""

    def __new__(cls, entries=()):
        vals = tuple(Fraction(x) for x in entries)
        if any(a < b for a, b in zip(vals, vals[1:])):
            raise InvariantViolation("slopes_decreasing", f"{[str(x) for x in vals]} is not weakly decreasing")
        _check_integrality(vals)
        return super().__new__(cls, vals)

    def total(self) -> Fraction:
        return sum(self, Fraction(0))

    def dual(self) -> "SlopeVector":
        return SlopeVector(-x for x in reversed(self))

    def __repr__(self):
        return f"SlopeVector({[str(x) for x in self]})"


def make_slopes(raw) -> SlopeVector:
    return SlopeVector(sorted((Fraction(x) for x in raw), reverse=True))


def slope_arith(a, b=None, mode: str = "tensor") -> SlopeVector:
    """tensor(a, b), dual(a), or exterior(a, k) with b = k."""
    if mode == "tensor":
        return make_slopes(x + y for x in a for y in b)
    if mode == "dual":
        return SlopeVector(a).dual()
    if mode == "exterior":
        k = int(b)
        if not 1 <= k <= len(a):
            raise DimensionMismatch(f"exterior power {k} of a rank {len(a)} vector")
        return make_slopes(sum(c, Fraction(0)) for c in combinations(a, k))
    raise ValueError(f"mode must be tensor, dual or exterior, not {mode!r}")


def _partial_sums(v):
    acc, out = Fraction(0), []
    for x in v:
        acc += x
        out.append(acc)
    return out


def mazur_member(nu, mu) -> bool:
    """Equal totals and every partial sum of nu at most that of mu."""
    if len(nu) != len(mu):
        raise DimensionMismatch(f"vectors of length {len(nu)} and {len(mu)}")
    a, b = _partial_sums(nu), _partial_sums(mu)
    return (not a or a[-1] == b[-1]) and all(x <= y for x, y in zip(a, b))


def basic_element(mu) -> SlopeVector:
    n = len(mu)
    return SlopeVector([Fraction(sum(mu), n)] * n)


def is_basic_for_shape(nu, shape, levi_only: bool = False) -> bool:
    """Central slope homomorphism for the block group, or for its Levi when ``levi_only``.

    For the Levi the slopes must split into groups, one per block, each
    constant with a denominator dividing the block size.
    """
    blocks = list(shape.blocks)
    if len(nu) != sum(blocks):
        raise DimensionMismatch(f"slope vector of length {len(nu)} for blocks {blocks}")
    nu = [Fraction(x) for x in nu]
    if len(set(nu)) <= 1:
        return True
    if not levi_only:
        return False
    remaining = Counter(nu)

    def assign(i):
        if i == len(blocks):
            return True
        size = blocks[i]
        for lam in sorted(remaining):
            if remaining[lam] >= size and size % lam.denominator == 0:
                remaining[lam] -= size
                if assign(i + 1):
                    return True
                remaining[lam] += size
        return False

    return assign(0)


def compact_mod_center(nu) -> bool:
    """Isoclinic of slope a/n with gcd(a, n) = 1, n the rank."""
    n = len(nu)
    if n == 0 or len(set(nu)) != 1:
        return False
    return Fraction(nu[0]).denominator == n


@dataclass(frozen=True)
class AdmissibilityReport:
    newton: SlopeVector
    etale_type: CocharType
    de_rham_type: CocharType
    bundle_slopes: tuple
    modified_degree: Fraction
    degree_zero: bool
    mazur_ok: bool
    verdict_necessary: bool
    weight: Fraction
    semistability: str = "not decided at the polygon level"


def admissibility_report(nu, etale_type) -> AdmissibilityReport:
    """Degree-zero and Mazur necessary conditions for an admissible pair."""
    nu = SlopeVector(nu)
    etale = CocharType(etale_type)
    if len(nu) != len(etale):
        raise DimensionMismatch(f"slope vector of length {len(nu)} with type of length {len(etale)}")
    de_rham = etale.inverse()
    degree = -nu.total() - sum(etale)
    mazur = mazur_member(nu, de_rham)
    n = len(nu)
    return AdmissibilityReport(
        newton=nu,
        etale_type=etale,
        de_rham_type=de_rham,
        bundle_slopes=tuple(-x for x in reversed(nu)),
        modified_degree=degree,
        degree_zero=degree == 0,
        mazur_ok=mazur,
        verdict_necessary=degree == 0 and mazur,
        weight=2 * (-nu.total() / n) if n else Fraction(0),
    )


@dataclass(frozen=True)
class TateAnchor:
    k: int
    nu: SlopeVector
    etale_type: CocharType
    de_rham_type: CocharType
    hodge_degree: int
    hodge_tate_degree: int
    modified_degree: Fraction
    weight: Fraction

    def dual(self) -> "TateAnchor":
        return TateAnchor(
            k=-self.k,
            nu=self.nu.dual(),
            etale_type=self.etale_type.inverse(),
            de_rham_type=self.de_rham_type.inverse(),
            hodge_degree=-self.hodge_degree,
            hodge_tate_degree=-self.hodge_tate_degree,
            modified_degree=-self.modified_degree,
            weight=-self.weight,
        )


def tate_anchor(k: int) -> TateAnchor:
    """Invariants of the rank-one Tate object of twist k."""
    base = standard_lattice(1, QQ)
    bs = BilatticedSpace(base, scale(base, k))
    etale = bl_type(bs)
    report = admissibility_report([-k], etale)
    return TateAnchor(
        k=k,
        nu=report.newton,
        etale_type=etale,
        de_rham_type=report.de_rham_type,
        hodge_degree=flag_type(bb_side(bs, 1))[0],
        hodge_tate_degree=flag_type(bb_side(bs, 2))[0],
        modified_degree=report.modified_degree,
        weight=report.weight,
    )


@dataclass(frozen=True)
class Polygon:
    """Lower-convex polygon from (0, 0): cumulative sums of increasing slopes."""

    vertices: tuple

    def __post_init__(self):
        verts = tuple((Fraction(x), Fraction(y)) for x, y in self.vertices)
        if not verts or verts[0] != (0, 0):
            raise InvariantViolation("polygon_origin", "polygon must start at (0, 0)")
        if any(b[0] <= a[0] for a, b in zip(verts, verts[1:])):
            raise InvariantViolation("polygon_x_increasing", "x-coordinates must increase")
        slopes = [(b[1] - a[1]) / (b[0] - a[0]) for a, b in zip(verts, verts[1:])]
        if any(s1 < s0 for s0, s1 in zip(slopes, slopes[1:])):
            raise InvariantViolation("polygon_convex", "segment slopes must be weakly increasing")
        object.__setattr__(self, "vertices", verts)

    @property
    def endpoint(self):
        return self.vertices[-1]

    def value_at(self, x) -> Fraction:
        x = Fraction(x)
        for (x0, y0), (x1, y1) in zip(self.vertices, self.vertices[1:]):
            if x0 <= x <= x1:
                return y0 + (y1 - y0) * (x - x0) / (x1 - x0)
        if x == 0 and len(self.vertices) == 1:
            return Fraction(0)
        raise ValueError(f"{x} outside the polygon's range")

    def on_or_above(self, other: "Polygon") -> bool:
        """Same endpoint and self >= other at every vertex of either."""
        if self.endpoint != other.endpoint:
            return False
        xs = {x for x, _ in self.vertices} | {x for x, _ in other.vertices}
        return all(self.value_at(x) >= other.value_at(x) for x in xs)


def polygon_of(v) -> Polygon:
    pts, y = [(0, Fraction(0))], Fraction(0)
    for i, x in enumerate(sorted(Fraction(e) for e in v), start=1):
        y += x
        pts.append((i, y))
    return Polygon(tuple(pts))


def charpoly(a):
    """Characteristic polynomial coefficients, leading first (Berkowitz, division free)."""
    n = len(a)
    one = a[0][0].field.scalar(1)
    zero = one * 0
    vect = [one, -a[0][0]]
    for r in range(1, n):
        sub = [row[:r] for row in a[:r]]
        row_r = a[r][:r]
        x = [a[i][r] for i in range(r)]
        toeplitz = [one, -a[r][r]]
        for _ in range(r):
            toeplitz.append(-sum((u * w for u, w in zip(row_r, x)), zero))
            x = [sum((u * w for u, w in zip(srow, x)), zero) for srow in sub]
        vect = [
            sum((toeplitz[i - j] * vect[j] for j in range(min(i, len(vect) - 1) + 1)), zero)
            for i in range(r + 2)
        ]
    return vect


def newton_point(b) -> SlopeVector:
    """Valuations of the eigenvalues of b, from the t-adic Newton polygon of its charpoly."""
    n = len(b)
    coeffs = charpoly(b)
    # point (j, v(coefficient of x^j))
    pts = [(n - i, c.valuation()) for i, c in enumerate(coeffs) if not c.is_zero()]
    pts.sort()
    if pts[0][0] != 0:
        raise InvariantViolation("invertible", "matrix is singular")
    hull = []
    for p in pts:
        while len(hull) >= 2:
            (x0, y0), (x1, y1) = hull[-2], hull[-1]
            if (y1 - y0) * (p[0] - x0) >= (p[1] - y0) * (x1 - x0):
                hull.pop()
            else:
                break
        hull.append(p)
    vals = []
    for (x0, y0), (x1, y1) in zip(hull, hull[1:]):
        vals.extend([Fraction(-(y1 - y0), x1 - x0)] * (x1 - x0))
    return make_slopes(vals)


def _fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def render_svg(polygons, width: int = 400, height: int = 300, margin: int = 40) -> str:
    """Deterministic SVG: one polyline per (label, Polygon), with integer ticks on both axes."""
    items = list(polygons.items()) if isinstance(polygons, dict) else list(polygons)
    xs = [x for _, p in items for x, _ in p.vertices]
    ys = [y for _, p in items for _, y in p.vertices]
    xmax = max(max(xs), Fraction(1))
    ymin, ymax = min(min(ys), Fraction(0)), max(max(ys), Fraction(0))
    if ymax == ymin:
        ymax = ymin + 1
    sx = Fraction(width - 2 * margin) / xmax
    sy = Fraction(height - 2 * margin) / (ymax - ymin)

    def px(x):
        return f"{float(margin + x * sx):.2f}"

    def py(y):
        return f"{float(height - margin - (y - ymin) * sy):.2f}"

    colors = ["#1f4e79", "#a23b2a", "#2e7d32", "#6a1b9a"]
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<line x1="{px(0)}" y1="{py(0)}" x2="{px(xmax)}" y2="{py(0)}" stroke="#888"/>',
        f'<line x1="{px(0)}" y1="{py(ymin)}" x2="{px(0)}" y2="{py(ymax)}" stroke="#888"/>',
    ]
    for i in range(int(xmax) + 1):
        out.append(
            f'<line x1="{px(i)}" y1="{float(py(0)) - 3:.2f}" x2="{px(i)}" y2="{float(py(0)) + 3:.2f}" stroke="#888"/>'
            f'<text x="{px(i)}" y="{float(py(0)) + 15:.2f}" font-size="10" text-anchor="middle">{i}</text>'
        )
    for j in range(math.ceil(ymin), math.floor(ymax) + 1):
        out.append(
            f'<line x1="{float(px(0)) - 3:.2f}" y1="{py(j)}" x2="{float(px(0)) + 3:.2f}" y2="{py(j)}" stroke="#888"/>'
            f'<text x="{float(px(0)) - 6:.2f}" y="{float(py(j)) + 3:.2f}" font-size="10" text-anchor="end">{j}</text>'
        )
    for idx, (label, poly) in enumerate(items):
        color = colors[idx % len(colors)]
        pts = " ".join(f"{px(x)},{py(y)}" for x, y in poly.vertices)
        out.append(f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="2"/>')
        lx, ly = poly.endpoint
        coords = ", ".join(f"({_fmt(x)}, {_fmt(y)})" for x, y in poly.vertices)
        out.append(
            f'<text x="{float(px(lx)) + 4:.2f}" y="{py(ly)}" font-size="11" fill="{color}">{label}</text>'
            f"<desc>{label}: {coords}</desc>"
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
