"""Bilatticed spaces and latticed torsors for block-upper-triangular groups."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import accumulate

from . import matrix as mx
from .errors import (
    DimensionMismatch,
    InvariantViolation,
    NotAMorphism,
    NotInGroup,
    NotStrictExact,
    SingularMatrix,
)
from .filtration import Flag, bb_filtration, dominance_leq, is_strict_filtered_map
from .lattice import CocharType, LatticeBasis, dual, relative_type, type_of_matrix

__all__ = [
    "BilatticedSpace",
    "GroupShape",
    "GoodnessReport",
    "ExtensionReport",
    "BorelReport",
    "bl_type",
    "bl_ord",
    "bl_exterior",
    "bl_dual",
    "bb_side",
    "is_strict_bl_map",
    "check_extension_dominance",
    "induced_sequence",
    "is_good",
    "borel_unipotent_report",
]


@dataclass(frozen=True, eq=False)
class BilatticedSpace:
    L1: LatticeBasis
    L2: LatticeBasis

    def __post_init__(self):
        if self.L1.dim != self.L2.dim:
            raise DimensionMismatch(f"lattices of rank {self.L1.dim} and {self.L2.dim}")

    @property
    def dim(self) -> int:
        return self.L1.dim

    @property
    def field(self):
        return self.L1.field

    def __eq__(self, other):
        if not isinstance(other, BilatticedSpace):
            return NotImplemented
        return self.L1 == other.L1 and self.L2 == other.L2

    __hash__ = None


@dataclass(frozen=True)
class GroupShape:
    """Standard parabolic of block-upper-triangular matrices."""

    blocks: tuple

    def __post_init__(self):
        blocks = tuple(int(b) for b in self.blocks)
        if not blocks or any(b <= 0 for b in blocks):
            raise InvariantViolation("shape_positive_blocks", f"bad block sizes {list(self.blocks)}")
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def borel(cls, n: int) -> "GroupShape":
        return cls((1,) * n)

    @classmethod
    def full(cls, n: int) -> "GroupShape":
        return cls((n,))

    @property
    def dim(self) -> int:
        return sum(self.blocks)

    def ranges(self):
        starts = [0, *accumulate(self.blocks)]
        return [range(a, b) for a, b in zip(starts, starts[1:])]

    def block_of(self):
        """Block index of each coordinate."""
        return [k for k, r in enumerate(self.ranges()) for _ in r]

    def contains(self, g) -> bool:
        idx = self.block_of()
        return all(
            g[i][j].is_zero() for i in range(len(g)) for j in range(len(g)) if idx[i] > idx[j]
        )

    def levi_blocks(self, g):
        return [[[g[i][j] for j in r] for i in r] for r in self.ranges()]


@dataclass(frozen=True)
class GoodnessReport:
    is_good: bool
    full_type: CocharType
    levi_type: CocharType
    strict_dominance_witness: int | None = None


@dataclass(frozen=True)
class ExtensionReport:
    gr_type: CocharType
    total_type: CocharType
    dominates: bool
    strict: bool
    ord_chain: tuple = ()
    chain_ok: bool = True


@dataclass(frozen=True)
class BorelReport:
    orientation: str
    positive_integral: bool
    levi_integral: bool
    negative_integral: bool
    verdict: bool
    cross_check_type: CocharType
    cross_check_agrees: bool
    factors: tuple = dc_field(default=(), compare=False, repr=False)


def bl_type(bs: BilatticedSpace) -> CocharType:
    return relative_type(bs.L1, bs.L2)


def bl_ord(bs: BilatticedSpace) -> int:
    """Smallest i with t^i L1 ⊆ L2."""
    coords = mx.mul(bs.L2.inverse_matrix, bs.L1.matrix)
    return -mx.min_valuation(coords)


def bl_exterior(bs: BilatticedSpace, k: int) -> BilatticedSpace:
    if not 1 <= k <= bs.dim:
        raise DimensionMismatch(f"exterior power {k} of a rank {bs.dim} space")
    if k == 1:
        return bs
    return BilatticedSpace(
        LatticeBasis(mx.compound(bs.L1.matrix, k), bs.field),
        LatticeBasis(mx.compound(bs.L2.matrix, k), bs.field),
    )


def bl_dual(bs: BilatticedSpace) -> BilatticedSpace:
    return BilatticedSpace(dual(bs.L1), dual(bs.L2))


def bl_direct_sum(a: BilatticedSpace, b: BilatticedSpace) -> BilatticedSpace:
    def block(x, y):
        n, m = x.dim, y.dim
        zero = mx.zeros(x.field, 1, 1)[0][0]
        rows = [list(r) + [zero] * m for r in x.matrix] + [[zero] * n + list(r) for r in y.matrix]
        return LatticeBasis(rows, x.field)

    return BilatticedSpace(block(a.L1, b.L1), block(a.L2, b.L2))


def bb_side(bs: BilatticedSpace, side: int) -> Flag:
    """Side 1 filters L1/tL1 by L2; side 2 filters L2/tL2 by L1."""
    if side == 1:
        return bb_filtration(bs.L2, bs.L1)
    if side == 2:
        return bb_filtration(bs.L1, bs.L2)
    raise ValueError(f"side must be 1 or 2, not {side!r}")


def _coords_in(f, source: LatticeBasis, target: LatticeBasis):
    """Matrix of f(source basis) in the target basis."""
    return mx.mul(target.inverse_matrix, mx.mul(f, source.matrix))


def _saturation_defect(z) -> int:
    """Min valuation of maximal minors of an integral full-column-rank matrix."""
    r = len(z[0]) if z else 0
    if r == 0:
        return 0
    e = mx.determinantal_valuations(z)
    return e[r - 1]


def _image_coords(f, source: LatticeBasis, target: LatticeBasis):
    """An R-basis of f(source), in target coordinates."""
    image = mx.mul(f, source.matrix)
    cols = mx.column_reduce(image)
    if not cols:
        return []
    return mx.mul(target.inverse_matrix, mx.from_columns(cols))


def _check_map(f, a: BilatticedSpace, b: BilatticedSpace):
    f = [[a.field.scalar(x) for x in row] for row in f]
    if len(f) != b.dim or any(len(r) != a.dim for r in f):
        raise DimensionMismatch(f"map does not go from rank {a.dim} to rank {b.dim}")
    return f


def is_strict_bl_map(f, a: BilatticedSpace, b: BilatticedSpace) -> bool:
    """f(L_i) = f(V) ∩ L'_i for i = 1, 2."""
    f = _check_map(f, a, b)
    strict = True
    for src, dst in ((a.L1, b.L1), (a.L2, b.L2)):
        z = _image_coords(f, src, dst)
        if not z:
            continue
        if not mx.is_integral(z):
            raise NotAMorphism("map does not carry the source lattice into the target lattice")
        if _saturation_defect(z) != 0:
            strict = False
    return strict


def _map_rank(f) -> int:
    return len(mx.column_reduce(f)) if f else 0


def _verify_strict_exact(s, v, q, incl, proj):
    if v.dim != s.dim + q.dim:
        raise NotStrictExact(f"ranks {s.dim} + {q.dim} do not add up to {v.dim}")
    try:
        strict_in = is_strict_bl_map(incl, s, v)
        strict_out = is_strict_bl_map(proj, v, q)
    except NotAMorphism as exc:
        raise NotStrictExact(str(exc)) from exc
    if not (strict_in and strict_out):
        raise NotStrictExact("a map in the sequence is not strict")
    incl = _check_map(incl, s, v)
    proj = _check_map(proj, v, q)
    if _map_rank(incl) != s.dim:
        raise NotStrictExact("the inclusion is not injective")
    if _map_rank(proj) != q.dim:
        raise NotStrictExact("the projection is not surjective")
    if any(not x.is_zero() for row in mx.mul(proj, incl) for x in row):
        raise NotStrictExact("projection after inclusion is not zero")
    return incl, proj


def _exterior_ords(bs: BilatticedSpace):
    return [0] + [bl_ord(bl_exterior(bs, k)) for k in range(1, bs.dim + 1)]


def check_extension_dominance(s, v, q, incl, proj) -> ExtensionReport:
    """Types of V and of S ⊕ Q for a strict exact sequence, with the ord chain."""
    _verify_strict_exact(s, v, q, incl, proj)
    gr = CocharType.sorted_from(tuple(bl_type(s)) + tuple(bl_type(q)))
    total = bl_type(v)
    ord_v, ord_s, ord_q = _exterior_ords(v), _exterior_ords(s), _exterior_ords(q)
    chain = []
    for k in range(1, v.dim + 1):
        ord_gr = max(
            ord_s[j] + ord_q[k - j] for j in range(max(0, k - q.dim), min(k, s.dim) + 1)
        )
        chain.append((k, ord_v[k], ord_gr))
    return ExtensionReport(
        gr_type=gr,
        total_type=total,
        dominates=dominance_leq(gr, total),
        strict=gr != total,
        ord_chain=tuple(chain),
        chain_ok=all(a >= b for _, a, b in chain),
    )


def residue_map(f, source: LatticeBasis, target: LatticeBasis):
    """The K-linear map source/t·source -> target/t·target induced by f."""
    coords = _coords_in(f, source, target)
    if not mx.is_integral(coords):
        raise NotAMorphism("map does not carry the source lattice into the target lattice")
    return mx.residue(coords)


def induced_sequence(s, v, q, incl, proj, side: int):
    """BB flags of S, V, Q on one side, the residue maps, and their strictness."""
    incl = _check_map(incl, s, v)
    proj = _check_map(proj, v, q)
    lat = (lambda x: x.L1) if side == 1 else (lambda x: x.L2)
    flags = [bb_side(x, side) for x in (s, v, q)]
    maps = [residue_map(incl, lat(s), lat(v)), residue_map(proj, lat(v), lat(q))]
    strict = (
        is_strict_filtered_map(maps[0], flags[0], flags[1]),
        is_strict_filtered_map(maps[1], flags[1], flags[2]),
    )
    return flags, maps, strict


def _check_square_invertible(g):
    n = len(g)
    if n == 0 or any(len(r) != n for r in g):
        raise DimensionMismatch("group element must be a nonempty square matrix")
    if mx.det(g).is_zero():
        raise SingularMatrix("group element is singular")


def is_good(g, shape: GroupShape) -> GoodnessReport:
    """Compare the Cartan type of g with that of its block-diagonal part."""
    _check_square_invertible(g)
    if shape.dim != len(g):
        raise DimensionMismatch(f"shape of size {shape.dim} for a {len(g)}x{len(g)} matrix")
    if not shape.contains(g):
        raise NotInGroup(f"matrix is not block-upper-triangular for blocks {list(shape.blocks)}")
    full = type_of_matrix(g)
    levi = CocharType.sorted_from(x for blk in shape.levi_blocks(g) for x in type_of_matrix(blk))
    witness = None
    for k, (a, b) in enumerate(zip(levi.partial_sums(), full.partial_sums()), start=1):
        if a != b:
            witness = k
            break
    return GoodnessReport(
        is_good=full == levi, full_type=full, levi_type=levi, strict_dominance_witness=witness
    )


def _level_block_part(u, mu):
    n = len(u)
    zero = u[0][0] * 0
    return [[u[i][j] if mu[i] == mu[j] else zero for j in range(n)] for i in range(n)]


def _unipotent_orientation(u):
    n = len(u)
    if any(u[i][i] != 1 for i in range(n)):
        raise NotInGroup("matrix is not unipotent")
    upper = all(u[i][j].is_zero() for i in range(n) for j in range(i))
    lower = all(u[i][j].is_zero() for i in range(n) for j in range(i + 1, n))
    if upper:
        return "upper"
    if lower:
        return "lower"
    raise NotInGroup("unipotent matrix must be upper or lower triangular")


def borel_unipotent_report(u, mu) -> BorelReport:
    """Integrality conditions on the weight factorization of u with respect to mu."""
    n = len(u)
    if n == 0 or any(len(r) != n for r in u):
        raise DimensionMismatch("unipotent element must be a nonempty square matrix")
    if len(mu) != n:
        raise DimensionMismatch(f"type of length {len(mu)} for a {n}x{n} matrix")
    mu = tuple(int(x) for x in mu)
    if any(a < b for a, b in zip(mu, mu[1:])):
        raise InvariantViolation("cochar_decreasing", f"{list(mu)} is not dominant")
    orientation = _unipotent_orientation(u)
    field = u[0][0].field
    one = mx.identity(field, n)
    u0 = _level_block_part(u, mu)
    u0_inv = mx.inverse(u0)
    if orientation == "upper":
        u_pos, u_neg = mx.mul(u, u0_inv), one
    else:
        u_pos, u_neg = one, mx.mul(u0_inv, u)
    pos_ok = mx.is_integral(u_pos)
    levi_ok = mx.is_integral(u0)
    neg_ok = mx.is_integral(mx.conjugate_t(u_neg, mu, inverse=True))
    verdict = pos_ok and levi_ok and neg_ok
    shifted = mx.mul(u, mx.diagonal_t(field, mu))
    cross = type_of_matrix(shifted)
    return BorelReport(
        orientation=orientation,
        positive_integral=pos_ok,
        levi_integral=levi_ok,
        negative_integral=neg_ok,
        verdict=verdict,
        cross_check_type=cross,
        cross_check_agrees=(cross == CocharType(mu)) == verdict,
        factors=(u_pos, u0, u_neg),
    )

