"""Decreasing filtrations of K^n and the lattice/filtration dictionary.

A :class:`Flag` lists its jumps ``(j_1 < ... < j_r)`` with strictly
decreasing subspaces ``V_1 ⊋ ... ⊋ V_r``, where ``V_1`` is the whole space.
``F^i`` is ``V_k`` for the smallest ``k`` with ``j_k >= i`` and zero past
the last jump.  The graded piece in degree ``j_k`` is ``V_k / V_{k+1}``.
"""

from __future__ import annotations

import math

from . import matrix as mx
from .errors import DimensionMismatch, InvariantViolation, NotFiltered, SingularMatrix
from .lattice import CocharType, LatticeBasis, ResidueSubspace
from .scalar import QQ, Field, LaurentScalar

__all__ = [
    "Flag",
    "flag_type",
    "dominance_leq",
    "rees_lattice",
    "bb_filtration",
    "is_minuscule",
    "is_strict_filtered_map",
    "dual_flag",
    "tensor_flag",
]


class Flag:
    __slots__ = ("field", "dim", "steps")

    def __init__(self, field: Field, dim: int, steps):
        steps = tuple((int(j), s) for j, s in steps)
        if not steps:
            raise InvariantViolation("flag_exhaustive", "a flag needs at least one step")
        for j, s in steps:
            if s.ambient_dim != dim or s.field != field:
                raise DimensionMismatch(f"step {j} lives in the wrong space")
        if steps[0][1].dim != dim:
            raise InvariantViolation("flag_exhaustive", "first step must be the whole space")
        for (j0, s0), (j1, s1) in zip(steps, steps[1:]):
            if j1 <= j0:
                raise InvariantViolation("flag_jumps_increasing", f"jump {j1} after {j0}")
            if s1.dim >= s0.dim or not s1.issubspace(s0):
                raise InvariantViolation("flag_strictly_nested", f"step {j1} is not a proper subspace of step {j0}")
        if steps[-1][1].dim == 0:
            raise InvariantViolation("flag_separated", "last listed step must be nonzero")
        self.field = field
        self.dim = dim
        self.steps = steps

    @classmethod
    def trivial(cls, n: int, field: Field = QQ, jump: int = 0) -> "Flag":
        return cls(field, n, [(jump, ResidueSubspace.full(field, n))])

    @classmethod
    def from_function(cls, field, n, lo, hi, fn) -> "Flag":
        """Flag with F^i = fn(i) on [lo, hi]; F^lo must be everything, F^(hi+1) = 0."""
        spaces = {i: fn(i) for i in range(lo, hi + 1)}
        spaces[hi + 1] = ResidueSubspace.zero(field, n)
        steps = [(i, spaces[i]) for i in range(lo, hi + 1) if spaces[i] != spaces[i + 1]]
        return cls(field, n, steps)

    @classmethod
    def from_degrees(cls, field, vectors, degrees) -> "Flag":
        """Flag with F^i spanned by the vectors of degree >= i (vectors form a basis)."""
        n = len(vectors)
        lo, hi = min(degrees), max(degrees)
        return cls.from_function(
            field,
            n,
            lo,
            hi,
            lambda i: ResidueSubspace(field, n, [v for v, d in zip(vectors, degrees) if d >= i]),
        )

    @property
    def jumps(self):
        return [j for j, _ in self.steps]

    def at(self, i: int) -> ResidueSubspace:
        for j, s in self.steps:
            if j >= i:
                return s
        return ResidueSubspace.zero(self.field, self.dim)

    def graded_dims(self) -> dict:
        """{jump: dim gr^jump}, listing only nonzero pieces."""
        dims = [s.dim for _, s in self.steps] + [0]
        return {j: dims[k] - dims[k + 1] for k, (j, _) in enumerate(self.steps)}

    def __eq__(self, other):
        if not isinstance(other, Flag):
            return NotImplemented
        return self.field == other.field and self.dim == other.dim and self.steps == other.steps

    def __hash__(self):
        return hash((self.field, self.dim, self.steps))

    def __repr__(self):
        parts = ", ".join(f"{j}: dim {s.dim}" for j, s in self.steps)
        return f"Flag(n={self.dim}, {{{parts}}})"


def flag_type(flag: Flag) -> CocharType:
    entries = []
    for j, d in flag.graded_dims().items():
        entries.extend([j] * d)
    return CocharType.sorted_from(entries)


def dominance_leq(mu, nu) -> bool:
    """Partial sums of mu are all <= those of nu."""
    if len(mu) != len(nu):
        raise DimensionMismatch(f"types of length {len(mu)} and {len(nu)}")
    a = b = 0
    for x, y in zip(mu, nu):
        a += x
        b += y
        if a > b:
            return False
    return True


def is_minuscule(mu) -> bool:
    return not mu or max(mu) - min(mu) <= 1


def adapted_basis(flag: Flag):
    """(vector, degree) pairs: a basis adapted to the flag, deepest step first."""
    chosen, out = [], []
    for j, space in reversed(flag.steps):
        for v in space.basis:
            if not mx.k_contains(mx.k_span(chosen, flag.field, flag.dim), v, flag.field):
                chosen.append(list(v))
                out.append((list(v), j))
    return out


def rees_lattice(flag: Flag) -> LatticeBasis:
    """The lattice spanned by t^-i · F^i over all i."""
    f = flag.field
    cols = [[f.scalar(c) * f.t(-j) for c in v] for v, j in adapted_basis(flag)]
    return LatticeBasis.from_columns(cols, f)


def _smith_with_residue(g, field):
    """Exponents e_k and residues of columns a_k with g·R^n = span(t^e_k · a_k).

    Valuation-pivoted diagonalization; only the residue of the accumulated
    left factor is tracked, since that is all a filtration needs.
    """
    n = len(g)
    work = [list(r) for r in g]
    zero, one = field.zero, field.one
    left = [[one if i == j else zero for j in range(n)] for i in range(n)]
    exps = []
    for k in range(n):
        best = None
        for i in range(k, n):
            for j in range(k, n):
                v = work[i][j].valuation()
                if v != math.inf and (best is None or v < best[0]):
                    best = (v, i, j)
        if best is None:
            raise SingularMatrix("matrix is singular")
        v, pi, pj = best
        work[k], work[pi] = work[pi], work[k]
        for row in left:
            row[k], row[pi] = row[pi], row[k]
        for row in work:
            row[k], row[pj] = row[pj], row[k]
        inv = work[k][k].inverse()
        for i in range(k + 1, n):
            f = work[i][k] * inv
            if not f.is_zero():
                work[i] = [x - f * y for x, y in zip(work[i], work[k])]
                c = f.residue()
                if c:
                    for row in left:
                        row[k] = row[k] + c * row[i]
        # Column operations only touch row k now; they leave the left factor alone.
        work[k][k + 1:] = [LaurentScalar.zero(field)] * (n - k - 1)
        exps.append(v)
    return exps, [[row[k] for row in left] for k in range(n)]


def bb_filtration(lattice: LatticeBasis, base: LatticeBasis) -> Flag:
    """Filtration of base/t·base with F^k the image of (t^k · lattice) ∩ base."""
    if lattice.dim != base.dim:
        raise DimensionMismatch(f"lattices of rank {lattice.dim} and {base.dim}")
    field, n = base.field, base.dim
    exps, cols = _smith_with_residue(mx.mul(base.inverse_matrix, lattice.matrix), field)
    return Flag.from_function(
        field,
        n,
        -max(exps),
        -min(exps),
        lambda k: ResidueSubspace(field, n, [c for c, e in zip(cols, exps) if e <= -k]),
    )


def _range_points(*flags):
    pts = set()
    for fl in flags:
        for j in fl.jumps:
            pts.update((j, j + 1))
    return sorted(pts)


def _to_coeffs(f, field):
    return [[field.coeff(x) for x in row] for row in f]


def is_strict_filtered_map(f, source: Flag, target: Flag) -> bool:
    """f(F^k) = f(V) ∩ G^k for every k; raises NotFiltered if f(F^k) ⊄ G^k."""
    field = source.field
    f = _to_coeffs(f, field)
    if len(f) != target.dim or any(len(r) != source.dim for r in f):
        raise DimensionMismatch(
            f"map of shape {len(f)}x{len(f[0]) if f else 0} between K^{source.dim} and K^{target.dim}"
        )
    image = ResidueSubspace.full(field, source.dim).image(f, target.dim)
    strict = True
    for k in _range_points(source, target):
        fk = source.at(k).image(f, target.dim)
        gk = target.at(k)
        if not fk.issubspace(gk):
            raise NotFiltered(f"f(F^{k}) is not contained in G^{k}")
        if fk != (image & gk):
            strict = False
    return strict


def dual_flag(flag: Flag) -> Flag:
    """(F^v)^i = annihilator of F^(1-i) in the dual space."""
    lo, hi = -flag.jumps[-1], -flag.jumps[0]
    return Flag.from_function(
        flag.field, flag.dim, lo, hi, lambda i: flag.at(1 - i).annihilator()
    )


def _kron(u, v):
    return [a * b for a in u for b in v]


def tensor_flag(a: Flag, b: Flag) -> Flag:
    """(F ⊗ G)^k = sum over i + j = k of F^i ⊗ G^j."""
    if a.field != b.field:
        raise DimensionMismatch("flags over different fields")
    field, n = a.field, a.dim * b.dim
    lo = a.jumps[0] + b.jumps[0]
    hi = a.jumps[-1] + b.jumps[-1]

    def piece(k):
        vecs = []
        for i in a.jumps:
            fa, fb = a.at(i), b.at(k - i)
            vecs.extend(_kron(u, v) for u in fa.basis for v in fb.basis)
        return ResidueSubspace(field, n, vecs)

    return Flag.from_function(field, n, lo, hi, piece)
