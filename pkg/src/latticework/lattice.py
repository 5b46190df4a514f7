"""Lattices over R = K[[t]] ∩ K(t) inside K(t)^n.

A lattice is stored as an invertible column matrix; the lattice is the
R-span of the columns.  Equality between lattices is semantic, so
:class:`LatticeBasis` is deliberately unhashable.
"""

from __future__ import annotations

from . import matrix as mx
from .errors import DimensionMismatch, FieldMismatch, InvariantViolation, NotContained
from .scalar import QQ, Field, LaurentScalar

__all__ = [
    "LatticeBasis",
    "CocharType",
    "ResidueSubspace",
    "standard_lattice",
    "relative_type",
    "contains",
    "combine",
    "join",
    "meet",
    "dual",
    "scale",
    "image_mod_t",
]


class CocharType(tuple):
    """Weakly decreasing integer vector."""

    def __new__(cls, entries=()):
        vals = tuple(entries)
        for x in vals:
            if isinstance(x, bool) or not isinstance(x, int):
                raise InvariantViolation("cochar_integral", f"non-integer entry {x!r}")
        if any(a < b for a, b in zip(vals, vals[1:])):
            raise InvariantViolation("cochar_decreasing", f"{list(vals)} is not weakly decreasing")
        return super().__new__(cls, vals)

    @classmethod
    def sorted_from(cls, entries) -> "CocharType":
        return cls(sorted((int(x) for x in entries), reverse=True))

    def inverse(self) -> "CocharType":
        """The type -reverse(mu), i.e. of the inverse cocharacter."""
        return CocharType(-x for x in reversed(self))

    def partial_sums(self):
        out, acc = [], 0
        for x in self:
            acc += x
            out.append(acc)
        return out

    def __repr__(self):
        return f"CocharType({list(self)})"


class ResidueSubspace:
    """A K-subspace of K^n, stored by its reduced row echelon basis."""

    __slots__ = ("field", "ambient_dim", "basis")

    def __init__(self, field: Field, ambient_dim: int, vectors=()):
        self.field = field
        self.ambient_dim = ambient_dim
        self.basis = tuple(
            tuple(r) for r in mx.k_span([[field.coeff(x) for x in v] for v in vectors], field, ambient_dim)
        )

    @classmethod
    def full(cls, field, n):
        return cls(field, n, [[field.one if i == j else field.zero for i in range(n)] for j in range(n)])

    @classmethod
    def zero(cls, field, n):
        return cls(field, n, [])

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains_vector(self, v) -> bool:
        return mx.k_contains(self.basis, [self.field.coeff(x) for x in v], self.field)

    def issubspace(self, other: "ResidueSubspace") -> bool:
        return all(other.contains_vector(v) for v in self.basis)

    def __add__(self, other):
        return ResidueSubspace(self.field, self.ambient_dim, self.basis + other.basis)

    def __and__(self, other):
        return ResidueSubspace(
            self.field,
            self.ambient_dim,
            mx.k_intersect(self.basis, other.basis, self.field, self.ambient_dim),
        )

    def image(self, f, target_dim: int) -> "ResidueSubspace":
        """Image under a K-matrix f (rows of length ambient_dim)."""
        return ResidueSubspace(self.field, target_dim, [mx.k_apply(f, v) for v in self.basis])

    def annihilator(self) -> "ResidueSubspace":
        """Annihilator in the dual space, identified with K^n."""
        return ResidueSubspace(
            self.field,
            self.ambient_dim,
            mx.k_nullspace([list(v) for v in self.basis], self.field, self.ambient_dim),
        )

    def __eq__(self, other):
        if not isinstance(other, ResidueSubspace):
            return NotImplemented
        return (
            self.field == other.field
            and self.ambient_dim == other.ambient_dim
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.field, self.ambient_dim, tuple(tuple(str(c) for c in v) for v in self.basis)))

    def __repr__(self):
        rows = [[self.field.format_coeff(c) for c in v] for v in self.basis]
        return f"ResidueSubspace(dim={self.dim}, ambient={self.ambient_dim}, basis={rows})"


class LatticeBasis:
    """R-lattice in K(t)^n given by an invertible matrix of generating columns."""

    __hash__ = None

    def __init__(self, rows, field: Field | None = None):
        rows = [list(r) for r in rows]
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise DimensionMismatch("lattice basis must be a nonempty square matrix")
        if field is None:
            field = next(
                (x.field for r in rows for x in r if isinstance(x, LaurentScalar)), QQ
            )
        self.field = field
        self.matrix = [[field.scalar(x) for x in r] for r in rows]
        self.dim = n
        self._inverse = mx.inverse(self.matrix)

    @classmethod
    def from_columns(cls, cols, field: Field | None = None) -> "LatticeBasis":
        return cls(mx.transpose([list(c) for c in cols]), field)

    @classmethod
    def _trusted(cls, rows, inv, field):
        self = object.__new__(cls)
        self.field = field
        self.matrix = rows
        self.dim = len(rows)
        self._inverse = inv
        return self

    @property
    def columns(self):
        return mx.columns(self.matrix)

    @property
    def inverse_matrix(self):
        return self._inverse

    def transformed(self, g) -> "LatticeBasis":
        """g · L for an invertible matrix g."""
        return LatticeBasis(mx.mul(g, self.matrix), self.field)

    def __eq__(self, other):
        if not isinstance(other, LatticeBasis):
            return NotImplemented
        _check(self, other)
        return mx.is_integral(mx.mul(self._inverse, other.matrix)) and mx.is_integral(
            mx.mul(other._inverse, self.matrix)
        )

    def __repr__(self):
        cols = [[str(x) for x in c] for c in self.columns]
        return f"LatticeBasis(columns={cols})"


def _check(a: LatticeBasis, b: LatticeBasis):
    if a.dim != b.dim:
        raise DimensionMismatch(f"lattices of rank {a.dim} and {b.dim}")
    if a.field != b.field:
        raise FieldMismatch(f"lattices over {a.field} and {b.field}")


def standard_lattice(n: int, field: Field = QQ) -> LatticeBasis:
    ident = mx.identity(field, n)
    return LatticeBasis._trusted(ident, mx.identity(field, n), field)


def type_of_matrix(g) -> CocharType:
    """Cartan type of an invertible matrix g, i.e. of the pair (Λ₀, gΛ₀)."""
    e = mx.determinantal_valuations(g)
    slots = [e[0]] + [e[k] - e[k - 1] for k in range(1, len(e))]
    return CocharType.sorted_from(slots)


def relative_type(source: LatticeBasis, target: LatticeBasis) -> CocharType:
    """The type mu with target = h t^mu source, h in GL_n(R), via determinantal divisors."""
    _check(source, target)
    return type_of_matrix(mx.mul(source._inverse, target.matrix))


def contains(lattice: LatticeBasis, v) -> bool:
    if len(v) != lattice.dim:
        raise DimensionMismatch(f"vector of length {len(v)} against rank {lattice.dim}")
    v = [lattice.field.scalar(x) for x in v]
    return all(x.is_integral() for x in mx.mat_vec(lattice._inverse, v))


def contains_lattice(outer: LatticeBasis, inner: LatticeBasis) -> bool:
    _check(outer, inner)
    return mx.is_integral(mx.mul(outer._inverse, inner.matrix))


def dual(lattice: LatticeBasis) -> LatticeBasis:
    """Dual lattice {w : w·v in R for all v in L}; columns = transpose-inverse."""
    return LatticeBasis._trusted(
        mx.transpose(lattice._inverse), mx.transpose(lattice.matrix), lattice.field
    )


def join(a: LatticeBasis, b: LatticeBasis) -> LatticeBasis:
    _check(a, b)
    wide = [ra + rb for ra, rb in zip(a.matrix, b.matrix)]
    return LatticeBasis.from_columns(mx.column_reduce(wide), a.field)


def meet(a: LatticeBasis, b: LatticeBasis) -> LatticeBasis:
    return dual(join(dual(a), dual(b)))


def combine(a: LatticeBasis, b: LatticeBasis, mode: str) -> LatticeBasis:
    if mode == "join":
        return join(a, b)
    if mode == "meet":
        return meet(a, b)
    raise ValueError(f"mode must be 'meet' or 'join', not {mode!r}")


def scale(lattice: LatticeBasis, k: int) -> LatticeBasis:
    """t^k · L."""
    f = lattice.field
    tk, tmk = f.t(k), f.t(-k)
    return LatticeBasis._trusted(
        mx.scale(lattice.matrix, tk), mx.scale(lattice._inverse, tmk), f
    )


def image_mod_t(sub: LatticeBasis, ambient: LatticeBasis) -> ResidueSubspace:
    """Image of N in M/tM, coordinates relative to the basis of M."""
    _check(sub, ambient)
    coords = mx.mul(ambient._inverse, sub.matrix)
    if not mx.is_integral(coords):
        raise NotContained("first lattice is not contained in the second")
    return ResidueSubspace(sub.field, sub.dim, mx.columns(mx.residue(coords)))
