"""Dense matrix kernels over K(t) and over K.

Matrices are plain row-major lists of lists.  Entries are
:class:`~latticework.scalar.LaurentScalar` for the K(t) routines and raw
flint coefficients for the ``k_*`` routines (linear algebra over the base
field, used for residue spaces and flags).
"""

from __future__ import annotations

import math
from itertools import combinations

from .errors import DimensionMismatch, SingularMatrix
from .scalar import Field, LaurentScalar


def shape(a):
    return len(a), (len(a[0]) if a else 0)


def identity(field: Field, n: int):
    one, zero = field.scalar(1), LaurentScalar.zero(field)
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def zeros(field: Field, m: int, n: int):
    zero = LaurentScalar.zero(field)
    return [[zero] * n for _ in range(m)]


def diagonal_t(field: Field, exponents):
    n = len(exponents)
    zero = LaurentScalar.zero(field)
    return [[field.t(exponents[i]) if i == j else zero for j in range(n)] for i in range(n)]


def transpose(a):
    return [list(col) for col in zip(*a)]


def mul(a, b):
    m, k = shape(a)
    k2, n = shape(b)
    if k != k2:
        raise DimensionMismatch(f"cannot multiply {m}x{k} by {k2}x{n}")
    bt = transpose(b)
    out = []
    for row in a:
        out_row = []
        for col in bt:
            acc = None
            for x, y in zip(row, col):
                if x.is_zero() or y.is_zero():
                    continue
                p = x * y
                acc = p if acc is None else acc + p
            out_row.append(acc if acc is not None else x * 0)
        out.append(out_row)
    return out


def mat_vec(a, v):
    return [row[0] for row in mul(a, [[x] for x in v])]


def scale(a, c):
    return [[x * c for x in row] for row in a]


def conjugate_t(a, mu, inverse=False):
    """t^mu · a · t^-mu (or t^-mu · a · t^mu when ``inverse``)."""
    s = -1 if inverse else 1
    return [
        [x if x.is_zero() else x * x.field.t(s * (mu[i] - mu[j])) for j, x in enumerate(row)]
        for i, row in enumerate(a)
    ]


def min_valuation(a):
    return min((x.valuation() for row in a for x in row), default=math.inf)


def is_integral(a) -> bool:
    return all(x.is_integral() for row in a for x in row)


def residue(a):
    """Entrywise t -> 0 of an integral matrix."""
    return [[x.residue() for x in row] for row in a]


def _pivot_row(a, col, start):
    best, best_v = None, math.inf
    for r in range(start, len(a)):
        v = a[r][col].valuation()
        if v < best_v:
            best, best_v = r, v
    return best


def inverse(a):
    n, m = shape(a)
    if n != m:
        raise DimensionMismatch("inverse of a non-square matrix")
    field = a[0][0].field
    work = [list(row) + list(e) for row, e in zip(a, identity(field, n))]
    for c in range(n):
        p = _pivot_row(work, c, c)
        if p is None:
            raise SingularMatrix("matrix is not invertible")
        work[c], work[p] = work[p], work[c]
        inv = work[c][c].inverse()
        work[c] = [x * inv for x in work[c]]
        for r in range(n):
            if r != c and not work[r][c].is_zero():
                f = work[r][c]
                work[r] = [x - f * y for x, y in zip(work[r], work[c])]
    return [row[n:] for row in work]


def det(a):
    n, m = shape(a)
    if n != m:
        raise DimensionMismatch("determinant of a non-square matrix")
    if n == 0:
        raise DimensionMismatch("determinant of an empty matrix")
    field = a[0][0].field
    work = [list(row) for row in a]
    result = field.scalar(1)
    for c in range(n):
        p = _pivot_row(work, c, c)
        if p is None:
            return LaurentScalar.zero(field)
        if p != c:
            work[c], work[p] = work[p], work[c]
            result = -result
        piv = work[c][c]
        result = result * piv
        inv = piv.inverse()
        for r in range(c + 1, n):
            if not work[r][c].is_zero():
                f = work[r][c] * inv
                work[r] = [x - f * y for x, y in zip(work[r], work[c])]
    return result


def minors_by_size(a, zero, kmax=None):
    """All minors, by Laplace expansion along the last row of each subset.

    Returns a list indexed by k (1..kmax) of dicts mapping
    ``(rows, cols)`` index tuples to the k x k minor.  Works for any entry
    type with ring operations (scalars or flint polynomials).
    """
    m, n = shape(a)
    kmax = min(m, n) if kmax is None else kmax
    levels = [None, {((i,), (j,)): a[i][j] for i in range(m) for j in range(n)}]
    for k in range(2, kmax + 1):
        prev = levels[-1]
        cur = {}
        for rows in combinations(range(m), k):
            head, last = rows[:-1], a[rows[-1]]
            for cols in combinations(range(n), k):
                acc = zero
                for j, c in enumerate(cols):
                    x = last[c]
                    if x == 0:
                        continue
                    sub = prev[(head, cols[:j] + cols[j + 1 :])]
                    if sub == 0:
                        continue
                    term = x * sub
                    acc = acc + term if (k - 1 + j) % 2 == 0 else acc - term
                cur[(rows, cols)] = acc
        levels.append(cur)
    return levels


def compound(a, k):
    """k-th compound matrix, index subsets in lexicographic order."""
    m, n = shape(a)
    field = a[0][0].field
    minors = minors_by_size(a, LaurentScalar.zero(field), k)[k]
    return [
        [minors[(rows, cols)] for cols in combinations(range(n), k)]
        for rows in combinations(range(m), k)
    ]


def to_polynomial_matrix(a):
    """Write a = t^-m · P / D with P polynomial and D(0) = 1.

    Returns (P as flint polys, m).  D has valuation zero, so minor valuations
    of P are those of t^m · a.
    """
    field = a[0][0].field
    nonzero = [x for row in a for x in row if not x.is_zero()]
    if not nonzero:
        return [[field.poly([]) for _ in row] for row in a], 0
    m = -min(x.shift for x in nonzero)
    d = field.poly([1])
    for x in nonzero:
        if x.den.degree() > 0 and not (d % x.den).is_zero():
            d = d * x.den // d.gcd(x.den)
    out = []
    for row in a:
        prow = []
        for x in row:
            if x.is_zero():
                prow.append(field.poly([]))
                continue
            p = x.num if d.degree() == 0 else x.num * (d // x.den)
            s = x.shift + m
            prow.append(p.left_shift(s) if s else p)
        out.append(prow)
    return out, m


def poly_valuation(p):
    if p.is_zero():
        return math.inf
    for i, c in enumerate(p.coeffs()):
        if c != 0:
            return i


def determinantal_valuations(a):
    """[e_1, ..., e_r]: min valuation over k x k minors of a, for each k."""
    p, m = to_polynomial_matrix(a)
    zero = a[0][0].field.poly([])
    levels = minors_by_size(p, zero)
    out = []
    for k in range(1, len(levels)):
        v = min(poly_valuation(x) for x in levels[k].values())
        out.append(v - k * m if v != math.inf else math.inf)
    return out


def column_reduce(a):
    """Valuation-pivoted column reduction over R = K[[t]] ∩ K(t).

    Returns the list of surviving column vectors: an R-basis of the
    R-span of the columns of ``a``.  The pivot is the entry of minimal
    valuation over the unpivoted rows and remaining columns, ties broken by
    lowest row and then lowest column.
    """
    m, n = shape(a)
    cols = [list(c) for c in zip(*a)] if a else []
    remaining = list(range(n))
    free_rows = list(range(m))
    kept = []
    while remaining and free_rows:
        best = None
        for r in free_rows:
            for c in remaining:
                v = cols[c][r].valuation()
                if v != math.inf and (best is None or v < best[0]):
                    best = (v, r, c)
        if best is None:
            break
        _, r, c = best
        piv = cols[c]
        inv = piv[r].inverse()
        remaining.remove(c)
        free_rows.remove(r)
        for c2 in remaining:
            x = cols[c2][r]
            if not x.is_zero():
                f = x * inv
                cols[c2] = [y - f * z for y, z in zip(cols[c2], piv)]
        kept.append(piv)
    return kept


def from_columns(cols):
    return transpose(cols)


def columns(a):
    return [list(c) for c in zip(*a)]


# -- linear algebra over the base field K --------------------------------


def k_rref(rows, field):
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    work = [list(r) for r in rows]
    pivots = []
    ncols = len(work[0]) if work else 0
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(work)) if work[i][c] != 0), None)
        if p is None:
            continue
        work[r], work[p] = work[p], work[r]
        inv = field.one / work[r][c]
        work[r] = [x * inv for x in work[r]]
        for i in range(len(work)):
            if i != r and work[i][c] != 0:
                f = work[i][c]
                work[i] = [x - f * y for x, y in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    return work[:r], pivots


def k_rank(rows, field):
    return len(k_rref(rows, field)[0]) if rows else 0


def k_span(vectors, field, n):
    """Canonical basis (rref rows) of the span of ``vectors`` in K^n."""
    vecs = [list(v) for v in vectors]
    if not vecs:
        return []
    for v in vecs:
        if len(v) != n:
            raise DimensionMismatch(f"vector of length {len(v)} in K^{n}")
    return k_rref(vecs, field)[0]


def k_nullspace(rows, field, ncols):
    """Basis of {x : rows · x = 0}."""
    if not rows:
        return [[field.one if i == j else field.zero for i in range(ncols)] for j in range(ncols)]
    red, pivots = k_rref(rows, field)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [field.zero] * ncols
        x[f] = field.one
        for row, pc in zip(red, pivots):
            x[pc] = -row[f]
        basis.append(x)
    return basis


def k_apply(f, v):
    """f · v for a K-matrix f (rows) and K-vector v."""
    out = []
    for row in f:
        acc = row[0] * 0 if row else None
        for x, y in zip(row, v):
            acc = acc + x * y
        out.append(acc)
    return out


def k_intersect(u, w, field, n):
    """Intersection of spans of row lists u and w in K^n."""
    if not u or not w:
        return []
    # solve sum a_i u_i = sum b_j w_j
    cols = [list(x) for x in u] + [[-c for c in x] for x in w]
    system = transpose(cols)
    kernel = k_nullspace(system, field, len(cols))
    vecs = []
    for sol in kernel:
        v = [field.zero] * n
        for a, x in zip(sol[: len(u)], u):
            if a != 0:
                v = [vi + a * xi for vi, xi in zip(v, x)]
        vecs.append(v)
    return k_span(vecs, field, n)


def k_contains(span_rows, v, field):
    if all(x == 0 for x in v):
        return True
    if not span_rows:
        return False
    return k_rank(list(span_rows) + [list(v)], field) == len(span_rows)
