"""Independent brute-force oracles working on truncated coefficient vectors.

A lattice L with t^hi·R^n ⊆ L ⊆ t^lo·R^n is determined by its image in
t^lo·R^n / t^hi·R^n, a K-space of dimension n·(hi - lo) spanned by the
truncated expansions of t^k·(columns of L).
"""

from latticework import ResidueSubspace, image_mod_t, relative_type, scale, standard_lattice
from latticework.lattice import meet
from latticework import matrix as mx
from latticework.filtration import Flag


def window(*lattices):
    lo = min(mx.min_valuation(x.matrix) for x in lattices)
    hi = max(-mx.min_valuation(x.inverse_matrix) for x in lattices)
    return lo, max(hi, lo + 1)


def truncated(lattice, lo, hi):
    n, field = lattice.dim, lattice.field
    vecs = []
    for col in lattice.columns:
        for k in range(hi - lo):
            shifted = [x * field.t(k) for x in col]
            vec = []
            for x in shifted:
                vec.extend(x.expand(lo, hi - 1))
            vecs.append(vec)
    return ResidueSubspace(field, n * (hi - lo), vecs)


def same_lattice(a, b, lo, hi):
    return truncated(a, lo, hi) == truncated(b, lo, hi)


def residue_of_meet(g, field):
    """Image mod t of (g·R^n) ∩ R^n, by solving for truncated coefficient vectors."""
    n = len(g)
    m = max(0, -mx.min_valuation(g))
    depth = m + 1
    unknowns = n * depth  # coefficient c_{j,k} of t^k in the j-th coordinate
    constraints, residue = [], []
    for i in range(n):
        for d in range(-m, 1):
            row = []
            for j in range(n):
                for k in range(depth):
                    row.append(g[i][j].expand(d - k, d - k)[0])
            (residue if d == 0 else constraints).append(row)
    kernel = mx.k_nullspace(constraints, field, unknowns)
    return ResidueSubspace(field, n, [mx.k_apply(residue, x) for x in kernel])


def bb_by_meets(lattice, base):
    """The BB filtration computed literally, one meet per degree."""
    mu = relative_type(base, lattice)
    return Flag.from_function(
        base.field,
        base.dim,
        -mu[0],
        -mu[-1],
        lambda k: image_mod_t(meet(scale(lattice, k), base), base),
    )


def std(n, field):
    return standard_lattice(n, field)
