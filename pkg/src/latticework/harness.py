"""Seeded generators, independent oracles, and the named verification suites.

Every trial draws from its own ``random.Random`` seeded by
``"{seed}:{suite}:{index}"``, so a trial's inputs depend only on those
three values.  Failing inputs are stored in the CLI's JSON formats and can
be fed back through :func:`replay`.
"""

from __future__ import annotations

import itertools
import math
import random
import time
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Callable

from . import jsonio
from . import matrix as mx
from .bilattice import (
    BilatticedSpace,
    GroupShape,
    bb_side,
    bl_direct_sum,
    bl_exterior,
    bl_ord,
    borel_unipotent_report,
    check_extension_dominance,
    induced_sequence,
    is_good,
)
from .errors import GenerationError, InvariantViolation, SingularMatrix, UnknownSuite
from .filtration import Flag, bb_filtration, dominance_leq, rees_lattice
from .lattice import (
    CocharType,
    LatticeBasis,
    contains_lattice,
    relative_type,
    scale,
    standard_lattice,
    type_of_matrix,
)
from .polygon import (
    admissibility_report,
    basic_element,
    mazur_member,
    SlopeVector,
    tate_anchor,
)
from .scalar import QQ, Field, LaurentScalar, parse_field

__all__ = [
    "TrialConfig",
    "SuiteReport",
    "SUITES",
    "gen",
    "oracle_type_via_diagonalization",
    "oracle_ord_scan",
    "run_suite",
    "run_all",
    "replay",
]

MAX_RETRIES = 200


@dataclass(frozen=True)
class TrialConfig:
    seed: int = 0
    trials: int = 500
    dim_max: int = 4
    field: Field = QQ
    window: int = 3

    def __post_init__(self):
        if isinstance(self.field, str):
            object.__setattr__(self, "field", parse_field(self.field))
        if self.trials < 1:
            raise InvariantViolation("trials_positive", "trials must be at least 1")
        if self.dim_max < 1:
            raise InvariantViolation("dim_max_positive", "dim_max must be at least 1")
        if self.window < 1:
            raise InvariantViolation("window_positive", "window must be at least 1")

    def rng(self, suite: str, index: int) -> random.Random:
        return random.Random(f"{self.seed}:{suite}:{index}")


@dataclass
class SuiteReport:
    suite: str
    trials: int
    failures: list = dc_field(default_factory=list)
    elapsed: float = 0.0
    notes: list = dc_field(default_factory=list)
    field: str = "Q"
    seed: int = 0

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "field": self.field,
            "seed": self.seed,
            "trials": self.trials,
            "passed": self.passed,
            "failures": self.failures,
            "elapsed": round(self.elapsed, 3),
            "notes": self.notes,
        }


# -- generators ---------------------------------------------------------


def _coeff(rng, field):
    while True:
        c = rng.choice((-2, -1, 1, 2, 3))
        x = field.coeff(c)
        if x != 0:
            return x


def random_scalar(rng, field: Field, window: int, lo: int | None = None) -> LaurentScalar:
    """One or two monomials with exponents in [lo, window], sometimes over (1 - c t)."""
    lo = -window if lo is None else lo
    x = LaurentScalar.zero(field)
    for _ in range(rng.choice((1, 1, 2))):
        x = x + field.scalar(_coeff(rng, field)) * field.t(rng.randint(lo, window))
    if not x.is_zero() and rng.random() < 0.15:
        x = x / (field.scalar(1) - field.scalar(_coeff(rng, field)) * field.t(1))
    return x


def random_matrix(rng, field, rows, cols, window, density=0.7, lo=None):
    zero = LaurentScalar.zero(field)
    return [
        [random_scalar(rng, field, window, lo) if rng.random() < density else zero for _ in range(cols)]
        for _ in range(rows)
    ]


def _invertible(draw):
    for _ in range(MAX_RETRIES):
        g = draw()
        if not mx.det(g).is_zero():
            return g
    raise GenerationError(f"no invertible draw after {MAX_RETRIES} attempts")


def random_invertible(rng, field, n, window, lo=None):
    return _invertible(lambda: random_matrix(rng, field, n, n, window, lo=lo))


def random_k_matrix(rng, field, n):
    """Invertible matrix over K, as rows of coefficients."""
    for _ in range(MAX_RETRIES):
        a = [[field.coeff(rng.randint(-2, 2)) for _ in range(n)] for _ in range(n)]
        if mx.k_rank(a, field) == n:
            return a
    raise GenerationError(f"no invertible constant matrix after {MAX_RETRIES} attempts")


def random_flag(rng, field, n, window) -> Flag:
    basis = mx.transpose(random_k_matrix(rng, field, n))
    degrees = [rng.randint(-window, window) for _ in range(n)]
    return Flag.from_degrees(field, basis, degrees)


def random_dominant(rng, n, window):
    return CocharType.sorted_from(rng.randint(-window, window) for _ in range(n))


def random_minuscule_lattice(rng, field, n):
    """h · t^mu · Λ₀ with mu minuscule and h in GL_n(R)."""
    a = rng.randint(-2, 2)
    mu = CocharType.sorted_from(a + rng.randint(0, 1) for _ in range(n))
    p0 = [[field.scalar(x) for x in row] for row in random_k_matrix(rng, field, n)]
    h1 = [[field.scalar(rng.randint(-2, 2)) for _ in range(n)] for _ in range(n)]
    h = [[x + y * field.t(1) for x, y in zip(r0, r1)] for r0, r1 in zip(p0, h1)]
    return LatticeBasis(mx.mul(h, mx.diagonal_t(field, mu)), field)


def random_unit_diagonal(rng, field, n):
    zero = LaurentScalar.zero(field)
    return [
        [field.scalar(_coeff(rng, field)) + field.scalar(rng.randint(0, 2)) * field.t(1) if i == j else zero for j in range(n)]
        for i in range(n)
    ]


def random_unipotent(rng, field, n, window, lower=False):
    one, zero = field.scalar(1), LaurentScalar.zero(field)
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            if i == j:
                row.append(one)
            elif (i > j) == lower and rng.random() < 0.75:
                # bias toward mildly negative valuations so both verdicts occur
                row.append(random_scalar(rng, field, window, lo=-2))
            else:
                row.append(zero)
        rows.append(row)
    return rows


def random_borel(rng, field, n, window):
    """(u, mu, b) with b = u · t^mu · z, z a diagonal unit."""
    u = random_unipotent(rng, field, n, window)
    mu = random_dominant(rng, n, min(window, 2))
    b = mx.mul(mx.mul(u, mx.diagonal_t(field, mu)), random_unit_diagonal(rng, field, n))
    return u, mu, b


def random_shape(rng, n):
    cuts = sorted(rng.sample(range(1, n), rng.randint(0, n - 1))) if n > 1 else []
    edges = [0, *cuts, n]
    return GroupShape(tuple(b - a for a, b in zip(edges, edges[1:])))


def random_parabolic(rng, field, shape: GroupShape, window):
    idx = shape.block_of()
    n = shape.dim
    zero = LaurentScalar.zero(field)

    def draw():
        return [
            [random_scalar(rng, field, window) if idx[i] <= idx[j] and (i == j or rng.random() < 0.7) else zero for j in range(n)]
            for i in range(n)
        ]

    return _invertible(draw)


@dataclass(eq=False)
class Extension:
    S: BilatticedSpace
    V: BilatticedSpace
    Q: BilatticedSpace
    incl: list
    proj: list


def _glue(a, y, b):
    s, q = len(a), len(b)
    zero = LaurentScalar.zero(a[0][0].field)
    return [list(a[i]) + list(y[i]) for i in range(s)] + [[zero] * s + list(b[i]) for i in range(q)]


def random_extension(rng, field, n, window) -> Extension:
    """0 -> S -> V -> Q -> 0, strict exact by construction.

    V's lattices are [[A_i, Y_i], [0, B_i]] with arbitrary gluing Y_i, so
    inclusion of the first block and projection to the second are strict
    whatever Y_i is.  The whole picture is then moved by a random constant
    change of basis.
    """
    s = rng.randint(1, n - 1)
    q = n - s
    a = [random_invertible(rng, field, s, window) for _ in range(2)]
    b = [random_invertible(rng, field, q, window) for _ in range(2)]
    y = [random_matrix(rng, field, s, q, window) for _ in range(2)]
    lat = [_glue(a[i], y[i], b[i]) for i in range(2)]
    one, zero = field.scalar(1), LaurentScalar.zero(field)
    incl = [[one if i == j else zero for j in range(s)] for i in range(n)]
    proj = [[one if j == s + i else zero for j in range(n)] for i in range(q)]
    if rng.random() < 0.5:
        p = [[field.scalar(x) for x in row] for row in random_k_matrix(rng, field, n)]
        p_inv = mx.inverse(p)
        lat = [mx.mul(p, m) for m in lat]
        incl = mx.mul(p, incl)
        proj = mx.mul(proj, p_inv)
    return Extension(
        S=BilatticedSpace(LatticeBasis(a[0], field), LatticeBasis(a[1], field)),
        V=BilatticedSpace(LatticeBasis(lat[0], field), LatticeBasis(lat[1], field)),
        Q=BilatticedSpace(LatticeBasis(b[0], field), LatticeBasis(b[1], field)),
        incl=incl,
        proj=proj,
    )


def gen(kind: str, cfg: TrialConfig, suite: str = "gen"):
    """Infinite deterministic stream of generated values of the given kind."""
    makers = {
        "lattice": lambda rng, n: LatticeBasis(random_invertible(rng, cfg.field, n, cfg.window), cfg.field),
        "flag": lambda rng, n: random_flag(rng, cfg.field, n, cfg.window),
        "borel_element": lambda rng, n: random_borel(rng, cfg.field, n, cfg.window)[2],
        "parabolic_element": lambda rng, n: (
            lambda shape: (shape, random_parabolic(rng, cfg.field, shape, cfg.window))
        )(random_shape(rng, n)),
        "strict_extension": lambda rng, n: random_extension(rng, cfg.field, max(n, 2), cfg.window),
        "minuscule_lattice": lambda rng, n: random_minuscule_lattice(rng, cfg.field, n),
    }
    if kind not in makers:
        raise ValueError(f"unknown generator kind {kind!r}")
    for index in itertools.count():
        rng = cfg.rng(f"{suite}:{kind}", index)
        yield makers[kind](rng, rng.randint(1, cfg.dim_max))


# -- oracles ------------------------------------------------------------


def oracle_type_via_diagonalization(g) -> CocharType:
    """Cartan type by reduction to diagonal t-powers with valuation pivots."""
    n = len(g)
    work = [list(r) for r in g]
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
        v, i, j = best
        work[k], work[i] = work[i], work[k]
        for row in work:
            row[k], row[j] = row[j], row[k]
        inv = work[k][k].inverse()
        for i in range(k + 1, n):
            f = work[i][k] * inv
            if not f.is_zero():
                work[i] = [x - f * y for x, y in zip(work[i], work[k])]
        for j in range(k + 1, n):
            f = work[k][j] * inv
            if not f.is_zero():
                for row in work:
                    row[j] = row[j] - f * row[k]
        exps.append(v)
    return CocharType.sorted_from(exps)


def oracle_ord_scan(bs: BilatticedSpace, bound: int = 64) -> int:
    """Smallest i with t^i L1 ⊆ L2, by walking i from 0 in unit steps."""

    def inside(i):
        return contains_lattice(bs.L2, scale(bs.L1, i))

    i = 0
    if inside(0):
        while i > -bound and inside(i - 1):
            i -= 1
        return i
    while i < bound:
        i += 1
        if inside(i):
            return i
    raise GenerationError(f"no containment within |i| <= {bound}")


# -- suites -------------------------------------------------------------


@dataclass(frozen=True)
class Suite:
    name: str
    make: Callable  # (rng, cfg) -> case
    encode: Callable  # case -> json
    decode: Callable  # (json, field) -> case
    check: Callable  # case -> (expected, got)
    cases: Callable | None = None  # cfg -> list of explicit cases (exhaustive suites)
    control: Callable | None = None  # () -> (ok, note)


def _dims(rng, cfg, lo=1):
    return rng.randint(lo, max(lo, cfg.dim_max))


def _bs_json(bs):
    return jsonio.bilatticed_to_json(bs)


def _ext_json(e: Extension):
    return {
        "S": _bs_json(e.S),
        "V": _bs_json(e.V),
        "Q": _bs_json(e.Q),
        "incl": jsonio.matrix_to_json(e.incl),
        "proj": jsonio.matrix_to_json(e.proj),
    }


def _ext_from(obj, field):
    return Extension(
        S=jsonio.bilatticed_from_json(obj["S"], field),
        V=jsonio.bilatticed_from_json(obj["V"], field),
        Q=jsonio.bilatticed_from_json(obj["Q"], field),
        incl=jsonio.matrix_from_json(obj["incl"], field),
        proj=jsonio.matrix_from_json(obj["proj"], field),
    )


def _check_cartan(g):
    return list(oracle_type_via_diagonalization(g)), list(type_of_matrix(g))


def _check_bb_rees(flag):
    back = bb_filtration(rees_lattice(flag), standard_lattice(flag.dim, flag.field))
    return jsonio.flag_to_json(flag), jsonio.flag_to_json(back)


def _check_minuscule(lattice):
    base = standard_lattice(lattice.dim, lattice.field)
    back = rees_lattice(bb_filtration(lattice, base))
    same = back == lattice
    return (
        {"type": list(relative_type(base, lattice)), "roundtrip": True},
        {"type": list(relative_type(base, back)), "roundtrip": same},
    )


def _minuscule_control():
    """The non-minuscule (1,-1) lattice must NOT survive the round trip."""
    f = QQ
    lattice = LatticeBasis([[f.scalar(1), f.t(-1)], [f.scalar(0), f.scalar(1)]], f)
    base = standard_lattice(2, f)
    back = rees_lattice(bb_filtration(lattice, base))
    fails = back != lattice
    return fails, (
        "control: the type (1,-1) lattice does not survive BB then Rees "
        f"(round trip gives type {list(relative_type(base, back))})"
        if fails
        else "control FAILED: the type (1,-1) lattice survived the round trip"
    )


def _check_type_inversion(bs):
    g1 = bb_side(bs, 1).graded_dims()
    g2 = bb_side(bs, 2).graded_dims()
    return {str(j): d for j, d in sorted(g2.items())}, {str(-j): d for j, d in sorted(g1.items(), reverse=True)}


def _check_extension(e: Extension):
    rep = check_extension_dominance(e.S, e.V, e.Q, e.incl, e.proj)
    sums_equal = sum(rep.gr_type) == sum(rep.total_type)
    return (
        {"dominates": True, "chain_ok": True, "totals_equal": True},
        {
            "dominates": rep.dominates,
            "chain_ok": rep.chain_ok,
            "totals_equal": sums_equal,
            "gr_type": list(rep.gr_type),
            "total_type": list(rep.total_type),
        },
    )


def _compare_extension(expected, got):
    return all(got[k] == v for k, v in expected.items())


def _check_exterior(e: Extension):
    gr = bl_direct_sum(e.S, e.Q)
    n = e.V.dim
    expected, got = [], []
    for k in range(1, n + 1):
        lv, lg = bl_exterior(e.V, k), bl_exterior(gr, k)
        ord_v, ord_g = bl_ord(lv), bl_ord(lg)
        expected.append({"k": k, "ord_V": oracle_ord_scan(lv), "V_ge_gr": True})
        got.append({"k": k, "ord_V": ord_v, "V_ge_gr": ord_v >= ord_g})
    return expected, got


def _make_borel(rng, cfg):
    n = _dims(rng, cfg)
    u, mu, b = random_borel(rng, cfg.field, n, cfg.window)
    return {"u": u, "mu": mu, "b": b}


def _check_goodness(case):
    rep = borel_unipotent_report(case["u"], case["mu"])
    good = is_good(case["b"], GroupShape.borel(len(case["b"])))
    return (
        {"is_good": rep.verdict, "type_check_agrees": True},
        {"is_good": good.is_good, "type_check_agrees": rep.cross_check_agrees},
    )


def _split_chain(g, shape: GroupShape):
    """Successive (S, V, Q) sequences from peeling off the first block."""
    field = g[0][0].field
    out = []
    blocks = list(shape.blocks)
    while len(blocks) > 1:
        s, n = blocks[0], len(g)
        q = n - s
        g11 = [row[:s] for row in g[:s]]
        g22 = [row[s:] for row in g[s:]]
        one, zero = field.scalar(1), LaurentScalar.zero(field)
        incl = [[one if i == j else zero for j in range(s)] for i in range(n)]
        proj = [[one if j == s + i else zero for j in range(n)] for i in range(q)]
        seq = (
            BilatticedSpace(standard_lattice(s, field), LatticeBasis(g11, field)),
            BilatticedSpace(standard_lattice(n, field), LatticeBasis(g, field)),
            BilatticedSpace(standard_lattice(q, field), LatticeBasis(g22, field)),
            incl,
            proj,
        )
        out.append(seq)
        g, blocks = g22, blocks[1:]
    return out


def _check_specialization(case):
    g, shape = case["g"], case["shape"]
    rep = is_good(g, shape)
    exact = all(
        all(induced_sequence(*seq, side=2)[2]) for seq in _split_chain(g, shape)
    )
    strict_when_bad = rep.is_good or (
        rep.strict_dominance_witness is not None and dominance_leq(rep.levi_type, rep.full_type)
    )
    return (
        {"dominates": True, "strict_when_not_good": True, "bb2_exact": rep.is_good},
        {
            "dominates": dominance_leq(rep.levi_type, rep.full_type),
            "strict_when_not_good": strict_when_bad,
            "bb2_exact": exact,
        },
    )


def _make_parabolic(rng, cfg):
    shape = random_shape(rng, _dims(rng, cfg))
    return {"g": random_parabolic(rng, cfg.field, shape, cfg.window), "shape": shape}


def _newton_candidates(n, lo, hi, max_den=3):
    """All weakly decreasing DM-integral vectors with entries in [lo, hi], denominators <= max_den."""
    values = sorted(
        {Fraction(a, b) for b in range(1, max_den + 1) for a in range(lo * b, hi * b + 1)},
        reverse=True,
    )
    for combo in itertools.combinations_with_replacement(values, n):
        try:
            yield SlopeVector(combo)
        except InvariantViolation:
            continue


def _mazur_cases(cfg):
    out = []
    for n in (1, 2, 3):
        for combo in itertools.combinations_with_replacement(range(2, -3, -1), n):
            out.append(CocharType(combo))
    return out


def _check_mazur_min(mu):
    basic = basic_element(mu)
    members = [nu for nu in _newton_candidates(len(mu), min(mu), max(mu)) if mazur_member(nu, mu)]
    return (
        {"basic_is_member": True, "basic_below_all": True},
        {
            "basic_is_member": basic in members,
            "basic_below_all": all(dominance_leq(basic, nu) for nu in members),
            "members": len(members),
        },
    )


def _compare_keys(expected, got):
    return all(got.get(k) == v for k, v in expected.items())


def _check_tate(k):
    a = tate_anchor(k)
    rep = admissibility_report(a.nu, a.etale_type)
    return (
        {"degree": "0", "hodge_degree": -k, "hodge_tate_degree": k, "dual_matches": True, "necessary": True},
        {
            "degree": jsonio.to_jsonable(rep.modified_degree),
            "hodge_degree": a.hodge_degree,
            "hodge_tate_degree": a.hodge_tate_degree,
            "dual_matches": a.dual() == tate_anchor(-k),
            "necessary": rep.verdict_necessary,
        },
    )


def _matrix_case(obj, field):
    return jsonio.matrix_from_json(obj, field, square=True)


SUITES = {
    s.name: s
    for s in [
        Suite(
            "cartan_oracle",
            make=lambda rng, cfg: random_invertible(rng, cfg.field, _dims(rng, cfg), cfg.window),
            encode=jsonio.matrix_to_json,
            decode=_matrix_case,
            check=_check_cartan,
        ),
        Suite(
            "bb_rees_roundtrip",
            make=lambda rng, cfg: random_flag(rng, cfg.field, _dims(rng, cfg), cfg.window),
            encode=jsonio.flag_to_json,
            decode=jsonio.flag_from_json,
            check=_check_bb_rees,
        ),
        Suite(
            "minuscule_bijection",
            make=lambda rng, cfg: random_minuscule_lattice(rng, cfg.field, _dims(rng, cfg)),
            encode=jsonio.lattice_to_json,
            decode=jsonio.lattice_from_json,
            check=_check_minuscule,
            control=_minuscule_control,
        ),
        Suite(
            "type_inversion",
            make=lambda rng, cfg: (
                lambda n: BilatticedSpace(
                    LatticeBasis(random_invertible(rng, cfg.field, n, cfg.window), cfg.field),
                    LatticeBasis(random_invertible(rng, cfg.field, n, cfg.window), cfg.field),
                )
            )(_dims(rng, cfg)),
            encode=_bs_json,
            decode=jsonio.bilatticed_from_json,
            check=_check_type_inversion,
        ),
        Suite(
            "extension_dominance",
            make=lambda rng, cfg: random_extension(rng, cfg.field, _dims(rng, cfg, 2), cfg.window),
            encode=_ext_json,
            decode=_ext_from,
            check=_check_extension,
        ),
        Suite(
            "exterior_ord",
            make=lambda rng, cfg: random_extension(rng, cfg.field, _dims(rng, cfg, 2), cfg.window),
            encode=_ext_json,
            decode=_ext_from,
            check=_check_exterior,
        ),
        Suite(
            "goodness_two_ways",
            make=_make_borel,
            encode=lambda c: {
                "u": jsonio.matrix_to_json(c["u"]),
                "mu": list(c["mu"]),
                "b": jsonio.matrix_to_json(c["b"]),
            },
            decode=lambda o, f: {
                "u": _matrix_case(o["u"], f),
                "mu": CocharType(o["mu"]),
                "b": _matrix_case(o["b"], f),
            },
            check=_check_goodness,
        ),
        Suite(
            "specialization_strict",
            make=_make_parabolic,
            encode=lambda c: {"g": jsonio.matrix_to_json(c["g"]), "shape": {"blocks": list(c["shape"].blocks)}},
            decode=lambda o, f: {"g": _matrix_case(o["g"], f), "shape": GroupShape(tuple(o["shape"]["blocks"]))},
            check=_check_specialization,
        ),
        Suite(
            "mazur_min",
            make=None,
            encode=list,
            decode=lambda o, f: CocharType(o),
            check=_check_mazur_min,
            cases=_mazur_cases,
        ),
        Suite(
            "tate_anchors",
            make=None,
            encode=lambda k: k,
            decode=lambda o, f: int(o),
            check=_check_tate,
            cases=lambda cfg: list(range(-5, 6)),
        ),
    ]
}

_COMPARATORS = {
    "extension_dominance": _compare_extension,
    "goodness_two_ways": _compare_keys,
    "specialization_strict": _compare_keys,
    "mazur_min": _compare_keys,
}


def _suite(name: str) -> Suite:
    try:
        return SUITES[name]
    except KeyError:
        raise UnknownSuite(f"unknown suite {name!r}; known: {', '.join(SUITES)}") from None


def default_comparator(name):
    return _COMPARATORS.get(name, lambda expected, got: expected == got)


def run_suite(name: str, cfg: TrialConfig | None = None, comparator=None) -> SuiteReport:
    cfg = cfg or TrialConfig()
    suite = _suite(name)
    compare = comparator or default_comparator(name)
    report = SuiteReport(suite=name, trials=0, field=cfg.field.name, seed=cfg.seed)
    start = time.perf_counter()
    if suite.cases is not None:
        cases = list(enumerate(suite.cases(cfg)))
    else:
        cases = ((i, None) for i in range(cfg.trials))
    for index, case in cases:
        if case is None:
            case = suite.make(cfg.rng(name, index), cfg)
        expected, got = suite.check(case)
        report.trials += 1
        if not compare(expected, got):
            report.failures.append(
                {"index": index, "input": suite.encode(case), "expected": expected, "got": got}
            )
    if suite.control is not None:
        ok, note = suite.control()
        report.notes.append(note)
        if not ok:
            report.failures.append({"index": -1, "input": None, "expected": "control fails", "got": "control passed"})
    report.elapsed = time.perf_counter() - start
    return report


def run_all(cfg: TrialConfig | None = None) -> list:
    return [run_suite(name, cfg) for name in SUITES]


def replay(name: str, failure_input, field: Field = QQ, comparator=None):
    """Re-run one serialized case; returns (passed, expected, got)."""
    suite = _suite(name)
    if isinstance(field, str):
        field = parse_field(field)
    case = suite.decode(failure_input, field)
    expected, got = suite.check(case)
    compare = comparator or default_comparator(name)
    return compare(expected, got), expected, got
