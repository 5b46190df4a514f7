"""JSON encodings shared by the CLI and the harness.

Matrices are ``{"dim": n, "columns": [[scalar, ...], ...]}`` in column-major
order (``"dim"`` is ``[rows, cols]`` for non-square matrices).  Scalars use
the scalar grammar; base-field coefficients are rational strings.
"""

from __future__ import annotations

import dataclasses
from fractions import Fraction

from .bilattice import BilatticedSpace
from .errors import DimensionMismatch, InvariantViolation
from .filtration import Flag
from .lattice import CocharType, LatticeBasis, ResidueSubspace
from .polygon import Polygon, SlopeVector, make_slopes
from .scalar import Field, LaurentScalar, parse_scalar


def _require(obj, key, what):
    if not isinstance(obj, dict) or key not in obj:
        raise InvariantViolation("json_schema", f"{what} needs a {key!r} field")
    return obj[key]


def matrix_to_json(rows) -> dict:
    m = len(rows)
    n = len(rows[0]) if rows else 0
    return {
        "dim": m if m == n else [m, n],
        "columns": [[str(x) for x in col] for col in zip(*rows)],
    }


def matrix_from_json(obj, field: Field, square: bool = False):
    cols = _require(obj, "columns", "matrix")
    dim = obj.get("dim")
    if not isinstance(cols, list) or not all(isinstance(c, list) for c in cols):
        raise InvariantViolation("json_schema", "matrix columns must be a list of lists")
    ncols = len(cols)
    nrows = len(cols[0]) if cols else 0
    if any(len(c) != nrows for c in cols):
        raise DimensionMismatch("matrix columns have different lengths")
    if dim is not None:
        expected = [dim, dim] if isinstance(dim, int) else list(dim)
        if expected != [nrows, ncols]:
            raise DimensionMismatch(f"declared dim {dim} but columns give {nrows}x{ncols}")
    if square and nrows != ncols:
        raise DimensionMismatch(f"expected a square matrix, got {nrows}x{ncols}")
    return [[_scalar(cols[j][i], field) for j in range(ncols)] for i in range(nrows)]


def _scalar(x, field):
    if isinstance(x, LaurentScalar):
        return field.scalar(x)
    if isinstance(x, int) and not isinstance(x, bool):
        return field.scalar(x)
    if not isinstance(x, str):
        raise InvariantViolation("json_schema", f"scalar entries must be strings, got {x!r}")
    return parse_scalar(x, field)


def lattice_to_json(lattice: LatticeBasis) -> dict:
    return matrix_to_json(lattice.matrix)


def lattice_from_json(obj, field: Field) -> LatticeBasis:
    return LatticeBasis(matrix_from_json(obj, field, square=True), field)


def bilatticed_to_json(bs) -> dict:
    return {"L1": lattice_to_json(bs.L1), "L2": lattice_to_json(bs.L2)}


def bilatticed_from_json(obj, field: Field):
    return BilatticedSpace(
        lattice_from_json(_require(obj, "L1", "bilatticed space"), field),
        lattice_from_json(_require(obj, "L2", "bilatticed space"), field),
    )


def coeff_from_json(x, field: Field):
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise InvariantViolation("json_schema", f"coefficient must be a string or integer, got {x!r}")
    return field.coeff(Fraction(x))


def flag_to_json(flag: Flag) -> dict:
    fmt = flag.field.format_coeff
    return {
        "dim": flag.dim,
        "steps": [
            {"jump": j, "basis": [[fmt(c) for c in v] for v in space.basis]}
            for j, space in flag.steps
        ],
    }


def flag_from_json(obj, field: Field) -> Flag:
    n = _require(obj, "dim", "flag")
    steps = []
    for step in _require(obj, "steps", "flag"):
        basis = [[coeff_from_json(c, field) for c in v] for v in _require(step, "basis", "flag step")]
        steps.append((_require(step, "jump", "flag step"), ResidueSubspace(field, n, basis)))
    return Flag(field, n, steps)


def coeff_matrix_from_json(obj, field: Field):
    """A matrix over the base field, in the same column-major layout."""
    rows = matrix_from_json(obj, field)
    out = []
    for row in rows:
        out_row = []
        for x in row:
            if not x.is_zero() and (x.shift != 0 or x.num.degree() > 0 or x.den.degree() > 0):
                raise InvariantViolation("constant_matrix", f"entry {x} is not a constant")
            out_row.append(x.residue())
        out.append(out_row)
    return out


def slopes_to_json(v) -> dict:
    return {"slopes": [_frac(x) for x in v]}


def slopes_from_json(obj) -> SlopeVector:
    raw = obj["slopes"] if isinstance(obj, dict) else obj
    if not isinstance(raw, list):
        raise InvariantViolation("json_schema", "slopes must be a list")
    return make_slopes(_fraction(x) for x in raw)


def type_from_json(obj) -> CocharType:
    if isinstance(obj, dict):
        obj = _require(obj, "type", "type")
    if not isinstance(obj, list) or any(isinstance(x, bool) or not isinstance(x, int) for x in obj):
        raise InvariantViolation("json_schema", "a type must be a list of integers")
    return CocharType(obj)


def _fraction(x) -> Fraction:
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise InvariantViolation("json_schema", f"rational must be a string or integer, got {x!r}")
    try:
        return Fraction(x)
    except ValueError as exc:
        raise InvariantViolation("json_schema", f"bad rational {x!r}") from exc


def _frac(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def polygon_to_json(p: Polygon) -> dict:
    return {"vertices": [[_frac(x), _frac(y)] for x, y in p.vertices]}


def to_jsonable(value):
    """Convert library values (reports, types, slopes, flags) into JSON data."""
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, float):
        return "inf" if value == float("inf") else value
    if isinstance(value, Fraction):
        return _frac(value)
    if isinstance(value, CocharType):
        return list(value)
    if isinstance(value, SlopeVector):
        return [_frac(x) for x in value]
    if isinstance(value, Flag):
        return flag_to_json(value)
    if isinstance(value, LatticeBasis):
        return lattice_to_json(value)
    if isinstance(value, Polygon):
        return polygon_to_json(value)
    if isinstance(value, LaurentScalar):
        return str(value)
    if dataclasses.is_dataclass(value):
        return {
            f.name: to_jsonable(getattr(value, f.name))
            for f in dataclasses.fields(value)
            if f.repr
        }
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    raise TypeError(f"cannot serialize {type(value).__name__}")


def k_matrix_to_json(rows, field: Field) -> dict:
    return {
        "dim": len(rows) if rows and len(rows) == len(rows[0]) else [len(rows), len(rows[0]) if rows else 0],
        "columns": [[field.format_coeff(x) for x in col] for col in zip(*rows)],
    }


__all__ = [name for name in dir() if name.endswith("_json") or name == "to_jsonable"]
