"""Free-format MPS export and import.

Only the subset `write_mps` produces is guaranteed to round-trip: NAME, ROWS, COLUMNS, RHS, BOUNDS,
ENDATA with the objective row `OBJ`. Bound types LO, UP, FX, FR, MI and PL are read.
"""

import logging
import math
from pathlib import Path

from ..errors import IoError, ParseError
from .model import OBJECTIVE_ROW, LpModel, Sense

logger = logging.getLogger(__name__)

_SECTIONS = {"NAME", "ROWS", "COLUMNS", "RHS", "BOUNDS", "RANGES", "ENDATA"}


def _fmt(value: float) -> str:
    # repr round-trips every finite float exactly
    if float(value).is_integer() and abs(value) < 1e15:
        return str(int(value))
    return repr(float(value))


def _check_name(name: str) -> None:
    if not name or any(ch.isspace() for ch in name):
        raise IoError(f"name {name!r} cannot be written to free-format MPS")


def format_mps(model: LpModel) -> str:
    lines = [f"NAME {model.name}", "ROWS", f" N {OBJECTIVE_ROW}"]
    for row in model.rows:
        _check_name(row.name)
        lines.append(f" {row.sense.value} {row.name}")

    # transpose the row-wise storage, keeping row insertion order per column
    columns: list[list[tuple[str, float]]] = [[] for _ in model.variables]
    for row in model.rows:
        for handle, value in row.coeffs.items():
            columns[handle].append((row.name, value))

    lines.append("COLUMNS")
    for handle, var in enumerate(model.variables):
        _check_name(var.name)
        entries = []
        if var.obj != 0.0:
            entries.append((OBJECTIVE_ROW, var.obj))
        entries.extend(columns[handle])
        if not entries:
            entries.append((OBJECTIVE_ROW, 0.0))
        for i in range(0, len(entries), 2):
            pairs = " ".join(f"{r} {_fmt(v)}" for r, v in entries[i : i + 2])
            lines.append(f" {var.name} {pairs}")

    lines.append("RHS")
    for row in model.rows:
        if row.rhs != 0.0:
            lines.append(f" RHS {row.name} {_fmt(row.rhs)}")

    lines.append("BOUNDS")
    for var in model.variables:
        lb, ub = var.lb, var.ub
        if lb == 0.0 and ub == math.inf:
            continue
        if lb == -math.inf and ub == math.inf:
            lines.append(f" FR BND {var.name}")
        elif lb == ub:
            lines.append(f" FX BND {var.name} {_fmt(lb)}")
        else:
            if lb == -math.inf:
                lines.append(f" MI BND {var.name}")
            elif lb != 0.0:
                lines.append(f" LO BND {var.name} {_fmt(lb)}")
            if ub != math.inf:
                lines.append(f" UP BND {var.name} {_fmt(ub)}")
    lines.append("ENDATA")
    return "\n".join(lines) + "\n"


def write_mps(model: LpModel, path: str | Path) -> None:
    path = Path(path)
    text = format_mps(model)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
    except OSError as e:
        raise IoError(f"cannot write MPS file {path}: {e}") from e
    logger.debug("Wrote %s (%d rows, %d vars)", path, model.num_rows, model.num_vars)


def _number(token: str, path, lineno: int) -> float:
    try:
        return float(token)
    except ValueError:
        raise ParseError(path, f"expected a number, got {token!r}", lineno) from None


def parse_mps(path: str | Path) -> LpModel:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise IoError(f"cannot read MPS file {path}: {e}") from e

    model = LpModel()
    objective_name: str | None = None
    pending_rows: list[tuple[str, Sense]] = []
    row_coeffs: dict[str, list[tuple[int, float]]] = {}
    rhs: dict[str, float] = {}
    section = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("*"):
            continue
        tokens = line.split()
        head = tokens[0].upper()
        if head in _SECTIONS and (len(tokens) == 1 or head == "NAME"):
            section = head
            if section == "NAME":
                model.name = tokens[1] if len(tokens) > 1 else model.name
            elif section == "RANGES":
                raise ParseError(path, "RANGES section is not supported", lineno)
            elif section == "ENDATA":
                break
            continue

        if section == "ROWS":
            if len(tokens) != 2:
                raise ParseError(path, "ROWS entries need a type and a name", lineno)
            kind, name = tokens[0].upper(), tokens[1]
            if kind == "N":
                if objective_name is None:
                    objective_name = name
                continue
            try:
                pending_rows.append((name, Sense(kind)))
            except ValueError:
                raise ParseError(path, f"unknown row type {kind!r}", lineno) from None
        elif section == "COLUMNS":
            if len(tokens) not in (3, 5):
                raise ParseError(path, "COLUMNS entries need 1 or 2 row/value pairs", lineno)
            var_name = tokens[0]
            if var_name in model._var_index:
                handle = model._var_index[var_name]
            else:
                handle = model.add_variable(var_name)
            for row_name, value in zip(tokens[1::2], tokens[2::2]):
                number = _number(value, path, lineno)
                if row_name == objective_name:
                    model.variables[handle].obj += number
                else:
                    row_coeffs.setdefault(row_name, []).append((handle, number))
        elif section == "RHS":
            if len(tokens) not in (3, 5):
                raise ParseError(path, "RHS entries need 1 or 2 row/value pairs", lineno)
            for row_name, value in zip(tokens[1::2], tokens[2::2]):
                rhs[row_name] = _number(value, path, lineno)
        elif section == "BOUNDS":
            kind = tokens[0].upper()
            if len(tokens) < 3:
                raise ParseError(path, "BOUNDS entries need a type, set and column", lineno)
            if tokens[2] not in model._var_index:
                raise ParseError(path, f"bound on unknown column {tokens[2]!r}", lineno)
            var = model.variables[model._var_index[tokens[2]]]
            if kind in ("FR", "MI", "PL"):
                if kind == "FR":
                    var.lb, var.ub = -math.inf, math.inf
                elif kind == "MI":
                    var.lb = -math.inf
                else:
                    var.ub = math.inf
                continue
            if len(tokens) != 4:
                raise ParseError(path, f"{kind} bound needs a value", lineno)
            value = _number(tokens[3], path, lineno)
            if kind == "LO":
                var.lb = value
            elif kind == "UP":
                var.ub = value
            elif kind == "FX":
                var.lb = var.ub = value
            else:
                raise ParseError(path, f"unknown bound type {kind!r}", lineno)
        else:
            raise ParseError(path, f"data line outside of a section: {line!r}", lineno)

    if section != "ENDATA":
        raise ParseError(path, "missing ENDATA")
    unknown = set(row_coeffs) - {name for name, _ in pending_rows}
    if unknown:
        raise ParseError(path, f"coefficients for undeclared rows: {sorted(unknown)}")
    # rows are created last so every column handle already exists
    for name, sense in pending_rows:
        model.add_row(name, sense, rhs.get(name, 0.0), row_coeffs.get(name, ()))
    return model
