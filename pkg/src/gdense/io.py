"""Input parsing and report writing shared by the command line tools."""
from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path
from typing import Any

from .algebra import PathAlgebra, a2_algebra, dual_numbers, kronecker_algebra
from .complexes import TwoTermComplex, projective, regular
from .fan import Fan
from .named import BUILTIN
from .quiver import ExchangeMatrix
from .scatter import ScatterLattice


class InputError(ValueError):
    """An input file exists but does not parse."""


def dumps(obj: Any) -> str:
    """Canonical JSON text: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def write_atomic(path: str | os.PathLike, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _read_json(path: str | os.PathLike):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from None


# --- quivers --------------------------------------------------------------------------


def parse_quiver_text(text: str) -> ExchangeMatrix:
    """First line ``n``, then ``i j w`` lines (w arrows i -> j, 0-indexed)."""
    lines = [ln.split("#")[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise InputError("empty quiver description")
    try:
        n = int(lines[0])
        arrows = []
        for ln in lines[1:]:
            parts = ln.split()
            if len(parts) != 3:
                raise InputError(f"bad arrow line {ln!r}")
            arrows.append(tuple(int(x) for x in parts))
    except ValueError as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"bad quiver text: {exc}") from None
    return ExchangeMatrix.from_arrows(n, arrows)


def quiver_from_json(d) -> ExchangeMatrix:
    if isinstance(d, dict) and "arrows" in d:
        return ExchangeMatrix.from_arrows(int(d["n"]), [tuple(a) for a in d["arrows"]])
    if isinstance(d, dict) and "matrix" in d:
        return ExchangeMatrix(d["matrix"])
    if isinstance(d, list):
        return ExchangeMatrix(d)
    raise InputError("quiver JSON needs 'n' and 'arrows'")


def builtin_quiver(name: str) -> ExchangeMatrix | None:
    """Builtin quivers by name, ignoring case."""
    for key, B in BUILTIN.items():
        if key.lower() == name.lower():
            return B
    return None


def load_quiver(spec: str) -> ExchangeMatrix:
    """Builtin name (``A2``, ``K3``, ``MARKOV``, ``X7``, ...) or a text/JSON file."""
    B = builtin_quiver(spec)
    if B is not None:
        return B
    text = Path(spec).read_text(encoding="utf-8")
    if text.lstrip().startswith(("{", "[")):
        try:
            return quiver_from_json(json.loads(text))
        except json.JSONDecodeError as exc:
            raise InputError(f"{spec}: invalid JSON ({exc})") from None
    return parse_quiver_text(text)


def quiver_to_json(B: ExchangeMatrix) -> dict:
    return {"n": B.n, "arrows": [list(a) for a in B.arrows()]}


# --- algebras and complexes -------------------------------------------------------------

BUILTIN_ALGEBRAS = {
    "kronecker": lambda: kronecker_algebra(2),
    "kronecker2": lambda: kronecker_algebra(2),
    "kronecker3": lambda: kronecker_algebra(3),
    "A2": a2_algebra,
    "dual": dual_numbers,
}


def is_builtin_input(kind: str, spec: str) -> bool:
    if kind == "quiver":
        return builtin_quiver(spec) is not None
    if kind == "algebra":
        return spec in BUILTIN_ALGEBRAS
    if kind == "complex":
        return spec in ("Lambda", "SLambda") or spec.startswith(("P:", "SP:"))
    if kind == "form":
        return ";" in spec or "," in spec
    return False


def load_algebra(spec: str) -> PathAlgebra:
    if spec in BUILTIN_ALGEBRAS:
        return BUILTIN_ALGEBRAS[spec]()
    return PathAlgebra.from_dict(_read_json(spec))


def load_complex(alg: PathAlgebra, spec: str) -> TwoTermComplex:
    """A complex file, or one of ``Lambda``, ``SLambda``, ``P:<v>``, ``SP:<v>``."""
    if spec == "Lambda":
        return regular(alg)
    if spec == "SLambda":
        return regular(alg, shifted=True)
    if spec.startswith("P:"):
        return projective(alg, spec[2:])
    if spec.startswith("SP:"):
        return projective(alg, spec[3:], shifted=True)
    d = _read_json(spec)
    try:
        return TwoTermComplex.from_dict(alg, d)
    except (KeyError, TypeError) as exc:
        raise InputError(f"{spec}: malformed complex ({exc})") from None


# --- scattering inputs -------------------------------------------------------------------


def parse_matrix(text: str) -> list[list[int]]:
    """``"0,1;-1,0"`` -> ``[[0, 1], [-1, 0]]``."""
    try:
        return [[int(x) for x in row.split(",")] for row in text.split(";")]
    except ValueError:
        raise InputError(f"bad inline matrix {text!r}") from None


def load_form(spec: str) -> ScatterLattice:
    """Skew form from a JSON file (``{"form": ...}`` or a quiver) or inline ``a,b;c,d``."""
    if not os.path.exists(spec) and is_builtin_input("form", spec):
        return ScatterLattice(tuple(map(tuple, parse_matrix(spec))))
    d = _read_json(spec)
    if isinstance(d, dict) and "form" in d:
        return ScatterLattice(tuple(map(tuple, d["form"])))
    if isinstance(d, list):
        return ScatterLattice(tuple(map(tuple, d)))
    return ScatterLattice.from_quiver(quiver_from_json(d))


def load_fan(spec: str) -> Fan:
    d = _read_json(spec)
    try:
        return Fan.from_dict(d)
    except (KeyError, TypeError) as exc:
        raise InputError(f"{spec}: malformed fan ({exc})") from None


def parse_int_vector(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.replace(" ", "").strip("()[]").split(","))
    except ValueError:
        raise InputError(f"bad integer vector {text!r}") from None
