"""Structured-text input formats and report rendering.

Specs are JSON, parsed strictly: unknown keys are rejected so that a
typo cannot silently fall back to a default. Group specs:

    {"type": "Zn", "n": 8}
    {"type": "Zwindow", "radius": 256}
    {"type": "product", "factors": [{"type": "Zn", "n": 2}, ...]}
    {"type": "table", "elements": [...], "mul": [[...]], "identity": ...,
     "inv": [...]?}
    {"type": "S3"}                       # built-in permutation table

N-function specs:

    {"kind": "power", "p": 2}
    {"kind": "entropy"} | {"kind": "cosh"}
    {"kind": "custom", "table": [[x, value, slope], ...]}

A pair spec is an N-function spec; catalog kinds get their closed-form
complements, custom tables a numeric conjugate, and
{"construction": "numeric"} forces the numeric route for any kind.

Function data files are rows [element, re, im]; elements of product
groups are written as (nested) lists.

Reports are ordered key/value lines. The machine rendering is
byte-stable for a fixed config and seed (no timestamps); the human
rendering adds alignment and the wall-clock line.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping, Sequence

from .errors import SpecFormatError
from .groups import (
    GroupFunction,
    GroupSpace,
    TableGroup,
    cyclic,
    direct_product,
    integer_window,
    symmetric_group3,
)
from .nfunctions import (
    ComplementaryPair,
    NFunction,
    cosh_dual,
    cosh_minus_one,
    entropy,
    entropy_dual,
    from_table,
    numeric_pair,
    power,
)


def read_json(source: str | Path) -> Any:
    """Parse a path to a JSON file, or an inline JSON literal."""
    text = str(source)
    if text.lstrip().startswith(("{", "[")):
        payload, name = text, "<inline>"
    else:
        path = Path(text)
        if not path.exists():
            raise SpecFormatError(f"no such file: {text}")
        payload, name = path.read_text(encoding="utf-8"), text
    try:
        return json.loads(payload)
    except json.JSONDecodeError as exc:
        raise SpecFormatError(f"{name}: {exc.msg}", line=exc.lineno,
                              column=exc.colno) from exc


def _check_keys(obj: Mapping, required: set[str], optional: set[str], context: str) -> None:
    if not isinstance(obj, Mapping):
        raise SpecFormatError(f"{context}: expected an object, got {type(obj).__name__}")
    keys = set(obj)
    missing = required - keys
    unknown = keys - required - optional
    if missing:
        raise SpecFormatError(f"{context}: missing keys {sorted(missing)}")
    if unknown:
        raise SpecFormatError(f"{context}: unknown keys {sorted(unknown)} (strict parsing)")


def group_from_spec(spec: Any) -> GroupSpace:
    if isinstance(spec, (str, Path)):
        spec = read_json(spec)
    _check_keys(spec, {"type"}, {"n", "radius", "factors", "elements", "mul", "inv",
                                 "identity"}, "group spec")
    kind = spec["type"]
    if kind == "Zn":
        _check_keys(spec, {"type", "n"}, set(), "Zn spec")
        return cyclic(int(spec["n"]))
    if kind == "Zwindow":
        _check_keys(spec, {"type", "radius"}, set(), "Zwindow spec")
        return integer_window(int(spec["radius"]))
    if kind == "product":
        _check_keys(spec, {"type", "factors"}, set(), "product spec")
        return direct_product(*(group_from_spec(f) for f in spec["factors"]))
    if kind == "table":
        _check_keys(spec, {"type", "elements", "mul", "identity"}, {"inv"}, "table spec")
        elements = [_decode_element(x) for x in spec["elements"]]
        identity = _decode_element(spec["identity"])
        return TableGroup("table", elements, spec["mul"], identity,
                          inv_table=spec.get("inv"))
    if kind == "S3":
        _check_keys(spec, {"type"}, set(), "S3 spec")
        return symmetric_group3()
    raise SpecFormatError(f"unknown group type {kind!r}")


def _decode_element(x: Any):
    if isinstance(x, list):
        return tuple(_decode_element(v) for v in x)
    return x


def _encode_element(x: Any):
    if isinstance(x, tuple):
        return [_encode_element(v) for v in x]
    return x


def nfunction_from_spec(spec: Any) -> NFunction:
    if isinstance(spec, (str, Path)):
        spec = read_json(spec)
    _check_keys(spec, {"kind"}, {"p", "table", "construction"}, "nfunction spec")
    kind = spec["kind"]
    if kind == "power":
        if "p" not in spec:
            raise SpecFormatError("power kind needs the exponent key 'p'")
        return power(float(spec["p"]))
    if kind == "entropy":
        return entropy()
    if kind == "cosh":
        return cosh_minus_one()
    if kind == "custom":
        if "table" not in spec:
            raise SpecFormatError("custom kind needs the key 'table'")
        return from_table(spec["table"])
    raise SpecFormatError(f"unknown N-function kind {kind!r}")


def pair_from_spec(spec: Any) -> ComplementaryPair:
    if isinstance(spec, (str, Path)):
        spec = read_json(spec)
    phi = nfunction_from_spec(spec)
    if spec.get("construction") == "numeric" or spec["kind"] == "custom":
        return numeric_pair(phi)
    if spec["kind"] == "power":
        p = float(spec["p"])
        return ComplementaryPair(phi=phi, psi=power(p / (p - 1.0)),
                                 construction="closed-form")
    if spec["kind"] == "entropy":
        return ComplementaryPair(phi=phi, psi=entropy_dual(), construction="closed-form")
    return ComplementaryPair(phi=phi, psi=cosh_dual(), construction="closed-form")


def function_from_rows(space: GroupSpace, rows: Any) -> GroupFunction:
    if isinstance(rows, (str, Path)):
        rows = read_json(rows)
    if not isinstance(rows, list):
        raise SpecFormatError("function data must be a list of [element, re, im] rows")
    vals = {}
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != 3:
            raise SpecFormatError(f"function data row {i}: expected [element, re, im]")
        x = _decode_element(row[0])
        if not space.contains(x):
            raise SpecFormatError(f"function data row {i}: {x!r} not in {space.name}")
        vals[x] = complex(float(row[1]), float(row[2]))
    return GroupFunction(space, vals)


def function_to_rows(f: GroupFunction) -> list:
    return [[_encode_element(x), v.real, v.imag] for x, v in f.items()]


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

@dataclass
class Report:
    """Ordered key/value lines with a pass/fail verdict per check line."""

    verb: str
    lines: list[tuple[str, str]] = field(default_factory=list)
    failures: list[str] = field(default_factory=list)

    def add(self, key: str, value: Any) -> None:
        self.lines.append((key, _render_value(value)))

    def check(self, key: str, passed: bool, slack: float, detail: str = "") -> None:
        """A check line: pass/fail, numeric slack, optional provenance."""
        status = "pass" if passed else "FAIL"
        suffix = f" {detail}" if detail else ""
        self.lines.append((f"check.{key}", f"{status} slack={_render_value(slack)}{suffix}"))
        if not passed:
            self.failures.append(key)

    @property
    def passed(self) -> bool:
        return not self.failures

    def render(self, fmt: str = "machine", wall_clock: float | None = None) -> str:
        if fmt == "machine":
            body = [f"{k}={v}" for k, v in self.lines]
            return "\n".join([f"verb={self.verb}", *body,
                              f"passed={str(self.passed).lower()}"]) + "\n"
        width = max((len(k) for k, _ in self.lines), default=0)
        out = [f"== {self.verb} =="]
        out += [f"{k.ljust(width)} : {v}" for k, v in self.lines]
        out.append(f"{'passed'.ljust(width)} : {self.passed}")
        if wall_clock is not None:
            out.append(f"{'wall-clock-s'.ljust(width)} : {wall_clock:.3f}")
        return "\n".join(out) + "\n"


def _render_value(value: Any) -> str:
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, complex):
        return f"{value.real!r}{value.imag:+}j"
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_render_value(v) for v in value) + "]"
    return str(value)
