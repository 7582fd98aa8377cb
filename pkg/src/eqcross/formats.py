"""JSON instance documents: strict parsing, validation, and a canonical emitter.

Kinds: ``group``, ``gamma-group``, ``crossed-module`` and ``extension-query``.
Inside a crossed module or query a plain ``group`` document stands for the
trivial action of the surrounding Γ.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Optional, Union

from .crossed import GammaCrossedModule, validate_crossed_module
from .errors import EqCrossError, Report, StructuralError
from .groups import FiniteGroup, GammaAction, GammaGroup, GroupHom, cyclic, validate_gamma_group, validate_group


class ParseError(EqCrossError):
    """Malformed document: bad JSON, wrong kind, unknown or missing keys, bad shapes."""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + message)
        self.line = line
        self.column = column


class SemanticError(EqCrossError):
    """Well-formed document whose tables violate a law."""

    def __init__(self, report: Report, path: str = ""):
        prefix = f"{path}: " if path else ""
        super().__init__(prefix + str(report))
        self.report = report
        self.path = path


@dataclass(frozen=True)
class ExtensionQuery:
    M: GammaCrossedModule
    Q: GammaGroup
    psi: Union[str, tuple[int, ...], None] = None


Instance = Union[FiniteGroup, GammaGroup, GammaCrossedModule, ExtensionQuery]

_KEYS = {
    "group": ({"kind", "order", "mul"}, {"name"}),
    "gamma-group": ({"kind", "order", "mul", "gamma", "action"}, {"name"}),
    "crossed-module": ({"kind", "B", "D", "d", "theta"}, set()),
    "extension-query": ({"kind", "M", "Q"}, {"psi"}),
}


def _check_keys(doc: Any, path: str) -> str:
    if not isinstance(doc, dict):
        raise ParseError(f"{path or 'document'}: expected an object")
    kind = doc.get("kind")
    if kind not in _KEYS:
        raise ParseError(f"{path or 'document'}: unknown kind {kind!r}")
    required, optional = _KEYS[kind]
    missing = sorted(required - doc.keys())
    if missing:
        raise ParseError(f"{path or 'document'}: missing key {missing[0]!r}")
    unknown = sorted(doc.keys() - required - optional)
    if unknown:
        raise ParseError(f"{path or 'document'}: unknown key {unknown[0]!r}")
    return kind


def _int(v: Any, path: str) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise ParseError(f"{path}: expected an integer")
    return v


def _row(v: Any, n: int, path: str) -> tuple[int, ...]:
    if not isinstance(v, list) or len(v) != n:
        raise ParseError(f"{path}: expected a list of {n} integers")
    return tuple(_int(x, f"{path}[{i}]") for i, x in enumerate(v))


def _table(v: Any, rows: int, cols: int, path: str) -> tuple[tuple[int, ...], ...]:
    if not isinstance(v, list) or len(v) != rows:
        raise ParseError(f"{path}: expected {rows} rows")
    return tuple(_row(r, cols, f"{path}[{i}]") for i, r in enumerate(v))


def _raise_if(report: Report, path: str) -> None:
    if not report:
        raise SemanticError(report, path)


def _group(doc: dict, path: str) -> FiniteGroup:
    n = _int(doc["order"], f"{path}.order")
    if n < 1:
        raise ParseError(f"{path}.order: must be positive")
    mul = _table(doc["mul"], n, n, f"{path}.mul")
    name = doc.get("name", "")
    if not isinstance(name, str):
        raise ParseError(f"{path}.name: expected a string")
    for i, row in enumerate(mul):
        for k, x in enumerate(row):
            if not 0 <= x < n:
                raise ParseError(f"{path}.mul[{i}][{k}]: entry {x} out of range")
    g = FiniteGroup(mul, name=name)
    _raise_if(validate_group(g), path or "group")
    return g


def _gamma_group(doc: dict, path: str, gamma: Optional[FiniteGroup] = None) -> GammaGroup:
    kind = _check_keys(doc, path)
    if kind == "group":
        return GammaGroup.trivial(_group(doc, path), gamma if gamma is not None else cyclic(1))
    if kind != "gamma-group":
        raise ParseError(f"{path}: expected a group or gamma-group")
    g = _group(doc, path)
    if _check_keys(doc["gamma"], f"{path}.gamma") != "group":
        raise ParseError(f"{path}.gamma: expected a group")
    gam = _group(doc["gamma"], f"{path}.gamma")
    if gamma is not None and gam != gamma:
        raise ParseError(f"{path}.gamma: differs from the surrounding Γ")
    act = _table(doc["action"], gam.order, g.order, f"{path}.action")
    for s, row in enumerate(act):
        for k, x in enumerate(row):
            if not 0 <= x < g.order:
                raise ParseError(f"{path}.action[{s}][{k}]: entry {x} out of range")
    gg = GammaGroup(g, GammaAction(gam, g, act))
    _raise_if(validate_gamma_group(gg), path or "gamma-group")
    return gg


def _declared_gamma(docs: list[tuple[Any, str]]) -> Optional[FiniteGroup]:
    for d, p in docs:
        if isinstance(d, dict) and d.get("kind") == "gamma-group":
            if _check_keys(d["gamma"], f"{p}.gamma") != "group":
                raise ParseError(f"{p}.gamma: expected a group")
            return _group(d["gamma"], f"{p}.gamma")
    return None


def _crossed(doc: dict, path: str, gamma: Optional[FiniteGroup] = None) -> GammaCrossedModule:
    if _check_keys(doc, path) != "crossed-module":
        raise ParseError(f"{path or 'document'}: expected a crossed-module")
    if gamma is None:
        gamma = _declared_gamma([(doc["B"], f"{path}.B"), (doc["D"], f"{path}.D")])
    B = _gamma_group(doc["B"], f"{path}.B", gamma)
    D = _gamma_group(doc["D"], f"{path}.D", B.gamma)
    d = _row(doc["d"], B.order, f"{path}.d")
    theta = _table(doc["theta"], D.order, B.order, f"{path}.theta")
    for i, x in enumerate(d):
        if not 0 <= x < D.order:
            raise ParseError(f"{path}.d[{i}]: entry {x} out of range")
    for i, row in enumerate(theta):
        for k, x in enumerate(row):
            if not 0 <= x < B.order:
                raise ParseError(f"{path}.theta[{i}][{k}]: entry {x} out of range")
    try:
        m = GammaCrossedModule(B, D, GroupHom(B.group, D.group, d), theta)
    except StructuralError as exc:
        raise ParseError(f"{path or 'crossed-module'}: {exc}") from None
    _raise_if(validate_crossed_module(m), path or "crossed-module")
    return m


def _query(doc: dict) -> ExtensionQuery:
    gamma = _declared_gamma([(doc["Q"], "Q")])
    if gamma is None and isinstance(doc["M"], dict):
        gamma = _declared_gamma([(doc["M"].get("B"), "M.B"), (doc["M"].get("D"), "M.D")])
    m = _crossed(doc["M"], "M", gamma)
    q = _gamma_group(doc["Q"], "Q", m.gamma)
    psi = doc.get("psi")
    if psi is None or psi in ("id", "trivial"):
        pass
    elif isinstance(psi, list):
        psi = _row(psi, q.order, "psi")
    else:
        raise ParseError("psi: expected 'id', 'trivial' or a list of integers")
    return ExtensionQuery(m, q, psi)


def _decode(text: str) -> Any:
    def pairs(items):
        out = {}
        for k, v in items:
            if k in out:
                raise ParseError(f"duplicate key {k!r}")
            out[k] = v
        return out

    try:
        return json.loads(text, object_pairs_hook=pairs)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None


def parse_instance(text: str) -> Instance:
    """Strict parse plus validation; raises ParseError or SemanticError."""
    doc = _decode(text)
    kind = _check_keys(doc, "")
    if kind == "group":
        return _group(doc, "")
    if kind == "gamma-group":
        return _gamma_group(doc, "")
    if kind == "crossed-module":
        return _crossed(doc, "")
    return _query(doc)


def load_instance(path: str) -> Instance:
    with open(path, encoding="utf-8") as fh:
        return parse_instance(fh.read())


# ---------------------------------------------------------------------------
# canonical emitter: two-space indent, fixed key order, one table row per line


def _doc_group(g: FiniteGroup) -> dict:
    d: dict = {"kind": "group"}
    if g.name:
        d["name"] = g.name
    d["order"] = g.order
    d["mul"] = g.mul
    return d


def _doc_gamma_group(g: GammaGroup, bare_ok: bool) -> dict:
    if bare_ok and g.gamma.order == 1:
        return _doc_group(g.group)
    d: dict = {"kind": "gamma-group"}
    if g.group.name:
        d["name"] = g.group.name
    d["order"] = g.order
    d["mul"] = g.group.mul
    d["gamma"] = _doc_group(g.gamma)
    d["action"] = g.action.act
    return d


def _doc_crossed(m: GammaCrossedModule) -> dict:
    bare = m.gamma.order == 1
    return {"kind": "crossed-module", "B": _doc_gamma_group(m.B, bare), "D": _doc_gamma_group(m.D, bare),
            "d": m.d.map, "theta": m.theta}


def to_document(obj: Instance) -> dict:
    if isinstance(obj, FiniteGroup):
        return _doc_group(obj)
    if isinstance(obj, GammaGroup):
        return _doc_gamma_group(obj, False)
    if isinstance(obj, GammaCrossedModule):
        return _doc_crossed(obj)
    if isinstance(obj, ExtensionQuery):
        bare = obj.M.gamma.order == 1
        d = {"kind": "extension-query", "M": _doc_crossed(obj.M), "Q": _doc_gamma_group(obj.Q, bare)}
        if obj.psi is not None:
            d["psi"] = obj.psi
        return d
    raise TypeError(f"cannot emit {type(obj).__name__}")


def _is_int_list(v: Any) -> bool:
    return isinstance(v, (list, tuple)) and all(isinstance(x, int) and not isinstance(x, bool) for x in v)


def _render(v: Any, indent: int) -> str:
    pad, inner = "  " * indent, "  " * (indent + 1)
    if isinstance(v, dict):
        items = [f'{inner}{json.dumps(k)}: {_render(x, indent + 1)}' for k, x in v.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if _is_int_list(v):
        return "[" + ", ".join(str(x) for x in v) + "]"
    if isinstance(v, (list, tuple)):
        if not v:
            return "[]"
        return "[\n" + ",\n".join(inner + _render(x, indent + 1) for x in v) + "\n" + pad + "]"
    return json.dumps(v, ensure_ascii=False)


def emit(obj: Instance) -> str:
    return _render(to_document(obj), 0) + "\n"


def canonicalize(text: str) -> str:
    return emit(parse_instance(text))
