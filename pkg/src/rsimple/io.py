"""JSON instance formats.

Graphs:  {"type": "digraph"|"graph", "n": 3, "edges": [[0, 1], ...], "k": "5", "r": "2"}
Packing: {"type": "packing", "universe": 4, "p": 2, "q": 3, "r": "2",
          "sets": [[0, 1], ...], "mult": ["1", ...]}
Large integers (k, r, multiplicities) travel as decimal strings; plain JSON
integers are accepted on input too.
"""

from __future__ import annotations

import json
import re
import sys
from dataclasses import dataclass

from .errors import ParseError, ValidationError
from .graph import Digraph, UGraph
from .packing import PackingInstance

_DECIMAL = re.compile(r"[+-]?[0-9]+")


@dataclass(frozen=True)
class GraphInstance:
    graph: object  # Digraph or UGraph
    k: int | None
    r: int | None

    @property
    def directed(self) -> bool:
        return self.graph.directed


def _int(value, where: str) -> int:
    if isinstance(value, bool):
        raise ParseError(f"{where}: expected an integer, got a boolean")
    if isinstance(value, int):
        return value
    if isinstance(value, str) and _DECIMAL.fullmatch(value.strip()):
        return int(value.strip())
    raise ParseError(f"{where}: expected an integer or decimal string, got {value!r}")


def _positive(value, where: str) -> int:
    x = _int(value, where)
    if x < 1:
        raise ValidationError(f"{where}: must be positive, got {x}")
    return x


def _require(obj: dict, key: str, where: str = "$"):
    if key not in obj:
        raise ParseError(f"{where}: missing key {key!r}")
    return obj[key]


def _edges(raw, n: int, directed: bool) -> list:
    if not isinstance(raw, list):
        raise ParseError("$.edges: expected a list")
    out = []
    for i, e in enumerate(raw):
        where = f"$.edges[{i}]"
        if not isinstance(e, list) or len(e) != 2:
            raise ParseError(f"{where}: expected a pair")
        u, v = _int(e[0], where), _int(e[1], where)
        if not (0 <= u < n and 0 <= v < n):
            raise ValidationError(f"{where}: vertex out of range [0, {n})")
        if u == v:
            raise ValidationError(f"{where}: self-loop at {u}")
        out.append((u, v))
    return out


def instance_from_dict(obj) -> GraphInstance | PackingInstance:
    if not isinstance(obj, dict):
        raise ParseError("$: expected an object")
    kind = obj.get("type")
    if kind is None and "sets" in obj:
        kind = "packing"
    if kind in ("digraph", "graph"):
        n = _int(_require(obj, "n"), "$.n")
        if n < 0:
            raise ValidationError("$.n: must be non-negative")
        edges = _edges(_require(obj, "edges"), n, kind == "digraph")
        g = Digraph(n, edges) if kind == "digraph" else UGraph(n, edges)
        k = _positive(obj["k"], "$.k") if obj.get("k") is not None else None
        r = _positive(obj["r"], "$.r") if obj.get("r") is not None else None
        return GraphInstance(g, k, r)
    if kind == "packing":
        n = _int(_require(obj, "universe"), "$.universe")
        p = _int(_require(obj, "p"), "$.p")
        q = _int(_require(obj, "q"), "$.q")
        r = _positive(_require(obj, "r"), "$.r")
        raw = _require(obj, "sets")
        if not isinstance(raw, list):
            raise ParseError("$.sets: expected a list")
        sets = []
        for i, s in enumerate(raw):
            if not isinstance(s, list):
                raise ParseError(f"$.sets[{i}]: expected a list")
            sets.append(frozenset(_int(x, f"$.sets[{i}]") for x in s))
        mult = obj.get("mult")
        if mult is None:
            mult = [1] * len(sets)
        if not isinstance(mult, list) or len(mult) != len(sets):
            raise ParseError("$.mult: expected a list as long as $.sets")
        mult = [_positive(m, f"$.mult[{i}]") for i, m in enumerate(mult)]
        return PackingInstance(n, tuple(sets), tuple(mult), p, q, r)
    raise ParseError(f"$.type: unknown instance type {kind!r}")


def parse_instance_text(text: str):
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return instance_from_dict(obj)


def parse_instance(source) -> GraphInstance | PackingInstance:
    """Read from a path, '-' for stdin, or an open text stream."""
    if source in (None, "-"):
        return parse_instance_text(sys.stdin.read())
    if hasattr(source, "read"):
        return parse_instance_text(source.read())
    with open(source, encoding="utf-8") as fh:
        return parse_instance_text(fh.read())


def instance_to_dict(inst) -> dict:
    if isinstance(inst, GraphInstance):
        g = inst.graph
        edges = sorted(g.arcs) if g.directed else sorted(g.edges)
        out = {"type": "digraph" if g.directed else "graph", "n": g.n,
               "edges": [list(e) for e in edges]}
        if inst.k is not None:
            out["k"] = str(inst.k)
        if inst.r is not None:
            out["r"] = str(inst.r)
        return out
    if isinstance(inst, PackingInstance):
        return {"type": "packing", "universe": inst.n, "p": inst.p, "q": inst.q,
                "r": str(inst.r), "sets": [sorted(s) for s in inst.sets],
                "mult": [str(m) for m in inst.mult]}
    raise TypeError(f"cannot serialize {type(inst).__name__}")


def serialize(inst) -> str:
    return json.dumps(instance_to_dict(inst), sort_keys=True)


def parse_walk(source) -> list:
    """A walk file is a JSON list of vertices, or {"walk": [...]}."""
    if hasattr(source, "read"):
        text = source.read()
    else:
        with open(source, encoding="utf-8") as fh:
            text = fh.read()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if isinstance(obj, dict):
        obj = _require(obj, "walk")
    if not isinstance(obj, list):
        raise ParseError("walk: expected a list of vertices")
    return [_int(v, f"walk[{i}]") for i, v in enumerate(obj)]
