"""Reading instance files and writing deterministic artifacts.

An instance is one JSON object::

    {"vertices": ["a", "b", ...],
     "edges": [["a", "b"], ...],
     "generators": [{"a": "b", "b": "a"}, ...],
     "cut_sets": [["a", "b"], ...]}

``generators`` and ``cut_sets`` may be omitted; ``name`` and ``description``
are accepted and ignored by the pipeline.  Errors carry the line of the
offending value.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from json.decoder import scanstring
from pathlib import Path

from .errors import ModelError, ParseError
from .space import GroupAction, SpaceGraph

KEYS = {"vertices", "edges", "generators", "cut_sets", "name", "description"}
_WS = " \t\n\r"


@dataclass
class Instance:
    graph: SpaceGraph
    action: GroupAction
    cuts: list  # frozensets of vertex indices, input order
    name: str = ""
    raw: dict = field(default_factory=dict, repr=False)


def _skip(text: str, pos: int) -> int:
    while pos < len(text) and text[pos] in _WS:
        pos += 1
    return pos


def locate(text: str, path) -> int:
    """Character offset of the value at ``path`` (keys and list indices); -1 if absent."""
    dec = json.JSONDecoder()
    pos = _skip(text, 0)
    for step in path:
        if pos >= len(text):
            return -1
        ch = text[pos]
        if ch == "{" and isinstance(step, str):
            pos = _skip(text, pos + 1)
            while pos < len(text) and text[pos] == '"':
                key, pos = scanstring(text, pos + 1)
                pos = _skip(text, pos)
                pos = _skip(text, pos + 1)  # ':'
                if key == step:
                    break
                _, pos = dec.raw_decode(text, pos)
                pos = _skip(text, pos)
                if text[pos] == ",":
                    pos = _skip(text, pos + 1)
            else:
                return -1
        elif ch == "[" and isinstance(step, int):
            pos = _skip(text, pos + 1)
            for _ in range(step):
                if text[pos] == "]":
                    return -1
                _, pos = dec.raw_decode(text, pos)
                pos = _skip(text, pos)
                if text[pos] == ",":
                    pos = _skip(text, pos + 1)
            if text[pos] == "]":
                return -1
        else:
            return -1
    return pos


def line_of(text: str, path) -> int:
    pos = locate(text, path)
    return text.count("\n", 0, pos) + 1 if pos >= 0 else 1


def _no_duplicates(pairs):
    out = {}
    for k, v in pairs:
        if k in out:
            raise ValueError(f"duplicate key {k!r}")
        out[k] = v
    return out


def _path_str(path) -> str:
    return "".join(f"[{p}]" if isinstance(p, int) else f".{p}" for p in path) or "."


def parse_instance(text: str, source: str = "<input>") -> Instance:
    """Parse and check an instance.  Syntax and schema problems raise
    ``ParseError``; graph-level problems raise ``ModelError``."""

    def fail(path, msg, cls=ParseError):
        raise cls(f"{source}:{line_of(text, path)}: {_path_str(path)}: {msg}")

    try:
        doc = json.loads(text, object_pairs_hook=_no_duplicates)
    except json.JSONDecodeError as e:
        raise ParseError(f"{source}:{e.lineno}: invalid JSON: {e.msg} (column {e.colno})") from None
    except ValueError as e:
        raise ParseError(f"{source}: invalid JSON: {e}") from None
    if not isinstance(doc, dict):
        fail([], "top level must be an object")
    for key in sorted(doc):
        if key not in KEYS:
            fail([key], f"unknown key {key!r}")
    for key in ("vertices", "edges"):
        if key not in doc:
            fail([], f"missing required key {key!r}")

    verts = doc["vertices"]
    if not isinstance(verts, list) or not verts:
        fail(["vertices"], "must be a nonempty array of strings")
    seen = set()
    for i, v in enumerate(verts):
        if not isinstance(v, str):
            fail(["vertices", i], "vertex identifiers must be strings")
        if v in seen:
            fail(["vertices", i], f"duplicate vertex {v!r}", ModelError)
        seen.add(v)

    def vertex(path, v):
        if not isinstance(v, str):
            fail(path, "expected a vertex identifier (string)")
        if v not in seen:
            fail(path, f"unknown vertex {v!r}")
        return v

    edges = doc["edges"]
    if not isinstance(edges, list):
        fail(["edges"], "must be an array of 2-element arrays")
    pairs = set()
    for i, e in enumerate(edges):
        if not isinstance(e, list) or len(e) != 2:
            fail(["edges", i], "each edge must be a 2-element array")
        a, b = vertex(["edges", i, 0], e[0]), vertex(["edges", i, 1], e[1])
        if a == b:
            fail(["edges", i], f"loop at {a!r}", ModelError)
        key = frozenset((a, b))
        if key in pairs:
            fail(["edges", i], f"duplicate edge {a!r}-{b!r}", ModelError)
        pairs.add(key)

    gens = doc.get("generators", [])
    if not isinstance(gens, list):
        fail(["generators"], "must be an array of objects")
    for i, g in enumerate(gens):
        if not isinstance(g, dict):
            fail(["generators", i], "each generator must be an object mapping vertex to vertex")
        for src, dst in g.items():
            vertex(["generators", i], src)
            vertex(["generators", i, src], dst)
        # unmapped vertices are fixed, so the targets must rearrange the sources
        if len(set(g.values())) != len(g) or set(g.values()) != set(g):
            fail(["generators", i], "generator is not a permutation", ModelError)

    cuts_raw = doc.get("cut_sets", [])
    if not isinstance(cuts_raw, list):
        fail(["cut_sets"], "must be an array of arrays")
    for i, c in enumerate(cuts_raw):
        if not isinstance(c, list) or not c:
            fail(["cut_sets", i], "each cut set must be a nonempty array of vertices")
        for j, v in enumerate(c):
            vertex(["cut_sets", i, j], v)
        if len(set(c)) != len(c):
            fail(["cut_sets", i], "repeated vertex in cut set", ModelError)

    for key, cls in (("name", str), ("description", str)):
        if key in doc and not isinstance(doc[key], cls):
            fail([key], "must be a string")

    graph = SpaceGraph.build(verts, [tuple(e) for e in edges])
    action = GroupAction.from_labels(graph, gens)
    cuts = []
    for i, c in enumerate(cuts_raw):
        cut = graph.ix(*c)
        if cut in cuts:
            fail(["cut_sets", i], "cut set listed twice", ModelError)
        cuts.append(cut)
    return Instance(graph, action, cuts, doc.get("name", ""), doc)


def load_instance(path) -> Instance:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"{path}: cannot read: {e.strerror}") from None
    except UnicodeDecodeError:
        raise ParseError(f"{path}: not UTF-8 text") from None
    return parse_instance(text, str(path))


def instance_json(graph: SpaceGraph, generators=(), cuts=(), name: str = "") -> dict:
    """Inverse of ``parse_instance`` for index-based data."""
    lab = graph.vertices
    doc = {}
    if name:
        doc["name"] = name
    doc["vertices"] = list(lab)
    doc["edges"] = sorted([lab[a], lab[b]] for a, b in (sorted(e) for e in graph.edges))
    doc["generators"] = [{lab[v]: lab[g[v]] for v in range(len(g)) if g[v] != v} for g in generators]
    doc["cut_sets"] = [[lab[v] for v in sorted(c)] for c in cuts]
    return doc


def dumps(obj) -> str:
    """Canonical JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def write_text(path: Path, text: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
