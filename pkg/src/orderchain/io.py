"""Poset text format and skeleton export.

Poset files::

    # the poset X
    d 5
    names: a b c g h
    0 2
    1 2
    2 3
    2 4

``d <n>`` comes first, then one cover ``i j`` (meaning x_i < x_j) per line.
``#`` starts a comment, blank lines are skipped, and the optional
``names:`` line labels the elements.
"""

from __future__ import annotations

import json

from .errors import PosetFormatError
from .poset import MAX_ELEMENTS, Poset, cover_pairs, poset_from_covers
from .polytopes import SkeletonGraph, rho


def parse_poset(text: str) -> Poset:
    """Parse the text format. Raises PosetFormatError (with ``lineno``) on
    malformed input and CycleError when the covers are cyclic."""
    d = None
    names = None
    covers = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if d is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] != "d":
                raise PosetFormatError("expected 'd <n>' header", lineno)
            try:
                d = int(parts[1])
            except ValueError:
                raise PosetFormatError(f"bad element count {parts[1]!r}", lineno) from None
            if not 1 <= d <= MAX_ELEMENTS:
                raise PosetFormatError(f"element count must be in 1..{MAX_ELEMENTS}", lineno)
            continue
        if line.startswith("names:"):
            names = line[len("names:"):].split()
            if len(names) != d:
                raise PosetFormatError(f"expected {d} names, got {len(names)}", lineno)
            continue
        parts = line.split()
        if len(parts) != 2:
            raise PosetFormatError(f"expected '<i> <j>', got {line!r}", lineno)
        try:
            i, j = int(parts[0]), int(parts[1])
        except ValueError:
            raise PosetFormatError(f"non-integer element in {line!r}", lineno) from None
        if not (0 <= i < d and 0 <= j < d):
            raise PosetFormatError(f"element out of range 0..{d - 1} in {line!r}", lineno)
        if i == j:
            raise PosetFormatError(f"element related to itself in {line!r}", lineno)
        covers.append((i, j))
    if d is None:
        raise PosetFormatError("missing 'd <n>' header", None)
    return poset_from_covers(d, covers, names)


def read_poset(path) -> Poset:
    with open(path, encoding="utf-8") as fh:
        return parse_poset(fh.read())


def format_poset(p: Poset) -> str:
    """Canonical text: header, optional names, then the covers in
    lexicographic order."""
    lines = [f"d {p.d}"]
    if p.names:
        lines.append("names: " + " ".join(p.names))
    lines.extend(f"{i} {j}" for i, j in cover_pairs(p))
    return "\n".join(lines) + "\n"


def skeleton_to_dict(g: SkeletonGraph) -> dict:
    return {
        "kind": g.kind,
        "vertices": [list(rho(w, g.d)) for w in g.vertices],
        "edges": [[u, v] for u, v in g.edges],
    }


def skeleton_to_json(g: SkeletonGraph) -> str:
    return json.dumps(skeleton_to_dict(g))


def skeleton_from_json(text: str) -> SkeletonGraph:
    data = json.loads(text)
    verts = data["vertices"]
    d = len(verts[0]) if verts else 0
    masks = tuple(sum(b << i for i, b in enumerate(v)) for v in verts)
    return SkeletonGraph(data["kind"], d, masks, tuple((u, v) for u, v in data["edges"]))


def skeleton_to_dot(g: SkeletonGraph) -> str:
    lines = [f"graph {g.kind} {{"]
    for k, w in enumerate(g.vertices):
        lines.append(f'  n{k} [label="{w:#x}"];')
    for u, v in g.edges:
        lines.append(f"  n{u} -- n{v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
