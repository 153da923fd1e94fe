"""Coxeter diagrams with edge labels in {3, inf}, their Gram forms and searches."""
import enum
import json
import math
from collections import deque
from functools import cached_property
from itertools import combinations

import numpy as np

from coxgrowth import exact

INF = math.inf
_INF_TOKENS = {"inf", "∞", "infinity", "oo"}


class DiagramError(ValueError):
    """Malformed diagram input or violated diagram precondition."""


class DiagramClass(enum.Enum):
    FINITE = "Finite"
    AFFINE = "Affine"
    INDEFINITE = "Indefinite"

    def __str__(self):
        return self.value


class Diagram:
    """Simply laced (plus infinity) Coxeter diagram.

    Nodes keep the order they were given in; that order fixes the internal
    indices ``0..n-1`` used by every matrix and root vector. Pairs that are
    not joined by an edge carry the label 2.
    """

    def __init__(self, nodes, edges=()):
        nodes = tuple(str(v) for v in nodes)
        if len(set(nodes)) != len(nodes):
            raise DiagramError("duplicate node identifiers")
        self.nodes = nodes
        self.index = {v: i for i, v in enumerate(nodes)}
        labels = {}
        for u, v, m in edges:
            i, j = self._idx(u), self._idx(v)
            if i == j:
                raise DiagramError(f"self-loop at node {u!r}")
            if m not in (3, INF):
                raise DiagramError(f"unsupported label {m!r} on edge {u}-{v}")
            key = (min(i, j), max(i, j))
            if key in labels:
                raise DiagramError(f"edge {u}-{v} given twice")
            labels[key] = m
        self._labels = labels

    def _idx(self, v):
        if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
            if not 0 <= v < len(self.nodes):
                raise DiagramError(f"node index {v} out of range")
            return int(v)
        try:
            return self.index[str(v)]
        except KeyError:
            raise DiagramError(f"unknown node {v!r}") from None

    def indices(self, nodes):
        """Sorted tuple of indices for an iterable of node names or indices."""
        return tuple(sorted({self._idx(v) for v in nodes}))

    @property
    def rank(self):
        return len(self.nodes)

    def label(self, i, j):
        if i == j:
            return 1
        return self._labels.get((min(i, j), max(i, j)), 2)

    @property
    def edges(self):
        return tuple((i, j, m) for (i, j), m in sorted(self._labels.items()))

    def neighbours(self, i):
        return [j for j in range(self.rank) if j != i and self.label(i, j) != 2]

    @property
    def simply_laced(self):
        return all(m == 3 for m in self._labels.values())

    @cached_property
    def gram2(self):
        """Doubled bilinear form: 2 on the diagonal, -1 for label 3, -2 for inf."""
        g = 2 * np.eye(self.rank, dtype=np.int64)
        for (i, j), m in self._labels.items():
            g[i, j] = g[j, i] = -1 if m == 3 else -2
        g.flags.writeable = False
        return g

    def subdiagram(self, nodes):
        idx = self.indices(nodes)
        keep = set(idx)
        edges = [(self.nodes[i], self.nodes[j], m) for i, j, m in self.edges
                 if i in keep and j in keep]
        return Diagram([self.nodes[i] for i in idx], edges)

    def names(self, idx):
        return [self.nodes[i] for i in idx]

    def to_json(self):
        return {
            "nodes": list(self.nodes),
            "edges": [{"u": self.nodes[i], "v": self.nodes[j], "m": 3 if m == 3 else "inf"}
                      for i, j, m in self.edges],
        }

    def __eq__(self, other):
        return (isinstance(other, Diagram) and self.nodes == other.nodes
                and self._labels == other._labels)

    def __hash__(self):
        return hash((self.nodes, tuple(sorted(self._labels.items()))))

    def __repr__(self):
        return f"Diagram(nodes={list(self.nodes)}, edges={len(self._labels)})"


def _parse_label(tok, where):
    tok = str(tok).strip().lower()
    if tok in _INF_TOKENS:
        return INF
    if tok == "3":
        return 3
    raise DiagramError(f"{where}: unknown label {tok!r} (expected 3 or inf)")


def parse_diagram(text):
    """Parse the line format (``u v m`` / ``node u``) or the JSON format."""
    stripped = text.strip()
    if stripped.startswith("{"):
        return _parse_json(stripped)
    nodes, seen, edges, pairs = [], set(), [], set()

    def add(v):
        if v not in seen:
            seen.add(v)
            nodes.append(v)

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        where = f"line {lineno}"
        if toks[0] == "node":
            if len(toks) != 2:
                raise DiagramError(f"{where}: expected 'node NAME'")
            if toks[1] in seen:
                raise DiagramError(f"{where}: duplicate node {toks[1]!r}")
            add(toks[1])
            continue
        if len(toks) != 3:
            raise DiagramError(f"{where}: expected 'u v m', got {line!r}")
        u, v, m = toks
        if u == v:
            raise DiagramError(f"{where}: self-loop at node {u!r}")
        m = _parse_label(m, where)
        if frozenset((u, v)) in pairs:
            raise DiagramError(f"{where}: edge {u}-{v} given twice")
        pairs.add(frozenset((u, v)))
        add(u)
        add(v)
        edges.append((u, v, m))
    return Diagram(nodes, edges)


def _parse_json(text):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DiagramError(f"invalid JSON: {exc}") from None
    nodes = [str(v) for v in data.get("nodes", [])]
    if len(set(nodes)) != len(nodes):
        dup = next(v for v in nodes if nodes.count(v) > 1)
        raise DiagramError(f"duplicate node {dup!r}")
    known = set(nodes)
    edges = []
    for k, e in enumerate(data.get("edges", [])):
        u, v = str(e["u"]), str(e["v"])
        where = f"edge {k}"
        if u == v:
            raise DiagramError(f"{where}: self-loop at node {u!r}")
        for w in (u, v):
            if w not in known:
                known.add(w)
                nodes.append(w)
        edges.append((u, v, _parse_label(e["m"], where)))
    try:
        return Diagram(nodes, edges)
    except DiagramError as exc:
        raise DiagramError(f"JSON diagram: {exc}") from None


def load_diagram(path):
    with open(path, encoding="utf-8") as fh:
        return parse_diagram(fh.read())


def gram2(d):
    return d.gram2


def connected_components(d, nodes=None):
    """Connected components of the induced subdiagram, ordered by smallest index."""
    todo = set(range(d.rank)) if nodes is None else set(d.indices(nodes))
    comps = []
    while todo:
        start = min(todo)
        comp, queue = {start}, deque([start])
        while queue:
            i = queue.popleft()
            for j in d.neighbours(i):
                if j in todo and j not in comp:
                    comp.add(j)
                    queue.append(j)
        todo -= comp
        comps.append(tuple(sorted(comp)))
    return comps


def is_connected(d, nodes=None):
    return len(connected_components(d, nodes)) == 1


def _restrict(g, idx):
    return [[int(g[i, j]) for j in idx] for i in idx]


def classify(d, nodes=None):
    """Finite / Affine / Indefinite type of a connected, nonempty node set."""
    idx = tuple(range(d.rank)) if nodes is None else d.indices(nodes)
    if not idx:
        raise DiagramError("cannot classify an empty node set")
    if not is_connected(d, idx):
        raise DiagramError("classify needs a connected node set")
    pos, neg, zero = exact.inertia(_restrict(d.gram2, idx))
    if pos == len(idx):
        return DiagramClass.FINITE
    if neg == 0 and zero == 1:
        return DiagramClass.AFFINE
    return DiagramClass.INDEFINITE


def find_affine_subdiagram(d, nodes=None):
    """Smallest connected affine subset of ``nodes`` (lexicographic tie-break)."""
    idx = tuple(range(d.rank)) if nodes is None else d.indices(nodes)
    if not idx or classify(d, idx) is DiagramClass.FINITE:
        return None
    for size in range(2, len(idx) + 1):
        for sub in combinations(idx, size):
            if is_connected(d, sub) and classify(d, sub) is DiagramClass.AFFINE:
                return sub
    # connected, non-finite diagrams always contain an affine subset
    raise AssertionError("no affine subdiagram in a non-finite diagram")


def null_root(d, nodes):
    """Primitive positive kernel vector of an affine subdiagram, as a full-rank root vector."""
    idx = d.indices(nodes)
    if not idx or classify(d, idx) is not DiagramClass.AFFINE:
        raise DiagramError("null_root needs an affine subdiagram")
    (ker,) = exact.nullspace(_restrict(d.gram2, idx))
    v = exact.primitive(ker)
    if v[0] < 0:
        v = [-x for x in v]
    assert all(x >= 1 for x in v)
    out = [0] * d.rank
    for i, c in zip(idx, v):
        out[i] = c
    return tuple(out)


def shortest_path(d, p, target):
    """Shortest path from node ``p`` to the node set ``target``.

    Among shortest paths the one choosing the smallest index at every step
    is returned, as a tuple of indices ``(p, ..., s_r)`` with ``s_r`` in
    ``target``.
    """
    p = d._idx(p)
    tgt = set(d.indices(target))
    if not tgt:
        raise DiagramError("target set is empty")
    if p in tgt:
        raise DiagramError("start node already lies in the target set")
    dist = {i: 0 for i in tgt}
    queue = deque(sorted(tgt))
    while queue:
        i = queue.popleft()
        for j in d.neighbours(i):
            if j not in dist:
                dist[j] = dist[i] + 1
                queue.append(j)
    if p not in dist:
        raise DiagramError(f"node {d.nodes[p]!r} is not connected to the target set")
    path = [p]
    while path[-1] not in tgt:
        cur = path[-1]
        path.append(min(j for j in d.neighbours(cur) if dist.get(j) == dist[cur] - 1))
    _check_path(d, path, tgt)
    return tuple(path)


def _check_path(d, path, tgt):
    r = len(path) - 1
    assert len(set(path)) == len(path), "path nodes must be distinct"
    assert all(s not in tgt for s in path[:-1]), "interior path node inside target"
    for a in range(len(path)):
        for b in range(a + 2, len(path)):
            assert d.label(path[a], path[b]) == 2, "shortest path has a chord"
    assert r >= 1
