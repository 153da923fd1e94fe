"""Vectors in the geometric representation: pairing, reflections, roots by depth.

Root vectors are plain tuples of Python ints over the simple-root basis,
in node order.
"""
from dataclasses import dataclass, field

DEFAULT_ROOT_CAP = 10**6


class RootError(ValueError):
    pass


def _vec(v, n):
    v = tuple(int(x) for x in v)
    if len(v) != n:
        raise RootError(f"vector of length {len(v)} in a rank-{n} diagram")
    return v


def simple_root(d, s):
    i = d._idx(s)
    return tuple(int(k == i) for k in range(d.rank))


def form_image(d, x):
    """Row vector ``gram2 @ x``; pairing2(x, y) is its dot product with ``y``."""
    x = _vec(x, d.rank)
    g = d.gram2
    return tuple(sum(int(g[i, j]) * x[j] for j in range(d.rank) if x[j]) for i in range(d.rank))


def pairing2(d, x, y):
    """Twice the invariant form, ``2(x, y)``; always an integer."""
    gx = form_image(d, x)
    y = _vec(y, d.rank)
    return sum(a * b for a, b in zip(gx, y))


def reflect_vector(d, beta, v):
    """Apply the reflection in the unit root ``beta`` to ``v``."""
    beta = _vec(beta, d.rank)
    if pairing2(d, beta, beta) != 2:
        raise RootError(f"{beta} is not a unit vector; cannot reflect in it")
    v = _vec(v, d.rank)
    c = pairing2(d, v, beta)
    return tuple(a - c * b for a, b in zip(v, beta))


def reflect_simple(d, i, v):
    """Reflection in the simple root with index ``i``."""
    g = d.gram2
    c = sum(int(g[i, j]) * x for j, x in enumerate(v) if x)
    if not c:
        return tuple(v)
    out = list(v)
    out[i] -= c
    return tuple(out)


def is_positive(v):
    v = tuple(int(x) for x in v)
    if not any(v):
        raise RootError("the zero vector is neither positive nor negative")
    return all(x >= 0 for x in v)


def is_negative(v):
    return is_positive(tuple(-int(x) for x in v))


def height(beta):
    beta = tuple(int(x) for x in beta)
    if not any(beta) or any(x < 0 for x in beta):
        raise RootError(f"height is defined for positive roots only, got {beta}")
    return sum(beta)


def descend_to_simple(d, beta):
    """Walk a positive root down to a simple root by height-lowering reflections.

    Returns the list of simple-reflection indices applied. A vector that gets
    stuck, goes negative, or fails the unit test is not a root.
    """
    beta = _vec(beta, d.rank)
    if not any(beta) or any(x < 0 for x in beta):
        raise RootError(f"{beta} is not a positive vector")
    if pairing2(d, beta, beta) != 2:
        raise RootError(f"{beta} is not a unit vector, hence not a real root")
    steps = []
    while sum(beta) > 1:
        g = form_image(d, beta)
        s = next((i for i in range(d.rank) if g[i] > 0), None)
        if s is None:
            raise RootError("descent stuck: vector is not a root")
        beta = reflect_simple(d, s, beta)
        if any(x < 0 for x in beta):
            raise RootError("descent left the positive cone: vector is not a root")
        steps.append(s)
    return steps


def is_root(d, beta):
    v = tuple(int(x) for x in beta)
    if not any(v):
        return False
    if all(x <= 0 for x in v):
        v = tuple(-x for x in v)
    try:
        descend_to_simple(d, v)
    except RootError:
        return False
    return True


def root_depth(d, beta):
    """Depth of a positive root: one plus the number of descending reflections."""
    return 1 + len(descend_to_simple(d, beta))


@dataclass
class RootLayers:
    """Positive roots grouped by depth (depth 1 = simple roots)."""

    layers: dict = field(default_factory=dict)
    truncated: bool = False

    def __len__(self):
        return sum(len(v) for v in self.layers.values())

    def roots(self):
        for d in sorted(self.layers):
            yield from self.layers[d]

    def depth_of(self):
        return {r: d for d, rs in self.layers.items() for r in rs}


def positive_roots_by_depth(d, d_max, cap=DEFAULT_ROOT_CAP):
    """Layered expansion of the positive roots from the simple roots.

    Layer ``k+1`` holds roots ``s(beta)`` for ``beta`` in layer ``k`` that
    have not been seen before. Stops early, flagging ``truncated``, when more
    than ``cap`` roots would be stored.
    """
    if d_max < 1:
        raise ValueError("d_max must be at least 1")
    first = [simple_root(d, i) for i in range(d.rank)]
    out = RootLayers({1: sorted(first)})
    seen = set(first)
    frontier = first
    for depth in range(2, d_max + 1):
        nxt = set()
        for beta in frontier:
            for i in range(d.rank):
                gamma = reflect_simple(d, i, beta)
                if gamma in seen or gamma in nxt or any(x < 0 for x in gamma):
                    continue
                nxt.add(gamma)
        if not nxt:
            break
        if len(seen) + len(nxt) > cap:
            out.truncated = True
            break
        out.layers[depth] = sorted(nxt)
        seen |= nxt
        frontier = out.layers[depth]
    return out


def orbit_closure(d, gen_roots, seeds, depth):
    """Vectors reachable from ``seeds`` by at most ``depth`` reflections in ``gen_roots``."""
    seen = {tuple(int(x) for x in s) for s in seeds}
    frontier = list(seen)
    for _ in range(depth):
        nxt = []
        for v in frontier:
            for b in gen_roots:
                w = reflect_vector(d, b, v)
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        if not nxt:
            break
        frontier = nxt
    return seen
