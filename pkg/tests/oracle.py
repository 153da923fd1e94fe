"""Brute-force reference computations, independent of the package.

Everything here is plain Python: matrices are tuples of tuples of ints,
elements are found by a word-metric BFS that deduplicates against every
element seen so far, and no descent or length theory is used.  Run as a
script to regenerate ``data/frozen.json``.
"""
import json
import os
from itertools import combinations

HERE = os.path.dirname(os.path.abspath(__file__))
FROZEN = os.path.join(HERE, "data", "frozen.json")

DIAGRAMS = {
    "A2": (2, [(0, 1, 3)]),
    "A3": (3, [(0, 1, 3), (1, 2, 3)]),
    "D4": (4, [(0, 1, 3), (0, 2, 3), (0, 3, 3)]),
    "A2aff": (3, [(0, 1, 3), (1, 2, 3), (0, 2, 3)]),
    "K15": (6, [(0, i, 3) for i in range(1, 6)]),
    "W3": (3, [(0, 1, "inf"), (0, 2, "inf"), (1, 2, "inf")]),
}


def form2(n, edges):
    b = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i, j, m in edges:
        b[i][j] = b[j][i] = -1 if m == 3 else -2
    return b


def reflection(n, b, i):
    # s_i(v) = v - B(alpha_i, v) alpha_i, acting on coordinate columns
    rows = []
    for r in range(n):
        rows.append(tuple((1 if r == c else 0) - (b[i][c] if r == i else 0) for c in range(n)))
    return tuple(rows)


def matmul(a, c):
    n = len(a)
    return tuple(tuple(sum(a[r][k] * c[k][q] for k in range(n)) for q in range(n)) for r in range(n))


def ball(name, max_len):
    """Per-length elements (as dict matrix -> length) of the Coxeter group."""
    n, edges = DIAGRAMS[name]
    b = form2(n, edges)
    gens = [reflection(n, b, i) for i in range(n)]
    ident = tuple(tuple(int(r == c) for c in range(n)) for r in range(n))
    seen = {ident: 0}
    frontier = [ident]
    for k in range(1, max_len + 1):
        nxt = []
        for w in frontier:
            for g in gens:
                x = matmul(w, g)
                if x not in seen:
                    seen[x] = k
                    nxt.append(x)
        if not nxt:
            break
        frontier = nxt
    return seen, b


def counts(lengths, max_len):
    out = [0] * (max_len + 1)
    for ell in lengths:
        out[ell] += 1
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def apply(w, v):
    return tuple(sum(w[r][c] * v[c] for c in range(len(v))) for r in range(len(w)))


def quotient_counts(name, J, max_len):
    """Elements of the ball with w(alpha_j) > 0 for all j in J, per length."""
    seen, _ = ball(name, max_len)
    n = DIAGRAMS[name][0]
    keep = []
    for w, ell in seen.items():
        if all(all(x >= 0 for x in apply(w, tuple(int(q == j) for q in range(n)))) for j in J):
            keep.append(ell)
    return counts(keep, max_len)


def reflection_lengths(name, max_len):
    """Lengths of the reflections in the ball, found as involutions with rank-one ``I - t``."""
    seen, _ = ball(name, max_len)
    n = DIAGRAMS[name][0]
    ident = tuple(tuple(int(r == c) for c in range(n)) for r in range(n))
    out = []
    for w, ell in seen.items():
        if w == ident or matmul(w, w) != ident:
            continue
        diff = [[ident[r][c] - w[r][c] for c in range(n)] for r in range(n)]
        nz = [row for row in diff if any(row)]
        # rank one: all nonzero rows proportional to the first
        first = nz[0]
        if all(all(first[a] * row[c] == first[c] * row[a] for a in range(n) for c in range(n)) for row in nz):
            out.append(ell)
    return counts(out, max_len)


def root_depths(name, d_max):
    """Number of positive roots of each depth ``<= d_max``, depth = 1 + distance from a simple root."""
    n, edges = DIAGRAMS[name]
    b = form2(n, edges)
    gens = [reflection(n, b, i) for i in range(n)]
    simple = [tuple(int(q == i) for q in range(n)) for i in range(n)]
    depth = {s: 1 for s in simple}
    frontier = list(simple)
    for k in range(2, d_max + 1):
        nxt = []
        for v in frontier:
            for g in gens:
                x = apply(g, v)
                if all(c >= 0 for c in x) and x not in depth:
                    depth[x] = k
                    nxt.append(x)
        frontier = nxt
    return counts(list(depth.values()), d_max)


def pairings(name, vecs):
    n, edges = DIAGRAMS[name]
    b = form2(n, edges)
    return {f"{i + 1}{j + 1}": sum(vecs[i][r] * b[r][c] * vecs[j][c] for r in range(n) for c in range(n))
            for i, j in combinations(range(len(vecs)), 2)}


def build():
    data = {}
    data["counts"] = {
        "A2": counts(ball("A2", 10)[0].values(), 10),
        "A3": counts(ball("A3", 20)[0].values(), 20),
        "D4": counts(ball("D4", 20)[0].values(), 20),
        "A2aff": counts(ball("A2aff", 40)[0].values(), 40),
        "K15": counts(ball("K15", 8)[0].values(), 8),
        "W3": counts(ball("W3", 12)[0].values(), 12),
    }
    data["quotient_counts"] = {
        "A2_J0": quotient_counts("A2", [0], 5),
        "A3_J01": quotient_counts("A3", [0, 1], 8),
        "K15_D4aff": quotient_counts("K15", [0, 1, 2, 3, 4], 9),
        "K15_center": quotient_counts("K15", [0], 8),
    }
    data["reflection_lengths"] = {
        "A3": reflection_lengths("A3", 9),
        "A2aff": reflection_lengths("A2aff", 9),
        "K15": reflection_lengths("K15", 9),
    }
    data["root_depths"] = {
        "A3": root_depths("A3", 5),
        "A2aff": root_depths("A2aff", 5),
        "K15": root_depths("K15", 5),
    }
    beta = [(0, 0, 0, 0, 0, 1), (3, 1, 1, 1, 1, 0), (5, 3, 3, 3, 3, 0)]
    data["k15_beta"] = [list(x) for x in beta]
    data["k15_beta_pairings2"] = pairings("K15", beta)
    return data


if __name__ == "__main__":
    os.makedirs(os.path.dirname(FROZEN), exist_ok=True)
    with open(FROZEN, "w") as fh:
        json.dump(build(), fh, indent=1, sort_keys=True)
        fh.write("\n")
