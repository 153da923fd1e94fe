"""Exact growth tables by breadth-first enumeration, plus series and rate checks."""
import csv
import io
import json
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction

import numpy as np

from coxgrowth import kernels
from coxgrowth.diagram import DiagramClass, DiagramError, classify, connected_components
from coxgrowth.elements import Element

DEFAULT_CAP = 10**6


class GrowthError(ValueError):
    pass


@dataclass
class GrowthTable:
    """Per-length counts ``a_k`` and the cumulative growth function ``gamma(k)``.

    Counts are Python ints. When ``truncated`` is set the table is valid
    through ``k_max`` only, the last complete layer.
    """

    counts: list
    truncated: bool = False
    notes: list = field(default_factory=list)

    def __post_init__(self):
        self.counts = [int(c) for c in self.counts]
        if not self.counts or self.counts[0] != 1:
            raise GrowthError("a growth table starts with the identity: counts[0] == 1")

    @property
    def k_max(self):
        return len(self.counts) - 1

    @property
    def cumulative(self):
        out, acc = [], 0
        for c in self.counts:
            acc += c
            out.append(acc)
        return out

    def gamma(self, k):
        if k > self.k_max:
            raise GrowthError(f"table only reaches length {self.k_max}")
        return sum(self.counts[: k + 1])

    @property
    def total(self):
        return sum(self.counts)

    def to_json(self):
        out = {
            "counts": [str(c) for c in self.counts],
            "cumulative": [str(c) for c in self.cumulative],
            "truncated": self.truncated,
        }
        if self.notes:
            out["notes"] = list(self.notes)
        return out

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["k", "a_k", "gamma_k"])
        for k, (a, g) in enumerate(zip(self.counts, self.cumulative)):
            w.writerow([k, a, g])
        return buf.getvalue()

    def to_text(self):
        lines = [f"{'k':>4} {'a_k':>14} {'gamma_k':>16}"]
        for k, (a, g) in enumerate(zip(self.counts, self.cumulative)):
            lines.append(f"{k:>4} {a:>14} {g:>16}")
        if self.truncated:
            lines.append("(truncated: cap reached)")
        for note in self.notes:
            lines.append(f"note: {note}")
        return "\n".join(lines)

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        return cls([int(c) for c in data["counts"]], bool(data.get("truncated", False)),
                   list(data.get("notes", [])))


def _g2(d):
    return np.ascontiguousarray(d.gram2, dtype=np.int64)


def _identity_stack(n):
    return np.eye(n, dtype=np.int64)[None, :, :].copy()


def _int64_stack(elements):
    mats = []
    for e in elements:
        m = e.mat if isinstance(e, Element) else np.asarray(e)
        if any(abs(int(x)) >= kernels.SAFE_BOUND for x in np.asarray(m).flat):
            raise kernels.KernelOverflow("generator entries too large for the int64 kernels")
        mats.append(np.array([[int(x) for x in row] for row in m], dtype=np.int64))
    return np.stack(mats) if mats else np.empty((0, 0, 0), dtype=np.int64)


def coxeter_layers(d, max_len, cap=DEFAULT_CAP):
    """Yield ``(k, layer)`` for the spheres of ``W`` in the simple generators.

    A child ``w s`` is one step longer exactly when ``w(alpha_s)`` is
    positive, so each sphere only needs deduplicating against itself.
    Raises ``_Truncated`` carrying ``k`` when the cap would be exceeded.
    """
    g2 = _g2(d)
    allowed = np.arange(d.rank, dtype=np.int64)
    layer = _identity_stack(d.rank)
    total = 1
    yield 0, layer
    for k in range(1, max_len + 1):
        kernels.check_bound(layer)
        children = kernels.expand_right(layer, g2, allowed)
        layer, _ = kernels.unique_matrices(children)
        if layer.shape[0] == 0:
            return
        total += layer.shape[0]
        if total > cap:
            raise _Truncated(k)
        yield k, layer


class _Truncated(Exception):
    def __init__(self, k):
        super().__init__(k)
        self.k = k


def enumerate_ball(d, gens=None, max_len=10, cap=DEFAULT_CAP, return_elements=False):
    """Growth table of the group generated by involutions ``gens``.

    With ``gens=None`` the simple reflections of ``d`` are used through the
    descent-based kernel; otherwise a generic BFS deduplicates every new
    sphere against the previous two (involutive generators move at most one
    step in the word metric).
    """
    if cap <= 0:
        raise GrowthError("cap must be positive")
    if max_len < 0:
        raise GrowthError("max_len must be nonnegative")
    layers = []
    if gens is None:
        counts = []
        truncated = False
        try:
            for _, layer in coxeter_layers(d, max_len, cap):
                counts.append(layer.shape[0])
                if return_elements:
                    layers.append(layer)
        except _Truncated:
            truncated = True
    else:
        counts, truncated = _generic_ball(d, gens, max_len, cap, layers if return_elements else None)
    table = GrowthTable(counts, truncated)
    return (table, layers) if return_elements else table


def _generic_ball(d, gens, max_len, cap, store):
    stack = _int64_stack(gens)
    n = d.rank
    for g in stack:
        if not (g @ g == np.eye(n, dtype=np.int64)).all():
            raise GrowthError("generators must be involutions")
    gbound = int(np.abs(stack).max()) if stack.size else 1
    prev = np.empty((0, n, n), dtype=np.int64)
    cur = _identity_stack(n)
    counts = [1]
    if store is not None:
        store.append(cur)
    total = 1
    for _ in range(max_len):
        kernels.check_bound(cur, kernels.SAFE_BOUND // max(1, gbound * n))
        children, _ = kernels.unique_matrices(kernels.right_matmul(cur, stack))
        old = kernels.matrix_keys(np.concatenate([prev, cur]))
        fresh = ~np.isin(kernels.matrix_keys(children), old)
        nxt = children[fresh]
        if nxt.shape[0] == 0:
            break
        total += nxt.shape[0]
        if total > cap:
            return counts, True
        counts.append(nxt.shape[0])
        if store is not None:
            store.append(nxt)
        prev, cur = cur, nxt
    return counts, False


def _check_proper(d, J):
    J = d.indices(J)
    if len(J) >= d.rank:
        raise GrowthError("J must be a proper subset of the generators")
    return J


def parabolic_layers(d, J, max_len, cap=DEFAULT_CAP):
    """Spheres of the minimal left coset representatives ``W^J``.

    ``W^J`` is closed under taking suffixes of reduced words, so its
    spheres grow by left multiplication; inverses ride along for the length
    test.
    """
    n = d.rank
    g2 = _g2(d)
    jmask = np.zeros(n, dtype=np.bool_)
    jmask[list(J)] = True
    layer = _identity_stack(n)
    inv = _identity_stack(n)
    total = 1
    yield 0, layer
    for k in range(1, max_len + 1):
        kernels.check_bound(layer)
        kernels.check_bound(inv)
        children, child_inv = kernels.expand_left(layer, inv, g2, jmask)
        layer, idx = kernels.unique_matrices(children)
        inv = child_inv[idx]
        if layer.shape[0] == 0:
            return
        total += layer.shape[0]
        if total > cap:
            raise _Truncated(k)
        yield k, layer


def quotient_growth_parabolic(d, J, max_len=10, cap=DEFAULT_CAP, return_elements=False):
    """Growth table of ``W^J`` with lengths measured in ``W``."""
    J = _check_proper(d, J)
    counts, layers, truncated = [], [], False
    try:
        for _, layer in parabolic_layers(d, J, max_len, cap):
            counts.append(layer.shape[0])
            if return_elements:
                layers.append(layer)
    except _Truncated:
        truncated = True
    table = GrowthTable(counts, truncated)
    return (table, layers) if return_elements else table


def filtered_ball(d, roots, max_len, cap=DEFAULT_CAP, return_elements=False):
    """Count elements ``w`` of ``W`` with every ``w(root)`` positive, sphere by sphere.

    The whole ball of ``W`` is walked; ``cap`` bounds that walk.
    """
    vecs = np.array([[int(x) for x in r] for r in roots], dtype=np.int64).reshape(-1, d.rank)
    counts, layers, truncated = [], [], False
    try:
        for _, layer in coxeter_layers(d, max_len, cap):
            mask = kernels.images_positive(layer, vecs)
            counts.append(int(mask.sum()))
            if return_elements:
                layers.append(layer[mask])
    except _Truncated:
        truncated = True
    table = GrowthTable(counts, truncated)
    return (table, layers) if return_elements else table


def growth_rate_lower_bound(t, k_min=1, digits=30):
    """``max_{k_min <= k <= k_max} gamma(k)^(1/k)`` and the attaining ``k``.

    A finite table cannot reach the limsup; this is the best lower-bound
    proxy the data supports.
    """
    if t.k_max < 1:
        raise GrowthError("table is empty past length 0")
    k_min = max(1, k_min)
    if k_min > t.k_max:
        raise GrowthError("k_min exceeds the table length")
    best, best_k = None, None
    cum = t.cumulative
    with localcontext() as ctx:
        ctx.prec = digits + 10
        for k in range(k_min, t.k_max + 1):
            val = (Decimal(cum[k]).ln() / k).exp()
            if best is None or val > best:
                best, best_k = val, k
        ctx.prec = digits
        best = +best
    return best, best_k


def exponential_witness(t, lam):
    """True iff ``gamma(k) >= lam**k`` for every ``k`` in the table."""
    lam = Fraction(lam)
    if lam <= 1:
        raise GrowthError("lambda must exceed 1")
    p, q = lam.numerator, lam.denominator
    return all(g * q**k >= p**k for k, g in enumerate(t.cumulative))


def series_coefficients(num, den, n_terms):
    """First ``n_terms`` power-series coefficients of ``num/den`` (coefficient lists, low first)."""
    num = [Fraction(c) for c in num]
    den = [Fraction(c) for c in den]
    if not den or den[0] == 0:
        raise GrowthError("denominator must have a nonzero constant term")
    out = []
    for k in range(n_terms):
        acc = num[k] if k < len(num) else Fraction(0)
        for i in range(1, min(k, len(den) - 1) + 1):
            acc -= den[i] * out[k - i]
        out.append(acc / den[0])
    return out


def series_mismatch(t, num, den):
    """First ``k`` where ``num/den`` disagrees with cumulative ``gamma(k)``, else None."""
    coeffs = series_coefficients(num, den, t.k_max + 1)
    for k, (c, g) in enumerate(zip(coeffs, t.cumulative)):
        if c != g:
            return k
    return None


def series_check(t, num, den):
    return series_mismatch(t, num, den) is None


def poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def poincare_polynomial_finite(d, cap=DEFAULT_CAP):
    """Length generating polynomial of a finite ``W`` (coefficients, low degree first)."""
    for comp in connected_components(d):
        if classify(d, comp) is not DiagramClass.FINITE:
            raise DiagramError(f"component {d.names(comp)} is not of finite type")
    counts = []
    try:
        for _, layer in coxeter_layers(d, 10**9, cap):
            counts.append(layer.shape[0])
    except _Truncated:
        raise GrowthError("not finite within cap") from None
    return counts
