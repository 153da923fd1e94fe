"""Universal Coxeter subgroup W(3) inside W and the exponential-growth witness for W^J.

The construction picks an infinite component ``Z`` of ``J``, an affine
subdiagram ``Y`` of ``Z`` with null root ``delta``, a node ``p`` outside
``J`` and a shortest path ``p = s_0, ..., s_r`` into ``Y``, then sets::

    beta_1 = s_{r-1} ... s_1 (alpha_p)      (= alpha_{s_0} + ... + alpha_{s_{r-1}})
    beta_2 = alpha_{s_r} + delta
    beta_3 = -alpha_{s_r} + 3 delta

Pairwise pairings are at most -1 (doubled: -2), so the three reflections
generate a free product of three groups of order two. Every choice is
smallest-index-first and recorded on the :class:`W3Embedding`.
"""
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from itertools import combinations

from coxgrowth import exact
from coxgrowth.diagram import (
    Diagram, DiagramClass, DiagramError, INF, classify, connected_components,
    find_affine_subdiagram, is_connected, null_root, shortest_path,
)
from coxgrowth.elements import (
    Element, distinct_cosets, identity, is_reflection, length, min_coset_rep,
    multiply, reflection_from_root, root_from_reflection,
)
from coxgrowth.growth import quotient_growth_parabolic
from coxgrowth.rootspace import (
    is_root, pairing2, reflect_simple, simple_root,
)

DEFAULT_FREE_DEPTH = 10


class EmbeddingError(ValueError):
    pass


class TrivialCaseError(EmbeddingError):
    """``W_J`` is finite: the quotient growth claim needs no embedding."""


class NotIndefiniteError(EmbeddingError):
    pass


def verify_dyer_criterion(d, roots):
    """Pairwise doubled pairings lie in {0, -1} or at most -2.

    These are the half-integral values of the admissible set
    ``{-cos(pi/n)} U (-inf, -1]``.
    """
    roots = [tuple(int(x) for x in r) for r in roots]
    for r in roots:
        if not any(r) or any(x < 0 for x in r) or not is_root(d, r):
            raise EmbeddingError(f"{r} is not a positive root")
    return dyer_violation(d, roots) is None


def dyer_violation(d, roots):
    """First pair ``(i, j, value)`` breaking the criterion, or None."""
    for i, j in combinations(range(len(roots)), 2):
        v = pairing2(d, roots[i], roots[j])
        if not (v in (0, -1) or v <= -2):
            return i, j, v
    return None


@dataclass
class W3Embedding:
    diagram: Diagram
    beta: tuple
    refl: tuple
    M: int
    p: int = None
    J: tuple = ()
    Z: tuple = None
    Y: tuple = None
    path: tuple = None
    delta: tuple = None
    lengths: tuple = ()
    free_checked_to: int = 0

    def to_json(self):
        d = self.diagram
        names = lambda idx: None if idx is None else d.names(idx)
        return {
            "Z": names(self.Z),
            "Y": names(self.Y),
            "p": None if self.p is None else d.nodes[self.p],
            "path": names(self.path),
            "J": names(self.J),
            "delta": None if self.delta is None else list(self.delta),
            "beta": [list(b) for b in self.beta],
            "reflection_lengths": list(self.lengths),
            "M": self.M,
            "pairings2": {f"{i + 1}{j + 1}": pairing2(d, self.beta[i], self.beta[j])
                          for i, j in combinations(range(3), 2)},
            "free_checked_to": self.free_checked_to,
        }


def _finish(d, beta, **kw):
    refl = tuple(reflection_from_root(d, b) for b in beta)
    lengths = tuple(length(d, t) for t in refl)
    emb = W3Embedding(diagram=d, beta=tuple(beta), refl=refl, M=max(lengths), lengths=lengths, **kw)
    _check_invariants(emb)
    return emb


def _check_invariants(emb):
    d, beta = emb.diagram, emb.beta
    for b in beta:
        if any(x < 0 for x in b) or not is_root(d, b):
            raise EmbeddingError(f"{b} is not a positive root")
    for i, j in combinations(range(3), 2):
        if pairing2(d, beta[i], beta[j]) > -2:
            raise EmbeddingError(f"pairing of beta_{i + 1}, beta_{j + 1} exceeds -1")
    if exact.rank([list(b) for b in beta]) != 3:
        raise EmbeddingError("the three roots are linearly dependent")
    if not verify_dyer_criterion(d, beta):
        raise EmbeddingError("Dyer criterion fails for the constructed roots")


def construct_w3_embedding(d, J):
    """Build the W(3) reflection subgroup adapted to the parabolic ``W_J``."""
    if not is_connected(d):
        raise DiagramError("diagram must be connected")
    if classify(d) is not DiagramClass.INDEFINITE:
        raise NotIndefiniteError("diagram is not indefinite (finite or affine)")
    J = d.indices(J)
    if len(J) >= d.rank:
        raise EmbeddingError("J must be a proper subset of the generators")
    Z = next((c for c in connected_components(d, J)
              if classify(d, c) is not DiagramClass.FINITE), None)
    if Z is None:
        raise TrivialCaseError("W_J is finite: trivial case, use quotient_growth_parabolic directly")
    Y = find_affine_subdiagram(d, Z)
    assert Y is not None
    p = min(set(range(d.rank)) - set(J))
    path = shortest_path(d, p, Y)
    delta = null_root(d, Y)
    r = len(path) - 1
    sr = path[-1]

    beta1 = simple_root(d, p)
    for s in path[1:r]:
        beta1 = reflect_simple(d, s, beta1)
    if all(d.label(a, b) == 3 for a, b in zip(path, path[1:])):
        assert beta1 == tuple(int(i in path[:r]) for i in range(d.rank))
    alpha_r = simple_root(d, sr)
    beta2 = tuple(a + x for a, x in zip(alpha_r, delta))
    beta3 = tuple(-a + 3 * x for a, x in zip(alpha_r, delta))
    if pairing2(d, beta2, beta3) != -2:
        raise EmbeddingError("pairing of beta_2 and beta_3 is not -1")
    return _finish(d, (beta1, beta2, beta3), p=p, J=J, Z=Z, Y=Y, path=path, delta=delta)


def construct_w3_in_group(d):
    """W(3) inside an indefinite ``W``: take ``J`` to be an affine subdiagram."""
    if not is_connected(d):
        raise DiagramError("diagram must be connected")
    if classify(d) is not DiagramClass.INDEFINITE:
        raise NotIndefiniteError("diagram is not indefinite (finite or affine)")
    Y = find_affine_subdiagram(d)
    return construct_w3_embedding(d, Y)


def universal_diagram(rank=3):
    names = [f"s{i + 1}" for i in range(rank)]
    return Diagram(names, [(a, b, INF) for a, b in combinations(names, 2)])


def abstract_w3():
    """W(3) acting on its own geometric representation, ``beta_i = alpha_i``."""
    d = universal_diagram(3)
    beta = tuple(simple_root(d, i) for i in range(3))
    return _finish(d, beta, p=0)


# ------------------------------------------------------------------ freeness


def alternating_words(k, letters=3, avoid_last=None):
    """Words of length exactly ``k`` with no letter repeated consecutively."""
    words = [()]
    for _ in range(k):
        words = [w + (a,) for w in words for a in range(letters) if not w or w[-1] != a]
    if avoid_last is not None:
        words = [w for w in words if not w or w[-1] != avoid_last]
    return words


def _product(emb, word):
    out = identity(emb.diagram)
    for a in word:
        out = Element(out.mat.dot(emb.refl[a].mat))
    return out


def free_product_check(emb, L=DEFAULT_FREE_DEPTH):
    """All alternating words of length ``<= L`` in the three reflections are distinct.

    There are ``3 * 2**L - 2`` such words including the empty one.
    """
    if L < 1:
        raise ValueError("L must be at least 1")
    seen = {identity(emb.diagram)}
    frontier = [((), identity(emb.diagram))]
    for _ in range(L):
        nxt = []
        for word, w in frontier:
            for a in range(3):
                if word and word[-1] == a:
                    continue
                u = Element(w.mat.dot(emb.refl[a].mat))
                if u in seen:
                    return False
                seen.add(u)
                nxt.append((word + (a,), u))
        frontier = nxt
    if len(seen) != 3 * 2**L - 2:
        return False
    emb.free_checked_to = max(emb.free_checked_to, L)
    return True


def free_product_count(emb, L):
    """Number of distinct elements among alternating words of length ``<= L``."""
    seen = set()
    for j in range(L + 1):
        for w in alternating_words(j):
            seen.add(_product(emb, w))
    return len(seen)


def infinite_order_check(emb, L):
    """``(s_i s_j)**m`` is never the identity for ``1 <= m <= L``."""
    for i, j in combinations(range(3), 2):
        prod = multiply(emb.refl[i], emb.refl[j])
        acc = prod
        for _ in range(L):
            if acc.is_identity():
                return False
            acc = multiply(acc, prod)
    return True


# ------------------------------------------------------------------ orbit of s_1


@dataclass
class OrbitReflection:
    word: tuple
    t: Element
    root: tuple
    bound: int

    @property
    def level(self):
        return len(self.word)


def orbit_reflections(emb, k):
    """Conjugates ``sigma s_1 sigma^{-1}`` for ``sigma`` of W(3)-length ``<= k``.

    ``sigma`` runs over alternating words that do not end in the first
    generator: ``2**j`` of them at length ``j``.
    """
    if emb.free_checked_to < k + 1 and not free_product_check(emb, k + 1):
        raise EmbeddingError("free product check failed; refusing to enumerate the orbit")
    out = []
    seen_t, seen_root = set(), set()
    for j in range(k + 1):
        words = alternating_words(j, avoid_last=0)
        assert len(words) == 2**j
        for word in words:
            sigma = _product(emb, word)
            sigma_inv = _product(emb, tuple(reversed(word)))
            t = Element(sigma.mat.dot(emb.refl[0].mat).dot(sigma_inv.mat))
            root = sigma.apply(emb.beta[0])
            if t in seen_t or root in seen_root:
                raise EmbeddingError(f"orbit collision at word {word}")
            seen_t.add(t)
            seen_root.add(root)
            out.append(OrbitReflection(word, t, root, 2 * j + 1))
    return out


def beta_coefficients(emb, root):
    """Exact ``(c_1, c_2, c_3)`` with ``root = sum c_i beta_i``."""
    cols = [[emb.beta[i][q] for i in range(3)] for q in range(emb.diagram.rank)]
    try:
        return tuple(exact.solve(cols, list(root)))
    except ValueError as exc:
        raise EmbeddingError(f"root {root} not in the span of the betas: {exc}") from None


def check_c1_positive(emb, k):
    """Every orbit root has nonnegative integer beta-coefficients with ``c_1 > 0``."""
    for o in orbit_reflections(emb, k):
        c = beta_coefficients(emb, o.root)
        if any(x.denominator != 1 or x < 0 for x in c) or c[0] <= 0:
            return False
    return True


# ------------------------------------------------------------------ reports


def two_root(n, digits=30):
    """``2**(1/n)`` to ``digits`` significant digits."""
    with localcontext() as ctx:
        ctx.prec = digits
        return +(Decimal(2) ** (Decimal(1) / n))


@dataclass
class MainPropRow:
    k: int
    count: int
    required: int
    length_bound: int
    max_length: int
    all_reflections: bool
    lengths_ok: bool
    coefficient_test: bool
    coset_test: bool
    tests_agree: bool

    @property
    def ok(self):
        return (self.count >= self.required and self.all_reflections and self.lengths_ok
                and self.coefficient_test and self.coset_test and self.tests_agree)


@dataclass
class MainPropReport:
    embedding: W3Embedding
    rows: list = field(default_factory=list)
    failures: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.failures and all(r.ok for r in self.rows)

    def to_json(self):
        return {
            "embedding": self.embedding.to_json(),
            "rows": [dict(vars(r), ok=r.ok) for r in self.rows],
            "failures": list(self.failures),
            "ok": self.ok,
        }


def _embedding_for(d, J):
    J = d.indices(J)
    if not J:
        return construct_w3_in_group(d)
    return construct_w3_embedding(d, J)


def _classify_orbit(d, emb, J, orbit):
    """Per orbit reflection: (length, reflection?, coefficient test, coset test)."""
    jset = set(J)
    out = []
    for o in orbit:
        ell = length(d, o.t)
        refl_ok = is_reflection(d, o.t) and root_from_reflection(d, o.t) == o.root
        if jset:
            outside_by_coeff = o.root[emb.p] > 0 if emb.p not in jset else \
                any(c and q not in jset for q, c in enumerate(o.root))
            outside_by_coset = not min_coset_rep(d, o.t, J, check=False).is_identity()
        else:
            outside_by_coeff = outside_by_coset = True
        out.append((ell, refl_ok, outside_by_coeff, outside_by_coset))
    return out


def verify_mainprop(d, J, k_max, emb=None):
    """At least ``2**k`` reflections outside ``W_J`` of length ``<= M(2k+1)``, per ``k``."""
    J = d.indices(J)
    if emb is None:
        emb = _embedding_for(d, J)
    report = MainPropReport(emb)
    orbit = orbit_reflections(emb, k_max)
    facts = _classify_orbit(d, emb, J, orbit)
    for o, (ell, refl_ok, by_coeff, by_coset) in zip(orbit, facts):
        if ell > emb.M * o.bound:
            report.failures.append(f"length {ell} of word {o.word} exceeds M*{o.bound}")
        if by_coeff != by_coset:
            report.failures.append(f"membership tests disagree on word {o.word}")
        if not refl_ok:
            report.failures.append(f"word {o.word} did not give a reflection")
    for k in range(k_max + 1):
        idx = [i for i, o in enumerate(orbit) if o.level <= k]
        bound = emb.M * (2 * k + 1)
        lens = [facts[i][0] for i in idx]
        report.rows.append(MainPropRow(
            k=k,
            count=sum(1 for i in idx if facts[i][2] and facts[i][3]),
            required=2**k,
            length_bound=bound,
            max_length=max(lens),
            all_reflections=all(facts[i][1] for i in idx),
            lengths_ok=all(x <= bound for x in lens),
            coefficient_test=all(facts[i][2] for i in idx),
            coset_test=all(facts[i][3] for i in idx),
            tests_agree=all(facts[i][2] == facts[i][3] for i in idx),
        ))
    return report


@dataclass
class QuotientRow:
    k: int
    distinct_reps: int
    required: int
    length_bound: int
    cosets_distinct: bool
    rep_lengths_ok: bool
    bfs_depth: int = None
    bfs_gamma: int = None
    bfs_ok: bool = None
    bfs_direct: bool = False

    @property
    def ok(self):
        return (self.distinct_reps >= self.required and self.cosets_distinct
                and self.rep_lengths_ok and self.bfs_ok is not False)


@dataclass
class QuotientReport:
    embedding: W3Embedding
    rate_bound: Decimal
    rows: list = field(default_factory=list)
    failures: list = field(default_factory=list)
    bfs_table: object = None
    reps_found_in_bfs: int = 0
    reps_checkable: int = 0

    @property
    def ok(self):
        return not self.failures and all(r.ok for r in self.rows)

    def to_json(self):
        return {
            "embedding": self.embedding.to_json(),
            "rate_bound": str(self.rate_bound),
            "rows": [dict(vars(r), ok=r.ok) for r in self.rows],
            "bfs_table": None if self.bfs_table is None else self.bfs_table.to_json(),
            "reps_found_in_bfs": self.reps_found_in_bfs,
            "reps_checkable": self.reps_checkable,
            "failures": list(self.failures),
            "ok": self.ok,
        }


def verify_quotient_exponential(d, J, k_max, bfs_max_len=12, cap=10**6, emb=None):
    """Distinct coset representatives ``[t]`` certify ``gamma_{W^J}(M(2k+1)) >= 2**k``.

    The BFS table of ``W^J`` is an independent check: at the depth it
    reaches (``min(M(2k+1), bfs_max_len)``; monotone in the length) its
    count must already be at least ``2**k``, and every representative short
    enough to be inside the table must show up in the matching sphere.
    """
    J = d.indices(J)
    mp = verify_mainprop(d, J, k_max, emb=emb)
    emb = mp.embedding
    report = QuotientReport(emb, two_root(3 * emb.M))
    if not mp.ok:
        report.failures.append("reflection count check failed")
        report.failures.extend(mp.failures)
    orbit = orbit_reflections(emb, k_max)
    reps = [min_coset_rep(d, o.t, J) for o in orbit]
    rep_lengths = [length(d, r) for r in reps]
    t_lengths = [length(d, o.t) for o in orbit]

    table = None
    if bfs_max_len is not None and bfs_max_len >= 0:
        table, layers = quotient_growth_parabolic(d, J, bfs_max_len, cap, return_elements=True)
        report.bfs_table = table
        sphere_keys = [{tuple(int(x) for x in m.flat) for m in layer} for layer in layers]
        for r, ell in zip(reps, rep_lengths):
            if ell <= table.k_max:
                report.reps_checkable += 1
                if r.key in sphere_keys[ell]:
                    report.reps_found_in_bfs += 1
                else:
                    report.failures.append(f"representative of length {ell} missing from BFS")

    for k in range(k_max + 1):
        idx = [i for i, o in enumerate(orbit) if o.level <= k]
        ts = [orbit[i].t for i in idx]
        if J:
            ok, clash = distinct_cosets(d, ts, J)
        else:
            ok, clash = len(set(ts)) == len(ts), None
        if not ok:
            report.failures.append(f"k={k}: reflections {clash} share a coset")
        bound = emb.M * (2 * k + 1)
        row = QuotientRow(
            k=k,
            distinct_reps=len({reps[i] for i in idx}),
            required=2**k,
            length_bound=bound,
            cosets_distinct=ok,
            rep_lengths_ok=all(rep_lengths[i] <= t_lengths[i] <= bound for i in idx),
        )
        if table is not None:
            depth = min(bound, table.k_max)
            row.bfs_depth = depth
            row.bfs_gamma = table.gamma(depth)
            row.bfs_direct = depth == bound
            if row.bfs_gamma >= 2**k:
                row.bfs_ok = True
            elif row.bfs_direct:
                row.bfs_ok = False
                report.failures.append(f"k={k}: BFS gamma({depth}) = {row.bfs_gamma} < 2^{k}")
        report.rows.append(row)
    return report


def certificate(d, J, k_max, L=DEFAULT_FREE_DEPTH):
    """Embedding certificate: construction, freeness depth, per-k counts and distinctness."""
    J = d.indices(J)
    emb = _embedding_for(d, J)
    free = free_product_check(emb, L)
    qr = verify_quotient_exponential(d, J, k_max, bfs_max_len=None, emb=emb)
    out = emb.to_json()
    out.update({
        "free_product_depth": L,
        "free_product_ok": free,
        "per_k": [{"k": r.k, "count": r.distinct_reps, "required": r.required,
                   "length_bound": r.length_bound, "cosets_distinct": r.cosets_distinct}
                  for r in qr.rows],
        "rate_bound": str(qr.rate_bound),
        "ok": free and qr.ok,
    })
    return out
