"""Quotients of W by reflection subgroups given by canonical generator roots.

A subgroup is described by positive roots ``beta_1..beta_k`` passing the
Dyer criterion, so their reflections are its Coxeter generators. Minimal
coset representatives are the ``w`` with every ``w(beta_i)`` positive.
"""
from dataclasses import dataclass, field
from itertools import combinations

from coxgrowth.diagram import Diagram, DiagramClass, INF, classify, is_connected
from coxgrowth.elements import length, reflection_from_root
from coxgrowth.embed import (
    construct_w3_embedding, construct_w3_in_group, dyer_violation, free_product_check,
    two_root, verify_quotient_exponential,
)
from coxgrowth.growth import (
    DEFAULT_CAP, GrowthTable, enumerate_ball, filtered_ball, growth_rate_lower_bound,
    poincare_polynomial_finite, quotient_growth_parabolic,
)
from coxgrowth.rootspace import (
    height, is_root, orbit_closure, pairing2, positive_roots_by_depth, simple_root,
)

DEFAULT_DEPTH_BOUND = 6
DEFAULT_HEIGHT_CAP = 40
LENGTH_NOTE = ("lengths are measured in W; l(w) = l(sigma) + l(tau) may fail "
               "for reflection subgroups")


class SubgroupError(ValueError):
    pass


@dataclass
class ReflectionSubgroup:
    diagram: Diagram
    gen_roots: tuple
    gram: tuple

    @property
    def rank(self):
        return len(self.gen_roots)

    def coxeter_diagram(self):
        """Abstract Coxeter diagram of the subgroup on its canonical generators.

        Pairing 0 means label 2, -1 label 3, anything at most -2 label inf.
        """
        names = [f"b{i + 1}" for i in range(self.rank)]
        edges = []
        for i, j in combinations(range(self.rank), 2):
            v = self.gram[i][j]
            if v == -1:
                edges.append((names[i], names[j], 3))
            elif v <= -2:
                edges.append((names[i], names[j], INF))
        return Diagram(names, edges)

    @property
    def irreducible(self):
        return is_connected(self.coxeter_diagram())

    def classify(self):
        return classify(self.coxeter_diagram())

    @property
    def is_parabolic(self):
        return all(sum(r) == 1 for r in self.gen_roots)

    def parabolic_nodes(self):
        return tuple(sorted(r.index(1) for r in self.gen_roots))

    def to_json(self):
        return {"gen_roots": [list(r) for r in self.gen_roots],
                "gram2": [list(row) for row in self.gram],
                "irreducible": self.irreducible}


def make_subgroup(d, roots):
    """Validate generator roots against the Dyer criterion."""
    roots = tuple(tuple(int(x) for x in r) for r in roots)
    if not roots:
        raise SubgroupError("a reflection subgroup needs at least one generator root")
    if len(set(roots)) != len(roots):
        raise SubgroupError("generator roots must be pairwise distinct")
    for r in roots:
        if len(r) != d.rank:
            raise SubgroupError(f"root {r} has the wrong length")
        if not any(r) or any(x < 0 for x in r) or not is_root(d, r):
            raise SubgroupError(f"{r} is not a positive root")
    bad = dyer_violation(d, roots)
    if bad is not None:
        i, j, v = bad
        raise SubgroupError(
            f"Dyer criterion fails for roots {roots[i]} and {roots[j]}: doubled pairing {v}")
    gram = tuple(tuple(pairing2(d, a, b) for b in roots) for a in roots)
    return ReflectionSubgroup(d, roots, gram)


def parabolic_subgroup(d, J):
    return make_subgroup(d, [simple_root(d, j) for j in d.indices(J)])


def minimal_coset_reps_refl(d, R, max_len=8, cap=DEFAULT_CAP, return_elements=False):
    """Growth table of the minimal left coset representatives of ``R`` in ``W``."""
    res = filtered_ball(d, R.gen_roots, max_len, cap, return_elements=return_elements)
    table = res[0] if return_elements else res
    table.notes.append(LENGTH_NOTE)
    return res


@dataclass
class GammaResult:
    gamma: tuple
    status: str          # "found", "absent" (proved) or "inconclusive"
    scanned: int = 0
    closure_size: int = 0

    @property
    def found(self):
        return self.status == "found"


def _order_key(r):
    # increasing height; among equal heights, mass on earlier nodes first
    return (sum(r), tuple(-x for x in r))


def gamma_search(d, R, depth_bound=DEFAULT_DEPTH_BOUND, height_cap=DEFAULT_HEIGHT_CAP):
    """Lowest positive root ``gamma`` outside the subgroup's roots pairing ``<= 0`` with every generator.

    At least one pairing must be negative. Any positive root of the subgroup
    pairs positively with itself and is a nonnegative combination of the
    generators, so a hit is automatically outside it; the bounded orbit
    closure is checked as well.
    """
    if not R.irreducible:
        raise SubgroupError("reducible reflection subgroups are not supported")
    layers = positive_roots_by_depth(d, depth_bound)
    closure = orbit_closure(d, R.gen_roots, R.gen_roots, depth_bound)
    closure = {v for v in closure if all(x >= 0 for x in v)}
    cands = sorted((r for r in layers.roots() if height(r) <= height_cap), key=_order_key)
    scanned = 0
    for r in cands:
        scanned += 1
        vals = [pairing2(d, r, b) for b in R.gen_roots]
        if all(v <= 0 for v in vals) and any(vals) and r not in closure:
            return GammaResult(r, "found", scanned, len(closure))
    simple = {simple_root(d, i) for i in range(d.rank)}
    exhaustive = (not layers.truncated and max(layers.layers) < depth_bound
                  and all(height(r) <= height_cap for r in layers.roots()))
    if simple <= set(R.gen_roots) or exhaustive:
        return GammaResult(None, "absent", scanned, len(closure))
    return GammaResult(None, "inconclusive", scanned, len(closure))


def orbit_stays_positive(d, R, gamma, depth=4):
    """Bounded orbit of ``gamma`` under the subgroup: all positive, and bigger than ``{gamma}``."""
    orb = orbit_closure(d, R.gen_roots, [gamma], depth)
    return len(orb) > 1 and all(all(x >= 0 for x in v) for v in orb)


def extend_subgroup(d, R, gamma):
    """Subgroup generated by ``R`` and the reflection in ``gamma``."""
    gamma = tuple(int(x) for x in gamma)
    if gamma in R.gen_roots:
        raise SubgroupError("gamma duplicates a generator root")
    try:
        ext = make_subgroup(d, R.gen_roots + (gamma,))
    except SubgroupError as exc:
        raise AssertionError(f"Dyer recheck failed after extension: {exc}") from None
    if R.irreducible and R.classify() is DiagramClass.INDEFINITE:
        assert ext.irreducible and ext.classify() is DiagramClass.INDEFINITE
    return ext


@dataclass
class ReflQuotientReport:
    status: str                  # "exponential", "trivial" or "unknown"
    route: str = None
    b_table: GrowthTable = None
    rate_estimate: object = None
    rate_estimate_k: int = None
    rate_bound: object = None
    K: int = None
    M: int = None
    gamma: GammaResult = None
    subgroup_class: str = None
    chain: list = field(default_factory=list)
    checks: dict = field(default_factory=dict)
    conclusive: bool = True

    @property
    def ok(self):
        return all(self.checks.values())

    def to_json(self):
        return {
            "status": self.status,
            "route": self.route,
            "subgroup_class": self.subgroup_class,
            "gamma": None if self.gamma is None else {
                "root": None if self.gamma.gamma is None else list(self.gamma.gamma),
                "status": self.gamma.status},
            "K": self.K,
            "M": self.M,
            "rate_estimate": None if self.rate_estimate is None else str(self.rate_estimate),
            "rate_estimate_k": self.rate_estimate_k,
            "rate_bound": None if self.rate_bound is None else str(self.rate_bound),
            "chain": list(self.chain),
            "checks": dict(self.checks),
            "conclusive": self.conclusive,
            "b_table": None if self.b_table is None else self.b_table.to_json(),
        }


def _w_rate_bound(d, L):
    """``2**(1/M)`` from a W(3) subgroup of ``W``: ``gamma_W(M j) >= 3 * 2**j - 2``."""
    emb = construct_w3_in_group(d)
    free = free_product_check(emb, L)
    return emb, free, two_root(emb.M)


def quotient_refl_exponential_report(d, R, max_len=8, k_max=3, depth_bound=DEFAULT_DEPTH_BOUND,
                                     cap=DEFAULT_CAP, free_depth=8):
    """Growth report for ``W / W'`` following the route that fits ``W'``.

    * ``W'`` the whole group: trivial quotient.
    * ``W'`` finite: ``b_m * |W'| >= gamma_W(m)``; rate from a W(3) inside ``W``.
    * ``W'`` parabolic and infinite: the ``W^J`` certificate.
    * ``W'`` affine otherwise: rate from ``W``, subgroup growth polynomial.
    * ``W'`` indefinite: extend by ``s_gamma`` and run the parabolic
      certificate inside the extension, scaled by ``K``.
    """
    b = minimal_coset_reps_refl(d, R, max_len, cap)
    report = ReflQuotientReport("unknown", b_table=b)
    if b.k_max >= 1:
        report.rate_estimate, report.rate_estimate_k = growth_rate_lower_bound(b, max(1, b.k_max // 2))
    simple = {simple_root(d, i) for i in range(d.rank)}
    if simple <= set(R.gen_roots):
        report.status, report.route = "trivial", "whole-group"
        report.checks["b_identically_one"] = b.cumulative == [1] * len(b.cumulative)
        report.chain.append("W' = W: every coset is W itself, b_m = 1; not exponential")
        return report
    report.gamma = gamma_search(d, R, depth_bound)
    if not report.gamma.found:
        report.conclusive = False
        report.chain.append(f"gamma search {report.gamma.status} up to depth {depth_bound}")
        return report
    report.checks["orbit_positive"] = orbit_stays_positive(d, R, report.gamma.gamma)
    cls = R.classify()
    report.subgroup_class = str(cls)

    if cls is DiagramClass.FINITE:
        order = sum(poincare_polynomial_finite(R.coxeter_diagram()))
        gw = enumerate_ball(d, max_len=b.k_max, cap=cap)
        emb, free, rate = _w_rate_bound(d, free_depth)
        report.route, report.M, report.rate_bound = "finite-subgroup", emb.M, rate
        report.checks["free_product"] = free
        report.checks["b_times_order_covers_ball"] = all(
            bb * order >= g for bb, g in zip(b.cumulative, gw.cumulative))
        report.chain += [
            f"|W'| = {order}; b_m >= gamma_W(m) / {order} on every computed m",
            f"gamma_W(M j) >= 3*2^j - 2 with M = {emb.M}, so limsup b_m^(1/m) >= 2^(1/{emb.M})",
        ]
    elif R.is_parabolic:
        J = R.parabolic_nodes()
        qr = verify_quotient_exponential(d, J, k_max, bfs_max_len=max_len, cap=cap)
        report.route, report.M, report.rate_bound = "parabolic", qr.embedding.M, qr.rate_bound
        report.checks["quotient_certificate"] = qr.ok
        common = min(b.k_max, qr.bfs_table.k_max) + 1
        report.checks["matches_parabolic_bfs"] = (
            qr.bfs_table.counts[:common] == b.counts[:common])
        m = qr.embedding.M
        report.chain.append(
            f"gamma_(W^J)(M(2k+1)) >= 2^k with M = {m}, so omega >= 2^(1/(3*{m}))")
    elif cls is DiagramClass.AFFINE:
        emb, free, rate = _w_rate_bound(d, free_depth)
        report.route, report.M, report.rate_bound = "affine-subgroup", emb.M, rate
        report.checks["free_product"] = free
        report.chain.append(
            f"W' has polynomial growth and omega(W) >= 2^(1/{emb.M}); quotient keeps the rate")
    else:
        _embedded_route(d, R, report, b, k_max, cap, free_depth)

    report.status = "exponential" if report.ok and report.rate_bound > 1 else "unknown"
    return report


def _embedded_route(d, R, report, b, k_max, cap, free_depth):
    ext = extend_subgroup(d, R, report.gamma.gamma)
    xd = ext.coxeter_diagram()
    sub = tuple(range(R.rank))
    K = max(length(d, reflection_from_root(d, r)) for r in ext.gen_roots)
    emb = construct_w3_embedding(xd, sub)
    report.checks["free_product"] = free_product_check(emb, free_depth)
    qr = verify_quotient_exponential(xd, sub, k_max, bfs_max_len=None)
    report.checks["inner_certificate"] = qr.ok
    a_len = b.k_max // K
    a = quotient_growth_parabolic(xd, sub, a_len, cap)
    report.checks["b_Km_ge_a_m"] = all(
        b.gamma(K * m) >= a.gamma(m) for m in range(a.k_max + 1))
    inner = qr.rate_bound
    report.route, report.K, report.M = "embedded-extension", K, emb.M
    report.rate_bound = two_root(3 * emb.M * K)
    report.chain += [
        f"extension by s_gamma has Coxeter generators {[list(r) for r in ext.gen_roots]}",
        f"a_m: reps of W' in the extension, verified b_(K m) >= a_m for m <= {a.k_max} (K = {K})",
        f"limsup a_m^(1/m) >= 2^(1/(3*{emb.M})) = {inner}",
        f"limsup b_m^(1/m) >= (limsup a_m^(1/m))^(1/K) >= {report.rate_bound} > 1",
    ]
