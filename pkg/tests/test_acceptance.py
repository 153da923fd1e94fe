"""Acceptance criteria, one test each.

Every test records a PASS/FAIL line with its runtime; the lines are
printed in the pytest terminal summary (and directly when this file is run
as a script).
"""
import math
import time

from coxgrowth.diagram import INF, Diagram
from coxgrowth.elements import length, reflection_from_root
from coxgrowth.embed import (
    abstract_w3, check_c1_positive, construct_w3_embedding, free_product_check,
    free_product_count, verify_dyer_criterion, verify_mainprop, verify_quotient_exponential,
)
from coxgrowth.growth import (
    enumerate_ball, growth_rate_lower_bound, poincare_polynomial_finite,
    quotient_growth_parabolic, series_check,
)
from coxgrowth.reflquot import (
    extend_subgroup, gamma_search, minimal_coset_reps_refl, parabolic_subgroup,
    quotient_refl_exponential_report,
)
from coxgrowth.rootspace import pairing2, positive_roots_by_depth, root_depth
from conftest import star

RESULTS = {}


def _line(num, ok, elapsed, limit, detail):
    status = "PASS" if ok else "FAIL"
    slow = "" if elapsed <= limit else f" (over {limit}s budget)"
    return f"[{status}] criterion {num}: {detail} [{elapsed:.2f}s]{slow}"


class criterion:
    """Context manager that times a block and records its outcome."""

    def __init__(self, num, limit, detail):
        self.num, self.limit, self.detail = num, limit, detail

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.t0
        ok = exc_type is None and elapsed <= self.limit
        RESULTS[self.num] = _line(self.num, ok, elapsed, self.limit, self.detail)
        if exc_type is None and elapsed > self.limit:
            raise AssertionError(f"criterion {self.num} took {elapsed:.1f}s > {self.limit}s")
        return False


K15 = star(5)
D4AFF = (0, 1, 2, 3, 4)


def W3():
    return Diagram(["s1", "s2", "s3"], [("s1", "s2", INF), ("s1", "s3", INF), ("s2", "s3", INF)])


def test_criterion_1_universal_series():
    with criterion(1, 5, "W(3) counts 3*2^(k-1), cumulative 3*2^k-2, k <= 12, series (1+q)/(1-2q)"):
        t = enumerate_ball(W3(), max_len=12)
        assert t.counts == [1] + [3 * 2**(k - 1) for k in range(1, 13)]
        assert t.cumulative == [3 * 2**k - 2 for k in range(13)]
        # (1+q)/(1-2q) times 1/(1-q)
        assert series_check(t, [1, 1], [1, -3, 2])


def test_criterion_2_finite_orders():
    with criterion(2, 10, "|A2| = 6, |A3| = 24, |D4| = 192"):
        a2 = Diagram(["a", "b"], [("a", "b", 3)])
        a3 = Diagram(["a", "b", "c"], [("a", "b", 3), ("b", "c", 3)])
        d4 = star(3)
        assert sum(poincare_polynomial_finite(a2)) == math.factorial(3) == 6
        assert sum(poincare_polynomial_finite(a3)) == math.factorial(4) == 24
        assert sum(poincare_polynomial_finite(d4)) == 2**3 * math.factorial(4) == 192


def test_criterion_3_affine_polynomial():
    with criterion(3, 30, "affine A2: quadratic cumulative growth to k = 40, rate estimate <= 1.25"):
        d = Diagram(["a", "b", "c"], [("a", "b", 3), ("b", "c", 3), ("c", "a", 3)])
        t = enumerate_ball(d, max_len=40)
        g = t.cumulative
        second = [g[k + 2] - 2 * g[k + 1] + g[k] for k in range(3, 39)]
        assert len(set(second)) == 1
        # a quadratic through k = 3, 4, 5 reproduces every later value exactly
        a, b, c = g[3], g[4], g[5]
        quad = [a + (k - 3) * (b - a) + (k - 3) * (k - 4) // 2 * (c - 2 * b + a) for k in range(3, 41)]
        assert quad == g[3:]
        rate, k = growth_rate_lower_bound(t, k_min=t.k_max - 5)
        assert rate <= 1.25, (rate, k)


def test_criterion_4_construction():
    with criterion(4, 20, "K(1,5)/affine D4: pairings -3, -5, -2, Dyer, free to L = 10 "
                          "(766 distinct at L = 8, 3070 at L = 10)"):
        emb = construct_w3_embedding(K15, D4AFF)
        b = emb.beta
        assert pairing2(K15, b[0], b[1]) == -3
        assert pairing2(K15, b[0], b[2]) == -5
        assert pairing2(K15, b[1], b[2]) == -2
        assert verify_dyer_criterion(K15, b)
        assert free_product_check(emb, 10)
        # all 3*2^L - 2 alternating words are distinct
        assert free_product_count(emb, 8) == 3 * 2**8 - 2 == 766
        assert free_product_count(emb, 10) == 3 * 2**10 - 2 == 3070


def test_criterion_5_mainprop():
    with criterion(5, 60, ">= 2^k reflections outside W_J with length <= M(2k+1), k = 0..5"):
        rep = verify_mainprop(K15, D4AFF, 5)
        assert rep.ok, rep.failures
        for r in rep.rows:
            assert r.count >= 2**r.k and r.max_length <= rep.embedding.M * (2 * r.k + 1)
            assert r.coefficient_test and r.coset_test and r.tests_agree


def test_criterion_6_quotient_exponential():
    with criterion(6, 120, "2^k distinct coset reps of length <= M(2k+1), k = 0..5, BFS cross-check"):
        rep = verify_quotient_exponential(K15, D4AFF, 5, bfs_max_len=20)
        assert rep.ok, rep.failures
        for r in rep.rows:
            assert r.distinct_reps >= 2**r.k and r.cosets_distinct and r.rep_lengths_ok
            # gamma is monotone, so gamma(min(M(2k+1), depth)) >= 2^k implies the bound
            assert r.bfs_gamma >= 2**r.k
            if r.bfs_direct:
                assert rep.bfs_table.gamma(r.length_bound) >= 2**r.k
        assert rep.reps_found_in_bfs == rep.reps_checkable > 0
        assert rep.rate_bound > 1


def test_criterion_7_c1_positive():
    with criterion(7, 10, "orbit roots have c1 >= 1, k <= 4, abstract W(3) and K(1,5)"):
        assert check_c1_positive(abstract_w3(), 4)
        assert check_c1_positive(construct_w3_embedding(K15, D4AFF), 4)


def test_criterion_8_reflection_subgroup_pipeline():
    with criterion(8, 60, "R = <s_c>: gamma found, Dyer recheck, refl reps = W^J to 8, exponential"):
        R = parabolic_subgroup(K15, ["c"])
        g = gamma_search(K15, R, depth_bound=6)
        assert g.found
        ext = extend_subgroup(K15, R, g.gamma)
        assert verify_dyer_criterion(K15, ext.gen_roots)
        a = minimal_coset_reps_refl(K15, R, 8)
        b = quotient_growth_parabolic(K15, ["c"], 8)
        assert a.counts == b.counts and not a.truncated
        rep = quotient_refl_exponential_report(K15, R, max_len=8)
        assert rep.status == "exponential" and rep.rate_bound > 1 and rep.ok


def test_criterion_9_length_depth(frozen):
    with criterion(9, 20, "l(s_beta) = 2 depth(beta) - 1 for depth <= 5 in A3, affine A2, K(1,5)"):
        diagrams = [
            Diagram(["a", "b", "c"], [("a", "b", 3), ("b", "c", 3)]),
            Diagram(["a", "b", "c"], [("a", "b", 3), ("b", "c", 3), ("c", "a", 3)]),
            K15,
        ]
        checked = 0
        for name, d in zip(["A3", "A2aff", "K15"], diagrams):
            layers = positive_roots_by_depth(d, 5)
            hist = [0] * 10
            for dep, roots in layers.layers.items():
                for beta in roots:
                    assert root_depth(d, beta) == dep
                    ell = length(d, reflection_from_root(d, beta))
                    assert ell == 2 * dep - 1
                    hist[ell] += 1
                    checked += 1
            # brute force: reflections found directly in the ball of radius 9
            want = frozen["reflection_lengths"][name]
            assert hist[: len(want)] == want and sum(hist) == sum(want)
        assert checked == 6 + 15 + 46


def test_zz_summary():
    # runs last within the module; failures already surfaced in their own tests
    missing = [n for n in range(1, 10) if n not in RESULTS]
    assert not missing, f"criteria never recorded: {missing}"


if __name__ == "__main__":
    import inspect
    import json
    import os

    with open(os.path.join(os.path.dirname(os.path.abspath(__file__)), "data", "frozen.json")) as fh:
        frozen_data = json.load(fh)
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            kwargs = {"frozen": frozen_data} if "frozen" in inspect.signature(fn).parameters else {}
            try:
                fn(**kwargs)
            except Exception:
                pass
    for n in sorted(RESULTS):
        print(RESULTS[n])
