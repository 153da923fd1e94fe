import pytest

from coxgrowth.diagram import DiagramClass
from coxgrowth.embed import two_root
from coxgrowth.growth import quotient_growth_parabolic
from coxgrowth.reflquot import (
    SubgroupError, extend_subgroup, gamma_search, make_subgroup, minimal_coset_reps_refl,
    orbit_stays_positive, parabolic_subgroup, quotient_refl_exponential_report,
)
from coxgrowth.rootspace import pairing2

W3_BETAS = [(0, 0, 0, 0, 0, 1), (3, 1, 1, 1, 1, 0), (5, 3, 3, 3, 3, 0)]


def test_make_subgroup_validation(K15):
    with pytest.raises(SubgroupError):
        make_subgroup(K15, [])
    with pytest.raises(SubgroupError):
        make_subgroup(K15, [(2, 1, 1, 1, 1, 0)])          # null root, not real
    with pytest.raises(SubgroupError):
        make_subgroup(K15, [(1, 0, 0, 0, 0, 0), (1, 1, 0, 0, 0, 0)])   # pairing +1
    with pytest.raises(SubgroupError):
        make_subgroup(K15, [(1, 0, 0, 0, 0, 0)] * 2)
    R = make_subgroup(K15, W3_BETAS)
    assert R.classify() is DiagramClass.INDEFINITE and R.irreducible and not R.is_parabolic


def test_parabolic_subgroup_diagram(K15):
    R = parabolic_subgroup(K15, range(5))
    assert R.is_parabolic and R.parabolic_nodes() == (0, 1, 2, 3, 4)
    assert R.classify() is DiagramClass.AFFINE


def test_gamma_search_center(K15):
    R = parabolic_subgroup(K15, ["c"])
    g = gamma_search(K15, R, depth_bound=6)
    assert g.found and g.gamma == (0, 1, 0, 0, 0, 0)
    assert all(pairing2(K15, g.gamma, b) <= 0 for b in R.gen_roots)
    assert orbit_stays_positive(K15, R, g.gamma)
    ext = extend_subgroup(K15, R, g.gamma)
    assert ext.rank == 2 and ext.classify() is DiagramClass.FINITE
    with pytest.raises(SubgroupError):
        extend_subgroup(K15, R, (1, 0, 0, 0, 0, 0))


def test_gamma_search_reducible_rejected(K15):
    R = make_subgroup(K15, [(0, 1, 0, 0, 0, 0), (0, 0, 1, 0, 0, 0)])
    with pytest.raises(SubgroupError):
        gamma_search(K15, R)


def test_gamma_absent_for_whole_group(A2):
    R = parabolic_subgroup(A2, [0, 1])
    assert gamma_search(A2, R).status == "absent"


def test_refl_reps_match_parabolic(K15):
    for J in ([0], [1], range(5)):
        R = parabolic_subgroup(K15, J)
        assert minimal_coset_reps_refl(K15, R, 7).counts == quotient_growth_parabolic(K15, J, 7).counts


def test_report_routes(K15):
    rep = quotient_refl_exponential_report(K15, parabolic_subgroup(K15, ["c"]), max_len=7)
    assert rep.status == "exponential" and rep.route == "finite-subgroup" and rep.ok
    assert rep.rate_bound == two_root(29)

    rep = quotient_refl_exponential_report(K15, parabolic_subgroup(K15, range(5)), max_len=7)
    assert rep.status == "exponential" and rep.route == "parabolic" and rep.rate_bound > 1

    R = make_subgroup(K15, [(1, 0, 0, 0, 0, 0), (1, 1, 1, 1, 1, 0)])
    assert R.classify() is DiagramClass.AFFINE
    rep = quotient_refl_exponential_report(K15, R, max_len=6)
    assert rep.status == "exponential" and rep.route == "affine-subgroup"

    rep = quotient_refl_exponential_report(K15, parabolic_subgroup(K15, range(6)), max_len=5)
    assert rep.status == "trivial" and rep.b_table.cumulative == [1] * 6


def test_report_embedded_extension(K15):
    R = make_subgroup(K15, W3_BETAS)
    rep = quotient_refl_exponential_report(K15, R, max_len=6, k_max=2)
    assert rep.gamma.found and rep.gamma.gamma == (1, 1, 1, 0, 0, 0)
    assert rep.route == "embedded-extension" and rep.status == "exponential"
    assert rep.K == 29 and rep.rate_bound > 1 and rep.ok


def test_report_inconclusive(K15):
    R = make_subgroup(K15, W3_BETAS)
    rep = quotient_refl_exponential_report(K15, R, max_len=4, depth_bound=1)
    assert rep.status == "unknown" and rep.gamma.status == "inconclusive"
    assert rep.to_json()["gamma"]["status"] == "inconclusive"
