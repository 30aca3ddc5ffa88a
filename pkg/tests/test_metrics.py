from fractions import Fraction as Q
from itertools import product

import pytest
from hypothesis import given, strategies as st

import oracles
from infodom.errors import BadSource, DeficientStructure, InternalInconsistency
from infodom.infosys import powerset_system, saturate
from infodom.metrics import (DeficiencyWarning, RelaxedDistance, ball, build_structure,
                             center_excluding_ball, distance, epsilon_tolerance, i_set, j_set,
                             least_closed_tolerance, normalize_mode, not_sim,
                             partial_metric_report, topology_check, totals_metric,
                             validate_muinfo, validate_partial_metric)
from infodom.posets import all_domains
from infodom.valuations import WeightAssignment, dirac_bottom

F = frozenset
DOMAINS4 = all_domains(4)


def pow_structure(mode="none"):
    D = powerset_system([1, 2]).domain()
    w = WeightAssignment(D, {F(): 0, F([1]): Q(1, 2), F([2]): Q(1, 4), F([1, 2]): Q(1, 4)})
    return build_structure(D, w, mode)


def flat_structure(mode="I"):
    D = saturate(["a", "b", "n"], "n", [({"a", "b"}, {"n"})]).domain()
    return build_structure(D, WeightAssignment(D, {F("a"): Q(1, 2), F("b"): Q(1, 2)}), mode)


def random_structure(D, seed, mode):
    w = WeightAssignment(D, oracles.random_weights(oracles.rng(seed), D, D.bottom))
    return w, build_structure(D, w, mode)


# construction ---------------------------------------------------------------------

def test_mode_names():
    assert normalize_mode("J'") == normalize_mode("Jprime") == "J"
    with pytest.raises(ValueError):
        normalize_mode("K")


def test_bad_source():
    D = powerset_system([1]).domain()
    with pytest.raises(BadSource):
        build_structure(D, {F(): 1}, "none")


def test_relaxed_distance_order():
    with pytest.raises(InternalInconsistency):
        RelaxedDistance(Q(1), Q(0))
    assert RelaxedDistance(Q(0), Q(1)).contains(RelaxedDistance(Q(1, 4), Q(1, 2)))


@pytest.mark.parametrize("D", DOMAINS4, ids=lambda D: f"n{len(D)}")
def test_i_and_j_modes_coincide_on_finite_domains(D):
    for x in D:
        assert j_set(D, x) == i_set(D, x)
    _, sI = random_structure(D, 1, "I")
    _, sJ = random_structure(D, 1, "J")
    assert sI.neg == sJ.neg


def test_powerset_has_no_negative_information():
    sI, sN = pow_structure("I"), pow_structure("none")
    for x, y in product(sI.domain, repeat=2):
        assert sI.distance(x, y) == sN.distance(x, y)


def test_i_mode_warns_without_bounded_completeness():
    D = all_domains(5, bounded_complete=False)
    D = next(p for p in D if not p.is_bounded_complete())
    with pytest.warns(DeficiencyWarning):
        build_structure(D, WeightAssignment.uniform(D), "I")


# distances -------------------------------------------------------------------------

def test_powerset_example_distances():
    s = pow_structure()
    assert s.upper(F([1]), F([1])) == Q(1, 2)
    assert s.upper(F(), F()) == 1
    assert s.upper(F([1]), F([2])) == 1
    assert distance(s, F([1]), F([2])).l == 0


@given(st.sampled_from(DOMAINS4), st.integers(0, 10 ** 6), st.sampled_from(["none", "I", "J"]))
def test_distance_matches_definition(D, seed, mode):
    w, s = random_structure(D, seed, mode)
    for x, y in product(D, repeat=2):
        l, u = oracles.distance(list(D), D.leq, w.weights, x, y, mode)
        assert s.distance(x, y) == RelaxedDistance(l, u)


@given(st.sampled_from(DOMAINS4), st.integers(0, 10 ** 6), st.sampled_from(["none", "I", "J"]))
def test_partial_metric_axioms(D, seed, mode):
    _, s = random_structure(D, seed, mode)
    r = validate_partial_metric(s)
    assert r.ok, r.verdicts


def test_interval_like_failure_is_reported():
    pts = ["x", "y"]
    tab = {("x", "x"): 2, ("x", "y"): 1, ("y", "x"): 1, ("y", "y"): 0}
    r = partial_metric_report(pts, lambda a, b: tab[a, b])
    assert r.verdicts["small_self_distance"] is False
    assert r.witnesses["small_self_distance"] == ("x", "y")


@given(st.sampled_from(DOMAINS4), st.integers(0, 10 ** 6))
def test_chain_monotonicity(D, seed):
    _, s = random_structure(D, seed, "J")
    for chain in D.maximal_chains():
        for y in D:
            us = [s.upper(x, y) for x in chain]
            ls = [s.lower(x, y) for x in chain]
            assert us == sorted(us, reverse=True) and ls == sorted(ls)


def test_quasi_metric():
    s = pow_structure()
    for x, y in product(s.domain, repeat=2):
        q = s.quasi(x, y)
        assert q >= 0 and (q == 0) == s.domain.leq(x, y)


# structure validation -----------------------------------------------------------------

def test_weight_structures_are_valid():
    for D in DOMAINS4:
        for mode in ("I", "J"):
            _, s = random_structure(D, 5, mode)
            assert validate_muinfo(s).ok


def test_deficient_structure_with_top():
    r = validate_muinfo(pow_structure("none"))
    assert r.verdicts["totality"] is None
    assert all(v for k, v in r.verdicts.items() if k != "totality")


def test_weak_totality_flag():
    r = validate_muinfo(flat_structure("I"), weak_totality=True)
    assert r.verdicts["weak_totality"] and r.verdicts["totality"]


def test_totality_fails_without_negative_information():
    r = validate_muinfo(flat_structure("none"))
    assert r.verdicts["totality"] is None
    with pytest.raises(DeficientStructure):
        totals_metric(flat_structure("none"))


def test_totals_metric():
    t = totals_metric(flat_structure("I"))
    assert t[F("a"), F("b")] == 1 and t[F("a"), F("a")] == 0
    assert totals_metric(pow_structure("J")) == {(F([1, 2]), F([1, 2])): 0}


def test_totals_metric_on_powerset_with_top_weight():
    D = powerset_system([1, 2]).domain()
    s = build_structure(D, WeightAssignment.uniform(D), "J")
    # one total; its self-distance is zero by totality
    assert s.upper(F([1, 2]), F([1, 2])) == 0


@pytest.mark.parametrize("D", DOMAINS4, ids=lambda D: f"n{len(D)}")
def test_totals_metric_axioms(D):
    _, s = random_structure(D, 11, "I")
    t = totals_metric(s)
    tot = D.maximal()
    for x, y, z in product(tot, repeat=3):
        assert t[x, y] == t[y, x] and (t[x, y] == 0) == (x == y)
        assert t[x, z] <= t[x, y] + t[y, z]


# topology -------------------------------------------------------------------------------

@pytest.mark.parametrize("D", DOMAINS4, ids=lambda D: f"n{len(D)}")
def test_topologies_coincide(D):
    for mode in ("none", "I"):
        _, s = random_structure(D, 3, mode)
        assert topology_check(s).ok
        assert set(oracles.relaxed_open_by_eps(list(D), s.upper)) == set(oracles.upsets(D, D.leq))


def test_center_excluding_ball():
    x, eps, B = center_excluding_ball(pow_structure())
    assert eps > 0 and x not in B


def test_zero_radius_ball_empty():
    s = pow_structure()
    assert all(ball(s.domain.elements, s.upper, x, 0) == F() for x in s.domain)


def test_degenerate_valuation_breaks_topology():
    D = powerset_system([1, 2]).domain()
    s = build_structure(D, dirac_bottom(D), "none")
    assert not topology_check(s).ok


# tolerances -------------------------------------------------------------------------------

@pytest.mark.parametrize("D", all_domains(4), ids=lambda D: f"n{len(D)}")
def test_least_closed_tolerance_oracle(D):
    T = least_closed_tolerance(D)
    assert T.relation == oracles.least_closed_tolerance(list(D), D.leq)
    assert T.is_reflexive(D) and T.is_symmetric() and T.is_closed(D)
    for x, y in product(D, repeat=2):
        assert not_sim(D, x, y) == ((x, y) not in T)
    assert not any(not_sim(D, x, x) for x in D)


@given(st.sampled_from(DOMAINS4), st.integers(0, 10 ** 6), st.sampled_from(["I", "J"]))
def test_not_sim_iff_lower_nonzero(D, seed, mode):
    _, s = random_structure(D, seed, mode)
    for x, y in product(D, repeat=2):
        assert not_sim(D, x, y) == (s.lower(x, y) != 0)


def test_epsilon_tolerances():
    D = DOMAINS4[-1]
    _, s = random_structure(D, 2, "I")
    prev = None
    for eps in (Q(0), Q(1, 8), Q(1, 4), Q(1, 2), Q(1)):
        T = epsilon_tolerance(s, eps)
        assert T.is_reflexive(D) and T.is_symmetric() and T.is_closed(D)
        if prev is not None:
            assert prev.relation <= T.relation
        prev = T
    assert epsilon_tolerance(s, 0).relation == least_closed_tolerance(D).relation


# largest approximation --------------------------------------------------------------------

@pytest.mark.parametrize("D", DOMAINS4, ids=lambda D: f"n{len(D)}")
def test_largest_approximation(D):
    els = list(D)
    choices = [oracles.subsets(i_set(D, x)) for x in els]
    for pick in product(*choices):
        Fm = dict(zip(els, pick))
        if all(Fm[x] <= Fm[y] for x in els for y in els if D.leq(x, y)):
            assert all(Fm[x] <= j_set(D, x) for x in els)
