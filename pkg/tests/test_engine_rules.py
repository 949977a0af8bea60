import itertools

import pytest
from hypothesis import given, strategies as st

from conftest import make_manifold, point_spinc, wall_fixture
from rsw_calculus.catalog import k3, s2xs2_swap
from rsw_calculus.charclass import VirtualBundle, binom_mod2, tensor_by_line
from rsw_calculus.engine import (
    apply_outcome, change_splitting, change_splitting_spinc, check_identities, degree_relations,
    identity_outcome, normalize_splitting, odd_vanishing, psc_rule, spin_rule, wall_cross,
)
from rsw_calculus.engine.outcome import OutcomeBuilder, RuleOutcome, sw_key
from rsw_calculus.model import Chamber, RealSpinC, Violation
from rsw_calculus.ring import Mod2Class, UpToSignClass, cup


def identity_oracle(sw, d, minus_dr, m, j):
    """Direct evaluation of sum_l binom(d-1-m+j, l) w_{j-l}(-D_R) SW_{m+l}."""
    beta = minus_dr.beta
    total = Mod2Class.zero(beta)
    for l in range(j + 1):
        if binom_mod2(d - 1 - m + j, l) and j - l <= beta:
            total = total + cup(minus_dr.total.piece(j - l), sw.get(m + l, Mod2Class.zero(beta)))
    return total


# ---- wall crossing ----

@pytest.mark.parametrize("d", range(1, 7))
def test_wall_crossing_jump_at_d_minus_one(d):
    _, s = wall_fixture(d)
    neg = s.sw_series(Chamber.NEGATIVE)
    pos = wall_cross(neg, d, s.minus_dr)
    for m in range(0, d + 3):
        diff = pos.get(m, Mod2Class.zero(0)) + neg.get(m, Mod2Class.zero(0))
        assert diff == Mod2Class.scalar(int(m == d - 1), 0), m
    assert wall_cross(pos, d, s.minus_dr) == neg


@st.composite
def bundles(draw):
    beta = draw(st.integers(0, 4))
    masks = draw(st.sets(st.integers(1, (1 << beta) - 1))) if beta else set()
    return VirtualBundle(-draw(st.integers(0, 5)), Mod2Class(beta, frozenset(masks | {0})))


@given(bundles(), st.integers(-2, 5), st.data())
def test_wall_crossing_is_involution(v, d, data):
    beta = v.beta
    idx = data.draw(st.sets(st.integers(0, 8), max_size=5))
    neg = {m: Mod2Class(beta, frozenset(data.draw(st.sets(st.integers(0, (1 << beta) - 1))))) for m in idx}
    twice = wall_cross(wall_cross(neg, d, v), d, v)
    assert {m: c for m, c in twice.items() if c} == {m: c for m, c in neg.items() if c}


# ---- identity family ----

def test_consistent_fixture_has_no_violations(d4_fixture):
    _, s = d4_fixture
    assert check_identities(s, 2) == []


def test_mutation_produces_m1_j1_violation(d4_fixture):
    _, s = d4_fixture
    bad = s.with_sw(Chamber.UNIQUE, {2: Mod2Class.one(0)})
    loci = [v.locus for v in check_identities(bad, 2)]
    assert "s:Unique/m=1,j=1" in loci
    assert identity_oracle({2: Mod2Class.one(0)}, 4, s.minus_dr, 1, 1) == Mod2Class.one(0)


def test_unknown_invariants_are_skipped():
    s = point_spinc("s", 2, 0)
    out = identity_outcome(s, 0)
    assert out.violations == ()
    assert any("skipped" in n for n in out.notes)


def all_families(beta, delta, d, b_plus_minus):
    """Every choice of homogeneous classes for the indices in range."""
    idx = [m for m in range(max(delta, 0), delta + beta + 1)]
    per_index = []
    for m in idx:
        k = m - delta
        masks = [mk for mk in range(1 << beta) if bin(mk).count("1") == k]
        per_index.append([Mod2Class(beta, frozenset(sub)) for r in range(len(masks) + 1)
                          for sub in itertools.combinations(masks, r)])
    for choice in itertools.product(*per_index):
        yield dict(zip(idx, choice))


def odd_bundles(beta, d):
    deg1 = [Mod2Class.from_subsets(beta, [(g,) for g in gs]) for r in range(beta + 1)
            for gs in itertools.combinations(range(1, beta + 1), r)]
    for w1 in deg1:
        yield VirtualBundle(-d, Mod2Class.one(beta) + w1)


@pytest.mark.parametrize("d,b_plus_minus", [(1, 0), (2, 1), (2, 2), (3, 2), (4, 3)])
def test_identities_agree_with_direct_evaluation(d, b_plus_minus):
    beta = 1
    for v in odd_bundles(beta, d):
        for fam in all_families(beta, d - b_plus_minus, d, b_plus_minus):
            s = RealSpinC("s", 8 * d, d, False, v.w(1).is_zero(), v,
                          {(Chamber.UNIQUE, m): c for m, c in fam.items()})
            got = {x.locus for x in check_identities(s, b_plus_minus)}
            want = {f"s:Unique/m={m},j={j}" for m in range(9) for j in range(1, 5)
                    if identity_oracle(fam, d, v, m, j)}
            assert got == want


@pytest.mark.parametrize("beta", [1, 2])
@pytest.mark.parametrize("d,b_plus_minus", [(1, 0), (2, 1), (3, 2), (4, 2), (5, 4)])
def test_splitting_change_preserves_identities(beta, d, b_plus_minus):
    lams = [Mod2Class.from_subsets(beta, [(g,) for g in gs]) for r in range(1, beta + 1)
            for gs in itertools.combinations(range(1, beta + 1), r)]
    for v in odd_bundles(beta, d):
        for fam in all_families(beta, d - b_plus_minus, d, b_plus_minus):
            s = RealSpinC("s", 8 * d, d, False, v.w(1).is_zero(), v,
                          {(Chamber.UNIQUE, m): c for m, c in fam.items()})
            ok = not check_identities(s, b_plus_minus)
            for lam in lams:
                t = change_splitting_spinc(s, lam, b_plus_minus)
                assert (not check_identities(t, b_plus_minus)) == ok
                assert change_splitting_spinc(t, lam, b_plus_minus).sw_mod2 == s.sw_mod2


def test_change_splitting_formula():
    beta = 2
    a = Mod2Class.gen(beta, 1)
    sw = {2: Mod2Class.gen(beta, 2), 3: Mod2Class.zero(beta)}
    out = change_splitting(sw, a)
    assert out[2] == sw[2]
    assert out[3] == Mod2Class.from_subsets(beta, [(1, 2)])
    with pytest.raises(ValueError):
        change_splitting(sw, Mod2Class.one(beta))


def test_normalize_odd_d():
    beta = 1
    v = VirtualBundle(-1, Mod2Class.from_subsets(beta, [(), (1,)]))
    s = RealSpinC("s", 8, 1, False, False, v, {})
    t, a = normalize_splitting(s, 0)
    assert a == Mod2Class.gen(beta, 1)
    assert t.w1_dr_zero and t.minus_dr == tensor_by_line(v, a)
    same, zero = normalize_splitting(t, 0)
    assert same is t and zero.is_zero()


# ---- vanishing rules ----

def test_spin_rule_on_k3():
    m = k3()
    out = spin_rule(m, m.spinc[0])
    # signature -16: w_0(-D_R) = 1
    assert out.ok
    with pytest.raises(ValueError):
        spin_rule(m, point_spinc("x", 2, -16))


def test_spin_rule_forces_even_indices_above_two():
    # beta = 1, delta = 1: indices 1 and 2 are in range, only 2 is even
    s = RealSpinC("s", 0, 4, True, True, VirtualBundle.trivial(-4, 1))
    m = make_manifold(b1=1, b1_minus=1, b_plus=5, signature=-32, b_plus_minus=3, spinc=[s])
    out = spin_rule(m, s)
    assert set(out.assignments) == {sw_key(Chamber.UNIQUE, 2)}
    assert out.assignments[sw_key(Chamber.UNIQUE, 2)].is_zero()


def test_spin_rule_flags_odd_w_classes():
    v = VirtualBundle(-2, Mod2Class.from_subsets(1, [(), (1,)]))
    s = RealSpinC("s", 0, 2, True, False, v)
    m = make_manifold(b1=1, b1_minus=1, signature=-16, spinc=[s])
    assert any(x.locus.endswith("minus_dr/w1") for x in spin_rule(m, s).violations)


def test_psc_rule():
    m = s2xs2_swap()
    out = psc_rule(m, m.spinc[0])
    assert out.ok
    s = point_spinc("s", 2, 0, {(Chamber.UNIQUE, 0): Mod2Class.one(0)})
    m = make_manifold(b_plus=3, b_plus_minus=2, spinc=[s], psc_invariant_metric=True)
    out = psc_rule(m, s)
    assert any(v.rule == "psc-vanishing" for v in out.violations)


def test_psc_rule_chamber_choice():
    s = point_spinc("s", 1, -8)
    m = make_manifold(b_plus=1, signature=-8, b_plus_minus=1, spinc=[s], psc_invariant_metric=True)
    assert psc_rule(m, s).assignments == {}
    pos = psc_rule(m, s, zero_chamber=Chamber.POSITIVE)
    assert sw_key(Chamber.POSITIVE, 0) in pos.assignments
    wall = psc_rule(m, s, zero_chamber="wall")
    assert {sw_key(Chamber.POSITIVE, 0), sw_key(Chamber.NEGATIVE, 0)} <= set(wall.assignments)


def test_degree_relations_fill_integer_data():
    s = point_spinc("s", 2, -16, sw_int=UpToSignClass(3))
    m = make_manifold(b_plus=3, signature=-16, spinc=[s])
    out = degree_relations(m, s)
    assert out.assignments["deg_r"] == UpToSignClass(6)
    assert out.assignments[sw_key(Chamber.UNIQUE, 0)] == Mod2Class.one(0)
    filled = apply_outcome(s, out)
    assert filled.deg_r == UpToSignClass(6)


def test_degree_relations_odd_d_and_bad_degree():
    s = point_spinc("s", 1, -8, deg_r=UpToSignClass(2))
    m = make_manifold(b_plus=3, signature=-8, spinc=[s])
    assert not degree_relations(m, s).ok
    s = point_spinc("s", 2, -16, deg_r=UpToSignClass(3))
    m = make_manifold(b_plus=3, signature=-16, spinc=[s])
    assert not degree_relations(m, s).ok


def test_degree_relations_b_plus_minus_zero():
    s = point_spinc("s", 0, 0, deg_r=UpToSignClass(2))
    m = make_manifold(b_plus=0, b_plus_minus=0, spinc=[s])
    assert [v.locus.split(":")[-1] for v in degree_relations(m, s).violations] == ["deg_r"]


def test_odd_vanishing():
    s = point_spinc("s", 3, -24)
    out = odd_vanishing(s, 2)
    # delta = 1, beta = 0: index 1 only
    assert set(out.assignments) == {sw_key(Chamber.UNIQUE, 1)}
    assert odd_vanishing(point_spinc("s", 2, 0), 2).assignments == {}


def test_outcome_rejects_assigning_a_violated_field():
    with pytest.raises(ValueError):
        RuleOutcome("r", {"deg_r": 1}, (Violation("r", "x:deg_r", "bad"),))
    ob = OutcomeBuilder("r", None, "x")
    ob.force("deg_r", UpToSignClass(2), UpToSignClass(3))
    assert not ob.build().ok
