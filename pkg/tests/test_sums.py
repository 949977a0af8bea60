import pytest

from conftest import make_manifold
from rsw_calculus.catalog import cp2bar, k3, s2xs2_swap, s4
from rsw_calculus.charclass import VirtualBundle
from rsw_calculus.engine import (
    FiberSumError, GluingError, check_identities, connected_sum, elliptic_chain, fiber_sum, self_sum,
)
from rsw_calculus.model import Chamber, RealSpinC, validate
from rsw_calculus.ring import IntClass, Mod2Class, UpToSignClass, cup


def swap_blocks(mask, beta_a, beta_b):
    """Relabel generators of T^a x T^b as T^b x T^a."""
    low = mask & ((1 << beta_a) - 1)
    high = mask >> beta_a
    return high | (low << beta_b)


def relabel(c, beta_a, beta_b):
    if isinstance(c, Mod2Class):
        return Mod2Class(c.beta, frozenset(swap_blocks(m, beta_a, beta_b) for m in c.monomials))
    return IntClass(c.beta, {swap_blocks(m, beta_a, beta_b): v for m, v in c.coeffs.items()})


def circle_record(name, d, b_plus_minus, sw=None):
    """beta = 1 record with trivial -D_R; SW series as {m: class over 1 generator}."""
    ch = Chamber.UNIQUE if b_plus_minus != 1 else Chamber.POSITIVE
    s = RealSpinC("s", 0, d, False, True, VirtualBundle.trivial(-d, 1),
                  {(ch, m): c for m, c in (sw or {}).items()})
    return make_manifold(name, b1=1, b1_minus=1, b_plus=max(b_plus_minus, 1), signature=-8 * d,
                         b_plus_minus=b_plus_minus, spinc=[s])


def test_k3_sum_k3():
    m, s = connected_sum(k3(), k3())
    assert s.sw_int == UpToSignClass(2)
    assert all(c.is_zero() for c in s.sw_mod2.values()) and s.sw_mod2
    assert s.sw(0).is_zero()
    assert m.b_plus_total == 6 and m.b_plus_minus == 4 and m.signature == -32
    assert validate(m) == [] and check_identities(s, m.b_plus_minus) == []


def test_k3_sum_cp2bar():
    m, s = connected_sum(k3(), cp2bar())
    assert s.deg_r == UpToSignClass(2)
    assert s.sw_int == UpToSignClass(1)
    # second summand has b_plus_minus = 0 and d = 0: SW_R,m(sum) = SW_R,m(K3)
    assert s.sw(0) == Mod2Class.one(0)
    assert validate(m) == []


@pytest.mark.parametrize("a,b", [(k3, cp2bar), (k3, s4), (cp2bar, s2xs2_swap), (k3, k3)])
def test_connected_sum_commutes(a, b):
    _, s_ab = connected_sum(a(), b())
    _, s_ba = connected_sum(b(), a())
    assert s_ab.deg_r == s_ba.deg_r
    assert s_ab.sw_int == s_ba.sw_int
    assert dict(s_ab.sw_mod2) == dict(s_ba.sw_mod2)


def test_glue_with_twisted_second_summand():
    # X1: beta 1, d = 2, b_plus_minus = 2 (delta = 0): SW_R,0 = 1, SW_R,1 = v1
    v = Mod2Class.gen(1, 1)
    x1 = circle_record("X1", 2, 2, {0: Mod2Class.one(1), 1: v})
    # X2: beta 1, d = -1, b_plus_minus = 0, w(-D_R) = 1 + v1
    w = VirtualBundle(1, Mod2Class.one(1) + v)
    s2 = RealSpinC("t", 0, -1, False, False, w, {})
    x2 = make_manifold("X2", b1=1, b1_minus=1, b_plus=0, signature=8, b_plus_minus=0, spinc=[s2])
    m, s = connected_sum(x1, x2)
    beta = 2
    one = Mod2Class.one(beta)
    a = Mod2Class.gen(beta, 1)   # v1 of X1
    b = Mod2Class.gen(beta, 2)   # v1 of X2
    # SW_R,m(sum) = SW_R,m+1(X1) + w_1(-D_R(X2)) SW_R,m(X1); delta(sum) = 1 - 2 = -1
    assert s.sw(0) == a + cup(b, one)
    assert s.sw(1) == cup(b, a)
    m_rev, s_rev = connected_sum(x2, x1)
    for idx in (0, 1):
        assert relabel(s_rev.sw(idx), 1, 1) == s.sw(idx)


def test_chamber_needed_for_b_plus_minus_one():
    x1 = circle_record("X1", 1, 1, {0: Mod2Class.gen(1, 1)})
    with pytest.raises(ValueError):
        connected_sum(x1, cp2bar())
    _, s = connected_sum(x1, cp2bar(), phi=Chamber.POSITIVE)
    assert s.sw(0, Chamber.POSITIVE) is not None


def test_isolated_fixed_points_refused():
    with pytest.raises(GluingError):
        connected_sum(k3().evolve(has_nonisolated_fixed_point=False), cp2bar())


def test_odd_d_gives_zero_degree():
    x = make_manifold("O", b_plus=2, signature=-8, b_plus_minus=2, spinc=[
        RealSpinC("o", 0, 1, False, True, VirtualBundle.trivial(-1, 0), {}, deg_r=UpToSignClass(0))])
    _, s = connected_sum(x, x)
    assert s.deg_r.is_zero() and s.sw_int.is_zero()


@pytest.mark.parametrize("n", range(1, 11))
def test_elliptic_chain(n):
    m, s = elliptic_chain(k3(), n)
    assert s.sw_int.abs_scalar() == 2 ** (n - 1)
    assert s.deg_r.abs_scalar() == 2 ** n
    assert m.b_plus_total == 4 * n - 1
    assert m.b_plus_minus == 2 * n
    assert m.b_plus_inv == 2 * n - 1
    assert s.d == 2 * n
    assert m.signature == -16 * n
    assert validate(m) == [] and check_identities(s, m.b_plus_minus) == []


def test_fiber_sum_degree_is_associative():
    e4, _ = fiber_sum(k3(), k3())
    left, sl = fiber_sum(e4, k3())
    right, sr = fiber_sum(k3(), e4)
    assert sl.deg_r == sr.deg_r == UpToSignClass(8)
    assert sl.sw_int == UpToSignClass(4)


def test_fiber_sum_preconditions():
    with pytest.raises(FiberSumError):
        fiber_sum(k3(), cp2bar())
    odd = k3().evolve(spinc=(k3().spinc[0].evolve(d=3),))
    with pytest.raises(FiberSumError):
        fiber_sum(odd, k3())


def test_self_sum_degree_clause():
    m, s = self_sum("CP2bar", 0, 0, -1, c_squared=-1)
    assert s.deg_r == UpToSignClass(1)
    assert validate(m) == []
    for b_plus in (1, 2, 3, 5):
        _, s = self_sum("X", 0, b_plus, -8, d=2, chamber=Chamber.POSITIVE if b_plus == 1 else None)
        assert s.deg_r.is_zero()


def test_self_sum_mod2_clause():
    m, s = self_sum("X", 0, 3, -16, d=2, sw_m={0: Mod2Class.one(0)})
    assert s.sw(1) == Mod2Class.one(0)
    assert s.sw(0).is_zero() and s.sw(2).is_zero()
    assert m.b_plus_minus == 3 and s.d == 4
    assert validate(m) == [] and check_identities(s, m.b_plus_minus) == []


def test_self_sum_needs_bundle_when_b1_positive():
    with pytest.raises(ValueError):
        self_sum("X", 1, 3, -16, d=2)
    bad = Mod2Class.from_subsets(1, [(), (1,)])
    with pytest.raises(ValueError):
        self_sum("X", 1, 3, -16, d=2, minus_dr_total=bad)
