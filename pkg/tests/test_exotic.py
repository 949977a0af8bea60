import pytest
from hypothesis import given, strategies as st

from conftest import make_manifold, point_spinc
from rsw_calculus.catalog import builtin_catalog, cp2bar, k3, lookup, miyazawa_sphere, s2xs2_swap, s4
from rsw_calculus.exotic import (
    AdmissibilityWitness, AdmissibleCase, check_admissible, exotic_family, nonzero_degree_witness,
)


@pytest.mark.parametrize("factory,case,parity", [
    (k3, AdmissibleCase.ODD_SW, "even-nonzero"),
    (s4, AdmissibleCase.SPIN_ZERO_SIG, "odd"),
    (cp2bar, AdmissibleCase.CP2BAR, "odd"),
    (s2xs2_swap, AdmissibleCase.SPIN_ZERO_SIG, "odd"),
])
def test_catalog_admissibility(factory, case, parity):
    m = factory()
    rep = check_admissible(m)
    assert rep.admissible and rep.witness.case == case
    assert nonzero_degree_witness(m, rep.witness).parity == parity


def test_witness_parity_matches_stored_degree():
    for m in builtin_catalog():
        rep = check_admissible(m)
        if not rep.admissible:
            continue
        w = nonzero_degree_witness(m, rep.witness)
        deg = m.spinc_named(w.spinc).deg_r
        if deg is not None:
            assert deg.abs_scalar() != 0
            assert (deg.abs_scalar() % 2 == 1) == (w.parity == "odd")


def test_k3_reports_symplectic_origin():
    rep = check_admissible(k3())
    assert "symplectic origin" in rep.witness.notes
    rep = check_admissible(k3().evolve(symplectic_antiinvariant=False))
    assert rep.witness.case == AdmissibleCase.ODD_SW
    assert "symplectic origin" not in rep.witness.notes


def test_b1_minus_blocks_admissibility():
    rep = check_admissible(s4().evolve(b1_minus=1, b1_total=1))
    assert not rep.admissible
    assert any("b1_minus" in r for r in rep.reasons)


def test_no_case_applies():
    s = point_spinc("s", 2, -8)
    m = make_manifold("N", b_plus=3, signature=-8, spinc=[s])
    rep = check_admissible(m)
    assert not rep.admissible
    assert len(rep.reasons) == 5


def test_swap_double_shadow():
    # N # N with N negative definite: b+ = 0, signature -2, c^2 = -2, d = 0
    s = point_spinc("s", 0, -2)
    m = make_manifold("NN", b_plus=0, signature=-2, b_plus_minus=0, spinc=[s])
    rep = check_admissible(m)
    assert rep.witness.case == AdmissibleCase.SWAP_DOUBLE


def test_witness_must_hold():
    with pytest.raises(ValueError):
        nonzero_degree_witness(s4(), AdmissibilityWitness(AdmissibleCase.CP2BAR, "spin"))


def test_miyazawa_degrees():
    for n in range(0, 5):
        assert miyazawa_sphere(n).spinc[0].deg_r.abs_scalar() == 3 ** n
    assert lookup("m2").name == "M2"


@pytest.mark.parametrize("a0,base", [({2}, 2), ({1}, 1)])
def test_exotic_family_values(a0, base):
    rep = exotic_family(a0, 20)
    assert rep.r == 1
    assert rep.distinct and rep.bands
    for n in range(21):
        assert rep.rows[n] == {base * 3 ** n}


def test_exotic_family_with_wider_base():
    rep = exotic_family([1, 3, 5], 4)
    assert rep.r == 2
    assert rep.rows[1] == {9, 27, 45}
    assert rep.distinct and rep.bands


@given(st.sets(st.integers(1, 500), min_size=1, max_size=6), st.integers(0, 8))
def test_exotic_family_rows_never_collide(a0, n):
    rep = exotic_family(a0, n)
    flat = [a for row in rep.rows.values() for a in row]
    assert len(flat) == len(set(flat)) == len(a0) * (n + 1)
    assert rep.distinct
    assert 3 ** rep.r > max(a0) >= 3 ** (rep.r - 1)


def test_exotic_family_rejects_bad_input():
    with pytest.raises(ValueError):
        exotic_family([], 3)
    with pytest.raises(ValueError):
        exotic_family([0, 2], 3)
    with pytest.raises(ValueError):
        exotic_family([2], -1)


def test_table_layout():
    text = exotic_family([2], 2).table()
    lines = text.splitlines()
    assert lines[0].split() == ["n", "A_n", "band-gap"]
    assert lines[1].split() == ["0", "2", "4"]
    assert lines[3].split() == ["2", "18", "-"]
    assert lines[-1] == "r = 1; distinct = true; bands = true"
