import pytest
from hypothesis import settings

from rsw_calculus.charclass import VirtualBundle
from rsw_calculus.model import Chamber, RealFourManifold, RealSpinC
from rsw_calculus.ring import Mod2Class

settings.register_profile("default", deadline=None)
settings.load_profile("default")


def make_manifold(name="X", *, b1=0, b_plus=3, signature=0, b1_minus=0, b_plus_minus=2, spinc=(), **flags):
    base = dict(
        has_nonisolated_fixed_point=True, fixed_set_connected=True, fixed_torus_selfint_zero=False,
        psc_invariant_metric=False, symplectic_antiinvariant=False,
    )
    base.update(flags)
    return RealFourManifold(name=name, b1_total=b1, b_plus_total=b_plus, signature=signature,
                            b1_minus=b1_minus, b_plus_minus=b_plus_minus, spinc=tuple(spinc), **base)


def point_spinc(name, d, signature, sw=None, **kw):
    """A beta = 0 structure with trivial -D_R of rank -d."""
    return RealSpinC(name=name, c_squared=8 * d + signature, d=d, is_spin=kw.pop("is_spin", False),
                     w1_dr_zero=True, minus_dr=VirtualBundle.trivial(-d, 0), sw_mod2=sw or {}, **kw)


@pytest.fixture
def d4_fixture():
    """beta = 0, d = 4, b_plus_minus = 2; SW_R,2 is the only class of degree 0.

    The identity at (m=1, j=1) reads binom(3,1) SW_R,2 = 0, so the consistent
    value is 0.
    """
    s = point_spinc("s", 4, -8, {(Chamber.UNIQUE, 2): Mod2Class.zero(0)})
    return make_manifold("D4", b_plus=3, signature=-8, b_plus_minus=2, spinc=[s]), s


def wall_fixture(d: int):
    """beta = 0, b_plus_minus = 1, SW^- identically zero up to m = d + 2."""
    sw = {(Chamber.NEGATIVE, m): Mod2Class.zero(0) for m in range(0, d + 3)}
    s = point_spinc("s", d, -8 * d, sw)
    return make_manifold(f"W{d}", b_plus=1, signature=-8 * d, b_plus_minus=1, spinc=[s]), s


# one line per acceptance criterion, printed after the run
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
