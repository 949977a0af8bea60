"""Built-in example records.

Entries hold published constants (degrees, integer invariants) together with
the Betti data they need.  Some anti-invariant Betti numbers are declared
inputs rather than computed facts; ``DECLARED_INPUTS`` lists them.

Setting ``RSW_CATALOG_DIR`` to a directory of ``.rswm.json`` files replaces
the built-in list.
"""
from __future__ import annotations

import os
from pathlib import Path

from .charclass import VirtualBundle
from .model import Chamber, RealFourManifold, RealSpinC
from .ring import Mod2Class, UpToSignClass

DECLARED_INPUTS = {
    "K3": ["b_plus_minus = 2, forced by d = (b+ - b1 + 1)/2 = b_plus_minus for an odd involution"],
    "S2xT2": ["spin structure chosen among the Real spin^c structures, all of degree 1"],
}


def _point_bundle(d: int) -> VirtualBundle:
    return VirtualBundle.trivial(-d, 0)


def k3() -> RealFourManifold:
    s = RealSpinC(
        name="spin",
        c_squared=0,
        d=2,
        is_spin=True,
        w1_dr_zero=True,
        minus_dr=_point_bundle(2),
        sw_mod2={(Chamber.UNIQUE, 0): Mod2Class.one(0)},
        sw_int=UpToSignClass(1),
        deg_r=UpToSignClass(2),
        ordinary_sw_mod2={0: Mod2Class.one(0)},
        ordinary_sw_int=1,
    )
    return RealFourManifold(
        name="K3", b1_total=0, b_plus_total=3, signature=-16, b1_minus=0, b_plus_minus=2,
        has_nonisolated_fixed_point=True, fixed_set_connected=False, fixed_torus_selfint_zero=True,
        psc_invariant_metric=False, symplectic_antiinvariant=True, spinc=(s,),
    )


def _sphere_like(name: str, degree: int, psc: bool) -> RealFourManifold:
    s = RealSpinC(
        name="spin", c_squared=0, d=0, is_spin=True, w1_dr_zero=True,
        minus_dr=_point_bundle(0), deg_r=UpToSignClass(degree),
    )
    return RealFourManifold(
        name=name, b1_total=0, b_plus_total=0, signature=0, b1_minus=0, b_plus_minus=0,
        has_nonisolated_fixed_point=True, fixed_set_connected=True, fixed_torus_selfint_zero=False,
        psc_invariant_metric=psc, symplectic_antiinvariant=False, spinc=(s,),
    )


def s4() -> RealFourManifold:
    """S^4 with the reflection fixing a 2-sphere."""
    return _sphere_like("S4", 1, psc=True)


def miyazawa_sphere(n: int) -> RealFourManifold:
    """Homotopy 4-sphere M_n with covering involution; |deg| = 3^n."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return s4()
    return _sphere_like(f"M{n}", 3 ** n, psc=False)


def s2xt2() -> RealFourManifold:
    """S^2 x T^2, rotating the sphere by pi; fixed set two square-zero tori."""
    s = RealSpinC(
        name="spin", c_squared=0, d=0, is_spin=True, w1_dr_zero=True,
        minus_dr=_point_bundle(0), deg_r=UpToSignClass(1),
    )
    return RealFourManifold(
        name="S2xT2", b1_total=2, b_plus_total=1, signature=0, b1_minus=0, b_plus_minus=0,
        has_nonisolated_fixed_point=True, fixed_set_connected=False, fixed_torus_selfint_zero=True,
        psc_invariant_metric=True, symplectic_antiinvariant=False, spinc=(s,),
    )


def cp2bar() -> RealFourManifold:
    """Conjugate projective plane with complex conjugation; fixed set RP^2."""
    s = RealSpinC(
        name="c2=-1", c_squared=-1, d=0, is_spin=False, w1_dr_zero=True,
        minus_dr=_point_bundle(0), deg_r=UpToSignClass(1),
    )
    return RealFourManifold(
        name="CP2bar", b1_total=0, b_plus_total=0, signature=-1, b1_minus=0, b_plus_minus=0,
        has_nonisolated_fixed_point=True, fixed_set_connected=True, fixed_torus_selfint_zero=False,
        psc_invariant_metric=True, symplectic_antiinvariant=False, spinc=(s,),
    )


def s2xs2_swap() -> RealFourManifold:
    """S^2 x S^2 with the factor swap; fixed set the diagonal."""
    s = RealSpinC(
        name="spin", c_squared=0, d=0, is_spin=True, w1_dr_zero=True,
        minus_dr=_point_bundle(0), deg_r=UpToSignClass(1),
    )
    return RealFourManifold(
        name="S2xS2-swap", b1_total=0, b_plus_total=1, signature=0, b1_minus=0, b_plus_minus=0,
        has_nonisolated_fixed_point=True, fixed_set_connected=True, fixed_torus_selfint_zero=False,
        psc_invariant_metric=True, symplectic_antiinvariant=False, spinc=(s,),
    )


def builtin_catalog() -> list[RealFourManifold]:
    return [k3(), s4(), miyazawa_sphere(1), miyazawa_sphere(2), miyazawa_sphere(3),
            s2xt2(), cp2bar(), s2xs2_swap()]


def catalog() -> list[RealFourManifold]:
    root = os.environ.get("RSW_CATALOG_DIR")
    if not root:
        return builtin_catalog()
    from .io import EXTENSION, load

    return [load(p) for p in sorted(Path(root).glob(f"*{EXTENSION}"))]


def lookup(name: str) -> RealFourManifold:
    for m in catalog():
        if m.name.lower() == name.lower():
            return m
    raise KeyError(f"no catalog entry named {name!r}")
