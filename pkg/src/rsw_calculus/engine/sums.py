"""Equivariant connected sums, fiber sums along fixed tori, and self-sums X # X."""
from __future__ import annotations

from typing import Mapping, Optional

from ..charclass import VirtualBundle, vb_external, vb_w
from ..model import (
    Chamber,
    RealFourManifold,
    RealSpinC,
    derive_d,
)
from ..ring import IntClass, Mod2Class, UpToSignClass, kunneth, reduce_mod2

CONNECTED_SUM = "connected-sum"
FIBER_SUM = "fiber-sum"
SELF_SUM = "self-sum"


class GluingError(ValueError):
    pass


class FiberSumError(ValueError):
    pass


def _pick(m: RealFourManifold, s) -> RealSpinC:
    if isinstance(s, RealSpinC):
        return s
    if s is None:
        if len(m.spinc) != 1:
            raise ValueError(f"{m.name} has {len(m.spinc)} spin^c structures; name one")
        return m.spinc[0]
    return m.spinc_named(s)


def _sw_range(delta: int, beta: int) -> range:
    return range(max(delta, 0), delta + beta + 1)


def _glue_sw(sa: RealSpinC, bpm_a: int, beta_a: int, sb: RealSpinC, beta_b: int, idx: int,
             phi: Chamber, order):
    """sum_k w_k(-D_R(B)) SW_{R, idx - d_B - k}(A), or None if a needed class is unknown.

    ``order`` puts the (A-class, B-class) pair in torus-factor order.
    """
    series = sa.sw_series(phi)
    delta_a = sa.d - bpm_a
    beta = beta_a + beta_b
    acc = Mod2Class.zero(beta)
    for k in range(0, beta_b + 1):
        w = vb_w(sb.minus_dr, k)
        if w.is_zero():
            continue
        src = idx - sb.d - k
        if src < 0 or not (0 <= src - delta_a <= beta_a):
            continue
        if src not in series:
            return None
        left, right = order(series[src], w)
        acc = acc + kunneth(left, right)
    return acc


def connected_sum(m1: RealFourManifold, m2: RealFourManifold, s1=None, s2=None,
                  phi: Optional[Chamber] = None) -> tuple[RealFourManifold, RealSpinC]:
    """Equivariant connected sum at fixed points, with the glued invariants.

    ``phi`` is a chamber of the summand with b_plus_minus > 0 (``m1`` when
    both are positive); it is required when that summand has b_plus_minus = 1.
    Clauses whose hypotheses fail leave the corresponding field unknown.
    """
    for m in (m1, m2):
        if not m.has_nonisolated_fixed_point:
            raise GluingError(f"{m.name}: equivariant connected sum needs a non-isolated fixed point")
    s1, s2 = _pick(m1, s1), _pick(m2, s2)
    b1, b2 = m1.b1_minus, m2.b1_minus
    beta = b1 + b2
    d1, d2 = s1.d, s2.d
    d = d1 + d2
    bpm = m1.b_plus_minus + m2.b_plus_minus

    # the summand whose b_plus_minus is positive carries the chamber
    main = 1 if m1.b_plus_minus > 0 or m2.b_plus_minus == 0 else 2
    mm = m1 if main == 1 else m2
    if mm.b_plus_minus == 1:
        if phi is None:
            raise ValueError(f"{mm.name} has b_plus_minus = 1; a chamber is required")
        phi = Chamber(phi)
    else:
        phi = Chamber.UNIQUE
    out_chamber = phi if bpm == 1 else Chamber.UNIQUE

    minus_dr = vb_external(s1.minus_dr, s2.minus_dr)
    w1_zero = vb_w(minus_dr, 1).is_zero()
    delta = d - bpm

    sw: dict = {}
    if m1.b_plus_minus > 0 and m2.b_plus_minus > 0:
        for idx in _sw_range(delta, beta):
            sw[(out_chamber, idx)] = Mod2Class.zero(beta)
    elif bpm > 0:
        for idx in _sw_range(delta, beta):
            if main == 1:
                acc = _glue_sw(s1, m1.b_plus_minus, b1, s2, b2, idx, phi, lambda x, w: (x, w))
            else:
                acc = _glue_sw(s2, m2.b_plus_minus, b2, s1, b1, idx, phi, lambda x, w: (w, x))
            if acc is not None:
                sw[(out_chamber, idx)] = acc

    deg_r = None
    sw_int = None
    if w1_zero:
        if d1 % 2 or d2 % 2:
            deg_r = UpToSignClass(IntClass.zero(beta))
        elif s1.deg_r is not None and s2.deg_r is not None:
            deg_r = UpToSignClass(kunneth(s1.deg_r.rep, s2.deg_r.rep))
        if bpm > 0:
            if d1 % 2 == 0 and d2 % 2 == 0:
                if main == 1 and s1.sw_int is not None and s2.deg_r is not None:
                    sw_int = UpToSignClass(kunneth(s1.sw_int.rep, s2.deg_r.rep))
                elif main == 2 and s1.deg_r is not None and s2.sw_int is not None:
                    sw_int = UpToSignClass(kunneth(s1.deg_r.rep, s2.sw_int.rep))
            elif d1 % 2 and d2 % 2:
                sw_int = UpToSignClass(IntClass.zero(beta))

    spinc = RealSpinC(
        name=f"{s1.name}#{s2.name}",
        c_squared=s1.c_squared + s2.c_squared,
        d=d,
        is_spin=s1.is_spin and s2.is_spin,
        w1_dr_zero=w1_zero,
        minus_dr=minus_dr,
        sw_mod2=sw,
        sw_int=sw_int,
        deg_r=deg_r,
    )
    manifold = RealFourManifold(
        name=f"{m1.name}#{m2.name}",
        b1_total=m1.b1_total + m2.b1_total,
        b_plus_total=m1.b_plus_total + m2.b_plus_total,
        signature=m1.signature + m2.signature,
        b1_minus=beta,
        b_plus_minus=bpm,
        has_nonisolated_fixed_point=True,
        fixed_set_connected=m1.fixed_set_connected and m2.fixed_set_connected,
        fixed_torus_selfint_zero=m1.fixed_torus_selfint_zero or m2.fixed_torus_selfint_zero,
        psc_invariant_metric=m1.psc_invariant_metric and m2.psc_invariant_metric,
        symplectic_antiinvariant=False,
        spinc=(spinc,),
    )
    return manifold, spinc


def fiber_sum(m1: RealFourManifold, m2: RealFourManifold, s1=None, s2=None,
              b1_total: Optional[int] = None) -> tuple[RealFourManifold, RealSpinC]:
    """Sum along invariant fixed tori of square zero.

    ``b1_total`` of the result is not determined by the summands' numbers;
    it defaults to 0 when both summands have b1 = 0.
    """
    s1, s2 = _pick(m1, s1), _pick(m2, s2)
    for m, s in ((m1, s1), (m2, s2)):
        if m.b1_minus != 0:
            raise FiberSumError(f"{m.name}: b1_minus must be 0")
        if not m.fixed_torus_selfint_zero:
            raise FiberSumError(f"{m.name}: needs an invariant fixed torus of square 0")
        if s.d % 2:
            raise FiberSumError(f"{m.name}/{s.name}: d = {s.d} must be even")
    if b1_total is None:
        if m1.b1_total or m2.b1_total:
            raise FiberSumError("b1_total of the fiber sum must be given when a summand has b1 > 0")
        b1_total = 0

    signature = m1.signature + m2.signature
    euler = m1.euler_characteristic + m2.euler_characteristic
    # chi = 2 - 2 b1 + b2 and b2 = 2 b+ - sigma
    b_plus = (euler + signature) // 2 - 1 + b1_total
    if b_plus < 0:
        raise FiberSumError(f"inconsistent Betti data: b_plus would be {b_plus}")
    bpm = m1.b_plus_minus + m2.b_plus_minus
    d = s1.d + s2.d

    deg_r = None
    if s1.deg_r is not None and s2.deg_r is not None:
        deg_r = UpToSignClass(s1.deg_r.rep.scalar_value() * s2.deg_r.rep.scalar_value())
    sw_int = None
    if m1.b_plus_minus > 0 and m2.b_plus_minus > 0 and s1.sw_int is not None and s2.sw_int is not None:
        sw_int = UpToSignClass(2 * s1.sw_int.rep.scalar_value() * s2.sw_int.rep.scalar_value())
    elif bpm > 0 and deg_r is not None and deg_r.rep.scalar_value() % 2 == 0:
        sw_int = UpToSignClass(deg_r.rep.scalar_value() // 2)

    sw = {}
    if sw_int is not None and bpm != 1 and d - bpm <= 0:
        sw[(Chamber.UNIQUE, 0)] = reduce_mod2(sw_int.rep)

    spinc = RealSpinC(
        name=f"{s1.name}+{s2.name}",
        c_squared=s1.c_squared + s2.c_squared,
        d=d,
        is_spin=s1.is_spin and s2.is_spin,
        w1_dr_zero=True,
        minus_dr=VirtualBundle.trivial(-d, 0),
        sw_mod2=sw,
        sw_int=sw_int,
        deg_r=deg_r,
    )
    manifold = RealFourManifold(
        name=f"{m1.name}+{m2.name}",
        b1_total=b1_total,
        b_plus_total=b_plus,
        signature=signature,
        b1_minus=0,
        b_plus_minus=bpm,
        has_nonisolated_fixed_point=True,
        fixed_set_connected=False,
        fixed_torus_selfint_zero=True,
        psc_invariant_metric=False,
        symplectic_antiinvariant=False,
        spinc=(spinc,),
    )
    return manifold, spinc


def self_sum(name: str, b1: int, b_plus: int, signature: int, *, d: Optional[int] = None,
             c_squared: Optional[int] = None, sw_m: Optional[Mapping[int, Mod2Class]] = None,
             sw_int: Optional[int] = None, chamber: Optional[Chamber] = None,
             minus_dr_total: Optional[Mod2Class] = None, is_spin: bool = False,
             ) -> tuple[RealFourManifold, RealSpinC]:
    """X # X with the involution swapping the summands.

    ``sw_m`` holds the ordinary mod 2 classes SW_m(X) over b1 generators;
    ``sw_int`` is the ordinary integer invariant, used when b1 = 0.
    ``minus_dr_total`` is w(-D_R) of the result over b1 generators and must be
    given when b1 > 0.
    """
    if c_squared is None and d is None:
        raise ValueError("give d or c_squared")
    if c_squared is None:
        c_squared = 8 * d + signature
    dx = derive_d(c_squared, signature)
    if d is not None and d != dx:
        raise ValueError(f"d = {d} disagrees with (c^2 - signature)/8 = {dx}")
    d = dx

    if minus_dr_total is None:
        if b1 > 0:
            raise ValueError("minus_dr_total is required when b1 > 0")
        minus_dr_total = Mod2Class.one(0)
    if minus_dr_total.beta != b1:
        raise ValueError(f"minus_dr_total has beta={minus_dr_total.beta}, expected {b1}")
    if any(len(t) % 2 for t in minus_dr_total.subsets()):
        raise ValueError("w(-D_R) of a self-sum comes from a complex bundle: odd pieces must vanish")
    minus_dr = VirtualBundle(-2 * d, minus_dr_total)

    # the real index is the complex one of X, seen as real: rank 2d
    out_d = 2 * d
    bpm = b_plus
    delta = out_d - bpm

    if b_plus == 1:
        if chamber is None:
            raise ValueError("b_plus = 1 needs a chamber")
        out_chamber = Chamber(chamber)
    else:
        out_chamber = Chamber.UNIQUE

    ordinary = dict(sw_m or {})
    ordinary_deg0 = 2 * d - b_plus - 1
    if sw_int is not None and b1 == 0 and ordinary_deg0 >= 0 and ordinary_deg0 % 2 == 0:
        ordinary.setdefault(ordinary_deg0 // 2, Mod2Class.scalar(sw_int, 0))

    sw: dict = {}
    if b_plus > 0:
        for idx in range(0, delta + b1 + 2):
            if idx % 2 == 0:
                sw[(out_chamber, idx)] = Mod2Class.zero(b1)
            elif idx - delta < 0:
                continue
            else:
                k = (idx - 1) // 2
                if k in ordinary:
                    sw[(out_chamber, idx)] = ordinary[k]
                elif not (0 <= 2 * k - ordinary_deg0 <= b1):
                    sw[(out_chamber, idx)] = Mod2Class.zero(b1)

    deg_value = 1 if (b_plus == 0 and d == 0) else 0
    deg_r = UpToSignClass(IntClass.scalar(deg_value, b1) if deg_value else IntClass.zero(b1))
    sw_int_out = UpToSignClass(IntClass.zero(b1)) if b_plus > 0 else None

    spinc = RealSpinC(
        name=f"{name}-swap",
        c_squared=2 * c_squared,
        d=out_d,
        is_spin=is_spin,
        w1_dr_zero=True,
        minus_dr=minus_dr,
        sw_mod2=sw,
        sw_int=sw_int_out,
        deg_r=deg_r,
    )
    manifold = RealFourManifold(
        name=f"{name}#{name}",
        b1_total=2 * b1,
        b_plus_total=2 * b_plus,
        signature=2 * signature,
        b1_minus=b1,
        b_plus_minus=b_plus,
        has_nonisolated_fixed_point=True,
        fixed_set_connected=True,
        fixed_torus_selfint_zero=False,
        psc_invariant_metric=False,
        symplectic_antiinvariant=False,
        spinc=(spinc,),
    )
    return manifold, spinc


def elliptic_chain(k3: RealFourManifold, n: int) -> tuple[RealFourManifold, RealSpinC]:
    """E(2n) as the (n-1)-fold fiber sum of the given K3 record with itself."""
    if n < 1:
        raise ValueError("n must be at least 1")
    cur, s = k3, _pick(k3, None)
    for _ in range(n - 1):
        cur, s = fiber_sum(cur, k3)
    return cur.evolve(name=f"E({2 * n})"), s
