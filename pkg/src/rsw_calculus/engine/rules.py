"""Rules relating the mod 2 invariants, the integer invariants and the index bundle."""
from __future__ import annotations

from typing import Iterable, Mapping, Optional

from ..charclass import VirtualBundle, binom_mod2, tensor_by_line, total_inverse, vb_w
from ..model import (
    Chamber,
    RealFourManifold,
    RealSpinC,
    Violation,
    allowed_chambers,
)
from ..ring import IntClass, Mod2Class, UpToSignClass, cup, reduce_mod2
from .outcome import OutcomeBuilder, RuleOutcome

WALL_CROSSING = "wall-crossing"
IDENTITIES = "identity-family"
SPLITTING = "splitting-change"
SPIN = "spin-vanishing"
PSC = "psc-vanishing"
DEGREE = "degree-relations"
ODD_VANISHING = "odd-vanishing"


def _zero_int(beta: int) -> UpToSignClass:
    return UpToSignClass(IntClass.zero(beta))


def wall_cross(sw_neg: Mapping[int, Mod2Class], d: int, minus_dr: VirtualBundle) -> dict[int, Mod2Class]:
    """SW^+ from SW^-: add w_{m-(d-1)}(-D_R) at every m.

    Indices missing from ``sw_neg`` are read as zero.  The map is its own
    inverse, so it also turns SW^+ into SW^-.
    """
    beta = minus_dr.beta
    top = max([*sw_neg.keys(), d - 1 + beta, 0])
    out = {}
    for m in range(0, top + 1):
        cur = sw_neg.get(m)
        jump = vb_w(minus_dr, m - (d - 1))
        if cur is None and jump.is_zero():
            continue
        out[m] = (cur if cur is not None else Mod2Class.zero(beta)) + jump
    return out


def _sw_lookup(s: RealSpinC, chamber: Chamber, idx: int, delta: int, beta: int):
    """Stored SW_{R,idx}, zero if its degree is out of range, None if unknown."""
    c = s.sw(idx, chamber)
    if c is not None:
        return c
    deg = idx - delta
    if idx < 0 or deg < 0 or deg > beta:
        return Mod2Class.zero(beta)
    return None


def identity_outcome(s: RealSpinC, b_plus_minus: int, j_max: int = 4, m_max: int = 8,
                     chambers: Optional[Iterable[Chamber]] = None) -> RuleOutcome:
    beta = s.beta
    delta = s.d - b_plus_minus
    ob = OutcomeBuilder(IDENTITIES, s, s.name)
    if chambers is None:
        chambers = s.chambers() or allowed_chambers(b_plus_minus)
    for ch in chambers:
        skipped = 0
        for m in range(0, m_max + 1):
            for j in range(1, j_max + 1):
                total = Mod2Class.zero(beta)
                unknown = False
                for l in range(0, j + 1):
                    if not binom_mod2(s.d - 1 - m + j, l):
                        continue
                    w = vb_w(s.minus_dr, j - l)
                    if w.is_zero():
                        continue
                    sw = _sw_lookup(s, ch, m + l, delta, beta)
                    if sw is None:
                        unknown = True
                        break
                    total = total + cup(w, sw)
                if unknown:
                    skipped += 1
                elif not total.is_zero():
                    ob.violate(f"{ch.value}/m={m},j={j}", f"identity evaluates to {total}")
        if skipped:
            ob.note(f"{ch.value}: {skipped} identities skipped, they involve unknown invariants")
    return ob.build()


def check_identities(s: RealSpinC, b_plus_minus: int, j_max: int = 4, m_max: int = 8,
                     chambers: Optional[Iterable[Chamber]] = None) -> list[Violation]:
    return list(identity_outcome(s, b_plus_minus, j_max, m_max, chambers).violations)


def change_splitting(sw: Mapping[int, Mod2Class], a: Mod2Class,
                     unknown=lambda idx: False) -> dict[int, Mod2Class]:
    """SW'_m = SW_m + m a SW_{m-1}.

    A missing SW_{m-1} reads as zero unless ``unknown(m - 1)`` says it is
    merely unknown, in which case SW'_m is dropped.
    """
    if not a.is_homogeneous(1):
        raise ValueError("splitting change needs a degree-1 class")
    out = {}
    for m, c in sw.items():
        if m % 2:
            if (m - 1) in sw:
                c = c + cup(a, sw[m - 1])
            elif unknown(m - 1) and not a.is_zero():
                continue
        out[m] = c
    return out


def change_splitting_spinc(s: RealSpinC, a: Mod2Class, b_plus_minus: int) -> RealSpinC:
    """Apply a splitting change to every chamber's classes and twist the index bundle."""
    delta = s.d - b_plus_minus

    def unknown(idx):
        return 0 <= idx - delta <= s.beta

    sw = {}
    for ch in s.chambers():
        for m, c in change_splitting(s.sw_series(ch), a, unknown).items():
            sw[(ch, m)] = c
    minus_dr = tensor_by_line(s.minus_dr, a)
    return s.evolve(sw_mod2=sw, minus_dr=minus_dr, w1_dr_zero=vb_w(minus_dr, 1).is_zero())


def normalize_splitting(s: RealSpinC, b_plus_minus: int) -> tuple[RealSpinC, Mod2Class]:
    """For odd d, move to the unique splitting with w_1(D_R) = 0.

    Returns the new record and the class ``a`` used (zero if nothing changed).
    """
    w1 = vb_w(s.minus_dr, 1)
    if s.d % 2 == 0 or w1.is_zero():
        return s, Mod2Class.zero(s.beta)
    # w_1(D_R) = w_1(-D_R), and twisting adds d * a = a
    return change_splitting_spinc(s, w1, b_plus_minus), w1


def _sw_indices(s: RealSpinC, b_plus_minus: int, m_max: int) -> range:
    """Indices m whose SW_{R,m} can be nonzero, capped at m_max."""
    delta = s.d - b_plus_minus
    lo = max(delta, 0)
    hi = min(delta + s.beta, m_max)
    return range(lo, hi + 1)


def spin_rule(m: RealFourManifold, s: RealSpinC, m_max: int = 8) -> RuleOutcome:
    if not s.is_spin:
        raise ValueError(f"{s.name} is not a Real spin structure")
    ob = OutcomeBuilder(SPIN, s, f"{m.name}/{s.name}")
    beta = s.beta
    w_d = total_inverse(s.minus_dr.total)
    for j in range(1, beta + 1, 2):
        piece = w_d.piece(j)
        if not piece.is_zero():
            ob.violate(f"minus_dr/w{j}", f"w_{j}(D_R) = {piece} but odd classes vanish for spin structures")
    bpm = m.b_plus_minus
    if bpm > 2:
        for idx in _sw_indices(s, bpm, m_max):
            if idx % 2 == 0:
                ob.force_sw(Chamber.UNIQUE, idx, Mod2Class.zero(beta))
        if s.d - bpm > 0:
            ob.note("SW_R,0 has negative degree and vanishes trivially")
    elif bpm == 2:
        for idx in _sw_indices(s, bpm, m_max):
            if idx % 2 == 0 and idx > 0:
                ob.force_sw(Chamber.UNIQUE, idx, Mod2Class.zero(beta))
        k = 2 + m.signature // 8
        value = vb_w(s.minus_dr, k)
        if s.d - bpm <= 0:
            ob.force_sw(Chamber.UNIQUE, 0, value)
        elif not value.is_zero():
            ob.violate("sw_mod2/Unique/0", f"w_{k}(-D_R) = {value} but SW_R,0 has negative degree")
    else:
        ob.note(f"b_plus_minus = {bpm}: no vanishing clause applies")
    return ob.build()


def psc_rule(m: RealFourManifold, s: RealSpinC, zero_chamber=None, m_max: int = 8) -> RuleOutcome:
    """Vanishing forced by an invariant metric of positive scalar curvature.

    ``zero_chamber`` names the chamber containing the zero perturbation when
    b_plus_minus = 1; pass ``"wall"`` if it lies on the wall.
    """
    ob = OutcomeBuilder(PSC, s, f"{m.name}/{s.name}")
    if not m.psc_invariant_metric:
        ob.note("no invariant positive scalar curvature metric declared")
        return ob.build()
    beta = s.beta
    bpm = m.b_plus_minus

    def kill(chambers):
        for ch in chambers:
            for idx in _sw_indices(s, bpm, m_max):
                ob.force_sw(ch, idx, Mod2Class.zero(beta))
        if s.d % 2 == 0:
            ob.force("sw_int", _zero_int(beta), s.sw_int)
        else:
            ob.note("integer invariant undefined for odd d")

    if bpm > 1:
        kill([Chamber.UNIQUE])
    elif bpm == 1:
        if zero_chamber is None:
            ob.note("zero-perturbation chamber not declared; nothing forced")
        elif zero_chamber == "wall":
            kill([Chamber.POSITIVE, Chamber.NEGATIVE])
        else:
            kill([Chamber(zero_chamber)])
    elif m.b1_minus == 0 and s.is_spin:
        ob.force("deg_r", UpToSignClass(1, beta), s.deg_r)
    else:
        ob.note("b_plus_minus = 0 without a spin structure and b1_minus = 0: nothing forced")
    return ob.build()


def degree_relations(m: RealFourManifold, s: RealSpinC) -> RuleOutcome:
    ob = OutcomeBuilder(DEGREE, s, f"{m.name}/{s.name}")
    beta = s.beta
    bpm = m.b_plus_minus
    d = s.d

    if bpm == 0:
        if d > 0:
            ob.violate("d", f"d = {d} > 0 is impossible when b_plus_minus = 0")
        for j in range(max(-d, -1) + 1, beta + 1):
            w = vb_w(s.minus_dr, j)
            if j >= 1 and not w.is_zero():
                ob.violate(f"minus_dr/w{j}", f"w_{j}(-D_R) = {w} must vanish for j > -d = {-d}")

    if not s.w1_dr_zero:
        ob.note("w_1(D_R) != 0 in the stored splitting: integer relations skipped")
        return ob.build()

    if d % 2:
        ob.force("deg_r", _zero_int(beta), s.deg_r)
    elif bpm > 0:
        if s.sw_int is not None:
            ob.force("deg_r", UpToSignClass(s.sw_int.rep * 2), s.deg_r)
        elif s.deg_r is not None:
            rep = s.deg_r.rep
            if all(c % 2 == 0 for c in rep.coeffs.values()):
                ob.force("sw_int", UpToSignClass(IntClass(beta, {k: c // 2 for k, c in rep.coeffs.items()})), None)
            else:
                ob.violate("deg_r", f"deg_r = ±({rep}) must be twice the integer invariant")
        else:
            ob.relate("deg_r = 2 * sw_int")

    if bpm == 0:
        target = vb_w(s.minus_dr, -d) if d <= 0 else Mod2Class.zero(beta)
        if s.deg_r is not None:
            if reduce_mod2(s.deg_r.rep) != target:
                ob.violate("deg_r", f"deg_r mod 2 = {reduce_mod2(s.deg_r.rep)}, expected w_{-d}(-D_R) = {target}")
        else:
            ob.relate(f"deg_r = {target} (mod 2)")

    # integer invariant against SW_R,0
    if d % 2 == 0 and bpm > 0:
        chambers = allowed_chambers(bpm)
        sw_int = s.sw_int if s.sw_int is not None else ob.assignments.get("sw_int")
        if sw_int is not None:
            parity = reduce_mod2(sw_int.rep)
            for ch in chambers:
                if d - bpm <= 0:
                    ob.force_sw(ch, 0, parity)
        else:
            for ch in chambers:
                if s.sw(0, ch) is not None:
                    ob.relate(f"sw_int = {s.sw(0, ch)} (mod 2)")
    return ob.build()


def odd_vanishing(s: RealSpinC, b_plus_minus: int, m_max: int = 8) -> RuleOutcome:
    """Odd d in the w_1 = 0 splitting: odd-index classes vanish; with
    b_plus_minus = 1 and d > 0 the odd classes of D_R vanish too."""
    ob = OutcomeBuilder(ODD_VANISHING, s, s.name)
    if s.d % 2 == 0 or not s.w1_dr_zero:
        ob.note("needs odd d in the w_1(D_R) = 0 splitting")
        return ob.build()
    for ch in (s.chambers() or list(allowed_chambers(b_plus_minus))):
        for idx in _sw_indices(s, b_plus_minus, m_max):
            if idx % 2:
                ob.force_sw(ch, idx, Mod2Class.zero(s.beta))
    if b_plus_minus == 1 and s.d > 0:
        w_d = total_inverse(s.minus_dr.total)
        for j in range(1, s.beta + 1, 2):
            if not w_d.piece(j).is_zero():
                ob.violate(f"minus_dr/w{j}", f"w_{j}(D_R) must vanish for odd d > 0 with b_plus_minus = 1")
    return ob.build()
