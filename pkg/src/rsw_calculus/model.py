"""Numeric shadow of a 4-manifold with involution and its Real spin^c structures."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from types import MappingProxyType
from typing import Mapping, Optional

from .charclass import VirtualBundle, vb_w
from .ring import IntClass, Mod2Class, UpToSignClass, reduce_mod2


class InvalidSpinC(ValueError):
    pass


class Chamber(str, enum.Enum):
    POSITIVE = "Positive"
    NEGATIVE = "Negative"
    UNIQUE = "Unique"

    def __str__(self) -> str:
        return self.value


def allowed_chambers(b_plus_minus: int) -> tuple[Chamber, ...]:
    if b_plus_minus == 1:
        return (Chamber.POSITIVE, Chamber.NEGATIVE)
    return (Chamber.UNIQUE,)


@dataclass(frozen=True, order=True)
class Violation:
    rule: str
    locus: str
    message: str = ""

    def __str__(self) -> str:
        return f"[{self.rule}] {self.locus}: {self.message}" if self.message else f"[{self.rule}] {self.locus}"


def derive_d(c_squared: int, signature: int) -> int:
    diff = c_squared - signature
    if diff % 8:
        raise InvalidSpinC(f"c^2 - signature = {diff} is not divisible by 8")
    return diff // 8


@dataclass(frozen=True, eq=True)
class RealSpinC:
    name: str
    c_squared: int
    d: int
    is_spin: bool
    w1_dr_zero: bool
    minus_dr: VirtualBundle
    sw_mod2: Mapping = field(default_factory=dict)
    sw_int: Optional[UpToSignClass] = None
    deg_r: Optional[UpToSignClass] = None
    ordinary_sw_mod2: Optional[Mapping] = None
    ordinary_sw_int: Optional[int] = None

    def __post_init__(self):
        sw = {}
        for (ch, m), c in dict(self.sw_mod2).items():
            sw[(Chamber(ch), m)] = c
        object.__setattr__(self, "sw_mod2", MappingProxyType(sw))
        if self.ordinary_sw_mod2 is not None:
            object.__setattr__(self, "ordinary_sw_mod2", MappingProxyType(dict(self.ordinary_sw_mod2)))
        for attr in ("sw_int", "deg_r"):
            val = getattr(self, attr)
            if isinstance(val, IntClass):
                object.__setattr__(self, attr, UpToSignClass(val))

    __hash__ = None

    @property
    def beta(self) -> int:
        return self.minus_dr.beta

    def sw(self, m: int, chamber: Chamber = Chamber.UNIQUE) -> Optional[Mod2Class]:
        return self.sw_mod2.get((Chamber(chamber), m))

    def chambers(self) -> list[Chamber]:
        return sorted({ch for ch, _ in self.sw_mod2}, key=lambda c: c.value)

    def sw_series(self, chamber: Chamber = Chamber.UNIQUE) -> dict[int, Mod2Class]:
        return {m: c for (ch, m), c in self.sw_mod2.items() if ch == chamber}

    def with_sw(self, chamber: Chamber, series: Mapping[int, Mod2Class]) -> "RealSpinC":
        sw = {k: v for k, v in self.sw_mod2.items() if k[0] != chamber}
        for m, c in series.items():
            sw[(chamber, m)] = c
        return replace(self, sw_mod2=sw)

    def evolve(self, **changes) -> "RealSpinC":
        return replace(self, **changes)


@dataclass(frozen=True, eq=True)
class RealFourManifold:
    name: str
    b1_total: int
    b_plus_total: int
    signature: int
    b1_minus: int
    b_plus_minus: int
    has_nonisolated_fixed_point: bool
    fixed_set_connected: bool
    fixed_torus_selfint_zero: bool
    psc_invariant_metric: bool
    symplectic_antiinvariant: bool
    spinc: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "spinc", tuple(self.spinc))

    __hash__ = None

    @property
    def beta(self) -> int:
        return self.b1_minus

    @property
    def b_plus_inv(self) -> int:
        return self.b_plus_total - self.b_plus_minus

    @property
    def b1_inv(self) -> int:
        return self.b1_total - self.b1_minus

    @property
    def euler_characteristic(self) -> int:
        # b2 = 2 b+ - signature for a closed oriented 4-manifold
        return 2 - 2 * self.b1_total + 2 * self.b_plus_total - self.signature

    def spinc_named(self, name: str) -> RealSpinC:
        for s in self.spinc:
            if s.name == name:
                return s
        raise KeyError(f"{self.name} has no Real spin^c structure named {name!r}")

    def replace_spinc(self, s: RealSpinC) -> "RealFourManifold":
        out = [s if t.name == s.name else t for t in self.spinc]
        if s.name not in {t.name for t in self.spinc}:
            out.append(s)
        return replace(self, spinc=tuple(out))

    def evolve(self, **changes) -> "RealFourManifold":
        return replace(self, **changes)


def moduli_dimension(m: RealFourManifold, s: RealSpinC) -> int:
    return s.d - m.b_plus_minus + m.b1_minus


def sw_degree(m: RealFourManifold, s: RealSpinC, index: int) -> int:
    """Cohomological degree of SW_{R,index}."""
    return index - (s.d - m.b_plus_minus)


def integer_invariant_degree(m: RealFourManifold, s: RealSpinC) -> int:
    return m.b_plus_minus - s.d


def count_real_structures(m: RealFourManifold) -> int:
    if m.b1_minus > 0:
        raise NotImplementedError(
            "counting Real structures needs b1_minus = 0; otherwise the fixed set is not a finite set of points"
        )
    return 2 ** m.b1_total


def _check_class_degree(out, locus, rule, c, beta, deg):
    if c.beta != beta:
        out.append(Violation(rule, locus, f"class has beta={c.beta}, expected {beta}"))
        return
    if not c.is_zero() and not c.is_homogeneous(deg):
        out.append(Violation(rule, locus, f"class {c} is not homogeneous of degree {deg}"))


def validate_spinc(m: RealFourManifold, s: RealSpinC) -> list[Violation]:
    out: list[Violation] = []
    loc = f"{m.name}/{s.name}"
    beta = m.b1_minus
    try:
        d = derive_d(s.c_squared, m.signature)
        if d != s.d:
            out.append(Violation("index", f"{loc}/d", f"stored d={s.d}, (c^2 - signature)/8 = {d}"))
    except InvalidSpinC as exc:
        out.append(Violation("index", f"{loc}/c_squared", str(exc)))
    if s.is_spin:
        if s.c_squared != 0:
            out.append(Violation("spin", f"{loc}/c_squared", "a spin structure has c^2 = 0"))
        if m.signature % 16:
            out.append(Violation("spin", f"{loc}/is_spin", "spin 4-manifolds have signature divisible by 16"))
    if s.minus_dr.beta != beta:
        out.append(Violation("index-bundle", f"{loc}/minus_dr", f"bundle over beta={s.minus_dr.beta}, expected {beta}"))
    elif s.minus_dr.rank != -s.d:
        out.append(Violation("index-bundle", f"{loc}/minus_dr/rank", f"rank {s.minus_dr.rank}, expected -d = {-s.d}"))
    else:
        w1_zero = vb_w(s.minus_dr, 1).is_zero()
        if w1_zero != s.w1_dr_zero:
            out.append(Violation("index-bundle", f"{loc}/w1_dr_zero", f"flag {s.w1_dr_zero} but w1 is {'zero' if w1_zero else 'nonzero'}"))

    allowed = allowed_chambers(m.b_plus_minus)
    for (ch, idx), c in sorted(s.sw_mod2.items(), key=lambda kv: (kv[0][0].value, kv[0][1])):
        where = f"{loc}/sw_mod2/{ch.value}/{idx}"
        if ch not in allowed:
            out.append(Violation("chamber", where, f"chamber {ch.value} not allowed when b_plus_minus = {m.b_plus_minus}"))
        if idx < 0:
            out.append(Violation("degree", where, "index m must be nonnegative"))
            continue
        _check_class_degree(out, where, "degree", c, beta, sw_degree(m, s, idx))

    deg = integer_invariant_degree(m, s)
    for attr in ("sw_int", "deg_r"):
        val = getattr(s, attr)
        if val is not None:
            _check_class_degree(out, f"{loc}/{attr}", "degree", val.rep, beta, deg)

    if s.ordinary_sw_mod2 is not None:
        for idx, c in sorted(s.ordinary_sw_mod2.items()):
            where = f"{loc}/ordinary_sw_mod2/{idx}"
            _check_class_degree(out, where, "degree", c, m.b1_total,
                                2 * idx - (2 * s.d - m.b_plus_total - 1))

    if s.sw_int is not None and m.b_plus_minus != 1:
        sw0 = s.sw(0, Chamber.UNIQUE)
        if sw0 is not None and sw0.beta == s.sw_int.beta and reduce_mod2(s.sw_int.rep) != sw0:
            out.append(Violation("parity", f"{loc}/sw_int", f"sw_int mod 2 = {reduce_mod2(s.sw_int.rep)} but SW_R,0 = {sw0}"))
    return out


def validate(m: RealFourManifold) -> list[Violation]:
    out: list[Violation] = []
    for f in ("b1_total", "b_plus_total", "b1_minus", "b_plus_minus"):
        if getattr(m, f) < 0:
            out.append(Violation("betti", f"{m.name}/{f}", "must be nonnegative"))
    if m.b1_minus > m.b1_total:
        out.append(Violation("betti", f"{m.name}/b1_minus", "exceeds b1_total"))
    if m.b_plus_minus > m.b_plus_total:
        out.append(Violation("betti", f"{m.name}/b_plus_minus", "exceeds b_plus_total"))
    if m.spinc and not m.has_nonisolated_fixed_point:
        out.append(Violation("fixed-set", f"{m.name}/has_nonisolated_fixed_point",
                             "Real spin^c requires non-isolated fixed point"))
    names = [s.name for s in m.spinc]
    if len(set(names)) != len(names):
        out.append(Violation("spinc", f"{m.name}/spinc", "duplicate spin^c names"))
    for s in m.spinc:
        out.extend(validate_spinc(m, s))
    return out
