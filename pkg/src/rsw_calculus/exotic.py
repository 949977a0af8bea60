"""Admissibility, nonzero-degree witnesses, and exotic families A_n = 3^(rn) A_0."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .model import RealFourManifold, RealSpinC


class AdmissibleCase(str, enum.Enum):
    SYMPLECTIC = "Symplectic"
    SPIN_ZERO_SIG = "SpinZeroSig"
    ODD_SW = "OddSW"
    CP2BAR = "CP2bar"
    SWAP_DOUBLE = "SwapDouble"


@dataclass(frozen=True)
class AdmissibilityWitness:
    case: AdmissibleCase
    witness_spinc: str
    notes: tuple = ()

    def to_json(self) -> dict:
        return {"case": self.case.value, "witness_spinc": self.witness_spinc, "notes": list(self.notes)}


@dataclass(frozen=True)
class AdmissibilityReport:
    manifold: str
    witness: Optional[AdmissibilityWitness]
    reasons: tuple = ()

    @property
    def admissible(self) -> bool:
        return self.witness is not None

    def to_json(self) -> dict:
        return {
            "manifold": self.manifold,
            "admissible": self.admissible,
            "witness": None if self.witness is None else self.witness.to_json(),
            "reasons": list(self.reasons),
        }


def _ordinary_sw_odd(m: RealFourManifold, s: RealSpinC) -> Optional[bool]:
    if s.ordinary_sw_int is not None:
        return s.ordinary_sw_int % 2 == 1
    if s.ordinary_sw_mod2 is not None and m.b1_total == 0:
        deg0 = 2 * s.d - m.b_plus_total - 1
        if deg0 % 2 == 0 and deg0 >= 0 and deg0 // 2 in s.ordinary_sw_mod2:
            return not s.ordinary_sw_mod2[deg0 // 2].is_zero()
    return None


def _odd_sw_spinc(m: RealFourManifold) -> tuple[Optional[RealSpinC], list[str]]:
    why = []
    if (m.b_plus_total - m.b1_total) % 4 != 3:
        return None, [f"b+ - b1 = {m.b_plus_total - m.b1_total} is not 3 mod 4"]
    target = (m.b_plus_total - m.b1_total + 1) // 2
    for s in m.spinc:
        if s.d != target or s.d != m.b_plus_minus:
            why.append(f"{s.name}: d = {s.d}, need d = (b+ - b1 + 1)/2 = {target} = b_plus_minus = {m.b_plus_minus}")
            continue
        odd = _ordinary_sw_odd(m, s)
        if odd is None:
            why.append(f"{s.name}: ordinary SW unknown")
        elif not odd:
            why.append(f"{s.name}: ordinary SW is even")
        else:
            return s, []
    if not m.spinc:
        why.append("no spin^c structure declared")
    return None, why


def check_admissible(m: RealFourManifold) -> AdmissibilityReport:
    reasons: list[str] = []
    if m.b1_minus != 0:
        reasons.append(f"b1_minus = {m.b1_minus}, must be 0")
    if not m.has_nonisolated_fixed_point:
        reasons.append("needs a non-isolated fixed point")
    if reasons:
        return AdmissibilityReport(m.name, None, tuple(reasons))

    # (1) anti-invariant symplectic form; it reduces to (3)
    if m.symplectic_antiinvariant:
        if (m.b_plus_total - m.b1_total) % 4 == 3:
            s, _ = _odd_sw_spinc(m)
            target = (m.b_plus_total - m.b1_total + 1) // 2
            name = s.name if s is not None else next((t.name for t in m.spinc if t.d == target), "canonical")
            return AdmissibilityReport(m.name, AdmissibilityWitness(
                AdmissibleCase.ODD_SW, name,
                ("symplectic origin", "b+ - b1 = 3 mod 4", "canonical class has odd SW and d = b_plus_minus"),
            ))
        reasons.append("(1) symplectic but b+ - b1 is not 3 mod 4")
    else:
        reasons.append("(1) no anti-invariant symplectic form declared")

    # (2) preserved spin structure, signature 0
    spin = [s for s in m.spinc if s.is_spin]
    if spin and m.signature == 0:
        return AdmissibilityReport(m.name, AdmissibilityWitness(
            AdmissibleCase.SPIN_ZERO_SIG, spin[0].name, ("Real spin structure", "b1_minus = 0", "signature = 0"),
        ))
    reasons.append("(2) " + ("signature is not 0" if spin else "no Real spin structure"))

    # (3) odd ordinary invariant with zero-dimensional moduli spaces
    s, why = _odd_sw_spinc(m)
    if s is not None:
        return AdmissibilityReport(m.name, AdmissibilityWitness(
            AdmissibleCase.ODD_SW, s.name, ("ordinary SW odd", "b+ - b1 = 3 mod 4", "d = (b+ - b1 + 1)/2 = b_plus_minus"),
        ))
    reasons.extend("(3) " + w for w in why)

    # (4) conjugate projective plane with b_plus_minus = 0
    if (m.b1_total, m.b_plus_total, m.signature, m.b_plus_minus) == (0, 0, -1, 0):
        c = [t for t in m.spinc if t.c_squared == -1]
        if c:
            return AdmissibilityReport(m.name, AdmissibilityWitness(
                AdmissibleCase.CP2BAR, c[0].name, ("homology of CP2bar", "b_plus_minus = 0", "c^2 = -1"),
            ))
        reasons.append("(4) no spin^c structure with c^2 = -1")
    else:
        reasons.append("(4) not the homology of CP2bar with b_plus_minus = 0")

    # (5) N # N with the swap: negative definite, b1 = 0, c^2 = -b2
    if m.b1_total == 0 and m.b_plus_total == 0 and m.signature % 2 == 0 and m.fixed_set_connected:
        c = [t for t in m.spinc if t.c_squared == m.signature and t.d == 0]
        if c:
            return AdmissibilityReport(m.name, AdmissibilityWitness(
                AdmissibleCase.SWAP_DOUBLE, c[0].name,
                ("negative definite with b1 = 0", "c^2 = -b2", "connected fixed set of a swap"),
            ))
        reasons.append("(5) no spin^c structure with c^2 = -b2")
    else:
        reasons.append("(5) not the shadow of a swapped double N # N")
    return AdmissibilityReport(m.name, None, tuple(reasons))


@dataclass(frozen=True)
class DegreeWitness:
    spinc: str
    parity: str  # "odd" or "even-nonzero"
    note: str

    def to_json(self) -> dict:
        return {"spinc": self.spinc, "parity": self.parity, "note": self.note}


def nonzero_degree_witness(m: RealFourManifold, w: AdmissibilityWitness) -> DegreeWitness:
    report = check_admissible(m)
    if report.witness is None or report.witness.case != w.case:
        raise ValueError(f"{m.name}: witness case {w.case.value} does not hold")
    s = m.spinc_named(w.witness_spinc) if any(t.name == w.witness_spinc for t in m.spinc) else None
    if w.case in (AdmissibleCase.SPIN_ZERO_SIG, AdmissibleCase.CP2BAR):
        return DegreeWitness(w.witness_spinc, "odd", "d = b_plus_minus = 0, so deg_r = w_0(-D_R) = 1 mod 2")
    if w.case == AdmissibleCase.SWAP_DOUBLE:
        return DegreeWitness(w.witness_spinc, "odd", "swap of N # N with b+ = d = 0 has deg_r = 1")
    if m.b_plus_minus == 0:
        return DegreeWitness(w.witness_spinc, "odd", "d = b_plus_minus = 0, so deg_r = 1 mod 2")
    if s is not None and s.d % 2:
        raise ValueError(f"{m.name}: odd d cannot witness a nonzero degree")
    return DegreeWitness(w.witness_spinc, "even-nonzero", "deg_r = 2 sw_int with sw_int = SW_R,0 = 1 mod 2")


@dataclass(frozen=True)
class ExoticFamilyReport:
    r: int
    a0: tuple
    rows: dict = field(default_factory=dict)
    distinct: bool = True
    bands: bool = True
    witness_collisions: tuple = ()

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "a0": list(self.a0),
            "rows": {str(n): sorted(v) for n, v in sorted(self.rows.items())},
            "distinct": self.distinct,
            "bands": self.bands,
            "witness_collisions": [list(c) for c in self.witness_collisions],
        }

    def table(self) -> str:
        ns = sorted(self.rows)
        cells = [(str(n), ",".join(str(a) for a in sorted(self.rows[n])),
                  str(min(self.rows[n + 1]) - max(self.rows[n])) if n + 1 in self.rows else "-") for n in ns]
        widths = [max(len(h), *(len(c[i]) for c in cells)) for i, h in enumerate(("n", "A_n", "band-gap"))]
        lines = ["  ".join(h.ljust(w) for h, w in zip(("n", "A_n", "band-gap"), widths)).rstrip()]
        for c in cells:
            lines.append("  ".join(x.ljust(w) for x, w in zip(c, widths)).rstrip())
        lines.append(f"r = {self.r}; distinct = {str(self.distinct).lower()}; bands = {str(self.bands).lower()}")
        return "\n".join(lines) + "\n"


def exotic_family(a0: Iterable[int], n_max: int) -> ExoticFamilyReport:
    base = sorted(set(a0))
    if not base:
        raise ValueError("A_0 must be nonempty")
    if any(a <= 0 for a in base):
        raise ValueError("A_0 holds absolute degrees; they must be positive")
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    top = max(base)
    r = 1
    while 3 ** r <= top:
        r += 1
    rows = {n: frozenset(3 ** (r * n) * a for a in base) for n in range(n_max + 1)}

    collisions = []
    seen: dict[int, int] = {}
    for n in range(n_max + 1):
        for a in sorted(rows[n]):
            if a in seen:
                collisions.append((seen[a], n, a))
            else:
                seen[a] = n
    bands = all(max(rows[n]) < min(rows[n + 1]) for n in range(n_max))
    return ExoticFamilyReport(r=r, a0=tuple(base), rows=rows, distinct=not collisions,
                              bands=bands, witness_collisions=tuple(collisions))
