"""Ordinary mod 2 invariants from Real ones by localization on the Jacobian.

The Real structures on a spin^c structure with b1_minus = 0 are labelled by
bit-vectors eps in {0,1}^b1.  The fixed point eps pushes forward to
prod_i (v_i + eps_i u), and the ordinary class SW_m is the u^0 term of

    u^(2m - Delta) * binom(m - d, delta - m) * sum_eps (v + eps u) SW_R(eps).

Negative powers of u must cancel, which gives linear relations over Z2
among the SW_R(eps).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping, Optional

from ..charclass import binom_mod2
from ..model import RealFourManifold, RealSpinC
from ..ring import LaurentClass, Mod2Class, degree, gens_from_mask
from .outcome import OutcomeBuilder, RuleOutcome

LOCALIZATION = "localization"
LOCALIZATION_B1_ZERO = "localization-b1-zero"


def localize_b1zero(b_plus_total: int, b_plus_inv: int, sw_r: int) -> int:
    """SW mod 2 = binom(2 b+^inv, b+ - 1) * SW_R mod 2, for b1 = 0."""
    return binom_mod2(2 * b_plus_inv, b_plus_total - 1) * (sw_r % 2)


def eps_label(eps: tuple[int, ...]) -> str:
    return "SW_R[" + "".join(str(e) for e in eps) + "]"


def structures(b1: int) -> list[tuple[int, ...]]:
    return list(itertools.product((0, 1), repeat=b1))


def _gf2_reduce(rows: list[int], ncols: int) -> list[int]:
    """Reduced row echelon form of GF(2) rows stored as int bitmasks."""
    rows = [r for r in rows if r]
    pivots = []
    out: list[int] = []
    for col in range(ncols):
        bit = 1 << col
        idx = next((i for i, r in enumerate(rows) if r & bit), None)
        if idx is None:
            continue
        piv = rows.pop(idx)
        rows = [r ^ piv if r & bit else r for r in rows]
        out = [r ^ piv if r & bit else r for r in out]
        out.append(piv)
        pivots.append(col)
    return out


@dataclass
class LocalizationResult:
    m: int
    delta: int
    Delta: int
    coefficient: int
    # T (bitmask over b1 generators) -> (u-exponent, set of eps indices summed)
    terms: dict = field(default_factory=dict)
    relations: list = field(default_factory=list)  # reduced GF(2) rows over eps indices
    forced_zero: list = field(default_factory=list)
    laurent: Optional[LaurentClass] = None
    ordinary: Optional[Mod2Class] = None
    inconsistent: bool = False


def localization_expression(b1: int, b_plus_total: int, d: int, b_plus_minus: int, m: int,
                            values: Optional[Mapping[tuple, int]] = None) -> LocalizationResult:
    eps_list = structures(b1)
    index = {e: i for i, e in enumerate(eps_list)}
    values = dict(values or {})
    Delta = 2 * d - b_plus_total + b1 - 1
    delta = d - b_plus_minus
    coef = binom_mod2(m - d, delta - m) if delta - m >= 0 else 0
    res = LocalizationResult(m=m, delta=delta, Delta=Delta, coefficient=coef)
    if not coef:
        res.laurent = LaurentClass(b1)
        res.ordinary = Mod2Class.zero(b1)
        return res

    full = (1 << b1) - 1
    for T in range(1 << b1):
        # v_T u^(b1-|T|) picks eps_i = 1 for every i outside T
        outside = full & ~T
        members = 0
        for e, i in index.items():
            if all(e[k] for k in range(b1) if outside >> k & 1):
                members |= 1 << i
        res.terms[T] = (2 * m - Delta + b1 - degree(T), members)

    rows = [mem for (exp, mem) in res.terms.values() if exp < 0]
    res.relations = _gf2_reduce(rows, len(eps_list))
    for r in res.relations:
        if r & (r - 1) == 0:
            res.forced_zero.append(eps_list[r.bit_length() - 1])

    if all(e in values for e in eps_list):
        by_exp: dict[int, set] = {}
        for T, (exp, mem) in res.terms.items():
            val = 0
            for e, i in index.items():
                if mem >> i & 1:
                    val ^= values[e] & 1
            if val:
                by_exp.setdefault(exp, set()).add(T)
        res.laurent = LaurentClass(b1, {k: Mod2Class(b1, frozenset(ts)) for k, ts in by_exp.items()})
        res.ordinary = res.laurent.terms.get(0, Mod2Class.zero(b1))
        res.inconsistent = not res.laurent.negative_part().is_zero()
    return res


def _row_text(row: int, eps_list) -> str:
    names = [eps_label(eps_list[i]) for i in range(len(eps_list)) if row >> i & 1]
    if len(names) == 1:
        return f"{names[0]} = 0"
    if len(names) == 2:
        return f"{names[0]} = {names[1]}"
    return " + ".join(names) + " = 0"


def localize_general(m: RealFourManifold, s: RealSpinC,
                     per_structure_swr: Optional[Mapping[tuple, int]] = None, mm: int = 0) -> RuleOutcome:
    """Ordinary SW_mm mod 2 from the Real invariants of every Real structure.

    ``per_structure_swr`` maps eps tuples to 0/1; missing structures are kept
    as unknowns and the outcome lists the relations they must satisfy.
    """
    if m.b1_minus != 0:
        raise ValueError("localization needs b1_minus = 0")
    if m.b_plus_minus <= 0:
        raise ValueError("localization needs b_plus_minus > 0")
    b1 = m.b1_total
    eps_list = structures(b1)
    ob = OutcomeBuilder(LOCALIZATION, None, f"{m.name}/{s.name}")
    res = localization_expression(b1, m.b_plus_total, s.d, m.b_plus_minus, mm, per_structure_swr)
    ob.note(f"Delta = {res.Delta}, delta = {res.delta}, binomial factor = {res.coefficient}")
    if not res.coefficient:
        ob.force(f"ordinary_sw_mod2/{mm}", Mod2Class.zero(b1), _stored_ordinary(s, mm))
        return ob.build()

    for r in res.relations:
        ob.relate(_row_text(r, eps_list))
    known = dict(per_structure_swr or {})
    if res.laurent is not None:
        ob.assignments["evidence/laurent"] = res.laurent
        if res.inconsistent:
            ob.violate("sw_mod2", f"negative powers of u survive: {res.laurent.negative_part()}")
        else:
            ob.force(f"ordinary_sw_mod2/{mm}", res.ordinary, _stored_ordinary(s, mm))
    else:
        for eps in res.forced_zero:
            ob.assignments[eps_label(eps)] = 0
        # u^0 coefficient as a symbolic expression, after using the relations
        parts = []
        for T, (exp, mem) in sorted(res.terms.items()):
            if exp != 0:
                continue
            mem = _reduce_by(mem, res.relations)
            names = [eps_label(eps_list[i]) for i in range(len(eps_list)) if mem >> i & 1]
            if not names:
                continue
            mono = "".join(f"v{g}" for g in gens_from_mask(T)) or "1"
            summ = " + ".join(names)
            parts.append(f"({summ})" + ("" if mono == "1" else f"*{mono}") if len(names) > 1
                         else names[0] + ("" if mono == "1" else f"*{mono}"))
        ob.relate(f"SW_{mm} = " + (" + ".join(parts) if parts else "0"))
        for eps, val in known.items():
            ob.note(f"{eps_label(eps)} = {val} given; others unknown")
    return ob.build()


def _reduce_by(row: int, basis: list[int]) -> int:
    """Canonical representative of ``row`` modulo the span of ``basis``."""
    for b in basis:
        lead = b & -b
        if row & lead:
            row ^= b
    return row


def _stored_ordinary(s: RealSpinC, mm: int):
    if s.ordinary_sw_mod2 is None:
        return None
    return s.ordinary_sw_mod2.get(mm)
