"""Exterior algebras H*(T^beta; Z2) and H*(T^beta; Z).

Monomials are bitmasks: generator ``v_i`` (1-based) is bit ``i - 1``.  A
monomial over Z is always read in strictly increasing generator order, which
fixes the sign convention for the integral classes.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping, Union

MAX_BETA = 63


class DimensionError(ValueError):
    """Raised when classes over different numbers of generators are combined."""


def _check_beta(beta: int) -> None:
    if not isinstance(beta, int) or beta < 0 or beta > MAX_BETA:
        raise DimensionError(f"beta must be an integer in [0, {MAX_BETA}], got {beta!r}")


def mask_from_gens(gens: Iterable[int], beta: int) -> int:
    mask = 0
    for g in gens:
        if not isinstance(g, int) or g < 1 or g > beta:
            raise ValueError(f"generator {g!r} outside 1..{beta}")
        bit = 1 << (g - 1)
        if mask & bit:
            raise ValueError(f"generator {g} repeated in monomial")
        mask |= bit
    return mask


def gens_from_mask(mask: int) -> tuple[int, ...]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def degree(mask: int) -> int:
    return bin(mask).count("1")


def _lex_key(mask: int) -> tuple[int, ...]:
    return gens_from_mask(mask)


def koszul_sign(a: int, b: int) -> int:
    """Sign of v_A * v_B -> v_{A u B} for disjoint A, B in increasing order.

    One transposition for every pair (x in A, y in B) with x > y.
    """
    inversions = 0
    for y in gens_from_mask(b):
        # elements of A strictly above y
        inversions += degree(a >> y)
    return -1 if inversions & 1 else 1


def _top_mask(beta: int) -> int:
    return (1 << beta) - 1


@dataclass(frozen=True)
class Mod2Class:
    """An element of H*(T^beta; Z2): a set of monomials, each with coefficient 1."""

    beta: int
    monomials: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        _check_beta(self.beta)
        mons = frozenset(self.monomials)
        top = _top_mask(self.beta)
        for m in mons:
            if not isinstance(m, int) or m < 0 or m & ~top:
                raise ValueError(f"monomial {m!r} is not a subset of 1..{self.beta}")
        object.__setattr__(self, "monomials", mons)

    @classmethod
    def zero(cls, beta: int) -> "Mod2Class":
        return cls(beta, frozenset())

    @classmethod
    def one(cls, beta: int) -> "Mod2Class":
        return cls(beta, frozenset({0}))

    @classmethod
    def gen(cls, beta: int, i: int) -> "Mod2Class":
        return cls(beta, frozenset({mask_from_gens([i], beta)}))

    @classmethod
    def from_subsets(cls, beta: int, subsets: Iterable[Iterable[int]]) -> "Mod2Class":
        mons: set[int] = set()
        for s in subsets:
            mask = mask_from_gens(s, beta)
            if mask in mons:
                raise ValueError(f"duplicate monomial {sorted(s)}")
            mons.add(mask)
        return cls(beta, frozenset(mons))

    @classmethod
    def scalar(cls, value: int, beta: int = 0) -> "Mod2Class":
        return cls.one(beta) if value % 2 else cls.zero(beta)

    def is_zero(self) -> bool:
        return not self.monomials

    def __bool__(self) -> bool:
        return bool(self.monomials)

    def degrees(self) -> set[int]:
        return {degree(m) for m in self.monomials}

    def homogeneous_degree(self):
        """Degree of a nonzero homogeneous class, ``None`` otherwise."""
        degs = self.degrees()
        return degs.pop() if len(degs) == 1 else None

    def is_homogeneous(self, k: int) -> bool:
        return all(degree(m) == k for m in self.monomials)

    def piece(self, k: int) -> "Mod2Class":
        return Mod2Class(self.beta, frozenset(m for m in self.monomials if degree(m) == k))

    def coefficient(self, gens: Iterable[int] = ()) -> int:
        return int(mask_from_gens(gens, self.beta) in self.monomials)

    def subsets(self) -> list[tuple[int, ...]]:
        return sorted((gens_from_mask(m) for m in self.monomials), key=lambda t: (len(t), t))

    def _same_beta(self, other: "Mod2Class") -> None:
        if not isinstance(other, Mod2Class):
            raise TypeError(f"expected Mod2Class, got {type(other).__name__}")
        if other.beta != self.beta:
            raise DimensionError(f"beta mismatch: {self.beta} vs {other.beta}")

    def __add__(self, other: "Mod2Class") -> "Mod2Class":
        self._same_beta(other)
        return Mod2Class(self.beta, self.monomials ^ other.monomials)

    __sub__ = __add__

    def __neg__(self) -> "Mod2Class":
        return self

    def __mul__(self, other):
        if isinstance(other, int):
            return self if other % 2 else Mod2Class.zero(self.beta)
        return cup(self, other)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Mod2Class":
        result = Mod2Class.one(self.beta)
        for _ in range(n):
            result = cup(result, self)
        return result

    def __repr__(self) -> str:
        return f"Mod2Class(beta={self.beta}, {self})"

    def __str__(self) -> str:
        if not self.monomials:
            return "0"
        parts = []
        for t in self.subsets():
            parts.append("".join(f"v{i}" for i in t) if t else "1")
        return " + ".join(parts)


def _freeze_int_coeffs(beta: int, coeffs: Mapping[int, int]) -> Mapping[int, int]:
    top = _top_mask(beta)
    clean = {}
    for m, c in coeffs.items():
        if not isinstance(m, int) or m < 0 or m & ~top:
            raise ValueError(f"monomial {m!r} is not a subset of 1..{beta}")
        if not isinstance(c, int):
            raise TypeError(f"coefficient {c!r} is not an integer")
        if c:
            clean[m] = c
    return MappingProxyType(clean)


@dataclass(frozen=True)
class IntClass:
    """An element of H*(T^beta; Z) with exact integer coefficients."""

    beta: int
    coeffs: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        _check_beta(self.beta)
        object.__setattr__(self, "coeffs", _freeze_int_coeffs(self.beta, dict(self.coeffs)))

    @classmethod
    def zero(cls, beta: int) -> "IntClass":
        return cls(beta, {})

    @classmethod
    def scalar(cls, value: int, beta: int = 0) -> "IntClass":
        return cls(beta, {0: value})

    @classmethod
    def from_terms(cls, beta: int, terms: Iterable[tuple[Iterable[int], int]]) -> "IntClass":
        coeffs: dict[int, int] = {}
        for gens, c in terms:
            mask = mask_from_gens(gens, beta)
            if mask in coeffs:
                raise ValueError(f"duplicate monomial {sorted(gens)}")
            coeffs[mask] = c
        return cls(beta, coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntClass):
            return NotImplemented
        return self.beta == other.beta and dict(self.coeffs) == dict(other.coeffs)

    def __hash__(self) -> int:
        return hash((self.beta, frozenset(self.coeffs.items())))

    def degrees(self) -> set[int]:
        return {degree(m) for m in self.coeffs}

    def is_homogeneous(self, k: int) -> bool:
        return all(degree(m) == k for m in self.coeffs)

    def coefficient(self, gens: Iterable[int] = ()) -> int:
        return self.coeffs.get(mask_from_gens(gens, self.beta), 0)

    def scalar_value(self) -> int:
        """The degree-0 coefficient; the whole class when beta == 0."""
        return self.coeffs.get(0, 0)

    def items_lex(self) -> list[tuple[tuple[int, ...], int]]:
        return sorted(((gens_from_mask(m), c) for m, c in self.coeffs.items()))

    def _same_beta(self, other: "IntClass") -> None:
        if not isinstance(other, IntClass):
            raise TypeError(f"expected IntClass, got {type(other).__name__}")
        if other.beta != self.beta:
            raise DimensionError(f"beta mismatch: {self.beta} vs {other.beta}")

    def __add__(self, other: "IntClass") -> "IntClass":
        self._same_beta(other)
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = out.get(m, 0) + c
        return IntClass(self.beta, out)

    def __neg__(self) -> "IntClass":
        return IntClass(self.beta, {m: -c for m, c in self.coeffs.items()})

    def __sub__(self, other: "IntClass") -> "IntClass":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return IntClass(self.beta, {m: c * other for m, c in self.coeffs.items()})
        return int_cup(self, other)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def __repr__(self) -> str:
        return f"IntClass(beta={self.beta}, {self})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for t, c in self.items_lex():
            mono = "".join(f"v{i}" for i in t)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


class UpToSignClass:
    """An integral class modulo an overall sign.

    The representative has a positive coefficient on its lexicographically
    smallest monomial.
    """

    __slots__ = ("rep",)

    def __init__(self, cls: Union[IntClass, int], beta: int = 0):
        if isinstance(cls, int):
            cls = IntClass.scalar(cls, beta)
        object.__setattr__(self, "rep", canonicalize(cls))

    def __setattr__(self, key, value):
        raise AttributeError("UpToSignClass is immutable")

    @property
    def beta(self) -> int:
        return self.rep.beta

    def __eq__(self, other) -> bool:
        if isinstance(other, UpToSignClass):
            return self.rep == other.rep
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("UpToSign", self.rep))

    def is_zero(self) -> bool:
        return self.rep.is_zero()

    def abs_scalar(self) -> int:
        return abs(self.rep.scalar_value())

    def __repr__(self) -> str:
        return f"UpToSignClass(±({self.rep}))"


def canonicalize(c: IntClass) -> IntClass:
    if c.is_zero():
        return c
    first_mask = min(c.coeffs, key=_lex_key)
    return -c if c.coeffs[first_mask] < 0 else c


def cup(a: Mod2Class, b: Mod2Class) -> Mod2Class:
    """Product in H*(T^beta; Z2); v_i^2 = 0 and no signs."""
    a._same_beta(b)
    acc: set[int] = set()
    for x in a.monomials:
        for y in b.monomials:
            if x & y:
                continue
            acc ^= {x | y}
    return Mod2Class(a.beta, frozenset(acc))


def int_cup(a: IntClass, b: IntClass) -> IntClass:
    """Graded-commutative product in H*(T^beta; Z) with Koszul signs."""
    a._same_beta(b)
    out: dict[int, int] = {}
    for x, cx in a.coeffs.items():
        for y, cy in b.coeffs.items():
            if x & y:
                continue
            m = x | y
            out[m] = out.get(m, 0) + koszul_sign(x, y) * cx * cy
    return IntClass(a.beta, out)


def pushforward_top(a: Union[Mod2Class, IntClass], beta: int = None) -> int:
    """Pair a class against the fundamental class of the torus."""
    if beta is not None and beta != a.beta:
        raise DimensionError(f"beta mismatch: {a.beta} vs {beta}")
    top = _top_mask(a.beta)
    if isinstance(a, Mod2Class):
        return int(top in a.monomials)
    return a.coeffs.get(top, 0)


def kunneth(a, b):
    """External product: ``b``'s generators are shifted past ``a``'s."""
    if type(a) is not type(b):
        raise TypeError("kunneth needs two classes of the same kind")
    shift = a.beta
    beta = a.beta + b.beta
    if isinstance(a, Mod2Class):
        return Mod2Class(beta, frozenset(x | (y << shift) for x in a.monomials for y in b.monomials))
    out: dict[int, int] = {}
    for x, cx in a.coeffs.items():
        for y, cy in b.coeffs.items():
            # every generator of a precedes every generator of b: no sign
            out[x | (y << shift)] = cx * cy
    return IntClass(beta, out)


def lift_left(a, beta_right: int):
    """``a`` placed on the first factor of a product torus."""
    one = Mod2Class.one(beta_right) if isinstance(a, Mod2Class) else IntClass.scalar(1, beta_right)
    return kunneth(a, one)


def lift_right(b, beta_left: int):
    one = Mod2Class.one(beta_left) if isinstance(b, Mod2Class) else IntClass.scalar(1, beta_left)
    return kunneth(one, b)


def reduce_mod2(a: IntClass) -> Mod2Class:
    return Mod2Class(a.beta, frozenset(m for m, c in a.coeffs.items() if c % 2))


def poincare_complement(mask: int, beta: int) -> int:
    return _top_mask(beta) & ~mask


class LaurentClass:
    """Finite sum of u^k * c_k with c_k in H*(T^beta; Z2), k any integer."""

    __slots__ = ("beta", "_terms")

    def __init__(self, beta: int, terms: Mapping[int, Mod2Class] = None):
        _check_beta(beta)
        clean = {}
        for k, c in (terms or {}).items():
            if not isinstance(k, int):
                raise TypeError(f"u-exponent {k!r} is not an integer")
            if c.beta != beta:
                raise DimensionError(f"beta mismatch: {c.beta} vs {beta}")
            if not c.is_zero():
                clean[k] = c
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "_terms", MappingProxyType(clean))

    def __setattr__(self, key, value):
        raise AttributeError("LaurentClass is immutable")

    @property
    def terms(self) -> Mapping[int, Mod2Class]:
        return self._terms

    @classmethod
    def from_class(cls, c: Mod2Class, exponent: int = 0) -> "LaurentClass":
        return cls(c.beta, {exponent: c})

    @classmethod
    def u_power(cls, beta: int, k: int) -> "LaurentClass":
        return cls(beta, {k: Mod2Class.one(beta)})

    def is_zero(self) -> bool:
        return not self._terms

    def min_exponent(self):
        return min(self._terms) if self._terms else None

    def negative_part(self) -> "LaurentClass":
        return LaurentClass(self.beta, {k: c for k, c in self._terms.items() if k < 0})

    def total_degrees(self) -> set[int]:
        return {k + d for k, c in self._terms.items() for d in c.degrees()}

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentClass):
            return NotImplemented
        return self.beta == other.beta and dict(self._terms) == dict(other._terms)

    def __hash__(self) -> int:
        return hash((self.beta, frozenset(self._terms.items())))

    def __add__(self, other: "LaurentClass") -> "LaurentClass":
        if other.beta != self.beta:
            raise DimensionError(f"beta mismatch: {self.beta} vs {other.beta}")
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out[k] + c if k in out else c
        return LaurentClass(self.beta, out)

    def __mul__(self, other: "LaurentClass") -> "LaurentClass":
        return laurent_mul(self, other)

    def __repr__(self) -> str:
        if not self._terms:
            return "LaurentClass(0)"
        parts = [f"u^{k}*({c})" for k, c in sorted(self._terms.items())]
        return f"LaurentClass(beta={self.beta}, {' + '.join(parts)})"


def laurent_mul(a: LaurentClass, b: LaurentClass) -> LaurentClass:
    if a.beta != b.beta:
        raise DimensionError(f"beta mismatch: {a.beta} vs {b.beta}")
    out: dict[int, Mod2Class] = {}
    for i, x in a.terms.items():
        for j, y in b.terms.items():
            p = cup(x, y)
            out[i + j] = out[i + j] + p if i + j in out else p
    return LaurentClass(a.beta, out)


def laurent_coeff(a: LaurentClass, k: int) -> Mod2Class:
    return a.terms.get(k, Mod2Class.zero(a.beta))
