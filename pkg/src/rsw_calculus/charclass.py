"""Stiefel-Whitney arithmetic for virtual bundles over a torus, and binomials.

Binomials accept any integer upper index.  Over Z2 the parity is computed by
Lucas digit comparison, reducing negative upper indices first with
binom(a, b) = (-1)^b * binom(b - a - 1, b).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .ring import DimensionError, Mod2Class, cup, degree, kunneth


def binom_int(a: int, b: int) -> int:
    """a(a-1)...(a-b+1)/b! for any integer a."""
    if b < 0:
        raise ValueError(f"binomial lower index must be nonnegative, got {b}")
    if a >= 0:
        return math.comb(a, b)
    sign = -1 if b % 2 else 1
    return sign * math.comb(b - a - 1, b)


def binom_mod2(a: int, b: int) -> int:
    if b < 0:
        raise ValueError(f"binomial lower index must be nonnegative, got {b}")
    if a < 0:
        # sign is irrelevant mod 2
        a = b - a - 1
    return int(a & b == b)


def binom_or_zero(a: int, b: int) -> int:
    """Like binom_int but a negative lower index yields 0."""
    return 0 if b < 0 else binom_int(a, b)


@dataclass(frozen=True)
class VirtualBundle:
    """Rank plus total Stiefel-Whitney class 1 + w_1 + ... + w_beta."""

    rank: int
    total: Mod2Class

    def __post_init__(self):
        if not isinstance(self.rank, int):
            raise TypeError("rank must be an integer")
        if self.total.coefficient(()) != 1:
            raise ValueError("total Stiefel-Whitney class must have constant term 1")

    @property
    def beta(self) -> int:
        return self.total.beta

    @classmethod
    def trivial(cls, rank: int, beta: int) -> "VirtualBundle":
        return cls(rank, Mod2Class.one(beta))

    def w(self, k: int) -> Mod2Class:
        return vb_w(self, k)

    def w_vector(self) -> list[Mod2Class]:
        return [self.total.piece(k) for k in range(self.beta + 1)]

    def __str__(self) -> str:
        return f"rank {self.rank}, w = {self.total}"


def total_inverse(total: Mod2Class) -> Mod2Class:
    if total.coefficient(()) != 1:
        raise ValueError("class is not invertible: constant term is 0")
    nil = total + Mod2Class.one(total.beta)
    # (1 + x)^{-1} = 1 + x + x^2 + ... ; x^k = 0 once k > beta
    result = Mod2Class.one(total.beta)
    power = Mod2Class.one(total.beta)
    for _ in range(total.beta):
        power = cup(power, nil)
        if power.is_zero():
            break
        result = result + power
    return result


def vb_invert(v: VirtualBundle) -> VirtualBundle:
    return VirtualBundle(-v.rank, total_inverse(v.total))


def vb_sum(v1: VirtualBundle, v2: VirtualBundle) -> VirtualBundle:
    if v1.beta != v2.beta:
        raise DimensionError(f"beta mismatch: {v1.beta} vs {v2.beta}")
    return VirtualBundle(v1.rank + v2.rank, cup(v1.total, v2.total))


def vb_w(v: VirtualBundle, k: int) -> Mod2Class:
    if k < 0 or k > v.beta:
        return Mod2Class.zero(v.beta)
    return v.total.piece(k)


def tensor_by_line(v: VirtualBundle, lam: Mod2Class) -> VirtualBundle:
    """Twist by the flat line bundle with w_1 = lam.

    w_k(L x V) = w_k(V) + (rank - k + 1) lam w_{k-1}(V).  Higher terms of the
    general formula carry lam^2 = 0, so this is exact.
    """
    if lam.beta != v.beta:
        raise DimensionError(f"beta mismatch: {lam.beta} vs {v.beta}")
    if not lam.is_homogeneous(1):
        raise ValueError("twisting class must be homogeneous of degree 1")
    if lam.is_zero():
        return v
    total = v.total
    for k in range(1, v.beta + 1):
        if (v.rank - k + 1) % 2:
            total = total + cup(lam, v.total.piece(k - 1))
    return VirtualBundle(v.rank, total)


def bundle_from_pieces(rank: int, pieces: dict[int, Mod2Class], beta: int) -> VirtualBundle:
    total = Mod2Class.one(beta)
    for k, c in pieces.items():
        if k <= 0:
            continue
        if not c.is_homogeneous(k):
            raise ValueError(f"w_{k} must be homogeneous of degree {k}")
        total = total + c
    return VirtualBundle(rank, total)


def odd_pieces_vanish(v: VirtualBundle) -> bool:
    return all(degree(m) % 2 == 0 for m in v.total.monomials)


def vb_external(v1: VirtualBundle, v2: VirtualBundle) -> VirtualBundle:
    """Pull both bundles back to the product torus and add them."""
    return VirtualBundle(v1.rank + v2.rank, kunneth(v1.total, v2.total))
