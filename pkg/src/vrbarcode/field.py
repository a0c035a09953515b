"""Prime field coefficients and packed column entries."""

from __future__ import annotations

from typing import NamedTuple

COEFFICIENT_BITS = 16
INDEX_BITS = 64 - COEFFICIENT_BITS
MAX_PACKED_INDEX = (1 << INDEX_BITS) - 1


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


class PrimeField:
    """The field F_p for a prime ``p < 2**16`` with a table of inverses."""

    def __init__(self, p: int):
        if not isinstance(p, int) or isinstance(p, bool):
            raise TypeError("modulus must be an integer")
        if not (2 <= p < 1 << COEFFICIENT_BITS) or not is_prime(p):
            raise ValueError(f"modulus must be prime and below 2^16, got {p}")
        self.p = p
        # inverse[0] is a placeholder so that inverse[a] lines up with a
        inverse = [0, 1]
        for a in range(2, p):
            inverse.append(-(p // a) * inverse[p % a] % p)
        self.inverse = inverse
        for a in range(1, p):
            if a * inverse[a] % p != 1:  # pragma: no cover - table sanity
                raise ArithmeticError(f"bad inverse table entry for {a} mod {p}")

    @property
    def inverses(self) -> list[int]:
        """Inverses of 1, ..., p - 1 in order."""
        return self.inverse[1:]

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def neg(self, a: int) -> int:
        return -a % self.p

    def mul(self, a: int, b: int) -> int:
        return a * b % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError("zero has no inverse")
        return self.inverse[a % self.p]

    def fold_sign(self, c: int, sign: int) -> int:
        """Coefficient ``sign * c`` normalized into ``[0, p)``."""
        return c % self.p if sign > 0 else -c % self.p

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"


def make_field(p: int) -> PrimeField:
    return PrimeField(p)


class PackedEntry(NamedTuple):
    """A column entry: simplex index, coefficient, and cached diameter."""

    index: int
    coefficient: int
    diameter: float


def pack(index: int, coefficient: int) -> int:
    """Pack an index and a coefficient into one 64-bit word."""
    if not 0 <= index <= MAX_PACKED_INDEX:
        raise OverflowError(f"simplex index {index} does not fit in {INDEX_BITS} bits")
    if not 0 <= coefficient < 1 << COEFFICIENT_BITS:
        raise ValueError(f"coefficient {coefficient} does not fit in {COEFFICIENT_BITS} bits")
    return (index << COEFFICIENT_BITS) | coefficient


def unpack(word: int) -> tuple[int, int]:
    return word >> COEFFICIENT_BITS, word & ((1 << COEFFICIENT_BITS) - 1)
