"""Prime-field arithmetic and the base-p combinatorics behind divided powers.

Binomial coefficients modulo p are computed digit by digit (Lucas), so no
factorial is ever formed; factorial valuations use Legendre's digit-sum
formula.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

__all__ = [
    "Prime",
    "FpElement",
    "binom_mod_p",
    "lucas_binom",
    "factorial_p_valuation",
    "base_p_digits",
    "digit_sum",
]

PRIME_BOUND = 2**31


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # these bases are deterministic below 3.2e9
    for a in (2, 3, 5, 7):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Prime(int):
    """A prime characteristic ``2 <= p < 2**31``; behaves as a plain int."""

    def __new__(cls, p):
        if isinstance(p, Prime):
            return p
        if isinstance(p, bool) or int(p) != p:
            raise ValueError(f"characteristic must be an integer, got {p!r}")
        p = int(p)
        if not 2 <= p < PRIME_BOUND:
            raise ValueError(f"characteristic {p} outside [2, 2^31)")
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        return super().__new__(cls, p)

    def __repr__(self):
        return f"Prime({int(self)})"


@dataclass(frozen=True)
class FpElement:
    """An element of F_p stored as its canonical representative."""

    value: int
    p: Prime

    def __post_init__(self):
        object.__setattr__(self, "p", Prime(self.p))
        object.__setattr__(self, "value", int(self.value) % self.p)

    def _coerce(self, other):
        if isinstance(other, FpElement):
            if other.p != self.p:
                raise ValueError("elements of different prime fields")
            return other.value
        if isinstance(other, int):
            return other % self.p
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        return NotImplemented if v is NotImplemented else FpElement(self.value + v, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        return NotImplemented if v is NotImplemented else FpElement(self.value - v, self.p)

    def __rsub__(self, other):
        v = self._coerce(other)
        return NotImplemented if v is NotImplemented else FpElement(v - self.value, self.p)

    def __mul__(self, other):
        v = self._coerce(other)
        return NotImplemented if v is NotImplemented else FpElement(self.value * v, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return FpElement(-self.value, self.p)

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return FpElement(pow(self.value, n, self.p), self.p)

    def inverse(self) -> FpElement:
        if self.value == 0:
            raise ZeroDivisionError("0 has no inverse in F_p")
        return FpElement(pow(self.value, self.p - 2, self.p), self.p)

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return self * FpElement(v, self.p).inverse()

    def __eq__(self, other):
        if isinstance(other, FpElement):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, int(self.p)))

    def __int__(self):
        return self.value

    __index__ = __int__

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"{self.value} (mod {int(self.p)})"


def base_p_digits(n: int, p: int) -> list[int]:
    """Base-p digits of ``n``, least significant first; ``[0]`` for zero."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return [0]
    digits = []
    while n:
        n, r = divmod(n, p)
        digits.append(r)
    return digits


def digit_sum(n: int, p: int) -> int:
    return sum(base_p_digits(n, p))


def _small_binom(n: int, k: int, p: int) -> int:
    # n < p here, so every factor below is invertible mod p
    k = min(k, n - k)
    num = den = 1
    for i in range(k):
        num = num * (n - i) % p
        den = den * (i + 1) % p
    return num * pow(den, p - 2, p) % p


@lru_cache(maxsize=1 << 18)
def lucas_binom(n: int, k: int, p: int) -> int:
    """C(n, k) mod p as a plain int, via Lucas' theorem."""
    if k < 0 or n < 0 or k > n:
        return 0
    result = 1
    while k:
        n, ni = divmod(n, p)
        k, ki = divmod(k, p)
        if ki > ni:
            return 0
        result = result * _small_binom(ni, ki, p) % p
    return result


def binom_mod_p(n: int, k: int, p) -> FpElement:
    """Binomial coefficient C(n, k) reduced mod p (zero when k > n)."""
    p = Prime(p)
    if n < 0 or k < 0:
        raise ValueError("n and k must be non-negative")
    return FpElement(lucas_binom(n, k, int(p)), p)


def factorial_p_valuation(n: int, p) -> int:
    """Exponent of p in n!, i.e. (n - digit sum) / (p - 1)."""
    p = Prime(p)
    if n < 0:
        raise ValueError("n must be non-negative")
    return (n - digit_sum(n, p)) // (p - 1)
