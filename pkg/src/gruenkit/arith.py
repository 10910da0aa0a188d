"""Exact integer number theory used throughout the package.

Everything here works on Python ints, so results are exact at any size.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


class DomainError(ValueError):
    """An argument lies outside the domain of the requested operation."""


def is_prime(n: int) -> bool:
    """Deterministic trial division."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def require_prime(n: int, name: str = "n") -> None:
    if not isinstance(n, int) or not is_prime(n):
        raise DomainError(f"{name}={n!r} is not a prime")


def prime_factors(n: int) -> dict[int, int]:
    """Factor a small positive integer by trial division, as {prime: exponent}."""
    if n < 1:
        raise DomainError(f"cannot factor {n}")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def multiplicative_order(a: int, n: int) -> int:
    """Least t >= 1 with a**t == 1 (mod n)."""
    if n < 2:
        raise DomainError(f"modulus must be >= 2, got {n}")
    a %= n
    if math.gcd(a, n) != 1:
        raise DomainError(f"{a} is not a unit modulo {n}")
    t, x = 1, a
    while x != 1:
        x = x * a % n
        t += 1
    return t


def ell_adic_valuation(x: int, ell: int) -> int:
    """Exponent of the exact power of ``ell`` dividing ``x``."""
    if x == 0:
        raise DomainError("valuation of 0 is infinite")
    if ell < 2:
        raise DomainError(f"ell must be a prime, got {ell}")
    x = abs(x)
    v = 0
    while x % ell == 0:
        x //= ell
        v += 1
    return v


@dataclass(frozen=True)
class PrimePower:
    """The size q = p**f of a finite field."""

    p: int
    f: int = 1

    def __post_init__(self) -> None:
        require_prime(self.p, "p")
        if not isinstance(self.f, int) or self.f < 1:
            raise DomainError(f"f must be a positive integer, got {self.f!r}")

    @property
    def q(self) -> int:
        return self.p**self.f

    @classmethod
    def from_q(cls, q: int) -> PrimePower:
        factors = prime_factors(q) if q > 1 else {}
        if len(factors) != 1:
            raise DomainError(f"{q} is not a prime power")
        ((p, f),) = factors.items()
        return cls(p, f)

    def __str__(self) -> str:
        return str(self.q) if self.f == 1 else f"{self.p}^{self.f}"


def _as_prime_power(q: PrimePower | int) -> PrimePower:
    return q if isinstance(q, PrimePower) else PrimePower.from_q(q)


def gl_order(n: int, q: PrimePower | int) -> int:
    """|GL_n(F_q)| = prod_{j<n} (q^n - q^j)."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    qq = _as_prime_power(q).q
    qn = qq**n
    out = 1
    for j in range(n):
        out *= qn - qq**j
    return out


def m_ell(p: int, f: int, ell: int) -> int:
    """Least m >= 1 with p**(f*m) == 1 (mod ell)."""
    require_prime(p, "p")
    require_prime(ell, "ell")
    if ell == p:
        raise DomainError(f"ell must differ from the characteristic p={p}")
    if f < 1:
        raise DomainError(f"f must be >= 1, got {f}")
    return multiplicative_order(pow(p, f, ell), ell)


def min_nu(m: int, m_ell: int, ell: int) -> int:
    """Least nu >= 0 with ell**nu > m / m_ell, decided in integers."""
    if m < 1 or m_ell < 1:
        raise DomainError(f"m and m_ell must be positive, got m={m}, m_ell={m_ell}")
    if ell < 2:
        raise DomainError(f"ell must be a prime, got {ell}")
    nu, power = 0, 1
    while power * m_ell <= m:
        power *= ell
        nu += 1
    return nu
