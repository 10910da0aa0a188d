"""Small finite fields F_q as lookup tables, and their regular representation over F_p.

An element of F_q = F_p[x]/(c(x)) is encoded as the integer sum a_k p^k of its
coordinates in the basis 1, x, ..., x^(f-1).
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .arith import DomainError, PrimePower, prime_factors, require_prime

# Conway polynomials, coefficients from the constant term up; all monic.
CONWAY_POLYNOMIALS: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (3, 4): (2, 0, 0, 2, 1),
    (5, 2): (2, 4, 1),
    (5, 3): (3, 3, 0, 1),
    (5, 4): (2, 4, 4, 0, 1),
    (7, 2): (3, 6, 1),
    (7, 3): (4, 0, 6, 1),
    (7, 4): (3, 4, 5, 0, 1),
}

MAX_TABLE_SIZE = 4096


def _poly_mulmod(a: list[int], b: list[int], c: tuple[int, ...], p: int) -> list[int]:
    f = len(c) - 1
    r = [0] * (2 * f - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                r[i + j] = (r[i + j] + x * y) % p
    for k in range(2 * f - 2, f - 1, -1):
        t = r[k]
        if t:
            for j in range(f + 1):
                r[k - f + j] = (r[k - f + j] - t * c[j]) % p
    return r[:f]


def is_primitive_polynomial(c: tuple[int, ...], p: int) -> bool:
    """True iff monic ``c`` is irreducible over F_p and x generates the unit group."""
    f = len(c) - 1
    if f < 1 or c[-1] != 1 or c[0] % p == 0:
        return False
    if f == 1:
        return _is_primitive_root(-c[0] % p, p)
    n = p**f - 1
    x = [0, 1] + [0] * (f - 2)
    one = [1] + [0] * (f - 1)

    def power(e: int) -> list[int]:
        result, base = one, x
        while e:
            if e & 1:
                result = _poly_mulmod(result, base, c, p)
            base = _poly_mulmod(base, base, c, p)
            e >>= 1
        return result

    if power(n) != one:
        return False
    return all(power(n // r) != one for r in prime_factors(n))


def _is_primitive_root(g: int, p: int) -> bool:
    if g % p == 0:
        return False
    return all(pow(g, (p - 1) // r, p) != 1 for r in prime_factors(p - 1)) if p > 2 else True


def _search_primitive(p: int, f: int) -> tuple[int, ...]:
    # lexicographically smallest primitive polynomial, for fields missing from the table
    for idx in range(p**f):
        coeffs = [(idx // p**k) % p for k in range(f)]
        c = tuple(coeffs) + (1,)
        if is_primitive_polynomial(c, p):
            return c
    raise DomainError(f"no primitive polynomial of degree {f} over F_{p}")  # pragma: no cover


def defining_polynomial(p: int, f: int) -> tuple[int, ...]:
    require_prime(p, "p")
    if f == 1:
        return (0, 1)
    return CONWAY_POLYNOMIALS.get((p, f)) or _search_primitive(p, f)


class FiniteField:
    """Arithmetic tables for F_q, q = p**f."""

    def __init__(self, q: PrimePower | int):
        self.pp = q if isinstance(q, PrimePower) else PrimePower.from_q(q)
        p, f, qq = self.pp.p, self.pp.f, self.pp.q
        if qq > MAX_TABLE_SIZE:
            raise DomainError(f"F_{qq} is too large for table arithmetic")
        self.p, self.f, self.q = p, f, qq
        self.polynomial = defining_polynomial(p, f)

        digits = np.array([[(a // p**k) % p for k in range(f)] for a in range(qq)], dtype=np.int64)
        self.digits = digits
        weights = p ** np.arange(f, dtype=np.int64)
        self.add = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights
        self.neg = ((-digits) % p) @ weights
        self.sub = self.add[:, self.neg]

        # regular representation: column j holds the coordinates of a * x^j
        basis = [[1 if k == j else 0 for k in range(f)] for j in range(f)]
        reg = np.zeros((qq, f, f), dtype=np.int64)
        for a in range(qq):
            coeffs = [int(d) for d in digits[a]]
            for j in range(f):
                reg[a, :, j] = _poly_mulmod(coeffs, basis[j], self.polynomial, p)
        self.regular = reg

        # reg[a] applied to the coordinates of b gives the coordinates of a*b
        prod = np.einsum("aij,bj->abi", reg, digits) % p
        self.mul = prod @ weights
        self.inv = np.zeros(qq, dtype=np.int64)
        for a in range(1, qq):
            self.inv[a] = int(np.flatnonzero(self.mul[a] == 1)[0])

    @property
    def generator(self) -> int:
        """A generator of the multiplicative group."""
        if self.f > 1:
            return self.p  # the class of x
        return next(g for g in range(1, self.p) if _is_primitive_root(g, self.p))

    def __repr__(self) -> str:
        return f"FiniteField({self.pp})"


@lru_cache(maxsize=None)
def field(q: int) -> FiniteField:
    return FiniteField(q)
