"""Explicitly enumerated groups of invertible matrices over Z/p^e.

This is the brute-force side of the package: groups are held as the full,
deduplicated set of their elements, and every structural question (Sylow
subgroups, commutators, derived series, exponents) is answered by direct
computation on that set. Elements live in a numpy array of shape (N, n, n)
sorted by their canonical key, which is the row-major entry sequence read
as a base-p^e integer; sorting by key is therefore lexicographic order of
the entry sequence.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

import numpy as np

from .arith import DomainError, PrimePower, ell_adic_valuation, gl_order, prime_factors, require_prime
from .field import field

DEFAULT_CAP = 2_000_000
CAP_ENV_VAR = "GRUENKIT_CAP"

_CHUNK = 1 << 16
_PAIRWISE_COMMUTATOR_LIMIT = 2048


def default_cap() -> int:
    """The enumeration cap, overridable through ``$GRUENKIT_CAP``."""
    raw = os.environ.get(CAP_ENV_VAR)
    if raw is None:
        return DEFAULT_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise DomainError(f"{CAP_ENV_VAR}={raw!r} is not an integer") from None
    if cap < 1:
        raise DomainError(f"{CAP_ENV_VAR} must be positive, got {cap}")
    return cap


class CapExceededError(RuntimeError):
    """A group would have more elements than the enumeration cap allows."""

    def __init__(self, cap: int, what: str = "group"):
        super().__init__(f"{what} exceeds the enumeration cap of {cap} elements")
        self.cap = cap


class SylowConstructionError(RuntimeError):
    """The greedy Sylow construction got stuck; Sylow's theorem says this cannot happen."""


# --------------------------------------------------------------------------
# single matrices


@dataclass(frozen=True)
class ResidueMatrix:
    """A square matrix with entries reduced modulo p**e."""

    rows: tuple[tuple[int, ...], ...]
    p: int
    e: int = 1

    def __post_init__(self) -> None:
        n = len(self.rows)
        if n == 0 or any(len(r) != n for r in self.rows):
            raise DomainError("matrix must be square and nonempty")
        if self.e < 1:
            raise DomainError(f"exponent e must be >= 1, got {self.e}")
        mod = self.p**self.e
        object.__setattr__(self, "rows", tuple(tuple(int(x) % mod for x in r) for r in self.rows))

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]], p: int, e: int = 1) -> ResidueMatrix:
        require_prime(p, "p")
        return cls(tuple(tuple(r) for r in rows), p, e)

    @classmethod
    def from_array(cls, arr: np.ndarray, p: int, e: int = 1) -> ResidueMatrix:
        return cls(tuple(tuple(int(x) for x in row) for row in arr), p, e)

    @classmethod
    def identity(cls, n: int, p: int, e: int = 1) -> ResidueMatrix:
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), p, e)

    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def modulus(self) -> int:
        return self.p**self.e

    @property
    def entries(self) -> tuple[int, ...]:
        """Row-major entry sequence; equality of matrices is equality of this."""
        return tuple(x for r in self.rows for x in r)

    def to_array(self) -> np.ndarray:
        return np.array(self.rows, dtype=np.int64)

    def __matmul__(self, other: ResidueMatrix) -> ResidueMatrix:
        return mat_mul(self, other)

    def __str__(self) -> str:
        return "[" + ", ".join("[" + ", ".join(map(str, r)) + "]" for r in self.rows) + f"] mod {self.modulus}"


def _check_compatible(a: ResidueMatrix, b: ResidueMatrix) -> None:
    if a.n != b.n:
        raise DomainError(f"dimension mismatch: {a.n} vs {b.n}")
    if (a.p, a.e) != (b.p, b.e):
        raise DomainError(f"modulus mismatch: {a.modulus} vs {b.modulus}")


def mat_mul(a: ResidueMatrix, b: ResidueMatrix) -> ResidueMatrix:
    _check_compatible(a, b)
    mod = a.modulus
    cols = list(zip(*b.rows))
    rows = tuple(tuple(sum(x * y for x, y in zip(r, c)) % mod for c in cols) for r in a.rows)
    return ResidueMatrix(rows, a.p, a.e)


def _inverse_mod_p(rows: Sequence[Sequence[int]], p: int) -> list[list[int]] | None:
    """Gauss-Jordan over F_p; None when singular."""
    n = len(rows)
    aug = [[x % p for x in r] + [int(i == j) for j in range(n)] for i, r in enumerate(rows)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col]), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = pow(aug[col][col], -1, p)
        aug[col] = [x * inv % p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                t = aug[r][col]
                aug[r] = [(x - t * y) % p for x, y in zip(aug[r], aug[col])]
    return [r[n:] for r in aug]


def is_invertible(m: ResidueMatrix) -> bool:
    """Invertible over Z/p^e iff the reduction mod p is."""
    return _inverse_mod_p(m.rows, m.p) is not None


def mat_inverse(m: ResidueMatrix) -> ResidueMatrix:
    """Inverse over Z/p^e: invert mod p, then Newton-lift X <- X(2I - AX)."""
    x0 = _inverse_mod_p(m.rows, m.p)
    if x0 is None:
        raise DomainError(f"matrix is not invertible mod {m.modulus}")
    x = ResidueMatrix(tuple(map(tuple, x0)), m.p, m.e)
    two_i = ResidueMatrix(tuple(tuple(2 * int(i == j) for j in range(m.n)) for i in range(m.n)), m.p, m.e)
    precision = 1
    while precision < m.e:
        ax = mat_mul(m, x)
        residual = ResidueMatrix(tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(two_i.rows, ax.rows)), m.p, m.e)
        x = mat_mul(x, residual)
        precision *= 2
    return x


# --------------------------------------------------------------------------
# batched arithmetic on (N, n, n) arrays


class _Codec:
    """Canonical integer keys for n x n matrices over Z/M."""

    def __init__(self, n: int, modulus: int):
        self.n, self.modulus = n, modulus
        self.wide = modulus ** (n * n) >= 2**62
        dtype = object if self.wide else np.int64
        self.weights = np.array([modulus ** (n * n - 1 - k) for k in range(n * n)], dtype=dtype)

    def keys(self, arr: np.ndarray) -> np.ndarray:
        flat = arr.reshape(len(arr), self.n * self.n)
        if self.wide:
            flat = flat.astype(object)
        return flat @ self.weights


@lru_cache(maxsize=None)
def _codec(n: int, modulus: int) -> _Codec:
    return _Codec(n, modulus)


def _mul(a: np.ndarray, b: np.ndarray, mod: int) -> np.ndarray:
    return np.matmul(a, b) % mod


def _pow(a: np.ndarray, k: int, mod: int) -> np.ndarray:
    n = a.shape[-1]
    result = np.broadcast_to(np.eye(n, dtype=np.int64), a.shape).copy()
    base = a
    while k:
        if k & 1:
            result = _mul(result, base, mod)
        k >>= 1
        if k:
            base = _mul(base, base, mod)
    return result


def _is_identity(a: np.ndarray) -> np.ndarray:
    n = a.shape[-1]
    return (a.reshape(len(a), n * n) == np.eye(n, dtype=np.int64).ravel()).all(axis=1)


def _member(sorted_keys: np.ndarray, keys: np.ndarray) -> np.ndarray:
    if len(sorted_keys) == 0:
        return np.zeros(len(keys), dtype=bool)
    idx = np.searchsorted(sorted_keys, keys)
    idx = np.minimum(idx, len(sorted_keys) - 1)
    return sorted_keys[idx] == keys


# --------------------------------------------------------------------------
# groups


class MatrixGroup:
    """A finite group of invertible matrices over Z/p^e, fully enumerated.

    Instances are immutable once built; every operation returns a new group.
    """

    def __init__(self, n: int, p: int, e: int, generators: Sequence[ResidueMatrix], array: np.ndarray):
        self.n, self.p, self.e = n, p, e
        self.modulus = p**e
        self.generators = tuple(generators)
        codec = _codec(n, self.modulus)
        keys = codec.keys(array)
        order = np.argsort(keys, kind="stable")
        self._array = np.ascontiguousarray(array[order])
        self._keys = keys[order]
        self._array.setflags(write=False)
        self._keys.setflags(write=False)

    @classmethod
    def trivial(cls, n: int, p: int, e: int = 1) -> MatrixGroup:
        return cls(n, p, e, (), np.eye(n, dtype=np.int64)[None])

    @property
    def order(self) -> int:
        return len(self._keys)

    def __len__(self) -> int:
        return self.order

    @property
    def array(self) -> np.ndarray:
        """Read-only (order, n, n) array of the elements in canonical order."""
        return self._array

    @property
    def elements(self) -> tuple[ResidueMatrix, ...]:
        return tuple(self)

    def __iter__(self) -> Iterator[ResidueMatrix]:
        for a in self._array:
            yield ResidueMatrix.from_array(a, self.p, self.e)

    def identity(self) -> ResidueMatrix:
        return ResidueMatrix.identity(self.n, self.p, self.e)

    def contains_array(self, arr: np.ndarray) -> np.ndarray:
        return _member(self._keys, _codec(self.n, self.modulus).keys(arr))

    def __contains__(self, m: object) -> bool:
        if not isinstance(m, ResidueMatrix) or m.n != self.n or (m.p, m.e) != (self.p, self.e):
            return False
        return bool(self.contains_array(m.to_array()[None])[0])

    def is_subgroup_of(self, other: MatrixGroup) -> bool:
        return self.n == other.n and self.modulus == other.modulus and bool(other.contains_array(self._array).all())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MatrixGroup):
            return NotImplemented
        return (
            (self.n, self.p, self.e) == (other.n, other.p, other.e)
            and self.order == other.order
            and bool((self._keys == other._keys).all())
        )

    __hash__ = None  # type: ignore[assignment]

    def conjugate(self, x: ResidueMatrix) -> MatrixGroup:
        """The group x H x^-1."""
        xa, xi = x.to_array(), mat_inverse(x).to_array()
        arr = _mul(_mul(xa[None], self._array, self.modulus), xi[None], self.modulus)
        gens = [mat_mul(mat_mul(x, g), mat_inverse(x)) for g in self.generators]
        return MatrixGroup(self.n, self.p, self.e, gens, arr)

    def __repr__(self) -> str:
        return f"MatrixGroup(n={self.n}, modulus={self.modulus}, order={self.order})"


def generate_closure(
    generators: Sequence[ResidueMatrix],
    cap: int | None = None,
    *,
    n: int | None = None,
    p: int | None = None,
    e: int = 1,
) -> MatrixGroup:
    """Breadth-first closure of ``generators`` under right multiplication.

    For a finite group the monoid generated is already the group. With no
    generators the dimension and modulus must be given as keywords.
    """
    cap = default_cap() if cap is None else cap
    gens = list(generators)
    if gens:
        first = gens[0]
        for g in gens[1:]:
            _check_compatible(first, g)
        n, p, e = first.n, first.p, first.e
    elif n is None or p is None:
        raise DomainError("an empty generator list needs n and p")
    for g in gens:
        if not is_invertible(g):
            raise DomainError(f"generator {g} is not invertible")
    mod = p**e
    codec = _codec(n, mod)
    ident = np.eye(n, dtype=np.int64)[None]
    gen_arrays = [g.to_array() for g in gens]

    seen = set(codec.keys(ident).tolist())
    parts = [ident]
    frontier = ident
    while len(frontier) and gen_arrays:
        products = np.concatenate([_mul(frontier, g, mod) for g in gen_arrays])
        keys = codec.keys(products)
        keys, first_idx = np.unique(keys, return_index=True)
        fresh = np.fromiter((k not in seen for k in keys.tolist()), dtype=bool, count=len(keys))
        if not fresh.any():
            break
        seen.update(keys[fresh].tolist())
        if len(seen) > cap:
            raise CapExceededError(cap)
        frontier = products[first_idx[fresh]]
        parts.append(frontier)
    return MatrixGroup(n, p, e, gens, np.concatenate(parts))


def subgroup_generated(g: MatrixGroup, gens: Sequence[ResidueMatrix]) -> MatrixGroup:
    return generate_closure(gens, cap=max(g.order, 1), n=g.n, p=g.p, e=g.e)


# --------------------------------------------------------------------------
# GL_n(F_q)


def _all_matrices(n: int, q: int, start: int, stop: int) -> np.ndarray:
    idx = np.arange(start, stop, dtype=np.int64)
    digits = np.empty((len(idx), n * n), dtype=np.int64)
    for k in range(n * n - 1, -1, -1):
        digits[:, k] = idx % q
        idx //= q
    return digits.reshape(-1, n, n)


def _full_rank_mask(mats: np.ndarray, F) -> np.ndarray:
    """Batched row reduction over F_q using the field's lookup tables."""
    a = mats.copy()
    count, n, _ = a.shape
    rows = np.arange(count)
    ok = np.ones(count, dtype=bool)
    for c in range(n):
        nonzero = a[:, c:, c] != 0
        has_pivot = nonzero.any(axis=1)
        ok &= has_pivot
        piv = c + nonzero.argmax(axis=1)
        top = a[rows, c].copy()
        a[rows, c] = a[rows, piv]
        a[rows, piv] = top
        scale = F.inv[a[:, c, c]]
        a[:, c, :] = F.mul[scale[:, None], a[:, c, :]]
        for r in range(c + 1, n):
            factor = a[:, r, c]
            a[:, r, :] = F.sub[a[:, r, :], F.mul[factor[:, None], a[:, c, :]]]
    return ok


def _embed(mats: np.ndarray, F) -> np.ndarray:
    """Replace each F_q entry by its f x f regular-representation block."""
    count, n, _ = mats.shape
    f = F.f
    if f == 1:
        return mats
    blocks = F.regular[mats]  # (count, n, n, f, f)
    return blocks.transpose(0, 1, 3, 2, 4).reshape(count, n * f, n * f)


def gl_generators(n: int, q: PrimePower | int) -> list[ResidueMatrix]:
    """Transvections I + b E_ij (b over an F_p-basis of F_q) and diag(w, 1, ..., 1).

    Matrices are given in the regular representation over F_p when q is not prime.
    """
    pp = q if isinstance(q, PrimePower) else PrimePower.from_q(q)
    F = field(pp.q)
    raw = []
    diag = np.eye(n, dtype=np.int64)
    diag[0, 0] = F.generator
    raw.append(diag)
    for i in range(n):
        for j in range(n):
            if i != j:
                for k in range(pp.f):
                    t = np.eye(n, dtype=np.int64)
                    t[i, j] = pp.p**k  # the field element x^k
                    raw.append(t)
    embedded = _embed(np.array(raw), F)
    return [ResidueMatrix.from_array(m, pp.p) for m in embedded]


@lru_cache(maxsize=8)
def _enumerate_gl(n: int, p: int, f: int) -> MatrixGroup:
    pp = PrimePower(p, f)
    F = field(pp.q)
    total = pp.q ** (n * n)
    parts = []
    for start in range(0, total, _CHUNK):
        mats = _all_matrices(n, pp.q, start, min(total, start + _CHUNK))
        keep = mats[_full_rank_mask(mats, F)]
        parts.append(_embed(keep, F))
    return MatrixGroup(n * f, p, 1, gl_generators(n, pp), np.concatenate(parts))


def enumerate_gl(n: int, q: PrimePower | int, cap: int | None = None) -> MatrixGroup:
    """All of GL_n(F_q), found by testing every n x n matrix for full rank.

    For q = p^f the group is returned inside GL_{nf}(F_p).
    """
    pp = q if isinstance(q, PrimePower) else PrimePower.from_q(q)
    cap = default_cap() if cap is None else cap
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if gl_order(n, pp) > cap:
        raise CapExceededError(cap, f"GL_{n}(F_{pp.q})")
    return _enumerate_gl(n, pp.p, pp.f)


# --------------------------------------------------------------------------
# Sylow subgroups, commutators, derived series


def _ell_elements(g: MatrixGroup, exponent: int) -> np.ndarray:
    """Elements x with x^exponent = 1, in canonical order."""
    keep = []
    for start in range(0, g.order, _CHUNK):
        chunk = g.array[start : start + _CHUNK]
        keep.append(chunk[_is_identity(_pow(chunk, exponent, g.modulus))])
    return np.concatenate(keep)


def sylow_subgroup(g: MatrixGroup, ell: int) -> MatrixGroup:
    """A deterministic ell-Sylow subgroup of ``g``.

    Starting from the trivial group, repeatedly adjoin the first ell-element
    (in canonical order) that lies outside the current ell-subgroup H and
    normalizes it; then <H, x> = H<x> is again an ell-group. A proper
    ell-subgroup always has such an element in its normalizer, so the loop
    only stops at full Sylow order.
    """
    require_prime(ell, "ell")
    v = ell_adic_valuation(g.order, ell)
    target = ell**v
    h = MatrixGroup.trivial(g.n, g.p, g.e)
    if v == 0:
        return h
    mod = g.modulus
    cands = _ell_elements(g, target)
    cand_inv = _pow(cands, target - 1, mod)
    while h.order < target:
        pick = None
        for start in range(0, len(cands), 4096):
            c = cands[start : start + 4096]
            ci = cand_inv[start : start + 4096]
            ok = ~h.contains_array(c)
            for gen in h.generators:
                conj = _mul(_mul(c, gen.to_array(), mod), ci, mod)
                ok &= h.contains_array(conj)
            hits = np.flatnonzero(ok)
            if len(hits):
                pick = c[hits[0]]
                break
        if pick is None:
            raise SylowConstructionError(f"no ell-element normalizes the subgroup of order {h.order} < {target}")
        h = generate_closure([*h.generators, ResidueMatrix.from_array(pick, g.p, g.e)], cap=g.order)
        if h.order != ell ** ell_adic_valuation(h.order, ell):
            raise SylowConstructionError(f"greedy extension produced order {h.order}, not a power of {ell}")
    return h


def _grow(n: int, p: int, e: int, cap: int, candidates: Iterable[ResidueMatrix], start: MatrixGroup | None = None) -> MatrixGroup:
    # adjoin candidates one at a time, skipping those already present
    h = start or MatrixGroup.trivial(n, p, e)
    for c in candidates:
        if c not in h:
            h = generate_closure([*h.generators, c], cap=cap)
    return h


def _commutators_pairwise(g: MatrixGroup) -> np.ndarray:
    a = g.array
    mod = g.modulus
    inv = _inverses(g)
    found = []
    step = max(1, (1 << 18) // max(1, g.order))
    for start in range(0, g.order, step):
        x, xi = a[start : start + step, None], inv[start : start + step, None]
        comm = _mul(_mul(_mul(x, a[None], mod), xi, mod), inv[None], mod)
        found.append(comm.reshape(-1, g.n, g.n))
    comms = np.concatenate(found)
    keys = _codec(g.n, mod).keys(comms)
    _, idx = np.unique(keys, return_index=True)
    return comms[idx]


def _inverses(g: MatrixGroup) -> np.ndarray:
    """Inverses of all elements, via x^(exp - 1) with exp a multiple of every element order."""
    return _pow(g.array, g.order - 1, g.modulus)


def commutator_subgroup(g: MatrixGroup, cap: int | None = None) -> MatrixGroup:
    """The subgroup generated by all commutators a b a^-1 b^-1.

    Small groups take every pair literally. Larger ones use the normal
    closure of the commutators of the generators, which is the same group.
    """
    cap = default_cap() if cap is None else cap
    if g.order == 1:
        return MatrixGroup.trivial(g.n, g.p, g.e)
    if g.order <= _PAIRWISE_COMMUTATOR_LIMIT:
        comms = _commutators_pairwise(g)
        cands = (ResidueMatrix.from_array(c, g.p, g.e) for c in comms)
        return _grow(g.n, g.p, g.e, cap, cands)
    return _normal_closure_of_generator_commutators(g, cap)


def _normal_closure_of_generator_commutators(g: MatrixGroup, cap: int) -> MatrixGroup:
    gens = g.generators
    inv = {i: mat_inverse(x) for i, x in enumerate(gens)}
    seeds = []
    for i, a in enumerate(gens):
        for j, b in enumerate(gens):
            if i < j:
                seeds.append(mat_mul(mat_mul(a, b), mat_mul(inv[i], inv[j])))
    h = _grow(g.n, g.p, g.e, cap, seeds)
    changed = True
    while changed:
        changed = False
        for i, x in enumerate(gens):
            for y in list(h.generators):
                c = mat_mul(mat_mul(x, y), inv[i])
                if c not in h:
                    h = generate_closure([*h.generators, c], cap=cap)
                    changed = True
    return h


def derived_series(g: MatrixGroup, cap: int | None = None) -> list[MatrixGroup]:
    """g, g', g'', ... until the trivial group or a perfect group repeats."""
    series = [g]
    while series[-1].order > 1:
        nxt = commutator_subgroup(series[-1], cap)
        if nxt.order == series[-1].order:
            break
        series.append(nxt)
    return series


def derived_length(g: MatrixGroup, cap: int | None = None) -> int | None:
    """Number of steps to reach the trivial group; None if ``g`` is not solvable."""
    series = derived_series(g, cap)
    return len(series) - 1 if series[-1].order == 1 else None


def element_order(x: ResidueMatrix) -> int:
    a = x.to_array()[None]
    k, y = 1, a
    while not _is_identity(y)[0]:
        y = _mul(y, a, x.modulus)
        k += 1
    return k


def group_exponent(g: MatrixGroup) -> int:
    """lcm of the element orders, found one prime at a time."""
    out = 1
    mod = g.modulus
    for r, v in prime_factors(g.order).items():
        # strip the prime-to-r part, then find the largest r-power order left
        y = _pow(g.array, g.order // r**v, mod)
        a = 0
        while not _is_identity(y).all():
            y = _pow(y, r, mod)
            a += 1
        out *= r**a
    return out


def is_abelian(g: MatrixGroup) -> bool:
    a = g.array
    mod = g.modulus
    for gen in g.generators:
        m = gen.to_array()
        if not (_mul(a, m, mod) == _mul(m[None], a, mod)).all():
            return False
    return True


@dataclass(frozen=True)
class GroupStructureReport:
    """Order, commutativity and solvability data for one group.

    ``derived_length`` is None for a non-solvable group. The trivial group
    counts as elementary abelian (a zero-dimensional F_ell-space).
    """

    order: int
    is_abelian: bool
    is_elementary_abelian: bool
    derived_length: int | None
    exponent: int

    def to_dict(self) -> dict:
        return {
            "order": self.order,
            "is_abelian": self.is_abelian,
            "is_elementary_abelian": self.is_elementary_abelian,
            "derived_length": self.derived_length,
            "exponent": self.exponent,
        }


def structure_report(g: MatrixGroup, ell: int, cap: int | None = None) -> GroupStructureReport:
    require_prime(ell, "ell")
    abelian = is_abelian(g)
    elementary = abelian and bool(_is_identity(_pow(g.array, ell, g.modulus)).all())
    return GroupStructureReport(
        order=g.order,
        is_abelian=abelian,
        is_elementary_abelian=elementary,
        derived_length=derived_length(g, cap),
        exponent=group_exponent(g),
    )


# --------------------------------------------------------------------------
# generator-set documents

GENERATOR_SCHEMA_FIELDS = ("dimension", "prime", "exponent", "generators")


def generators_to_dict(generators: Sequence[ResidueMatrix], *, n: int | None = None, p: int | None = None, e: int = 1) -> dict:
    if generators:
        n, p, e = generators[0].n, generators[0].p, generators[0].e
    elif n is None or p is None:
        raise DomainError("an empty generator list needs n and p")
    return {
        "dimension": n,
        "prime": p,
        "exponent": e,
        "generators": [[list(r) for r in g.rows] for g in generators],
    }


def generators_from_dict(doc: dict) -> tuple[list[ResidueMatrix], int, int, int]:
    """Parse a generator document; returns (generators, dimension, prime, exponent)."""
    missing = [k for k in GENERATOR_SCHEMA_FIELDS if k not in doc]
    if missing:
        raise DomainError(f"generator document lacks {', '.join(missing)}")
    n, p, e = doc["dimension"], doc["prime"], doc["exponent"]
    if not all(isinstance(v, int) and not isinstance(v, bool) for v in (n, p, e)) or n < 1 or e < 1:
        raise DomainError("dimension, prime and exponent must be positive integers")
    require_prime(p, "prime")
    gens = []
    for raw in doc["generators"]:
        if len(raw) != n or any(len(r) != n for r in raw):
            raise DomainError(f"generator {raw!r} is not {n}x{n}")
        if any(not isinstance(x, int) or isinstance(x, bool) or not 0 <= x < p**e for r in raw for x in r):
            raise DomainError(f"generator {raw!r} has entries outside [0, {p**e})")
        gens.append(ResidueMatrix.from_rows(raw, p, e))
    return gens, n, p, e


def dumps_generators(generators: Sequence[ResidueMatrix], **kw) -> str:
    return json.dumps(generators_to_dict(generators, **kw), indent=2, sort_keys=True) + "\n"


def loads_generators(text: str) -> tuple[list[ResidueMatrix], int, int, int]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DomainError(f"not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise DomainError("generator document must be a JSON object")
    return generators_from_dict(doc)


def gl_order_over_residues(n: int, p: int, e: int) -> int:
    """|GL_n(Z/p^e)| = p^((e-1) n^2) |GL_n(F_p)|."""
    return p ** ((e - 1) * n * n) * gl_order(n, p)
