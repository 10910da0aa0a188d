"""Class-group descent deductions for normal extensions of number fields.

Class numbers, ranks and Galois data are trusted inputs; nothing here
computes a class group. Each deduction carries the chain of rules that
produced it, with every parameter filled in.

The descent mechanism: if a subgroup H of the Galois group acts trivially
on a p-group C with p prime to |H|, then composing the norm to the fixed
field of H with the lift back is multiplication by |H|, which is
invertible on C, so the norm is injective on C.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any

from .arith import DomainError, is_prime, min_nu, multiplicative_order, require_prime


class Conclusion(str, Enum):
    DIVISIBILITY_HOLDS = "divisibility_holds"
    DIVISIBILITY_FAILS = "divisibility_fails"
    RANK_DIVISIBILITY_PASS = "rank_divisibility_pass"
    RANK_DIVISIBILITY_FAIL = "rank_divisibility_fail"
    COMES_FROM_SUBFIELD = "comes_from_subfield"
    SUBGROUP_EMBEDS = "subgroup_embeds"
    NO_CONCLUSION = "no_conclusion"


@dataclass(frozen=True)
class Rule:
    """One applied rule: its name, what it says, and the values plugged in."""

    name: str
    statement: str
    parameters: dict[str, Any]

    def to_dict(self) -> dict:
        return {"rule": self.name, "statement": self.statement, "parameters": dict(self.parameters)}


@dataclass(frozen=True)
class Deduction:
    conclusion: Conclusion
    justification: tuple[Rule, ...] = ()
    subfield: str | None = None
    # every field the piece is known to come from, smallest field first
    subfields: tuple[str, ...] = ()
    data: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "conclusion": self.conclusion.value,
            "subfield": self.subfield,
            "subfields": list(self.subfields),
            "data": dict(self.data),
            "justification": [r.to_dict() for r in self.justification],
        }


@dataclass(frozen=True)
class AbelianGroupType:
    """A finite abelian p-group Z/p^e1 x ... x Z/p^em with e1 >= ... >= em >= 1."""

    p: int
    exponents: tuple[int, ...]

    def __post_init__(self) -> None:
        require_prime(self.p, "p")
        exps = tuple(self.exponents)
        if any(not isinstance(x, int) or x < 1 for x in exps):
            raise DomainError(f"exponents must be positive integers, got {exps}")
        if any(a < b for a, b in zip(exps, exps[1:])):
            raise DomainError(f"exponents must be nonincreasing, got {exps}")
        object.__setattr__(self, "exponents", exps)

    @classmethod
    def from_cyclic_orders(cls, p: int, orders: list[int]) -> AbelianGroupType:
        """From factor orders such as (2, 2, 2); factors must be powers of p."""
        exps = []
        for o in orders:
            e, x = 0, o
            while x % p == 0:
                x //= p
                e += 1
            if x != 1 or e == 0:
                raise DomainError(f"{o} is not a positive power of {p}")
            exps.append(e)
        return cls(p, tuple(sorted(exps, reverse=True)))

    @property
    def rank(self) -> int:
        return len(self.exponents)

    @property
    def order(self) -> int:
        return self.p ** sum(self.exponents)


# --------------------------------------------------------------------------
# Galois descriptors

NONABELIAN_ELL_CUBED = "nonabelian_order_ell_cubed"
TWO_TOWER_STEP_3 = "two_group_tower_step_3"
CATALOG_IDS = (NONABELIAN_ELL_CUBED, TWO_TOWER_STEP_3)


@dataclass(frozen=True)
class GaloisDescriptor:
    """Derived-series data of Gal(L/k) for an ell-extension L/k.

    ``fixed_fields[j]`` labels the fixed field of the j-th derived subgroup
    G^(j); the last label is L itself. ``derived_structure`` holds the
    indices [G:G'], [G':G''], ... when they are known numbers.
    """

    kind: str
    ell: int
    fixed_fields: tuple[str, ...]
    catalog_id: str | None = None
    derived_structure: tuple[int, ...] | None = None
    order: int | None = None

    @property
    def derived_length(self) -> int:
        return len(self.fixed_fields) - 1

    @classmethod
    def catalog(cls, catalog_id: str, ell: int) -> GaloisDescriptor:
        require_prime(ell, "ell")
        if catalog_id == NONABELIAN_ELL_CUBED:
            # both nonabelian groups of order ell^3: G' cyclic of order ell, G/G' of type (ell, ell)
            return cls(
                "catalog",
                ell,
                ("base field k", "maximal abelian subfield K", "L"),
                catalog_id,
                (ell * ell, ell),
                ell**3,
            )
        if catalog_id == TWO_TOWER_STEP_3:
            if ell != 2:
                raise DomainError("the class field tower descriptor is a 2-extension; ell must be 2")
            # Gal(k^3/k): G^(j) = Gal(k^3/k^j), and k^3/k^2 is abelian
            return cls("catalog", 2, ("k", "k^1", "k^2", "k^3"), catalog_id)
        raise DomainError(f"unknown catalog id {catalog_id!r}; known: {', '.join(CATALOG_IDS)}")

    @classmethod
    def explicit(cls, ell: int, derived_structure: list[int], fixed_fields: list[str] | None = None) -> GaloisDescriptor:
        require_prime(ell, "ell")
        idx = tuple(derived_structure)
        if not idx:
            raise DomainError("derived_structure must list at least one index")
        for x in idx:
            if not isinstance(x, int) or x < ell or ell ** _log(x, ell) != x:
                raise DomainError(f"index {x!r} is not a positive power of {ell}")
        if len(idx) >= 2 and idx[0] == ell:
            raise DomainError("an ell-group with cyclic abelianization is abelian; derived_structure is inconsistent")
        d = len(idx)
        if fixed_fields is None:
            fixed_fields = ["k"] + [f"fixed field of G^({j})" for j in range(1, d)] + ["L"]
        if len(fixed_fields) != d + 1:
            raise DomainError(f"need {d + 1} fixed-field labels, got {len(fixed_fields)}")
        order = 1
        for x in idx:
            order *= x
        return cls("explicit", ell, tuple(fixed_fields), None, idx, order)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "catalog_id": self.catalog_id,
            "ell": self.ell,
            "derived_structure": None if self.derived_structure is None else list(self.derived_structure),
            "order": self.order,
            "fixed_fields": list(self.fixed_fields),
        }

    @classmethod
    def from_dict(cls, doc: dict, ell: int | None = None) -> GaloisDescriptor:
        if not isinstance(doc, dict):
            raise DomainError("galois descriptor must be an object")
        kind = doc.get("kind")
        ell = doc.get("ell", ell)
        if not isinstance(ell, int):
            raise DomainError("galois descriptor needs an integer ell")
        if kind == "catalog":
            return cls.catalog(doc.get("catalog_id"), ell)
        if kind == "explicit":
            structure = doc.get("derived_structure")
            if not isinstance(structure, list):
                raise DomainError("explicit descriptor needs a derived_structure list")
            return cls.explicit(ell, structure, doc.get("fixed_fields"))
        raise DomainError(f"descriptor kind must be 'catalog' or 'explicit', got {kind!r}")


def _log(x: int, base: int) -> int:
    k = 0
    while x % base == 0 and x > 1:
        x //= base
        k += 1
    return k


# --------------------------------------------------------------------------
# individual propositions


def check_pg0(n: int, h: int) -> Deduction:
    """Perfect Galois group of order n, cyclic class group of order h: c^n = 1, i.e. h | n."""
    if n < 1 or h < 1:
        raise DomainError("n and h must be positive")
    rule = Rule(
        "perfect_group_cyclic_class_group",
        "Gal(L/K) perfect of order n and Cl(L) cyclic imply c^n = 1 for every class c",
        {"n": n, "h": h},
    )
    if n % h == 0:
        return Deduction(Conclusion.DIVISIBILITY_HOLDS, (rule,), data={"n": n, "h": h})
    flag = Rule("hypotheses_incoherent", "h does not divide n, so the asserted hypotheses cannot all hold", {"n": n, "h": h})
    return Deduction(Conclusion.DIVISIBILITY_FAILS, (rule, flag), data={"n": n, "h": h})


def check_pg1(h_L: int, index_LK: int, h_K: int) -> Deduction:
    """Cyclic Cl(L), K the maximal abelian subextension: h_L | (L:K) h_K."""
    if min(h_L, index_LK, h_K) < 1:
        raise DomainError("class numbers and the degree must be positive")
    bound = index_LK * h_K
    params = {"h_L": h_L, "index_LK": index_LK, "h_K": h_K}
    rule = Rule(
        "cyclic_class_group_divisibility",
        "Cl(L) cyclic and K maximal abelian in L/k imply h_L | (L:K) h_K",
        params,
    )
    if bound % h_L == 0:
        return Deduction(Conclusion.DIVISIBILITY_HOLDS, (rule,), data=params)
    flag = Rule("hypotheses_incoherent", "h_L does not divide (L:K) h_K, so the asserted hypotheses cannot all hold", params)
    return Deduction(Conclusion.DIVISIBILITY_FAILS, (rule, flag), data=params)


def _check_prime_degree(n: int, p: int) -> None:
    if not is_prime(n):
        raise DomainError(f"degree n={n} must be prime")
    require_prime(p, "p")
    if n % p == 0:
        raise DomainError(f"p={p} divides the degree n={n}")


def check_pgal(n: int, p: int, observed_rank: int) -> Deduction:
    """For a cyclic extension of prime degree n, f = ord_n(p) divides the p-rank of Cl(K/k).

    ``observed_rank`` is the p-rank of the relative class group (kernel of the
    norm), not of Cl(K).
    """
    _check_prime_degree(n, p)
    if observed_rank < 0:
        raise DomainError("rank must be nonnegative")
    f = multiplicative_order(p, n)
    params = {"n": n, "p": p, "f": f, "observed_rank": observed_rank}
    rule = Rule(
        "relative_rank_divisibility",
        "K/k cyclic of prime degree n, p prime to n: f = ord(p mod n) divides the p-rank of Cl(K/k)",
        params,
    )
    passed = observed_rank % f == 0
    return Deduction(
        Conclusion.RANK_DIVISIBILITY_PASS if passed else Conclusion.RANK_DIVISIBILITY_FAIL, (rule,), data=params
    )


def comes_from(observed_rank: int, n: int, p: int) -> Deduction:
    """If Cl_p(K) has rank < f = ord_n(p), the norm to k is injective on it.

    Here ``observed_rank`` is the p-rank of the full Cl_p(K).
    """
    _check_prime_degree(n, p)
    if observed_rank < 0:
        raise DomainError("rank must be nonnegative")
    f = multiplicative_order(p, n)
    params = {"n": n, "p": p, "f": f, "observed_rank": observed_rank}
    if observed_rank >= f:
        return Deduction(Conclusion.NO_CONCLUSION, data=params)
    chain = (
        Rule(
            "relative_rank_divisibility",
            "f divides the p-rank of Cl(K/k), which is at most the p-rank of Cl_p(K) < f, hence 0",
            params,
        ),
        Rule("rank_below_order_descent", "Cl_p(K/k) is trivial, so the norm Cl_p(K) -> Cl_p(k) is injective", params),
    )
    return Deduction(Conclusion.COMES_FROM_SUBFIELD, chain, subfield="k", subfields=("k",), data=params)


# --------------------------------------------------------------------------
# the generic descent through the derived series


def deduce_descent(galois: GaloisDescriptor, ell: int, p: int, observed_rank: int) -> Deduction:
    """Locate the smallest field the p-part of Cl(L) comes from.

    nu is the least integer with ell^nu > m/m_ell; the nu-th derived subgroup
    of Gal(L/k) acts trivially on Cl_p(L), so Cl_p(L) comes from its fixed
    field and from every larger field inside L. The conclusion is only
    informative when G^(nu) is nontrivial.
    """
    require_prime(ell, "ell")
    require_prime(p, "p")
    if p == ell:
        raise DomainError(f"p={p} must differ from ell")
    if galois.ell != ell:
        raise DomainError(f"descriptor is a {galois.ell}-group but ell={ell}")
    if observed_rank < 0:
        raise DomainError("rank must be nonnegative")
    m = observed_rank
    order = multiplicative_order(p, ell)
    depth = galois.derived_length
    nu = 0 if m == 0 else min_nu(m, order, ell)
    params = {"ell": ell, "p": p, "m": m, "m_ell": order, "nu": nu, "derived_length": depth}
    data = dict(params)
    if galois.catalog_id:
        data["galois"] = galois.catalog_id

    if nu >= depth:
        return Deduction(Conclusion.NO_CONCLUSION, data=data)

    fields = galois.fixed_fields[nu:depth]
    bound = Rule(
        "sylow_derived_action_bound",
        "the nu-th derived subgroup of an ell-Sylow of G acts trivially on the rank-m abelian p-group",
        {k: params[k] for k in ("ell", "p", "m", "m_ell", "nu")},
    )
    sylow = Rule("galois_group_is_its_sylow", "Gal(L/k) is an ell-group, hence its own ell-Sylow subgroup", {"ell": ell})
    descent = Rule(
        "trivial_action_descent",
        "G^(nu) acts trivially and has order prime to p, so the norm to its fixed field is injective on Cl_p(L)",
        {"nu": nu, "fixed_field": fields[0]},
    )
    chain = [bound, sylow, descent]
    if len(fields) > 1:
        chain.append(
            Rule("norm_transitivity", "injectivity of a composite norm gives injectivity of its first factor", {"fields": list(fields)})
        )
    if galois.catalog_id == TWO_TOWER_STEP_3:
        chain.append(
            Rule(
                "class_field_tower_embedding",
                "the injective norm embeds C = Cl_p(k^3) as a subgroup of Cl_p(k^2)",
                {"m": m, "target": "k^2"},
            )
        )
        return Deduction(Conclusion.SUBGROUP_EMBEDS, tuple(chain), fields[0], tuple(fields), data)
    if galois.catalog_id == NONABELIAN_ELL_CUBED:
        chain.append(
            Rule(
                "ell_cubed_descent",
                "for a nonabelian group of order ell^3, Cl_p(L) comes from the maximal abelian subfield K",
                {"ell": ell, "p": p, "m": m},
            )
        )
    return Deduction(Conclusion.COMES_FROM_SUBFIELD, tuple(chain), fields[0], tuple(fields), data)


# --------------------------------------------------------------------------
# scenario documents


def run_scenario(doc: dict) -> list[Deduction]:
    """Evaluate every block present in a scenario document.

    Recognised keys: ``galois`` with ``ell``, ``p`` and ``observed_rank`` (or
    ``class_group_type``) for the descent; ``class_numbers`` holding any of
    ``pg0`` {n, h}, ``pg1`` {h_L, index_LK, h_K}, ``pgal`` {n, p, observed_rank},
    ``comes_from`` {n, p, observed_rank}.
    """
    if not isinstance(doc, dict):
        raise DomainError("scenario must be a JSON object")
    known = {"galois", "ell", "p", "observed_rank", "class_group_type", "class_numbers", "name"}
    unknown = sorted(set(doc) - known)
    if unknown:
        raise DomainError(f"unknown scenario keys: {', '.join(unknown)}")
    out: list[Deduction] = []
    if "galois" in doc:
        ell, p = _int(doc, "ell"), _int(doc, "p")
        if "class_group_type" in doc:
            t = doc["class_group_type"]
            if not isinstance(t, dict):
                raise DomainError("class_group_type must be an object with p and exponents")
            cg = AbelianGroupType(_int(t, "p"), tuple(t.get("exponents", ())))
            if cg.p != p:
                raise DomainError(f"class_group_type is a {cg.p}-group but p={p}")
            rank = cg.rank
        else:
            rank = _int(doc, "observed_rank")
        out.append(deduce_descent(GaloisDescriptor.from_dict(doc["galois"], ell), ell, p, rank))
    blocks = doc.get("class_numbers", {})
    if not isinstance(blocks, dict):
        raise DomainError("class_numbers must be an object")
    handlers = {
        "pg0": lambda b: check_pg0(_int(b, "n"), _int(b, "h")),
        "pg1": lambda b: check_pg1(_int(b, "h_L"), _int(b, "index_LK"), _int(b, "h_K")),
        "pgal": lambda b: check_pgal(_int(b, "n"), _int(b, "p"), _int(b, "observed_rank")),
        "comes_from": lambda b: comes_from(_int(b, "observed_rank"), _int(b, "n"), _int(b, "p")),
    }
    for key in blocks:
        if key not in handlers:
            raise DomainError(f"unknown class_numbers block {key!r}")
    for key, handler in handlers.items():
        if key in blocks:
            if not isinstance(blocks[key], dict):
                raise DomainError(f"class_numbers.{key} must be an object")
            out.append(handler(blocks[key]))
    if not out:
        raise DomainError("scenario has neither a galois block nor class_numbers")
    return out


def _int(doc: dict, key: str) -> int:
    if key not in doc:
        raise DomainError(f"missing field {key!r}")
    v = doc[key]
    if not isinstance(v, int) or isinstance(v, bool):
        raise DomainError(f"field {key!r} must be an integer, got {v!r}")
    return v
