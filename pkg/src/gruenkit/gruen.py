"""Grün's predictions for Sylow subgroups of GL_n(F_q) and for trivial actions.

Predictions are computed from the parameters alone; :func:`verify_sylow_prediction`
and :func:`verify_action_bound` then check them against groups enumerated by
:mod:`gruenkit.matgroup`.

Two readings are fixed here. The order m_ell is always the multiplicative
order of p (or q) modulo ell, including for the normal-subgroup form of the
action bound, whose classical statement writes "the order of ell mod p";
the group-theoretic proof through GL_m(p) needs the former. The integer m
in every action bound is the p-rank of the acted-on group.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .arith import (
    DomainError,
    PrimePower,
    ell_adic_valuation,
    gl_order,
    m_ell as _m_ell,
    min_nu,
    multiplicative_order,
    require_prime,
)
from .matgroup import (
    CapExceededError,
    GroupStructureReport,
    MatrixGroup,
    default_cap,
    derived_series,
    enumerate_gl,
    structure_report,
    sylow_subgroup,
)


class Clause(str, Enum):
    ELEMENTARY_ABELIAN = "elementary_abelian"
    METABELIAN_BOUND = "metabelian_bound"
    OUT_OF_SCOPE = "out_of_scope"


class Theorem(str, Enum):
    GT1 = "GT1"  # ell > m/m_ell  =>  P' acts trivially
    GT2 = "GT2"  # L^(nu) acts trivially, nu minimal with ell^nu > m/m_ell
    TS1 = "TS1"  # same bound, A normal in G


class Verdict(str, Enum):
    CONFIRMED = "confirmed"
    REFUTED = "refuted"
    SKIPPED_OUT_OF_SCOPE = "skipped_out_of_scope"
    SKIPPED_TOO_LARGE = "skipped_too_large"


@dataclass(frozen=True)
class SylowPrediction:
    """Predicted shape of the ell-Sylow subgroups of GL_n(F_q).

    For the elementary-abelian clause ``r = floor(n / m_ell)`` and the Sylow
    order is ``ell ** order_exponent``. For the metabelian clause ``r`` is the
    stage with ``ell**r <= floor(n/m_ell) < ell**(r+1)`` and ``order_exponent``
    is None.
    """

    n: int
    q: PrimePower
    ell: int
    clause: Clause
    m_ell: int
    r: int
    i: int
    order_exponent: int | None
    derived_length_bound: int

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "q": self.q.q,
            "ell": self.ell,
            "clause": self.clause.value,
            "m_ell": self.m_ell,
            "r": self.r,
            "i": self.i,
            "order_exponent": self.order_exponent,
            "derived_length_bound": self.derived_length_bound,
        }


@dataclass(frozen=True)
class TrivialActionBound:
    theorem: Theorem
    m: int
    p: int
    ell: int
    m_ell: int
    nu: int

    @property
    def conclusion(self) -> str:
        return f"L^({self.nu}) acts trivially"

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem.value,
            "m": self.m,
            "p": self.p,
            "ell": self.ell,
            "m_ell": self.m_ell,
            "nu": self.nu,
            "conclusion": self.conclusion,
        }


@dataclass
class VerificationReport:
    parameters: dict
    predicted: SylowPrediction | TrivialActionBound | None
    observed: GroupStructureReport | dict | None
    verdict: Verdict
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        observed = self.observed.to_dict() if isinstance(self.observed, GroupStructureReport) else self.observed
        return {
            "parameters": self.parameters,
            "predicted": None if self.predicted is None else self.predicted.to_dict(),
            "observed": observed,
            "verdict": self.verdict.value,
            "notes": list(self.notes),
        }


def _prime_power(q: PrimePower | int) -> PrimePower:
    return q if isinstance(q, PrimePower) else PrimePower.from_q(q)


def _check_ell(p: int, ell: int) -> None:
    require_prime(p, "p")
    require_prime(ell, "ell")
    if ell == p:
        raise DomainError(f"ell={ell} equals the characteristic; only ell != p is covered")


def predict_gl_sylow(n: int, q: PrimePower | int, ell: int) -> SylowPrediction:
    pp = _prime_power(q)
    _check_ell(pp.p, ell)
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    m = _m_ell(pp.p, pp.f, ell)
    i = ell_adic_valuation(pp.q**m - 1, ell)
    blocks = n // m
    if blocks < ell:
        # includes m_ell > n: no ell-torsion, trivial Sylow
        return SylowPrediction(n, pp, ell, Clause.ELEMENTARY_ABELIAN, m, blocks, i, blocks * i, 1)
    stage = 0
    while ell ** (stage + 1) <= blocks:
        stage += 1
    return SylowPrediction(n, pp, ell, Clause.METABELIAN_BOUND, m, stage, i, None, stage + 1)


def gt1_bound(m: int, p: int, ell: int) -> TrivialActionBound | None:
    """P' acts trivially when ell > m/m_ell; None when that hypothesis fails."""
    _check_ell(p, ell)
    if m < 1:
        raise DomainError(f"m must be >= 1, got {m}")
    order = multiplicative_order(p, ell)
    if ell * order <= m:
        return None
    return TrivialActionBound(Theorem.GT1, m, p, ell, order, min_nu(m, order, ell))


def _nu_bound(theorem: Theorem, m: int, p: int, ell: int) -> TrivialActionBound:
    _check_ell(p, ell)
    if m < 1:
        raise DomainError(f"m must be >= 1, got {m}")
    order = multiplicative_order(p, ell)
    return TrivialActionBound(theorem, m, p, ell, order, min_nu(m, order, ell))


def gt2_bound(m: int, p: int, ell: int) -> TrivialActionBound:
    return _nu_bound(Theorem.GT2, m, p, ell)


def ts1_bound(m: int, p: int, ell: int) -> TrivialActionBound:
    """Same number as :func:`gt2_bound`; the caller vouches that A is normal in G."""
    return _nu_bound(Theorem.TS1, m, p, ell)


def action_bound(theorem: Theorem | str, m: int, p: int, ell: int) -> TrivialActionBound | None:
    theorem = Theorem(theorem.upper() if isinstance(theorem, str) else theorem)
    if theorem is Theorem.GT1:
        return gt1_bound(m, p, ell)
    return _nu_bound(theorem, m, p, ell)


def verify_sylow_prediction(n: int, q: PrimePower | int, ell: int, cap: int | None = None) -> VerificationReport:
    """Compare the predicted ell-Sylow of GL_n(F_q) with a brute-force one."""
    pp = _prime_power(q)
    cap = default_cap() if cap is None else cap
    params = {"n": n, "q": pp.q, "p": pp.p, "f": pp.f, "ell": ell, "cap": cap}
    if ell == pp.p:
        return VerificationReport(
            params, None, None, Verdict.SKIPPED_OUT_OF_SCOPE, ["ell equals the characteristic; no prediction is made"]
        )
    pred = predict_gl_sylow(n, pp, ell)
    if gl_order(n, pp) > cap:
        return VerificationReport(params, pred, None, Verdict.SKIPPED_TOO_LARGE, [f"|GL_{n}(F_{pp.q})| exceeds cap {cap}"])
    group = enumerate_gl(n, pp, cap)
    sylow = sylow_subgroup(group, ell)
    observed = structure_report(sylow, ell, cap)
    notes = []
    if pred.clause is Clause.ELEMENTARY_ABELIAN:
        ok = observed.order == ell**pred.order_exponent and observed.is_elementary_abelian
        if observed.order != ell**pred.order_exponent:
            notes.append(f"order {observed.order} != {ell}^{pred.order_exponent}")
        if not observed.is_elementary_abelian:
            notes.append(f"Sylow is not elementary abelian (exponent {observed.exponent})")
    else:
        ok = observed.derived_length is not None and observed.derived_length <= pred.derived_length_bound
        if not ok:
            notes.append(f"derived length {observed.derived_length} exceeds bound {pred.derived_length_bound}")
    return VerificationReport(params, pred, observed, Verdict.CONFIRMED if ok else Verdict.REFUTED, notes)


def verify_action_bound(
    image_group: MatrixGroup, ell: int, theorem: Theorem | str = Theorem.GT2, cap: int | None = None
) -> VerificationReport:
    """Check a trivial-action bound on a realized action.

    ``image_group`` is the image of G in GL_m(Z/p^e), acting on (Z/p^e)^m;
    the kernel N of the action is already divided out, so "acts trivially"
    means "is the identity matrix only".
    """
    g = image_group
    theorem = Theorem(theorem.upper() if isinstance(theorem, str) else theorem)
    _check_ell(g.p, ell)
    m = g.n
    params = {"m": m, "p": g.p, "e": g.e, "ell": ell, "theorem": theorem.value, "image_order": g.order}
    notes = ["works on the image of the action; the reduction G/N = image is assumed, not re-verified"]
    bound = action_bound(theorem, m, g.p, ell)
    if bound is None:
        notes.append(f"hypothesis ell > m/m_ell fails for m={m}")
        return VerificationReport(params, None, None, Verdict.SKIPPED_OUT_OF_SCOPE, notes)
    try:
        sylow = sylow_subgroup(g, ell)
        series = derived_series(sylow, cap)
    except CapExceededError:
        notes.append("cap exceeded while computing the Sylow subgroup")
        return VerificationReport(params, bound, None, Verdict.SKIPPED_TOO_LARGE, notes)
    orders = [h.order for h in series]
    term = orders[bound.nu] if bound.nu < len(orders) else orders[-1]
    acts_trivially = term == 1
    observed = {
        "sylow_order": sylow.order,
        "derived_orders": orders,
        "term_order": term,
        "acts_trivially": acts_trivially,
    }
    return VerificationReport(params, bound, observed, Verdict.CONFIRMED if acts_trivially else Verdict.REFUTED, notes)
