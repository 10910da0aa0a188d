import pytest
from hypothesis import given, strategies as st

from gruenkit.arith import DomainError, is_prime
from gruenkit.classgrp import (
    NONABELIAN_ELL_CUBED,
    TWO_TOWER_STEP_3,
    AbelianGroupType,
    Conclusion,
    GaloisDescriptor,
    check_pg0,
    check_pg1,
    check_pgal,
    comes_from,
    deduce_descent,
    run_scenario,
)
from gruenkit.gruen import gt2_bound

PRIMES_TO_100 = [p for p in range(2, 101) if is_prime(p)]


def naive_order(a, n):
    k, x = 1, a % n
    while x != 1:
        x = x * a % n
        k += 1
    return k


def ell_cubed(ell):
    return GaloisDescriptor.catalog(NONABELIAN_ELL_CUBED, ell)


TOWER = GaloisDescriptor.catalog(TWO_TOWER_STEP_3, 2)


# --- group types and descriptors ------------------------------------------------

def test_abelian_group_type():
    t = AbelianGroupType.from_cyclic_orders(2, [2, 4, 2])
    assert t.exponents == (2, 1, 1) and t.rank == 3 and t.order == 16
    with pytest.raises(DomainError):
        AbelianGroupType(2, (1, 2))
    with pytest.raises(DomainError):
        AbelianGroupType.from_cyclic_orders(2, [6])
    with pytest.raises(DomainError):
        AbelianGroupType(4, (1,))


@pytest.mark.parametrize("ell", [2, 3, 5, 7])
def test_ell_cubed_descriptor(ell):
    g = ell_cubed(ell)
    assert g.order == ell**3 and g.derived_structure == (ell * ell, ell)
    assert g.fixed_fields[1] == "maximal abelian subfield K" and g.derived_length == 2


def test_descriptor_validation():
    with pytest.raises(DomainError):
        GaloisDescriptor.catalog(TWO_TOWER_STEP_3, 3)
    with pytest.raises(DomainError):
        GaloisDescriptor.catalog("no_such_group", 3)
    with pytest.raises(DomainError):
        GaloisDescriptor.explicit(3, [9, 6])
    with pytest.raises(DomainError):
        GaloisDescriptor.explicit(3, [3, 3])  # cyclic abelianization forces abelian
    with pytest.raises(DomainError):
        GaloisDescriptor.explicit(3, [])
    with pytest.raises(DomainError):
        GaloisDescriptor.from_dict({"kind": "table", "ell": 3})
    g = GaloisDescriptor.explicit(3, [9, 3])
    assert g.order == 27 and g.fixed_fields[0] == "k" and g.fixed_fields[-1] == "L"
    assert GaloisDescriptor.from_dict(g.to_dict()) == g


# --- individual propositions ------------------------------------------------------

@pytest.mark.parametrize("n, h, expected", [(60, 1, Conclusion.DIVISIBILITY_HOLDS), (60, 6, Conclusion.DIVISIBILITY_HOLDS), (60, 7, Conclusion.DIVISIBILITY_FAILS)])
def test_pg0_examples(n, h, expected):
    d = check_pg0(n, h)
    assert d.conclusion is expected
    if expected is Conclusion.DIVISIBILITY_FAILS:
        assert d.justification[-1].name == "hypotheses_incoherent"


def test_pg1_examples():
    assert check_pg1(6, 3, 2).conclusion is Conclusion.DIVISIBILITY_HOLDS
    assert check_pg1(8, 2, 2).conclusion is Conclusion.DIVISIBILITY_FAILS
    for idx in (1, 2, 5, 60):
        assert check_pg1(1, idx, 7).conclusion is Conclusion.DIVISIBILITY_HOLDS
    with pytest.raises(DomainError):
        check_pg1(0, 1, 1)


def test_pgal_examples():
    # Q(zeta_29): the degree-7 subextension, 2-part of type (2,2,2)
    rank = AbelianGroupType.from_cyclic_orders(2, [2, 2, 2]).rank
    d = check_pgal(7, 2, rank)
    assert d.conclusion is Conclusion.RANK_DIVISIBILITY_PASS and d.data["f"] == 3
    d = check_pgal(5, 2, 2)
    assert d.conclusion is Conclusion.RANK_DIVISIBILITY_FAIL and d.data["f"] == 4
    for n in (3, 5, 7, 11):
        for p in PRIMES_TO_100:
            if p % n == 1:
                for r in range(5):
                    d = check_pgal(n, p, r)
                    assert d.conclusion is Conclusion.RANK_DIVISIBILITY_PASS and d.data["f"] == 1


def test_pgal_errors():
    with pytest.raises(DomainError):
        check_pgal(7, 7, 1)
    with pytest.raises(DomainError):
        check_pgal(9, 2, 1)


def test_comes_from_examples():
    d = comes_from(2, 7, 2)
    assert d.conclusion is Conclusion.COMES_FROM_SUBFIELD and d.data["f"] == 3 and d.subfield == "k"
    assert comes_from(0, 5, 11).conclusion is Conclusion.COMES_FROM_SUBFIELD
    assert comes_from(3, 7, 2).conclusion is Conclusion.NO_CONCLUSION
    with pytest.raises(DomainError):
        comes_from(1, 4, 3)


@given(st.integers(0, 30), st.sampled_from([3, 5, 7, 11, 13, 17]), st.sampled_from(PRIMES_TO_100))
def test_comes_from_iff_rank_below_f_and_monotone(r, n, p):
    if p == n:
        return
    f = naive_order(p, n)
    d = comes_from(r, n, p)
    assert (d.conclusion is Conclusion.COMES_FROM_SUBFIELD) == (r < f)
    if d.conclusion is Conclusion.COMES_FROM_SUBFIELD:
        for smaller in range(r):
            assert comes_from(smaller, n, p).conclusion is Conclusion.COMES_FROM_SUBFIELD


# --- descent through the derived series ---------------------------------------------

def test_descent_examples():
    d = deduce_descent(ell_cubed(3), 3, 5, 5)
    assert d.conclusion is Conclusion.COMES_FROM_SUBFIELD and d.subfield == "maximal abelian subfield K"
    assert d.justification[-1].name == "ell_cubed_descent"
    d = deduce_descent(ell_cubed(3), 3, 7, 2)
    assert d.conclusion is Conclusion.COMES_FROM_SUBFIELD and d.subfield == "maximal abelian subfield K"
    d = deduce_descent(TOWER, 2, 5, 3)
    assert d.conclusion is Conclusion.SUBGROUP_EMBEDS and d.subfield == "k^2" and d.data["nu"] == 2
    assert deduce_descent(ell_cubed(3), 3, 7, 3).conclusion is Conclusion.NO_CONCLUSION


def test_descent_nu_zero_attributes_to_base_field():
    d = deduce_descent(ell_cubed(3), 3, 2, 1)  # m = 1 < m_ell = 2
    assert d.data["nu"] == 0 and d.subfield == "base field k"
    assert d.subfields == ("base field k", "maximal abelian subfield K")
    d = deduce_descent(ell_cubed(5), 5, 11, 0)
    assert d.data["nu"] == 0 and d.conclusion is Conclusion.COMES_FROM_SUBFIELD


def test_descent_errors():
    with pytest.raises(DomainError):
        deduce_descent(ell_cubed(3), 3, 3, 1)
    with pytest.raises(DomainError):
        deduce_descent(ell_cubed(3), 5, 2, 1)
    with pytest.raises(DomainError):
        deduce_descent(ell_cubed(3), 3, 2, -1)


def test_descent_on_explicit_descriptor():
    g = GaloisDescriptor.explicit(2, [4, 2, 2], ["k", "A", "B", "L"])
    d = deduce_descent(g, 2, 3, 3)
    assert d.data["nu"] == 2 and d.subfield == "B" and d.conclusion is Conclusion.COMES_FROM_SUBFIELD
    assert deduce_descent(g, 2, 3, 4).conclusion is Conclusion.NO_CONCLUSION


def shortcut_cases(ell):
    for p in PRIMES_TO_100:
        if p == ell:
            continue
        if p % ell == 1:
            yield p, [1]
        elif p % ell == ell - 1:
            yield p, [1, 2]
        else:
            yield p, [1, 2, 3]


@pytest.mark.parametrize("ell", [3, 5, 7])
def test_shortcut_cases_follow_from_generic_bound(ell):
    g = ell_cubed(ell)
    for p, ranks in shortcut_cases(ell):
        for m in ranks:
            d = deduce_descent(g, ell, p, m)
            assert d.data["nu"] <= 1
            assert d.conclusion is Conclusion.COMES_FROM_SUBFIELD
            assert "maximal abelian subfield K" in d.subfields


@given(st.integers(0, 200), st.sampled_from(PRIMES_TO_100), st.sampled_from([2, 3, 5, 7, 11]))
def test_descent_nu_matches_gt2(m, p, ell):
    if p == ell:
        return
    g = GaloisDescriptor.explicit(ell, [ell * ell] + [ell] * 9)
    d = deduce_descent(g, ell, p, m)
    expected = 0 if m == 0 else gt2_bound(m, p, ell).nu
    assert d.data["nu"] == expected


@given(st.integers(0, 20), st.sampled_from(PRIMES_TO_100), st.sampled_from([3, 5, 7]))
def test_justifications_are_complete(m, p, ell):
    if p == ell:
        return
    for d in (deduce_descent(ell_cubed(ell), ell, p, m), comes_from(m, ell, p) if ell != p else None):
        if d is None or d.conclusion is Conclusion.NO_CONCLUSION:
            continue
        assert d.justification
        assert all(rule.parameters for rule in d.justification)
        if d.conclusion is Conclusion.COMES_FROM_SUBFIELD:
            assert d.justification[-1].name in {"ell_cubed_descent", "rank_below_order_descent"}


# --- scenario documents --------------------------------------------------------------

def test_scenario_with_class_group_type():
    doc = {
        "galois": {"kind": "catalog", "catalog_id": NONABELIAN_ELL_CUBED},
        "ell": 3,
        "p": 7,
        "class_group_type": {"p": 7, "exponents": [2, 1]},
        "class_numbers": {"pg1": {"h_L": 8, "index_LK": 2, "h_K": 2}, "pg0": {"n": 60, "h": 6}},
    }
    out = run_scenario(doc)
    assert [d.conclusion for d in out] == [
        Conclusion.COMES_FROM_SUBFIELD,
        Conclusion.DIVISIBILITY_HOLDS,
        Conclusion.DIVISIBILITY_FAILS,
    ]


@pytest.mark.parametrize(
    "doc",
    [
        [],
        {},
        {"bogus": 1},
        {"galois": {"kind": "catalog", "catalog_id": NONABELIAN_ELL_CUBED}, "ell": 3, "p": 5},
        {"galois": {"kind": "catalog", "catalog_id": NONABELIAN_ELL_CUBED}, "ell": 3, "p": 5, "observed_rank": "2"},
        {"galois": {"kind": "catalog", "catalog_id": NONABELIAN_ELL_CUBED}, "ell": 3, "p": 5, "observed_rank": True},
        {"galois": {"kind": "catalog", "catalog_id": NONABELIAN_ELL_CUBED}, "ell": 3, "p": 5, "class_group_type": {"p": 7, "exponents": [1]}},
        {"class_numbers": {"pg2": {}}},
        {"class_numbers": {"pg1": {"h_L": 8}}},
        {"class_numbers": []},
    ],
)
def test_malformed_scenarios_are_rejected(doc):
    with pytest.raises(DomainError):
        run_scenario(doc)
