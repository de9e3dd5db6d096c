from fractions import Fraction

import pytest

from symspec.domains import (
    CARTAN_FAMILIES,
    DomainError,
    DomainParams,
    classification_table,
    f_chain_tops,
    make_domain,
)

# (label, a, b, r, d, N, rho) for the catalogued constructions
CATALOG = [
    ("I(1,1)", 1, 0, 1, 1, 2, Fraction(1)),
    ("I(2,2)", 2, 0, 2, 4, 4, Fraction(2)),
    ("I(2,3)", 2, 1, 2, 6, 5, Fraction(3)),
    ("I(1,4)", 1, 3, 1, 4, 5, Fraction(4)),
    ("II(4)", 4, 0, 2, 6, 6, Fraction(3)),
    ("II(5)", 4, 2, 2, 10, 8, Fraction(5)),
    ("II(6)", 4, 0, 3, 15, 10, Fraction(5)),
    ("III(2)", 1, 0, 2, 3, 3, Fraction(3, 2)),
    ("III(3)", 1, 0, 3, 6, 4, Fraction(2)),
    ("IV(4)", 2, 0, 2, 4, 4, Fraction(2)),
    ("IV(6)", 4, 0, 2, 6, 6, Fraction(3)),
    ("V", 6, 4, 2, 16, 12, Fraction(8)),
    ("VI", 8, 0, 3, 27, 18, Fraction(9)),
]


@pytest.mark.parametrize("label,a,b,r,d,N,rho", CATALOG)
def test_catalog_rows(label, a, b, r, d, N, rho):
    dom = make_domain(label)
    assert (dom.a, dom.b, dom.r) == (a, b, r)
    assert (dom.d, dom.N, dom.rho) == (d, N, rho)
    assert dom.label == label


@pytest.mark.parametrize("label,a,b,r,d,N,rho", CATALOG)
def test_derived_invariants(label, a, b, r, d, N, rho):
    dom = make_domain(label)
    # recompute d and N from the raw triple
    assert 2 * dom.d == 2 * r + a * r * (r - 1) + 2 * b * r
    assert dom.N == 2 + a * (r - 1) + b
    assert dom.N - 1 == 1 + b + (r - 1) * a
    assert dom.N == dom.rho + Fraction(a, 2) * (r - 1) + 1


def test_keyword_size_forms():
    assert make_domain("I", r=2, s=3) == make_domain("I(2,3)")
    assert make_domain("II", n=5) == make_domain("II(5)")
    assert make_domain("III", r=2) == make_domain("III(2)")
    assert make_domain("IV", s=5) == make_domain("IV(5)")


def test_raw_triple():
    dom = make_domain(a=2, b=1, r=1)
    assert (dom.d, dom.N, dom.rho) == (2, 3, Fraction(2))
    assert dom.a == 1  # normalized: a is vacuous at rank one
    assert dom.label is None


def test_rank_one_a_normalization():
    assert make_domain(a=7, b=0, r=1) == make_domain("I(1,1)")
    assert make_domain(a=7, b=0, r=1).a == 1


def test_equality_is_by_triple():
    # the classical coincidence: I(2,2) and IV(4) share (a,b,r) = (2,0,2)
    assert make_domain("I(2,2)") == make_domain("IV(4)")
    assert hash(make_domain("I(2,2)")) == hash(make_domain("IV(4)"))
    assert make_domain("I(2,2)") != make_domain("I(2,3)")


def test_type_II_genus_parity():
    for n in range(4, 12):
        dom = make_domain(f"II({n})")
        r, eps = divmod(n, 2)
        assert dom.N == 4 * r + 2 * eps - 2
        assert dom.b == 2 * eps


@pytest.mark.parametrize(
    "bad",
    [
        "VII",
        "I(3,2)",
        "I(0,4)",
        "II(3)",
        "II(4,2)",
        "III(1)",
        "IV(3)",
        "V(2)",
        "VI(3)",
        "I",
    ],
)
def test_bad_labels(bad):
    with pytest.raises(DomainError):
        make_domain(bad)


def test_bad_raw_triples():
    with pytest.raises(DomainError):
        make_domain(a=2, b=0, r=0)
    with pytest.raises(DomainError):
        make_domain(a=-1, b=0, r=1)
    with pytest.raises(DomainError):
        make_domain(a=2, b=-1, r=1)
    with pytest.raises(DomainError):
        make_domain(a=0, b=0, r=2)  # reducible polydisc
    with pytest.raises(DomainError):
        make_domain(a=2, b=0)  # missing r
    with pytest.raises(DomainError):
        make_domain("I(1,1)", a=1, b=0, r=1)  # label and raw together


def test_to_dict_rho_exact_rational():
    assert make_domain("III(2)").to_dict()["rho"] == "3/2"
    assert make_domain("VI").to_dict()["rho"] == "9"


def test_classification_table_gamma_zero():
    rows = {row.label: row for row in classification_table(0)}
    assert rows["I(r,s)"].schatten_condition == "p > (r+s-1)/(r+s-alpha)"
    assert rows["I(r,s)"].F_description == "{r-1-k}"
    assert rows["VI"].F_description == "{8-k}"
    assert rows["III(r)"].F_description == "{(r-1)/2-k, (r-2)/2-k}"
    assert rows["IV(s)"].F_description == "{(s-2)/2-k, -k}"
    assert rows["V"].schatten_condition == "p > 11/(12-alpha)"
    assert rows["VI"].B_gamma_description == "(-inf, 18) \\ {8-k}"
    assert len(rows) == 6


def test_classification_table_gamma_substitution():
    rows = {row.label: row for row in classification_table(Fraction(1, 2))}
    assert rows["I(r,s)"].schatten_condition == "p > (r+s-1)/(r+s+1/2-alpha)"
    assert rows["V"].B_gamma_description == "(-inf, 25/2) \\ {3-k}"
    assert rows["VI"].schatten_condition == "p > 17/(18+1/2-alpha)"


def test_classification_table_requires_gamma_above_minus_one():
    with pytest.raises(DomainError):
        classification_table(-1)
    classification_table(Fraction(-1, 2))  # fine


def test_table_families_align():
    labels = [row.label for row in classification_table(0)]
    assert labels == [fam["type"] for fam in CARTAN_FAMILIES]


@pytest.mark.parametrize("label", ["I(1,1)", "I(2,3)", "III(2)", "III(3)", "IV(5)", "V", "VI"])
def test_chain_tops_describe_F(label):
    # the chain tops are exactly the maximal F elements per residue class
    from symspec.gindikin import in_F

    dom = make_domain(label)
    tops = f_chain_tops(dom)
    assert tops == sorted(tops, reverse=True)
    for top in tops:
        assert in_F(dom, top).member
        assert in_F(dom, top - 3).member
        assert not in_F(dom, top + 1).member or any(t > top for t in tops if (t - top).denominator == 1)
        assert not in_F(dom, top + Fraction(1, 7)).member
    assert not in_F(dom, max(tops) + 1).member


def test_direct_dataclass_rejects_bad_rank():
    with pytest.raises(DomainError):
        DomainParams(a=1, b=0, r=-1)
