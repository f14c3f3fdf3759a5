"""Family specialization, the equivariant degree pipeline, closed forms,
and the symbolic degree table."""

from fractions import Fraction

import pytest

from llstrata.series import Series
from llstrata.unfolding import (FamilySpec, MultisingularityType,
                                closed_form_degree, exp_fstar_classes,
                                family_series, generic_degree, gysin,
                                hurwitz_number, p_polynomial, specialize,
                                stratum_report)

TAU = Series.var("tau")


def test_family_weights():
    poly = FamilySpec.polynomial(3)
    assert poly.sheet_count == 4
    assert poly.value_weight == 4
    assert poly.base_weights() == {"a2": 2, "a3": 3, "a4": 4}
    assert poly.deg_space == Fraction(1, 24)

    lau = FamilySpec.laurent(2, 3)
    assert lau.sheet_count == 5
    assert lau.value_weight == 6
    assert lau.base_weights() == {"eps": 5, "c": 6, "a1": 3, "b1": 2, "b2": 4}
    assert lau.deg_space == Fraction(1, 720)


def test_multisingularity_type():
    mu = MultisingularityType.of(1, 2, 1)
    assert mu.parts == (2, 1, 1)
    assert mu.size == 4
    assert mu.codim == 3
    assert mu.aut_order == 2
    assert mu.t_exponents() == {2: 1, 1: 2}
    with pytest.raises(ValueError):
        MultisingularityType((1, 2))


def test_specialize():
    s = Series.var("psi", 2) - Series.var("nu1") * Series.var("nu2")
    lau = FamilySpec.laurent(2, 3)
    assert specialize(s, lau) == 30 * TAU ** 2
    poly = FamilySpec.polynomial(2)
    s2 = Series.var("psi") - Series.var("nu")
    assert specialize(s2, poly) == 2 * TAU


def test_gysin():
    fam = FamilySpec.laurent(2, 3)
    assert gysin(TAU ** 2, fam, "q") == Fraction(1, 6) * TAU
    assert gysin(TAU ** 2, fam, "p") == Fraction(5, 6) * TAU
    poly = FamilySpec.polynomial(3)
    assert gysin(TAU ** 2, poly, "q") == Fraction(1, 4) * TAU
    assert gysin(TAU ** 2, poly, "p") == TAU


def test_generic_degrees_spot():
    assert generic_degree(FamilySpec.laurent(1, 1)) == 1
    assert generic_degree(FamilySpec.laurent(2, 1)) == 8
    assert generic_degree(FamilySpec.laurent(2, 2)) == 96
    assert generic_degree(FamilySpec.laurent(3, 1)) == 81
    assert generic_degree(FamilySpec.polynomial(3)) == 16
    assert generic_degree(FamilySpec.polynomial(8)) == 9 ** 7


def test_caustic_laurent_2_1():
    rep = stratum_report(FamilySpec.laurent(2, 1), MultisingularityType.of(2))
    assert rep.class_B == 3 * TAU
    assert rep.deg_LL == 2
    assert rep.hurwitz == 1
    assert rep.closed_form == 2
    assert rep.closed_form_match


def test_laurent_2_2_strata():
    fam = FamilySpec.laurent(2, 2)
    maxwell = stratum_report(fam, MultisingularityType.of(1, 1))
    assert maxwell.deg_LL == 8
    assert maxwell.hurwitz == 1
    caustic = stratum_report(fam, MultisingularityType.of(2))
    assert caustic.deg_LL == 24
    assert caustic.hurwitz == 3
    assert caustic.closed_form == 24


def test_polynomial_caustic_erratum():
    rep = stratum_report(FamilySpec.polynomial(3), MultisingularityType.of(2))
    assert rep.deg_LL == 4
    assert rep.closed_form == 4  # corrected closed form
    assert rep.closed_form_printed == 1  # the printed one disagrees here
    assert rep.closed_form_match


def test_empty_strata():
    fam11 = FamilySpec.laurent(1, 1)
    for fam, parts in [(fam11, (2,)), (fam11, (1, 1)),
                       (FamilySpec.laurent(1, 2), (1, 1))]:
        rep = stratum_report(fam, MultisingularityType(parts))
        assert rep.empty
        assert rep.deg_LL == 0
        assert rep.hurwitz == 0


def test_generic_stratum_report():
    rep = stratum_report(FamilySpec.laurent(1, 1), MultisingularityType(()))
    assert rep.deg_LL == 1
    assert rep.hurwitz == Fraction(1, 2)  # the k = l automorphism


def test_mu_too_big_rejected():
    with pytest.raises(ValueError):
        stratum_report(FamilySpec.laurent(1, 1), MultisingularityType.of(2, 1))


def test_exp_fstar_equals_direct():
    for fam in (FamilySpec.polynomial(3), FamilySpec.laurent(2, 2)):
        assert exp_fstar_classes(fam, 3) == family_series(fam, 3)


def test_closed_form_generic():
    cf = closed_form_degree(FamilySpec.laurent(2, 3), MultisingularityType(()))
    assert cf.value == generic_degree(FamilySpec.laurent(2, 3))


def test_hurwitz_normalization():
    # k = l doubles the automorphism factor
    assert hurwitz_number(FamilySpec.laurent(2, 2), MultisingularityType.of(2)) == 3
    assert hurwitz_number(FamilySpec.laurent(2, 1), MultisingularityType.of(2)) == 1


EXPECTED_P = {
    (2,): {(0, 1): Fraction(1), (0, 0): Fraction(-1)},
    (1, 1): {(1, 1): Fraction(1, 2), (0, 1): Fraction(-2), (0, 0): Fraction(1)},
    (3,): {(0, 2): Fraction(1), (0, 1): Fraction(-5), (1, 0): Fraction(2)},
    (2, 1): {(1, 2): Fraction(1), (0, 2): Fraction(-6), (1, 1): Fraction(-1),
             (0, 1): Fraction(18), (1, 0): Fraction(-6)},
    (1, 1, 1): {(2, 2): Fraction(1, 6), (1, 2): Fraction(-2),
                (0, 2): Fraction(20, 3), (1, 1): Fraction(1),
                (0, 1): Fraction(-40, 3), (1, 0): Fraction(4)},
}


@pytest.mark.parametrize("parts", sorted(EXPECTED_P, key=lambda p: (sum(p), p)))
def test_p_table_row(parts):
    poly = p_polynomial(MultisingularityType(parts))
    assert poly.as_dict() == EXPECTED_P[parts]


def test_p_polynomial_factored_row():
    # the (2,1) row equals (kl - 3)(kl(k+l) - 6kl + 2(k+l)) as a polynomial
    poly = p_polynomial(MultisingularityType.of(2, 1))
    for k, l in [(1, 1), (2, 3), (3, 5), (4, 4), (2, 7)]:
        kl, s = k * l, k + l
        assert poly(k, l) == (kl - 3) * (kl * s - 6 * kl + 2 * s)


def test_p_value_in_report():
    rep = stratum_report(FamilySpec.laurent(2, 2), MultisingularityType.of(2))
    assert rep.p_value == 3  # kl - 1 at k = l = 2
