import pytest

from bordcalc import a1, catalog
from bordcalc.series import Series, divide_exact, expand, FactorList, mul, shift
from conftest import admissible_count, count_multisets

N = 60


def generators(theory, n):
    bad = set(catalog.excluded_degrees(theory, n))
    return [i for i in range(2, n + 1) if i not in bad]


def test_exclusion_sets():
    assert catalog.excluded_degrees("spin", 40) == [2, 3, 5, 9, 17, 33]
    assert catalog.excluded_degrees("spinc", 40) == [3, 5, 9, 17, 33]
    assert catalog.excluded_degrees("spinh", 40) == [5, 9, 17, 33]
    assert len(catalog.excluded_degrees("spin", 19999)) == 15


def test_p_a1_constant():
    assert catalog.p_a1(10).coeffs[:7] == (1, 1, 1, 2, 1, 1, 1)
    assert catalog.p_a1(10) == a1.hilbert(a1.builtin("A1"), 10)


def test_mspinh_low_degrees():
    # w2, w3, w4, w6, ... ; w5 is absent
    assert catalog.hp_mspinh(6).coeffs == (1, 0, 1, 1, 2, 1, 4)


def test_mspin_low_degrees():
    # w4, w6, w7, w8, ... ; w2, w3, w5 are absent
    assert catalog.hp_mspin(8).coeffs == (1, 0, 0, 0, 1, 0, 1, 1, 2)
    # w2, w4, w6, w7, ... ; w3 and w5 are absent
    assert catalog.hp_mspinc(4).coeffs == (1, 0, 1, 0, 2)


@pytest.mark.parametrize("theory", ["spin", "spinc", "spinh"])
def test_thom_series_counts_monomials(theory):
    s = catalog.hp_thom(theory, N)
    gens = generators(theory, N)
    assert [count_multisets(gens, d) for d in range(N + 1)] == list(s.coeffs)


def test_steenrod_counts_admissible_monomials():
    s = catalog.hp_steenrod(N)
    assert s.coeffs[:6] == (1, 1, 1, 2, 2, 2)
    assert [admissible_count(d) for d in range(N + 1)] == list(s.coeffs)
    assert all(x > 0 for x in catalog.hp_steenrod(2000))


def test_a_mod_sq1sq2():
    s = catalog.hp_a_mod_sq1sq2(N)
    assert s.coeffs[:8] == (1, 0, 0, 0, 1, 0, 1, 1)
    parts = [4, 6] + catalog.two_power_degrees(N, -1, 3)
    assert [count_multisets(parts, d) for d in range(N + 1)] == list(s.coeffs)
    rearranged = FactorList({1: 1, 3: 1, 4: -1, 6: -1}).apply(catalog.hp_steenrod(N))
    assert rearranged == s


def test_a_mod_sq3():
    s = catalog.hp_a_mod_sq3(N)
    assert s.coeffs[:5] == (1, 1, 1, 1, 2)
    assert s.is_nonnegative()
    # linear-algebra route: induce up the explicit quotient A1 / A1 Sq3
    quot = a1.quotient(a1.builtin("A1"), {3: [0b01]})
    assert catalog.hp_induced(a1.hilbert(quot, N)) == s


def test_ksp_cover():
    s0 = catalog.hp_ksp_cover(0, N)
    assert s0.coeffs[:4] == (1, 0, 1, 1)
    assert catalog.hp_ksp_cover(1, N) == shift(s0, 8)
    assert shift(s0, 3) == catalog.hp_steenrod(N) - catalog.hp_a_mod_sq3(N)
    with pytest.raises(ValueError):
        catalog.hp_ksp_cover(8, N)


def test_ksp_numerator_by_exact_division():
    # [(1+t)(1+t^2)(1+t^3) - (1+t+t^2+t^3+t^4)] / t^3 = 1 + t^2 + t^3
    num = catalog.p_a1(12) - Series.poly([1, 1, 1, 1, 1], 12)
    q = divide_exact(num, Series.monomial(3, 12))
    assert q.coeffs[:4] == (1, 0, 1, 1) and not any(q.coeffs[4:])


def test_elephant_cover():
    s = catalog.hp_elephant_cover(0, N)
    assert s.valuation() == 4
    # numerator 1 + t + 2t^2 + t^3 + t^4 + t^5 over (1 - t^4)(1 - t^6)
    assert s.coeffs[4:8] == (1, 1, 2, 1)
    assert mul(s, Series.poly([1, 0, 0, 0, -1, 0, -1, 0, 0, 0, 1], N)).coeffs[4:12] == (1, 1, 2, 1, 1, 1, 0, 1)
    unshifted = catalog.hp_induced(a1.hilbert(a1.builtin("Elephant"), N))
    assert shift(unshifted, 4) == s
    assert shift(unshifted, 1) == catalog.hp_steenrod(N) - catalog.hp_a_mod_sq1sq2(N)
    num = catalog.p_a1(12) - Series.one(12)
    assert divide_exact(num, Series.monomial(1, 12)).coeffs[:6] == (1, 1, 2, 1, 1, 1)


def test_induced():
    assert catalog.hp_induced(Series.one(N)) == catalog.hp_a_mod_sq1sq2(N)
    assert catalog.hp_induced(Series.poly([1, 0, 1, 1], N)) == catalog.hp_ksp_cover(0, N)
    assert catalog.hp_induced(catalog.p_a1(N)) == catalog.hp_steenrod(N)
    pc = catalog.hp_induced(Series.poly([1, 0, 1], N))
    assert pc.is_nonnegative()
    # A (x)_{A1} C = A // E(1): P(A) / ((1 + t)(1 + t^3))
    assert mul(pc, Series.poly([1, 1, 0, 1, 1], N)) == catalog.hp_steenrod(N)
    with pytest.raises(ValueError):
        catalog.hp_induced(Series.poly([1, -1], N))


@pytest.mark.parametrize("name", sorted(catalog.CATALOG))
def test_catalog_nonnegative_and_connective(name):
    s = catalog.CATALOG[name](300)
    assert s.truncation == 300
    assert s.is_nonnegative()
    assert s[s.valuation()] == 1


def test_mixed_truncation_exact_sequences_long():
    n = 2000
    a = catalog.hp_steenrod(n)
    assert shift(catalog.hp_ksp_cover(0, n), 3) == a - catalog.hp_a_mod_sq3(n)
    assert shift(catalog.hp_induced(a1.hilbert(a1.builtin("Elephant"), n)), 1) == a - catalog.hp_a_mod_sq1sq2(n)
