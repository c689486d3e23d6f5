"""Hilbert-Poincare series of the Steenrod-algebra modules behind the splittings.

Every builder takes a truncation degree ``n`` and returns a :class:`Series`.
Results are cached per ``(builder, arguments)``.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Callable

from .series import FactorList, Series, divide_exact, expand, mul, shift

__all__ = [
    "P_A1_COEFFS",
    "p_a1",
    "two_power_degrees",
    "excluded_degrees",
    "thom_factors",
    "steenrod_factors",
    "hp_steenrod",
    "hp_a_mod_sq3",
    "hp_a_mod_sq1sq2",
    "hp_ksp_cover",
    "hp_elephant_cover",
    "hp_mspin",
    "hp_mspinc",
    "hp_mspinh",
    "hp_thom",
    "hp_induced",
    "CATALOG",
]

# Graded dimensions of A1 in degrees 0..6.
P_A1_COEFFS = (1, 1, 1, 2, 1, 1, 1)

# Numerators over (1 - t^4)(1 - t^6) for the induced-up modules.
_QUESTION_MARK = (1, 0, 1, 1)
_ELEPHANT = (1, 1, 2, 1, 1, 1)
_A_MOD_SQ3 = (1, 1, 1, 1, 1)


def _check_p_a1() -> None:
    prod = mul(mul(Series.poly([1, 1], 6), Series.poly([1, 0, 1], 6)), Series.poly([1, 0, 0, 1], 6))
    if prod.coeffs != P_A1_COEFFS:
        raise AssertionError(f"P(A1) constant is wrong: {prod.coeffs}")


_check_p_a1()


def p_a1(n: int) -> Series:
    return Series.poly(P_A1_COEFFS, n)


def two_power_degrees(n: int, offset: int, min_exp: int) -> list[int]:
    """All ``2^r + offset`` with ``r >= min_exp`` lying in ``[1, n]``."""
    out = []
    r = min_exp
    while (1 << r) + offset <= n:
        d = (1 << r) + offset
        if d >= 1:
            out.append(d)
        r += 1
    return out


# Missing polynomial generators w_i of the classifying spaces: i = 2^k + 1
# with k >= 0 (Spin), k >= 1 (Spin^c), k >= 2 (Spin^h).
_EXCLUSION_MIN_EXP = {"spin": 0, "spinc": 1, "spinh": 2}


def excluded_degrees(theory: str, n: int) -> list[int]:
    return two_power_degrees(n, 1, _EXCLUSION_MIN_EXP[theory])


def thom_factors(theory: str, n: int) -> FactorList:
    """Generators in every degree i >= 2 except the excluded ones."""
    fix = {1: 1}
    for d in excluded_degrees(theory, n):
        fix[d] = fix.get(d, 0) + 1
    return FactorList(fix, euler=-1)


def steenrod_factors(n: int, min_exp: int = 1) -> FactorList:
    return FactorList({d: -1 for d in two_power_degrees(n, -1, min_exp)})


_QUOTIENT_BASE = FactorList({4: -1, 6: -1})


@lru_cache(maxsize=None)
def hp_steenrod(n: int) -> Series:
    return expand(steenrod_factors(n), n)


@lru_cache(maxsize=None)
def _a1_quotient_series(numerator: tuple[int, ...], n: int) -> Series:
    fl = steenrod_factors(n, min_exp=3) * _QUOTIENT_BASE
    return fl.apply(Series.poly(numerator, n))


def hp_a_mod_sq3(n: int) -> Series:
    return _a1_quotient_series(_A_MOD_SQ3, n)


def hp_a_mod_sq1sq2(n: int) -> Series:
    return _a1_quotient_series((1,), n)


def hp_ksp_cover(k: int, n: int) -> Series:
    if k < 0 or 8 * k > n:
        raise ValueError(f"ksp<{8 * k}> is not visible below degree {n}")
    return shift(_a1_quotient_series(_QUESTION_MARK, n), 8 * k)


def hp_elephant_cover(k: int, n: int) -> Series:
    if k < 0 or 8 * k + 4 > n:
        raise ValueError(f"Sigma^{8 * k + 4} F is not visible below degree {n}")
    return shift(_a1_quotient_series(_ELEPHANT, n), 8 * k + 4)


@lru_cache(maxsize=None)
def hp_thom(theory: str, n: int) -> Series:
    return expand(thom_factors(theory, n), n)


def hp_mspin(n: int) -> Series:
    return hp_thom("spin", n)


def hp_mspinc(n: int) -> Series:
    return hp_thom("spinc", n)


def hp_mspinh(n: int) -> Series:
    return hp_thom("spinh", n)


@lru_cache(maxsize=None)
def hp_induced(pb: Series) -> Series:
    """Series of ``A (x)_{A1} B`` from the series ``pb`` of an A1-module B.

    A is free over A1, so the result is ``P(A) * P(B) / P(A1)``; the division
    is carried out exactly and fails loudly if it leaves a remainder.
    """
    if not pb.is_nonnegative():
        raise ValueError("a Hilbert series cannot have negative coefficients")
    n = pb.truncation
    lifted = steenrod_factors(n).apply(pb)
    return divide_exact(lifted, p_a1(n))


def _induced_named(module: str) -> Callable[[int], Series]:
    def build(n: int) -> Series:
        from . import a1

        return hp_induced(a1.hilbert(a1.builtin(module), n))

    return build


CATALOG: dict[str, Callable[[int], Series]] = {
    "P_A": hp_steenrod,
    "P_A1": p_a1,
    "P_A_mod_Sq3": hp_a_mod_sq3,
    "P_A_mod_Sq1Sq2": hp_a_mod_sq1sq2,
    "P_ksp": lambda n: hp_ksp_cover(0, n),
    "P_Sigma4F": lambda n: hp_elephant_cover(0, n),
    "P_ku": _induced_named("C"),
    "P_MSpin": hp_mspin,
    "P_MSpinc": hp_mspinc,
    "P_MSpinh": hp_mspinh,
}
