"""Summand counts for the 2-local splittings of MSpin, MSpin^c and MSpin^h.

Each splitting is a wedge of connective K-theory type summands indexed by
partitions plus a wedge of suspended Eilenberg-Mac Lane spectra HZ/2.  The
number of HZ/2 summands in each degree is recovered from the cohomology
identity

    P(H^* Thom) = sum over K-type summands of P(H^* summand) + R(t) * P(A)

and the 2-torsion of the homotopy groups is R(t) plus what the K-type
summands contribute through Bott periodicity.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping

from . import a1, catalog
from .partitions import build_partition_table
from .series import FactorList, Series, divide_exact, expand, mul

__all__ = [
    "Theory",
    "SplittingError",
    "Family",
    "SummandCensus",
    "census",
    "census_series",
    "em_series",
    "em_series_closed_form",
    "ktheory_torsion_series",
    "torsion_series",
    "rank",
    "rank_table",
]


class Theory(enum.Enum):
    SPIN = "spin"
    SPINC = "spinc"
    SPINH = "spinh"

    @classmethod
    def parse(cls, name: str | Theory) -> Theory:
        if isinstance(name, Theory):
            return name
        try:
            return cls(name.lower().replace("^", "").replace("_", ""))
        except ValueError:
            raise ValueError(f"unknown theory {name!r}; use spin, spinc or spinh") from None

    @property
    def label(self) -> str:
        return {"spin": "Spin", "spinc": "Spin^c", "spinh": "Spin^h"}[self.value]


class SplittingError(ArithmeticError):
    """A splitting identity produced an impossible count."""


@dataclass(frozen=True)
class Family:
    """One kind of K-theory type summand, e.g. ``ko<8k+2>``.

    ``module`` is the A1-module whose induced-up A-module is the cohomology
    of the summand at base degree 0; ``multiplicity`` maps base degree to
    the number of copies.
    """

    name: str
    module: a1.A1Module
    multiplicity: Mapping[int, int]


@dataclass(frozen=True)
class SummandCensus:
    theory: Theory
    truncation: int
    families: tuple[Family, ...]

    def family(self, name: str) -> Family:
        for f in self.families:
            if f.name == name:
                return f
        raise KeyError(name)


@lru_cache(maxsize=None)
def _ko2_module() -> a1.A1Module:
    # H^* ko<2> = A // A1-style quotient A / A Sq3, i.e. induced from A1 / A1 Sq3.
    return a1.quotient(a1.builtin("A1"), {3: [0b01]})


def census(theory: Theory | str, n: int) -> SummandCensus:
    """Multiplicities of every K-type summand with base degree <= ``n``.

    Summands based above ``n`` have no cohomology or homotopy below ``n``.
    """
    theory = Theory.parse(theory)
    pt = build_partition_table(n // 2 + 2)
    if theory is Theory.SPIN:
        fams = (
            Family("ko<8k>", a1.builtin("TrivialF2"),
                   {8 * k: pt.p1(2 * k) for k in range(n // 8 + 1)}),
            Family("ko<8k+2>", _ko2_module(),
                   {8 * k + 2: pt.p1(2 * k + 1) for k in range((n - 2) // 8 + 1) if 8 * k + 2 <= n}),
        )
    elif theory is Theory.SPINC:
        fams = (Family("ku<4m>", a1.builtin("C"), {4 * m: pt.p(m) for m in range(n // 4 + 1)}),)
    else:
        fams = (
            Family("ksp<8k>", a1.builtin("QuestionMark"),
                   {8 * k: pt.p(2 * k) for k in range(n // 8 + 1)}),
            Family("Sigma^{8k+4}F", a1.builtin("Elephant"),
                   {8 * k + 4: pt.p(2 * k + 1) for k in range((n - 4) // 8 + 1) if 8 * k + 4 <= n}),
        )
    return SummandCensus(theory, n, fams)


def _multiplicity_series(mult: Mapping[int, int], n: int) -> Series:
    c = [0] * (n + 1)
    for base, m in mult.items():
        if base <= n:
            c[base] += m
    return Series(c)


@lru_cache(maxsize=None)
def census_series(theory: Theory | str, n: int) -> Series:
    """Sum of the Hilbert series of all K-type summands, through degree ``n``."""
    theory = Theory.parse(theory)
    total = Series.zero(n)
    for fam in census(theory, n).families:
        pb = a1.hilbert(fam.module, n)
        unit = catalog.hp_induced(pb)
        if unit.valuation() != 0 or unit[0] != 1:
            raise SplittingError(f"{fam.name} summand is not connective with a bottom cell")
        # sum_b m_b t^b P(A (x) B) = P(A (x) B') with P(B') = (sum_b m_b t^b) P(B)
        total = total + catalog.hp_induced(mul(_multiplicity_series(fam.multiplicity, n), pb))
    return total


def _require_nonnegative(s: Series, what: str) -> Series:
    for k, x in enumerate(s):
        if x < 0:
            raise SplittingError(f"{what} has negative coefficient {x} in degree {k}")
    return s


@lru_cache(maxsize=None)
def _em_solved(theory: Theory, n: int) -> Series:
    num = catalog.hp_thom(theory.value, n) - census_series(theory, n)
    r = divide_exact(num, catalog.steenrod_factors(n))
    return _require_nonnegative(r, f"R(t) for {theory.label}")


def em_series_closed_form(n: int, min_r: int = 2) -> Series:
    """Closed form of R(t) for MSpin^h.

    The product runs over ``n >= 2`` avoiding ``2^r + 1`` and ``2^r - 1`` for
    ``r >= min_r``.  ``min_r`` is 1 or 2 with identical results; 0 would also
    drop degree 2 and is wrong.
    """
    fix = {1: 2}
    for d in catalog.two_power_degrees(n, 1, min_r) + catalog.two_power_degrees(n, -1, min_r):
        if d >= 2:
            fix[d] = 1
    head = expand(FactorList(fix, euler=-1), n)

    pt = build_partition_table(n // 4 + 2)
    even = _multiplicity_series({8 * k: pt.p(2 * k) for k in range(n // 8 + 1)}, n)
    odd = _multiplicity_series({8 * k: pt.p(2 * k + 1) for k in range(n // 8 + 1)}, n)
    tail = mul(even, Series.poly([1, 0, 1, 1], n)) + mul(odd, Series.poly([0, 0, 0, 0, 1, 1, 2, 1, 1, 1], n))
    return head - divide_exact(tail, catalog.p_a1(n))


@lru_cache(maxsize=None)
def em_series(theory: Theory | str, n: int) -> Series:
    """Number of Sigma^k HZ/2 summands in each degree ``k <= n``.

    For MSpin^h the solved series is also checked against the closed form.
    """
    theory = Theory.parse(theory)
    r = _em_solved(theory, n)
    if theory is Theory.SPINH:
        closed = em_series_closed_form(n)
        if closed != r:
            bad = next(k for k in range(n + 1) if closed[k] != r[k])
            raise SplittingError(f"closed and solved R(t) disagree in degree {bad}: {closed[bad]} != {r[bad]}")
    return r


# Torsion of pi_* ko in degrees 8n+1, 8n+2 and of pi_* ksp in 8n+5, 8n+6.
_KO_TORSION = (1, 2)
_KSP_TORSION = (5, 6)


def _periodic(n: int, starts: Mapping[int, int], offsets: tuple[int, ...]) -> list[int]:
    """Each summand whose torsion first appears at period ``k`` adds one Z/2
    in degree ``8j + o`` for every ``j >= k`` and offset ``o``."""
    c = [0] * (n + 1)
    running = 0
    for j in range(n // 8 + 1):
        running += starts.get(j, 0)
        for o in offsets:
            if 8 * j + o <= n:
                c[8 * j + o] += running
    return c


@lru_cache(maxsize=None)
def ktheory_torsion_series(theory: Theory | str, n: int) -> Series:
    """Z/2 counts contributed by the K-theory type summands alone."""
    theory = Theory.parse(theory)
    if theory is Theory.SPINC:
        return Series.zero(n)
    fams = census(theory, n).families
    if theory is Theory.SPINH:
        # ksp<8k> and Sigma^{8k+4}F both carry torsion from 8k+5 upward.
        starts: dict[int, int] = {}
        for fam in fams:
            for base, m in fam.multiplicity.items():
                starts[base // 8] = starts.get(base // 8, 0) + m
        return Series(_periodic(n, starts, _KSP_TORSION))
    ko0, ko2 = fams
    c = _periodic(n, {b // 8: m for b, m in ko0.multiplicity.items()}, _KO_TORSION)
    # ko<8k+2>: Z/2 in 8k+2, then the full ko pattern from period k+1 on.
    later = _periodic(n, {b // 8 + 1: m for b, m in ko2.multiplicity.items()}, _KO_TORSION)
    for base, m in ko2.multiplicity.items():
        c[base] += m
    return Series(a + b for a, b in zip(c, later))


@lru_cache(maxsize=None)
def torsion_series(theory: Theory | str, n: int) -> Series:
    """Rank of the 2-torsion of pi_k in each degree ``k <= n``."""
    theory = Theory.parse(theory)
    s = em_series(theory, n) + ktheory_torsion_series(theory, n)
    return _require_nonnegative(s, f"S(t) for {theory.label}")


def rank(theory: Theory | str, n: int) -> int:
    """Rank of the free part of pi_n."""
    theory = Theory.parse(theory)
    if n < 0:
        raise ValueError("degree must be nonnegative")
    m, rest = divmod(n, 4)
    if theory is Theory.SPIN:
        return build_partition_table(m).p(m) if rest == 0 else 0
    if rest == 0 or (theory is Theory.SPINC and rest == 2):
        return build_partition_table(m).prefix_sums()[m]
    return 0


def rank_table(theory: Theory | str, n: int) -> list[int]:
    """``rank(theory, k)`` for all ``k <= n`` from one partition table."""
    theory = Theory.parse(theory)
    pt = build_partition_table(n // 4 + 1)
    pre = pt.prefix_sums()
    out = []
    for k in range(n + 1):
        m, rest = divmod(k, 4)
        if theory is Theory.SPIN:
            out.append(pt.p(m) if rest == 0 else 0)
        elif rest == 0 or (theory is Theory.SPINC and rest == 2):
            out.append(pre[m])
        else:
            out.append(0)
    return out
