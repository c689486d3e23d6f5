"""Truncated formal power series with exact integer coefficients.

A :class:`Series` stores the coefficients of ``t^0 .. t^N``.  Anything above
``N`` is unknown unless the series is flagged ``exact``, meaning it is a
polynomial of degree at most ``N`` with nothing hidden in the tail.

Euler-type products ``prod_k (1 - t^k)^{e_k}`` are held symbolically as a
:class:`FactorList` and applied to a series one factor at a time, which costs
``O(N)`` per factor instead of a full convolution.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

__all__ = [
    "NonExactDivision",
    "Series",
    "FactorList",
    "add",
    "sub",
    "mul",
    "invert",
    "divide_exact",
    "expand",
    "shift",
]

# Below this many nonzero terms the sparse convolution path is used.
_SPARSE_LIMIT = 64


class NonExactDivision(ArithmeticError):
    """A division that was required to be exact left a nonzero remainder."""


class Series:
    __slots__ = ("_c", "exact")

    def __init__(self, coeffs: Iterable[int], exact: bool = False):
        c = tuple(int(x) for x in coeffs)
        if not c:
            raise ValueError("a series needs at least the constant coefficient")
        self._c = c
        self.exact = exact

    @classmethod
    def zero(cls, n: int) -> Series:
        return cls((0,) * (n + 1), exact=True)

    @classmethod
    def one(cls, n: int) -> Series:
        return cls.monomial(0, n)

    @classmethod
    def monomial(cls, d: int, n: int, c: int = 1) -> Series:
        out = [0] * (n + 1)
        if d <= n:
            out[d] = c
        return cls(out, exact=d <= n)

    @classmethod
    def poly(cls, coeffs: Iterable[int], n: int) -> Series:
        """An exact polynomial, coefficients listed from ``t^0`` upward."""
        coeffs = list(coeffs)
        out = coeffs[: n + 1] + [0] * max(0, n + 1 - len(coeffs))
        fits = not any(coeffs[n + 1 :])
        return cls(out, exact=fits)

    @property
    def truncation(self) -> int:
        return len(self._c) - 1

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self._c

    def __len__(self) -> int:
        return len(self._c)

    def __getitem__(self, k):
        return self._c[k]

    def __iter__(self):
        return iter(self._c)

    def __eq__(self, other) -> bool:
        if isinstance(other, Series):
            return self._c == other._c
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._c)

    def __repr__(self) -> str:
        head = ", ".join(str(x) for x in self._c[:8])
        more = ", ..." if len(self._c) > 8 else ""
        return f"Series([{head}{more}], N={self.truncation})"

    def degree(self) -> int:
        """Index of the highest nonzero coefficient, -1 for zero."""
        for i in range(len(self._c) - 1, -1, -1):
            if self._c[i]:
                return i
        return -1

    def valuation(self) -> int:
        """Index of the lowest nonzero coefficient, -1 for zero."""
        for i, x in enumerate(self._c):
            if x:
                return i
        return -1

    def nonzero(self) -> list[tuple[int, int]]:
        return [(i, x) for i, x in enumerate(self._c) if x]

    def truncate(self, n: int) -> Series:
        if n >= self.truncation:
            return self
        exact = self.exact and not any(self._c[n + 1 :])
        return Series(self._c[: n + 1], exact=exact)

    def is_nonnegative(self) -> bool:
        return all(x >= 0 for x in self._c)

    def __add__(self, other: Series) -> Series:
        return add(self, other)

    def __sub__(self, other: Series) -> Series:
        return sub(self, other)

    def __mul__(self, other):
        if isinstance(other, int):
            return Series((other * x for x in self._c), exact=self.exact)
        return mul(self, other)

    __rmul__ = __mul__

    def __neg__(self) -> Series:
        return Series((-x for x in self._c), exact=self.exact)


def _common(a: Series, b: Series) -> tuple[int, bool]:
    n = min(a.truncation, b.truncation)
    exact = a.exact and b.exact and a.degree() <= n and b.degree() <= n
    return n, exact


def add(a: Series, b: Series) -> Series:
    n, exact = _common(a, b)
    return Series((a[i] + b[i] for i in range(n + 1)), exact=exact)


def sub(a: Series, b: Series) -> Series:
    n, exact = _common(a, b)
    return Series((a[i] - b[i] for i in range(n + 1)), exact=exact)


def mul(a: Series, b: Series) -> Series:
    n, exact = _common(a, b)
    if exact and a.degree() + b.degree() > n:
        exact = False
    sa, sb = a.nonzero(), b.nonzero()
    if len(sa) > len(sb):
        sa, sb, a, b = sb, sa, b, a
    out = [0] * (n + 1)
    if len(sa) <= _SPARSE_LIMIT:
        bc = b.coeffs
        for i, x in sa:
            if i > n:
                break
            for j in range(n + 1 - i):
                out[i + j] += x * bc[j]
    else:
        for i, x in sa:
            if i > n:
                break
            for j, y in sb:
                if i + j > n:
                    break
                out[i + j] += x * y
    return Series(out, exact=exact)


def invert(a: Series) -> Series:
    """Multiplicative inverse; the constant term must be +1 or -1."""
    c0 = a[0]
    if c0 not in (1, -1):
        raise ValueError(f"constant term {c0} is not a unit")
    n = a.truncation
    terms = [(i, x) for i, x in a.nonzero() if i > 0]
    out = [0] * (n + 1)
    out[0] = c0
    for k in range(1, n + 1):
        s = 0
        for i, x in terms:
            if i > k:
                break
            s += x * out[k - i]
        out[k] = -s * c0
    exact = a.exact and a.degree() == 0
    return Series(out, exact=exact)


def divide_exact(num: Series, den: Series | FactorList) -> Series:
    """Quotient ``q`` with ``q * den == num``, or :class:`NonExactDivision`.

    For a series divisor the division runs upward from the lowest nonzero
    term of ``den``.  Every step must divide evenly, the coefficients of
    ``num`` below the valuation of ``den`` must vanish, and when both operands
    are exact polynomials the quotient must be a polynomial too (no leftover
    beyond the truncation).  A :class:`FactorList` divisor is applied by
    inverting each factor, then checked by multiplying back.
    """
    if isinstance(den, FactorList):
        q = den.inverse().apply(num)
        if den.apply(q) != num.truncate(q.truncation):
            raise NonExactDivision("factor division failed to round-trip")
        return q

    v = den.valuation()
    if v < 0:
        raise ZeroDivisionError("division by the zero series")
    lead = den[v]
    if any(num[i] for i in range(min(v, num.truncation + 1))):
        raise NonExactDivision(f"numerator has terms below degree {v}")
    n = num.truncation - v
    if not den.exact:
        n = min(n, den.truncation - v)
    if n < 0:
        raise ValueError("truncation too small for this divisor")
    terms = [(i - v, x) for i, x in den.nonzero() if i > v]
    # rem holds the working numerator; long division clears it bottom-up
    rem = list(num.coeffs[v:])
    q = [0] * (n + 1)
    for k in range(n + 1):
        r = rem[k]
        if r % lead:
            raise NonExactDivision(f"coefficient {r} at degree {k + v} not divisible by {lead}")
        c = r // lead
        q[k] = c
        if c:
            for i, x in terms:
                j = k + i
                if j >= len(rem):
                    break
                rem[j] -= c * x
    if num.exact and den.exact:
        # Full polynomial remainder: num - q*den over every degree it touches.
        full = [0] * (max(num.degree(), 0) + 1 + (n + 1) + den.degree())
        for i, x in num.nonzero():
            full[i] += x
        for k, c in enumerate(q):
            if c:
                for i, x in den.nonzero():
                    full[k + i] -= c * x
        if any(full):
            bad = next(i for i, x in enumerate(full) if x)
            raise NonExactDivision(f"nonzero remainder starting at degree {bad}")
        return Series(q, exact=True)
    return Series(q)


def shift(a: Series, d: int) -> Series:
    """Multiply by ``t^d`` keeping the truncation of ``a``."""
    if d < 0:
        raise ValueError("shift must be nonnegative")
    n = a.truncation
    if d == 0:
        return a
    body = a.coeffs[: max(0, n + 1 - d)]
    out = (0,) * min(d, n + 1) + body
    exact = a.exact and (a.degree() + d <= n)
    return Series(out, exact=exact)


@dataclass(frozen=True)
class FactorList:
    """Symbolic product ``prod_{k>=1} (1 - t^k)^{euler + factors.get(k, 0)}``.

    ``euler`` is an exponent shared by every ``k >= 1`` and lets infinite
    products such as ``prod_{n>=2} (1 - t^n)^{-1}`` be written as a uniform
    exponent plus a handful of corrections.  Keys of ``factors`` are >= 1 and
    exponents stored there are nonzero.
    """

    factors: Mapping[int, int] = field(default_factory=dict)
    euler: int = 0

    def __post_init__(self):
        clean = {}
        for k, e in self.factors.items():
            if k < 1:
                raise ValueError(f"factor index {k} must be >= 1")
            if e:
                clean[int(k)] = int(e)
        object.__setattr__(self, "factors", dict(sorted(clean.items())))

    def __mul__(self, other: FactorList) -> FactorList:
        merged = dict(self.factors)
        for k, e in other.factors.items():
            merged[k] = merged.get(k, 0) + e
        return FactorList(merged, self.euler + other.euler)

    def __pow__(self, m: int) -> FactorList:
        return FactorList({k: m * e for k, e in self.factors.items()}, m * self.euler)

    def inverse(self) -> FactorList:
        return self ** -1

    def exponent(self, k: int) -> int:
        return self.euler + self.factors.get(k, 0)

    def __hash__(self) -> int:
        return hash((tuple(self.factors.items()), self.euler))

    def apply(self, a: Series) -> Series:
        """Return ``a`` times this product, truncated like ``a``."""
        n = a.truncation
        c = list(a.coeffs)
        if self.euler:
            c = _apply_euler(c, self.euler)
        for k, e in self.factors.items():
            if k > n:
                break
            _apply_factor(c, k, e)
        exact = a.exact and all(e >= 0 for e in self.factors.values()) and self.euler == 0
        out = Series(c)
        if exact and out.degree() >= 0:
            # Expanding a polynomial product may still overflow the truncation.
            deg = a.degree() + sum(k * e for k, e in self.factors.items())
            exact = deg <= n
        out.exact = exact
        return out


def _apply_factor(c: list[int], k: int, e: int) -> None:
    n = len(c) - 1
    if e > 0:
        for _ in range(e):
            for i in range(n, k - 1, -1):
                c[i] -= c[i - k]
    else:
        for _ in range(-e):
            for i in range(k, n + 1):
                c[i] += c[i - k]


def _apply_euler(c: list[int], e: int) -> list[int]:
    from . import partitions

    n = len(c) - 1
    if e < 0:
        base = Series(partitions.build_partition_table(n).p_values)
        power = -e
    else:
        base = Series(_pentagonal_series(n))
        power = e
    out = Series(c)
    for _ in range(power):
        out = mul(out, base)
    return list(out.coeffs)


def _pentagonal_series(n: int) -> list[int]:
    """Coefficients of ``prod_{k>=1} (1 - t^k)`` through ``t^n``."""
    out = [0] * (n + 1)
    out[0] = 1
    j = 1
    while True:
        g1 = j * (3 * j - 1) // 2
        if g1 > n:
            break
        sign = -1 if j % 2 else 1
        out[g1] += sign
        g2 = j * (3 * j + 1) // 2
        if g2 <= n:
            out[g2] += sign
        j += 1
    return out


def expand(fl: FactorList, n: int) -> Series:
    """Expand ``fl`` as a series truncated at degree ``n``."""
    return fl.apply(Series.one(n))
