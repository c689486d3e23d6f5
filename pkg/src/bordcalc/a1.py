"""Finite graded modules over A1 = <Sq1, Sq2> and their Margolis homology.

Vectors in one degree are Python ints used as bit sets over that degree's
basis.  A module stores, for every degree, the image of each basis element
under Sq1 and Sq2 as such a bit set in the target degree.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .series import Series

__all__ = [
    "A1Module",
    "MargolisResult",
    "ModuleRelationError",
    "BUILTIN_NAMES",
    "builtin",
    "validate",
    "margolis",
    "hilbert",
    "submodule",
    "quotient",
    "rank_f2",
    "MAX_TOTAL_DIM",
    "random_rebase",
    "brute_force_homology",
]

MAX_TOTAL_DIM = 10_000


class ModuleRelationError(ValueError):
    """The Sq1/Sq2 data does not define an A1-module."""


# --- F2 linear algebra ---------------------------------------------------

def rank_f2(rows: Sequence[int]) -> int:
    basis: dict[int, int] = {}
    for r in rows:
        while r:
            top = r.bit_length() - 1
            if top in basis:
                r ^= basis[top]
            else:
                basis[top] = r
                break
    return len(basis)


def _rref(rows: Sequence[int]) -> dict[int, int]:
    """Fully reduced echelon form keyed by pivot bit."""
    basis: dict[int, int] = {}
    for r in rows:
        for p, b in basis.items():
            if r >> p & 1:
                r ^= b
        if not r:
            continue
        p = r.bit_length() - 1
        for q in list(basis):
            if basis[q] >> p & 1:
                basis[q] ^= r
        basis[p] = r
    return basis


def _reduce(v: int, basis: Mapping[int, int]) -> int:
    for p, b in basis.items():
        if v >> p & 1:
            v ^= b
    return v


def _apply(images: Sequence[int], v: int) -> int:
    out = 0
    i = 0
    while v:
        if v & 1:
            out ^= images[i]
        v >>= 1
        i += 1
    return out


# --- modules --------------------------------------------------------------

@dataclass(frozen=True)
class A1Module:
    """Graded F2 vector space with degree-raising Sq1 and Sq2 actions.

    ``basis[d]`` lists labels in degree ``d``; ``sq1[d][i]`` is the image of
    the ``i``-th basis element of degree ``d`` in degree ``d + 1`` (bit set),
    and likewise ``sq2`` into degree ``d + 2``.  Missing entries mean zero.
    """

    basis: Mapping[int, tuple[str, ...]]
    sq1: Mapping[int, tuple[int, ...]] = field(default_factory=dict)
    sq2: Mapping[int, tuple[int, ...]] = field(default_factory=dict)

    def __post_init__(self):
        basis = {int(d): tuple(labels) for d, labels in sorted(self.basis.items()) if labels}
        object.__setattr__(self, "basis", basis)
        for name in ("sq1", "sq2"):
            step = 1 if name == "sq1" else 2
            raw = getattr(self, name)
            full = {}
            for d, labels in basis.items():
                imgs = tuple(raw.get(d, ())) + (0,) * (len(labels) - len(raw.get(d, ())))
                if len(imgs) != len(labels):
                    raise ModuleRelationError(f"{name} in degree {d} has {len(imgs)} images for {len(labels)} cells")
                limit = 1 << self.dim(d + step)
                for x in imgs:
                    if x < 0 or x >= limit:
                        raise ModuleRelationError(f"{name} image {x:b} out of range in degree {d + step}")
                full[d] = imgs
            object.__setattr__(self, name, full)
        if self.total_dim() > MAX_TOTAL_DIM:
            raise ValueError(f"module dimension exceeds {MAX_TOTAL_DIM}")

    @classmethod
    def from_cells(
        cls,
        cells: Mapping[str, int],
        sq1: Mapping[str, Sequence[str]] = (),
        sq2: Mapping[str, Sequence[str]] = (),
    ) -> A1Module:
        """Build a module from labelled cells and the targets of each action."""
        by_deg: dict[int, list[str]] = {}
        for label, d in cells.items():
            by_deg.setdefault(d, []).append(label)
        index = {label: (d, by_deg[d].index(label)) for label, d in cells.items()}

        def maps(action, step):
            out = {d: [0] * len(labels) for d, labels in by_deg.items()}
            for src, targets in dict(action).items():
                d, i = index[src]
                v = 0
                for tgt in targets:
                    td, j = index[tgt]
                    if td != d + step:
                        raise ModuleRelationError(f"{src} -> {tgt} does not raise degree by {step}")
                    v ^= 1 << j
                out[d][i] = v
            return {d: tuple(v) for d, v in out.items()}

        return cls({d: tuple(v) for d, v in by_deg.items()}, maps(sq1, 1), maps(sq2, 2))

    def dim(self, d: int) -> int:
        return len(self.basis.get(d, ()))

    def degrees(self) -> list[int]:
        return list(self.basis)

    def dims(self) -> dict[int, int]:
        return {d: len(v) for d, v in self.basis.items()}

    def total_dim(self) -> int:
        return sum(len(v) for v in self.basis.values())

    def act(self, op: str, d: int, v: int) -> int:
        """Apply a word such as ``"1"``, ``"21"`` (= Sq2 Sq1) to ``v`` in degree ``d``."""
        for ch in reversed(op):
            table = self.sq1 if ch == "1" else self.sq2
            v = _apply(table.get(d, ()), v) if v else 0
            d += 1 if ch == "1" else 2
        return v

    def shifted(self, k: int) -> A1Module:
        return A1Module(
            {d + k: v for d, v in self.basis.items()},
            {d + k: v for d, v in self.sq1.items()},
            {d + k: v for d, v in self.sq2.items()},
        )

    def rebase(self, new_bases: Mapping[int, Sequence[int]]) -> A1Module:
        """Same module written in a new basis.

        ``new_bases[d]`` lists the new basis vectors of degree ``d`` as bit
        sets in the old basis; degrees not listed keep their old basis.
        """
        fwd = {d: list(new_bases.get(d, [1 << i for i in range(self.dim(d))])) for d in self.basis}
        inv = {}
        for d, vecs in fwd.items():
            if rank_f2(vecs) != self.dim(d):
                raise ValueError(f"new basis in degree {d} is not invertible")
            inv[d] = _inverse(vecs, self.dim(d))

        def conj(table, step):
            out = {}
            for d, vecs in fwd.items():
                tgt = inv.get(d + step)
                imgs = []
                for v in vecs:
                    w = _apply(table[d], v)
                    imgs.append(_apply(tgt, w) if w else 0)
                out[d] = tuple(imgs)
            return out

        labels = {d: tuple(f"{d}:{i}" for i in range(len(v))) for d, v in fwd.items()}
        return A1Module(labels, conj(self.sq1, 1), conj(self.sq2, 2))


def _inverse(vecs: Sequence[int], n: int) -> list[int]:
    """Columns of the inverse of the matrix whose columns are ``vecs``."""
    # Row-reduce [vecs | I] column-wise: track which combination of new
    # vectors produces each old basis vector.
    work = [(v, 1 << i) for i, v in enumerate(vecs)]
    pivots: dict[int, tuple[int, int]] = {}
    for v, tag in work:
        for p, (bv, bt) in pivots.items():
            if v >> p & 1:
                v ^= bv
                tag ^= bt
        p = v.bit_length() - 1
        for q in list(pivots):
            bv, bt = pivots[q]
            if bv >> p & 1:
                pivots[q] = (bv ^ v, bt ^ tag)
        pivots[p] = (v, tag)
    return [pivots[i][1] for i in range(n)]


def validate(m: A1Module) -> list[str]:
    """Return every violated relation; an empty list means ``m`` is valid."""
    problems = []
    for d, labels in m.basis.items():
        for i, label in enumerate(labels):
            v = 1 << i
            if m.act("11", d, v):
                problems.append(f"Sq1Sq1 != 0 on {label} (degree {d})")
            if m.act("22", d, v) != m.act("121", d, v):
                problems.append(f"Sq2Sq2 != Sq1Sq2Sq1 on {label} (degree {d})")
    return problems


def _checked(m: A1Module) -> None:
    problems = validate(m)
    if problems:
        raise ModuleRelationError("; ".join(problems))


# --- builtin modules ----------------------------------------------------

# A1 as a left module over itself.  Basis words: Sq^a Sq^b ... applied to 1.
_A1_CELLS = {"1": 0, "Sq1": 1, "Sq2": 2, "Sq1Sq2": 3, "Sq2Sq1": 3,
             "Sq1Sq2Sq1": 4, "Sq2Sq1Sq2": 5, "Sq2Sq1Sq2Sq1": 6}
_A1_SQ1 = {"1": ["Sq1"], "Sq2": ["Sq1Sq2"], "Sq2Sq1": ["Sq1Sq2Sq1"],
           "Sq2Sq1Sq2": ["Sq2Sq1Sq2Sq1"]}
_A1_SQ2 = {"1": ["Sq2"], "Sq1": ["Sq2Sq1"], "Sq2": ["Sq1Sq2Sq1"],
           "Sq1Sq2": ["Sq2Sq1Sq2"], "Sq1Sq2Sq1": ["Sq2Sq1Sq2Sq1"]}


def _a1() -> A1Module:
    return A1Module.from_cells(_A1_CELLS, _A1_SQ1, _A1_SQ2)


def _elephant() -> A1Module:
    # Augmentation ideal of A1, desuspended once.
    cells = {k: d - 1 for k, d in _A1_CELLS.items() if k != "1"}
    sq1 = {k: v for k, v in _A1_SQ1.items() if k != "1"}
    sq2 = {k: v for k, v in _A1_SQ2.items() if k != "1"}
    return A1Module.from_cells(cells, sq1, sq2)


def _question_mark() -> A1Module:
    return A1Module.from_cells({"x0": 0, "x2": 2, "x3": 3}, {"x2": ["x3"]}, {"x0": ["x2"]})


def _c_module() -> A1Module:
    return A1Module.from_cells({"x0": 0, "x2": 2}, {}, {"x0": ["x2"]})


def _trivial() -> A1Module:
    return A1Module.from_cells({"x0": 0})


_BUILDERS = {
    "A1": _a1,
    "TrivialF2": _trivial,
    "Elephant": _elephant,
    "QuestionMark": _question_mark,
    "C": _c_module,
}
BUILTIN_NAMES = tuple(_BUILDERS)


def builtin(name: str) -> A1Module:
    try:
        m = _BUILDERS[name]()
    except KeyError:
        raise KeyError(f"unknown module {name!r}; choose from {', '.join(BUILTIN_NAMES)}") from None
    _checked(m)
    return m


# --- sub and quotient modules -------------------------------------------

def _closure(m: A1Module, gens: Mapping[int, Sequence[int]]) -> dict[int, dict[int, int]]:
    span: dict[int, list[int]] = {d: list(v) for d, v in gens.items()}
    for d in sorted(m.basis):
        rows = span.get(d, [])
        basis = _rref(rows)
        span[d] = list(basis.values())
        for v in basis.values():
            for op, step in (("1", 1), ("2", 2)):
                w = m.act(op, d, v)
                if w:
                    span.setdefault(d + step, []).append(w)
    return {d: _rref(rows) for d, rows in span.items() if d in m.basis}


def submodule(m: A1Module, gens: Mapping[int, Sequence[int]]) -> A1Module:
    """Submodule generated by the given vectors (bit sets keyed by degree)."""
    sub = _closure(m, gens)
    pivots = {d: sorted(b) for d, b in sub.items()}
    labels = {d: tuple(f"{d}:{p}" for p in ps) for d, ps in pivots.items() if ps}

    def restrict(op, step):
        out = {}
        for d, ps in pivots.items():
            tgt = pivots.get(d + step, [])
            imgs = []
            for p in ps:
                w = m.act(op, d, sub[d][p])
                # rref coordinates are read straight off the pivot bits
                imgs.append(sum(1 << j for j, q in enumerate(tgt) if w >> q & 1))
            out[d] = tuple(imgs)
        return out

    return A1Module(labels, restrict("1", 1), restrict("2", 2))


def quotient(m: A1Module, gens: Mapping[int, Sequence[int]]) -> A1Module:
    """Quotient of ``m`` by the submodule generated by ``gens``."""
    sub = _closure(m, gens)
    keep = {d: [i for i in range(m.dim(d)) if i not in sub.get(d, {})] for d in m.basis}

    def coords(d, v):
        v = _reduce(v, sub.get(d, {}))
        return sum(1 << j for j, i in enumerate(keep.get(d, [])) if v >> i & 1)

    labels = {d: tuple(m.basis[d][i] for i in idx) for d, idx in keep.items() if idx}
    sq1 = {d: tuple(coords(d + 1, m.act("1", d, 1 << i)) for i in idx) for d, idx in keep.items()}
    sq2 = {d: tuple(coords(d + 2, m.act("2", d, 1 << i)) for i in idx) for d, idx in keep.items()}
    out = A1Module(labels, sq1, sq2)
    _checked(out)
    return out


# --- Margolis homology ----------------------------------------------------

_DIFFERENTIALS = {"Q0": (("1",), 1), "Q1": (("12", "21"), 3)}


@dataclass(frozen=True)
class MargolisResult:
    differential: str
    homology_dims: Mapping[int, int]

    @property
    def total(self) -> int:
        return sum(self.homology_dims.values())

    def is_zero(self) -> bool:
        return self.total == 0


def _q_images(m: A1Module, words, d: int) -> list[int]:
    out = []
    for i in range(m.dim(d)):
        v = 0
        for w in words:
            v ^= m.act(w, d, 1 << i)
        out.append(v)
    return out


def margolis(m: A1Module, differential: str) -> MargolisResult:
    """Homology of ``m`` under Q0 = Sq1 or Q1 = Sq1Sq2 + Sq2Sq1."""
    try:
        words, step = _DIFFERENTIALS[differential]
    except KeyError:
        raise ValueError(f"differential must be Q0 or Q1, not {differential!r}") from None
    _checked(m)
    images = {d: _q_images(m, words, d) for d in m.basis}
    for d, imgs in images.items():
        nxt = images.get(d + step)
        for v in imgs:
            if v and nxt and _apply(nxt, v):
                raise ModuleRelationError(f"{differential} does not square to zero in degree {d}")
    dims = {}
    for d in m.basis:
        rank_out = rank_f2(images[d])
        rank_in = rank_f2(images.get(d - step, []))
        h = m.dim(d) - rank_out - rank_in
        if h:
            dims[d] = h
    return MargolisResult(differential, dims)


def hilbert(m: A1Module, n: int) -> Series:
    """Graded dimension series of ``m`` through degree ``n``."""
    if any(d < 0 for d in m.basis):
        raise ValueError("hilbert series needs a connective module")
    out = [0] * (n + 1)
    for d, labels in m.basis.items():
        if d <= n:
            out[d] = len(labels)
    top = max(m.basis, default=-1)
    return Series(out, exact=top <= n)


def random_rebase(m: A1Module, rng: random.Random) -> A1Module:
    """``m`` in a randomly chosen basis, for basis-independence checks."""
    new = {}
    for d in m.basis:
        k = m.dim(d)
        while True:
            vecs = [rng.randrange(1, 1 << k) for _ in range(k)]
            if rank_f2(vecs) == k:
                break
        new[d] = vecs
    return m.rebase(new)


def brute_force_homology(m: A1Module, differential: str) -> dict[int, int]:
    """Margolis homology by enumerating every vector; no elimination involved.

    Only for small modules (at most 16 cells per degree).
    """
    words, step = _DIFFERENTIALS[differential]

    def q(d, v):
        out = 0
        for w in words:
            out ^= m.act(w, d, v)
        return out

    dims = {}
    for d in m.basis:
        k = m.dim(d)
        if k > 16 or m.dim(d - step) > 16:
            raise ValueError("module too large for enumeration")
        kernel = sum(1 for v in range(1 << k) if q(d, v) == 0)
        image = {q(d - step, w) for w in range(1 << m.dim(d - step))} if d - step in m.basis else {0}
        h = (kernel.bit_length() - 1) - (len(image).bit_length() - 1)
        if h:
            dims[d] = h
    return dims
