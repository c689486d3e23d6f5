"""Bordism group tables, golden-table verification and the on-disk cache."""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from . import __version__
from .golden import GOLDEN
from .summands import Theory, rank_table, torsion_series

__all__ = [
    "GroupDescriptor",
    "GoldenReport",
    "group",
    "table",
    "verify_golden",
    "cache_path",
    "write_cache",
    "read_cache",
    "CacheFormatError",
]

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class GroupDescriptor:
    """pi_n = Z^rank + (Z/2)^torsion_rank."""

    n: int
    rank: int
    torsion_rank: int

    def __post_init__(self):
        if self.n < 0 or self.rank < 0 or self.torsion_rank < 0:
            raise ValueError(f"invalid group {self}")

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.n, self.rank, self.torsion_rank)

    def describe(self, theory: Theory | str) -> str:
        name = {"spin": "Spin", "spinc": "Spinc", "spinh": "Spinh"}[Theory.parse(theory).value]
        return f"pi_{self.n} M{name} = Z^{self.rank} + (Z/2)^{self.torsion_rank}"


def group(theory: Theory | str, n: int) -> GroupDescriptor:
    if n < 0:
        raise ValueError("degree must be nonnegative")
    return table(theory, n)[n]


def _compute(theory: Theory, n_max: int) -> list[GroupDescriptor]:
    ranks = rank_table(theory, n_max)
    tors = torsion_series(theory, n_max)
    return [GroupDescriptor(k, ranks[k], tors[k]) for k in range(n_max + 1)]


def table(theory: Theory | str, n_max: int, cache_dir: str | os.PathLike | None = None) -> list[GroupDescriptor]:
    """Groups in degrees ``0..n_max``, all read off one shared truncation."""
    theory = Theory.parse(theory)
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    if cache_dir is not None:
        path = cache_path(cache_dir, theory, n_max)
        if path.exists():
            try:
                return read_cache(path, theory, n_max)
            except CacheFormatError as exc:
                log.warning("ignoring cache %s: %s", path, exc)
    rows = _compute(theory, n_max)
    if cache_dir is not None:
        write_cache(cache_path(cache_dir, theory, n_max), theory, n_max, rows)
    return rows


# --- cache ----------------------------------------------------------------

class CacheFormatError(ValueError):
    pass


def cache_path(cache_dir: str | os.PathLike, theory: Theory | str, n_max: int) -> Path:
    theory = Theory.parse(theory)
    return Path(cache_dir) / f"{theory.value}_{n_max}.tsv"


def _header(theory: Theory, n_max: int) -> str:
    return f"#theory={theory.value} nmax={n_max} version={__version__}"


def write_cache(path: str | os.PathLike, theory: Theory | str, n_max: int,
                rows: Iterable[GroupDescriptor]) -> None:
    theory = Theory.parse(theory)
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(path.suffix + ".tmp")
    with open(tmp, "w", encoding="ascii", newline="\n") as fh:
        fh.write(_header(theory, n_max) + "\n")
        for g in rows:
            fh.write(f"{g.n}\t{g.rank}\t{g.torsion_rank}\n")
    os.replace(tmp, path)


def read_cache(path: str | os.PathLike, theory: Theory | str, n_max: int) -> list[GroupDescriptor]:
    theory = Theory.parse(theory)
    with open(path, encoding="ascii") as fh:
        lines = fh.read().split("\n")
    if not lines or lines[0] != _header(theory, n_max):
        raise CacheFormatError(f"header {lines[0] if lines else ''!r} does not match")
    if lines[-1] == "":
        lines.pop()
    rows = []
    for i, line in enumerate(lines[1:]):
        parts = line.split("\t")
        if len(parts) != 3:
            raise CacheFormatError(f"malformed line {i + 2}: {line!r}")
        n, r, t = (int(x) for x in parts)
        if n != i:
            raise CacheFormatError(f"line {i + 2} holds degree {n}, expected {i}")
        rows.append(GroupDescriptor(n, r, t))
    if len(rows) != n_max + 1:
        raise CacheFormatError(f"expected {n_max + 1} rows, found {len(rows)}")
    return rows


# --- golden comparison ----------------------------------------------------

@dataclass
class GoldenReport:
    checked: int = 0
    mismatches: list[tuple[str, int, tuple[int, int], tuple[int, int]]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def lines(self) -> list[str]:
        out = [f"{self.checked - len(self.mismatches)}/{self.checked} golden rows match"]
        for theory, n, want, got in self.mismatches:
            out.append(f"  MISMATCH {theory} n={n}: expected (r, t)={want}, got {got}")
        return out


def verify_golden(n_max: int = 99,
                  golden: Mapping[str, Sequence[tuple[int, int, int]]] | None = None,
                  cache_dir: str | os.PathLike | None = None) -> GoldenReport:
    """Compare computed tables with the published ones through ``n_max``."""
    golden = GOLDEN if golden is None else golden
    report = GoldenReport()
    for name, rows in golden.items():
        computed = table(name, n_max, cache_dir)
        for n, r, t in rows:
            if n > n_max:
                continue
            report.checked += 1
            got = (computed[n].rank, computed[n].torsion_rank)
            if got != (r, t):
                report.mismatches.append((name, n, (r, t), got))
    return report
