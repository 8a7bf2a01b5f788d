"""Finite windows of CFK^infinity restricted to a plane region."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property

from .complex import (
    Bifiltration,
    GeneratorKey,
    KnotComplex,
    format_id,
    id_sort_key,
    key_sort_key,
)
from .errors import UngradedTouchedError
from .f2 import F2Matrix


class Region(enum.Enum):
    HOOK = "hook"          # {i >= 0 or j >= 0}
    QUADRANT = "quadrant"  # {i >= 0 and j >= 0}
    SLICE = "slice"        # {i = 0}

    def contains(self, f: Bifiltration) -> bool:
        if self is Region.HOOK:
            return f.i >= 0 or f.j >= 0
        if self is Region.QUADRANT:
            return f.i >= 0 and f.j >= 0
        return f.i == 0


@dataclass(frozen=True)
class TruncatedComplex:
    """Translates ``U^k g`` with ``|k| <= window`` whose position lies in ``region``.

    ``columns[n]`` is the boundary of ``basis[n]`` as a bitset over the
    basis.  Arrows that leave the region are dropped (quotient complex).
    """

    region: Region
    window: int
    basis: tuple[GeneratorKey, ...]
    filtrations: dict = field(repr=False)
    gradings: dict = field(repr=False)
    columns: tuple[int, ...] = field(repr=False)

    @cached_property
    def index(self) -> dict:
        return {k: n for n, k in enumerate(self.basis)}

    @property
    def boundary(self) -> F2Matrix:
        return F2Matrix.from_columns(self.columns, len(self.basis))

    def __len__(self) -> int:
        return len(self.basis)

    def __contains__(self, key) -> bool:
        return key in self.index

    def layer(self, u_exp: int) -> "TruncatedComplex":
        """Sub-complex of translates by ``U^u_exp``; arrows never change the U power."""
        keep = [k for k in self.basis if k.u_exp == u_exp]
        return _assemble(self.region, self.window, keep, self.filtrations, self.gradings,
                         {k: self._targets(k) for k in keep})

    def _targets(self, key: GeneratorKey) -> list[GeneratorKey]:
        col = self.columns[self.index[key]]
        out = []
        while col:
            b = col & -col
            out.append(self.basis[b.bit_length() - 1])
            col ^= b
        return out


def _assemble(region, window, keys, filtrations, gradings, targets) -> TruncatedComplex:
    keys = sorted(keys, key=key_sort_key)
    index = {k: n for n, k in enumerate(keys)}
    columns = []
    for k in keys:
        col = 0
        for t in targets[k]:
            n = index.get(t)
            if n is not None:
                col ^= 1 << n
        columns.append(col)
    return TruncatedComplex(
        region,
        window,
        tuple(keys),
        {k: filtrations[k] for k in keys},
        {k: gradings.get(k) for k in keys},
        tuple(columns),
    )


def translate_grading(grading: int | None, u_exp: int) -> int | None:
    return None if grading is None else grading - 2 * u_exp


def truncate_region(
    c: KnotComplex, region: Region, window: int, allow_ungraded: bool = False
) -> TruncatedComplex:
    """All translates ``U^k g``, ``-window <= k <= window``, lying in ``region``.

    Unless ``allow_ungraded`` is set, every such translate must carry a
    grading.
    """
    c = getattr(c, "complex", c)
    keys, filtrations, gradings, targets = [], {}, {}, {}
    for k in range(-window, window + 1):
        for g in c.generators:
            pos = g.filt.shift(k)
            if not region.contains(pos):
                continue
            key = GeneratorKey(g.id, k)
            keys.append(key)
            filtrations[key] = pos
            gradings[key] = translate_grading(g.grading, k)
            targets[key] = [GeneratorKey(t, k) for t in c.boundary(g.id)]
    if not allow_ungraded:
        missing = sorted({k.base for k in keys if gradings[k] is None}, key=id_sort_key)
        if missing:
            raise UngradedTouchedError(
                "translates of ungraded generators enter the region: "
                + ", ".join(map(format_id, missing)),
                tuple(missing),
            )
    return _assemble(region, window, keys, filtrations, gradings, targets)
