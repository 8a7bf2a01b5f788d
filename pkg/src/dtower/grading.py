"""Absolute Maslov gradings from the y-slice.

The slice CFK^infinity{i = 0} models the hat complex of the three-sphere,
so its homology is one F_2 in grading 0.  Pinning that class to 0 and
walking the arrow graph (arrows drop grading by 1, U drops it by 2) fixes
the grading of every generator connected to it.  Components the walk
never reaches stay ungraded; the d-invariant computation does not need
them.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass

from .complex import ChainElement, KnotComplex, format_id, id_sort_key, require_valid
from .errors import GradingConflictError, SliceRankError
from .f2 import homology_basis, homology_rank
from .truncation import Region, TruncatedComplex, truncate_region


@dataclass(frozen=True)
class GradedComplex:
    complex: KnotComplex
    ungraded: frozenset
    slice_generator: ChainElement

    def grading(self, gid) -> int | None:
        return self.complex[gid].grading


def y_slice(c: KnotComplex) -> TruncatedComplex:
    """The slice {i = 0}: one translate ``U^i g`` per generator ``g`` at ``(i, j)``."""
    c = getattr(c, "complex", c)
    window = max((abs(g.filt.i) for g in c.generators), default=0)
    tc = truncate_region(c, Region.SLICE, window, allow_ungraded=True)
    r = homology_rank(tc)
    if r != 1:
        raise SliceRankError(f"{c.name}: y-slice homology has rank {r}, expected 1")
    return tc


def slice_generator(c: KnotComplex) -> ChainElement:
    (gen,) = homology_basis(y_slice(c))
    return gen


def assign_gradings(c: KnotComplex, order: str = "bfs") -> GradedComplex:
    """Pin the slice generator to grading 0 and propagate along arrows.

    ``order`` selects breadth-first ("bfs") or depth-first ("dfs") traversal;
    the resulting labels do not depend on it.
    """
    if order not in ("bfs", "dfs"):
        raise ValueError(f"unknown traversal order {order!r}")
    require_valid(c)
    gen = slice_generator(c)

    nbrs = defaultdict(list)
    for src, tgt in c.arrows():
        nbrs[src].append((tgt, -1))
        nbrs[tgt].append((src, +1))

    labels: dict = {}
    frontier = deque()
    # gr(U^k g) = gr(g) - 2k, and the slice class sits in grading 0
    for key in gen:
        labels[key.base] = 2 * key.u_exp
        frontier.append(key.base)
    pop = frontier.popleft if order == "bfs" else frontier.pop
    while frontier:
        x = pop()
        for y, delta in sorted(nbrs[x], key=lambda p: id_sort_key(p[0])):
            want = labels[x] + delta
            have = labels.get(y)
            if have is None:
                labels[y] = want
                frontier.append(y)
            elif have != want:
                raise GradingConflictError(
                    f"{c.name}: generator {format_id(y)} gets gradings {have} and {want}",
                    (x, y),
                )

    for gid, gr in labels.items():
        given = c[gid].grading
        if given is not None and given != gr:
            raise GradingConflictError(
                f"{c.name}: generator {format_id(gid)} was given grading {given}, "
                f"the slice forces {gr}",
                (gid,),
            )
    graded = c.with_gradings(labels)
    ungraded = frozenset(g.id for g in graded.generators if g.grading is None)
    return GradedComplex(graded, ungraded, gen)
