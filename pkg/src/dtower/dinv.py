"""Correction terms of +1 and -1 surgery from a knot complex.

The tower of HF^+ for large positive surgery is read off the hook
quotient {i >= 0 or j >= 0}, and for large negative surgery off the first
quadrant {i >= 0 and j >= 0}.  A generator of H(CFK^infinity) is placed
high in a finite window and multiplied by U until it becomes a boundary
(terms that exit the region are dropped on the way).  The grading of the
last surviving power is the unshifted correction term, which for the
hook equals d(S^3_{+1}(K)) and for the quadrant d(S^3_{-1}(K)).

All computations are over F_2, so values are mod-2 correction terms.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, NamedTuple

from .complex import ChainElement, GeneratorKey, KnotComplex, format_id
from .errors import (
    NoTowerError,
    NotACycleError,
    OddSignatureError,
    PreconditionError,
    UngradedTouchedError,
    WindowExhaustedError,
)
from .f2 import boundary_of, element_vector, homology_basis, image_basis
from .grading import GradedComplex, assign_gradings
from .truncation import Region, TruncatedComplex, truncate_region

WINDOW_ENV = "DTOWER_WINDOW"
MAX_WINDOW = 1024


class DescentStep(NamedTuple):
    u_power: int
    grading: int
    died: bool


@dataclass(frozen=True)
class Descent:
    steps: int
    last_grading: int
    trace: tuple[DescentStep, ...] = field(default=(), compare=False)

    def __iter__(self) -> Iterator[int]:
        return iter((self.steps, self.last_grading))


@dataclass(frozen=True)
class DInvariantReport:
    d_plus: int
    d_minus: int
    windows_used: tuple[int, int]
    descent_traces: dict = field(compare=False)
    coefficients: str = "F2"

    def lines(self) -> list[str]:
        return [
            f"d(S^3_{{+1}}(K)) = {self.d_plus}",
            f"d(S^3_{{-1}}(K)) = {self.d_minus}",
        ]


def initial_window(c: KnotComplex) -> int:
    override = os.environ.get(WINDOW_ENV)
    if override:
        try:
            value = int(override)
        except ValueError:
            raise PreconditionError(f"{WINDOW_ENV} must be an integer, got {override!r}") from None
        if value < 1:
            raise PreconditionError(f"{WINDOW_ENV} must be positive")
        return value
    return c.max_abs_coordinate() + 4


def _grading_of(tc: TruncatedComplex, x: ChainElement) -> int:
    grs = {tc.gradings[t] for t in x.terms}
    if None in grs:
        bad = tuple(t.base for t in x.terms if tc.gradings[t] is None)
        raise UngradedTouchedError(
            "descent touches ungraded generators: " + ", ".join(map(format_id, bad)), bad
        )
    if len(grs) != 1:
        raise PreconditionError(f"class is not homogeneous (gradings {sorted(grs)})")
    return grs.pop()


def _push(tc: TruncatedComplex, x: ChainElement, m: int) -> ChainElement:
    """``U^m x`` inside ``tc``; terms leaving the region are dropped."""
    out = []
    for t in x.terms:
        moved = GeneratorKey(t.base, t.u_exp + m)
        if moved in tc.index:
            out.append(moved)
        elif moved.u_exp > tc.window and tc.region.contains(tc.filtrations[t].shift(m)):
            raise WindowExhaustedError(
                f"U^{m} pushes {format_id(t.base)} past the window {tc.window}"
            )
    return ChainElement(out)


def _dies(tc: TruncatedComplex, y: ChainElement) -> bool:
    return not y or element_vector(tc, y) in image_basis(tc)


def descend(tc: TruncatedComplex, x: ChainElement) -> Descent:
    """Smallest ``m >= 1`` with ``U^m x`` a boundary, and the grading of ``U^(m-1) x``."""
    v = element_vector(tc, x)
    if boundary_of(tc, v):
        raise NotACycleError(f"{x} is not a cycle in the {tc.region.value} window")
    if _dies(tc, x):
        raise PreconditionError(f"{x} is already zero in homology")
    gr = _grading_of(tc, x)
    top = min(t.u_exp for t in x.terms)
    trace = [DescentStep(top, gr, False)]
    m = 1
    while True:
        died = _dies(tc, _push(tc, x, m))
        trace.append(DescentStep(top + m, gr - 2 * m, died))
        if died:
            return Descent(m, gr - 2 * (m - 1), tuple(trace))
        m += 1


def _survival(tc: TruncatedComplex, x: ChainElement) -> int:
    m = 0
    try:
        while not _dies(tc, _push(tc, x, m + 1)):
            m += 1
    except WindowExhaustedError:
        pass
    return m


def tower_class(tc: TruncatedComplex) -> ChainElement:
    """Image of the generator of H(CFK^infinity) at the top of the window.

    Candidates are the homology classes of the topmost U-layer; the one
    surviving the most U-multiplications wins (earlier echelon order on
    ties).  It must survive into the middle of the window.
    """
    top = -tc.window
    best, best_len = None, -1
    for cand in homology_basis(tc.layer(top)):
        n = _survival(tc, cand)
        if n > best_len:
            best, best_len = cand, n
    needed = tc.window - tc.window // 2
    if best is None or best_len < needed:
        raise NoTowerError(
            f"no class survives {needed} U-multiplications in the "
            f"{tc.region.value} window of size {tc.window}"
        )
    return best


def unshifted_d(c, region: Region, window: int) -> Descent:
    """One descent at a fixed window; ``c`` should already carry gradings."""
    tc = truncate_region(c, region, window, allow_ungraded=True)
    return descend(tc, tower_class(tc))


def stable_d(c, region: Region, window: int | None = None) -> tuple[Descent, int]:
    """Double the window until two consecutive sizes give the same value."""
    graded = c if isinstance(c, GradedComplex) else assign_gradings(c)
    B = window or initial_window(graded.complex)
    prev = None
    while B <= MAX_WINDOW:
        try:
            cur = unshifted_d(graded, region, B)
        except (WindowExhaustedError, NoTowerError):
            prev = None
        else:
            if prev is not None and prev.last_grading == cur.last_grading:
                return cur, B
            prev = cur
        B *= 2
    raise WindowExhaustedError(f"no stable value up to window {MAX_WINDOW}")


def d_plus_one(c: KnotComplex) -> int:
    return stable_d(c, Region.HOOK)[0].last_grading


def d_minus_one(c: KnotComplex) -> int:
    return stable_d(c, Region.QUADRANT)[0].last_grading


def d_invariants(c: KnotComplex, window: int | None = None) -> DInvariantReport:
    graded = assign_gradings(c)
    plus, b_plus = stable_d(graded, Region.HOOK, window)
    minus, b_minus = stable_d(graded, Region.QUADRANT, window)
    return DInvariantReport(
        plus.last_grading,
        minus.last_grading,
        (b_plus, b_minus),
        {"plus": list(plus.trace), "minus": list(minus.trace)},
    )


def slice_genus_bound(c: KnotComplex) -> int:
    """Largest Alexander coordinate among the y-slice basis elements."""
    return max(g.filt.alexander for g in getattr(c, "complex", c).generators)


def large_surgery_d(c: KnotComplex, p: int, sign: int) -> Fraction:
    """Correction term of S^3_{sign*p}(K) in the structure [0], for p >= 2g - 1."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    g = slice_genus_bound(c)
    if p < 1 or p < 2 * g - 1:
        raise PreconditionError(f"p = {p} is below the large-surgery bound 2g - 1 = {2 * g - 1}")
    if sign == 1:
        return d_plus_one(c) + Fraction(p - 1, 4)
    return d_minus_one(c) + Fraction(1 - p, 4)


def alt_signature_d(sigma: int) -> int:
    """d(S^3_{+1}(K)) = 2 min(0, -ceil(-sigma/4)) for alternating K."""
    if sigma % 2:
        raise OddSignatureError(f"knot signatures are even, got {sigma}")
    # -ceil(-sigma/4) == floor(sigma/4)
    return 2 * min(0, sigma // 4)
