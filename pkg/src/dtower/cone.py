"""Integer-surgery mapping cone for the genus-g Borromean knot, n = +1 or -1.

The knot complex is the exterior algebra on 2g symbols tensored with
F_2[U, U^-1], all differentials zero.  A basis element is a subset
``mask`` of the symbols together with an exponent: ``(mask, i)`` stands
for the monomial times ``U^-i`` and sits at filtration
``(i, i + |mask| - g)`` in grading ``2i + |mask| - g``.

The cone has one copy A_s of {i >= 0 or j >= s} and one copy B_s of
{i >= 0} per integer s, with maps v: A_s -> B_s (projection) and
h: A_s -> B_{s+n} (projection to {j >= s}, then U^s, then swapping i and
j).  On this complex the swap sends a subset to its complement.

Each grading of the cone is finite-dimensional, so homology and the U
action are computed one grading at a time.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import NamedTuple

from .errors import PreconditionError, TruncationTooSmallError, UnstableError
from .f2 import F2Matrix, SpanBasis, _homology_block

MAX_GENUS = 3
D_B_NOTE = (
    "d_b is read off as the extreme tower bottom (largest for n = -1, smallest "
    "for n = +1); the H_1 action on cone homology is not computed. "
    "The Spin^c shift d(n, i) is 0 for n = +1, -1 and the single structure."
)


def popcount(x: int) -> int:
    return bin(x).count("1")


@dataclass(frozen=True)
class BorromeanComplex:
    g: int

    def __post_init__(self) -> None:
        if self.g < 1:
            raise PreconditionError(f"genus must be at least 1, got {self.g}")

    @property
    def symbols(self) -> int:
        return 2 * self.g

    def degree(self, i: int, j: int) -> int:
        """Exterior degree held by the box (i, j)."""
        return self.g - i + j

    def box_rank(self, i: int, j: int) -> int:
        k = self.degree(i, j)
        return comb(self.symbols, k) if 0 <= k <= self.symbols else 0

    def basis(self, i: int, j: int) -> list[int]:
        """Subsets (as bitmasks over the 2g symbols) spanning box (i, j)."""
        k = self.degree(i, j)
        return [m for m in range(1 << self.symbols) if popcount(m) == k]

    def filtration(self, mask: int, i: int) -> tuple[int, int]:
        return i, i + popcount(mask) - self.g

    def grading(self, mask: int, i: int) -> int:
        return 2 * i + popcount(mask) - self.g

    def complement(self, mask: int) -> int:
        return ((1 << self.symbols) - 1) ^ mask


def borromean_complex(g: int) -> BorromeanComplex:
    return BorromeanComplex(g)


class ConeKey(NamedTuple):
    side: str  # "A" or "B"
    s: int
    mask: int
    i: int


def b_shift(n: int, s: int) -> int:
    """Grading shift of B_s so that v and h both have degree -1."""
    if n < 0:
        sigma = (-s) % -n
        ell = (s + sigma) // n
        return -2 * sigma * ell + n * ell * (ell - 1)
    sigma = s % n
    ell = (s - sigma) // n
    return 2 * sigma * ell + n * ell * (ell - 1) - 1


@dataclass(frozen=True)
class ConeComplex:
    """Truncated cone: A_s for |s| <= b, B_s for s in ``b_range``, gradings in ``grading_window``."""

    n: int
    g: int
    b: int
    grading_window: tuple[int, int]
    basis: tuple[ConeKey, ...]
    gradings: dict = field(repr=False)
    columns: tuple[int, ...] = field(repr=False)
    v_arrows: tuple[tuple[ConeKey, ConeKey], ...] = field(repr=False)
    h_arrows: tuple[tuple[ConeKey, ConeKey], ...] = field(repr=False)

    @property
    def s_range(self) -> range:
        return range(-self.b, self.b + 1)

    @property
    def b_range(self) -> range:
        return range(-self.b + self.n, self.b + 1)

    @property
    def index(self) -> dict:
        cached = self.__dict__.get("_index")
        if cached is None:
            cached = {k: n for n, k in enumerate(self.basis)}
            object.__setattr__(self, "_index", cached)
        return cached

    @property
    def cone_boundary(self) -> F2Matrix:
        return F2Matrix.from_columns(self.columns, len(self.basis))

    def part(self, side: str, s: int) -> list[ConeKey]:
        return [k for k in self.basis if k.side == side and k.s == s]

    @property
    def A_parts(self) -> dict:
        return {s: self.part("A", s) for s in self.s_range}

    @property
    def B_parts(self) -> dict:
        return {s: self.part("B", s) for s in self.b_range}

    def in_region(self, key: ConeKey) -> bool:
        if key.i >= 0:
            return True
        return key.side == "A" and key.i + popcount(key.mask) - self.g >= key.s

    def u_action(self, key: ConeKey) -> ConeKey | None:
        moved = key._replace(i=key.i - 1)
        return moved if self.in_region(moved) else None


def _element_grading(bc: BorromeanComplex, n: int, key: ConeKey) -> int:
    base = b_shift(n, key.s) + bc.grading(key.mask, key.i)
    return base + 1 if key.side == "A" else base


def _keys_in_grading(bc: BorromeanComplex, n: int, side: str, s: int, N: int) -> list[ConeKey]:
    g = bc.g
    out = []
    shift = b_shift(n, s) + (1 if side == "A" else 0)
    for mask in range(1 << bc.symbols):
        k = popcount(mask)
        twice_i = N - shift - k + g
        if twice_i % 2:
            continue
        i = twice_i // 2
        key = ConeKey(side, s, mask, i)
        if i >= 0 or (side == "A" and i + k - g >= s):
            out.append(key)
    return out


def build_cone(g: int, n: int, b: int, grading_window: tuple[int, int] | None = None) -> ConeComplex:
    """Assemble the truncated cone with every map checked to have degree -1."""
    if n not in (1, -1):
        raise PreconditionError(f"only n = +1 or -1 is supported, got {n}")
    bc = BorromeanComplex(g)
    if b < g + 2:
        raise TruncationTooSmallError(f"truncation b = {b} is below g + 2 = {g + 2}")
    lo, hi = grading_window or (-g - 6, g + 8)
    s_range = range(-b, b + 1)
    b_range = range(-b + n, b + 1)

    keys = []
    for N in range(lo, hi + 1):
        for s in s_range:
            keys += _keys_in_grading(bc, n, "A", s, N)
        for s in b_range:
            keys += _keys_in_grading(bc, n, "B", s, N)
    index = {k: m for m, k in enumerate(keys)}
    gradings = {k: _element_grading(bc, n, k) for k in keys}

    v_arrows, h_arrows, columns = [], [], []
    for k in keys:
        col = 0
        if k.side == "A":
            if k.i >= 0:
                tgt = ConeKey("B", k.s, k.mask, k.i)
                v_arrows.append((k, tgt))
            else:
                tgt = None
            targets = [tgt] if tgt is not None else []
            j = k.i + popcount(k.mask) - g
            if j >= k.s and k.s + n in b_range:
                # U^s moves (i, j) to (i - s, j - s); the swap then puts j - s first
                tgt = ConeKey("B", k.s + n, bc.complement(k.mask), j - k.s)
                h_arrows.append((k, tgt))
                targets.append(tgt)
            for t in targets:
                if t.i < 0:
                    raise AssertionError(f"{t} lies outside B")
                if gradings[k] - 1 != _element_grading(bc, n, t):
                    raise AssertionError(f"map {k} -> {t} does not have degree -1")
                m = index.get(t)
                if m is not None:
                    col ^= 1 << m
        columns.append(col)
    return ConeComplex(
        n, g, b, (lo, hi), tuple(keys), gradings, tuple(columns),
        tuple(v_arrows), tuple(h_arrows),
    )


def _graded_homology(cone: ConeComplex) -> dict[int, tuple[list[int], SpanBasis]]:
    """Per grading: cycle representatives and the span of boundaries."""
    by_grading: dict[int, list[int]] = {}
    for m, k in enumerate(cone.basis):
        by_grading.setdefault(cone.gradings[k], []).append(m)
    cols = dict(enumerate(cone.columns))
    lo, hi = cone.grading_window
    out = {}
    # the top grading has no incoming boundaries from inside the window
    for N in range(lo, hi):
        image = [cone.columns[m] for m in by_grading.get(N + 1, ())]
        reps = _homology_block(cols, by_grading.get(N, []), image)
        out[N] = (reps, SpanBasis(image))
    return out


def _apply_u(cone: ConeComplex, v: int, times: int) -> int:
    index, basis = cone.index, cone.basis
    for _ in range(times):
        out = 0
        while v:
            lb = v & -v
            v ^= lb
            moved = cone.u_action(basis[lb.bit_length() - 1])
            if moved is not None:
                out ^= 1 << index[moved]
        v = out
    return v


def tower_multiset(cone: ConeComplex) -> dict[int, int]:
    """Bottom gradings of the U-nontorsion part of the cone's homology.

    ``T_N``, the rank of ``U^K: H_{N+2K} -> H_N`` for K reaching the top
    of the grading window, counts towers with bottom at most N and the
    parity of N; bottoms sit where it jumps.
    """
    homology = _graded_homology(cone)
    lo, hi = cone.grading_window
    top = hi - 1
    stable = {}
    for N in range(lo, hi):
        K = (top - N) // 2
        reps, _ = homology[N + 2 * K]
        _, image = homology[N]
        span = SpanBasis(image.vectors())
        r0 = span.rank
        for z in reps:
            span.add(_apply_u(cone, z, K))
        stable[N] = span.rank - r0
    towers = {}
    for N in range(lo + 2, hi):
        jump = stable[N] - stable[N - 2]
        if jump:
            towers[N] = jump
    if stable.get(lo) or stable.get(lo + 1):
        raise UnstableError(f"towers reach the bottom of the grading window {lo}")
    return towers


def expected_towers(g: int, n: int) -> dict[int, int]:
    out = {0: comb(2 * g, g)}
    for k in range(1, g + 1):
        out[-n * k] = 2 * comb(2 * g, g - k)
    return out


def format_towers(towers: dict[int, int]) -> str:
    items = sorted(towers.items(), key=lambda kv: (abs(kv[0]), kv[0]))
    return "{" + ", ".join(f"{k}:{v}" for k, v in items) + "}"


@dataclass(frozen=True)
class BorromeanReport:
    g: int
    n: int
    b: int
    towers: dict
    expected: dict
    d_b: int
    expected_d_b: int
    note: str = D_B_NOTE

    @property
    def passed(self) -> bool:
        return self.towers == self.expected and self.d_b == self.expected_d_b

    def summary(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return f"towers: {format_towers(self.towers)}, d_b = {self.d_b}, {verdict}"


def stable_towers(g: int, n: int, b: int | None = None) -> tuple[dict[int, int], int]:
    b = g + 2 if b is None else b
    first = tower_multiset(build_cone(g, n, b))
    second = tower_multiset(build_cone(g, n, b + 2))
    if first != second:
        raise UnstableError(
            f"towers change between b = {b} and b = {b + 2}: "
            f"{format_towers(first)} vs {format_towers(second)}"
        )
    return first, b


def verify_borromean(g: int, n: int, b: int | None = None, max_genus: int = MAX_GENUS) -> BorromeanReport:
    if not 1 <= g <= max_genus:
        raise PreconditionError(f"genus must be between 1 and {max_genus}, got {g}")
    if n not in (1, -1):
        raise PreconditionError(f"sign must be +1 or -1, got {n}")
    towers, b = stable_towers(g, n, b)
    pick = max if n < 0 else min
    d_b = pick(towers) if towers else 0
    return BorromeanReport(g, n, b, towers, expected_towers(g, n), d_b, -n * g)
