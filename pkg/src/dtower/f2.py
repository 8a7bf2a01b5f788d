"""Linear algebra over the two-element field.

Vectors and matrix rows are Python ints used as bitsets (bit ``c`` is
column ``c``), so XOR is row addition.  Two elimination styles live here:

* :func:`row_reduce` -- full reduced row-echelon form with a recorded
  transform, for the matrix-level API and small problems.
* :class:`SpanBasis` -- an incremental echelon basis keyed by lowest set
  bit.  Truncated knot complexes have a few thousand sparse columns; this
  only ever touches vectors that share a pivot, which keeps membership
  tests cheap.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .complex import ChainElement
from .errors import KeyOutOfWindowError, UngradedTouchedError


def low_bit(v: int) -> int:
    """Index of the lowest set bit of a nonzero bitset."""
    return (v & -v).bit_length() - 1


def bits(v: int) -> list[int]:
    out = []
    while v:
        b = v & -v
        out.append(b.bit_length() - 1)
        v ^= b
    return out


@dataclass(frozen=True)
class F2Matrix:
    rows: int
    cols: int
    data: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.data) != self.rows:
            raise ValueError(f"expected {self.rows} rows, got {len(self.data)}")
        limit = 1 << self.cols
        if any(r < 0 or r >= limit for r in self.data):
            raise ValueError("row has bits beyond the column count")

    @classmethod
    def from_dense(cls, dense: Sequence[Sequence[int]], cols: int | None = None) -> "F2Matrix":
        if cols is None:
            cols = len(dense[0]) if dense else 0
        data = []
        for row in dense:
            v = 0
            for c, x in enumerate(row):
                if x & 1:
                    v |= 1 << c
            data.append(v)
        return cls(len(data), cols, tuple(data))

    @classmethod
    def from_columns(cls, columns: Sequence[int], rows: int) -> "F2Matrix":
        data = [0] * rows
        for c, col in enumerate(columns):
            for r in bits(col):
                data[r] |= 1 << c
        return cls(rows, len(columns), tuple(data))

    @classmethod
    def identity(cls, n: int) -> "F2Matrix":
        return cls(n, n, tuple(1 << r for r in range(n)))

    def to_dense(self) -> list[list[int]]:
        return [[(row >> c) & 1 for c in range(self.cols)] for row in self.data]

    def columns(self) -> list[int]:
        cols = [0] * self.cols
        for r, row in enumerate(self.data):
            for c in bits(row):
                cols[c] |= 1 << r
        return cols

    def transpose(self) -> "F2Matrix":
        return F2Matrix(self.cols, self.rows, tuple(self.columns()))

    def __matmul__(self, other: "F2Matrix") -> "F2Matrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        out = []
        for row in self.data:
            acc = 0
            for k in bits(row):
                acc ^= other.data[k]
            out.append(acc)
        return F2Matrix(self.rows, other.cols, tuple(out))


@dataclass(frozen=True)
class EchelonForm:
    reduced: F2Matrix
    pivots: tuple[tuple[int, int], ...]
    rank: int
    transform: F2Matrix


def row_reduce(m: F2Matrix) -> EchelonForm:
    """Reduced row-echelon form; pivots by lowest column, then lowest row."""
    work = list(m.data)
    trans = [1 << r for r in range(m.rows)]
    pivots = []
    top = 0
    for col in range(m.cols):
        if top == m.rows:
            break
        mask = 1 << col
        hit = next((r for r in range(top, m.rows) if work[r] & mask), None)
        if hit is None:
            continue
        work[top], work[hit] = work[hit], work[top]
        trans[top], trans[hit] = trans[hit], trans[top]
        for r in range(m.rows):
            if r != top and work[r] & mask:
                work[r] ^= work[top]
                trans[r] ^= trans[top]
        pivots.append((top, col))
        top += 1
    return EchelonForm(
        F2Matrix(m.rows, m.cols, tuple(work)),
        tuple(pivots),
        len(pivots),
        F2Matrix(m.rows, m.rows, tuple(trans)),
    )


def rank(m: F2Matrix) -> int:
    return SpanBasis(m.data).rank


class SpanBasis:
    """Incremental echelon basis of a subspace of F_2^n.

    Each stored vector has a distinct lowest set bit.  With ``track=True``
    every stored vector also remembers which inputs (by insertion tag) it
    is the sum of, which is how kernels are read off.
    """

    def __init__(self, vectors: Iterable[int] = (), track: bool = False) -> None:
        self._pivots: dict[int, tuple[int, int]] = {}
        self.track = track
        self._count = 0
        for v in vectors:
            self.add(v)

    @property
    def rank(self) -> int:
        return len(self._pivots)

    def vectors(self) -> list[int]:
        return [v for v, _ in self._pivots.values()]

    def reduce(self, v: int, combo: int = 0) -> tuple[int, int]:
        """Canonical residue of ``v`` modulo the span, with the combination used.

        The residue has no bit in common with any pivot position, which
        makes it unique.
        """
        pivots = self._pivots
        scan = v
        while scan:
            lb = scan & -scan
            hit = pivots.get(lb)
            if hit is not None:
                v ^= hit[0]
                combo ^= hit[1]
            scan = v & ~((lb << 1) - 1)
        return v, combo

    def add(self, v: int) -> tuple[int, int]:
        """Insert ``v``; returns (residue, combination).  Residue 0 means dependent."""
        tag = (1 << self._count) if self.track else 0
        self._count += 1
        res, combo = self.reduce(v, tag)
        if res:
            self._pivots[res & -res] = (res, combo)
        return res, combo

    def __contains__(self, v: int) -> bool:
        return self.reduce(v)[0] == 0


# Homology of finite complexes.  A complex is described by a basis of
# keys and one boundary bitset per basis element (``columns``); anything
# with ``basis``, ``index``, ``columns`` and ``gradings`` works here.


def element_vector(tc, x: ChainElement) -> int:
    v = 0
    for t in x.terms:
        try:
            v |= 1 << tc.index[t]
        except KeyError:
            raise KeyOutOfWindowError(f"{t} is not in the truncated basis", (t.base,)) from None
    return v


def vector_element(tc, v: int) -> ChainElement:
    return ChainElement(tc.basis[b] for b in bits(v))


def boundary_of(tc, v: int) -> int:
    out = 0
    for b in bits(v):
        out ^= tc.columns[b]
    return out


def image_basis(tc) -> SpanBasis:
    cached = getattr(tc, "_image_cache", None)
    if cached is None:
        cached = SpanBasis(tc.columns)
        try:
            object.__setattr__(tc, "_image_cache", cached)
        except AttributeError:
            pass
    return cached


def is_boundary(tc, x: ChainElement) -> bool:
    """Does ``x`` lie in the column space of the boundary matrix?"""
    v = element_vector(tc, x)
    return v == 0 or v in image_basis(tc)


def _homology_block(columns: dict[int, int], sources: list[int], image: Iterable[int]) -> list[int]:
    """Cycle representatives (as bitsets over the full basis) for one block.

    ``sources`` index the basis elements whose cycles we want; ``image``
    spans the boundaries landing in that block.
    """
    kernel = []
    partners: dict[int, tuple[int, int]] = {}
    for b in sources:
        v, combo = columns[b], 1 << b
        while v:
            hit = partners.get(v & -v)
            if hit is None:
                break
            v ^= hit[0]
            combo ^= hit[1]
        if v:
            partners[v & -v] = (v, combo)
        else:
            kernel.append(combo)
    quotient = SpanBasis(image)
    reps = []
    for z in kernel:
        res, _ = quotient.reduce(z)
        if res:
            quotient.add(res)
            reps.append(res)
    return reps


def homology_basis(tc) -> list[ChainElement]:
    """Basis of H_* as cycle representatives, ignoring gradings."""
    cols = dict(enumerate(tc.columns))
    reps = _homology_block(cols, list(range(len(tc.basis))), tc.columns)
    return [vector_element(tc, z) for z in reps]


def homology_rank(tc) -> int:
    n = len(tc.basis)
    r = image_basis(tc).rank
    # dim ker = n - rank(d); dim H = dim ker - rank(d)
    return n - 2 * r


def homology_generators(tc) -> list[tuple[int, list[ChainElement]]]:
    """Per grading, explicit cycle representatives of a basis of H."""
    missing = [k for k in tc.basis if tc.gradings.get(k) is None]
    if missing:
        raise UngradedTouchedError(
            f"{len(missing)} basis elements have no grading", tuple(k.base for k in missing)
        )
    by_grading: dict[int, list[int]] = {}
    for n, k in enumerate(tc.basis):
        by_grading.setdefault(tc.gradings[k], []).append(n)
    cols = dict(enumerate(tc.columns))
    out = []
    for gr in sorted(by_grading):
        image = [tc.columns[b] for b in by_grading.get(gr + 1, ())]
        reps = _homology_block(cols, by_grading[gr], image)
        if reps:
            out.append((gr, [vector_element(tc, z) for z in reps]))
    return out
