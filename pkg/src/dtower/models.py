"""Builder presets for the knot complexes computed by hand in the literature."""

from __future__ import annotations

import string
from typing import Callable, Sequence

from .complex import Bifiltration, Generator, KnotComplex, mirror, tensor_product


def unknot() -> KnotComplex:
    return KnotComplex("unknot", (Generator("e", Bifiltration(0, 0)),))


def staircase(steps: Sequence[int], name: str | None = None) -> KnotComplex:
    """Staircase complex symmetric about the diagonal.

    ``steps`` lists the first half of the alternating horizontal/vertical
    segment lengths; the second half is its reverse, so ``[1]`` is the
    trefoil and ``[1, 2]`` is T(3,4).  The path starts on the j-axis and
    ends on the i-axis; every odd-position corner has arrows to both
    neighbours.
    """
    steps = list(steps)
    if not steps or any(int(s) != s or s < 1 for s in steps):
        raise ValueError("steps must be a nonempty list of positive integers")
    segments = steps + steps[::-1]
    height = sum(segments[1::2])
    positions = [Bifiltration(0, height)]
    i, j = 0, height
    for n, length in enumerate(segments):
        if n % 2 == 0:
            i += length
        else:
            j -= length
        positions.append(Bifiltration(i, j))
    names = (
        list(string.ascii_lowercase[: len(positions)])
        if len(positions) <= 26
        else [f"x{n}" for n in range(len(positions))]
    )
    gens = tuple(Generator(names[n], p) for n, p in enumerate(positions))
    diff = {
        names[n]: frozenset({names[n - 1], names[n + 1]})
        for n in range(1, len(positions), 2)
    }
    return KnotComplex(name or f"staircase{steps}", gens, diff)


def box_sum(n_boxes: int, offsets: Sequence[tuple[int, int]], name: str | None = None) -> KnotComplex:
    """Isolated generator at the origin plus acyclic unit boxes.

    The box with corner ``(p, q)`` has x@(p,q), y@(p-1,q), z@(p,q-1),
    w@(p-1,q-1) and arrows x->y, x->z, y->w, z->w.
    """
    if len(offsets) != n_boxes:
        raise ValueError(f"expected {n_boxes} offsets, got {len(offsets)}")
    if n_boxes == 0:
        return unknot() if name is None else unknot().renamed(name)
    gens = [Generator("e", Bifiltration(0, 0))]
    diff = {}
    for n, (p, q) in enumerate(offsets):
        x, y, z, w = (f"{c}{n}" for c in "xyzw")
        gens += [
            Generator(x, Bifiltration(p, q)),
            Generator(y, Bifiltration(p - 1, q)),
            Generator(z, Bifiltration(p, q - 1)),
            Generator(w, Bifiltration(p - 1, q - 1)),
        ]
        diff[x] = frozenset({y, z})
        diff[y] = frozenset({w})
        diff[z] = frozenset({w})
    return KnotComplex(name or f"boxes{n_boxes}", tuple(gens), diff)


def right_trefoil() -> KnotComplex:
    return staircase([1], name="RHT")


def left_trefoil() -> KnotComplex:
    return mirror(right_trefoil()).renamed("LHT")


def torus_3_4() -> KnotComplex:
    return staircase([1, 2], name="T(3,4)")


def figure_eight() -> KnotComplex:
    return box_sum(1, [(1, 1)], name="4_1")


# Unit boxes centred on Alexander gradings 2, 2, 1, 1, -1, -1, -2, -2 reproduce
# the knot Floer polynomial of C(2,1) after adding the isolated generator;
# the offsets are placed in swap-symmetric pairs.
C21_OFFSETS = [(1, 3), (2, 4), (1, 2), (2, 3), (3, 1), (4, 2), (2, 1), (3, 2)]


def c21_model() -> KnotComplex:
    return box_sum(len(C21_OFFSETS), C21_OFFSETS, name="C(2,1)")


PRESETS: dict[str, Callable[[], KnotComplex]] = {
    "unknot": unknot,
    "rht": right_trefoil,
    "lht": left_trefoil,
    "t34": torus_3_4,
    "fig8": figure_eight,
    "c21-model": c21_model,
}


def preset(name: str) -> KnotComplex:
    try:
        return PRESETS[name]()
    except KeyError:
        raise KeyError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}") from None


def connected_sum(*knots: KnotComplex) -> KnotComplex:
    out = knots[0]
    for k in knots[1:]:
        out = tensor_product(out, k)
    return out
