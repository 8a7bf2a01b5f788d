"""Knot complex data model and structural operations.

A :class:`KnotComplex` is a finite generating set for CFK^infinity over
F_2[U, U^-1]: generators placed at bifiltration levels ``(i, j)`` plus a
differential graph between them.  The full complex is the set of all
U-translates, with ``U . [x, i, j] = [x, i-1, j-1]``.  Arrows carry no U
power, so the differential preserves the U-exponent of every translate.
"""

from __future__ import annotations

import itertools
import math
import re
from collections import Counter, defaultdict, deque
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Iterator, Mapping, NamedTuple

from .errors import ComplexParseError, InvalidComplexError


class Bifiltration(NamedTuple):
    i: int
    j: int

    def shift(self, k: int) -> "Bifiltration":
        """Position of ``U^k`` applied to a generator sitting here."""
        return Bifiltration(self.i - k, self.j - k)

    def __add__(self, other):  # componentwise, not tuple concatenation
        return Bifiltration(self.i + other[0], self.j + other[1])

    def __neg__(self):
        return Bifiltration(-self.i, -self.j)

    @property
    def alexander(self) -> int:
        return self.j - self.i


class GeneratorKey(NamedTuple):
    """``U^u_exp`` applied to the generator with id ``base``."""

    base: Hashable
    u_exp: int


def id_sort_key(x):
    """Total order over the id types we allow (int, str, nested tuples)."""
    if isinstance(x, tuple):
        return (2, tuple(id_sort_key(y) for y in x))
    if isinstance(x, bool) or not isinstance(x, int):
        return (1, 0, str(x))
    return (0, x, "")


def key_sort_key(k: GeneratorKey):
    return (k.u_exp, id_sort_key(k.base))


def format_id(x) -> str:
    if isinstance(x, tuple):
        return "(" + ",".join(format_id(y) for y in x) + ")"
    return str(x)


@dataclass(frozen=True)
class Generator:
    id: Hashable
    filt: Bifiltration
    grading: int | None = None


class ChainElement:
    """A finite F_2-linear combination of U-translates of generators."""

    __slots__ = ("terms",)

    def __init__(self, terms: Iterable[GeneratorKey] = ()) -> None:
        acc: set = set()
        for t in terms:
            acc ^= {GeneratorKey(*t)}
        self.terms = frozenset(acc)

    def __add__(self, other: "ChainElement") -> "ChainElement":
        out = ChainElement()
        out.terms = self.terms ^ other.terms
        return out

    def times_u(self, k: int = 1) -> "ChainElement":
        return ChainElement(GeneratorKey(t.base, t.u_exp + k) for t in self.terms)

    def __iter__(self) -> Iterator[GeneratorKey]:
        return iter(sorted(self.terms, key=key_sort_key))

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, ChainElement) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(self.terms)

    def __repr__(self) -> str:
        if not self.terms:
            return "ChainElement(0)"
        parts = [
            (f"U^{t.u_exp}." if t.u_exp else "") + format_id(t.base) for t in self
        ]
        return "ChainElement(" + " + ".join(parts) + ")"


@dataclass(frozen=True)
class KnotComplex:
    name: str
    generators: tuple[Generator, ...]
    differential: Mapping[Hashable, frozenset] = field(default_factory=dict)

    def __post_init__(self) -> None:
        gens = tuple(
            Generator(g.id, Bifiltration(*g.filt), g.grading)
            if isinstance(g, Generator)
            else Generator(g[0], Bifiltration(*g[1]), *g[2:])
            for g in self.generators
        )
        ids = [g.id for g in gens]
        dupes = sorted({x for x in ids if ids.count(x) > 1}, key=id_sort_key)
        if dupes:
            raise ComplexParseError(
                "duplicate generator ids: " + ", ".join(map(format_id, dupes)), dupes
            )
        known = set(ids)
        diff = {}
        for src, targets in dict(self.differential).items():
            targets = frozenset(targets)
            missing = [t for t in targets if t not in known]
            if src not in known or missing:
                bad = ([src] if src not in known else []) + missing
                raise ComplexParseError(
                    "arrow endpoints not declared: " + ", ".join(map(format_id, bad)), bad
                )
            if targets:
                diff[src] = targets
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "differential", diff)
        object.__setattr__(self, "_by_id", {g.id: g for g in gens})

    def __hash__(self) -> int:
        return hash((self.name, self.generators))

    def __eq__(self, other) -> bool:
        if not isinstance(other, KnotComplex):
            return NotImplemented
        return (
            self.name == other.name
            and self.generators == other.generators
            and self.differential == other.differential
        )

    def __len__(self) -> int:
        return len(self.generators)

    def __getitem__(self, gid) -> Generator:
        return self._by_id[gid]

    @property
    def ids(self) -> list:
        return [g.id for g in self.generators]

    def boundary(self, gid) -> frozenset:
        return self.differential.get(gid, frozenset())

    def arrows(self) -> Iterator[tuple]:
        for g in self.generators:
            for t in sorted(self.boundary(g.id), key=id_sort_key):
                yield g.id, t

    @property
    def is_graded(self) -> bool:
        return all(g.grading is not None for g in self.generators)

    def with_gradings(self, gradings: Mapping) -> "KnotComplex":
        gens = tuple(
            Generator(g.id, g.filt, gradings.get(g.id, g.grading)) for g in self.generators
        )
        return KnotComplex(self.name, gens, self.differential)

    def renamed(self, name: str) -> "KnotComplex":
        return KnotComplex(name, self.generators, self.differential)

    def max_abs_coordinate(self) -> int:
        return max((max(abs(g.filt.i), abs(g.filt.j)) for g in self.generators), default=0)


@dataclass(frozen=True)
class ValidationReport:
    is_complex: bool
    is_filtered: bool
    grading_consistent: bool
    violations: tuple = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def describe(self) -> str:
        if self.ok:
            return "complex is valid"
        return "; ".join(
            f"{kind}: " + ", ".join(map(format_id, ids)) for kind, ids in self.violations
        )


def validate_complex(c: KnotComplex) -> ValidationReport:
    """Check d^2 = 0, filtration monotonicity and (where present) grading drop 1."""
    violations = []
    for g in c.generators:
        twice = Counter()
        for t in c.boundary(g.id):
            twice.update(c.boundary(t))
        odd = sorted((z for z, n in twice.items() if n % 2), key=id_sort_key)
        if odd:
            violations.append(("d_squared", (g.id, *odd)))
    is_complex = not violations

    # equality in both coordinates is allowed; only increases are rejected
    is_filtered = True
    for src, tgt in c.arrows():
        a, b = c[src].filt, c[tgt].filt
        if b.i > a.i or b.j > a.j:
            is_filtered = False
            violations.append(("filtration_increase", (src, tgt)))

    grading_consistent = True
    for src, tgt in c.arrows():
        a, b = c[src].grading, c[tgt].grading
        if a is not None and b is not None and b != a - 1:
            grading_consistent = False
            violations.append(("grading_drop", (src, tgt)))
    return ValidationReport(is_complex, is_filtered, grading_consistent, tuple(violations))


def require_valid(c: KnotComplex) -> ValidationReport:
    report = validate_complex(c)
    if not report.ok:
        raise InvalidComplexError(f"{c.name}: {report.describe()}", report)
    return report


def tensor_product(c1: KnotComplex, c2: KnotComplex, name: str | None = None) -> KnotComplex:
    """Connected sum: tensor product over F_2[U, U^-1] with the Leibniz differential."""
    require_valid(c1)
    require_valid(c2)
    gens = []
    for x in c1.generators:
        for y in c2.generators:
            gr = None
            if x.grading is not None and y.grading is not None:
                gr = x.grading + y.grading
            gens.append(Generator((x.id, y.id), x.filt + y.filt, gr))
    diff = {}
    for x in c1.generators:
        for y in c2.generators:
            out = {(dx, y.id) for dx in c1.boundary(x.id)}
            out ^= {(x.id, dy) for dy in c2.boundary(y.id)}
            if out:
                diff[(x.id, y.id)] = frozenset(out)
    return KnotComplex(name or f"{c1.name}#{c2.name}", tuple(gens), diff)


_MIRROR_NAME = re.compile(r"^mirror\((.*)\)$")


def mirror_name(name: str) -> str:
    m = _MIRROR_NAME.match(name)
    return m.group(1) if m else f"mirror({name})"


def mirror(c: KnotComplex) -> KnotComplex:
    """Dual complex: arrows reversed, (i, j) and grading negated."""
    require_valid(c)
    gens = tuple(
        Generator(g.id, -g.filt, None if g.grading is None else -g.grading)
        for g in c.generators
    )
    diff = defaultdict(set)
    for src, tgt in c.arrows():
        diff[tgt].add(src)
    return KnotComplex(mirror_name(c.name), gens, {k: frozenset(v) for k, v in diff.items()})


def symmetry_check(c: KnotComplex) -> bool:
    """Is the bifiltration multiset invariant under (i, j) -> (j, i)?"""
    levels = Counter((g.filt.i, g.filt.j) for g in c.generators)
    return levels == Counter({(j, i): n for (i, j), n in levels.items()})


# Canonical forms.  Generators are ordered by (i, j, grading) and then by a
# colour-refinement signature of the arrow graph; whatever ties remain are
# broken by trying every permutation inside the tied blocks (when that is
# cheap) and keeping the lexicographically smallest arrow list.

_MAX_TIE_PERMUTATIONS = 40320


def _refined_colours(c: KnotComplex) -> dict:
    def start(g):
        return (g.filt.i, g.filt.j, (0,) if g.grading is None else (1, g.grading))

    def ranked(sig):
        palette = {v: n for n, v in enumerate(sorted(set(sig.values())))}
        return {gid: palette[v] for gid, v in sig.items()}

    preds = defaultdict(list)
    for src, tgt in c.arrows():
        preds[tgt].append(src)
    colour = ranked({g.id: start(g) for g in c.generators})
    while True:
        sig = {
            gid: (
                colour[gid],
                tuple(sorted(colour[t] for t in c.boundary(gid))),
                tuple(sorted(colour[s] for s in preds[gid])),
            )
            for gid in colour
        }
        refined = ranked(sig)
        if len(set(refined.values())) == len(set(colour.values())):
            return refined
        colour = refined


def canonical_form(c: KnotComplex) -> tuple:
    """Label-free invariant representation; equal forms imply isomorphic complexes."""
    colour = _refined_colours(c)
    order = sorted(c.ids, key=lambda g: (colour[g], id_sort_key(g)))
    blocks = [list(grp) for _, grp in itertools.groupby(order, key=lambda g: colour[g])]

    def encode(seq):
        pos = {gid: n for n, gid in enumerate(seq)}
        arrows = sorted((pos[s], pos[t]) for s, t in c.arrows())
        return tuple(arrows)

    n_perms = math.prod(math.factorial(len(b)) for b in blocks)
    best = encode(order)
    if 1 < n_perms <= _MAX_TIE_PERMUTATIONS:
        for choice in itertools.product(*(itertools.permutations(b) for b in blocks)):
            cand = encode([gid for block in choice for gid in block])
            if cand < best:
                best = cand
    nodes = tuple(
        (c[g].filt.i, c[g].filt.j, c[g].grading) for g in order
    )
    return nodes, best


def is_isomorphic(c1: KnotComplex, c2: KnotComplex) -> bool:
    return len(c1) == len(c2) and canonical_form(c1) == canonical_form(c2)


def filtration_multiset(c: KnotComplex) -> Counter:
    return Counter((g.filt.i, g.filt.j) for g in c.generators)


def connected_components(c: KnotComplex) -> list[set]:
    adj = defaultdict(set)
    for s, t in c.arrows():
        adj[s].add(t)
        adj[t].add(s)
    seen, comps = set(), []
    for gid in c.ids:
        if gid in seen:
            continue
        comp, queue = set(), deque([gid])
        seen.add(gid)
        while queue:
            x = queue.popleft()
            comp.add(x)
            for y in adj[x] - seen:
                seen.add(y)
                queue.append(y)
        comps.append(comp)
    return comps
