"""Interactive menu session for entering knots and computing d invariants.

Knots entered here use non-negative integer vertex keys.  Connected sums
key their vertices by pairs (a, b); listings display a pair by the Cantor
pairing (a+b)(a+b+1)/2 + b of its labels.  Successor lists keep their
entry order so listings are reproducible.
"""

from __future__ import annotations

import sys
import time
from dataclasses import dataclass
from typing import Callable, TextIO

from .complex import Bifiltration, Generator, KnotComplex, validate_complex
from .dinv import d_invariants
from .errors import DTowerError
from .f2 import homology_rank
from .grading import y_slice

RULE_TOP = "-" * 33
RULE_BOTTOM = "-" * 34
MAIN_MENU = [
    RULE_TOP,
    "   Main menu.  ",
    "(1) Enter a new knot",
    "(2) View current knots",
    "(3) Select a knot",
    "(4) Connect-sum two knots",
    "(0) Quit",
    RULE_BOTTOM,
]
KNOT_MENU = [
    "What would you like to do with your knot complex?",
    "(1) Print its adjacency list",
    "(2) Show its bifiltration levels",
    "(3) Check if it defines a complex",
    "(4) Check if it is filtered",
    "(5) Compute its homology",
    "(6) Compute d invariants!",
    "(7) Nothing--bring me back to the main menu",
]
BANNER = [
    "*" * 65,
    "d invariant calculator: d of +1 and -1 surgery on a knot (coefficients Z/2)",
    "*" * 65,
]


def cantor_pair(a: int, b: int) -> int:
    return (a + b) * (a + b + 1) // 2 + b


def label(key) -> int:
    """Display label of a vertex key; nested pairs are paired recursively."""
    if isinstance(key, tuple):
        return cantor_pair(label(key[0]), label(key[1]))
    return key


@dataclass
class KnotRecord:
    """A knot as entered: vertex order and successor order are kept as typed."""

    name: str
    order: list
    succ: dict
    filt: dict

    def complex(self) -> KnotComplex:
        gens = tuple(Generator(k, Bifiltration(*self.filt[k])) for k in self.order)
        diff = {}
        for k in self.order:
            # repeated successors cancel mod 2
            targets = set()
            for t in self.succ.get(k, []):
                targets ^= {t}
            diff[k] = frozenset(targets)
        return KnotComplex(self.name, gens, diff)

    def adjacency_lines(self) -> list[str]:
        return [
            f"[{label(k)}]" + "".join(f"{label(t)}," for t in self.succ.get(k, []))
            for k in self.order
        ]

    def filtration_lines(self) -> list[str]:
        return [f"F({label(k)}) = ({self.filt[k][0]},{self.filt[k][1]})" for k in self.order]


def connect_sum(a: KnotRecord, b: KnotRecord) -> KnotRecord:
    """Tensor product keyed by pairs; d(x (x) y) lists x (x) dy before dx (x) y."""
    order, succ, filt = [], {}, {}
    for y in b.order:
        for x in a.order:
            key = (x, y)
            order.append(key)
            filt[key] = (a.filt[x][0] + b.filt[y][0], a.filt[x][1] + b.filt[y][1])
            succ[key] = [(x, dy) for dy in b.succ.get(y, [])] + [
                (dx, y) for dx in a.succ.get(x, [])
            ]
    order.reverse()
    return KnotRecord(f"{a.name}#{b.name}", order, succ, filt)


def record_from_complex(c: KnotComplex) -> KnotRecord:
    """Relabel a complex with integer keys 0, 1, ... in generator order."""
    keys = {g.id: n for n, g in enumerate(c.generators)}
    order = list(range(len(keys)))
    succ = {
        keys[g.id]: sorted(keys[t] for t in c.boundary(g.id)) for g in c.generators
    }
    filt = {keys[g.id]: (g.filt.i, g.filt.j) for g in c.generators}
    return KnotRecord(c.name, order, succ, filt)


class EndOfInput(Exception):
    pass


class Session:
    def __init__(
        self,
        read: Callable[[], str] | None = None,
        out: TextIO | None = None,
        banner: bool = True,
    ) -> None:
        self._read = read or (lambda: input())
        self.out = out or sys.stdout
        self.banner = banner
        self.knots: list[KnotRecord] = []

    # -- plumbing ---------------------------------------------------------
    def say(self, *lines: str) -> None:
        for line in lines:
            self.out.write(line + "\n")

    def ask(self, prompt: str = "") -> str:
        if prompt:
            self.out.write(prompt)
        try:
            line = self._read()
        except EOFError:
            raise EndOfInput from None
        return line.strip()

    def ask_int(self, prompt: str = "") -> int:
        while True:
            text = self.ask(prompt)
            try:
                return int(text)
            except ValueError:
                self.say(f"please enter an integer, not {text!r}")

    # -- main loop --------------------------------------------------------
    def run(self) -> int:
        if self.banner:
            self.say(*BANNER)
        actions = {
            "1": self.enter_knot,
            "2": self.view_knots,
            "3": self.select_knot,
            "4": self.sum_knots,
        }
        try:
            while True:
                self.say(*MAIN_MENU)
                choice = self.ask()
                if choice == "0":
                    if self.ask("Really quit d calculator? (y/n) ").lower().startswith("y"):
                        return 0
                elif choice in actions:
                    actions[choice]()
                else:
                    self.say(f"unrecognised choice {choice!r}")
        except EndOfInput:
            self.say("")
            return 0

    def add(self, record: KnotRecord) -> None:
        self.knots.append(record)

    # -- menu items -------------------------------------------------------
    def enter_knot(self) -> None:
        self.say("Enter the name of your knot")
        name = self.ask() or f"knot{len(self.knots)}"
        self.say("Enter the knot vertex keys (non-neg integers).  input -1 to stop")
        order: list[int] = []
        while True:
            k = self.ask_int()
            if k == -1:
                break
            if k < 0:
                self.say("keys must be non-negative")
            elif k in order:
                self.say(f"vertex {k} already entered")
            else:
                order.append(k)
        self.say("entered vertices " + "".join(f"{k}," for k in order))
        self.say("enter the adjacency lists (type a vertex key, press enter,", "\tcontinue. input -1 to stop)")
        succ: dict[int, list[int]] = {}
        for k in order:
            self.say(f"successors of {k}:")
            succ[k] = []
            while True:
                t = self.ask_int()
                if t == -1:
                    break
                if t not in order:
                    self.say(f"{t} is not a vertex of this knot")
                else:
                    succ[k].append(t)
        self.say(
            "enter the bifiltration levels",
            "(type i value, press enter, then type j value, then press enter)",
            "(input -1 to stop)",
        )
        filt = {}
        for k in order:
            self.say("")
            fi = self.ask_int(f"F_i[{k}] = ")
            fj = self.ask_int(f"F_j[{k}] = ")
            filt[k] = (fi, fj)
        rec = KnotRecord(name, order, succ, filt)
        self.add(rec)
        self.say(f"added knot {name} with adjacency list", *rec.adjacency_lines())
        self.say("and bifiltration levels", *rec.filtration_lines())
        self.say("", "", "")

    def list_knots(self) -> None:
        self.say("Current knots are:", "(index, name)", "------------")
        self.say(*(f"({n}, {k.name})" for n, k in enumerate(self.knots)))

    def view_knots(self) -> None:
        self.list_knots()

    def pick(self, prompt: str | None = None) -> KnotRecord | None:
        if prompt:
            self.say(prompt)
        n = self.ask_int()
        if 0 <= n < len(self.knots):
            return self.knots[n]
        self.say(f"no knot with index {n}")
        return None

    def select_knot(self) -> None:
        if not self.knots:
            self.say("no knots entered yet")
            return
        self.list_knots()
        rec = self.pick("input an index")
        if rec is None:
            return
        while True:
            self.say(*KNOT_MENU)
            choice = self.ask()
            if choice == "7":
                return
            handler = {
                "1": lambda: self.say(*rec.adjacency_lines()),
                "2": lambda: self.say(*rec.filtration_lines()),
                "3": lambda: self.check_complex(rec),
                "4": lambda: self.check_filtered(rec),
                "5": lambda: self.homology(rec),
                "6": lambda: self.compute_d(rec),
            }.get(choice)
            if handler is None:
                self.say(f"unrecognised choice {choice!r}")
                continue
            handler()
            if choice == "6":
                return

    def sum_knots(self) -> None:
        if not self.knots:
            self.say("no knots entered yet")
            return
        self.list_knots()
        self.say("Enter the indices of the two knots to add")
        a = self.pick()
        b = self.pick()
        if a is None or b is None:
            return
        self.say("Computing tensor product...")
        start = time.monotonic()
        rec = connect_sum(a, b)
        secs = int(time.monotonic() - start)
        self.say(f"Computation took {secs // 60}min{secs % 60}sec.")
        self.add(rec)
        self.say(f"Created knot {rec.name} having adjacency list", *rec.adjacency_lines())
        self.say("and bifiltrations", *rec.filtration_lines())

    # -- per-knot actions -------------------------------------------------
    def _valid(self, rec: KnotRecord):
        return validate_complex(rec.complex())

    def check_complex(self, rec: KnotRecord) -> None:
        report = self._valid(rec)
        if report.is_complex:
            self.say("Yes, d^2 = 0: it defines a complex")
        else:
            bad = [ids for kind, ids in report.violations if kind == "d_squared"]
            self.say("No, d^2 != 0 at: " + ", ".join(str(label(ids[0])) for ids in bad))

    def check_filtered(self, rec: KnotRecord) -> None:
        report = self._valid(rec)
        if report.is_filtered:
            self.say("Yes, every arrow respects the bifiltration")
        else:
            bad = [ids for kind, ids in report.violations if kind == "filtration_increase"]
            self.say("No, filtration increases along: " + ", ".join(f"{label(s)}->{label(t)}" for s, t in bad))

    def homology(self, rec: KnotRecord) -> None:
        try:
            tc = y_slice(rec.complex())
        except DTowerError as exc:
            self.say(f"error: {exc}")
            return
        self.say(f"homology of the y-slice has rank {homology_rank(tc)} over Z/2")

    def compute_d(self, rec: KnotRecord) -> None:
        try:
            report = d_invariants(rec.complex())
        except DTowerError as exc:
            self.say(f"error [{exc.code}]: {exc}")
            return
        self.say(*report.lines())


def run(lines=None, out: TextIO | None = None, banner: bool = True) -> int:
    """Run a session; ``lines`` (an iterable of input lines) replaces stdin."""
    if lines is None:
        return Session(out=out, banner=banner).run()
    it = iter(lines)

    def read() -> str:
        try:
            return next(it)
        except StopIteration:
            raise EOFError from None

    return Session(read, out, banner).run()
