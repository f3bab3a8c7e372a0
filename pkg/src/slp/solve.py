"""Backtracking enumeration of stable models with well-founded propagation."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

from slp.errors import UnknownAtomError
from slp.ground import AtomSet, GroundProgram
from slp.semantics import (
    ThreeValuedModel,
    fixpoint,
    is_stable,
    usable_unless_true,
    usable_when_false,
)
from slp.syntax import Atom

OCCURRENCE = "occurrence-count"
LEXICOGRAPHIC = "lexicographic"
WFS = "wfs"
NONE = "none"
IN = "in"
OUT = "out"
BRAVE = "brave"
CAUTIOUS = "cautious"


@dataclass(frozen=True)
class SolverConfig:
    max_models: int | None = None  # None means unlimited
    branch_heuristic: str = OCCURRENCE
    propagation: str = WFS
    first_branch: str = IN

    def __post_init__(self):
        if self.max_models is not None and self.max_models < 1:
            raise ValueError("max_models must be positive")
        if self.branch_heuristic not in (OCCURRENCE, LEXICOGRAPHIC):
            raise ValueError(f"unknown branch heuristic {self.branch_heuristic!r}")
        if self.propagation not in (WFS, NONE):
            raise ValueError(f"unknown propagation {self.propagation!r}")
        if self.first_branch not in (IN, OUT):
            raise ValueError(f"unknown first branch {self.first_branch!r}")


@dataclass
class Statistics:
    decisions: int = 0
    backtracks: int = 0
    propagations: int = 0


@dataclass
class SearchState:
    assignment: ThreeValuedModel
    decisions: list[tuple[int, bool]] = field(default_factory=list)


class Solver:
    """Depth-first search over partial assignments of the atom table.

    At each node the assignment is closed under the well-founded operator
    conditioned on the atoms already fixed, plus clause-local inference; a
    contradiction triggers backtracking. The branching atom is the unassigned
    one occurring in most clauses (lowest id on ties), tried in the model
    first unless ``first_branch`` is ``"out"``.
    """

    def __init__(self, g: GroundProgram, config: SolverConfig = SolverConfig()):
        self.g = g
        self.config = config
        self.stats = Statistics()
        self._in_first = config.first_branch == IN
        self._all = frozenset(range(len(g.atoms)))
        if config.branch_heuristic == OCCURRENCE:
            counts = g.occurrence_counts
            self._order = sorted(range(len(g.atoms)), key=lambda a: (-counts[a], a))
        else:
            self._order = list(range(len(g.atoms)))
        self._touching = tuple(
            tuple(dict.fromkeys(h + p + n))
            for h, p, n in zip(g.head_occurrences, g.pos_occurrences, g.neg_occurrences)
        )

    def propagate(
        self, true: AtomSet, false: AtomSet, changed: Iterable[int] | None = None
    ) -> ThreeValuedModel | None:
        """Extend (true, false) by consequences shared by every stable model
        compatible with it; None if there is no such stable model.

        ``changed`` lists the atoms assigned since the last closed state; by
        default every assigned atom is treated as new.
        """
        g = self.g
        self.stats.propagations += 1
        true, false = set(true), set(false)
        if true & false:
            return None
        pending = list(true | false) if changed is None else list(changed)
        while True:
            if not self._local(true, false, pending):
                return None
            lower = fixpoint(g, usable_when_false(g, false), seed=true)
            if not lower.isdisjoint(false):
                return None
            upper = fixpoint(g, usable_unless_true(g, lower), blocked=false)
            if not lower <= upper:
                return None
            pending = [a for a in lower if a not in true]
            pending += [a for a in self._all if a not in upper and a not in false]
            if not pending:
                return ThreeValuedModel(frozenset(true), frozenset(false))
            true |= lower
            false.update(a for a in self._all if a not in upper)

    def _local(self, true: set, false: set, queue: list[int]) -> bool:
        """Clause-local inference, revisiting only clauses that mention an
        atom from ``queue``. Mutates ``true``/``false``; False on conflict.

        A clause whose body holds forces its head; a false head forces the
        last open body literal to fail; a true atom with a single clause that
        can still support it forces that clause's body.
        """
        clauses = self.g.clauses
        touching = self._touching
        heads = self.g.head_occurrences

        def assign(a: int, value: bool) -> bool:
            if value:
                if a in false:
                    return False
                if a not in true:
                    true.add(a)
                    queue.append(a)
            else:
                if a in true:
                    return False
                if a not in false:
                    false.add(a)
                    queue.append(a)
            return True

        while queue:
            supported: set[int] = set()
            while queue:
                a = queue.pop()
                if a in true:
                    supported.add(a)
                for ci in touching[a]:
                    c = clauses[ci]
                    h = c.head
                    if h in true:
                        supported.add(h)
                    if any(x in false for x in c.pos) or any(x in true for x in c.neg):
                        continue
                    open_pos = [x for x in c.pos if x not in true]
                    open_neg = [x for x in c.neg if x not in false]
                    n_open = len(open_pos) + len(open_neg)
                    if n_open == 0:
                        if not assign(h, True):
                            return False
                    elif n_open == 1 and h in false:
                        ok = assign(open_pos[0], False) if open_pos else assign(open_neg[0], True)
                        if not ok:
                            return False
            for h in supported:
                live = [
                    clauses[ci]
                    for ci in heads[h]
                    if not any(x in false for x in clauses[ci].pos)
                    and not any(x in true for x in clauses[ci].neg)
                ]
                if not live:
                    return False
                if len(live) == 1:
                    c = live[0]
                    for x in c.pos:
                        if not assign(x, True):
                            return False
                    for x in c.neg:
                        if not assign(x, False):
                            return False
        return True

    def _choose(self, state: ThreeValuedModel) -> int | None:
        for a in self._order:
            if a not in state.true_atoms and a not in state.false_atoms:
                return a
        return None

    def models(
        self, assume_true: Iterable[int] = (), assume_false: Iterable[int] = ()
    ) -> Iterator[AtomSet]:
        limit = self.config.max_models
        wfs = self.config.propagation == WFS
        start = frozenset(assume_true), frozenset(assume_false)
        if start[0] & start[1]:
            return
        stack = [SearchState(ThreeValuedModel(*start))]
        found = 0
        while stack:
            state = stack.pop()
            assignment = state.assignment
            if wfs:
                changed = [state.decisions[-1][0]] if state.decisions else None
                assignment = self.propagate(
                    assignment.true_atoms, assignment.false_atoms, changed
                )
                if assignment is None:
                    self.stats.backtracks += 1
                    continue
            atom = self._choose(assignment)
            if atom is None:
                m = assignment.true_atoms
                if not is_stable(self.g, m):
                    if wfs:
                        raise AssertionError("search produced an unstable model")
                    self.stats.backtracks += 1
                    continue
                yield m
                found += 1
                if limit is not None and found >= limit:
                    return
                continue
            self.stats.decisions += 1
            t, f = assignment.true_atoms, assignment.false_atoms
            # The branch pushed last is explored first.
            for value in (not self._in_first, self._in_first):
                if value:
                    child = ThreeValuedModel(t | {atom}, f)
                else:
                    child = ThreeValuedModel(t, f | {atom})
                stack.append(SearchState(child, state.decisions + [(atom, value)]))


def solve(g: GroundProgram, config: SolverConfig = SolverConfig()) -> Iterator[AtomSet]:
    return Solver(g, config).models()


def exists(g: GroundProgram, config: SolverConfig = SolverConfig()) -> bool:
    return next(Solver(g, config).models(), None) is not None


def _resolve(g: GroundProgram, a: Atom | int) -> int:
    if isinstance(a, int):
        if not 0 <= a < len(g.atoms):
            raise UnknownAtomError(f"atom id {a} not in table")
        return a
    return g.atom_id(a)


def query(
    g: GroundProgram, a: Atom | int, mode: str, config: SolverConfig = SolverConfig()
) -> bool:
    """Brave: ``a`` is in some stable model. Cautious: ``a`` is in every
    stable model, which holds vacuously when there are none."""
    i = _resolve(g, a)
    solver = Solver(g, config)
    if mode == BRAVE:
        return next(solver.models(assume_true=[i]), None) is not None
    if mode == CAUTIOUS:
        return next(solver.models(assume_false=[i]), None) is None
    raise ValueError(f"unknown query mode {mode!r}")


def project(
    g: GroundProgram, models: Iterable[AtomSet], predicate: str
) -> list[frozenset[tuple[str, ...]]]:
    """The extension of ``predicate`` in each model, one entry per model."""
    if not any(a.predicate == predicate for a in g.atoms):
        raise UnknownAtomError(f"predicate not in table: {predicate}")
    family = []
    for m in models:
        family.append(
            frozenset(
                tuple(t.name for t in g.atoms[i].args)
                for i in m
                if g.atoms[i].predicate == predicate
            )
        )
    return family
