"""Least models, the reduct, model checks and the well-founded model."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from slp.errors import NotDefiniteError, TooLargeError
from slp.ground import AtomSet, GroundClause, GroundProgram

MINIMALITY_CAP = 20


@dataclass(frozen=True)
class ThreeValuedModel:
    true_atoms: AtomSet
    false_atoms: AtomSet

    def __post_init__(self):
        if self.true_atoms & self.false_atoms:
            raise ValueError("true and false partitions overlap")

    def unknown(self, g: GroundProgram) -> AtomSet:
        return frozenset(range(len(g.atoms))) - self.true_atoms - self.false_atoms

    def is_total(self, g: GroundProgram) -> bool:
        return len(self.true_atoms) + len(self.false_atoms) == len(g.atoms)


def fixpoint(
    g: GroundProgram,
    usable: Sequence[bool] | None = None,
    seed: Iterable[int] = (),
    blocked: AtomSet | set = frozenset(),
) -> set[int]:
    """Least set of atoms closed under the clauses of ``g`` flagged in
    ``usable`` (all clauses if None), starting from ``seed``.

    Negated literals are ignored. Atoms in ``blocked`` are never derived.
    Worklist propagation over counts of underived positive body atoms, so the
    cost is linear in the size of ``g``.
    """
    clauses = g.clauses
    derived = set(seed)
    queue = list(derived)
    for ci in g.bodyless:
        if usable is None or usable[ci]:
            h = clauses[ci].head
            if h not in derived and h not in blocked:
                derived.add(h)
                queue.append(h)
    missing = list(g.pos_lengths)
    occ = g.pos_occurrences
    while queue:
        for ci in occ[queue.pop()]:
            n = missing[ci] - 1
            missing[ci] = n
            if n == 0 and (usable is None or usable[ci]):
                h = clauses[ci].head
                if h not in derived and h not in blocked:
                    derived.add(h)
                    queue.append(h)
    return derived


def usable_when_false(g: GroundProgram, false: Iterable[int]) -> list[bool]:
    """Flags clauses all of whose negated atoms are in ``false``."""
    pending = [len(c.neg) for c in g.clauses]
    occ = g.neg_occurrences
    for a in false:
        for ci in occ[a]:
            pending[ci] -= 1
    return [n == 0 for n in pending]


def usable_unless_true(g: GroundProgram, true: Iterable[int]) -> list[bool]:
    """Flags clauses none of whose negated atoms is in ``true``."""
    usable = [True] * len(g.clauses)
    occ = g.neg_occurrences
    for a in true:
        for ci in occ[a]:
            usable[ci] = False
    return usable


def least_model(g: GroundProgram) -> AtomSet:
    if not g.is_definite:
        raise NotDefiniteError("least_model requires a program without negation")
    return frozenset(fixpoint(g))


def reduct(g: GroundProgram, m: AtomSet) -> GroundProgram:
    kept = tuple(
        GroundClause(c.head, c.pos) for c in g.clauses if not any(a in m for a in c.neg)
    )
    return GroundProgram(g.atoms, kept)


def reduct_least_model(g: GroundProgram, m: AtomSet) -> AtomSet:
    """least_model(reduct(g, m)) without materialising the reduct."""
    return frozenset(fixpoint(g, usable_unless_true(g, m)))


def is_stable(g: GroundProgram, m: AtomSet) -> bool:
    return reduct_least_model(g, m) == m


def _body_true(c: GroundClause, m: AtomSet) -> bool:
    return all(a in m for a in c.pos) and not any(a in m for a in c.neg)


def is_model(g: GroundProgram, m: AtomSet) -> bool:
    return all(c.head in m for c in g.clauses if _body_true(c, m))


def is_supported(g: GroundProgram, m: AtomSet) -> bool:
    supported = {c.head for c in g.clauses if _body_true(c, m)}
    return all(a in supported for a in m)


def is_minimal_model(g: GroundProgram, m: AtomSet, cap: int = MINIMALITY_CAP) -> bool:
    if not is_model(g, m):
        return False
    members = sorted(m)
    if len(members) > cap:
        raise TooLargeError(f"minimality check over {len(members)} atoms exceeds cap {cap}")
    for size in range(len(members)):
        for subset in itertools.combinations(members, size):
            if is_model(g, frozenset(subset)):
                return False
    return True


def well_founded(g: GroundProgram) -> ThreeValuedModel:
    """Alternating fixpoint: under-estimates grow, over-estimates shrink."""
    true: AtomSet = frozenset()
    possible = reduct_least_model(g, true)
    while True:
        new_true = reduct_least_model(g, possible)
        new_possible = reduct_least_model(g, new_true)
        if new_true == true and new_possible == possible:
            break
        true, possible = new_true, new_possible
    everything = frozenset(range(len(g.atoms)))
    return ThreeValuedModel(true, everything - possible)
