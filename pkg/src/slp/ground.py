"""Herbrand universe/base and naive grounding of safe programs."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from slp.errors import UnknownAtomError
from slp.syntax import CONST, EQ, Atom, Clause, Literal, Program, Term, check_program

AtomSet = frozenset  # of atom indices into GroundProgram.atoms


@dataclass(frozen=True)
class HerbrandContext:
    universe: tuple[str, ...]
    base: tuple[Atom, ...]


@dataclass(frozen=True)
class GroundClause:
    head: int
    pos: tuple[int, ...] = ()
    neg: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "pos", _unique(self.pos))
        object.__setattr__(self, "neg", _unique(self.neg))


@dataclass(frozen=True, eq=False)
class GroundProgram:
    """Ground clauses over a table of atoms; atom ids are dense and follow
    the sort order of the table."""

    atoms: tuple[Atom, ...]
    clauses: tuple[GroundClause, ...]
    index: dict[Atom, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "index", {a: i for i, a in enumerate(self.atoms)})
        n = len(self.atoms)
        for c in self.clauses:
            for i in (c.head, *c.pos, *c.neg):
                if not 0 <= i < n:
                    raise ValueError(f"atom id {i} outside table of size {n}")

    @classmethod
    def from_atoms(
        cls,
        clauses: Iterable[tuple[Atom, Sequence[Atom], Sequence[Atom]]],
        extra_atoms: Iterable[Atom] = (),
    ) -> GroundProgram:
        """Build from (head, positive atoms, negated atoms) triples.

        The atom table is every mentioned atom plus ``extra_atoms``, sorted.
        """
        clauses = [(h, tuple(p), tuple(n)) for h, p, n in clauses]
        table = set(extra_atoms)
        for h, p, n in clauses:
            table.add(h)
            table.update(p)
            table.update(n)
        atoms = tuple(sorted(table, key=Atom.key))
        index = {a: i for i, a in enumerate(atoms)}
        return cls(
            atoms,
            tuple(
                GroundClause(
                    index[h],
                    _unique(index[a] for a in p),
                    _unique(index[a] for a in n),
                )
                for h, p, n in clauses
            ),
        )

    def __len__(self) -> int:
        return len(self.clauses)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroundProgram):
            return NotImplemented
        return self.atoms == other.atoms and self.clauses == other.clauses

    __hash__ = None

    @property
    def is_definite(self) -> bool:
        return all(not c.neg for c in self.clauses)

    def atom_id(self, a: Atom) -> int:
        try:
            return self.index[a]
        except KeyError:
            raise UnknownAtomError(f"atom not in table: {a}") from None

    def atom_set(self, atoms: Iterable[Atom]) -> AtomSet:
        return frozenset(self.atom_id(a) for a in atoms)

    def names(self, m: Iterable[int]) -> list[Atom]:
        """Atoms of an atom set, in table order."""
        return [self.atoms[i] for i in sorted(m)]

    def to_clause(self, c: GroundClause) -> Clause:
        body = [Literal(self.atoms[i]) for i in c.pos]
        body += [Literal(self.atoms[i], True) for i in c.neg]
        return Clause(self.atoms[c.head], tuple(body))

    def to_program(self, sort: bool = False) -> Program:
        clauses = self.clauses
        if sort:
            clauses = sorted(clauses, key=lambda c: (c.head, c.pos, c.neg))
        return Program(tuple(self.to_clause(c) for c in clauses))

    # Occurrence tables used by the fixpoint computations.

    @cached_property
    def pos_occurrences(self) -> tuple[tuple[int, ...], ...]:
        return self._occurrences("pos")

    @cached_property
    def neg_occurrences(self) -> tuple[tuple[int, ...], ...]:
        return self._occurrences("neg")

    @cached_property
    def head_occurrences(self) -> tuple[tuple[int, ...], ...]:
        occ: list[list[int]] = [[] for _ in self.atoms]
        for ci, c in enumerate(self.clauses):
            occ[c.head].append(ci)
        return tuple(map(tuple, occ))

    @cached_property
    def pos_lengths(self) -> tuple[int, ...]:
        return tuple(len(c.pos) for c in self.clauses)

    @cached_property
    def bodyless(self) -> tuple[int, ...]:
        """Clauses without positive body atoms."""
        return tuple(ci for ci, c in enumerate(self.clauses) if not c.pos)

    def _occurrences(self, part: str) -> tuple[tuple[int, ...], ...]:
        occ: list[list[int]] = [[] for _ in self.atoms]
        for ci, c in enumerate(self.clauses):
            for a in getattr(c, part):
                occ[a].append(ci)
        return tuple(map(tuple, occ))

    @cached_property
    def occurrence_counts(self) -> tuple[int, ...]:
        counts = [0] * len(self.atoms)
        for c in self.clauses:
            counts[c.head] += 1
            for a in c.pos:
                counts[a] += 1
            for a in c.neg:
                counts[a] += 1
        return tuple(counts)


def _unique(ids: Iterable[int]) -> tuple[int, ...]:
    return tuple(dict.fromkeys(ids))


def herbrand(program: Program) -> HerbrandContext:
    universe = tuple(sorted(program.constants()))
    base = []
    for pred, arity in sorted(program.predicates().items()):
        for args in itertools.product(universe, repeat=arity):
            base.append(Atom(pred, tuple(Term(CONST, c) for c in args)))
    base.sort(key=Atom.key)
    return HerbrandContext(universe, tuple(base))


def ground(program: Program) -> GroundProgram:
    """Instantiate every clause over the Herbrand universe.

    ``=`` literals are evaluated: instances with a false ``=`` (or a true
    ``not X = Y``) are dropped, the rest have the literal removed. The atom
    table is the whole Herbrand base.
    """
    check_program(program)
    hc = herbrand(program)
    index = {a: i for i, a in enumerate(hc.base)}
    consts = [Term(CONST, c) for c in hc.universe]
    out: list[GroundClause] = []
    for clause in program:
        variables = clause.variables()
        eqs = [lit for lit in clause.body if lit.atom.predicate == EQ]
        lits = [lit for lit in clause.body if lit.atom.predicate != EQ]
        for values in itertools.product(consts, repeat=len(variables)):
            sub = dict(zip(variables, values))
            if not all(_eq_holds(lit, sub) for lit in eqs):
                continue
            pos, neg = [], []
            for lit in lits:
                gid = index[_apply(lit.atom, sub)]
                (neg if lit.negated else pos).append(gid)
            out.append(GroundClause(index[_apply(clause.head, sub)], _unique(pos), _unique(neg)))
    return GroundProgram(hc.base, tuple(out))


def _apply(a: Atom, sub: dict[str, Term]) -> Atom:
    if not a.args:
        return a
    return Atom(a.predicate, tuple(sub[t.name] if t.is_var else t for t in a.args))


def _eq_holds(lit: Literal, sub: dict[str, Term]) -> bool:
    left, right = _apply(lit.atom, sub).args
    return (left == right) != lit.negated


def simplify(g: GroundProgram) -> GroundProgram:
    """Shrink a ground program without changing its stable models.

    Removes duplicate clauses and clauses whose head occurs in their own
    positive body, repeatedly drops clauses depending positively on atoms
    that head no clause, deletes ``not a`` for such atoms, and compacts the
    atom table to the atoms still mentioned.
    """
    seen: dict[tuple, None] = {}
    for c in g.clauses:
        if c.head in c.pos:
            continue
        seen.setdefault((c.head, tuple(sorted(set(c.pos))), tuple(sorted(set(c.neg)))))
    clauses = list(seen)

    while True:
        heads = {h for h, _, _ in clauses}
        kept = [c for c in clauses if all(a in heads for a in c[1])]
        if len(kept) == len(clauses):
            break
        clauses = kept

    heads = {h for h, _, _ in clauses}
    triples = [
        (g.atoms[h], [g.atoms[a] for a in pos], [g.atoms[a] for a in neg if a in heads])
        for h, pos, neg in clauses
    ]
    # Rebuilding through from_atoms may merge clauses that became equal.
    result = GroundProgram.from_atoms(triples)
    return GroundProgram(result.atoms, tuple(dict.fromkeys(result.clauses)))
