"""Constraint clauses, subset generators and uniform encodings of clique,
hamiltonian cycle and CNF satisfiability, with decoders from stable models
back to solutions."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from slp.errors import EncodingError
from slp.syntax import (
    RESERVED_PREFIX,
    Atom,
    Clause,
    Literal,
    Program,
    atom,
    parse,
)

FRESH = Atom(RESERVED_PREFIX + "f")
_CONST_RE = re.compile(r"[a-z0-9][A-Za-z0-9_]*\Z")


@dataclass(frozen=True)
class Constraint:
    """C(A, B): a model containing all of A must contain some atom of B."""

    a_set: tuple[Atom, ...] = ()
    b_set: tuple[Atom, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "a_set", tuple(self.a_set))
        object.__setattr__(self, "b_set", tuple(self.b_set))
        for a in (*self.a_set, *self.b_set):
            if not a.is_ground:
                raise EncodingError(f"constraint atom is not ground: {a}")

    def satisfied_by(self, model: Iterable[Atom]) -> bool:
        model = set(model)
        return not set(self.a_set) <= model or any(b in model for b in self.b_set)


def fresh_atom(program: Program | None = None) -> Atom:
    """A reserved 0-ary atom not occurring in ``program``."""
    used = set(program.predicates()) if program is not None else set()
    name, n = FRESH.predicate, 0
    while name in used:
        n += 1
        name = f"{FRESH.predicate}{n}"
    return Atom(name)


def kill_clause(c: Constraint, fresh: Atom = FRESH, program: Program | None = None) -> Clause:
    """``fresh :- a_1, ..., a_k, not b_1, ..., not b_m, not fresh.``

    Adding it to a program keeps exactly the stable models satisfying ``c``.
    """
    if fresh in c.a_set or fresh in c.b_set or (
        program is not None and fresh.predicate in program.predicates()
    ):
        raise EncodingError(f"atom {fresh} is not fresh")
    body = [Literal(a) for a in c.a_set]
    body += [Literal(b, True) for b in c.b_set]
    body.append(Literal(fresh, True))
    return Clause(fresh, tuple(body))


def _constant_names(items: Iterable) -> list[str]:
    names = []
    for item in items:
        if isinstance(item, Atom):
            if item.args:
                raise EncodingError(f"universe element must be a constant: {item}")
            item = item.predicate
        if not _CONST_RE.match(item):
            raise EncodingError(f"invalid constant name: {item!r}")
        names.append(item)
    return names


def subset_generator(universe: Sequence[str | Atom]) -> Program:
    """``in(v) :- not out(v).`` and ``out(v) :- not in(v).`` for each v."""
    names = _constant_names(universe)
    if len(set(names)) != len(names):
        raise EncodingError("duplicate element in subset universe")
    clauses = []
    for v in names:
        clauses.append(Clause(atom("in", v), (Literal(atom("out", v), True),)))
        clauses.append(Clause(atom("out", v), (Literal(atom("in", v), True),)))
    return Program(tuple(clauses))


# --- instances ---------------------------------------------------------------


@dataclass(frozen=True)
class GraphInstance:
    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]
    directed: bool = False
    initial_vertex: str | None = None

    def __post_init__(self):
        vertices = tuple(dict.fromkeys(_constant_names(self.vertices)))
        known = set(vertices)
        edges = []
        for e in self.edges:
            if len(e) != 2:
                raise EncodingError(f"malformed edge: {e!r}")
            u, v = e
            if u not in known or v not in known:
                raise EncodingError(f"edge ({u},{v}) uses an unknown vertex")
            edges.append((u, v) if self.directed else tuple(sorted((u, v))))
        if self.initial_vertex is not None and self.initial_vertex not in known:
            raise EncodingError(f"initial vertex {self.initial_vertex} is not a vertex")
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "edges", tuple(dict.fromkeys(edges)))


@dataclass(frozen=True)
class CnfInstance:
    variables: tuple[str, ...]
    clauses: tuple[tuple[tuple[str, ...], tuple[str, ...]], ...]

    def __post_init__(self):
        variables = tuple(dict.fromkeys(_constant_names(self.variables)))
        known = set(variables)
        clauses = []
        for pos, neg in self.clauses:
            pos, neg = tuple(dict.fromkeys(pos)), tuple(dict.fromkeys(neg))
            if not known.issuperset(pos) or not known.issuperset(neg):
                raise EncodingError(f"clause {pos}/{neg} uses an undeclared variable")
            if set(pos) & set(neg):
                raise EncodingError(f"tautological clause: {sorted(set(pos) & set(neg))}")
            clauses.append((pos, neg))
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "clauses", tuple(clauses))


@dataclass(frozen=True)
class Encoder:
    name: str
    edb: Callable[..., Program]
    logic: Program
    decode: Callable[[Iterable[Atom]], frozenset]

    def program(self, instance) -> Program:
        return self.edb(instance) + self.logic


def _facts(atoms: Iterable[Atom]) -> Program:
    return Program(tuple(Clause(a) for a in atoms))


def _extension(model: Iterable[Atom], predicate: str, arity: int) -> list[tuple[str, ...]]:
    return [
        tuple(t.name for t in a.args)
        for a in model
        if a.predicate == predicate and a.arity == arity
    ]


# --- clique --------------------------------------------------------------------

CLIQUE_LOGIC = parse(
    """
    in(X) :- vertex(X), not out(X).
    out(X) :- vertex(X), not in(X).
    __f :- vertex(X), vertex(Y), in(X), in(Y), not X = Y, not edge(X,Y), not __f.
    """,
    allow_reserved=True,
)


def edb_clique(g: GraphInstance) -> Program:
    if g.directed:
        raise EncodingError("clique expects an undirected graph")
    facts = [atom("vertex", v) for v in g.vertices]
    for u, v in g.edges:
        facts.append(atom("edge", u, v))
        if u != v:
            facts.append(atom("edge", v, u))
    return _facts(facts)


def decode_clique(model: Iterable[Atom]) -> frozenset[str]:
    return frozenset(v for (v,) in _extension(model, "in", 1))


# --- hamiltonian cycle -----------------------------------------------------------

# The vertex(X) guard in the last clause keeps it safe; it restricts X to the
# vertices, which is the intended range anyway.
HAM_LOGIC = parse(
    """
    in(V1,V2) :- edge(V1,V2), not out(V1,V2).
    out(V1,V2) :- edge(V1,V2), not in(V1,V2).
    __f :- in(V2,V1), in(V3,V1), not V2 = V3, not __f.
    __f :- in(V1,V2), in(V1,V3), not V2 = V3, not __f.
    reached(V2) :- in(V1,V2), reached(V1).
    reached(V2) :- in(V1,V2), initialvtx(V1).
    __f :- vertex(X), not reached(X), not __f.
    """,
    allow_reserved=True,
)


def edb_hamiltonian(g: GraphInstance) -> Program:
    if not g.directed:
        raise EncodingError("hamiltonian cycle expects a directed graph")
    initial = g.initial_vertex
    if initial is None:
        if not g.vertices:
            raise EncodingError("missing initial vertex")
        initial = min(g.vertices)
    facts = [atom("vertex", v) for v in g.vertices]
    facts += [atom("edge", u, v) for u, v in g.edges]
    facts.append(atom("initialvtx", initial))
    return _facts(facts)


def decode_hamiltonian(model: Iterable[Atom]) -> frozenset[tuple[str, str]]:
    return frozenset(_extension(model, "in", 2))


# --- satisfiability --------------------------------------------------------------

SAT_LOGIC = parse(
    """
    true(X) :- var(X), not false(X).
    false(X) :- var(X), not true(X).
    sat(C) :- var(X), clause(C), true(X), pos(C,X).
    sat(C) :- var(X), clause(C), false(X), neg(C,X).
    __f :- clause(C), not sat(C), not __f.
    """,
    allow_reserved=True,
)


def edb_sat(f: CnfInstance) -> Program:
    names = set(f.variables)
    labels = []
    for i in range(1, len(f.clauses) + 1):
        label = f"c{i}"
        while label in names:
            label = "c" + label
        labels.append(label)
    facts = [atom("var", v) for v in f.variables]
    for label, (pos, neg) in zip(labels, f.clauses):
        facts.append(atom("clause", label))
        facts += [atom("pos", label, v) for v in pos]
        facts += [atom("neg", label, v) for v in neg]
    return _facts(facts)


def decode_sat_uniform(model: Iterable[Atom]) -> frozenset[str]:
    return frozenset(v for (v,) in _extension(model, "true", 1))


def encode_sat_direct_program(f: CnfInstance) -> Program:
    kills = [
        kill_clause(Constraint(tuple(atom("in", a) for a in neg), tuple(atom("in", b) for b in pos)))
        for pos, neg in f.clauses
    ]
    return subset_generator(f.variables) + Program(tuple(kills))


def decode_sat_direct(model: Iterable[Atom]) -> frozenset[str]:
    return frozenset(v for (v,) in _extension(model, "in", 1))


# --- public encoders ------------------------------------------------------------

CLIQUE = Encoder("clique", edb_clique, CLIQUE_LOGIC, decode_clique)
HAMILTONIAN = Encoder("ham", edb_hamiltonian, HAM_LOGIC, decode_hamiltonian)
SAT = Encoder("sat", edb_sat, SAT_LOGIC, decode_sat_uniform)


def encode_clique(g: GraphInstance) -> tuple[Program, Callable]:
    return CLIQUE.program(g), CLIQUE.decode


def encode_hamiltonian(g: GraphInstance) -> tuple[Program, Callable]:
    return HAMILTONIAN.program(g), HAMILTONIAN.decode


def encode_sat_uniform(f: CnfInstance) -> tuple[Program, Callable]:
    return SAT.program(f), SAT.decode


def encode_sat_direct(f: CnfInstance) -> tuple[Program, Callable]:
    return encode_sat_direct_program(f), decode_sat_direct


def transitive_closure_program() -> Program:
    return parse("tc(X,Y) :- rel(X,Y).\ntc(X,Y) :- tc(X,Z), rel(Z,Y).\n")


# --- input formats ------------------------------------------------------------------


def parse_graph(text: str, directed: bool) -> GraphInstance:
    """Lines ``v NAME``, ``e NAME NAME`` and ``init NAME``; ``#`` comments."""
    vertices, edges, initial = [], [], None
    for lineno, raw in enumerate(text.splitlines(), 1):
        fields = raw.split("#", 1)[0].split()
        if not fields:
            continue
        kind, args = fields[0], fields[1:]
        if kind == "v" and len(args) == 1:
            vertices.append(args[0])
        elif kind == "e" and len(args) == 2:
            edges.append((args[0], args[1]))
        elif kind == "init" and len(args) == 1:
            if initial is not None:
                raise EncodingError(f"line {lineno}: initial vertex given twice")
            initial = args[0]
        else:
            raise EncodingError(f"line {lineno}: cannot read {raw.strip()!r}")
    return GraphInstance(tuple(vertices), tuple(edges), directed, initial)


def parse_dimacs(text: str) -> CnfInstance:
    """DIMACS cnf; variable i becomes the constant ``x{i}``."""
    header = None
    numbers: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            fields = line.split()
            if header is not None or len(fields) != 4 or fields[1] != "cnf":
                raise EncodingError(f"line {lineno}: bad header {line!r}")
            try:
                header = (int(fields[2]), int(fields[3]))
            except ValueError:
                raise EncodingError(f"line {lineno}: bad header {line!r}") from None
            continue
        if header is None:
            raise EncodingError(f"line {lineno}: clause before 'p cnf' header")
        try:
            numbers += [int(tok) for tok in line.split()]
        except ValueError:
            raise EncodingError(f"line {lineno}: not an integer literal") from None
    if header is None:
        raise EncodingError("missing 'p cnf' header")
    nvars, nclauses = header
    clauses, current = [], []
    for lit in numbers:
        if lit == 0:
            clauses.append(current)
            current = []
        elif abs(lit) > nvars:
            raise EncodingError(f"literal {lit} exceeds declared variable count {nvars}")
        else:
            current.append(lit)
    if current:
        raise EncodingError("last clause is not terminated by 0")
    if len(clauses) != nclauses:
        raise EncodingError(f"header declares {nclauses} clauses, found {len(clauses)}")
    return CnfInstance(
        tuple(f"x{i}" for i in range(1, nvars + 1)),
        tuple(
            (
                tuple(f"x{lit}" for lit in c if lit > 0),
                tuple(f"x{-lit}" for lit in c if lit < 0),
            )
            for c in clauses
        ),
    )
