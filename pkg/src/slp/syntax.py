"""Terms, atoms and clauses of function-free logic programs with negation.

Concrete syntax::

    % comment
    edge(a,b).
    in(X) :- vertex(X), not out(X).
    f :- in(X), in(Y), not X = Y, not edge(X,Y), not f.

Predicates and constants start with a lowercase letter (constants may also
start with a digit), variables with an uppercase letter. ``=`` is a built-in
that may only occur in bodies. Identifiers starting with ``__`` are reserved
for atoms generated by the encoders.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator

from slp.errors import ArityError, ParseError, SafetyError

CONST = "const"
VAR = "var"
EQ = "="
RESERVED_PREFIX = "__"

_CONST_RE = re.compile(r"[a-z0-9][A-Za-z0-9_]*\Z")
_VAR_RE = re.compile(r"[A-Z][A-Za-z0-9_]*\Z")
_PRED_RE = re.compile(r"([a-z][A-Za-z0-9_]*|__[A-Za-z0-9_]+)\Z")


@dataclass(frozen=True, order=True)
class Term:
    kind: str
    name: str

    @property
    def is_var(self) -> bool:
        return self.kind == VAR

    def __str__(self) -> str:
        return self.name


def const(name: str) -> Term:
    if not _CONST_RE.match(name):
        raise ValueError(f"not a constant: {name!r}")
    return Term(CONST, name)


def var(name: str) -> Term:
    if not _VAR_RE.match(name):
        raise ValueError(f"not a variable: {name!r}")
    return Term(VAR, name)


@dataclass(frozen=True)
class Atom:
    predicate: str
    args: tuple[Term, ...] = ()

    @property
    def arity(self) -> int:
        return len(self.args)

    @property
    def is_ground(self) -> bool:
        return not any(t.is_var for t in self.args)

    def variables(self) -> Iterator[str]:
        return (t.name for t in self.args if t.is_var)

    def key(self) -> tuple:
        """Sort key: predicate name, then argument names."""
        return (self.predicate, tuple(t.name for t in self.args))

    def __lt__(self, other: Atom) -> bool:
        return self.key() < other.key()

    def __str__(self) -> str:
        if self.predicate == EQ:
            return f"{self.args[0]} = {self.args[1]}"
        if not self.args:
            return self.predicate
        return f"{self.predicate}({','.join(t.name for t in self.args)})"


def atom(predicate: str, *args: str) -> Atom:
    """Build a ground atom from constant names, e.g. ``atom("edge", "a", "b")``."""
    return Atom(predicate, tuple(const(a) for a in args))


@dataclass(frozen=True)
class Literal:
    atom: Atom
    negated: bool = False

    def __str__(self) -> str:
        return f"not {self.atom}" if self.negated else str(self.atom)


@dataclass(frozen=True)
class Clause:
    head: Atom
    body: tuple[Literal, ...] = ()

    @property
    def is_fact(self) -> bool:
        return not self.body

    def variables(self) -> list[str]:
        """Variables in order of first occurrence."""
        seen: dict[str, None] = {}
        for a in (self.head, *(lit.atom for lit in self.body)):
            for v in a.variables():
                seen.setdefault(v)
        return list(seen)

    def __str__(self) -> str:
        if not self.body:
            return f"{self.head}."
        return f"{self.head} :- {', '.join(map(str, self.body))}."


@dataclass(frozen=True)
class Program:
    clauses: tuple[Clause, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "clauses", tuple(self.clauses))

    def __add__(self, other: Program) -> Program:
        return Program(self.clauses + other.clauses)

    def __iter__(self) -> Iterator[Clause]:
        return iter(self.clauses)

    def __len__(self) -> int:
        return len(self.clauses)

    def atoms(self) -> Iterator[Atom]:
        for c in self.clauses:
            yield c.head
            for lit in c.body:
                yield lit.atom

    def predicates(self) -> dict[str, int]:
        """Map every predicate (except ``=``) to its arity."""
        return {a.predicate: a.arity for a in self.atoms() if a.predicate != EQ}

    def constants(self) -> set[str]:
        return {t.name for a in self.atoms() for t in a.args if not t.is_var}

    def __str__(self) -> str:
        return print_program(self)


def check_clause(clause: Clause) -> None:
    """Raise SafetyError unless every variable is bound by a positive atom."""
    if clause.head.predicate == EQ:
        raise SafetyError(clause, "=")
    bound = {
        v
        for lit in clause.body
        if not lit.negated and lit.atom.predicate != EQ
        for v in lit.atom.variables()
    }
    for v in clause.variables():
        if v not in bound:
            raise SafetyError(clause, v)


def check_program(program: Program) -> None:
    arities: dict[str, tuple[int, Clause]] = {}
    for clause in program:
        check_clause(clause)
        for a in (clause.head, *(lit.atom for lit in clause.body)):
            if a.predicate == EQ:
                if a.arity != 2:
                    raise ArityError(f"'=' takes two arguments in: {clause}")
                continue
            seen = arities.setdefault(a.predicate, (a.arity, clause))
            if seen[0] != a.arity:
                raise ArityError(
                    f"predicate {a.predicate} used with arity {seen[0]} in "
                    f"'{seen[1]}' and arity {a.arity} in '{clause}'"
                )


def print_program(program: Program | Iterable[Clause]) -> str:
    clauses = program.clauses if isinstance(program, Program) else program
    return "".join(f"{c}\n" for c in clauses)


# --- parser -----------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"(?P<ws>[ \t\r\n]+)|(?P<comment>%[^\n]*)|(?P<if>:-)|(?P<ident>[A-Za-z0-9_]+)"
    r"|(?P<punct>[(),.=])"
)


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind not in ("ws", "comment"):
            tokens.append(_Token(kind, m.group(), line, pos - line_start + 1))
        for i, ch in enumerate(m.group()):
            if ch == "\n":
                line += 1
                line_start = pos + i + 1
        pos = m.end()
    tokens.append(_Token("eof", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text: str, allow_reserved: bool):
        self.tokens = _tokenize(text)
        self.i = 0
        self.allow_reserved = allow_reserved

    def peek(self, offset: int = 0) -> _Token:
        return self.tokens[min(self.i + offset, len(self.tokens) - 1)]

    def next(self) -> _Token:
        tok = self.peek()
        self.i += 1
        return tok

    def error(self, message: str, tok: _Token | None = None):
        tok = tok or self.peek()
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        raise ParseError(f"{message}, found {found}", tok.line, tok.col)

    def expect(self, text: str) -> _Token:
        if self.peek().text != text or self.peek().kind == "ident":
            self.error(f"expected {text!r}")
        return self.next()

    def program(self) -> Program:
        clauses = []
        while self.peek().kind != "eof":
            clauses.append(self.clause())
        return Program(tuple(clauses))

    def clause(self) -> Clause:
        start = self.peek()
        if start.text == "not":
            self.error("negated head")
        head = self.body_atom()
        if head.predicate == EQ:
            self.error("'=' in clause head", start)
        body = []
        if self.peek().kind == "if":
            self.next()
            body.append(self.literal())
            while self.peek().text == ",":
                self.next()
                body.append(self.literal())
        self.expect(".")
        return Clause(head, tuple(body))

    def literal(self) -> Literal:
        tok = self.peek()
        if tok.kind == "ident" and tok.text == "not" and self.peek(1).text not in (",", ".", "="):
            self.next()
            if self.peek().text == "(":
                self.next()
                a = self.body_atom()
                self.expect(")")
            else:
                a = self.body_atom()
            return Literal(a, True)
        return Literal(self.body_atom(), False)

    def body_atom(self) -> Atom:
        tok = self.peek()
        if tok.kind != "ident":
            self.error("expected an atom")
        if self.peek(1).text == "=":
            left = self.term()
            self.next()
            right = self.term()
            return Atom(EQ, (left, right))
        self.next()
        name = tok.text
        if not _PRED_RE.match(name):
            self.error("invalid predicate name", tok)
        if name.startswith(RESERVED_PREFIX) and not self.allow_reserved:
            self.error("reserved identifier", tok)
        args: list[Term] = []
        if self.peek().text == "(":
            self.next()
            args.append(self.term())
            while self.peek().text == ",":
                self.next()
                args.append(self.term())
            self.expect(")")
        return Atom(name, tuple(args))

    def term(self) -> Term:
        tok = self.next()
        if tok.kind != "ident":
            self.error("expected a term", tok)
        if self.peek().text == "(":
            self.error("function symbols are not supported")
        if _VAR_RE.match(tok.text):
            return Term(VAR, tok.text)
        if _CONST_RE.match(tok.text):
            return Term(CONST, tok.text)
        self.error("invalid term", tok)


def parse(text: str, *, allow_reserved: bool = False) -> Program:
    """Parse program text; checks arity consistency and clause safety.

    Reserved ``__`` identifiers are rejected unless ``allow_reserved`` is set
    (files written by the encoders contain them).
    """
    program = _Parser(text, allow_reserved).program()
    check_program(program)
    return program


def parse_atom(text: str) -> Atom:
    """Parse a single ground atom such as ``p(a,b)``."""
    p = _Parser(text, allow_reserved=True)
    a = p.body_atom()
    if p.peek().kind != "eof":
        p.error("trailing input")
    if a.predicate == EQ or not a.is_ground:
        raise ParseError(f"not a ground atom: {text!r}", 1, 1)
    return a


def parse_atoms(text: str) -> list[Atom]:
    """Parse a comma-separated list of ground atoms; empty text gives []."""
    p = _Parser(text, allow_reserved=True)
    atoms: list[Atom] = []
    while p.peek().kind != "eof":
        if atoms:
            p.expect(",")
        tok = p.peek()
        a = p.body_atom()
        if a.predicate == EQ or not a.is_ground:
            p.error("expected a ground atom", tok)
        atoms.append(a)
    return atoms
