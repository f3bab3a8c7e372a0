import pytest
from hypothesis import given, strategies as st

from slp.encode import HAM_LOGIC
from slp.errors import ArityError, ParseError, SafetyError
from slp.syntax import (
    EQ,
    Atom,
    Clause,
    Literal,
    Program,
    Term,
    atom,
    const,
    parse,
    parse_atom,
    parse_atoms,
    print_program,
    var,
)


def test_parse_even_loop():
    p = parse("p :- not q.\nq :- not p.")
    assert len(p) == 2
    for clause in p:
        assert len(clause.body) == 1 and clause.body[0].negated
    assert p.clauses[0].head == Atom("p")
    assert p.clauses[0].body[0].atom == Atom("q")


def test_parse_transitive_closure():
    p = parse("tc(X,Y) :- rel(X,Y).\ntc(X,Y) :- tc(X,Z), rel(Z,Y).")
    assert len(p) == 2
    second = p.clauses[1]
    assert second.head == Atom("tc", (var("X"), var("Y")))
    assert [lit.atom.predicate for lit in second.body] == ["tc", "rel"]
    assert not any(lit.negated for lit in second.body)


def test_unsafe_negated_variable():
    with pytest.raises(SafetyError) as exc:
        parse("p(X) :- not q(X).")
    assert exc.value.variable == "X"
    assert exc.value.clause.head.predicate == "p"


@pytest.mark.parametrize(
    "text, variable",
    [
        ("p(X) :- q.", "X"),
        ("p :- q(X), not r(Y).", "Y"),
        ("p :- q(X), X = Y.", "Y"),
        ("p(X) :- X = a.", "X"),
    ],
)
def test_safety_violations(text, variable):
    with pytest.raises(SafetyError) as exc:
        parse(text)
    assert exc.value.variable == variable


def test_equality_literals():
    p = parse("f :- in(X), in(Y), not X = Y, not f.")
    eq = p.clauses[0].body[2]
    assert eq.negated and eq.atom.predicate == EQ
    assert eq.atom.args == (var("X"), var("Y"))
    # parenthesised negation is accepted too
    assert parse("f :- in(X), in(Y), not(X = Y), not(f).") == p


def test_equality_not_allowed_in_head():
    with pytest.raises(ParseError):
        parse("X = Y :- p(X), p(Y).")


def test_facts_and_comments():
    p = parse("% graph\nvertex(a). % first\nedge(a,\n  b).\n")
    assert p.clauses == (Clause(atom("vertex", "a")), Clause(atom("edge", "a", "b")))
    assert all(c.is_fact for c in p)


def test_syntax_error_location():
    with pytest.raises(ParseError) as exc:
        parse("p :- q.\nr :- s t.")
    assert (exc.value.line, exc.value.column) == (2, 8)


def test_missing_terminator():
    with pytest.raises(ParseError) as exc:
        parse("p :- q")
    assert exc.value.line == 1


def test_nested_terms_rejected():
    with pytest.raises(ParseError, match="function symbols"):
        parse("p(f(a)).")
    with pytest.raises(ParseError, match="function symbols"):
        parse("p(X) :- q(X, g(X)).")


def test_arity_conflict():
    with pytest.raises(ArityError):
        parse("p(a).\np(a,b).")
    with pytest.raises(ArityError):
        parse("q :- p.\nr :- p(a).")


def test_reserved_prefix():
    with pytest.raises(ParseError, match="reserved"):
        parse("__f :- not __f.")
    assert len(parse("__f :- not __f.", allow_reserved=True)) == 1


def test_variable_as_atom_rejected():
    with pytest.raises(ParseError):
        parse("p :- X.")


def test_print_fact():
    assert print_program(Program((Clause(atom("vertex", "a")),))) == "vertex(a).\n"


def test_print_zero_arity_no_parens():
    p = Program((Clause(Atom("p"), (Literal(Atom("q"), True),)),))
    assert print_program(p) == "p :- not q.\n"


def test_print_equality():
    text = "f :- in(X), in(Y), not X = Y, not f.\n"
    assert print_program(parse(text)) == text


def test_round_trip_ham_program():
    printed = print_program(HAM_LOGIC)
    assert parse(printed, allow_reserved=True) == HAM_LOGIC
    assert print_program(parse(printed, allow_reserved=True)) == printed


def test_parse_atoms():
    assert parse_atoms("p(a), q(b,c), r") == [atom("p", "a"), atom("q", "b", "c"), Atom("r")]
    assert parse_atoms("") == []
    assert parse_atom("edge(a,b)") == atom("edge", "a", "b")
    with pytest.raises(ParseError):
        parse_atom("p(X)")


def test_term_constructors():
    assert const("a1").kind == "const" and var("X1").is_var
    with pytest.raises(ValueError):
        const("A")
    with pytest.raises(ValueError):
        var("x")
    assert Term("const", "b") == const("b")


# --- round trip property ------------------------------------------------------

consts = st.sampled_from(["a", "b", "c1", "0", "z_9"])
variables = st.sampled_from(["X", "Y", "Z1"])
preds = st.sampled_from([("p", 0), ("q", 1), ("r", 2), ("edge", 2)])


@st.composite
def atoms(draw, terms):
    name, arity = draw(preds)
    return Atom(name, tuple(draw(st.lists(terms, min_size=arity, max_size=arity))))


@st.composite
def clauses(draw):
    const_terms = consts.map(const)
    var_terms = variables.map(var)
    positive = draw(st.lists(atoms(st.one_of(const_terms, var_terms)), max_size=3))
    bound = sorted({v for a in positive for v in a.variables()})
    bound_terms = st.sampled_from(bound).map(var) if bound else const_terms
    safe_terms = st.one_of(const_terms, bound_terms)
    head = draw(atoms(safe_terms))
    negative = draw(st.lists(atoms(safe_terms), max_size=2))
    body = [Literal(a) for a in positive] + [Literal(a, True) for a in negative]
    if len(bound) >= 2 and draw(st.booleans()):
        body.append(Literal(Atom(EQ, (var(bound[0]), var(bound[1]))), draw(st.booleans())))
    body = draw(st.permutations(body))
    return Clause(head, tuple(body))


@given(st.lists(clauses(), max_size=6))
def test_print_parse_round_trip(cs):
    program = Program(tuple(cs))
    assert parse(print_program(program)) == program
