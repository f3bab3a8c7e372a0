import pytest

from slp.encode import GraphInstance, encode_clique, encode_hamiltonian
from slp.errors import UnknownAtomError
from slp.ground import GroundProgram, ground, simplify
from slp.oracle import clique_solutions, enumerate_models
from slp.semantics import is_stable, well_founded
from slp.solve import Solver, SolverConfig, exists, project, query, solve
from slp.syntax import Atom, atom

from conftest import gp, model_strings, random_corpus

K3 = GraphInstance(("a", "b", "c"), (("a", "b"), ("b", "c"), ("a", "c")))
C3 = GraphInstance(("a", "b", "c"), (("a", "b"), ("b", "c"), ("c", "a")), True, "a")


def test_even_loop_two_models(two_cycle):
    assert model_strings(two_cycle, solve(two_cycle)) == {frozenset({"p"}), frozenset({"q"})}


def test_odd_loop_no_models():
    assert list(solve(gp("p :- not p."))) == []


def test_definite_single_model():
    g = gp("p.\nq :- p.")
    assert model_strings(g, solve(g)) == {frozenset({"p", "q"})}


def test_exists():
    assert not exists(gp("p :- not p."))
    assert exists(gp("p :- not q.\nq :- not p."))
    assert exists(GroundProgram((), ()))
    assert list(solve(GroundProgram((), ()))) == [frozenset()]


def test_max_models():
    g = gp("a :- not b.\nb :- not a.\nc :- not d.\nd :- not c.")
    assert len(list(solve(g))) == 4
    assert len(list(solve(g, SolverConfig(max_models=3)))) == 3
    with pytest.raises(ValueError):
        SolverConfig(max_models=0)


def test_query_modes(two_cycle):
    assert query(two_cycle, Atom("p"), "brave")
    assert not query(two_cycle, Atom("p"), "cautious")
    g = gp("p.")
    assert query(g, Atom("p"), "cautious")
    g = gp("p :- not p.")
    assert query(g, Atom("p"), "cautious")  # vacuous: no stable models
    assert not query(g, Atom("p"), "brave")


def test_query_unknown_atom(two_cycle):
    with pytest.raises(UnknownAtomError):
        query(two_cycle, Atom("zz"), "brave")
    with pytest.raises(ValueError):
        query(two_cycle, Atom("p"), "sometimes")


def test_project_clique_k3():
    g = simplify(ground(encode_clique(K3)[0]))
    family = project(g, solve(g), "in")
    expected = {frozenset((v,) for v in s) for s in clique_solutions("abc", K3.edges)}
    assert len(family) == 8
    assert set(family) == expected


def test_project_ham_three_cycle():
    g = simplify(ground(encode_hamiltonian(C3)[0]))
    assert project(g, solve(g), "in") == [frozenset({("a", "b"), ("b", "c"), ("c", "a")})]


def test_project_empty_extension(two_cycle):
    g = gp("p :- not q.\nq :- not p.\nr(a) :- p, not p.")
    assert project(g, solve(g), "r") == [frozenset(), frozenset()]
    with pytest.raises(UnknownAtomError):
        project(g, solve(g), "nope")


def test_models_are_stable_and_deterministic():
    for g in random_corpus(60, seed=5):
        first = list(solve(g))
        assert first == list(solve(g))
        assert all(is_stable(g, m) for m in first)
        assert len(set(first)) == len(first)


@pytest.mark.parametrize("heuristic", ["occurrence-count", "lexicographic"])
@pytest.mark.parametrize("first", ["in", "out"])
@pytest.mark.parametrize("propagation", ["wfs", "none"])
def test_matches_oracle(heuristic, first, propagation):
    cfg = SolverConfig(branch_heuristic=heuristic, first_branch=first, propagation=propagation)
    for g in random_corpus(80, seed=17, max_atoms=10, max_clauses=20):
        assert set(solve(g, cfg)) == set(enumerate_models(g))


def test_propagation_prunes():
    for g in random_corpus(80, seed=23):
        with_wfs, without = Solver(g), Solver(g, SolverConfig(propagation="none"))
        assert set(with_wfs.models()) == set(without.models())
        assert with_wfs.stats.decisions <= without.stats.decisions


def test_propagate_at_root_matches_well_founded():
    # Conditioned propagation is at least as strong as the well-founded model.
    for g in random_corpus(100, seed=29):
        w = well_founded(g)
        root = Solver(g).propagate(frozenset(), frozenset())
        if root is None:
            assert not enumerate_models(g)
            continue
        assert w.true_atoms <= root.true_atoms
        assert w.false_atoms <= root.false_atoms


def test_statistics_counted():
    g = gp("a :- not b.\nb :- not a.")
    s = Solver(g)
    assert len(list(s.models())) == 2
    assert s.stats.decisions == 1 and s.stats.propagations == 3


def test_ham_first_model_uses_every_vertex():
    g = simplify(ground(encode_hamiltonian(C3)[0]))
    (m,) = list(solve(g))
    reached = {a for a in g.names(m) if a.predicate == "reached"}
    assert reached == {atom("reached", v) for v in "abc"}
