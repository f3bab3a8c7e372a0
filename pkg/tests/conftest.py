import random

import pytest

from slp.ground import GroundProgram, ground
from slp.syntax import Atom, parse


def gp(text: str) -> GroundProgram:
    return ground(parse(text))


def atoms_of(g: GroundProgram, m) -> frozenset[str]:
    return frozenset(str(a) for a in g.names(m))


def model_strings(g: GroundProgram, models) -> set[frozenset[str]]:
    return {atoms_of(g, m) for m in models}


def ids(g: GroundProgram, *names: str) -> frozenset[int]:
    return frozenset(g.index[Atom(n)] for n in names)


def random_program(rng: random.Random, max_atoms: int = 12, max_clauses: int = 25,
                   negation: bool = True) -> GroundProgram:
    """A random propositional program over atoms p0..p{n-1}.

    Every atom is kept in the table even if no clause mentions it.
    """
    n = rng.randint(1, max_atoms)
    names = [Atom(f"p{i}") for i in range(n)]
    clauses = []
    for _ in range(rng.randint(0, max_clauses)):
        head = rng.choice(names)
        pos = rng.sample(names, rng.randint(0, min(3, n)))
        neg = rng.sample(names, rng.randint(0, min(3, n))) if negation else []
        clauses.append((head, pos, neg))
    return GroundProgram.from_atoms(clauses, extra_atoms=names)


def random_corpus(count: int, seed: int, **kw) -> list[GroundProgram]:
    rng = random.Random(seed)
    return [random_program(rng, **kw) for _ in range(count)]


@pytest.fixture
def two_cycle():
    return gp("p :- not q.\nq :- not p.")
