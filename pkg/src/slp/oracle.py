"""Exhaustive ground truth for cross-checking the solver and the encoders.

Only ``is_stable`` is shared with the engine; everything else here walks the
raw search space directly.
"""

from __future__ import annotations

import itertools
from typing import Iterable

from slp.errors import TooLargeError
from slp.ground import AtomSet, GroundProgram
from slp.semantics import is_stable

DEFAULT_CAP = 20
SOLUTION_CAP = 8


def enumerate_models(g: GroundProgram, cap: int = DEFAULT_CAP) -> list[AtomSet]:
    """Every stable model of ``g``, found by testing all 2^n atom subsets."""
    n = len(g.atoms)
    if n > cap:
        raise TooLargeError(f"{n} atoms exceeds oracle cap {cap}")
    found = []
    for mask in range(1 << n):
        m = frozenset(i for i in range(n) if mask >> i & 1)
        if is_stable(g, m):
            found.append(m)
    found.sort(key=sorted)
    return found


enumerate = enumerate_models  # noqa: A001 - mirrors the operation name


def clique_solutions(vertices: Iterable[str], edges: Iterable[tuple[str, str]]):
    vertices = sorted(set(vertices))
    if len(vertices) > SOLUTION_CAP:
        raise TooLargeError(f"{len(vertices)} vertices exceeds cap {SOLUTION_CAP}")
    adjacent = {frozenset(e) for e in edges}
    result = set()
    for r in range(len(vertices) + 1):
        for subset in itertools.combinations(vertices, r):
            if all(frozenset(p) in adjacent for p in itertools.combinations(subset, 2)):
                result.add(frozenset(subset))
    return result


def ham_solutions(vertices: Iterable[str], edges: Iterable[tuple[str, str]]):
    """Edge sets forming one directed cycle through every vertex."""
    vertices = sorted(set(vertices))
    edges = sorted(set(edges))
    if len(vertices) > SOLUTION_CAP:
        raise TooLargeError(f"{len(vertices)} vertices exceeds cap {SOLUTION_CAP}")
    if not vertices:
        return {frozenset()}
    result = set()
    # A hamiltonian cycle has exactly |V| edges.
    for chosen in itertools.combinations(edges, len(vertices)):
        succ = dict(chosen)
        if len(succ) != len(vertices) or set(succ.values()) != set(vertices):
            continue
        start = vertices[0]
        v, steps = succ.get(start), 1
        while v is not None and v != start and steps <= len(vertices):
            v, steps = succ.get(v), steps + 1
        if v == start and steps == len(vertices):
            result.add(frozenset(chosen))
    return result


def sat_solutions(variables: Iterable[str], clauses: Iterable[tuple[Iterable[str], Iterable[str]]]):
    """Satisfying valuations, each given as its set of true variables."""
    variables = sorted(set(variables))
    clauses = [(set(pos), set(neg)) for pos, neg in clauses]
    if len(variables) > SOLUTION_CAP:
        raise TooLargeError(f"{len(variables)} variables exceeds cap {SOLUTION_CAP}")
    result = set()
    for bits in itertools.product((False, True), repeat=len(variables)):
        true = {v for v, b in zip(variables, bits) if b}
        if all(pos & true or neg - true for pos, neg in clauses):
            result.add(frozenset(true))
    return result


def brute_solutions(problem: str, instance) -> set:
    """Solution set of a GraphInstance (clique/ham) or CnfInstance (sat)."""
    if problem == "clique":
        return clique_solutions(instance.vertices, instance.edges)
    if problem == "ham":
        return ham_solutions(instance.vertices, instance.edges)
    if problem == "sat":
        return sat_solutions(instance.variables, instance.clauses)
    raise ValueError(f"unknown problem {problem!r}")
