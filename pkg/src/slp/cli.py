"""Command line front end: ``slp ground|solve|check|wfs|query|encode|oracle``."""

from __future__ import annotations

import argparse
import sys
from typing import Iterable, Sequence

from slp import __version__
from slp import encode as enc
from slp.errors import SlpError
from slp.ground import GroundProgram, ground, herbrand, simplify
from slp.oracle import DEFAULT_CAP, enumerate_models
from slp.semantics import is_model, is_stable, reduct_least_model, well_founded
from slp.solve import BRAVE, CAUTIOUS, NONE, WFS, Solver, SolverConfig, exists, query
from slp.syntax import Atom, parse, parse_atom, parse_atoms

EXIT_OK, EXIT_FALSE, EXIT_ERROR = 0, 1, 2


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise SlpError(f"cannot read {path}: {exc.strerror}") from None


def _load(path: str):
    # Reserved names are accepted so that files written by `slp encode` load.
    return parse(_read(path), allow_reserved=True)


def _atoms_text(atoms: Iterable[Atom]) -> str:
    return " ".join(str(a) for a in sorted(atoms, key=Atom.key))


def _format_clique(solution) -> str:
    return "{" + ",".join(sorted(solution)) + "}"


def _format_cycle(edges, start: str | None) -> str:
    succ = dict(edges)
    if not succ:
        return ""
    v = start if start in succ else min(succ)
    walk = [v]
    for _ in range(len(succ)):
        v = succ[v]
        walk.append(v)
    return " -> ".join(walk)


def _var_key(name: str):
    digits = name.lstrip("x")
    return (0, int(digits), name) if name.startswith("x") and digits.isdigit() else (1, 0, name)


def _format_valuation(true_vars, variables) -> str:
    return " ".join(v if v in true_vars else f"-{v}" for v in sorted(variables, key=_var_key))


def _decoder(kind: str, g: GroundProgram):
    """Return model-atoms -> display line for ``--decode``."""
    preds = {a.predicate for a in g.atoms}
    if kind == "clique":
        return lambda m: _format_clique(enc.decode_clique(m))
    if kind == "ham":
        def show(m):
            start = next((a.args[0].name for a in m if a.predicate == "initialvtx"), None)
            return _format_cycle(enc.decode_hamiltonian(m), start)
        return show
    if "var" in preds:
        return lambda m: _format_valuation(
            enc.decode_sat_uniform(m), [a.args[0].name for a in m if a.predicate == "var"]
        )
    return lambda m: _format_valuation(
        enc.decode_sat_direct(m),
        [a.args[0].name for a in m if a.predicate in ("in", "out") and a.arity == 1],
    )


def cmd_ground(args, out) -> int:
    g = ground(_load(args.file))
    if args.simplify:
        g = simplify(g)
    out.write(str(g.to_program(sort=True)))
    return EXIT_OK


def _report(models, g: GroundProgram, args, out, stats=None) -> int:
    count = 0
    decode = _decoder(args.decode, g) if getattr(args, "decode", None) else None
    lines = []
    for m in models:
        count += 1
        atoms = g.names(m)
        if decode:
            lines.append(decode(atoms))
        else:
            out.write(f"Answer {count}: {_atoms_text(atoms)}".rstrip() + "\n")
    for line in sorted(lines):
        out.write(line + "\n")
    out.write(f"SATISFIABLE ({count} models)\n" if count else "UNSATISFIABLE\n")
    if stats is not None:
        out.write(f"decisions: {stats.decisions}\n")
        out.write(f"backtracks: {stats.backtracks}\n")
        out.write(f"propagations: {stats.propagations}\n")
    return EXIT_OK if count else EXIT_FALSE


def cmd_solve(args, out) -> int:
    g = simplify(ground(_load(args.file)))
    limit = None if args.all else args.models
    if limit is not None and limit < 1:
        raise SlpError("--models must be at least 1")
    config = SolverConfig(max_models=limit, propagation=NONE if args.no_propagation else WFS)
    solver = Solver(g, config)
    return _report(solver.models(), g, args, out, solver.stats if args.stats else None)


def cmd_oracle(args, out) -> int:
    g = ground(_load(args.file))
    return _report(enumerate_models(g, args.cap), g, args, out)


def cmd_check(args, out) -> int:
    g = ground(_load(args.file))
    model = parse_atoms(args.model)
    unknown = [a for a in model if a not in g.index]
    if unknown:
        raise SlpError(f"not in the Herbrand base: {', '.join(map(str, unknown))}")
    m = g.atom_set(model)
    if is_stable(g, m):
        verdict = "stable"
    elif is_model(g, m):
        verdict = "model-but-not-stable"
    else:
        verdict = "not-a-model"
    out.write(verdict + "\n")
    out.write(f"witness: {_atoms_text(g.names(reduct_least_model(g, m)))}".rstrip() + "\n")
    return EXIT_OK if verdict == "stable" else EXIT_FALSE


def cmd_wfs(args, out) -> int:
    g = ground(_load(args.file))
    w = well_founded(g)
    for label, part in (("true", w.true_atoms), ("false", w.false_atoms), ("unknown", w.unknown(g))):
        out.write(f"{label}: {_atoms_text(g.names(part))}".rstrip() + "\n")
    return EXIT_OK


def cmd_query(args, out) -> int:
    program = _load(args.file)
    target = parse_atom(args.atom)
    if target not in herbrand(program).base:
        raise SlpError(f"not in the Herbrand base: {target}")
    g = simplify(ground(program))
    if target in g.index:
        answer = query(g, target, args.mode)
    else:
        # Atoms dropped by simplification are false in every stable model.
        answer = args.mode == CAUTIOUS and not exists(g)
    out.write("true\n" if answer else "false\n")
    return EXIT_OK if answer else EXIT_FALSE


def cmd_encode(args, out) -> int:
    text = _read(args.input)
    if args.problem == "clique":
        program = enc.encode_clique(enc.parse_graph(text, directed=False))[0]
    elif args.problem == "ham":
        program = enc.encode_hamiltonian(enc.parse_graph(text, directed=True))[0]
    elif args.direct:
        program = enc.encode_sat_direct(enc.parse_dimacs(text))[0]
    else:
        program = enc.encode_sat_uniform(enc.parse_dimacs(text))[0]
    body = str(program)
    if args.output:
        try:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(body)
        except OSError as exc:
            raise SlpError(f"cannot write {args.output}: {exc.strerror}") from None
    else:
        out.write(body)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="slp", description="Stable model engine.")
    parser.add_argument("--version", action="version", version=f"slp {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ground", help="print the ground program")
    p.add_argument("file")
    p.add_argument("--simplify", action="store_true")
    p.set_defaults(func=cmd_ground)

    p = sub.add_parser("solve", help="enumerate stable models")
    p.add_argument("file")
    p.add_argument("--models", type=int, default=1, metavar="N")
    p.add_argument("--all", action="store_true")
    p.add_argument("--no-propagation", action="store_true")
    p.add_argument("--stats", action="store_true")
    p.add_argument("--decode", choices=["clique", "ham", "sat"])
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("check", help="classify a candidate model")
    p.add_argument("file")
    p.add_argument("--model", required=True)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("wfs", help="print the well-founded model")
    p.add_argument("file")
    p.set_defaults(func=cmd_wfs)

    p = sub.add_parser("query", help="brave or cautious membership")
    p.add_argument("file")
    p.add_argument("--atom", required=True)
    p.add_argument("--mode", choices=[BRAVE, CAUTIOUS], required=True)
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("encode", help="write an encoding of a problem instance")
    p.add_argument("problem", choices=["clique", "ham", "sat"])
    p.add_argument("input")
    p.add_argument("-o", "--output")
    p.add_argument("--direct", action="store_true", help="propositional SAT encoding")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("oracle", help="enumerate stable models by brute force")
    p.add_argument("file")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.add_argument("--decode", choices=["clique", "ham", "sat"])
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except SlpError as exc:
        err.write(f"slp: error: {exc}\n")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
