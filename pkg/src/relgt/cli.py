"""Command-line front end: ``relgt <command> ...``.

Exit codes: 0 success, 1 a check failed (invalid graph, non-realization,
nonzero residual), 2 malformed input.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import corpus
from .action import Generator, ModuleVector, act, verify_axioms
from .classify import build_finite_dimensional, classify_window, format_signature, weyl_dimension
from .derived import (
    build_G_of_L,
    build_Gbar,
    down_edges,
    graph_difference,
    is_realization,
    maximal_chains,
    satisfies,
    sort_edges,
)
from .errors import MalformedInput, RelGTError
from .graph import TriGraph, format_vertex, validate_relation_graph
from .module import module_for, random_realization
from .tableau import Shift, Tableau


def _resolve(path: str) -> Path:
    p = Path(path)
    if p.exists():
        return p
    bundled = corpus.bundled_path(p.name)
    if bundled is None:
        raise MalformedInput(f"{path}: no such file (and no bundled example of that name)")
    return bundled


def _load_json(path: str):
    p = _resolve(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise MalformedInput(f"{path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None


def _load_graph(path: str) -> TriGraph:
    return TriGraph.from_json(_load_json(path))


def _load_tableau(path: str) -> Tableau:
    return Tableau.from_json(_load_json(path))


def _dump(obj) -> str:
    return json.dumps(obj, indent=2)


def _parse_lambda(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(","))
    except ValueError:
        raise MalformedInput(f"--lambda expects comma-separated integers, got {text!r}") from None


def _shift(args, n: int) -> Shift:
    return Shift.parse(n, args.z) if args.z else Shift.zero(n)


# -- commands -------------------------------------------------------------------


def cmd_validate_graph(args) -> int:
    g = _load_graph(args.graph_file)
    report = validate_relation_graph(g)
    if args.emit == "json":
        print(_dump(report.to_json()))
    elif args.emit == "dot":
        print(g.to_dot(), end="")
    else:
        print(report.render())
    return 0 if report.valid else 1


def cmd_realize(args) -> int:
    g, t = _load_graph(args.graph), _load_tableau(args.tableau)
    if g.n != t.n:
        raise MalformedInput(f"graph has n={g.n} but tableau has n={t.n}")
    sat, real = satisfies(t, g), is_realization(t, g)
    yn = lambda b: "yes" if b else "no"
    if args.emit == "json":
        print(_dump({"satisfies": sat, "realization": real}))
    else:
        print(f"satisfies: {yn(sat)}; realization: {yn(real)}")
    return 0 if real else 1


def cmd_derived(args) -> int:
    g, t = _load_graph(args.graph), _load_tableau(args.tableau)
    if g.n != t.n:
        raise MalformedInput(f"graph has n={g.n} but tableau has n={t.n}")
    gl, gbar = build_G_of_L(t), build_Gbar(g)
    reduced = graph_difference(gl, gbar)
    real = is_realization(t, g)
    sig = sort_edges(g.n, down_edges(reduced))
    if args.emit == "json":
        print(_dump({
            "G_L": gl.to_json(),
            "Gbar": gbar.to_json(),
            "reduced": reduced.to_json(),
            "realization": real,
            "signature": [[list(a), list(b)] for a, b in sig],
        }))
    elif args.emit == "dot":
        print(gl.to_dot("G_L", highlight=sig), end="")
        print(gbar.to_dot("Gbar"), end="")
    else:
        print(f"G(L):        {_arrows(gl)}")
        print(f"Gbar:        {_arrows(gbar)}")
        print(f"G(L) - Gbar: {_arrows(reduced)}")
        print(f"signature:   {{{format_signature(g.n, sig)}}}")
        if not real:
            print("warning: tableau is not a realization of the graph")
    return 0 if real else 1


def _arrows(g: TriGraph) -> str:
    return ", ".join(f"{format_vertex(a)}->{format_vertex(b)}" for a, b in g.sorted_arrows()) or "(none)"


def cmd_act(args) -> int:
    g, t = _load_graph(args.graph), _load_tableau(args.tableau)
    module = module_for(g, t)
    z = _shift(args, g.n)
    if not module.contains(z.z):
        print(f"T(L{'+z' if args.z else ''}) is not a realization of the graph")
        return 1
    v = ModuleVector.basis(t, z)
    for word in args.gen:
        v = act(Generator.parse(word).check(g.n), v, module)
    if args.emit == "json":
        print(_dump(v.to_json()))
    else:
        print(" then ".join(args.gen) + f" applied to T{z}:")
        print(v.render())
    return 0


def cmd_chains(args) -> int:
    g = _load_graph(args.graph)
    z = Shift.parse(g.n, args.z)
    out = {"G": maximal_chains(g, z, args.include_isolated)}
    if args.tableau:
        out["G(R)"] = maximal_chains(build_G_of_L(_load_tableau(args.tableau)), z, args.include_isolated)
    if args.emit == "json":
        print(_dump({k: [[list(v) for v in c] for c in cs] for k, cs in out.items()}))
    else:
        for name, cs in out.items():
            print(f"maximal chains of {name} for z = {z}:")
            for c in cs:
                print("  " + " -> ".join(format_vertex(v) for v in c))
    return 0


def cmd_classify(args) -> int:
    g, t = _load_graph(args.graph), _load_tableau(args.tableau)
    report = classify_window(g, t, args.radius, jobs=args.jobs)
    if args.emit == "json":
        print(_dump(report.to_json()))
    elif args.emit == "dot":
        print(report.to_dot(), end="")
    elif args.emit == "csv":
        print(report.to_csv(), end="")
    else:
        print(report.render())
    if args.out_dir:
        from .plotting import plot_lattice

        out = Path(args.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        (out / "signatures.csv").write_text(report.to_csv())
        (out / "lattice.json").write_text(_dump(report.to_json()) + "\n")
        (out / "lattice.dot").write_text(report.to_dot())
        plot_lattice(report, out / "lattice.png")
        print(f"wrote signatures.csv, lattice.json, lattice.dot, lattice.png to {out}", file=sys.stderr)
    return 0


def cmd_verify(args) -> int:
    if args.lam:
        window = build_finite_dimensional(_parse_lambda(args.lam))
        ctx = window.module
    else:
        if not args.graph:
            raise MalformedInput("verify needs --graph (with --tableau or --seed) or --lambda")
        g = _load_graph(args.graph)
        if args.tableau:
            t = _load_tableau(args.tableau)
        else:
            t = random_realization(g, random.Random(args.seed))
        ctx = module_for(g, t)
        window = ctx.window(args.radius, jobs=args.jobs)
    report = verify_axioms(ctx, window)
    if args.emit == "json":
        print(_dump(report.to_json()))
    else:
        print(report.render())
    return 0 if report.ok else 1


def cmd_findim(args) -> int:
    lam = _parse_lambda(args.lam)
    window = build_finite_dimensional(lam)
    dim = len(window)
    if args.emit == "json":
        data = {"lambda": list(lam), "dimension": dim, "weyl_dimension": weyl_dimension(lam)}
        if args.basis:
            data["basis"] = [t.to_json() for t in window.tableaux()]
        print(_dump(data))
    else:
        print(f"dimension {dim} (Weyl formula: {weyl_dimension(lam)})")
        if args.basis:
            for t in window.tableaux():
                print(t.pretty())
                print()
    return 0


# -- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="relgt", description="Relation Gelfand-Tsetlin modules of gl(n).")
    sub = p.add_subparsers(dest="command", required=True)

    def emit(sp, choices=("text", "json")):
        sp.add_argument("--emit", choices=choices, default="text")

    sp = sub.add_parser("validate-graph", help="check the relation-graph conditions")
    sp.add_argument("graph_file")
    emit(sp, ("text", "json", "dot"))
    sp.set_defaults(func=cmd_validate_graph)

    sp = sub.add_parser("realize", help="is a tableau a realization of a graph?")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--tableau", required=True)
    emit(sp)
    sp.set_defaults(func=cmd_realize)

    sp = sub.add_parser("derived", help="G(L), Gbar and the signature of a tableau")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--tableau", required=True)
    emit(sp, ("text", "json", "dot"))
    sp.set_defaults(func=cmd_derived)

    sp = sub.add_parser("act", help="apply generators to a basis tableau")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--tableau", required=True)
    sp.add_argument("--gen", required=True, action="append", help="E21, E12, E11, ...; repeat to compose")
    sp.add_argument("--z", help="shift of the basis tableau, e.g. '0,0,0|1,0|1'")
    emit(sp)
    sp.set_defaults(func=cmd_act)

    sp = sub.add_parser("chains", help="maximal chains of nonzero-shift vertices")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--z", required=True)
    sp.add_argument("--tableau", help="also list chains of G(R) for this tableau")
    sp.add_argument("--include-isolated", action="store_true", help="let arrow-free vertices form singleton chains")
    emit(sp)
    sp.set_defaults(func=cmd_chains)

    sp = sub.add_parser("classify", help="signature lattice of a window")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--tableau", required=True)
    sp.add_argument("--radius", type=int, default=4)
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--out-dir", help="also write CSV, JSON, DOT and a PNG Hasse diagram here")
    emit(sp, ("text", "json", "dot", "csv"))
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("verify", help="check the gl(n) relations on a window")
    sp.add_argument("--graph")
    sp.add_argument("--tableau")
    sp.add_argument("--lambda", dest="lam", help="check the finite-dimensional module instead")
    sp.add_argument("--radius", type=int, default=2)
    sp.add_argument("--seed", type=int, default=0, help="PRNG seed for a random realization when --tableau is omitted")
    sp.add_argument("--jobs", type=int, default=1)
    emit(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("findim", help="finite-dimensional module of highest weight lambda")
    sp.add_argument("--lambda", dest="lam", required=True)
    sp.add_argument("--basis", action="store_true")
    emit(sp)
    sp.set_defaults(func=cmd_findim)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except MalformedInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (RelGTError, ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
