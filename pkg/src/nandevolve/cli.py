"""Command-line surface: evolve one circuit, run experiment batches, query
the exhaustive oracle, or inspect a saved netlist.

Exit codes: 0 success, 2 evolution exhausted, 3 enumeration budget exceeded,
64 usage, 65 malformed data, 66 unreadable file.
"""

from __future__ import annotations

import argparse
import json
import sys

from .bench import (
    DEFAULT_GATES,
    default_experiment_spec,
    parse_spec,
    run_experiment,
    to_csv,
    to_svg,
    to_table,
    with_base_seed,
)
from .evolve import GaConfig, run_evolution
from .netlist import (
    ArityError,
    CapacityError,
    FormatError,
    StructureError,
    TruthTable,
    export_dot,
    export_json,
    parse_json,
    truth_table_of,
)
from .oracle import DEFAULT_BUDGET, minimal_gates

EXIT_OK = 0
EXIT_EXHAUSTED = 2
EXIT_BUDGET = 3
EXIT_USAGE = 64
EXIT_DATA = 65
EXIT_NOFILE = 66


class _Parser(argparse.ArgumentParser):
    """argparse parser whose usage failures exit with code 64."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


class _UsageError(Exception):
    """Flag combination errors detected after parsing."""


def _write(path: str, text: str):
    with open(path, "w") as fh:
        fh.write(text)


def _target_flag(parser):
    parser.add_argument(
        "--target",
        required=True,
        help="target function: and|or|nor|xor|xnor|nand, or tt:BITS with the "
        "row for assignment i at position i (input 0 = least significant bit "
        "of i; e.g. and is tt:0001)",
    )


def build_parser() -> _Parser:
    parser = _Parser(prog="nandevolve")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("evolve", help="evolve one circuit for a target")
    _target_flag(p)
    p.add_argument("--gates", type=int, help="NAND gates per genome")
    p.add_argument("--inputs", type=int, help="external inputs (must match the target's arity)")
    p.add_argument("--pop", type=int, default=10, help="population size (default 10)")
    p.add_argument("--mutation", type=float, default=0.10, help="per-gene mutation rate (default 0.10)")
    p.add_argument("--max-gen", type=int, default=100_000, help="generation cap (default 100000)")
    p.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
    p.add_argument("--trace", action="store_true",
                   help="emit per-generation CSV (generation,best_fitness,mean_fitness) on stderr")
    p.add_argument("--export-json", metavar="PATH", help="write the solution netlist JSON here instead of stdout")
    p.add_argument("--export-dot", metavar="PATH", help="write a Graphviz rendering of the solution")
    p.add_argument("--paper-defaults", action="store_true",
                   help="default --gates to the target's minimal gate count (named targets only)")
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("bench", help="run an experiment batch and emit CSV")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--spec", metavar="PATH", help="JSON experiment spec file")
    src.add_argument("--paper-defaults", action="store_true",
                     help="the five standard targets at their minimal gate counts")
    p.add_argument("--seed", type=int, default=None,
                   help="base seed (run i uses base+i); overrides spec-file seeds")
    p.add_argument("--runs", type=int, default=10, help="runs per target with --paper-defaults (default 10)")
    p.add_argument("--pop", type=int, default=10, help="population size with --paper-defaults (default 10)")
    p.add_argument("--mutation", type=float, default=0.10,
                   help="mutation rate with --paper-defaults (default 0.10)")
    p.add_argument("--max-gen", type=int, default=100_000,
                   help="generation cap with --paper-defaults (default 100000)")
    p.add_argument("--out", metavar="PATH", help="write CSV here (default: stdout)")
    p.add_argument("--plot", metavar="PATH", help="write an SVG bar chart of mean generations")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("oracle", help="find a target's minimal gate count by exhaustive search")
    _target_flag(p)
    p.add_argument("--max-gates", type=int, required=True, help="largest gate count to search")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                   help=f"max genomes to enumerate per gate count (default {DEFAULT_BUDGET})")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("show", help="print the truth table of a saved netlist")
    p.add_argument("--netlist", metavar="PATH", required=True, help="netlist JSON file")
    p.add_argument("--export-dot", metavar="PATH", help="write a Graphviz rendering")
    p.set_defaults(func=cmd_show)

    return parser


def cmd_evolve(args) -> int:
    label = args.target.lower()
    target = TruthTable.parse(label)
    gates = args.gates
    if gates is None:
        if args.paper_defaults and label in DEFAULT_GATES:
            gates = DEFAULT_GATES[label]
        else:
            raise _UsageError("--gates is required (or use --paper-defaults with a named target)")
    if args.inputs is not None and args.inputs != target.num_inputs:
        raise ArityError(
            f"--inputs {args.inputs} does not match the target's arity {target.num_inputs}"
        )
    config = GaConfig(
        num_gates=gates,
        num_inputs=target.num_inputs,
        population_size=args.pop,
        mutation_rate=args.mutation,
        max_generations=args.max_gen,
        seed=args.seed,
    )
    outcome = run_evolution(config, target, trace=args.trace)
    if args.trace:
        print("generation,best_fitness,mean_fitness", file=sys.stderr)
        for point in outcome.trace:
            print(f"{point.generation},{point.best_fitness},{point.mean_fitness}", file=sys.stderr)
    if not outcome.solved:
        print(
            f"exhausted at generation {outcome.generations}; "
            f"best fitness {outcome.best.fitness}"
        )
        return EXIT_EXHAUSTED
    print(f"solved at generation {outcome.generations}")
    text = export_json(outcome.genome)
    if args.export_json:
        _write(args.export_json, text + "\n")
    else:
        print(text)
    if args.export_dot:
        _write(args.export_dot, export_dot(outcome.genome))
    return EXIT_OK


def cmd_bench(args) -> int:
    if args.spec:
        with open(args.spec) as fh:
            spec = parse_spec(fh.read())
        if args.seed is not None:
            spec = with_base_seed(spec, args.seed)
    else:
        spec = default_experiment_spec(
            base_seed=args.seed if args.seed is not None else 0,
            runs=args.runs,
            population_size=args.pop,
            mutation_rate=args.mutation,
            max_generations=args.max_gen,
        )
    report = run_experiment(spec)
    csv_text = to_csv(report)
    if args.out:
        _write(args.out, csv_text)
        print(to_table(report), end="")
    else:
        print(csv_text, end="")
    if args.plot:
        _write(args.plot, to_svg(report))
    return EXIT_OK


def cmd_oracle(args) -> int:
    target = TruthTable.parse(args.target)
    result = minimal_gates(target, args.max_gates, args.budget)
    doc = {
        "target": target.rows,
        "minimal_gates": result.minimal_gates,
        "witness": json.loads(export_json(result.witness)) if result.witness else None,
        "raw_count": result.raw_count,
        "canonical_count": result.canonical_count,
    }
    print(json.dumps(doc, indent=2))
    return EXIT_OK


def cmd_show(args) -> int:
    with open(args.netlist) as fh:
        genome = parse_json(fh.read())
    print(truth_table_of(genome).rows)
    if args.export_dot:
        _write(args.export_dot, export_dot(genome))
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapacityError as exc:
        print(f"{parser.prog}: budget error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (FormatError, StructureError, ArityError, ValueError) as exc:
        print(f"{parser.prog}: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"{parser.prog}: cannot access file: {exc}", file=sys.stderr)
        return EXIT_NOFILE


if __name__ == "__main__":
    sys.exit(main())
