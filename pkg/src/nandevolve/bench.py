"""Experiment harness: batches of seeded evolution runs with aggregated
generation statistics, distinct-solution tallies, and CSV/SVG/text output.

Per-run seeds derive additively from each entry's base seed (base + run
index), so outcomes are independent of entry order and execution order,
and repeated invocations produce byte-identical files.
"""

from __future__ import annotations

import csv
import io
import json
import statistics
from dataclasses import dataclass, replace

from .evolve import GaConfig, run_evolution
from .netlist import FormatError, NandGenome, TruthTable, canonical_key

# Minimal NAND-gate counts per two-input target, used by the default
# experiment (and / or / nor / xor / xnor at 2/3/4/4/5 gates).
DEFAULT_GATES = {"and": 2, "or": 3, "nor": 4, "xor": 4, "xnor": 5, "nand": 1}

DEFAULT_TARGET_ORDER = ("and", "or", "nor", "xor", "xnor")

CSV_COLUMNS = [
    "kind", "target", "num_gates", "population_size", "mutation_rate",
    "seed", "run_index", "solved", "generations", "distinct_key",
    "mean", "median", "stddev", "min", "max", "solve_count", "exhausted_count",
]


@dataclass(frozen=True)
class ExperimentEntry:
    """One batch: `runs` seeded evolutions of the same target and config."""

    label: str
    target: TruthTable
    num_gates: int
    population_size: int = 10
    mutation_rate: float = 0.10
    runs: int = 10
    base_seed: int = 0
    max_generations: int = 100_000

    def __post_init__(self):
        if self.runs < 1:
            raise ValueError("runs must be >= 1")

    def config_for_run(self, run_index: int) -> GaConfig:
        return GaConfig(
            num_gates=self.num_gates,
            num_inputs=self.target.num_inputs,
            population_size=self.population_size,
            mutation_rate=self.mutation_rate,
            max_generations=self.max_generations,
            seed=self.base_seed + run_index,
        )


@dataclass(frozen=True)
class ExperimentSpec:
    entries: tuple[ExperimentEntry, ...]


@dataclass(frozen=True)
class RunRecord:
    run_index: int
    seed: int
    solved: bool
    generations: int
    genome: NandGenome | None
    key: bytes | None


@dataclass(frozen=True)
class EntryReport:
    """All run rows of one entry plus aggregates over the solved runs."""

    entry: ExperimentEntry
    runs: tuple[RunRecord, ...]
    solve_count: int
    exhausted_count: int
    mean: float | None
    median: float | None
    stddev: float | None
    min: int | None
    max: int | None
    distinct_solution_count: int


@dataclass(frozen=True)
class ExperimentReport:
    entries: tuple[EntryReport, ...]


def default_experiment_spec(base_seed: int = 0, runs: int = 10, population_size: int = 10,
                       mutation_rate: float = 0.10,
                       max_generations: int = 100_000) -> ExperimentSpec:
    """The default five-target experiment: each two-input function at its
    minimal gate count, population 10, 10 runs."""
    entries = tuple(
        ExperimentEntry(
            label=name,
            target=TruthTable.named(name),
            num_gates=DEFAULT_GATES[name],
            population_size=population_size,
            mutation_rate=mutation_rate,
            runs=runs,
            base_seed=base_seed,
            max_generations=max_generations,
        )
        for name in DEFAULT_TARGET_ORDER
    )
    return ExperimentSpec(entries)


def run_entry(entry: ExperimentEntry) -> EntryReport:
    records = []
    for i in range(entry.runs):
        try:
            config = entry.config_for_run(i)
        except ValueError as exc:
            raise ValueError(f"entry {entry.label!r}: {exc}") from None
        outcome = run_evolution(config, entry.target)
        records.append(
            RunRecord(
                run_index=i,
                seed=entry.base_seed + i,
                solved=outcome.solved,
                generations=outcome.generations,
                genome=outcome.genome,
                key=canonical_key(outcome.genome) if outcome.solved else None,
            )
        )
    solved_gens = [r.generations for r in records if r.solved]
    keys = {r.key for r in records if r.key is not None}
    return EntryReport(
        entry=entry,
        runs=tuple(records),
        solve_count=len(solved_gens),
        exhausted_count=len(records) - len(solved_gens),
        mean=statistics.mean(solved_gens) if solved_gens else None,
        median=statistics.median(solved_gens) if solved_gens else None,
        stddev=statistics.stdev(solved_gens) if len(solved_gens) >= 2 else None,
        min=min(solved_gens) if solved_gens else None,
        max=max(solved_gens) if solved_gens else None,
        distinct_solution_count=len(keys),
    )


def run_experiment(spec: ExperimentSpec) -> ExperimentReport:
    """Execute every entry; deterministic for a given spec."""
    return ExperimentReport(tuple(run_entry(entry) for entry in spec.entries))


def _num(value) -> str:
    return "" if value is None else str(value)


def to_csv(report: ExperimentReport) -> str:
    """One row per run plus one summary row per entry; header mandatory.

    Summary-only columns are empty on run rows and vice versa; lines end
    with a single newline.
    """
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for er in report.entries:
        e = er.entry
        shared = [e.label, str(e.num_gates), str(e.population_size), str(e.mutation_rate)]
        for r in er.runs:
            writer.writerow(
                ["run", *shared, str(r.seed), str(r.run_index),
                 "1" if r.solved else "0", str(r.generations),
                 r.key.hex() if r.key is not None else "",
                 "", "", "", "", "", "", ""]
            )
        writer.writerow(
            ["summary", *shared, "", "", "", "", "",
             _num(er.mean), _num(er.median), _num(er.stddev),
             _num(er.min), _num(er.max), str(er.solve_count), str(er.exhausted_count)]
        )
    return buf.getvalue()


def to_table(report: ExperimentReport) -> str:
    """Plain aligned summary table, one line per entry."""
    header = (
        f"{'target':<10} {'gates':>5} {'pop':>4} {'runs':>4} {'solved':>6} "
        f"{'mean':>9} {'median':>9} {'stddev':>9} {'min':>6} {'max':>6} {'distinct':>8}"
    )
    lines = [header, "-" * len(header)]
    for er in report.entries:
        e = er.entry

        def f(v, width=9):
            return f"{v:>{width}.1f}" if v is not None else " " * (width - 1) + "-"

        lines.append(
            f"{e.label:<10} {e.num_gates:>5} {e.population_size:>4} {e.runs:>4} "
            f"{er.solve_count:>6} {f(er.mean)} {f(er.median)} {f(er.stddev)} "
            f"{_num(er.min) or '-':>6} {_num(er.max) or '-':>6} {er.distinct_solution_count:>8}"
        )
    return "\n".join(lines) + "\n"


def to_svg(report: ExperimentReport) -> str:
    """Bar chart of mean generations per entry with stddev whiskers.

    Hand-rolled SVG so output bytes depend only on the report.
    """
    bar_w, gap, left, bottom, height = 60, 30, 60, 40, 260
    plot_h = height - bottom - 20
    entries = report.entries
    width = left + len(entries) * (bar_w + gap) + gap
    peak = max(
        ((er.mean or 0.0) + (er.stddev or 0.0) for er in entries), default=0.0
    )
    scale = (plot_h / peak) if peak > 0 else 0.0
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<line x1="{left}" y1="20" x2="{left}" y2="{height - bottom}" stroke="black"/>',
        f'<line x1="{left}" y1="{height - bottom}" x2="{width - gap}" y2="{height - bottom}" stroke="black"/>',
        f'<text x="12" y="16" font-size="11">mean generations</text>',
    ]
    for i, er in enumerate(entries):
        x = left + gap + i * (bar_w + gap)
        mean = er.mean or 0.0
        h = mean * scale
        y = height - bottom - h
        parts.append(
            f'<rect x="{x}" y="{y:.2f}" width="{bar_w}" height="{h:.2f}" '
            f'fill="steelblue" stroke="black"/>'
        )
        if er.stddev is not None:
            cx = x + bar_w / 2
            y1 = height - bottom - (mean + er.stddev) * scale
            y0 = height - bottom - max(mean - er.stddev, 0.0) * scale
            parts.append(
                f'<line x1="{cx:.2f}" y1="{y1:.2f}" x2="{cx:.2f}" y2="{y0:.2f}" stroke="black"/>'
            )
        parts.append(
            f'<text x="{x + bar_w / 2:.2f}" y="{height - bottom + 16}" '
            f'font-size="11" text-anchor="middle">{er.entry.label}</text>'
        )
        parts.append(
            f'<text x="{x + bar_w / 2:.2f}" y="{y - 4:.2f}" '
            f'font-size="10" text-anchor="middle">{mean:.1f}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _entry_from_doc(doc, where: str) -> ExperimentEntry:
    if not isinstance(doc, dict):
        raise FormatError(f"{where}: expected an object")
    if "target" not in doc:
        raise FormatError(f"{where}.target: required")
    if not isinstance(doc["target"], str):
        raise FormatError(f"{where}.target: expected a string")
    label = doc["target"].lower()
    target = TruthTable.parse(label)
    if "num_gates" not in doc:
        raise FormatError(f"{where}.num_gates: required")

    def _int(name, default, minimum):
        value = doc.get(name, default)
        if not isinstance(value, int) or isinstance(value, bool) or value < minimum:
            raise FormatError(f"{where}.{name}: expected an integer >= {minimum}, got {value!r}")
        return value

    rate = doc.get("mutation_rate", 0.10)
    if not isinstance(rate, (int, float)) or isinstance(rate, bool) or not 0.0 <= rate <= 1.0:
        raise FormatError(f"{where}.mutation_rate: expected a number in [0, 1], got {rate!r}")
    return ExperimentEntry(
        label=label,
        target=target,
        num_gates=_int("num_gates", None, 1),
        population_size=_int("population_size", 10, 2),
        mutation_rate=float(rate),
        runs=_int("runs", 10, 1),
        base_seed=_int("base_seed", 0, 0),
        max_generations=_int("max_generations", 100_000, 0),
    )


def parse_spec(text: str) -> ExperimentSpec:
    """Parse the JSON experiment-spec file:

        {"entries": [{"target": "and" | "tt:BITS", "num_gates": G,
                      "population_size": P, "mutation_rate": R,
                      "runs": N, "base_seed": S, "max_generations": M}, ...]}

    num_gates is required per entry; the rest default to the standard
    protocol (population 10, mutation 0.10, 10 runs, base_seed 0).
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict) or "entries" not in doc:
        raise FormatError("top level: expected an object with an 'entries' array")
    if not isinstance(doc["entries"], list):
        raise FormatError("entries: expected an array")
    entries = tuple(
        _entry_from_doc(entry, f"entries[{i}]") for i, entry in enumerate(doc["entries"])
    )
    return ExperimentSpec(entries)


def with_base_seed(spec: ExperimentSpec, base_seed: int) -> ExperimentSpec:
    """Same spec with every entry's base_seed replaced."""
    return ExperimentSpec(tuple(replace(e, base_seed=base_seed) for e in spec.entries))
