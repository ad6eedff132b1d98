"""Exhaustive ground truth over the feed-forward genome space.

Walks every valid genome at a given gate count (lexicographic gene order,
externals before gate outputs) to find minimal realizations of a target,
count its solutions, and independently verify GA results.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

from .netlist import (
    CapacityError,
    InputSource,
    NandGenome,
    TruthTable,
    canonical_key,
    input_masks,
)

DEFAULT_BUDGET = 100_000_000


def genome_count(num_inputs: int, num_gates: int) -> int:
    """Closed-form size of the genome space: prod_i (n+i)^2."""
    count = 1
    for i in range(num_gates):
        count *= (num_inputs + i) ** 2
    return count


def _check_budget(num_inputs: int, num_gates: int, budget: int):
    count = genome_count(num_inputs, num_gates)
    if count > budget:
        raise CapacityError(
            f"{count} genomes at {num_gates} gates exceeds the budget of {budget}"
        )


def _sources(num_inputs: int, limit: int) -> list[InputSource]:
    """Allele table: ids 0..n-1 are externals, n.. are gate outputs."""
    return [
        InputSource.external(i) if i < num_inputs else InputSource.gate(i - num_inputs)
        for i in range(limit)
    ]


def _genome_from_ids(num_inputs: int, ids, sources) -> NandGenome:
    gates = tuple(
        (sources[ids[2 * i]], sources[ids[2 * i + 1]]) for i in range(len(ids) // 2)
    )
    return NandGenome(num_inputs, gates)


def enumerate_genomes(num_inputs: int, num_gates: int,
                      budget: int = DEFAULT_BUDGET) -> Iterator[NandGenome]:
    """Stream every valid genome exactly once, in lexicographic gene order.

    Refuses at call time (CapacityError) when the space exceeds the budget;
    never truncates silently.
    """
    _check_budget(num_inputs, num_gates, budget)
    sources = _sources(num_inputs, num_inputs + num_gates - 1)
    ranges = []
    for i in range(num_gates):
        ranges.extend((range(num_inputs + i), range(num_inputs + i)))

    def generate():
        for ids in itertools.product(*ranges):
            yield _genome_from_ids(num_inputs, ids, sources)

    return generate()


def _scan_solutions(num_inputs: int, num_gates: int, target_mask: int) -> Iterator[tuple[int, ...]]:
    """Allele-id tuples (lex order) of genomes whose output table equals
    target_mask. Tables are tracked incrementally as int bitmasks, so only
    the matching leaves are materialized."""
    full = (1 << (1 << num_inputs)) - 1
    tables = list(input_masks(num_inputs))
    genes = [0] * (2 * num_gates)

    def rec(i: int) -> Iterator[tuple[int, ...]]:
        size = num_inputs + i
        if i == num_gates - 1:
            for a in range(size):
                ta = tables[a]
                for b in range(size):
                    if ~(ta & tables[b]) & full == target_mask:
                        genes[2 * i] = a
                        genes[2 * i + 1] = b
                        yield tuple(genes)
        else:
            for a in range(size):
                ta = tables[a]
                for b in range(size):
                    genes[2 * i] = a
                    genes[2 * i + 1] = b
                    tables.append(~(ta & tables[b]) & full)
                    yield from rec(i + 1)
                    tables.pop()

    return rec(0)


@dataclass(frozen=True)
class SolutionCount:
    """Solutions at an exact gate count: raw genomes, and structurally
    distinct ones after dead-gate pruning."""

    raw: int
    canonical: int


@dataclass(frozen=True)
class MinimalityResult:
    """Smallest gate count realizing a target, or None up to max_gates.

    witness is the first solution in enumeration order at that count;
    raw_count / canonical_count tally all solutions at that count.
    """

    target: TruthTable
    minimal_gates: int | None
    witness: NandGenome | None
    raw_count: int
    canonical_count: int


def count_solutions(target: TruthTable, num_gates: int,
                    budget: int = DEFAULT_BUDGET) -> SolutionCount:
    """Count genomes with exactly num_gates gates realizing the target."""
    _check_budget(target.num_inputs, num_gates, budget)
    sources = _sources(target.num_inputs, target.num_inputs + num_gates - 1)
    raw = 0
    keys = set()
    for ids in _scan_solutions(target.num_inputs, num_gates, target.mask):
        raw += 1
        keys.add(canonical_key(_genome_from_ids(target.num_inputs, ids, sources)))
    return SolutionCount(raw=raw, canonical=len(keys))


def minimal_gates(target: TruthTable, max_gates: int,
                  budget: int = DEFAULT_BUDGET) -> MinimalityResult:
    """Search gate counts 1..max_gates for the smallest realization.

    The whole search must fit the budget (checked for every level up front,
    so results never depend on how far a cheap target happened to get).
    """
    if max_gates < 1:
        raise ValueError("max_gates must be >= 1")
    for gates in range(1, max_gates + 1):
        _check_budget(target.num_inputs, gates, budget)
    for gates in range(1, max_gates + 1):
        sources = _sources(target.num_inputs, target.num_inputs + gates - 1)
        witness = None
        raw = 0
        keys = set()
        for ids in _scan_solutions(target.num_inputs, gates, target.mask):
            genome = _genome_from_ids(target.num_inputs, ids, sources)
            if witness is None:
                witness = genome
            raw += 1
            keys.add(canonical_key(genome))
        if witness is not None:
            return MinimalityResult(
                target=target,
                minimal_gates=gates,
                witness=witness,
                raw_count=raw,
                canonical_count=len(keys),
            )
    return MinimalityResult(
        target=target, minimal_gates=None, witness=None, raw_count=0, canonical_count=0
    )
