import pytest

from nandevolve.evolve import GaConfig, run_evolution
from nandevolve.netlist import (
    CapacityError,
    TruthTable,
    canonical_key,
    prune_dead_gates,
    truth_table_of,
)
from nandevolve.oracle import (
    count_solutions,
    enumerate_genomes,
    genome_count,
    minimal_gates,
)

from conftest import g, genome, x


def solutions_by_filtering(target, num_gates):
    """Independent route: materialize the whole space and filter by table."""
    return [
        circuit
        for circuit in enumerate_genomes(target.num_inputs, num_gates)
        if truth_table_of(circuit) == target
    ]


class TestEnumeration:
    @pytest.mark.parametrize(
        "n,gates,expected",
        [(2, 1, 4), (2, 2, 36), (2, 3, 576), (2, 5, 518_400), (1, 5, 14_400), (3, 2, 144)],
    )
    def test_closed_form(self, n, gates, expected):
        assert genome_count(n, gates) == expected

    @pytest.mark.parametrize("n", [1, 2])
    @pytest.mark.parametrize("gates", [1, 2, 3, 4])
    def test_stream_length_matches_closed_form(self, n, gates):
        assert sum(1 for _ in enumerate_genomes(n, gates)) == genome_count(n, gates)

    def test_stream_length_n1_g5(self):
        assert sum(1 for _ in enumerate_genomes(1, 5)) == genome_count(1, 5) == 14_400

    def test_stream_length_g5(self):
        assert sum(1 for _ in enumerate_genomes(2, 5)) == 518_400

    def test_all_distinct_and_valid(self):
        seen = set(enumerate_genomes(2, 2))
        assert len(seen) == 36

    def test_lexicographic_order(self):
        stream = list(enumerate_genomes(2, 2))
        assert stream[0] == genome(2, (x(0), x(0)), (x(0), x(0)))
        assert stream[1] == genome(2, (x(0), x(0)), (x(0), x(1)))
        # allele order at gate 1 is x0, x1, then g0
        assert stream[2] == genome(2, (x(0), x(0)), (x(0), g(0)))
        assert stream[-1] == genome(2, (x(1), x(1)), (g(0), g(0)))

    def test_budget_refused_at_call_time(self):
        with pytest.raises(CapacityError):
            enumerate_genomes(2, 7, budget=100_000_000)  # 1.6e9 genomes
        with pytest.raises(CapacityError):
            enumerate_genomes(2, 3, budget=500)


class TestCountSolutions:
    def test_nand_one_gate(self):
        result = count_solutions(TruthTable.named("nand"), 1)
        assert result.raw == 2  # (x0,x1) and (x1,x0)
        assert result.canonical == 2

    def test_and_one_gate_has_none(self):
        assert count_solutions(TruthTable.named("and"), 1).raw == 0

    def test_and_two_gates(self):
        target = TruthTable.named("and")
        result = count_solutions(target, 2)
        found = solutions_by_filtering(target, 2)
        assert result.raw == len(found) > 0
        assert genome(2, (x(0), x(1)), (g(0), g(0))) in found

    @pytest.mark.parametrize("name,gates", [("and", 2), ("or", 3), ("nor", 3), ("xor", 3), ("nand", 2)])
    def test_agrees_with_filtering_route(self, name, gates):
        target = TruthTable.named(name)
        found = solutions_by_filtering(target, gates)
        result = count_solutions(target, gates)
        assert result.raw == len(found)
        assert result.canonical == len({canonical_key(circuit) for circuit in found})

    def test_respects_budget(self):
        with pytest.raises(CapacityError):
            count_solutions(TruthTable.named("and"), 7)


class TestMinimalGates:
    def test_nand_is_one_gate(self):
        result = minimal_gates(TruthTable.named("nand"), 3)
        assert result.minimal_gates == 1
        assert result.witness == genome(2, (x(0), x(1)))  # first in enumeration order

    def test_and_is_two_gates(self):
        target = TruthTable.named("and")
        result = minimal_gates(target, 4)
        assert result.minimal_gates == 2
        assert truth_table_of(result.witness) == target
        assert result.witness == solutions_by_filtering(target, 2)[0]
        assert result.raw_count == result.canonical_count == 2

    def test_none_up_to_budget(self):
        parity3 = TruthTable(3, "01101001")
        result = minimal_gates(parity3, 2)
        assert result.minimal_gates is None
        assert result.witness is None
        assert result.raw_count == result.canonical_count == 0

    def test_budget_checked_for_all_levels(self):
        # even an easy target is refused when a requested level cannot fit
        with pytest.raises(CapacityError):
            minimal_gates(TruthTable.named("nand"), 7)

    def test_rejects_bad_max(self):
        with pytest.raises(ValueError):
            minimal_gates(TruthTable.named("and"), 0)


class TestCrossChecks:
    @pytest.mark.parametrize("name", ["and", "or", "nor", "xor", "xnor", "nand"])
    def test_padding_monotonicity(self, name):
        # a target solvable at G gates is solvable at G+1
        target = TruthTable.named(name)
        minimum = minimal_gates(target, 6).minimal_gates
        assert count_solutions(target, minimum + 1).raw > 0

    def test_minimal_solutions_have_no_dead_gates(self):
        target = TruthTable.named("xor")
        result = minimal_gates(target, 5)
        assert prune_dead_gates(result.witness) == result.witness

    def test_ga_solution_confirmed_by_oracle(self):
        target = TruthTable.named("xor")
        out = run_evolution(GaConfig(num_gates=4, seed=5), target)
        assert out.solved
        assert truth_table_of(out.genome) == target
        # the pruned GA solution appears among the oracle's enumerated ones
        pruned = prune_dead_gates(out.genome)
        keys = {
            canonical_key(circuit)
            for circuit in solutions_by_filtering(target, pruned.num_gates)
        }
        assert canonical_key(out.genome) in keys
