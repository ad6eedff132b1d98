import random

import pytest
from hypothesis import strategies as st

from nandevolve.netlist import InputSource, NandGenome


def x(i):
    return InputSource.external(i)


def g(i):
    return InputSource.gate(i)


def genome(num_inputs, *pairs):
    return NandGenome(num_inputs, tuple(pairs))


def source_from_id(num_inputs, allele):
    if allele < num_inputs:
        return InputSource.external(allele)
    return InputSource.gate(allele - num_inputs)


def random_valid_genome(rng: random.Random, num_inputs, num_gates):
    gates = tuple(
        (
            source_from_id(num_inputs, rng.randrange(num_inputs + i)),
            source_from_id(num_inputs, rng.randrange(num_inputs + i)),
        )
        for i in range(num_gates)
    )
    return NandGenome(num_inputs, gates)


@st.composite
def genomes(draw, max_inputs=3, max_gates=8):
    n = draw(st.integers(min_value=1, max_value=max_inputs))
    num_gates = draw(st.integers(min_value=1, max_value=max_gates))
    gates = []
    for i in range(num_gates):
        a = draw(st.integers(min_value=0, max_value=n + i - 1))
        b = draw(st.integers(min_value=0, max_value=n + i - 1))
        gates.append((source_from_id(n, a), source_from_id(n, b)))
    return NandGenome(n, tuple(gates))


# the four-gate exclusive-or construction: NAND(NAND(x0, NAND(x0,x1)), NAND(x1, NAND(x0,x1)))
@pytest.fixture
def xor_genome():
    return genome(2, (x(0), x(1)), (x(0), g(0)), (x(1), g(0)), (g(1), g(2)))


# NAND followed by a self-NAND inverter realizes AND
@pytest.fixture
def and_genome():
    return genome(2, (x(0), x(1)), (g(0), g(0)))
