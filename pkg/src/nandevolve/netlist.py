"""Feed-forward NAND circuit model.

A circuit is a fixed-order list of two-input NAND gates. Each gate input
(a "gene") names its source: an external circuit input or the output of a
strictly earlier gate, so every circuit is acyclic by construction. The
output of the whole circuit is the output of the last gate.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache

# Truth tables are manipulated as integer bitmasks (bit i = output for input
# assignment i), so arity is capped where 2^n rows stay enumerable.
MAX_INPUTS = 16

EXTERNAL = "external"
GATE = "gate"


class CircuitError(Exception):
    """Base class for all errors raised by nandevolve."""


class StructureError(CircuitError):
    """Genome wiring violates the feed-forward rules."""


class ArityError(CircuitError):
    """Input counts disagree (genome vs. assignment or target)."""


class CapacityError(CircuitError):
    """Requested work exceeds an arity or enumeration budget."""


class FormatError(CircuitError):
    """Malformed external representation (JSON netlist, target string)."""


@dataclass(frozen=True)
class InputSource:
    """One allele: where a gate input is wired from."""

    kind: str
    index: int

    def __post_init__(self):
        if self.kind not in (EXTERNAL, GATE):
            raise StructureError(f"unknown source kind {self.kind!r}")
        if not isinstance(self.index, int) or isinstance(self.index, bool) or self.index < 0:
            raise StructureError(f"source index must be a non-negative int, got {self.index!r}")

    @classmethod
    def external(cls, index: int) -> "InputSource":
        return cls(EXTERNAL, index)

    @classmethod
    def gate(cls, index: int) -> "InputSource":
        return cls(GATE, index)

    def __repr__(self):
        return f"{'x' if self.kind == EXTERNAL else 'g'}{self.index}"


@dataclass(frozen=True)
class NandGenome:
    """An immutable NAND netlist: `num_inputs` externals feeding `gates`.

    Gate i may reference external inputs or gates with index < i only;
    the circuit output is the output of the last gate.
    """

    num_inputs: int
    gates: tuple[tuple[InputSource, InputSource], ...]

    def __post_init__(self):
        if not isinstance(self.num_inputs, int) or isinstance(self.num_inputs, bool) or self.num_inputs < 1:
            raise StructureError(f"num_inputs must be an int >= 1, got {self.num_inputs!r}")
        gates = tuple((a, b) for a, b in self.gates)
        object.__setattr__(self, "gates", gates)
        if not gates:
            raise StructureError("a genome needs at least one gate")
        for i, pair in enumerate(gates):
            for src in pair:
                if not isinstance(src, InputSource):
                    raise StructureError(f"gate {i}: source must be an InputSource, got {src!r}")
                if src.kind == EXTERNAL and src.index >= self.num_inputs:
                    raise StructureError(
                        f"gate {i}: external index {src.index} out of range for {self.num_inputs} inputs"
                    )
                if src.kind == GATE and src.index >= i:
                    raise StructureError(
                        f"gate {i}: source gate {src.index} is not strictly earlier (feed-forward)"
                    )

    @property
    def num_gates(self) -> int:
        return len(self.gates)


_PRESETS = {
    "and": "0001",
    "or": "0111",
    "nor": "1000",
    "xor": "0110",
    "xnor": "1001",
    "nand": "1110",
}


@dataclass(frozen=True)
class TruthTable:
    """A single-output boolean function of `num_inputs` variables.

    rows[i] is the output bit for the assignment where bit k of the row
    index i gives the value of external input k (input 0 least significant).
    """

    num_inputs: int
    rows: str

    def __post_init__(self):
        if not isinstance(self.num_inputs, int) or isinstance(self.num_inputs, bool) or self.num_inputs < 1:
            raise FormatError(f"num_inputs must be an int >= 1, got {self.num_inputs!r}")
        if self.num_inputs > MAX_INPUTS:
            raise CapacityError(f"arity {self.num_inputs} exceeds the {MAX_INPUTS}-input limit")
        if not isinstance(self.rows, str) or len(self.rows) != 1 << self.num_inputs:
            raise FormatError(
                f"rows must be a bit string of length {1 << self.num_inputs}, got {self.rows!r}"
            )
        if set(self.rows) - {"0", "1"}:
            raise FormatError(f"rows may contain only '0' and '1', got {self.rows!r}")

    @property
    def mask(self) -> int:
        """Rows packed into an int, bit i = rows[i]."""
        return int(self.rows[::-1], 2)

    @classmethod
    def from_mask(cls, num_inputs: int, mask: int) -> "TruthTable":
        rows = 1 << num_inputs
        return cls(num_inputs, format(mask, f"0{rows}b")[::-1])

    @classmethod
    def named(cls, name: str) -> "TruthTable":
        """One of the two-input presets: and, or, nor, xor, xnor, nand."""
        try:
            return cls(2, _PRESETS[name.lower()])
        except KeyError:
            raise FormatError(
                f"unknown target name {name!r} (choose from {', '.join(sorted(_PRESETS))})"
            ) from None

    @classmethod
    def parse(cls, text: str) -> "TruthTable":
        """Parse a preset name or a 'tt:BITS' literal in canonical row order."""
        if text.lower().startswith("tt:"):
            bits = text[3:]
            if not bits or set(bits) - {"0", "1"}:
                raise FormatError(f"tt: literal must be a nonempty bit string, got {bits!r}")
            n = len(bits).bit_length() - 1
            if 1 << n != len(bits):
                raise FormatError(f"tt: literal length {len(bits)} is not a power of two")
            if n < 1:
                raise FormatError("tt: literal needs at least 2 rows")
            return cls(n, bits)
        return cls.named(text)


@lru_cache(maxsize=None)
def input_masks(num_inputs: int) -> tuple[int, ...]:
    """Bitmask of each external input over all 2^n assignments."""
    rows = 1 << num_inputs
    masks = []
    for k in range(num_inputs):
        block = 1 << k
        ones = (1 << block) - 1
        m = 0
        for start in range(block, rows, 2 * block):
            m |= ones << start
        masks.append(m)
    return tuple(masks)


def output_mask(genome: NandGenome) -> int:
    """Truth table of the genome's output gate, packed as an int bitmask."""
    n = genome.num_inputs
    if n > MAX_INPUTS:
        raise CapacityError(f"arity {n} exceeds the {MAX_INPUTS}-input limit")
    masks = input_masks(n)
    full = (1 << (1 << n)) - 1
    values: list[int] = []
    for a, b in genome.gates:
        va = masks[a.index] if a.kind == EXTERNAL else values[a.index]
        vb = masks[b.index] if b.kind == EXTERNAL else values[b.index]
        values.append(~(va & vb) & full)
    return values[-1]


def evaluate(genome: NandGenome, assignment) -> int:
    """Output bit of the circuit for one input assignment."""
    if len(assignment) != genome.num_inputs:
        raise ArityError(
            f"assignment has {len(assignment)} bits, genome expects {genome.num_inputs}"
        )
    bits = [1 if v else 0 for v in assignment]
    values: list[int] = []
    for a, b in genome.gates:
        va = bits[a.index] if a.kind == EXTERNAL else values[a.index]
        vb = bits[b.index] if b.kind == EXTERNAL else values[b.index]
        values.append(1 - (va & vb))
    return values[-1]


def truth_table_of(genome: NandGenome) -> TruthTable:
    """Exhaustive evaluation over all 2^n assignments."""
    return TruthTable.from_mask(genome.num_inputs, output_mask(genome))


def fitness(genome: NandGenome, target: TruthTable) -> float:
    """Fraction of truth-table rows where the circuit matches the target.

    Always an exact multiple of 2^-n, so comparisons against 0.0 and 1.0
    are exact; 1.0 means the circuit realizes the target.
    """
    if genome.num_inputs != target.num_inputs:
        raise ArityError(
            f"genome has {genome.num_inputs} inputs, target has {target.num_inputs}"
        )
    rows = 1 << genome.num_inputs
    wrong = (output_mask(genome) ^ target.mask).bit_count()
    return (rows - wrong) / rows


def prune_dead_gates(genome: NandGenome) -> NandGenome:
    """Drop gates unreachable backward from the output gate, reindexed densely.

    The realized truth table is unchanged.
    """
    live: set[int] = set()
    stack = [genome.num_gates - 1]
    while stack:
        i = stack.pop()
        if i in live:
            continue
        live.add(i)
        for src in genome.gates[i]:
            if src.kind == GATE:
                stack.append(src.index)
    order = sorted(live)
    remap = {old: new for new, old in enumerate(order)}
    gates = tuple(
        tuple(src if src.kind == EXTERNAL else InputSource.gate(remap[src.index]) for src in genome.gates[old])
        for old in order
    )
    return NandGenome(genome.num_inputs, gates)


def canonical_key(genome: NandGenome) -> bytes:
    """Deterministic byte serialization of the dead-gate-pruned structure.

    Equal keys <=> identical pruned netlists. Distinct keys say nothing
    about functional equivalence.
    """
    pruned = prune_dead_gates(genome)
    parts = [str(pruned.num_inputs)]
    for a, b in pruned.gates:
        parts.append(f"{a!r}.{b!r}")
    return "|".join(parts).encode("ascii")


def _source_doc(src: InputSource) -> dict:
    return {"type": src.kind, "index": src.index}


def export_json(genome: NandGenome) -> str:
    """Render the genome in the JSON netlist format (see parse_json)."""
    doc = {
        "inputs": genome.num_inputs,
        "gates": [[_source_doc(a), _source_doc(b)] for a, b in genome.gates],
    }
    return json.dumps(doc, indent=2)


def _parse_source(obj, where: str) -> InputSource:
    if not isinstance(obj, dict):
        raise FormatError(f"{where}: expected an object, got {type(obj).__name__}")
    if "type" not in obj:
        raise FormatError(f"{where}: missing field 'type'")
    kind = obj["type"]
    if kind not in (EXTERNAL, GATE):
        raise FormatError(f"{where}: unknown source type {kind!r}")
    if "index" not in obj:
        raise FormatError(f"{where}: missing field 'index'")
    index = obj["index"]
    if not isinstance(index, int) or isinstance(index, bool) or index < 0:
        raise FormatError(f"{where}: index must be a non-negative integer, got {index!r}")
    return InputSource(kind, index)


def parse_json(text: str) -> NandGenome:
    """Parse the JSON netlist format:

        {"inputs": n, "gates": [[SRC, SRC], ...]}

    where SRC is {"type": "external"|"gate", "index": k}. Gates are listed
    in index order and the last gate is the circuit output. Forward/self
    gate references, out-of-range indices, unknown source types, and wrong
    field types are rejected with the offending location in the message.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise FormatError(f"top level: expected an object, got {type(doc).__name__}")
    if "inputs" not in doc:
        raise FormatError("top level: missing field 'inputs'")
    n = doc["inputs"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise FormatError(f"inputs: expected an integer >= 1, got {n!r}")
    if "gates" not in doc:
        raise FormatError("top level: missing field 'gates'")
    gates_doc = doc["gates"]
    if not isinstance(gates_doc, list):
        raise FormatError(f"gates: expected an array, got {type(gates_doc).__name__}")
    if not gates_doc:
        raise FormatError("gates: at least one gate is required")
    gates = []
    for i, pair in enumerate(gates_doc):
        if not isinstance(pair, list) or len(pair) != 2:
            raise FormatError(f"gates[{i}]: expected an array of two sources")
        sources = []
        for j, obj in enumerate(pair):
            where = f"gates[{i}][{j}]"
            src = _parse_source(obj, where)
            if src.kind == EXTERNAL and src.index >= n:
                raise FormatError(f"{where}: external index {src.index} out of range for {n} inputs")
            if src.kind == GATE and src.index >= i:
                raise FormatError(
                    f"{where}: gate index {src.index} must be below {i} (feed-forward)"
                )
            sources.append(src)
        gates.append(tuple(sources))
    return NandGenome(n, tuple(gates))


def export_dot(genome: NandGenome) -> str:
    """Render the circuit as a Graphviz digraph.

    Inputs are nodes x<k>, gates are nodes g<j> with edges source -> gate;
    the output gate is marked with peripheries=2 and an "out" xlabel.
    """
    out = genome.num_gates - 1
    lines = ["digraph nand_circuit {", "  rankdir=LR;"]
    for k in range(genome.num_inputs):
        lines.append(f'  x{k} [shape=circle, label="x{k}"];')
    for j in range(genome.num_gates):
        mark = ', peripheries=2, xlabel="out"' if j == out else ""
        lines.append(f'  g{j} [shape=box, label="NAND g{j}"{mark}];')
    for j, (a, b) in enumerate(genome.gates):
        lines.append(f"  {a!r} -> g{j};")
        lines.append(f"  {b!r} -> g{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"
