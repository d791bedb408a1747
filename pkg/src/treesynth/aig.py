"""And-Inverter Graph circuit representation and bit-parallel simulation.

Nodes are numbered densely: node 0 is the constant-false node, nodes
1..num_inputs are primary inputs, and AND nodes follow in topological
order.  Edges are encoded as integer literals ``2 * node + negated``,
so literal 0 is constant false and literal 1 is constant true.
"""

from __future__ import annotations

from dataclasses import dataclass


class AigError(Exception):
    """Malformed circuit, netlist file, or simulation request."""


def lit(node: int, negated: bool = False) -> int:
    return 2 * node + (1 if negated else 0)


def lit_node(literal: int) -> int:
    return literal >> 1


def lit_negated(literal: int) -> bool:
    return bool(literal & 1)


def lit_not(literal: int) -> int:
    return literal ^ 1

CONST0 = 0
CONST1 = 1


@dataclass(frozen=True)
class CircuitMetrics:
    and_count: int
    level_depth: int
    num_inputs: int
    num_outputs: int


@dataclass(frozen=True)
class Aig:
    """Immutable combinational AIG.

    ``ands[i]`` holds the fanin literal pair of node ``num_inputs + 1 + i``;
    both fanins must reference strictly earlier nodes.
    """

    num_inputs: int
    ands: tuple[tuple[int, int], ...]
    outputs: tuple[int, ...]
    input_names: tuple[str, ...] | None = None
    output_names: tuple[str, ...] | None = None

    def __post_init__(self):
        first_and = self.num_inputs + 1
        for i, (a, b) in enumerate(self.ands):
            node = first_and + i
            if lit_node(a) >= node or lit_node(b) >= node:
                raise AigError(f"AND node {node} has non-topological fanin")
        for o in self.outputs:
            if lit_node(o) > self.num_inputs + len(self.ands):
                raise AigError(f"output literal {o} references undefined node")
        if self.input_names is not None and \
                len(self.input_names) != self.num_inputs:
            raise AigError("input name count does not match input count")
        if self.output_names is not None and \
                len(self.output_names) != len(self.outputs):
            raise AigError("output name count does not match output count")

    @property
    def num_outputs(self) -> int:
        return len(self.outputs)

    @property
    def num_nodes(self) -> int:
        return 1 + self.num_inputs + len(self.ands)

    def input_literal(self, index: int) -> int:
        if not 0 <= index < self.num_inputs:
            raise AigError(f"input index {index} out of range")
        return lit(1 + index)


def simulate_words(circuit: Aig, input_words: list[int], mask: int) -> list[int]:
    """Evaluate the circuit on bit-packed vectors.

    ``input_words[i]`` carries one bit per vector for input ``i``; ``mask``
    has a 1 for every valid vector position.  Returns one packed word per
    output.
    """
    if len(input_words) != circuit.num_inputs:
        raise AigError("input word count does not match circuit inputs")
    values = [0] * circuit.num_nodes
    for i, w in enumerate(input_words):
        values[1 + i] = w & mask

    def val(literal: int) -> int:
        v = values[literal >> 1]
        return v ^ mask if literal & 1 else v

    base = circuit.num_inputs + 1
    for i, (a, b) in enumerate(circuit.ands):
        values[base + i] = val(a) & val(b)
    return [val(o) for o in circuit.outputs]


def pack_vectors(vectors: list[tuple[int, ...]], num_inputs: int) -> list[int]:
    """Pack per-vector bit tuples into one word per input (bit r = vector r)."""
    words = [0] * num_inputs
    for r, vec in enumerate(vectors):
        if len(vec) != num_inputs:
            raise AigError(
                f"vector {r} has {len(vec)} bits, expected {num_inputs}")
        for i, bit in enumerate(vec):
            if bit:
                words[i] |= 1 << r
    return words


def simulate(circuit: Aig, vectors: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    """Per-vector exact simulation; vectors are tuples of 0/1 bits."""
    n = len(vectors)
    mask = (1 << n) - 1
    words = pack_vectors(vectors, circuit.num_inputs)
    out_words = simulate_words(circuit, words, mask)
    return [tuple((w >> r) & 1 for w in out_words) for r in range(n)]


def truth_table_input_words(num_inputs: int, base: int = 0,
                            count: int | None = None) -> list[int]:
    """Packed input words for rows base..base+count-1 of the full truth table.

    Row r assigns bit i of r to input i (input 0 is the LSB).  ``count``
    must be a power of two and ``base`` a multiple of it.
    """
    if count is None:
        count = 1 << num_inputs
    if count & (count - 1) or base % count:
        raise AigError("truth table chunk must be an aligned power of two")
    words = []
    for i in range(num_inputs):
        period = 1 << i
        if period >= count:
            words.append(((1 << count) - 1) if ((base >> i) & 1) else 0)
        else:
            block = (1 << period) - 1
            pattern = 0
            pos = period
            while pos < count:
                pattern |= block << pos
                pos += 2 * period
            words.append(pattern)
    return words


def reachable_nodes(circuit: Aig) -> set[int]:
    """AND nodes reachable from the outputs (constants/PIs excluded)."""
    first_and = circuit.num_inputs + 1
    seen: set[int] = set()
    stack = [lit_node(o) for o in circuit.outputs]
    while stack:
        node = stack.pop()
        if node < first_and or node in seen:
            continue
        seen.add(node)
        a, b = circuit.ands[node - first_and]
        stack.append(lit_node(a))
        stack.append(lit_node(b))
    return seen


def metrics(circuit: Aig) -> CircuitMetrics:
    reach = reachable_nodes(circuit)
    first_and = circuit.num_inputs + 1
    level = {0: 0}
    for i in range(circuit.num_inputs):
        level[1 + i] = 0
    depth = 0
    for node in sorted(reach):
        a, b = circuit.ands[node - first_and]
        level[node] = 1 + max(level[lit_node(a)], level[lit_node(b)])
    for o in circuit.outputs:
        depth = max(depth, level.get(lit_node(o), 0))
    return CircuitMetrics(
        and_count=len(reach),
        level_depth=depth,
        num_inputs=circuit.num_inputs,
        num_outputs=circuit.num_outputs,
    )


def and_count(circuit: Aig) -> int:
    return len(reachable_nodes(circuit))


class AigBuilder:
    """Mutable AIG constructor with structural hashing and constant folding."""

    def __init__(self, num_inputs: int):
        self.num_inputs = num_inputs
        self.ands: list[tuple[int, int]] = []
        self.outputs: list[int] = []
        self._strash: dict[tuple[int, int], int] = {}

    def input_lit(self, index: int) -> int:
        if not 0 <= index < self.num_inputs:
            raise AigError(f"input index {index} out of range")
        return lit(1 + index)

    def and_(self, a: int, b: int) -> int:
        if a > b:
            a, b = b, a
        # Constant and trivial cases fold away.
        if a == CONST0:
            return CONST0
        if a == CONST1:
            return b
        if a == b:
            return a
        if a == lit_not(b):
            return CONST0
        key = (a, b)
        cached = self._strash.get(key)
        if cached is not None:
            return cached
        node = self.num_inputs + 1 + len(self.ands)
        self.ands.append(key)
        out = lit(node)
        self._strash[key] = out
        return out

    def or_(self, a: int, b: int) -> int:
        return lit_not(self.and_(lit_not(a), lit_not(b)))

    def xor_(self, a: int, b: int) -> int:
        return self.or_(self.and_(a, lit_not(b)), self.and_(lit_not(a), b))

    def mux(self, sel: int, high: int, low: int) -> int:
        """If sel then high else low, with constant propagation."""
        if high == low:
            return high
        if sel == CONST1:
            return high
        if sel == CONST0:
            return low
        if high == CONST1 and low == CONST0:
            return sel
        if high == CONST0 and low == CONST1:
            return lit_not(sel)
        return self.or_(self.and_(sel, high), self.and_(lit_not(sel), low))

    def add_output(self, literal: int) -> None:
        self.outputs.append(literal)

    def build(self, input_names=None, output_names=None) -> Aig:
        return Aig(
            num_inputs=self.num_inputs,
            ands=tuple(self.ands),
            outputs=tuple(self.outputs),
            input_names=tuple(input_names) if input_names else None,
            output_names=tuple(output_names) if output_names else None,
        )


def _rebuild(circuit: Aig, keep_only_reachable: bool) -> Aig:
    builder = AigBuilder(circuit.num_inputs)
    keep = reachable_nodes(circuit) if keep_only_reachable else None
    first_and = circuit.num_inputs + 1
    mapping: dict[int, int] = {0: CONST0}
    for i in range(circuit.num_inputs):
        mapping[1 + i] = builder.input_lit(i)

    def mapped(literal: int) -> int:
        m = mapping[lit_node(literal)]
        return lit_not(m) if lit_negated(literal) else m

    for i, (a, b) in enumerate(circuit.ands):
        node = first_and + i
        if keep is not None and node not in keep:
            continue
        mapping[node] = builder.and_(mapped(a), mapped(b))
    for o in circuit.outputs:
        builder.add_output(mapped(o))
    return builder.build(circuit.input_names, circuit.output_names)


def strash(circuit: Aig) -> Aig:
    """Structurally hash and constant-fold; simulation-equivalent result."""
    return _rebuild(circuit, keep_only_reachable=False)


def cleanup(circuit: Aig) -> Aig:
    """Drop AND nodes unreachable from the outputs, then strash."""
    return _rebuild(circuit, keep_only_reachable=True)


def compose(circuit: Aig, parts, replacements: dict[int, Aig]) -> Aig:
    """Substitute several partition cells at once.

    ``parts`` is a list of SubCircuit values (see the partition module);
    ``replacements`` maps part id -> replacement Aig over the part's
    boundary interface.  Every consumer of a substituted cell's boundary
    output is rewired to the corresponding replacement output.  The result
    is cleaned and structurally hashed.
    """
    by_id = {p.id: p for p in parts}
    for pid, rep in replacements.items():
        part = by_id[pid]
        if rep.num_inputs != len(part.boundary_inputs):
            raise AigError(
                f"part {pid}: replacement has {rep.num_inputs} inputs, "
                f"boundary has {len(part.boundary_inputs)}")
        if rep.num_outputs != len(part.boundary_outputs):
            raise AigError(
                f"part {pid}: replacement has {rep.num_outputs} outputs, "
                f"boundary has {len(part.boundary_outputs)}")

    # node -> id of the substituted part that owns it
    owner: dict[int, int] = {}
    for pid in replacements:
        for node in by_id[pid].member_nodes:
            owner[node] = pid

    builder = AigBuilder(circuit.num_inputs)
    mapping: dict[int, int] = {0: CONST0}
    for i in range(circuit.num_inputs):
        mapping[1 + i] = builder.input_lit(i)
    first_and = circuit.num_inputs + 1

    def mapped(literal: int) -> int:
        m = resolve(lit_node(literal))
        return lit_not(m) if lit_negated(literal) else m

    def inline_part(pid: int) -> None:
        part = by_id[pid]
        rep = replacements[pid]
        local: dict[int, int] = {0: CONST0}
        for slot, src in enumerate(part.boundary_inputs):
            local[1 + slot] = resolve(src)
        rep_first = rep.num_inputs + 1
        for j, (a, b) in enumerate(rep.ands):
            fa = local[lit_node(a)] ^ (1 if lit_negated(a) else 0)
            fb = local[lit_node(b)] ^ (1 if lit_negated(b) else 0)
            local[rep_first + j] = builder.and_(fa, fb)
        for out_node, out_lit in zip(part.boundary_outputs, rep.outputs):
            m = local[lit_node(out_lit)]
            mapping[out_node] = lit_not(m) if lit_negated(out_lit) else m

    # Iterative resolution; the part quotient graph is acyclic by the
    # partition contract, so inlining a whole part on demand terminates.
    def resolve(node: int) -> int:
        if node in mapping:
            return mapping[node]
        stack = [node]
        while stack:
            cur = stack[-1]
            if cur in mapping:
                stack.pop()
                continue
            pid = owner.get(cur)
            if pid is not None:
                part = by_id[pid]
                deps = [s for s in part.boundary_inputs
                        if s not in mapping]
                if deps:
                    stack.extend(deps)
                    continue
                inline_part(pid)
                if cur not in mapping:
                    raise AigError(
                        f"node {cur} of part {pid} is read outside the part "
                        "but is not a boundary output")
                stack.pop()
                continue
            a, b = circuit.ands[cur - first_and]
            deps = [n for n in (lit_node(a), lit_node(b)) if n not in mapping]
            if deps:
                stack.extend(deps)
                continue
            mapping[cur] = builder.and_(mapped(a), mapped(b))
            stack.pop()
        return mapping[node]

    for o in circuit.outputs:
        builder.add_output(mapped(o))
    return cleanup(builder.build(circuit.input_names, circuit.output_names))


def substitute(circuit: Aig, region, replacement: Aig) -> Aig:
    """Replace one partition cell with an equal-interface circuit."""
    return compose(circuit, [region], {region.id: replacement})
