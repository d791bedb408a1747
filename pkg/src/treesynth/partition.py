"""Recursive min-cut decomposition of an AIG into bounded-interface cells.

Cells are kept in a global order such that every signal between cells
flows forward, so the cell quotient graph is acyclic by construction and
substitution can never create a combinational loop.
"""

from __future__ import annotations

from dataclasses import dataclass

from .aig import Aig, AigBuilder, AigError, cleanup, lit_negated, lit_node


@dataclass(frozen=True)
class PartitionConfig:
    max_inputs: int = 14   # k
    max_outputs: int = 5   # m
    initial_parts: int = 5
    seed: int = 0
    balance: float = 0.1
    max_fm_passes: int = 8

    def __post_init__(self):
        if self.max_inputs < 2:
            raise AigError("max_inputs must be >= 2 (a lone AND has 2 inputs)")
        if self.max_outputs < 1:
            raise AigError("max_outputs must be >= 1")
        if self.initial_parts < 2:
            raise AigError("initial_parts must be >= 2")


@dataclass(frozen=True)
class SubCircuit:
    id: int
    member_nodes: frozenset[int]
    boundary_inputs: tuple[int, ...]   # parent node ids feeding the cell
    boundary_outputs: tuple[int, ...]  # member node ids read outside
    extracted: Aig


class _Netlist:
    """Fanin/fanout view of the AND nodes of a cleaned circuit."""

    def __init__(self, circuit: Aig):
        self.circuit = circuit
        first_and = circuit.num_inputs + 1
        self.first_and = first_and
        self.nodes = list(range(first_and, first_and + len(circuit.ands)))
        self.fanins: dict[int, tuple[int, int]] = {}
        self.consumers: dict[int, list[int]] = {n: [] for n in self.nodes}
        for n in self.nodes:
            a, b = circuit.ands[n - first_and]
            self.fanins[n] = (lit_node(a), lit_node(b))
            for src in set((lit_node(a), lit_node(b))):
                if src >= first_and:
                    self.consumers[src].append(n)
        self.po_nodes = {lit_node(o) for o in circuit.outputs
                         if lit_node(o) >= first_and}

    def boundary(self, members) -> tuple[list[int], list[int]]:
        members = set(members)
        ins: set[int] = set()
        outs: set[int] = set()
        for n in members:
            for src in self.fanins[n]:
                if src != 0 and src not in members:
                    ins.add(src)
            if n in self.po_nodes or any(c not in members
                                         for c in self.consumers[n]):
                outs.add(n)
        return sorted(ins), sorted(outs)


def extract(circuit: Aig, members, part_id: int = 0) -> SubCircuit:
    """Cone-copy a member node set into a standalone Aig over its boundary."""
    net = _Netlist(circuit)
    return _extract(net, members, part_id)


def _extract(net: _Netlist, members, part_id: int) -> SubCircuit:
    circuit = net.circuit
    member_set = frozenset(members)
    for n in member_set:
        if n not in net.fanins:
            raise AigError(f"node {n} is not an AND node of the circuit")
    ins, outs = net.boundary(member_set)
    builder = AigBuilder(len(ins))
    mapping = {0: 0}
    for slot, src in enumerate(ins):
        mapping[src] = builder.input_lit(slot)
    for n in sorted(member_set):
        a, b = circuit.ands[n - net.first_and]
        fa = mapping[lit_node(a)] ^ (1 if lit_negated(a) else 0)
        fb = mapping[lit_node(b)] ^ (1 if lit_negated(b) else 0)
        mapping[n] = builder.and_(fa, fb)
    for n in outs:
        builder.add_output(mapping[n])
    return SubCircuit(id=part_id, member_nodes=member_set,
                      boundary_inputs=tuple(ins), boundary_outputs=tuple(outs),
                      extracted=builder.build())


def _fm_bipartition(net: _Netlist, members: list[int], balance: float,
                    max_passes: int) -> tuple[list[int], list[int]]:
    """Balanced min-cut bipartition of a member set.

    Nets are driver signals with at least two member pins.  Starts from the
    topological (node-id) halving and improves it with Fiduccia-Mattheyses
    passes; fully deterministic.
    """
    members = sorted(members)
    n = len(members)
    half = n // 2
    side = {v: (0 if i < half else 1) for i, v in enumerate(members)}
    member_set = set(members)

    nets: list[list[int]] = []
    vertex_nets: dict[int, list[int]] = {v: [] for v in members}
    for v in members:
        pins = set()
        if v in member_set:
            pins.add(v)
        pins.update(c for c in net.consumers[v] if c in member_set)
        if len(pins) < 2:
            continue
        idx = len(nets)
        nets.append(sorted(pins))
        for p in pins:
            vertex_nets[p].append(idx)
    # nets driven by signals outside the member set
    seen_drivers = set(members)
    for v in members:
        for src in net.fanins[v]:
            if src == 0 or src in seen_drivers:
                continue
            seen_drivers.add(src)
            pins = sorted(c for c in net.consumers.get(src, ())
                          if c in member_set) if src >= net.first_and else \
                sorted(c for c in member_set if src in net.fanins[c])
            if len(pins) >= 2:
                idx = len(nets)
                nets.append(pins)
                for p in pins:
                    vertex_nets[p].append(idx)

    lo = max(1, int((0.5 - balance) * n))
    hi = n - lo

    def gain(v: int) -> int:
        g = 0
        s = side[v]
        for ni in vertex_nets[v]:
            same = sum(1 for p in nets[ni] if side[p] == s)
            other = len(nets[ni]) - same
            if same == 1:
                g += 1
            if other == 0:
                g -= 1
        return g

    for _ in range(max_passes):
        locked: set[int] = set()
        moves: list[int] = []
        gains: list[int] = []
        sizes = [n - sum(side.values()), sum(side.values())]
        saved = dict(side)
        while len(locked) < n:
            best_v, best_g = None, None
            for v in members:
                if v in locked:
                    continue
                s = side[v]
                if sizes[s] - 1 < lo or sizes[1 - s] + 1 > hi:
                    continue
                g = gain(v)
                if best_g is None or g > best_g:
                    best_v, best_g = v, g
            if best_v is None:
                break
            locked.add(best_v)
            moves.append(best_v)
            gains.append(best_g)
            sizes[side[best_v]] -= 1
            side[best_v] ^= 1
            sizes[side[best_v]] += 1
        # keep the best prefix of the move sequence
        best_prefix, best_total, total = 0, 0, 0
        for i, g in enumerate(gains):
            total += g
            if total > best_total:
                best_total, best_prefix = total, i + 1
        side = saved
        if best_total <= 0:
            break
        for v in moves[:best_prefix]:
            side[v] ^= 1

    part_a = [v for v in members if side[v] == 0]
    part_b = [v for v in members if side[v] == 1]
    if not part_a or not part_b:
        part_a, part_b = members[:half], members[half:]
    return _acyclic_repair(net, part_a, part_b)


def _acyclic_repair(net: _Netlist, part_a: list[int],
                    part_b: list[int]) -> tuple[list[int], list[int]]:
    """Move nodes so that no signal flows from part_b back into part_a.

    Returns (A, B) with all internal edges A->B; falls back to topological
    halving if the repair would empty a side.
    """
    set_a, set_b = set(part_a), set(part_b)
    union = set_a | set_b

    def closure(seeds: set[int], forward: bool) -> set[int]:
        out = set(seeds)
        stack = list(seeds)
        while stack:
            v = stack.pop()
            nxt = (net.consumers[v] if forward else net.fanins[v])
            for u in nxt:
                if u in union and u not in out:
                    out.add(u)
                    stack.append(u)
        return out

    # sources in B feeding A: either move everything in B that reaches A
    # into A, or everything in A reachable from B into B; pick the smaller.
    b_to_a_tails = {v for v in set_b
                    if any(c in set_a for c in net.consumers[v])}
    if not b_to_a_tails:
        return sorted(set_a), sorted(set_b)
    reach_a = {v for v in closure(b_to_a_tails, forward=False) if v in set_b}
    from_b = {v for v in closure(b_to_a_tails, forward=True) if v in set_a}
    if len(reach_a) <= len(from_b):
        set_a |= reach_a
        set_b -= reach_a
    else:
        set_b |= from_b
        set_a -= from_b
    if not set_a or not set_b:
        ordered = sorted(union)
        half = len(ordered) // 2
        return ordered[:half], ordered[half:]
    return sorted(set_a), sorted(set_b)


def partition(circuit: Aig, config: PartitionConfig) -> list[SubCircuit]:
    """Decompose into cells with <= k boundary inputs and <= m outputs.

    The returned list is ordered so that all inter-cell signals flow from
    earlier to later cells.
    """
    circuit = cleanup(circuit)
    net = _Netlist(circuit)
    if not net.nodes:
        return []
    parts: list[list[int]] = [list(net.nodes)]

    def split(index: int) -> bool:
        group = parts[index]
        if len(group) < 2:
            return False
        a, b = _fm_bipartition(net, group, config.balance,
                               config.max_fm_passes)
        parts[index:index + 1] = [a, b]
        return True

    # initial split into roughly initial_parts cells
    while len(parts) < config.initial_parts:
        largest = max(range(len(parts)), key=lambda i: (len(parts[i]), -i))
        if not split(largest):
            break

    def within_limits(group: list[int]) -> bool:
        ins, outs = net.boundary(group)
        return (len(ins) <= config.max_inputs
                and len(outs) <= config.max_outputs)

    # recursive bipartitioning until every cell fits the interface budget
    changed = True
    while changed:
        changed = False
        for i in range(len(parts)):
            if not within_limits(parts[i]):
                if split(i):
                    changed = True
                    break

    return [_extract(net, group, pid) for pid, group in enumerate(parts)]


def partition_report(circuit: Aig, parts: list[SubCircuit]) -> dict:
    # cut size = distinct AND-node signals crossing a cell boundary
    cut_signals: set[int] = set()
    for p in parts:
        cut_signals.update(s for s in p.boundary_inputs
                           if s > circuit.num_inputs)
    return {
        "num_parts": len(parts),
        "cut_size": len(cut_signals),
        "parts": [
            {
                "id": p.id,
                "size": len(p.member_nodes),
                "inputs": len(p.boundary_inputs),
                "outputs": len(p.boundary_outputs),
            }
            for p in parts
        ],
    }
