"""The colored functional graph of the common refinement subgroup.

For a validated partition with refinement subgroup N (intersection of the
blocks' normal cores) and a word w, the vertices are the m cosets of N, each
colored by the unique block containing it, with one outgoing edge per vertex
for the step Ng -> Ngw.  The edges decompose into loops whose common length
is the order of w modulo N; inside a loop each participating color i occupies
an arithmetic progression with gap equal to the block's relative order of w,
so every loop induces a partition of the integers into residue classes.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm

from .partition import CosetPartition, DEFAULT_STATE_CAP, big_n, order_rel
from .perm import eval_word, transition_group
from .schreier import CosetTable, trace, transversal, w_graph
from .words import Word

__all__ = ["HSLoop", "HSColoredGraph", "build_hs_graph", "loop_z_partition",
           "fiber_loop_count"]


@dataclass(frozen=True)
class HSLoop:
    """One cycle of the w-step, starting from its minimal vertex."""

    vertices: tuple[int, ...]
    colors: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.vertices)

    @property
    def participants(self) -> frozenset[int]:
        return frozenset(self.colors)

    def contribution(self, color: int) -> int:
        return self.colors.count(color)


@dataclass(frozen=True)
class HSColoredGraph:
    partition: CosetPartition
    w: Word
    table: CosetTable                # table of N, m vertices
    color: tuple[int, ...]           # block position per vertex
    step: tuple[int, ...]            # vertex -> vertex * w
    orders: tuple[int, ...]          # relative order of w per block
    o_n: int                         # order of w modulo N

    @property
    def m(self) -> int:
        return self.table.degree

    def fiber(self, i: int) -> tuple[int, ...]:
        return tuple(v for v, c in enumerate(self.color) if c == i)

    def loops(self) -> list[HSLoop]:
        """Cycles ordered by minimal vertex; each starts at its minimal vertex."""
        out = []
        for cycle in w_graph(self.table, self.w).cycles():
            out.append(HSLoop(cycle, tuple(self.color[v] for v in cycle)))
        return out


def build_hs_graph(
    p: CosetPartition,
    w: Word,
    group_cap: int = 10**6,
    state_cap: int = DEFAULT_STATE_CAP,
) -> HSColoredGraph:
    """Color the refinement subgroup's table and record the w-step.

    The order of w modulo N is cross-checked against the lcm of the orders
    of the permutations w induces on the individual blocks.
    """
    table = big_n(p, group_cap, state_cap)
    reps = transversal(table)
    color = []
    for rep in reps:
        hits = [i for i, spec in enumerate(p.specs) if spec.contains(rep)]
        if len(hits) != 1:
            raise ValueError(
                f"coset of {rep} lies in {len(hits)} blocks; partition invalid")
        color.append(hits[0])
    graph = w_graph(table, w)
    lengths = {len(c) for c in graph.cycles()}
    if len(lengths) != 1:
        raise AssertionError(f"normal table has uneven loop lengths {lengths}")
    o_n = lengths.pop()
    per_block = lcm(*(
        eval_word(transition_group(spec.table), w).order() for spec in p.specs))
    if per_block != o_n:
        raise AssertionError(
            f"order of w modulo N is {o_n} but blockwise lcm is {per_block}")
    orders = tuple(order_rel(p, i, w) for i in range(p.size))
    return HSColoredGraph(p, w, table, tuple(color), graph.step, orders, o_n)


def loop_z_partition(graph: HSColoredGraph, loop: HSLoop):
    """Residue classes read off a loop: color i covers positions
    first-occurrence + multiples of its relative order."""
    from .zcover import colored_loop_partition

    moduli = {i: graph.orders[i] for i in loop.participants}
    return colored_loop_partition(loop.length, loop.colors, moduli)


def fiber_loop_count(graph: HSColoredGraph, i: int) -> int:
    """Number of loops meeting fiber i; equals |fiber| / contribution."""
    count = sum(1 for loop in graph.loops() if i in loop.participants)
    fiber_size = len(graph.fiber(i))
    per_loop = graph.o_n // graph.orders[i]
    if count * per_loop != fiber_size:
        raise AssertionError(
            f"fiber {i}: {count} loops x {per_loop} != {fiber_size}")
    return count
