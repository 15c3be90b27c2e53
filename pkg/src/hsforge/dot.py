"""Deterministic DOT renderings of tables, folded graphs, and loop graphs.

Vertices are labeled with their minimal representative words, edges carry
positive letters only (inverse edges are implied), and the basepoint is drawn
as a double circle.  All output is sorted, so equal inputs give equal bytes.
"""

from __future__ import annotations

from .hsgraph import HSColoredGraph
from .schreier import CosetTable, StallingsGraph, WFunctionalGraph, transversal
from .words import letter_from_column

__all__ = ["table_dot", "stallings_dot", "wgraph_dot", "hs_dot"]

_PALETTE = (
    "lightblue", "lightsalmon", "palegreen", "gold", "plum", "khaki",
    "lightcyan", "mistyrose", "lavender", "wheat",
)


def _positive_edges(rows, rank: int):
    for v, row in enumerate(rows):
        for column in range(0, 2 * rank, 2):
            target = row[column]
            if target is not None:
                yield v, letter_from_column(column).char(), target


def table_dot(table: CosetTable, name: str = "table") -> str:
    lines = [f"digraph {name} {{", "  rankdir=LR;"]
    reps = transversal(table)
    for v in range(table.degree):
        shape = "doublecircle" if v == 0 else "circle"
        lines.append(f'  v{v} [label="{reps[v]}", shape={shape}];')
    for v, char, target in sorted(_positive_edges(table.delta, table.rank)):
        lines.append(f'  v{v} -> v{target} [label="{char}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def stallings_dot(graph: StallingsGraph, name: str = "folded") -> str:
    lines = [f"digraph {name} {{", "  rankdir=LR;"]
    for v in range(graph.vertex_count):
        shape = "doublecircle" if v == 0 else "circle"
        lines.append(f'  v{v} [label="{v}", shape={shape}];')
    for v, char, target in sorted(_positive_edges(graph.rows, graph.rank)):
        lines.append(f'  v{v} -> v{target} [label="{char}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def wgraph_dot(graph: WFunctionalGraph, name: str = "wstep") -> str:
    lines = [f"digraph {name} {{", "  rankdir=LR;"]
    reps = transversal(graph.table)
    for v in range(graph.table.degree):
        shape = "doublecircle" if v == 0 else "circle"
        lines.append(f'  v{v} [label="{reps[v]}", shape={shape}];')
    for v, target in enumerate(graph.step):
        lines.append(f'  v{v} -> v{target} [label="{graph.w}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def hs_dot(graph: HSColoredGraph, name: str = "loops") -> str:
    """Two layers: the refinement cosets grouped into one cluster per block
    (the fibers), above one node per block with its own single-step action."""
    lines = [f"digraph {name} {{", "  rankdir=LR;", "  compound=true;"]
    reps = transversal(graph.table)
    for i, spec in enumerate(graph.partition.specs):
        fill = _PALETTE[i % len(_PALETTE)]
        lines.append(f"  subgraph cluster_{i} {{")
        lines.append(f'    label="block {i}: index {spec.index}";')
        lines.append("    style=filled;")
        lines.append(f"    fillcolor={fill};")
        for v in graph.fiber(i):
            shape = "doublecircle" if v == 0 else "circle"
            lines.append(f'    v{v} [label="{reps[v]}", shape={shape}];')
        lines.append("  }")
    for v, target in enumerate(graph.step):
        lines.append(f'  v{v} -> v{target} [label="{graph.w}"];')
    for i, spec in enumerate(graph.partition.specs):
        fill = _PALETTE[i % len(_PALETTE)]
        lines.append(
            f'  b{i} [label="block {i}: index {spec.index}, returns after '
            f'({graph.w})^{graph.orders[i]}", shape=box, '
            f"style=filled, fillcolor={fill}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
