"""Coset automata of finitely generated subgroups of free groups.

A subgroup given by generator words is turned into a folded labeled graph
(vertices = cosets reached so far, edges = generator transitions).  When the
folded graph is complete the subgroup has finite index and the graph is a
complete deterministic transition table on d vertices; vertices are numbered
canonically by breadth-first search from the basepoint in column order
(a < a^-1 < b < b^-1 < ...), so two tables are equal as values exactly when
they describe the same subgroup.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm

from .words import Letter, Word, identity, letter_from_column, word

__all__ = [
    "InfiniteIndex",
    "StallingsGraph",
    "CosetTable",
    "fold_from_generators",
    "try_complete",
    "trace",
    "coset_of",
    "transversal",
    "order_at",
    "visited_set",
    "word_step",
    "WFunctionalGraph",
    "w_graph",
]


class InfiniteIndex(Exception):
    """The folded graph is incomplete: the subgroup has infinite index."""


@dataclass(frozen=True)
class StallingsGraph:
    """Folded, possibly incomplete transition graph with basepoint 0.

    ``rows[v]`` has one entry per column; ``None`` marks a missing transition.
    """

    rank: int
    rows: tuple[tuple[int | None, ...], ...]

    @property
    def vertex_count(self) -> int:
        return len(self.rows)

    @property
    def is_complete(self) -> bool:
        return all(target is not None for row in self.rows for target in row)


@dataclass(frozen=True)
class CosetTable:
    """Complete deterministic inverse-consistent table, canonically numbered."""

    rank: int
    delta: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        columns = 2 * self.rank
        d = len(self.delta)
        for row in self.delta:
            if len(row) != columns:
                raise ValueError(f"row has {len(row)} entries, expected {columns}")
            for target in row:
                if not 0 <= target < d:
                    raise ValueError(f"vertex {target} out of range")
        for v in range(d):
            for c in range(columns):
                back = c + 1 if c % 2 == 0 else c - 1
                if self.delta[self.delta[v][c]][back] != v:
                    raise ValueError(
                        f"inverse inconsistency at vertex {v}, column {c}")

    @property
    def degree(self) -> int:
        return len(self.delta)

    def key(self) -> tuple[int, ...]:
        """Flat form used for ordering tables of equal degree."""
        return tuple(t for row in self.delta for t in row)


def _canonical_rows(
    rank: int, rows: list[dict[int, int]], basepoint: int
) -> tuple[tuple[int | None, ...], ...]:
    """Renumber by BFS from the basepoint in column order; drop unreachable."""
    columns = 2 * rank
    number = {basepoint: 0}
    order = [basepoint]
    head = 0
    while head < len(order):
        v = order[head]
        head += 1
        for c in range(columns):
            target = rows[v].get(c)
            if target is not None and target not in number:
                number[target] = len(order)
                order.append(target)
    out = []
    for v in order:
        out.append(tuple(
            number[rows[v][c]] if c in rows[v] else None for c in range(columns)))
    return tuple(out)


class _Folder:
    """Union-find folding of a partial transition graph."""

    def __init__(self, rank: int) -> None:
        self.rank = rank
        self.parent: list[int] = []
        self.size: list[int] = []
        self.out: list[dict[int, int]] = []
        self.pending: list[tuple[int, int]] = []

    def new_vertex(self) -> int:
        v = len(self.parent)
        self.parent.append(v)
        self.size.append(1)
        self.out.append({})
        return v

    def find(self, v: int) -> int:
        root = v
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[v] != root:
            self.parent[v], v = root, self.parent[v]
        return root

    def _set_edge(self, u: int, column: int, v: int) -> None:
        u, v = self.find(u), self.find(v)
        existing = self.out[u].get(column)
        if existing is None:
            self.out[u][column] = v
        elif self.find(existing) != v:
            self.pending.append((existing, v))

    def add_edge(self, u: int, letter: Letter, v: int) -> None:
        self._set_edge(u, letter.column, v)
        self._set_edge(v, letter.inverse().column, u)
        self._drain()

    def _drain(self) -> None:
        while self.pending:
            a, b = self.pending.pop()
            a, b = self.find(a), self.find(b)
            if a == b:
                continue
            if self.size[a] < self.size[b]:
                a, b = b, a
            self.parent[b] = a
            self.size[a] += self.size[b]
            edges = self.out[b]
            self.out[b] = {}
            for column, target in edges.items():
                self._set_edge(a, column, target)

    def graph(self, basepoint: int) -> StallingsGraph:
        roots = sorted({self.find(v) for v in range(len(self.parent))})
        index = {root: i for i, root in enumerate(roots)}
        rows = [
            {column: index[self.find(t)] for column, t in self.out[root].items()}
            for root in roots
        ]
        canonical = _canonical_rows(self.rank, rows, index[self.find(basepoint)])
        return StallingsGraph(self.rank, canonical)


def fold_from_generators(rank: int, generators: list[Word]) -> StallingsGraph:
    """Fold the wedge of generator loops into the subgroup's transition graph."""
    folder = _Folder(rank)
    base = folder.new_vertex()
    for gen in generators:
        if gen.rank != rank:
            raise ValueError(f"generator rank {gen.rank} != {rank}")
        if gen.is_identity:
            continue
        prev = base
        for letter in gen.letters[:-1]:
            nxt = folder.new_vertex()
            folder.add_edge(prev, letter, nxt)
            prev = nxt
        folder.add_edge(prev, gen.letters[-1], base)
    return folder.graph(base)


def refold(graph: StallingsGraph) -> StallingsGraph:
    """Re-run folding on the edges of an already folded graph (idempotence)."""
    folder = _Folder(graph.rank)
    for _ in range(graph.vertex_count):
        folder.new_vertex()
    for v, row in enumerate(graph.rows):
        for column in range(0, 2 * graph.rank, 2):
            if row[column] is not None:
                folder.add_edge(v, letter_from_column(column), row[column])
    return folder.graph(folder.find(0))


def try_complete(graph: StallingsGraph) -> CosetTable:
    """Interpret a folded graph as a complete table, or fail with InfiniteIndex."""
    if not graph.is_complete:
        missing = next(
            (v, c)
            for v, row in enumerate(graph.rows)
            for c, t in enumerate(row)
            if t is None
        )
        raise InfiniteIndex(
            f"no transition at vertex {missing[0]}, column {missing[1]}: "
            "subgroup has infinite index")
    return CosetTable(graph.rank, tuple(
        tuple(t for t in row if t is not None) for row in graph.rows))


def table_from_generators(rank: int, generators: list[Word]) -> CosetTable:
    return try_complete(fold_from_generators(rank, generators))


def canonicalize(table: CosetTable, basepoint: int = 0) -> CosetTable:
    """Renumber by BFS from the basepoint; fails if not connected."""
    columns = 2 * table.rank
    number = {basepoint: 0}
    order = [basepoint]
    head = 0
    while head < len(order):
        v = order[head]
        head += 1
        for c in range(columns):
            t = table.delta[v][c]
            if t not in number:
                number[t] = len(order)
                order.append(t)
    if len(order) != table.degree:
        raise ValueError("table is not connected from the basepoint")
    rows = []
    for v in order:
        rows.append(tuple(number[table.delta[v][c]] for c in range(columns)))
    return CosetTable(table.rank, tuple(rows))


def trace(table: CosetTable, start: int, w: Word) -> int:
    if not 0 <= start < table.degree:
        raise ValueError(f"vertex {start} out of range")
    v = start
    for letter in w.letters:
        v = table.delta[v][letter.column]
    return v


def coset_of(table: CosetTable, w: Word) -> int:
    return trace(table, 0, w)


def transversal(table: CosetTable) -> list[Word]:
    """Minimal coset representative words, one per vertex, via BFS from 0.

    Canonical numbering makes ``transversal(t)[i]`` the BFS discovery word
    of vertex i; each word has minimal length among words reaching i.
    """
    reps: list[Word | None] = [None] * table.degree
    reps[0] = identity(table.rank)
    queue = [0]
    head = 0
    while head < len(queue):
        v = queue[head]
        head += 1
        for column in range(2 * table.rank):
            target = table.delta[v][column]
            if reps[target] is None:
                reps[target] = word(
                    table.rank, reps[v].letters + (letter_from_column(column),))
                queue.append(target)
    return [rep for rep in reps if rep is not None]


def word_step(table: CosetTable, w: Word) -> tuple[int, ...]:
    """The permutation of vertices induced by one application of w."""
    return tuple(trace(table, v, w) for v in range(table.degree))


def order_at(table: CosetTable, w: Word, vertex: int) -> int:
    """Minimal k >= 1 with trace(vertex, w^k) == vertex."""
    step = word_step(table, w)
    k = 1
    v = step[vertex]
    while v != vertex:
        v = step[v]
        k += 1
    return k


def visited_set(table: CosetTable, w: Word, vertex: int) -> frozenset[int]:
    """Orbit {vertex * w^k} of the vertex under the w-step.

    Its size equals order_at(table, w, vertex), and the orbits of any two
    vertices are equal or disjoint, partitioning the vertex set.
    """
    if not 0 <= vertex < table.degree:
        raise ValueError(f"vertex {vertex} out of range")
    step = word_step(table, w)
    seen = {vertex}
    v = step[vertex]
    while v != vertex:
        seen.add(v)
        v = step[v]
    return frozenset(seen)


@dataclass(frozen=True)
class WFunctionalGraph:
    """Vertices of a table with the single-step action of a fixed word."""

    table: CosetTable
    w: Word
    step: tuple[int, ...]

    def cycles(self) -> list[tuple[int, ...]]:
        """Cycle decomposition; each cycle starts at its minimal vertex,
        cycles listed in order of that vertex."""
        seen = [False] * len(self.step)
        out = []
        for start in range(len(self.step)):
            if seen[start]:
                continue
            cycle = [start]
            seen[start] = True
            v = self.step[start]
            while v != start:
                seen[v] = True
                cycle.append(v)
                v = self.step[v]
            out.append(tuple(cycle))
        return out


def w_graph(table: CosetTable, w: Word) -> WFunctionalGraph:
    return WFunctionalGraph(table, w, word_step(table, w))


def orders_lcm(table: CosetTable, w: Word) -> int:
    """lcm of order_at over all vertices = order of the induced permutation."""
    return lcm(*(len(c) for c in w_graph(table, w).cycles()))
