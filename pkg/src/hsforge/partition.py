"""Coset partitions of a free group and the machinery to certify them.

A block is a coset H*alpha given by the subgroup's transition table and a
representative word; its marked vertex is the coset containing alpha.  A
family of blocks partitions the group exactly when, in the product automaton
of all tables started at the basepoint tuple, every reachable state sits at
the marked vertex of exactly one block.  On top of validation this module
computes normal cores, the common refinement subgroup N, the right action of
words on partitions, a prefix metric on partitions, and partitions lifted
from finite quotient groups.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .perm import (
    CapExceeded,
    PermGroup,
    Permutation,
    eval_word,
    transition_group,
)
from .schreier import (
    CosetTable,
    canonicalize,
    coset_of,
    order_at,
    trace,
    transversal,
)
from .words import Word, identity, letter_from_column, multiply, word

__all__ = [
    "StateCapExceeded",
    "EmptyWord",
    "NotAPartition",
    "CosetSpec",
    "CosetPartition",
    "coset_partition",
    "ProductAutomaton",
    "product",
    "ValidationReport",
    "validate",
    "multiplicity",
    "order_rel",
    "o_max_and_sharp",
    "normal_core",
    "big_n",
    "act",
    "orbit_size_under",
    "PairIntersectionReport",
    "intersection_conditions",
    "rho",
    "separating_subgroup",
    "lift_partition",
]

DEFAULT_STATE_CAP = 10**6


class StateCapExceeded(CapExceeded):
    def __init__(self, cap: int):
        super().__init__(cap, "product automaton larger than cap")


class EmptyWord(ValueError):
    """Raised where a nonempty word is required."""


class NotAPartition(ValueError):
    """The given subsets do not partition the finite group."""


@dataclass(frozen=True)
class CosetSpec:
    """One block H*alpha: the subgroup's table plus a representative word."""

    table: CosetTable
    rep: Word

    def __post_init__(self) -> None:
        if self.rep.rank != self.table.rank:
            raise ValueError(
                f"rep rank {self.rep.rank} != table rank {self.table.rank}")

    @property
    def index(self) -> int:
        return self.table.degree

    @property
    def marked(self) -> int:
        return coset_of(self.table, self.rep)

    def contains(self, w: Word) -> bool:
        return coset_of(self.table, w) == self.marked


class CosetPartition:
    """Blocks sorted ascending by (index, table); reps keep the given order
    among blocks with equal table."""

    def __init__(self, rank: int, specs: Sequence[CosetSpec]):
        if not specs:
            raise ValueError("need at least one block")
        for spec in specs:
            if spec.table.rank != rank:
                raise ValueError(
                    f"block rank {spec.table.rank} != partition rank {rank}")
        self.rank = rank
        self.specs = tuple(
            sorted(specs, key=lambda s: (s.table.degree, s.table.key())))
        self._report: ValidationReport | None = None

    @property
    def size(self) -> int:
        return len(self.specs)

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(spec.index for spec in self.specs)

    def tables_descending(self) -> list[CosetTable]:
        return sorted(
            (spec.table for spec in self.specs),
            key=lambda t: (-t.degree, t.key()))


def coset_partition(rank: int, specs: Iterable[CosetSpec]) -> CosetPartition:
    return CosetPartition(rank, list(specs))


@dataclass(frozen=True)
class ProductAutomaton:
    """Reachable part of the synchronous product of several tables."""

    tables: tuple[CosetTable, ...]
    base: tuple[int, ...]
    states: tuple[tuple[int, ...], ...]
    delta: tuple[tuple[int, ...], ...]
    words: tuple[Word, ...]  # BFS discovery word per state

    @property
    def state_count(self) -> int:
        return len(self.states)

    def as_table(self) -> CosetTable:
        return CosetTable(self.tables[0].rank, self.delta)


def product(
    tables: Sequence[CosetTable],
    base: Sequence[int],
    cap: int = DEFAULT_STATE_CAP,
) -> ProductAutomaton:
    if not tables:
        raise ValueError("need at least one table")
    rank = tables[0].rank
    for t in tables:
        if t.rank != rank:
            raise ValueError("tables must share one rank")
    if len(base) != len(tables):
        raise ValueError("one base vertex per table required")
    start = tuple(base)
    number: dict[tuple[int, ...], int] = {start: 0}
    states = [start]
    words: list[Word] = [identity(rank)]
    rows: list[tuple[int, ...]] = []
    head = 0
    while head < len(states):
        state = states[head]
        state_word = words[head]
        head += 1
        row = []
        for column in range(2 * rank):
            target = tuple(t.delta[v][column] for t, v in zip(tables, state))
            if target not in number:
                if len(states) >= cap:
                    raise StateCapExceeded(cap)
                number[target] = len(states)
                states.append(target)
                words.append(word(
                    rank, state_word.letters + (letter_from_column(column),)))
            row.append(number[target])
        rows.append(tuple(row))
    return ProductAutomaton(
        tuple(tables), start, tuple(states), tuple(rows), tuple(words))


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    state_count: int
    gap_witness: Word | None = None
    overlap_witness: tuple[Word, int, int] | None = None


def validate(p: CosetPartition, cap: int = DEFAULT_STATE_CAP) -> ValidationReport:
    """Every element of the group must lie in exactly one block.

    Witness words are the BFS discovery words of the first bad product state:
    a gap witness lies in no block, an overlap witness in two (reported with
    the two block positions).
    """
    if p._report is not None:
        return p._report
    auto = product([spec.table for spec in p.specs], [0] * p.size, cap)
    marked = tuple(spec.marked for spec in p.specs)
    for state, state_word in zip(auto.states, auto.words):
        hits = [i for i, (v, m) in enumerate(zip(state, marked)) if v == m]
        if not hits:
            return ValidationReport(False, auto.state_count, gap_witness=state_word)
        if len(hits) > 1:
            return ValidationReport(
                False, auto.state_count,
                overlap_witness=(state_word, hits[0], hits[1]))
    report = ValidationReport(True, auto.state_count)
    p._report = report
    return report


def multiplicity(p: CosetPartition) -> set[int]:
    """Index values shared by at least two blocks."""
    counts: dict[int, int] = {}
    for spec in p.specs:
        counts[spec.index] = counts.get(spec.index, 0) + 1
    return {d for d, c in counts.items() if c >= 2}


def order_rel(p: CosetPartition, i: int, w: Word) -> int:
    """Minimal k >= 1 with H_i alpha_i w^k = H_i alpha_i (block i, 0-based)."""
    spec = p.specs[i]
    return order_at(spec.table, w, spec.marked)


def o_max_and_sharp(p: CosetPartition, w: Word) -> tuple[int, int]:
    orders = [order_rel(p, i, w) for i in range(p.size)]
    o_max = max(orders)
    return o_max, orders.count(o_max)


def normal_core(table: CosetTable, cap: int = 10**6) -> CosetTable:
    """Table of the largest normal subgroup inside the table's subgroup.

    This is the Cayley graph of the transition group acting on itself by
    right multiplication, so the core's index equals the group order.
    """
    group = transition_group(table)
    elements = group.enumerate(cap)
    order = list(elements)
    number = {element: i for i, element in enumerate(order)}
    steps = []
    for j in range(group.rank):
        steps.append(group.gens[j])
        steps.append(group.gens[j].inverse())
    rows = []
    for element in order:
        rows.append(tuple(number[element * step] for step in steps))
    raw = CosetTable(table.rank, tuple(rows))
    # enumeration order is already the BFS order from the identity, but
    # renumber anyway so the result is canonical by construction
    return canonicalize(raw, 0)


def big_n(
    p: CosetPartition,
    group_cap: int = 10**6,
    state_cap: int = DEFAULT_STATE_CAP,
) -> CosetTable:
    """Table of N = intersection of the normal cores of all blocks."""
    cores = [normal_core(spec.table, group_cap) for spec in p.specs]
    auto = product(cores, [0] * len(cores), state_cap)
    return canonicalize(auto.as_table(), 0)


def act(p: CosetPartition, w: Word) -> CosetPartition:
    """Right action: every representative is multiplied by w."""
    out = CosetPartition(
        p.rank,
        [CosetSpec(spec.table, multiply(spec.rep, w)) for spec in p.specs])
    out._report = p._report  # tables unchanged: validity is preserved
    return out


def orbit_size_under(p: CosetPartition, w: Word) -> int:
    """Size of the orbit of p under repeated action of w."""
    return lcm(*(order_rel(p, i, w) for i in range(p.size)))


@dataclass(frozen=True)
class PairIntersectionReport:
    pair: tuple[int, int]
    index_all: int
    index_without: int
    strict_refinement: bool      # intersecting the pair drops the index further
    lcm_obstruction: bool        # lcm(d_j, d_k) does not divide index_without
    condition_holds: bool
    subgroups_equal: bool | None  # tables compared when the condition fires


def intersection_conditions(
    p: CosetPartition, j: int, k: int, cap: int = DEFAULT_STATE_CAP
) -> PairIntersectionReport:
    """Compare the intersection of all conjugated blocks against the one
    omitting blocks j and k.

    The conjugate of block i is the stabilizer of its marked vertex, so the
    product automata are based at the marked tuples.  If omitting the pair
    strictly lowers the index, or lcm(d_j, d_k) fails to divide the partial
    index, the two subgroups must coincide; that is verified on the spot.
    """
    if p.size < 3:
        raise ValueError("needs at least three blocks")
    if not (0 <= j < k < p.size):
        raise ValueError(f"bad pair ({j}, {k})")
    tables = [spec.table for spec in p.specs]
    marked = [spec.marked for spec in p.specs]
    index_all = product(tables, marked, cap).state_count
    rest_tables = [t for i, t in enumerate(tables) if i not in (j, k)]
    rest_marked = [v for i, v in enumerate(marked) if i not in (j, k)]
    index_without = product(rest_tables, rest_marked, cap).state_count
    strict = index_all > index_without
    pair_lcm = lcm(tables[j].degree, tables[k].degree)
    obstruction = index_without % pair_lcm != 0
    holds = strict or obstruction
    equal = (tables[j] == tables[k]) if holds else None
    return PairIntersectionReport(
        (j, k), index_all, index_without, strict, obstruction, holds, equal)


def rho(p: CosetPartition, q: CosetPartition) -> Fraction:
    """Prefix metric on the descending table sequences (reps are ignored).

    The sequences are compared position by position; a first mismatch at
    position k (1-based) gives 2**-k, identical sequences give 0.  Two
    distinct partitions where one has s blocks are at distance >= 2**-(s+1).
    """
    if p.rank != q.rank:
        raise ValueError("partitions must share one rank")
    left = p.tables_descending()
    right = q.tables_descending()
    for position, (a, b) in enumerate(zip(left, right), start=1):
        if a != b:
            return Fraction(1, 2**position)
    if len(left) != len(right):
        return Fraction(1, 2 ** (min(len(left), len(right)) + 1))
    return Fraction(0)


def separating_subgroup(rank: int, w: Word) -> CosetTable:
    """A finite-index subgroup whose coset automaton separates w from 1.

    The path spelling w is completed to a permutation table: for each
    generator, vertices missing the outgoing edge are matched in ascending
    order with vertices missing the incoming edge, taking the basepoint
    last.  The resulting index is exactly len(w) + 1 and w lies outside
    the subgroup.
    """
    if w.is_identity:
        raise EmptyWord("cannot separate the identity from itself")
    if w.rank != rank:
        raise ValueError(f"word rank {w.rank} != {rank}")
    length = len(w)
    rows: list[dict[int, int]] = [dict() for _ in range(length + 1)]
    for position, letter in enumerate(w.letters):
        rows[position][letter.column] = position + 1
        rows[position + 1][letter.inverse().column] = position
    for column in range(0, 2 * rank, 2):
        sources = [v for v in range(length + 1) if column not in rows[v]]
        targets = [v for v in range(length + 1) if column + 1 not in rows[v]]
        targets = [v for v in targets if v != 0] + [v for v in targets if v == 0]
        for source, target in zip(sources, targets):
            rows[source][column] = target
            rows[target][column + 1] = source
    table = CosetTable(rank, tuple(
        tuple(rows[v][c] for c in range(2 * rank)) for v in range(length + 1)))
    return canonicalize(table, 0)


def lift_partition(
    rank: int,
    quotient: PermGroup,
    sub_partition: Sequence[tuple[Iterable[Permutation], Permutation]],
    cap: int = 10**6,
) -> CosetPartition:
    """Pull a coset partition of a finite quotient back to the free group.

    ``quotient`` must have one generator per free-group generator; each pair
    (K, g) is a subgroup of the quotient with a coset representative.  The
    pulled-back block is the preimage subgroup's table (the action on right
    cosets of K) with the witness word of g as representative.
    """
    if quotient.rank != rank:
        raise ValueError(f"quotient has {quotient.rank} generators, expected {rank}")
    elements = quotient.enumerate(cap)
    every = frozenset(elements)
    one = Permutation.identity(quotient.degree)
    covered: set[Permutation] = set()
    total = 0
    specs = []
    for members, g in sub_partition:
        sub = frozenset(members)
        if one not in sub:
            raise NotAPartition("subgroup must contain the identity")
        if not sub <= every:
            raise NotAPartition("subgroup leaves the quotient")
        for x in sub:
            for y in sub:
                if x * y not in sub:
                    raise NotAPartition("subset not closed under multiplication")
        if g not in every:
            raise NotAPartition("representative leaves the quotient")
        coset = frozenset(x * g for x in sub)
        covered |= coset
        total += len(coset)
        specs.append((_coset_action_table(rank, quotient, sub), elements[g]))
    if covered != every or total != len(every):
        raise NotAPartition("cosets do not partition the quotient")
    return CosetPartition(rank, [CosetSpec(t, rep) for t, rep in specs])


def _coset_action_table(
    rank: int, quotient: PermGroup, sub: frozenset[Permutation]
) -> CosetTable:
    elements = quotient.enumerate()
    cosets: dict[Permutation, frozenset[Permutation]] = {}
    number: dict[frozenset[Permutation], int] = {}
    for element in elements:
        coset = frozenset(x * element for x in sub)
        cosets[element] = coset
        if coset not in number:
            number[coset] = len(number)
    base = number[cosets[Permutation.identity(quotient.degree)]]
    steps = []
    for j in range(rank):
        steps.append(quotient.gens[j])
        steps.append(quotient.gens[j].inverse())
    reps = {number[coset]: min(coset, key=lambda x: x.images) for coset in number}
    rows = []
    for v in range(len(number)):
        rep = reps[v]
        rows.append(tuple(number[cosets[rep * step]] for step in steps))
    return canonicalize(CosetTable(rank, tuple(rows)), base)
