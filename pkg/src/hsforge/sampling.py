"""Random instances for fuzzing: words, tables, quotient partitions, covers.

Everything takes an explicit random.Random so runs are reproducible.  Random
tables are built as the transitive component of random vertex permutations;
their subgroups are recovered through spanning-tree generators, which also
exercises folding round trips.
"""

from __future__ import annotations

import random

from .partition import CosetPartition, lift_partition
from .perm import CapExceeded, PermGroup, Permutation
from .schreier import CosetTable, canonicalize, transversal
from .words import Word, identity, letter_from_column, multiply, word
from .zcover import ZPartition, split_class, zpartition

__all__ = [
    "random_word",
    "random_table",
    "spanning_generators",
    "random_quotient",
    "random_quotient_partition",
    "random_lifted_partition",
    "random_split_chain",
]


def random_word(rng: random.Random, rank: int, max_len: int) -> Word:
    length = rng.randint(0, max_len)
    letters = [letter_from_column(rng.randrange(2 * rank)) for _ in range(length)]
    return word(rank, letters)


def random_nonempty_word(rng: random.Random, rank: int, max_len: int) -> Word:
    while True:
        w = random_word(rng, rank, max_len)
        if not w.is_identity:
            return w


def random_table(rng: random.Random, rank: int, max_index: int) -> CosetTable:
    """Transitive component of the basepoint under random permutations."""
    d = rng.randint(1, max_index)
    perms = []
    for _ in range(rank):
        images = list(range(d))
        rng.shuffle(images)
        perms.append(Permutation(tuple(images)))
    rows = []
    for v in range(d):
        row = []
        for g in perms:
            row.append(g.images[v])
            row.append(g.inverse().images[v])
        rows.append(tuple(row))
    component = {0}
    queue = [0]
    while queue:
        v = queue.pop()
        for target in rows[v]:
            if target not in component:
                component.add(target)
                queue.append(target)
    order = sorted(component)
    number = {v: i for i, v in enumerate(order)}
    sub_rows = tuple(
        tuple(number[t] for t in rows[v]) for v in order)
    return canonicalize(CosetTable(rank, sub_rows), 0)


def spanning_generators(table: CosetTable) -> list[Word]:
    """Nontrivial Schreier generators t_v x (t_vx)^-1 over the BFS tree."""
    reps = transversal(table)
    out = []
    for v in range(table.degree):
        for j in range(table.rank):
            letter = letter_from_column(2 * j)
            target = table.delta[v][2 * j]
            gen = multiply(
                multiply(reps[v], Word(table.rank, (letter,))), ~reps[target])
            # tree edges reduce to the identity and are skipped
            if not gen.is_identity:
                out.append(gen)
    return out


def random_quotient(
    rng: random.Random, rank: int, max_degree: int, max_order: int
) -> PermGroup:
    while True:
        degree = rng.randint(1, max_degree)
        gens = []
        for _ in range(rank):
            images = list(range(degree))
            rng.shuffle(images)
            gens.append(Permutation(tuple(images)))
        group = PermGroup(degree, tuple(gens))
        try:
            group.enumerate(max_order)
        except CapExceeded:
            continue
        return group


def _closure_in(
    seed: list[Permutation], one: Permutation
) -> frozenset[Permutation]:
    elements = {one}
    queue = [one]
    while queue:
        current = queue.pop()
        for g in seed:
            for image in (current * g, current * g.inverse()):
                if image not in elements:
                    elements.add(image)
                    queue.append(image)
    return frozenset(elements)


def random_quotient_partition(
    rng: random.Random, quotient: PermGroup, max_refinements: int = 3
) -> list[tuple[frozenset[Permutation], Permutation]]:
    """Partition the quotient into subgroup cosets by repeated refinement."""
    elements = list(quotient.enumerate())
    one = Permutation.identity(quotient.degree)
    blocks: list[tuple[frozenset[Permutation], Permutation]] = [
        (frozenset(elements), one)]
    for _ in range(rng.randint(1, max_refinements)):
        splittable = [i for i, (k, _) in enumerate(blocks) if len(k) > 1]
        if not splittable:
            break
        which = rng.choice(splittable)
        sub, rep = blocks.pop(which)
        members = sorted(sub, key=lambda x: x.images)
        smaller = frozenset([one])
        for _ in range(4):
            seed = [rng.choice(members) for _ in range(rng.randint(1, 2))]
            candidate = _closure_in(seed, one)
            if candidate < sub:
                smaller = candidate
                break
        covered: set[Permutation] = set()
        for element in members:
            if element in covered:
                continue
            coset = frozenset(x * element for x in smaller)
            covered |= coset
            blocks.append((smaller, element * rep))
    return blocks


def random_lifted_partition(
    rng: random.Random,
    rank: int,
    max_degree: int = 6,
    max_order: int = 64,
    max_refinements: int = 3,
) -> CosetPartition:
    quotient = random_quotient(rng, rank, max_degree, max_order)
    blocks = random_quotient_partition(rng, quotient, max_refinements)
    return lift_partition(rank, quotient, blocks)


def random_split_chain(
    rng: random.Random, max_period: int = 10**4, max_steps: int = 8
) -> ZPartition:
    """Refine {Z} by repeatedly splitting a random class by a random prime."""
    z = zpartition([(1, 0)])
    steps = rng.randint(1, max_steps)
    for _ in range(steps):
        which = rng.randrange(len(z.classes))
        q = rng.choice((2, 2, 2, 3, 3, 5, 7))
        if z.classes[which].modulus * q > max_period:
            continue
        candidate = split_class(z, which, q)
        if candidate.period <= max_period:
            z = candidate
    return z
