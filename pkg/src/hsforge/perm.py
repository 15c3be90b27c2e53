"""Permutations of table vertices and the groups they generate.

Permutations act on the right: evaluating a word letter by letter composes
the letter permutations left to right, so eval(g, u*v) = eval(g, u) followed
by eval(g, v).  Groups are enumerated breadth-first from the identity over
the signed letters, recording for every element a shortest witness word that
evaluates to it; enumeration past a cap raises CapExceeded.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm

from .schreier import CosetTable, word_step
from .words import Word, identity, letter_from_column, word

__all__ = [
    "CapExceeded",
    "Permutation",
    "PermGroup",
    "transition_group",
    "eval_word",
    "max_cycle_length",
    "cycle_type_census",
    "has_k_cycle_at",
]

DEFAULT_GROUP_CAP = 10**6


class CapExceeded(Exception):
    def __init__(self, cap: int, message: str = "enumeration exceeded cap"):
        super().__init__(f"{message} ({cap})")
        self.cap = cap


@dataclass(frozen=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"{self.images} is not a permutation")

    @staticmethod
    def identity(degree: int) -> "Permutation":
        return Permutation(tuple(range(degree)))

    @property
    def degree(self) -> int:
        return len(self.images)

    @property
    def is_identity(self) -> bool:
        return all(i == v for i, v in enumerate(self.images))

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: "Permutation") -> "Permutation":
        """self then other (right-action composition)."""
        return Permutation(tuple(other.images[v] for v in self.images))

    def inverse(self) -> "Permutation":
        out = [0] * len(self.images)
        for v, image in enumerate(self.images):
            out[image] = v
        return Permutation(tuple(out))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cycle = [start]
            seen[start] = True
            v = self.images[start]
            while v != start:
                seen[v] = True
                cycle.append(v)
                v = self.images[v]
            out.append(tuple(cycle))
        return out

    def cycle_through(self, point: int) -> int:
        """Length of the cycle containing point."""
        length = 1
        v = self.images[point]
        while v != point:
            v = self.images[v]
            length += 1
        return length

    def order(self) -> int:
        return lcm(*(len(c) for c in self.cycles()))


class PermGroup:
    """Group generated by one permutation per free-group generator."""

    def __init__(self, degree: int, gens: tuple[Permutation, ...]):
        if not gens:
            raise ValueError("need at least one generator")
        for g in gens:
            if g.degree != degree:
                raise ValueError(f"degree mismatch: {g.degree} != {degree}")
        self.degree = degree
        self.gens = tuple(gens)
        self.rank = len(gens)
        self._elements: dict[Permutation, Word] | None = None

    def enumerate(self, cap: int = DEFAULT_GROUP_CAP) -> dict[Permutation, Word]:
        """Closure with shortest witness words; cached after first success."""
        if self._elements is not None:
            return self._elements
        steps = []
        for j, g in enumerate(self.gens):
            steps.append((letter_from_column(2 * j), g))
            steps.append((letter_from_column(2 * j + 1), g.inverse()))
        start = Permutation.identity(self.degree)
        elements: dict[Permutation, Word] = {start: identity(self.rank)}
        queue = [start]
        head = 0
        while head < len(queue):
            current = queue[head]
            head += 1
            current_word = elements[current]
            for letter, g in steps:
                image = current * g
                if image not in elements:
                    if len(elements) >= cap:
                        raise CapExceeded(cap, "transition group larger than cap")
                    elements[image] = word(
                        self.rank, current_word.letters + (letter,))
                    queue.append(image)
        self._elements = elements
        return elements

    def order(self, cap: int = DEFAULT_GROUP_CAP) -> int:
        return len(self.enumerate(cap))

    def witness(self, element: Permutation, cap: int = DEFAULT_GROUP_CAP) -> Word:
        return self.enumerate(cap)[element]


def transition_group(table: CosetTable) -> PermGroup:
    """Permutations of table vertices induced by the generators."""
    gens = []
    for j in range(table.rank):
        gens.append(Permutation(tuple(row[2 * j] for row in table.delta)))
    return PermGroup(table.degree, tuple(gens))


def eval_word(group: PermGroup, w: Word) -> Permutation:
    if w.rank != group.rank:
        raise ValueError(f"word rank {w.rank} != group rank {group.rank}")
    out = Permutation.identity(group.degree)
    for letter in w.letters:
        g = group.gens[letter.generator - 1]
        out = out * (g if letter.sign > 0 else g.inverse())
    return out


def table_permutation(table: CosetTable, w: Word) -> Permutation:
    return Permutation(word_step(table, w))


def max_cycle_length(
    group: PermGroup, cap: int = DEFAULT_GROUP_CAP
) -> tuple[int, Word]:
    """Longest cycle over all elements of the closure, with a witness word.

    Among witnesses the one whose element was enumerated first is returned,
    so the result is deterministic.  The trivial group yields (1, identity).
    """
    best = 1
    best_word = identity(group.rank)
    for element, wit in group.enumerate(cap).items():
        longest = max(len(c) for c in element.cycles())
        if longest > best:
            best = longest
            best_word = wit
    return best, best_word


def cycle_type_census(
    group: PermGroup, cap: int = DEFAULT_GROUP_CAP
) -> list[tuple[tuple[int, ...], int, Word]]:
    """Multiset of cycle types over the closure, one witness word per type.

    A cycle type is the ascending tuple of cycle lengths (fixed points
    included).  Returns (type, count, witness) triples sorted by type, the
    witness being the shortest word whose element was enumerated first.
    """
    counts: dict[tuple[int, ...], int] = {}
    witnesses: dict[tuple[int, ...], Word] = {}
    for element, wit in group.enumerate(cap).items():
        shape = tuple(sorted(len(c) for c in element.cycles()))
        counts[shape] = counts.get(shape, 0) + 1
        witnesses.setdefault(shape, wit)
    return [(shape, counts[shape], witnesses[shape]) for shape in sorted(counts)]


def has_k_cycle_at(
    group: PermGroup, k: int, point: int, cap: int = DEFAULT_GROUP_CAP
) -> Word | None:
    """Witness word whose permutation has a k-cycle through point, if any."""
    if not 1 <= k <= group.degree:
        raise ValueError(f"cycle length {k} out of range for degree {group.degree}")
    if not 0 <= point < group.degree:
        raise ValueError(f"point {point} out of range")
    for element, wit in group.enumerate(cap).items():
        if element.cycle_through(point) == k:
            return wit
    return None
