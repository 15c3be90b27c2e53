"""Independent brute-force oracles used to pin down library behavior.

Everything here recomputes results from first principles (letter-by-letter
tracing, exhaustive scans, repeated-pass reduction) so the tests do not
reuse the code paths they are checking.
"""

from __future__ import annotations

from fractions import Fraction

from hsforge.schreier import CosetTable
from hsforge.words import Letter, Word, word
from hsforge.zcover import ZPartition


def naive_reduce(letters: list[Letter]) -> list[Letter]:
    """Free reduction by repeated full scans instead of a single stack pass."""
    current = list(letters)
    changed = True
    while changed:
        changed = False
        for i in range(len(current) - 1):
            if current[i] == current[i + 1].inverse():
                del current[i:i + 2]
                changed = True
                break
    return current


def reduced_words_up_to(rank: int, max_len: int) -> list[Word]:
    """Every freely reduced word of length <= max_len, including the identity."""
    columns = range(2 * rank)
    out = [word(rank, [])]
    layer: list[tuple[Letter, ...]] = [()]
    for _ in range(max_len):
        grown = []
        for letters in layer:
            for c in columns:
                nxt = Letter(c // 2 + 1, 1 if c % 2 == 0 else -1)
                if letters and letters[-1] == nxt.inverse():
                    continue
                grown.append(letters + (nxt,))
        out.extend(word(rank, ls) for ls in grown)
        layer = grown
    return out


def trace_letters(table: CosetTable, start: int, w: Word) -> int:
    """Trace a word through the table one letter at a time, using raw rows."""
    v = start
    for letter in w.letters:
        v = table.delta[v][letter.column]
    return v


def perm_by_tracing(table: CosetTable, w: Word) -> list[int]:
    return [trace_letters(table, v, w) for v in range(table.degree)]


def order_by_iteration(table: CosetTable, w: Word, vertex: int) -> int:
    """Smallest k >= 1 with vertex·w^k = vertex, by stepping one w at a time."""
    v = trace_letters(table, vertex, w)
    k = 1
    while v != vertex:
        v = trace_letters(table, v, w)
        k += 1
    return k


def covering_counts(specs, words) -> list[int]:
    """For each word, in how many blocks it lies (membership by tracing)."""
    counts = []
    for w in words:
        hits = 0
        for spec in specs:
            rep_end = trace_letters(spec.table, 0, spec.rep)
            if trace_letters(spec.table, 0, w) == rep_end:
                hits += 1
        counts.append(hits)
    return counts


def z_cover_scan(z: ZPartition, limit: int) -> int | None:
    """First integer in [0, limit) not covered exactly once, else None."""
    for n in range(limit):
        hits = sum(1 for c in z.classes if n % c.modulus == c.residue)
        if hits != 1:
            return n
    return None


def rho_recomputed(p, q) -> Fraction:
    """The distance from the sorted table sequences, written independently."""
    left = [(t.degree, t.key()) for t in p.tables_descending()]
    right = [(t.degree, t.key()) for t in q.tables_descending()]
    place = 1
    for a, b in zip(left, right):
        if a != b:
            return Fraction(1, 2**place)
        place += 1
    if len(left) != len(right):
        return Fraction(1, 2**place)
    return Fraction(0)


def partition_signature(p) -> tuple:
    """Blocks as (table delta, marked vertex) pairs, order-independent."""
    return tuple(sorted((s.table.delta, s.marked) for s in p.specs))
