"""Shared fixtures: the worked-example tables and partitions, plus strategies."""

from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from hsforge.partition import CosetPartition, CosetSpec
from hsforge.schreier import CosetTable, table_from_generators
from hsforge.words import Word, letter_from_column, parse_word, word

settings.register_profile(
    "suite", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("suite")


def P(text: str, rank: int = 2) -> Word:
    return parse_word(rank, text)


def gens(rank: int, texts: list[str]) -> list[Word]:
    return [parse_word(rank, t) for t in texts]


# Index-3 subgroup of F_2 where a swaps the first two cosets and b the last two.
G_GENERATORS = ["b", "aa", "abba", "ababab"]
# Index-4 subgroup of F_2 whose transition group contains a 4-cycle.
K_GENERATORS = ["b", "aa", "abba", "abaaba", "abababa"]
# Index-2 subgroup of F_2 containing b.
H1_GENERATORS = ["b", "aa", "abA"]
# Normal subgroup of index 4 (the transition group is the Klein four-group).
M_DELTA = ((1, 1, 2, 2), (0, 0, 3, 3), (3, 3, 0, 0), (2, 2, 1, 1))


@pytest.fixture(scope="session")
def g_table() -> CosetTable:
    return table_from_generators(2, gens(2, G_GENERATORS))


@pytest.fixture(scope="session")
def k_table() -> CosetTable:
    return table_from_generators(2, gens(2, K_GENERATORS))


@pytest.fixture(scope="session")
def h1_table() -> CosetTable:
    return table_from_generators(2, gens(2, H1_GENERATORS))


@pytest.fixture(scope="session")
def m_table() -> CosetTable:
    return CosetTable(2, M_DELTA)


@pytest.fixture(scope="session")
def p44(h1_table, k_table) -> CosetPartition:
    """Partition of F_2 into one index-2 and two index-4 cosets (non-normal)."""
    return CosetPartition(2, [
        CosetSpec(h1_table, P("1")),
        CosetSpec(k_table, P("a")),
        CosetSpec(k_table, P("ab")),
    ])


@pytest.fixture(scope="session")
def p77(h1_table, m_table) -> CosetPartition:
    """Partition of F_2 into one index-2 and two index-4 cosets (normal)."""
    return CosetPartition(2, [
        CosetSpec(h1_table, P("1")),
        CosetSpec(m_table, P("a")),
        CosetSpec(m_table, P("ab")),
    ])


@pytest.fixture(scope="session")
def p333(g_table) -> CosetPartition:
    """Partition of F_2 into the three cosets of one index-3 subgroup."""
    return CosetPartition(2, [
        CosetSpec(g_table, P("1")),
        CosetSpec(g_table, P("a")),
        CosetSpec(g_table, P("ab")),
    ])


@pytest.fixture(scope="session")
def p22(h1_table) -> CosetPartition:
    return CosetPartition(2, [
        CosetSpec(h1_table, P("1")),
        CosetSpec(h1_table, P("a")),
    ])


@pytest.fixture(scope="session")
def whole_group() -> CosetPartition:
    table = table_from_generators(2, gens(2, ["a", "b"]))
    return CosetPartition(2, [CosetSpec(table, P("1"))])


def letters(rank: int):
    return st.builds(letter_from_column, st.integers(0, 2 * rank - 1))


def words(rank: int = 2, max_len: int = 8):
    return st.builds(
        lambda ls: word(rank, ls), st.lists(letters(rank), max_size=max_len))


def nonempty_words(rank: int = 2, max_len: int = 8):
    return words(rank, max_len).filter(lambda w: not w.is_identity)
