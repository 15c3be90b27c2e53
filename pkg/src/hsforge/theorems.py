"""Sufficient conditions for a repeated index in a coset partition.

Each checker inspects a validated partition and reports one of four statuses:
"applies" (the condition fires, so some index must repeat), "does_not_apply",
"not_applicable" (the partition is too small for the condition to be stated),
or "unknown" (an enumeration cap was hit).  Whenever a checker reports
"applies" it also verifies the predicted repetition on the spot; a fired
condition without the repetition is a soundness bug, never a valid outcome.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .hsgraph import build_hs_graph, loop_z_partition
from .partition import (
    CosetPartition,
    DEFAULT_STATE_CAP,
    big_n,
    intersection_conditions,
    multiplicity,
    o_max_and_sharp,
    order_rel,
    rho,
    validate,
)
from .perm import (
    CapExceeded,
    DEFAULT_GROUP_CAP,
    cycle_type_census,
    has_k_cycle_at,
    transition_group,
)
from .words import Word, parse_word
from .zcover import erdos_checks, smallest_prime_factor, validate_z

__all__ = [
    "TheoremReport",
    "check_full_cycle",
    "check_cycle_bounds",
    "check_intersections",
    "check_neighborhood",
    "loop_consistency",
    "Analysis",
    "analyze",
    "default_word_sample",
]

APPLIES = "applies"
SILENT = "does_not_apply"
NOT_APPLICABLE = "not_applicable"
UNKNOWN = "unknown"


@dataclass
class TheoremReport:
    name: str
    status: str
    predicted: str = ""
    verified: bool | None = None
    details: dict[str, Any] = field(default_factory=dict)

    @property
    def applies(self) -> bool:
        return self.status == APPLIES

    @property
    def sound(self) -> bool:
        """A fired condition must come with a verified prediction."""
        return not (self.applies and self.verified is not True)

    def to_json(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "status": self.status,
            "predicted": self.predicted,
            "verified": self.verified,
            "details": self.details,
        }


def _require_valid(p: CosetPartition) -> None:
    report = validate(p)
    if not report.valid:
        raise ValueError("partition is not valid; run validation first")


def check_full_cycle(
    p: CosetPartition, cap: int = DEFAULT_GROUP_CAP
) -> TheoremReport:
    """A full cycle on a block of maximal index forces that index to repeat.

    If some block of maximal index d_s admits a d_s-cycle in its transition
    group, then d_s occurs at least p times among the indices, p being the
    smallest prime factor of d_s.  All blocks of maximal index share that
    index, hence have equal rank as subgroups (rank d_s*(n-1)+1).
    """
    _require_valid(p)
    d_max = p.indices[-1]
    if d_max < 2:
        return TheoremReport(
            "full_cycle", NOT_APPLICABLE,
            details={"reason": "all blocks have index 1"})
    candidates = [i for i in range(p.size) if p.specs[i].index == d_max]
    per_candidate = []
    hit_cap = False
    witness: Word | None = None
    witness_block: int | None = None
    for i in candidates:
        group = transition_group(p.specs[i].table)
        try:
            found = has_k_cycle_at(group, d_max, p.specs[i].marked, cap)
        except CapExceeded:
            hit_cap = True
            per_candidate.append({"block": i, "cycle": None, "capped": True})
            continue
        per_candidate.append(
            {"block": i, "cycle": str(found) if found else None, "capped": False})
        if found is not None and witness is None:
            witness, witness_block = found, i
    prime = smallest_prime_factor(d_max)
    count = len(candidates)
    predicted = f"index {d_max} occurs at least {prime} times"
    details = {
        "max_index": d_max,
        "smallest_prime": prime,
        "max_index_blocks": candidates,
        "subgroup_rank": d_max * (p.rank - 1) + 1,
        "candidates": per_candidate,
    }
    if witness is not None:
        orders = [order_rel(p, i, witness) for i in range(p.size)]
        details["witness"] = str(witness)
        details["witness_block"] = witness_block
        details["relative_orders"] = orders
        return TheoremReport(
            "full_cycle", APPLIES, predicted, count >= prime, details)
    if hit_cap:
        return TheoremReport("full_cycle", UNKNOWN, predicted, None, details)
    return TheoremReport("full_cycle", SILENT, predicted, None, details)


def _cycle_bound_conditions(
    s: int, indices: tuple[int, ...], k: int, prime: int, sharp: int
) -> list[dict[str, Any]]:
    """All threshold conditions, labeled; indices is ascending, 0-based."""
    fired = []
    for r in range(2, s):
        threshold = indices[s - r - 1]
        if k <= threshold:
            continue
        base = {"r": r, "threshold": threshold}
        if r == 2:
            fired.append({**base, "label": "exceeds_second_largest"})
        elif r == 3:
            if prime >= 3:
                fired.append({**base, "label": "exceeds_third_largest_odd_prime"})
            elif sharp >= 4:
                fired.append({**base, "label": "exceeds_third_largest_sharp_ge4"})
            elif sharp == 2:
                fired.append({**base, "label": "exceeds_third_largest_sharp_eq2"})
        else:
            if prime >= r:
                fired.append({**base, "label": f"exceeds_r{r}_prime_ge_r"})
            if sharp >= r + 1:
                fired.append({**base, "label": f"exceeds_r{r}_sharp_gt_r"})
            if sharp == prime:
                fired.append({**base, "label": f"exceeds_r{r}_sharp_eq_prime"})
    return fired


def check_cycle_bounds(
    p: CosetPartition, cap: int = DEFAULT_GROUP_CAP
) -> TheoremReport:
    """Long cycles compared against the index ladder force repetitions.

    Let k be the longest cycle over all transition groups, p its smallest
    prime factor, and for a witness word u with maximal relative order k let
    # count the blocks realizing k.  The partition has a repeated index if,
    for some 2 <= r <= s-1, k exceeds the r-th largest distinct position
    d_{s-r} and the (r, p, #) side conditions hold.
    """
    _require_valid(p)
    if p.size < 3:
        return TheoremReport(
            "cycle_bounds", NOT_APPLICABLE,
            details={"reason": "needs at least three blocks"})
    groups = [transition_group(spec.table) for spec in p.specs]
    try:
        longest = []
        for group in groups:
            elements = group.enumerate(cap)
            longest.append(max(
                max(len(c) for c in e.cycles()) for e in elements))
    except CapExceeded:
        return TheoremReport(
            "cycle_bounds", UNKNOWN,
            details={"reason": "transition group enumeration capped"})
    k = max(longest)
    details: dict[str, Any] = {"k": k, "indices": list(p.indices)}
    if k < 2:
        details["reason"] = "no nontrivial cycles"
        return TheoremReport("cycle_bounds", SILENT, details=details)
    prime = smallest_prime_factor(k)
    details["smallest_prime"] = prime
    candidates = []
    fired_any = []
    for i in range(p.size):
        if longest[i] != k:
            continue
        u = has_k_cycle_at(groups[i], k, p.specs[i].marked, cap)
        if u is None:
            raise AssertionError(
                f"block {i}: a {k}-cycle exists but none passes the marked "
                "vertex of a transitive group")
        o_max, sharp = o_max_and_sharp(p, u)
        if o_max != k:
            raise AssertionError(
                f"witness {u} has maximal relative order {o_max}, expected {k}")
        if sharp < 2:
            raise AssertionError(
                f"witness {u} realizes its maximal order on a single block")
        fired = _cycle_bound_conditions(p.size, p.indices, k, prime, sharp)
        candidates.append({
            "block": i,
            "witness": str(u),
            "o_max": o_max,
            "sharp": sharp,
            "conditions": fired,
        })
        fired_any.extend(fired)
    details["candidates"] = candidates
    predicted = "some index occurs at least twice"
    if fired_any:
        repeated = sorted(multiplicity(p))
        details["repeated_indices"] = repeated
        return TheoremReport(
            "cycle_bounds", APPLIES, predicted, bool(repeated), details)
    return TheoremReport("cycle_bounds", SILENT, predicted, None, details)


def check_intersections(
    p: CosetPartition, cap: int = DEFAULT_STATE_CAP
) -> TheoremReport:
    """Refinement jumps at a pair of blocks force the pair to coincide.

    For each pair (j, k): if intersecting H_j and H_k into the intersection
    of the other blocks strictly increases the index, or lcm(d_j, d_k) fails
    to divide the index of the partial intersection, then H_j = H_k.
    """
    _require_valid(p)
    if p.size < 3:
        return TheoremReport(
            "intersection", NOT_APPLICABLE,
            details={"reason": "needs at least three blocks"})
    pairs = []
    hit_cap = False
    fired = []
    all_equal = True
    for j in range(p.size):
        for k in range(j + 1, p.size):
            try:
                report = intersection_conditions(p, j, k, cap)
            except CapExceeded:
                hit_cap = True
                pairs.append({"pair": [j, k], "capped": True})
                continue
            entry = {
                "pair": [j, k],
                "index_all": report.index_all,
                "index_without": report.index_without,
                "strict_refinement": report.strict_refinement,
                "lcm_obstruction": report.lcm_obstruction,
                "condition_holds": report.condition_holds,
                "subgroups_equal": report.subgroups_equal,
            }
            pairs.append(entry)
            if report.condition_holds:
                fired.append((j, k))
                all_equal = all_equal and bool(report.subgroups_equal)
    details = {"pairs": pairs, "fired": [list(f) for f in fired]}
    predicted = "the two subgroups of any fired pair coincide"
    if fired:
        return TheoremReport(
            "intersection", APPLIES, predicted, all_equal, details)
    if hit_cap:
        return TheoremReport("intersection", UNKNOWN, predicted, None, details)
    return TheoremReport("intersection", SILENT, predicted, None, details)


# (condition label, ball radius exponent, whether the same condition transfers)
_TRANSFER_RULES: dict[str, tuple[int, bool]] = {
    "exceeds_second_largest": (3, True),
    "exceeds_third_largest_odd_prime": (4, True),
    "exceeds_third_largest_sharp_ge4": (4, False),
    "exceeds_third_largest_sharp_eq2": (4, False),
}


def _transfer_rule(label: str) -> tuple[int, bool]:
    if label in _TRANSFER_RULES:
        return _TRANSFER_RULES[label]
    # labels of the form exceeds_r{r}_...: radius 2^-(r+1), condition transfers
    r = int(label.split("_")[1][1:])
    return r + 1, True


def check_neighborhood(
    p0: CosetPartition,
    p: CosetPartition,
    cap: int = DEFAULT_GROUP_CAP,
) -> TheoremReport:
    """Conditions transfer from p0 to every partition close enough to it.

    A full-cycle condition on p0 holds on any p with rho < 1/2.  A fired
    threshold condition with parameter r transfers within rho < 2^-(r+1);
    the two (r=3, even prime) variants only transfer their conclusion, a
    repeated index.  Every assertion in range is executed on p, never assumed.
    """
    _require_valid(p0)
    _require_valid(p)
    distance = rho(p0, p)
    assertions = []
    statuses = []

    base_full = check_full_cycle(p0, cap)
    statuses.append(base_full.status)
    if base_full.applies and distance < Fraction(1, 2):
        side = check_full_cycle(p, cap)
        statuses.append(side.status)
        assertions.append({
            "source": "full_cycle",
            "radius": "1/2",
            "claim": "full_cycle applies",
            "holds": side.applies if side.status != UNKNOWN else None,
        })

    base_bounds = check_cycle_bounds(p0, cap)
    statuses.append(base_bounds.status)
    if base_bounds.applies:
        labels = sorted({
            condition["label"]
            for candidate in base_bounds.details["candidates"]
            for condition in candidate["conditions"]
        })
        side = None
        for label in labels:
            exponent, same_condition = _transfer_rule(label)
            radius = Fraction(1, 2**exponent)
            if distance >= radius:
                continue
            if side is None:
                side = check_cycle_bounds(p, cap)
                statuses.append(side.status)
            if side.status == UNKNOWN:
                holds = None
            elif same_condition:
                side_labels = {
                    condition["label"]
                    for candidate in side.details.get("candidates", [])
                    for condition in candidate["conditions"]
                }
                holds = label in side_labels
            else:
                holds = bool(multiplicity(p))
            assertions.append({
                "source": label,
                "radius": f"1/{2**exponent}",
                "claim": (f"condition {label} applies" if same_condition
                          else "some index repeats"),
                "holds": holds,
            })

    details = {"rho": str(distance), "assertions": assertions}
    predicted = "all in-range assertions hold on the nearby partition"
    if not assertions:
        status = UNKNOWN if UNKNOWN in statuses else SILENT
        return TheoremReport("neighborhood", status, predicted, None, details)
    if any(a["holds"] is None for a in assertions):
        return TheoremReport("neighborhood", UNKNOWN, predicted, None, details)
    verified = all(a["holds"] for a in assertions)
    return TheoremReport("neighborhood", APPLIES, predicted, verified, details)


def loop_consistency(
    p: CosetPartition,
    w: Word,
    group_cap: int = DEFAULT_GROUP_CAP,
    state_cap: int = DEFAULT_STATE_CAP,
) -> dict[str, Any]:
    """Check every loop of the refinement graph of w.

    Per loop: participating blocks contribute o_N/o_i elements summing to the
    loop length, and the induced residue classes partition the integers and
    pass all four structural checks.
    """
    graph = build_hs_graph(p, w, group_cap, state_cap)
    loops = graph.loops()
    problems = []
    for number, loop in enumerate(loops):
        contribution = sum(
            graph.o_n // graph.orders[i] for i in loop.participants)
        if contribution != graph.o_n:
            problems.append(
                f"loop {number}: contributions sum to {contribution}, "
                f"expected {graph.o_n}")
            continue
        z = loop_z_partition(graph, loop)
        if not validate_z(z).valid:
            problems.append(f"loop {number}: classes {z} do not partition Z")
            continue
        if not erdos_checks(z).all_hold:
            problems.append(f"loop {number}: classes {z} fail a structural check")
    return {
        "word": str(w),
        "m": graph.m,
        "order_mod_n": graph.o_n,
        "relative_orders": list(graph.orders),
        "loop_count": len(loops),
        "loop_lengths": sorted({loop.length for loop in loops}),
        "problems": problems,
    }


def default_word_sample(p: CosetPartition) -> list[Word]:
    """Generators, two-generator products, then theorem witnesses."""
    alphabet = [chr(ord("a") + j) for j in range(min(p.rank, 26))]
    texts = list(alphabet)
    texts.extend(x + y for x in alphabet for y in alphabet)
    for report in (check_full_cycle(p), check_cycle_bounds(p)):
        texts.append(report.details.get("witness"))
        for candidate in report.details.get("candidates", []):
            texts.append(candidate.get("witness"))
            texts.append(candidate.get("cycle"))
    words = []
    seen = set()
    for text in texts:
        if not text:
            continue
        w = parse_word(p.rank, text)
        if w.is_identity or w.letters in seen:
            continue
        seen.add(w.letters)
        words.append(w)
    return words


def _block_summaries(
    p: CosetPartition, group_cap: int
) -> tuple[list[dict[str, Any]], bool]:
    """Per-block index, representative, and cycle-type census."""
    blocks = []
    capped = False
    for i, spec in enumerate(p.specs):
        entry: dict[str, Any] = {
            "block": i,
            "index": spec.index,
            "rep": str(spec.rep),
            "marked": spec.marked,
        }
        group = transition_group(spec.table)
        try:
            census = cycle_type_census(group, group_cap)
            entry["group_order"] = group.order(group_cap)
            entry["cycle_types"] = [
                {"type": "+".join(map(str, shape)),
                 "count": count,
                 "witness": str(wit)}
                for shape, count, wit in census
            ]
        except CapExceeded:
            entry["capped"] = True
            capped = True
        blocks.append(entry)
    return blocks, capped


@dataclass
class Analysis:
    valid: bool
    indices: list[int]
    repeated: list[int]
    m: int | None
    blocks: list[dict[str, Any]]
    reports: list[TheoremReport]
    loop_checks: list[dict[str, Any]]
    unknown: bool
    soundness_problems: list[str]

    @property
    def exit_code(self) -> int:
        if not self.valid:
            return 1
        if self.soundness_problems:
            return 2
        if self.unknown:
            return 3
        return 0

    def to_json(self) -> dict[str, Any]:
        return {
            "valid": self.valid,
            "indices": self.indices,
            "multiplicity": self.repeated,
            "m": self.m,
            "blocks": self.blocks,
            "per_theorem": {r.name: r.to_json() for r in self.reports},
            "loop_checks": self.loop_checks,
            "unknown": self.unknown,
            "soundness_problems": self.soundness_problems,
        }


def analyze(
    p: CosetPartition,
    words: list[Word] | None = None,
    group_cap: int = DEFAULT_GROUP_CAP,
    state_cap: int = DEFAULT_STATE_CAP,
) -> Analysis:
    """Validate, run every condition checker, and stress the loop structure."""
    report = validate(p, state_cap)
    if not report.valid:
        return Analysis(False, list(p.indices), [], None, [], [], [], False, [])
    blocks, blocks_capped = _block_summaries(p, group_cap)
    reports = [
        check_full_cycle(p, group_cap),
        check_cycle_bounds(p, group_cap),
        check_intersections(p, state_cap),
    ]
    problems = []
    for theorem in reports:
        if not theorem.sound:
            problems.append(
                f"{theorem.name}: condition fired but prediction failed")
    loop_checks = []
    unknown = blocks_capped or any(r.status == UNKNOWN for r in reports)
    try:
        m = big_n(p, group_cap, state_cap).degree
    except CapExceeded:
        m = None
        unknown = True
    if m is not None:
        try:
            sample = words if words is not None else default_word_sample(p)
            for w in sample:
                check = loop_consistency(p, w, group_cap, state_cap)
                loop_checks.append(check)
                problems.extend(
                    f"{check['word']}: {q}" for q in check["problems"])
        except CapExceeded:
            unknown = True
    return Analysis(
        True, list(p.indices), sorted(multiplicity(p)), m, blocks,
        reports, loop_checks, unknown, problems)
