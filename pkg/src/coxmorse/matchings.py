"""The reflection-order matching on Bruhat intervals, and matching checks.

For an interval [v, w] with every Hasse edge {w1 < w2} labeled by the
reflection w1 w2^{-1}, each element x selects its incident edge with the
largest label under a fixed reflection order; the union of the selected
edges is returned.  That this union is a complete matching, and acyclic
once matched edges are reversed against the downward Hasse orientation,
is asserted at runtime rather than assumed: a violation raises a
falsification error carrying the witness.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .coxeter import CoxeterSystem
from .errors import (
    CyclicMatching,
    EmptyInterval,
    NotAMatching,
    NotComparable,
    TheoremFalsified,
)
from .posets import FinitePoset, euler_characteristic
from .reflection_orders import ReflectionOrder


@dataclass(frozen=True)
class LabeledInterval:
    """A Bruhat interval with its reflection-labeled Hasse diagram.

    ``poset`` indices are interval-local; ``ids`` maps them to group
    element ids (also stored as the poset payload), and ``index`` back.
    Dimensions are lengths relative to the bottom element.
    """

    system: CoxeterSystem
    v: int
    w: int
    ids: tuple[int, ...]
    index: dict[int, int]
    poset: FinitePoset

    @property
    def rank(self) -> int:
        return self.system.len_of(self.w) - self.system.len_of(self.v)


def labeled_interval(system: CoxeterSystem, v: int, w: int) -> LabeledInterval:
    if not system.bruhat_leq(v, w):
        raise NotComparable(f"{system.word_str(v)} is not <= {system.word_str(w)}")
    ids = tuple(system.interval_ids(v, w))
    index = {x: k for k, x in enumerate(ids)}
    base = system.len_of(v)
    covers = []
    for x in ids:
        for lo, t in system.bruhat_covers_down(x):
            if lo in index:
                covers.append((index[lo], index[x], t))
    covers.sort()
    names = tuple(system.word_str(x) for x in ids)
    dims = tuple(system.len_of(x) - base for x in ids)
    sub = system.bruhat[np.ix_(ids, ids)].copy()
    poset = FinitePoset(names, dims, sub, tuple(covers), ids)
    return LabeledInterval(system, v, w, ids, index, poset)


@dataclass(frozen=True)
class Matching:
    """An involution whose non-fixed orbits are cover edges of ``poset``."""

    poset: FinitePoset
    partner: tuple[int, ...]

    @property
    def pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple(
            (i, p) for i, p in enumerate(self.partner) if p > i
        )

    @property
    def fixed(self) -> tuple[int, ...]:
        return tuple(i for i, p in enumerate(self.partner) if p == i)

    def is_complete(self) -> bool:
        return not self.fixed

    def matched_edges(self) -> frozenset[frozenset[int]]:
        return frozenset(frozenset(p) for p in self.pairs)


def matching_from_pairs(poset: FinitePoset, pairs: Iterable[tuple[int, int]]) -> Matching:
    cover_set = {frozenset((lo, hi)) for lo, hi, _ in poset.covers}
    partner = list(range(poset.n))
    for a, b in pairs:
        if frozenset((a, b)) not in cover_set:
            raise NotAMatching(f"pair ({poset.names[a]}, {poset.names[b]}) is not a cover edge")
        if partner[a] != a or partner[b] != b:
            raise NotAMatching(f"element {poset.names[a]} or {poset.names[b]} matched twice")
        partner[a], partner[b] = b, a
    return Matching(poset, tuple(partner))


def build_matching(li: LabeledInterval, order: ReflectionOrder) -> Matching:
    """Select each element's largest-label incident edge; assert the union
    is a complete matching (otherwise the construction itself is falsified)."""
    if li.rank < 1:
        raise EmptyInterval("matching needs a nontrivial interval")
    poset = li.poset
    rank = order.rank
    n = poset.n
    best_rank = [-1] * n
    best_mate = [-1] * n
    for lo, hi, t in poset.covers:
        r = rank[t]
        if r > best_rank[lo]:
            best_rank[lo], best_mate[lo] = r, hi
        if r > best_rank[hi]:
            best_rank[hi], best_mate[hi] = r, lo
    for x in range(n):
        mate = best_mate[x]
        if mate < 0:
            raise NotAMatching(f"isolated element {poset.names[x]} in the Hasse diagram")
        if best_mate[mate] != x:
            raise NotAMatching(
                f"edge selection is not an involution at {poset.names[x]}: "
                f"{poset.names[x]} -> {poset.names[mate]} -> {poset.names[best_mate[mate]]}"
            )
    return Matching(poset, tuple(best_mate))


@dataclass(frozen=True)
class AcyclicityReport:
    acyclic: bool
    cycle: tuple[int, ...] | None = None


def is_acyclic(poset: FinitePoset, matching: Matching) -> AcyclicityReport:
    """Orient unmatched covers downward and matched covers upward; report
    whether the resulting digraph has a directed cycle (with witness)."""
    matched = matching.matched_edges()
    n = poset.n
    out: list[list[int]] = [[] for _ in range(n)]
    for lo, hi, _ in poset.covers:
        if frozenset((lo, hi)) in matched:
            out[lo].append(hi)
        else:
            out[hi].append(lo)
    for adj in out:
        adj.sort()
    color = [0] * n  # 0 new, 1 on stack, 2 done
    parent_edge: dict[int, int] = {}
    for root in range(n):
        if color[root]:
            continue
        stack: list[tuple[int, int]] = [(root, 0)]
        color[root] = 1
        while stack:
            node, k = stack[-1]
            if k < len(out[node]):
                stack[-1] = (node, k + 1)
                nxt = out[node][k]
                if color[nxt] == 1:
                    cyc = [nxt]
                    cur = node
                    while cur != nxt:
                        cyc.append(cur)
                        cur = parent_edge[cur]
                    cyc.append(nxt)
                    return AcyclicityReport(False, tuple(reversed(cyc)))
                if color[nxt] == 0:
                    color[nxt] = 1
                    parent_edge[nxt] = node
                    stack.append((nxt, 0))
            else:
                color[node] = 2
                stack.pop()
    return AcyclicityReport(True)


def is_M_subset(matching: Matching, subset: Iterable[int]) -> bool:
    """True iff the matching restricts to an involution of ``subset``."""
    sub = set(subset)
    return all(matching.partner[x] in sub for x in sub)


def restrict_matching(matching: Matching, subset: Iterable[int]) -> dict[int, int]:
    """Partner map of the restriction; requires ``subset`` to be an M-subset."""
    sub = set(subset)
    if not is_M_subset(matching, sub):
        raise NotAMatching("subset is not preserved by the matching")
    return {x: matching.partner[x] for x in sub}


@dataclass(frozen=True)
class MorseSummary:
    """Unmatched-cell counts by dimension; (1, 0, ..., 0) certifies that the
    complex realizing the face poset is contractible."""

    counts: dict[int, int]
    unmatched: tuple[int, ...]
    acyclic: bool

    @property
    def certificate(self) -> bool:
        return (self.acyclic and self.counts.get(0, 0) == 1
                and all(c == 0 for d, c in self.counts.items() if d != 0))


def morse_counts(poset: FinitePoset, matching: Matching) -> MorseSummary:
    report = is_acyclic(poset, matching)
    if not report.acyclic:
        raise CyclicMatching(f"matching has a directed cycle: {report.cycle}")
    counts: dict[int, int] = {}
    fixed = matching.fixed
    for x in fixed:
        counts[poset.dims[x]] = counts.get(poset.dims[x], 0) + 1
    summary = MorseSummary(counts, fixed, True)
    assert sum(counts.values()) == len(fixed)
    assert sum((-1) ** d * c for d, c in counts.items()) == euler_characteristic(poset)
    return summary


def augment_with_bottom(poset: FinitePoset, matching: Matching) -> tuple[FinitePoset, Matching]:
    """Adjoin a bottom element below all minimal elements; if any minimal
    element is unmatched, match the bottom with the least-id one.  The
    extension is re-verified to be acyclic."""
    n = poset.n
    bottom = n
    minimals = poset.minimal_elements()
    names = poset.names + ("0^",)
    dims = poset.dims + (min(poset.dims) - 1,)
    leq = np.zeros((n + 1, n + 1), dtype=bool)
    leq[:n, :n] = poset.leq
    leq[bottom, :] = True
    covers = poset.covers + tuple((bottom, m, None) for m in minimals)
    payload = poset.payload + (None,) if poset.payload else ()
    aug = FinitePoset(names, dims, leq, covers, payload)
    partner = list(matching.partner) + [bottom]
    unmatched_min = [m for m in minimals if matching.partner[m] == m]
    if unmatched_min:
        mate = min(unmatched_min)
        partner[bottom] = mate
        partner[mate] = bottom
    out = Matching(aug, tuple(partner))
    report = is_acyclic(aug, out)
    if not report.acyclic:
        raise TheoremFalsified(f"augmented matching acquired a cycle: {report.cycle}")
    return aug, out


@dataclass(frozen=True)
class ShellingReport:
    coatom_prefixes: int
    atom_prefixes: int
    partition_ok: bool


def verify_shelling_subsets(li: LabeledInterval, order: ReflectionOrder,
                            matching: Matching | None = None) -> ShellingReport:
    """Check the prefix-union structure of the matching.

    With coatoms w_1, ..., w_n of [v, w] ordered by increasing edge label,
    every union of the first k-1 lower intervals [v, w_i] must be preserved
    by the matching, and the complement of the union over i < n must be
    exactly [M(w), w]; dually for atoms and upper intervals."""
    system, poset = li.system, li.poset
    if matching is None:
        matching = build_matching(li, order)
    rank = order.rank
    top = li.index[li.w]
    bot = li.index[li.v]
    down = poset.down_adj()
    up = poset.up_adj()

    where = f"[{system.word_str(li.v)}, {system.word_str(li.w)}]"

    # unions of the first k lower intervals [v, w_i], k = 0 .. n-1, must be
    # preserved by the matching; the complement of the (n-1)-union is [M(w), w]
    coatoms = sorted(((rank[t], x) for x, t in down[top]), key=lambda p: p[0])
    union: set[int] = set()
    count_co = 0
    for k, (_, x) in enumerate(coatoms):
        if not is_M_subset(matching, union):
            raise TheoremFalsified(f"coatom prefix union of {k} intervals is not an M-subset in {where}")
        count_co += 1
        if k == len(coatoms) - 1:
            break
        union |= {z for z in range(poset.n) if poset.leq[z, x]}
    rest = set(range(poset.n)) - union
    mw = matching.partner[top]
    expected = {z for z in range(poset.n) if poset.leq[mw, z]}
    partition_ok = rest == expected
    if not partition_ok:
        raise TheoremFalsified(f"complement of the coatom prefix unions is not [M(w), w] in {where}")

    atoms = sorted(((rank[t], x) for x, t in up[bot]), key=lambda p: p[0])
    union = set()
    count_at = 0
    for k, (_, x) in enumerate(atoms):
        if not is_M_subset(matching, union):
            raise TheoremFalsified(f"atom prefix union of {k} intervals is not an M-subset in {where}")
        count_at += 1
        if k == len(atoms) - 1:
            break
        union |= {z for z in range(poset.n) if poset.leq[x, z]}
    return ShellingReport(count_co, count_at, partition_ok)
