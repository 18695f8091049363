"""Face posets of totally nonnegative Springer fibers and their matchings.

For disjoint generator subsets J, J' the poset Z collects pairs (v, w) with
v <= w, every i in J a left descent of w with v not below s_i w, and every
j in J' a left ascent of v with s_j v not below w.  A reflection order with
T cap W_J' first and T cap W_J last induces, slice by slice in v, a
matching on Z whose only unmatched element is (w_J' w0, w_J' w0); counting
unmatched cells then certifies contractibility of the realizing complex.
Every structural step is asserted and failures raise with a witness.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .cells import pair_poset
from .coxeter import CoxeterSystem
from .errors import (
    LemmaFalsified,
    NotMinimalCosetRep,
    OverlappingSubsets,
    TheoremFalsified,
)
from .matchings import (
    LabeledInterval,
    Matching,
    MorseSummary,
    build_matching,
    is_M_subset,
    is_acyclic,
    labeled_interval,
    morse_counts,
    restrict_matching,
)
from .posets import FinitePoset
from .reflection_orders import ReflectionOrder, order_for_springer


@dataclass(frozen=True)
class SpringerPoset:
    system: CoxeterSystem
    J: frozenset[int]
    Jprime: frozenset[int]
    members: tuple[tuple[int, int], ...]
    poset: FinitePoset

    @cached_property
    def index(self) -> dict[tuple[int, int], int]:
        return {p: k for k, p in enumerate(self.members)}

    @property
    def apex(self) -> int:
        """Element id of w_J' w0."""
        return self.system.mul(self.system.longest(self.Jprime), self.system.w0)


def _member(system: CoxeterSystem, v: int, w: int, J, Jprime) -> bool:
    if not system.bruhat_leq(v, w):
        return False
    for i in J:
        sw = system.left[w, i - 1]
        if system.length[sw] > system.length[w] or system.bruhat_leq(v, int(sw)):
            return False
    for j in Jprime:
        sv = system.left[v, j - 1]
        if system.length[sv] < system.length[v] or system.bruhat_leq(int(sv), w):
            return False
    return True


def build_springer_poset(system: CoxeterSystem, J, Jprime) -> SpringerPoset:
    J = system.check_subset(J)
    Jprime = system.check_subset(Jprime)
    if J & Jprime:
        raise OverlappingSubsets(f"J and J' overlap: {sorted(J & Jprime)}")
    members = []
    for v, w in system.comparable_pairs():
        if _member(system, v, w, J, Jprime):
            members.append((v, w))
    members.sort(key=lambda p: (system.len_of(p[1]) - system.len_of(p[0]), p))
    sp = SpringerPoset(system, J, Jprime, tuple(members),
                       pair_poset(system, members, what="springer pair poset"))
    _check_membership_invariants(sp)
    return sp


def _check_membership_invariants(sp: SpringerPoset) -> None:
    system = sp.system
    min_left = set(system.parabolic(sp.Jprime).min_left)
    for v, w in sp.members:
        if v not in min_left or w not in min_left:
            raise TheoremFalsified(
                f"member ({system.word_str(v)}, {system.word_str(w)}) leaves the "
                f"minimal coset representatives of J'={sorted(sp.Jprime)}"
            )
    # Hasse edges crossing slices must fix w and move v by one cover
    for lo, hi, _ in sp.poset.covers:
        (v1, w1), (v2, w2) = sp.members[lo], sp.members[hi]
        if v1 != v2:
            if w1 != w2 or system.len_of(v1) != system.len_of(v2) + 1:
                raise TheoremFalsified(
                    f"cross-slice cover {sp.poset.names[lo]} < {sp.poset.names[hi]} "
                    f"is not a single v-step"
                )


def build_slices(sp: SpringerPoset, v: int) -> tuple[list[int], list[int], list[int]]:
    """The slice Z_v = {w : (v, w) in Z} together with the supersets
    P_v (ascent conditions for J') and Q_v (descent conditions for J);
    Z_v = P_v cap Q_v is asserted."""
    system = sp.system
    if system.descents(v, "left") & sp.Jprime:
        raise NotMinimalCosetRep(
            f"{system.word_str(v)} has a left descent in J'={sorted(sp.Jprime)}"
        )
    above = [w for w in range(system.size) if system.bruhat_leq(v, w)]
    p_v = [w for w in above
           if all(not system.bruhat_leq(int(system.left[v, j - 1]), w) for j in sp.Jprime)]
    q_v = [w for w in above
           if all(not system.bruhat_leq(v, int(system.left[w, i - 1])) for i in sp.J)]
    z_v = [w for w in above if (v, w) in sp.index]
    assert z_v == sorted(set(p_v) & set(q_v)), "slice is not the intersection of P_v and Q_v"
    return z_v, p_v, q_v


def coset_piece(system: CoxeterSystem, v: int, w: int, J) -> list[int]:
    """[v, w0] cap W_J w for a minimal-length representative w of W_J w."""
    J = system.check_subset(J)
    if system.descents(w, "left") & J:
        raise NotMinimalCosetRep(f"{system.word_str(w)} has a left descent in J={sorted(J)}")
    sub = system.parabolic(J)
    return sorted(
        x for x in (system.mul(a, w) for a in sub.elements) if system.bruhat_leq(v, x)
    )


def interval_in_parabolic(system: CoxeterSystem, v: int, w: int, J) -> int:
    """The set {a in W_J : v <= a . (min rep of w)} is an upper interval
    [x, w_J] of W_J; return x, raising if the interval shape fails."""
    J = system.check_subset(J)
    if not system.bruhat_leq(v, w):
        raise NotMinimalCosetRep(f"{system.word_str(v)} must be <= {system.word_str(w)}")
    jw = system.min_rep_left(w, J)
    sub = system.parabolic(J)
    hits = [a for a in sub.elements if system.bruhat_leq(v, system.mul(a, jw))]
    if not hits:
        raise LemmaFalsified("parabolic interval is empty")
    mins = [a for a in hits if not any(b != a and system.bruhat_leq(b, a) for b in hits)]
    if len(mins) != 1:
        raise LemmaFalsified(
            f"parabolic set has {len(mins)} minimal elements: "
            f"{[system.word_str(a) for a in mins]}"
        )
    x = mins[0]
    expected = sorted(a for a in sub.elements if system.bruhat_leq(x, a))
    if sorted(hits) != expected:
        raise LemmaFalsified("parabolic set is not the full upper interval [x, w_J]")
    return x


def springer_matching(sp: SpringerPoset,
                      order: ReflectionOrder | None = None) -> tuple[Matching, MorseSummary]:
    """Assemble the matching on Z from per-slice interval matchings.

    For each v with a nonempty slice (except the apex), the matching of
    [v, w0] under the constrained order is restricted to the slice, which
    must be preserved via the P_v and Q_v subset checks; pairs (v, w) and
    (v, M(w)) are matched.  Postconditions asserted: matched pairs are
    covers of Z, the digraph is acyclic, and the apex pair is the unique
    unmatched element."""
    system = sp.system
    if order is None:
        order = order_for_springer(system, sp.Jprime, sp.J)
    apex = sp.apex
    if (apex, apex) not in sp.index:
        raise TheoremFalsified("apex pair is missing from the pair poset")
    partner = list(range(len(sp.members)))
    slice_vs = sorted({v for v, _ in sp.members})
    for v in slice_vs:
        z_v, p_v, q_v = build_slices(sp, v)
        if v == apex:
            if z_v != [apex]:
                raise TheoremFalsified(
                    f"apex slice is not a singleton: {[system.word_str(w) for w in z_v]}"
                )
            continue
        li = labeled_interval(system, v, system.w0)
        m = build_matching(li, order)
        for label, subset in (("P_v", p_v), ("Q_v", q_v), ("Z_v", z_v)):
            local = [li.index[w] for w in subset]
            if not is_M_subset(m, local):
                raise TheoremFalsified(
                    f"{label} is not preserved by the interval matching at "
                    f"v={system.word_str(v)} (J={sorted(sp.J)}, J'={sorted(sp.Jprime)})"
                )
        local_pairs = restrict_matching(m, [li.index[w] for w in z_v])
        for a, b in local_pairs.items():
            if a >= b:
                continue
            i, j = sp.index[(v, li.ids[a])], sp.index[(v, li.ids[b])]
            partner[i], partner[j] = j, i

    matching = Matching(sp.poset, tuple(partner))
    cover_set = {frozenset((lo, hi)) for lo, hi, _ in sp.poset.covers}
    for i, j in matching.pairs:
        if frozenset((i, j)) not in cover_set:
            raise TheoremFalsified(
                f"matched pair {sp.poset.names[i]} -- {sp.poset.names[j]} is not a cover of Z"
            )
    report = is_acyclic(sp.poset, matching)
    if not report.acyclic:
        raise TheoremFalsified(f"springer matching has a cycle: {report.cycle}")
    if set(matching.fixed) != {sp.index[(apex, apex)]}:
        raise TheoremFalsified(
            f"unmatched elements are {[sp.poset.names[i] for i in matching.fixed]}, "
            f"expected only ({system.word_str(apex)}, {system.word_str(apex)})"
        )
    return matching, morse_counts(sp.poset, matching)
