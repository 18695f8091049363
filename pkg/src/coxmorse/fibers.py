"""Face posets of projection fibers between flag-variety cell complexes.

Q_K indexes the cells of the quotient complex by pairs (v, w) with w a
minimal right coset representative; comparing two pairs shifts one of them
by an element of W_K.  For comparable anchors the fiber poset F collects
pairs (a, b) in W_K x W_K subject to a Demazure condition; it is computed
here in four independent ways (the defining condition, plus three
reformulations through the bounds z and z' and the right inversion set of
v'), and the four sets are asserted equal.  A reflection order with
N_R(v') first induces a matching on F with unique unmatched element
(z~, z~), the top of the generalized quotient, giving the contractibility
certificate.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .cells import pair_poset
from .coxeter import CoxeterSystem
from .errors import (
    AnchorViolation,
    CorollaryFalsified,
    LemmaFalsified,
    NonUniqueMaximum,
    NotComparable,
    NotMinimalCosetRep,
    PropositionFalsified,
    TheoremFalsified,
)
from .matchings import (
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
from .reflection_orders import ReflectionOrder, order_for_fiber


@dataclass(frozen=True)
class QKPoset:
    system: CoxeterSystem
    K: frozenset[int]
    members: tuple[tuple[int, int], ...]   # (v, w), w in W^K, v <= w
    leq: np.ndarray

    @cached_property
    def index(self) -> dict[tuple[int, int], int]:
        return {p: k for k, p in enumerate(self.members)}

    def leq_pairs(self, p: tuple[int, int], q: tuple[int, int]) -> bool:
        return bool(self.leq[self.index[p], self.index[q]])


def build_qk(system: CoxeterSystem, K) -> QKPoset:
    """Pairs (v, w) with w in W^K and v <= w; (v', w') <= (v, w) iff some
    u in W_K satisfies v <= v'u <= w'u <= w.  The relation is verified to
    be a partial order (antisymmetry and transitivity are not assumed)."""
    K = system.check_subset(K)
    sub = system.parabolic(K)
    min_right = set(sub.min_right)
    members = sorted(
        (v, w) for v, w in system.comparable_pairs() if w in min_right
    )
    members.sort(key=lambda p: (system.len_of(p[1]) - system.len_of(p[0]), p))
    n = len(members)
    b = system.bruhat
    leq = np.zeros((n, n), dtype=bool)
    v_arr = np.asarray([p[0] for p in members], dtype=np.int32)
    w_arr = np.asarray([p[1] for p in members], dtype=np.int32)
    arange = np.arange(system.size, dtype=np.int32)
    for u in sub.elements:
        perm = arange
        for g in system.letters(u):
            perm = system.right[:, g][perm]
        vu = perm[v_arr]   # v_i u
        wu = perm[w_arr]
        # leq_u[i, j]: v_j <= v_i u <= w_i u <= w_j  (pair i shifted under pair j)
        low = b[np.ix_(v_arr, vu)].T           # [i, j] = v_j <= v_i u
        mid = b[vu, wu][:, None]               # [i]    = v_i u <= w_i u
        high = b[np.ix_(wu, w_arr)]            # [i, j] = w_i u <= w_j
        leq |= low & mid & high
    if not leq.diagonal().all():
        raise TheoremFalsified("q_k relation is not reflexive")
    if (leq & leq.T & ~np.eye(n, dtype=bool)).any():
        i, j = map(int, np.argwhere(leq & leq.T & ~np.eye(n, dtype=bool))[0])
        raise TheoremFalsified(f"q_k relation is not antisymmetric at {members[i]}, {members[j]}")
    closure = (leq.astype(np.float32) @ leq.astype(np.float32)) > 0
    if (closure & ~leq).any():
        raise TheoremFalsified("q_k relation is not transitive")
    return QKPoset(system, K, tuple(members), leq)


def z_lower(system: CoxeterSystem, vprime: int, v: int, K) -> int:
    """z = v'^{-1} circ_l v; must land in W_K for comparable anchors."""
    K = system.check_subset(K)
    z = system.circ_l(system.inverse(vprime), v)
    if z not in set(system.parabolic(K).elements):
        raise AnchorViolation(
            f"z = {system.word_str(z)} is not in the parabolic subgroup of K={sorted(K)}"
        )
    return z


def z_upper(system: CoxeterSystem, wprime: int, w: int, K) -> int:
    """The set {a in W_K : w'a <= w} is a lower interval [e, z'] of W_K;
    return z', raising if the interval shape fails.

    Requires w' to be a minimal right coset representative: without that,
    the interval shape genuinely fails (w' = s1, w = s2 s1, K = {1, 2}
    yields {e, s1, s1 s2, s1 s2 s1}, which is not a lower interval).
    """
    K = system.check_subset(K)
    if system.descents(wprime, "right") & K:
        raise NotMinimalCosetRep(
            f"{system.word_str(wprime)} has a right descent in K={sorted(K)}"
        )
    if not system.bruhat_leq(wprime, w):
        raise NotComparable(f"{system.word_str(wprime)} is not <= {system.word_str(w)}")
    hits = [a for a in system.parabolic(K).elements
            if system.bruhat_leq(system.mul(wprime, a), w)]
    if not hits:
        raise LemmaFalsified("upper-bound set does not even contain e")
    maxes = [a for a in hits if not any(b != a and system.bruhat_leq(a, b) for b in hits)]
    if len(maxes) != 1:
        raise LemmaFalsified(
            f"upper-bound set has {len(maxes)} maximal elements: "
            f"{[system.word_str(a) for a in maxes]}"
        )
    zp = maxes[0]
    if sorted(hits) != sorted(a for a in system.parabolic(K).elements
                              if system.bruhat_leq(a, zp)):
        raise LemmaFalsified("upper-bound set is not the full lower interval [e, z']")
    return zp


@dataclass(frozen=True)
class FiberPoset:
    system: CoxeterSystem
    K: frozenset[int]
    anchors: tuple[tuple[int, int], tuple[int, int]]  # (v', w') <= (v, w)
    z: int
    z_prime: int
    members: tuple[tuple[int, int], ...]  # (a, b) pairs
    poset: FinitePoset

    @cached_property
    def index(self) -> dict[tuple[int, int], int]:
        return {p: k for k, p in enumerate(self.members)}

    @property
    def vprime(self) -> int:
        return self.anchors[0][0]


def build_fiber_poset(qk: QKPoset, lower: tuple[int, int], upper: tuple[int, int]) -> FiberPoset:
    """Compute F four independent ways and assert they agree:

    (i)   a <= b, v <= v'a <= w'b <= w, v'a circ_r b^{-1} = v', additive length;
    (ii)  z <= a <= b <= z' and v'a circ_r b^{-1} = v';
    (iii) z <= a <= b <= z' and ta not<= b for every t in N_R(v');
    (iv)  z <= a <= b <= z', l(v'a) = l(v') + l(a), and ta not<= b for every
          t in N_R(v') with a covered by ta.

    (iv) is the production path; the others are recomputed as a check.
    Without its explicit additivity guard, (iv) would wrongly admit pairs
    whose only witnessing t in N_R(v') moves a downward (e.g. diagonal
    pairs (a, a) with l(v'a) < l(v') + l(a)); (i)-(iii) exclude those
    through the length or inversion conditions.
    """
    system = qk.system
    if lower not in qk.index or upper not in qk.index:
        raise NotComparable("anchors must be members of the cell poset")
    if not qk.leq_pairs(lower, upper):
        raise NotComparable(f"anchors are not comparable: {lower} !<= {upper}")
    (vp, wp), (v, w) = lower, upper
    z = z_lower(system, vp, v, qk.K)
    zp = z_upper(system, wp, w, qk.K)
    elems = qk.system.parabolic(qk.K).elements
    n_r = system.right_inversion_reflections(vp)
    inv = system.inverse

    box = [(a, b) for a in elems for b in elems if system.bruhat_leq(a, b)]

    def in_i(a: int, b: int) -> bool:
        va = system.mul(vp, a)
        return (system.bruhat_leq(v, va)
                and system.bruhat_leq(system.mul(wp, b), w)
                and system.bruhat_leq(va, system.mul(wp, b))
                and system.circ_r(va, inv(b)) == vp
                and system.len_of(va) == system.len_of(vp) + system.len_of(a))

    def chain_ok(a: int, b: int) -> bool:
        return system.bruhat_leq(z, a) and system.bruhat_leq(b, zp)

    def in_ii(a: int, b: int) -> bool:
        return chain_ok(a, b) and system.circ_r(system.mul(vp, a), inv(b)) == vp

    def in_iii(a: int, b: int) -> bool:
        return chain_ok(a, b) and all(
            not system.bruhat_leq(system.mul(t, a), b) for t in n_r
        )

    def in_iv(a: int, b: int) -> bool:
        if not chain_ok(a, b):
            return False
        la = system.len_of(a)
        if system.len_of(system.mul(vp, a)) != system.len_of(vp) + la:
            return False
        for t in n_r:
            ta = system.mul(t, a)
            if system.len_of(ta) == la + 1 and system.bruhat_leq(ta, b):
                return False
        return True

    members = [p for p in box if in_iv(*p)]
    for tag, pred in (("defining", in_i), ("interval", in_ii), ("inversion", in_iii)):
        alt = [p for p in box if pred(*p)]
        if alt != members:
            diff = set(alt) ^ set(members)
            raise PropositionFalsified(
                f"fiber descriptions disagree ({tag} vs cover-restricted): "
                f"{[(system.word_str(a), system.word_str(b)) for a, b in sorted(diff)]}"
            )
    if not members:
        raise TheoremFalsified("fiber poset is empty for comparable anchors")
    members.sort(key=lambda p: (system.len_of(p[1]) - system.len_of(p[0]), p))
    poset = pair_poset(system, members, what="fiber pair poset")
    return FiberPoset(system, qk.K, (lower, upper), z, zp, tuple(members), poset)


@dataclass(frozen=True)
class GeneralizedQuotient:
    """Members a of [z, z'] with l(v'a) = l(v') + l(a), i.e. the diagonal
    slice {a : (a, a) in F}; z~ is its unique maximal element."""

    vprime: int
    z: int
    z_prime: int
    members: tuple[int, ...]
    z_tilde: int


def generalized_quotient(fp: FiberPoset) -> GeneralizedQuotient:
    system = fp.system
    vp = fp.vprime
    lvp = system.len_of(vp)
    members = [a for a in system.parabolic(fp.K).elements
               if system.bruhat_leq(fp.z, a) and system.bruhat_leq(a, fp.z_prime)
               and system.len_of(system.mul(vp, a)) == lvp + system.len_of(a)]
    diag = sorted(a for a, b in fp.members if a == b)
    if sorted(members) != diag:
        raise PropositionFalsified(
            "generalized quotient differs from the diagonal of the fiber poset"
        )
    maxes = [a for a in members
             if not any(b != a and system.bruhat_leq(a, b) for b in members)]
    if len(maxes) != 1:
        raise NonUniqueMaximum(
            f"generalized quotient has {len(maxes)} maximal elements: "
            f"{[system.word_str(a) for a in maxes]}"
        )
    zt = maxes[0]
    # gradedness: below z~ one can always step up by a cover inside the quotient
    mem = set(members)
    for a in members:
        if a == zt:
            continue
        if not any(system.len_of(ap) == system.len_of(a) + 1
                   and ap in mem and system.bruhat_leq(ap, zt)
                   for ap, _ in system.bruhat_covers_up(a)):
            raise TheoremFalsified(
                f"no quotient cover step above {system.word_str(a)} toward z~"
            )
    return GeneralizedQuotient(vp, fp.z, fp.z_prime, tuple(members), zt)


def fiber_matching(fp: FiberPoset,
                   order: ReflectionOrder | None = None) -> tuple[Matching, MorseSummary]:
    """Assemble the fiber matching slice by slice over the generalized
    quotient; the unique unmatched element must be (z~, z~)."""
    system = fp.system
    gq = generalized_quotient(fp)
    if order is None:
        order = order_for_fiber(system, fp.vprime)
    n_r = system.right_inversion_reflections(fp.vprime)
    partner = list(range(len(fp.members)))
    for a in gq.members:
        p_a = sorted(b for x, b in fp.members if x == a)
        if (p_a == [a]) != (a == gq.z_tilde):
            raise TheoremFalsified(
                f"slice at {system.word_str(a)} is a singleton iff a = z~ failed"
            )
        if a == gq.z_tilde:
            continue
        li = labeled_interval(system, a, fp.z_prime)
        m = build_matching(li, order)
        local = [li.index[b] for b in p_a]
        if not is_M_subset(m, local):
            raise TheoremFalsified(
                f"slice P_a at {system.word_str(a)} is not preserved by the "
                f"interval matching"
            )
        for x, y in restrict_matching(m, local).items():
            if x >= y:
                continue
            i, j = fp.index[(a, li.ids[x])], fp.index[(a, li.ids[y])]
            partner[i], partner[j] = j, i
    matching = Matching(fp.poset, tuple(partner))
    cover_set = {frozenset((lo, hi)) for lo, hi, _ in fp.poset.covers}
    for i, j in matching.pairs:
        if frozenset((i, j)) not in cover_set:
            raise TheoremFalsified(
                f"matched fiber pair {fp.poset.names[i]} -- {fp.poset.names[j]} "
                f"is not a cover"
            )
    report = is_acyclic(fp.poset, matching)
    if not report.acyclic:
        raise TheoremFalsified(f"fiber matching has a cycle: {report.cycle}")
    expect = fp.index[(gq.z_tilde, gq.z_tilde)]
    if set(matching.fixed) != {expect}:
        raise TheoremFalsified(
            f"unmatched fiber elements are {[fp.poset.names[i] for i in matching.fixed]}, "
            f"expected only (z~, z~)"
        )
    return matching, morse_counts(fp.poset, matching)


def verify_convexity(fp: FiberPoset) -> bool:
    """Order convexity: (a, b) in F and a <= a' <= b' <= b imply (a', b') in F."""
    system = fp.system
    members = set(fp.members)
    elems = system.parabolic(fp.K).elements
    for a, b in fp.members:
        for ap in elems:
            if not (system.bruhat_leq(a, ap) and system.bruhat_leq(ap, b)):
                continue
            for bp in elems:
                if not (system.bruhat_leq(ap, bp) and system.bruhat_leq(bp, b)):
                    continue
                if (ap, bp) not in members:
                    raise CorollaryFalsified(
                        f"convexity fails: ({system.word_str(ap)}, {system.word_str(bp)}) "
                        f"missing between ({system.word_str(a)}, {system.word_str(b)})"
                    )
    return True
