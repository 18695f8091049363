"""Cross-validation of the enumerated groups against external models.

These checks share no code or tables with the production enumeration:
type A is compared with literal permutation composition and the rank
criterion for Bruhat order, type B with signed permutations generated by
closure, and the length distributions of several types are compared with
the classical degree product formula.
"""

from collections import Counter

import pytest


# -- type A: permutations ----------------------------------------------------


def perm_compose(p, q):
    """(p * q)(k) = p(q(k)); matches multiplying words left to right when
    each generator acts by swapping positions after the previous ones."""
    return tuple(p[q[k]] for k in range(len(p)))


def perm_of(system, x, n):
    p = tuple(range(n))
    for g in system.letters(x):
        swap = list(range(n))
        swap[g], swap[g + 1] = swap[g + 1], swap[g]
        p = perm_compose(p, tuple(swap))
    return p


def inversions(p):
    return sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])


def rank_criterion_leq(u, w):
    """u <= w in Bruhat order iff every top-left rank count of u dominates:
    #{k <= i : u(k) >= j} <= #{k <= i : w(k) >= j} for all i, j."""
    n = len(u)
    for i in range(n):
        for j in range(n):
            cu = sum(1 for k in range(i + 1) if u[k] >= j)
            cw = sum(1 for k in range(i + 1) if w[k] >= j)
            if cu > cw:
                return False
    return True


def test_type_a_model(system):
    s = system("A3")
    n = 4
    images = {x: perm_of(s, x, n) for x in range(s.size)}
    assert len(set(images.values())) == s.size  # faithful
    for x in range(s.size):
        assert s.len_of(x) == inversions(images[x])
    for x in range(s.size):
        for y in range(s.size):
            assert images[s.mul(x, y)] == perm_compose(images[x], images[y])
            assert s.bruhat_leq(x, y) == rank_criterion_leq(images[x], images[y])


def test_type_a4_lengths(system):
    s = system("A4")
    for x in range(s.size):
        assert s.len_of(x) == inversions(perm_of(s, x, 5))


# -- type B: signed permutations ---------------------------------------------


def signed_gens(n):
    """Generators matching the B_n matrix used here: adjacent swaps for
    1..n-1 and the sign flip on the last coordinate; a signed permutation
    is a tuple of images of (1, ..., n) in (+-1, ..., +-n)."""
    gens = []
    for i in range(n - 1):
        img = list(range(1, n + 1))
        img[i], img[i + 1] = img[i + 1], img[i]
        gens.append(tuple(img))
    flip = list(range(1, n + 1))
    flip[n - 1] = -n
    gens.append(tuple(flip))
    return gens


def signed_apply(w, k):
    return w[k - 1] if k > 0 else -w[-k - 1]


def signed_compose(p, q):
    """(p * q)(k) = p(q(k))."""
    return tuple(signed_apply(p, q[k]) for k in range(len(q)))


def signed_of(system, x, n):
    gens = signed_gens(n)
    p = tuple(range(1, n + 1))
    for g in system.letters(x):
        p = signed_compose(p, gens[g])
    return p


def test_type_b_model(system):
    s = system("B3")
    n = 3
    # closure of the generators reproduces the group size
    gens = signed_gens(n)
    identity = tuple(range(1, n + 1))
    seen = {identity}
    frontier = [identity]
    dist = {identity: 0}
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = signed_compose(p, g)
                if q not in seen:
                    seen.add(q)
                    dist[q] = dist[p] + 1
                    nxt.append(q)
        frontier = nxt
    assert len(seen) == s.size == 48
    # the enumerated group maps isomorphically with matching word metric
    images = {x: signed_of(s, x, n) for x in range(s.size)}
    assert len(set(images.values())) == s.size
    for x in range(s.size):
        assert s.len_of(x) == dist[images[x]]
        for y in range(s.size):
            assert images[s.mul(x, y)] == signed_compose(images[x], images[y])


# -- length distribution vs classical degrees --------------------------------


DEGREES = {
    "A2": (2, 3), "A3": (2, 3, 4), "A4": (2, 3, 4, 5),
    "B2": (2, 4), "B3": (2, 4, 6), "B4": (2, 4, 6, 8),
    "D4": (2, 4, 4, 6), "F4": (2, 6, 8, 12), "G2": (2, 6),
    "H3": (2, 6, 10), "I2(7)": (2, 7),
}


def poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        for j, cb in enumerate(b):
            out[i + j] += ca * cb
    return out


@pytest.mark.parametrize("name,degrees", sorted(DEGREES.items()))
def test_poincare_polynomial(system, name, degrees):
    s = system(name)
    hist = Counter(s.len_of(x) for x in range(s.size))
    got = [hist.get(k, 0) for k in range(max(hist) + 1)]
    poly = [1]
    for d in degrees:
        poly = poly_mul(poly, [1] * d)  # 1 + q + ... + q^{d-1}
    assert got == poly
