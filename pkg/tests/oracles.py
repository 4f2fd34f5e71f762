"""Brute-force references kept independent of the library code paths."""
from itertools import product


def naive_reduce(raw):
    """Repeated left-to-right scan, deleting the first cancelling pair each pass."""
    letters = list(raw)
    changed = True
    while changed:
        changed = False
        for i in range(len(letters) - 1):
            if letters[i] == -letters[i + 1]:
                del letters[i : i + 2]
                changed = True
                break
    return tuple(letters)


def naive_inverse(w):
    return tuple(-a for a in w[::-1])


def subgroup_ball(gens, radius):
    """Elements of <g_k : k in gens> of length <= radius, by breadth-first products."""
    alphabet = [s * k for k in gens for s in (1, -1)]
    ball = {()}
    frontier = {()}
    for _ in range(radius):
        nxt = set()
        for w in frontier:
            for a in alphabet:
                v = naive_reduce(w + (a,))
                if v not in ball:
                    nxt.add(v)
        ball |= nxt
        frontier = nxt
    return ball


def all_reduced(gens, max_len):
    alphabet = [s * k for k in gens for s in (1, -1)]
    out = []
    for n in range(max_len + 1):
        for w in product(alphabet, repeat=n):
            if naive_reduce(w) == w:
                out.append(w)
    return out


def coset_count(group_order, subgroup_order):
    return group_order // subgroup_order


def closure_bruteforce(mul, identity, gens):
    """Subgroup generated by gens: iterate products until nothing new appears."""
    S = {identity} | set(gens)
    while True:
        new = {mul(a, b) for a in S for b in S} | S
        if new == S:
            return frozenset(S)
        S = new
