"""Reference implementations written straight from the definitions.

Deliberately naive and independent of the library's fast paths.
"""

import itertools


def member_by_definition(images, l, reflect=False):
    n = len(images)
    for x, y in itertools.product(range(n), repeat=2):
        dom = abs(x - y) == l
        img = abs(images[x] - images[y]) == l
        if dom and not img:
            return False
        if reflect and img and not dom:
            return False
    return True


def all_members(n, l, reflect=False):
    return [t for t in itertools.product(range(1, n + 1), repeat=n)
            if member_by_definition(t, l, reflect)]


def compose_tuples(a, b):
    return tuple(b[x - 1] for x in a)


def regular_by_scan(a, carrier):
    """All b in carrier with aba = a, by direct composition."""
    return [b for b in carrier if compose_tuples(compose_tuples(a, b), a) == tuple(a)]


def closure_naive(gens):
    """Saturate under all pairwise products until nothing new appears."""
    S = set(map(tuple, gens))
    while True:
        new = {compose_tuples(a, b) for a in S for b in S} - S
        if not new:
            return S
        S |= new
