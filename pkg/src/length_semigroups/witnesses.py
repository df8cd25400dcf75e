"""Explicit constructions: regularity witnesses for the regular cases, and
elements certifying non-regularity or T*_n(l) != T_n(l) everywhere else.

Every constructor takes an optional ``trace`` list and appends human-readable
lines describing the case it selected and the parameters it used.
"""

from __future__ import annotations

from .structure import (class_decomposition, class_of, check_length,
                        pair_decomposition, preserves_length, reflects_length)
from .transform import Transformation, check_capacity


class PreconditionError(ValueError):
    pass


def _note(trace, line):
    if trace is not None:
        trace.append(line)


def preimage_choice(a: Transformation) -> dict[int, int]:
    """d_x = smallest preimage of x, for each x in the image of a."""
    choice: dict[int, int] = {}
    for x, y in enumerate(a.images, 1):
        choice.setdefault(y, x)
    return choice


def large_regime(n: int, l: int) -> bool:
    """True when 2l > n, i.e. X_n splits into partner pairs and a middle block."""
    return 2 * l > n


# -- regularity witnesses ---------------------------------------------------------

def witness_half(a: Transformation, l: int | None = None, trace: list[str] | None = None) -> Transformation:
    """b in T_n(n/2) with aba = a, for any a in T_n(n/2)."""
    n = a.n
    if l is None:
        l = n // 2
    if n % 2 or 2 * l != n:
        raise PreconditionError(f"witness_half needs n even and l = n/2, got n={n}, l={l}")
    if not preserves_length(a, l):
        raise PreconditionError(f"{a} does not preserve length {l}")
    beta = list(range(1, n + 1))
    chosen: set[int] = set()
    for x in range(1, l + 1):
        u, v = a(x), a(x + l)
        if u in chosen:
            continue
        beta[u - 1], beta[v - 1] = x, x + l
        chosen.update((u, v))
        _note(trace, f"pair ({x},{x + l}) -> ({u},{v}): d_{u}={x}, d_{v}={x + l}")
    fixed = [z for z in range(1, n + 1) if z not in chosen]
    if fixed:
        _note(trace, f"points outside the image fixed: {fixed}")
    return Transformation(tuple(beta))


def witness_star_large(a: Transformation, l: int, trace: list[str] | None = None) -> Transformation:
    """b in T*_n(l) with aba = a, for 2l > n."""
    n = a.n
    check_length(n, l)
    if not large_regime(n, l):
        raise PreconditionError(f"witness_star_large needs 2l > n, got n={n}, l={l}")
    if not reflects_length(a, l):
        raise PreconditionError(f"{a} does not reflect length {l}")
    dec = pair_decomposition(n, l)
    beta = list(range(1, n + 1))
    for x, y in dec.pairs:
        beta[a(x) - 1], beta[a(y) - 1] = x, y
        _note(trace, f"pair ({x},{y}) -> ({a(x)},{a(y)}) inverted")
    d = preimage_choice(a)
    for z in sorted({a(x) for x in dec.middle}):
        beta[z - 1] = d[z]
        _note(trace, f"middle image {z}: d_{z}={d[z]}")
    spare = [w for w in dec.middle if w not in d]
    if spare:
        _note(trace, f"middle points outside the image fixed: {spare}")
    return Transformation(tuple(beta))


def witness_star_small(a: Transformation, l: int, trace: list[str] | None = None) -> Transformation:
    """b in T*_n(l) with aba = a, for 2l <= n."""
    n = a.n
    check_length(n, l)
    if large_regime(n, l):
        raise PreconditionError(f"witness_star_small needs 2l <= n, got n={n}, l={l}")
    if not reflects_length(a, l):
        raise PreconditionError(f"{a} does not reflect length {l}")
    if a.is_bijective():
        inv = [0] * n
        for x, y in enumerate(a.images, 1):
            inv[y - 1] = x
        _note(trace, "bijective: inverse permutation")
        return Transformation(tuple(inv))
    d = preimage_choice(a)
    beta = [d.get(x, 0) for x in range(1, n + 1)]
    mult = class_decomposition(n, l).multiplicities
    for u in range(1, n + 1):
        if u in d:
            continue
        j = class_of(u, l)
        if mult[j - 1] != 2:
            raise PreconditionError(f"missed point {u} lies in a class of multiplicity {mult[j - 1]}")
        if u == j:
            beta[u - 1] = d[j + 2 * l]
            _note(trace, f"missed low end {u} of A_{j}: sent to d_{j + 2 * l}={d[j + 2 * l]}")
        else:
            beta[u - 1] = d[j]
            _note(trace, f"missed high end {u} of A_{j}: sent to d_{j}={d[j]}")
    _note(trace, "image points x sent to d_x = smallest preimage: "
          + ", ".join(f"d_{x}={d[x]}" for x in sorted(d)))
    return Transformation(tuple(beta))


def witness_star(a: Transformation, l: int, trace: list[str] | None = None) -> Transformation:
    if large_regime(a.n, l):
        return witness_star_large(a, l, trace)
    return witness_star_small(a, l, trace)


# -- counterexamples to regularity ------------------------------------------------

def counterexample_T1(n: int, trace: list[str] | None = None) -> Transformation:
    """A non-regular element of T_n(1), n >= 6; the shape depends on n mod 4."""
    if n < 6:
        raise PreconditionError(f"T_n(1) is regular for n <= 5; got n={n}")
    check_capacity(n)
    img = [0] * (n + 1)
    r = n % 4
    if r in (2, 0):
        h = n // 2
        for x in range(1, h + 1):
            img[x] = n + 1 - x
        tail_end = n - 1 if r == 2 else n - 2
        for x in range(h + 1, tail_end + 1):
            img[x] = h + 2 if (x - h) % 2 else h + 1
        if r == 2:
            img[n] = h
        else:
            img[n - 1], img[n] = h, h - 1
        _note(trace, f"n={n}, n mod 4 = {r}: reversed first half, n/2={h}")
    else:
        h = (n + 1) // 2
        if r == 3:
            img[1] = n - 1
            for x in range(2, h + 1):
                img[x] = n + 2 - x
            start = h + 1
        else:
            for x in range(1, h):
                img[x] = n + 1 - x
            start = h
        for x in range(start, n):
            img[x] = h + 2 if (x - start) % 2 == 0 else h + 1
        img[n] = h
        _note(trace, f"n={n}, n mod 4 = {r}: reversed first half, (n+1)/2={h}")
    return Transformation(tuple(img[1:]))


def counterexample_Tl(n: int, l: int, trace: list[str] | None = None) -> Transformation:
    """A non-regular element of T_n(l), 2 <= l <= n-2, n odd or l != n/2."""
    check_capacity(n)
    if not 2 <= l <= n - 2:
        raise PreconditionError(f"need 2 <= l <= n-2, got n={n}, l={l}")
    if n % 2 == 0 and 2 * l == n:
        raise PreconditionError(f"T_{n}({l}) is regular (l = n/2); no counterexample")
    if large_regime(n, l):
        img = [1] * (l - 1) + [2] + [l + 1] * (n - l)
        _note(trace, f"2l > n: 1..{l - 1} -> 1, {l} -> 2, {l + 1}..{n} -> {l + 1}")
        return Transformation(tuple(img))

    q, r = divmod(n - 1, l)
    _note(trace, f"2l < n: n-1 = {q}*{l} + {r}")
    img = [0] * (n + 1)
    for x in range(1, n + 1):
        k, t = divmod(x - 1, l)  # x = k*l + t + 1
        if t == 0:
            if k == 0:
                img[x] = l + 1
            else:
                img[x] = (k + 1) * l + 1 if (k + 1) * l + 1 <= n else (k - 1) * l + 1
                if k >= 2:
                    _note(trace, f"u_{k} = {img[x]}")
        elif t == 1:
            img[x] = l + 1 if k % 2 == 0 else 1
            if k >= 2:
                _note(trace, f"v_{k} = {img[x]}")
        else:
            img[x] = x
    if r == 0:
        last = n - l
    elif r == 1:
        last = 1 if q % 2 else l + 1
    else:
        last = n
    img[n] = last
    _note(trace, f"override n -> {last} (q={q}, r={r})")
    return Transformation(tuple(img[1:]))


def counterexample(n: int, l: int, trace: list[str] | None = None) -> Transformation:
    if l == 1:
        return counterexample_T1(n, trace)
    return counterexample_Tl(n, l, trace)


def has_counterexample(n: int, l: int) -> bool:
    if l == 1:
        return n >= 6
    return 2 <= l <= n - 2 and not (n % 2 == 0 and 2 * l == n)


# -- T_n(l) \ T*_n(l) --------------------------------------------------------------

def strictness_witness(n: int, l: int, trace: list[str] | None = None) -> Transformation:
    """An element of T_n(l) outside T*_n(l); none exists for (2,1) and (3,1)."""
    check_capacity(n)
    check_length(n, l)
    if n < 3 or (n == 3 and l == 1):
        raise PreconditionError(f"T_{n}({l}) = T*_{n}({l}); no strictness witness")
    if large_regime(n, l):
        img = [1] * (l) + [l + 1] * (n - l)
        _note(trace, f"2l > n: 1..{l} -> 1, {l + 1}..{n} -> {l + 1}")
    elif l == 1:
        img = [1 if x % 2 else 2 for x in range(1, n + 1)]
        _note(trace, "l = 1: alternate 1, 2")
    else:
        img = [1 if ((x - 1) // l) % 2 == 0 else l + 1 for x in range(1, n + 1)]
        _note(trace, f"blocks of {l} alternate 1 / {l + 1}; n -> {img[-1]}")
    return Transformation(tuple(img))
