"""Length-preserving / length-reflecting membership, the two shapes of X_n
relative to a length l, and enumeration of T_n(l) and T*_n(l).

Two points x < y are *l-adjacent* when y - x == l.  A map preserves l when
every l-adjacent pair lands on an l-adjacent pair; it reflects l when, in
addition, only l-adjacent pairs land on l-adjacent pairs.
"""

from __future__ import annotations

import enum
import itertools
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

from .elements import ElementSet
from .transform import (CapacityError, Transformation, check_capacity,
                        read_elements, write_elements)

# hard cap on materialised elements; T_n(n-1) alone has 2 * n**(n-2) members
MAX_ELEMENTS = 1_000_000


class Variant(enum.Enum):
    FULL = "full"
    PRESERVING = "plain"
    REFLECTING = "star"

    @classmethod
    def parse(cls, name: str | Variant) -> Variant:
        if isinstance(name, Variant):
            return name
        try:
            return cls(name)
        except ValueError:
            raise ValueError(f"unknown variant {name!r}; expected one of "
                             f"{', '.join(v.value for v in cls)}") from None


@dataclass(frozen=True)
class SemigroupSpec:
    n: int
    l: int
    variant: Variant = Variant.PRESERVING

    def __post_init__(self):
        object.__setattr__(self, "variant", Variant.parse(self.variant))
        if self.n < 2:
            raise ValueError(f"n must be >= 2, got {self.n}")
        check_capacity(self.n)
        check_length(self.n, self.l)

    @property
    def name(self) -> str:
        if self.variant is Variant.FULL:
            return f"T_{self.n}"
        star = "*" if self.variant is Variant.REFLECTING else ""
        return f"T{star}_{self.n}({self.l})"

    @property
    def cache_name(self) -> str:
        return f"T_{self.n}_{self.l}_{self.variant.value}.txt"

    def contains(self, a: Transformation) -> bool:
        if a.n != self.n:
            return False
        if self.variant is Variant.FULL:
            return True
        if self.variant is Variant.PRESERVING:
            return preserves_length(a, self.l)
        return reflects_length(a, self.l)


def check_length(n: int, l: int) -> None:
    if not 1 <= l <= n - 1:
        raise ValueError(f"length l={l} outside 1..{n - 1} for n={n}")


# -- membership ---------------------------------------------------------------

def length_violation(a: Transformation, l: int) -> tuple[int, int] | None:
    """First x (ascending) with |xa - (x+l)a| != l, as the pair (x, x+l)."""
    n = a.n
    check_length(n, l)
    im = a.images
    for x in range(n - l):
        if abs(im[x] - im[x + l]) != l:
            return x + 1, x + l + 1
    return None


def reflection_violation(a: Transformation, l: int) -> tuple[int, int] | None:
    """First pair x < y, ordered by (y - x, x), breaking  |x-y| = l <=> |xa-ya| = l."""
    n = a.n
    check_length(n, l)
    im = a.images
    for gap in range(1, n):
        for x in range(n - gap):
            if (gap == l) != (abs(im[x] - im[x + gap]) == l):
                return x + 1, x + gap + 1
    return None


def preserves_length(a: Transformation, l: int) -> bool:
    return length_violation(a, l) is None


def reflects_length(a: Transformation, l: int) -> bool:
    return reflection_violation(a, l) is None


# -- decompositions -------------------------------------------------------------

@dataclass(frozen=True)
class Decomposition:
    """Either partner pairs plus an unpartnered middle (2l >= n), or the
    residue classes A_i = {i, i+l, ..., i + m_i l} (2l <= n)."""
    n: int
    l: int
    regime: str
    pairs: tuple[tuple[int, int], ...] = ()
    middle: tuple[int, ...] = ()
    classes: tuple[tuple[int, ...], ...] = ()
    multiplicities: tuple[int, ...] = field(default=())


def pair_decomposition(n: int, l: int) -> Decomposition:
    check_length(n, l)
    if 2 * l < n:
        raise ValueError(f"pair/middle shape needs 2l >= n (n={n}, l={l})")
    pairs = tuple((x, x + l) for x in range(1, n - l + 1))
    middle = tuple(range(n - l + 1, l + 1))
    return Decomposition(n, l, "pairs", pairs=pairs, middle=middle)


def class_decomposition(n: int, l: int) -> Decomposition:
    check_length(n, l)
    if 2 * l > n:
        raise ValueError(f"class shape needs 2l <= n (n={n}, l={l})")
    classes = tuple(tuple(range(i, n + 1, l)) for i in range(1, l + 1))
    mult = tuple(len(c) - 1 for c in classes)
    return Decomposition(n, l, "classes", classes=classes, multiplicities=mult)


def decompose(n: int, l: int) -> Decomposition:
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    check_length(n, l)
    if 2 * l >= n:
        return pair_decomposition(n, l)
    return class_decomposition(n, l)


def class_of(x: int, l: int) -> int:
    return (x - 1) % l + 1


# -- counting and enumeration -----------------------------------------------------

def _walk_counts(n: int, l: int, length: int) -> int:
    """Number of value sequences v_0..v_{length-1} in 1..n with |v_k - v_{k+1}| = l."""
    ways = [1] * (n + 1)
    ways[0] = 0
    for _ in range(length - 1):
        nxt = [0] * (n + 1)
        for v in range(1, n + 1):
            nxt[v] = (ways[v - l] if v - l >= 1 else 0) + (ways[v + l] if v + l <= n else 0)
        ways = nxt
    return sum(ways)


def count_preserving(n: int, l: int) -> int:
    """|T_n(l)| by independent walks along each chain x, x+l, x+2l, ..."""
    check_length(n, l)
    total = 1
    for i in range(1, l + 1):
        total *= _walk_counts(n, l, len(range(i, n + 1, l)))
    return total


def _check_budget(spec: SemigroupSpec) -> None:
    if spec.variant is Variant.FULL:
        size = spec.n ** spec.n
    else:
        size = count_preserving(spec.n, spec.l)  # upper bound for the star variant
    if size > MAX_ELEMENTS:
        raise CapacityError(f"{spec.name} has up to {size} elements, over the "
                            f"budget of {MAX_ELEMENTS}")


def _search(n: int, l: int, reflect: bool, first: int | None = None) -> list[tuple[int, ...]]:
    img = [0] * (n + 1)
    holders: list[list[int]] = [[] for _ in range(n + 2 + l)]
    out = []

    def ok(x, v):
        # every already-placed y with |ya - v| = l must be the partner x - l
        for w in (v - l, v + l):
            if 1 <= w <= n:
                for y in holders[w]:
                    if y != x - l:
                        return False
        return True

    def rec(x):
        if x > n:
            out.append(tuple(img[1:]))
            return
        if x - l >= 1:
            p = img[x - l]
            cands = [v for v in (p - l, p + l) if 1 <= v <= n]
        elif x == 1 and first is not None:
            cands = [first]
        else:
            cands = range(1, n + 1)
        for v in cands:
            if reflect and not ok(x, v):
                continue
            img[x] = v
            if reflect:
                holders[v].append(x)
            rec(x + 1)
            if reflect:
                holders[v].pop()
        img[x] = 0

    rec(1)
    return out


def _search_job(args):
    return _search(*args)


def _build(spec: SemigroupSpec, workers: int) -> ElementSet:
    n, l = spec.n, spec.l
    if spec.variant is Variant.FULL:
        keys = itertools.product(range(1, n + 1), repeat=n)
        return ElementSet((Transformation(k) for k in keys), n=n, presorted=True)
    reflect = spec.variant is Variant.REFLECTING
    if workers > 1:
        jobs = [(n, l, reflect, v) for v in range(1, n + 1)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_search_job, jobs))
        keys = [k for part in parts for k in part]
    else:
        keys = _search(n, l, reflect)
    return ElementSet((Transformation(k) for k in keys), n=n, presorted=True)


@lru_cache(maxsize=64)
def _cached_build(spec: SemigroupSpec) -> ElementSet:
    return _build(spec, 1)


def enumerate_semigroup(spec: SemigroupSpec, workers: int = 1,
                        cache_dir: str | Path | None = None) -> ElementSet:
    """All elements of T_n, T_n(l) or T*_n(l), canonically ordered.

    Images are filled for x = 1..n; once x - l exists only its two l-neighbours
    are tried.  The star variant also rejects any new image that sits at
    distance l from an earlier image other than the partner's.
    """
    _check_budget(spec)
    if cache_dir is not None:
        cached = load_cached(spec, cache_dir)
        if cached is not None:
            return cached
    result = _build(spec, workers) if workers > 1 else _cached_build(spec)
    if cache_dir is not None:
        store_cached(spec, result, cache_dir)
    return result


def enumerate_naive(spec: SemigroupSpec) -> ElementSet:
    """Filter all n^n maps through the membership predicate; test oracle only."""
    n = spec.n
    if n ** n > MAX_ELEMENTS:
        raise CapacityError(f"naive filter over {n}^{n} maps is over budget")
    maps = (Transformation(k) for k in itertools.product(range(1, n + 1), repeat=n))
    return ElementSet((a for a in maps if spec.contains(a)), n=n, presorted=True)


# -- cache files -------------------------------------------------------------------

def store_cached(spec: SemigroupSpec, elements: ElementSet, cache_dir: str | Path) -> Path:
    path = Path(cache_dir) / spec.cache_name
    path.parent.mkdir(parents=True, exist_ok=True)
    header = [f"{spec.name}", f"size {len(elements)}"]
    write_elements(path, elements, header=header)
    return path


def load_cached(spec: SemigroupSpec, cache_dir: str | Path, samples: int = 64) -> ElementSet | None:
    """Load a cache file, or None if missing or failing revalidation.

    Trust requires: the recorded size matches the body, rows are strictly
    increasing, plain-variant size matches the chain count, and a seeded
    sample of rows satisfies the membership predicate.
    """
    path = Path(cache_dir) / spec.cache_name
    if not path.exists():
        return None
    declared = None
    for line in path.read_text().splitlines():
        if line.startswith("# size "):
            declared = int(line.split()[2])
    try:
        elems = read_elements(path)
    except ValueError:
        return None
    if declared is None or declared != len(elems):
        return None
    if any(a.n != spec.n for a in elems):
        return None
    if any(elems[i].images >= elems[i + 1].images for i in range(len(elems) - 1)):
        return None
    if spec.variant is Variant.PRESERVING and len(elems) != count_preserving(spec.n, spec.l):
        return None
    if spec.variant is Variant.FULL and len(elems) != spec.n ** spec.n:
        return None
    rng = random.Random(f"{spec.cache_name}:{len(elems)}")
    picks = rng.sample(elems, min(samples, len(elems)))
    if not all(spec.contains(a) for a in picks):
        return None
    return ElementSet(elems, n=spec.n, presorted=True)


# -- structural lemma checks for the star variant -------------------------------------

def class_lemma_violations(a: Transformation, l: int) -> dict[str, list[str]]:
    """Check the residue-class properties (a)-(h) that every element of T*_n(l)
    with 2l <= n must satisfy.  Returns {property: [messages]} for failures only.
    """
    n = a.n
    dec = class_decomposition(n, l)
    classes, mult = dec.classes, dec.multiplicities
    im = a.images
    image = set(im)
    bad: dict[str, list[str]] = {}

    def fail(key, msg):
        bad.setdefault(key, []).append(msg)

    # (a) collisions only between x and x + 2l
    for x in range(1, n + 1):
        for y in range(x + 1, n + 1):
            if a(x) == a(y) and y != x + 2 * l:
                fail("a", f"{x}a = {y}a but {y} != {x} + 2l")

    targets = []
    for i, cls in enumerate(classes, 1):
        hit = {class_of(a(x), l) for x in cls}
        # (b) a class lands inside a single class
        if len(hit) != 1:
            fail("b", f"A_{i} maps into classes {sorted(hit)}")
        targets.append(min(hit))

    # (c) distinct classes have disjoint images
    imgs = [{a(x) for x in cls} for cls in classes]
    for i in range(l):
        for j in range(i + 1, l):
            common = imgs[i] & imgs[j]
            if common:
                fail("c", f"A_{i + 1}a and A_{j + 1}a share {sorted(common)}")

    for i, cls in enumerate(classes):
        if mult[i] < 3:
            continue
        steps = {a(cls[k + 1]) - a(cls[k]) for k in range(len(cls) - 1)}
        # (d) arithmetic progression with step +l or -l
        if steps not in ({l}, {-l}):
            fail("d", f"A_{i + 1} images {[a(x) for x in cls]} not a step-l progression")
        # (e) injective on the class
        if len(imgs[i]) != len(cls):
            fail("e", f"|A_{i + 1}a| = {len(imgs[i])} != {len(cls)}")

    # (f) classes of different multiplicity (the larger >= 3) do not meet under a
    for i in range(l):
        for j in range(l):
            if mult[i] < mult[j] and mult[j] >= 3:
                if imgs[j] & set(classes[i]):
                    fail("f", f"A_{i + 1} meets A_{j + 1}a")
                if imgs[i] & set(classes[j]):
                    fail("f", f"A_{j + 1} meets A_{i + 1}a")

    # (g) classes of each multiplicity >= 3 are permuted among themselves
    for m in sorted(set(mult)):
        if m < 3:
            continue
        zone = [j for j in range(l) if mult[j] == m]
        sent = {}
        for j in zone:
            k = targets[j] - 1
            if imgs[j] != set(classes[k]) or mult[k] != m:
                fail("g", f"A_{j + 1}a is not a class of multiplicity {m}")
            sent[j] = k
        if sorted(sent.values()) != zone:
            fail("g", f"multiplicity-{m} classes are not permuted")

    # (h) points missed by a are ends of multiplicity-2 classes
    doubles = [i + 1 for i in range(l) if mult[i] == 2]
    for u in sorted(set(range(1, n + 1)) - image):
        j = class_of(u, l)
        low_ok = u == j and mult[j - 1] == 2 and (j + 2 * l) in image
        high_ok = u == j + 2 * l and mult[j - 1] == 2 and j in image
        if not (low_ok or high_ok):
            fail("h", f"missed point {u} is not an end of a multiplicity-2 class")
    for j in doubles:
        if j + l not in image:
            fail("h", f"middle point {j + l} of A_{j} is missed")
    return bad


def pair_lemma_violations(a: Transformation, l: int) -> list[str]:
    """For 2l >= n: middle maps into middle, and each partner pair (x, x+l)
    lands on an oriented partner pair, with distinct pairs landing disjointly."""
    n = a.n
    dec = pair_decomposition(n, l)
    middle = set(dec.middle)
    bad = []
    for x in dec.middle:
        if a(x) not in middle:
            bad.append(f"middle point {x} maps outside the middle to {a(x)}")
    seen: dict[int, int] = {}
    for x, y in dec.pairs:
        u, v = a(x), a(y)
        if sorted((u, v)) not in ([i, i + l] for i in range(1, n - l + 1)):
            bad.append(f"pair ({x},{y}) maps to ({u},{v}), not a partner pair")
        for w in (u, v):
            if w in seen and seen[w] != x:
                bad.append(f"pairs ({seen[w]},{seen[w] + l}) and ({x},{y}) share image {w}")
            seen[w] = x
    return bad
