import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from length_semigroups import (CapacityError, SemigroupSpec, Variant, compose, decompose,
                               enumerate_naive, enumerate_semigroup, identity, make,
                               preserves_length, reflects_length)
from length_semigroups.structure import (class_decomposition, class_lemma_violations,
                                         count_preserving, length_violation, load_cached,
                                         pair_decomposition, pair_lemma_violations,
                                         reflection_violation, store_cached)
from oracles import all_members, member_by_definition
from strategies import cells, transformations

P, R, F = Variant.PRESERVING, Variant.REFLECTING, Variant.FULL
CELLS_6 = [(n, l) for n in range(2, 7) for l in range(1, n)]
CELLS_7 = [(n, l) for n in range(2, 8) for l in range(1, n)]


def test_spec_validation():
    SemigroupSpec(2, 1)
    for n, l in [(1, 1), (4, 0), (4, 4)]:
        with pytest.raises(ValueError):
            SemigroupSpec(n, l)
    with pytest.raises(CapacityError):
        SemigroupSpec(13, 2)
    assert SemigroupSpec(5, 2, "star").variant is R
    with pytest.raises(ValueError):
        SemigroupSpec(5, 2, "bogus")


def test_spec_names():
    assert SemigroupSpec(5, 2).name == "T_5(2)"
    assert SemigroupSpec(5, 2, R).name == "T*_5(2)"
    assert SemigroupSpec(5, 2, F).name == "T_5"
    assert SemigroupSpec(5, 2, R).cache_name == "T_5_2_star.txt"


def test_preserves_examples():
    assert preserves_length(make(5, [1, 1, 2, 4, 4]), 3)
    for n in range(2, 8):
        for l in range(1, n):
            assert not preserves_length(make(n, [1] * n), l)
            assert preserves_length(identity(n), l)


def test_reflects_examples():
    assert not reflects_length(make(5, [1, 1, 1, 4, 4]), 3)
    assert reflects_length(make(5, [1, 2, 3, 4, 1]), 2)
    for n in range(2, 8):
        for l in range(1, n):
            assert reflects_length(identity(n), l)


def test_l_out_of_range():
    with pytest.raises(ValueError):
        preserves_length(identity(4), 4)
    with pytest.raises(ValueError):
        reflects_length(identity(4), 0)


def test_violation_reports_closest_pair():
    a = make(5, [1, 1, 1, 4, 4])
    assert length_violation(a, 3) is None
    assert reflection_violation(a, 3) == (3, 4)
    assert length_violation(make(4, [1, 1, 1, 1]), 2) == (1, 3)


@given(cells(max_n=7), st.data())
def test_predicates_match_definition(cell, data):
    n, l = cell
    a = data.draw(transformations(n=n))
    assert preserves_length(a, l) == member_by_definition(a.images, l)
    assert reflects_length(a, l) == member_by_definition(a.images, l, reflect=True)


# -- decompositions ---------------------------------------------------------------

def test_decompose_examples():
    d = decompose(5, 3)
    assert d.regime == "pairs" and d.pairs == ((1, 4), (2, 5)) and d.middle == (3,)
    d = decompose(4, 2)
    assert d.regime == "pairs" and d.pairs == ((1, 3), (2, 4)) and d.middle == ()
    d = decompose(7, 2)
    assert d.regime == "classes"
    assert d.classes == ((1, 3, 5, 7), (2, 4, 6)) and d.multiplicities == (3, 2)


@pytest.mark.parametrize("n,l", CELLS_7)
def test_decomposition_invariants(n, l):
    d = decompose(n, l)
    if 2 * l >= n:
        assert d.regime == "pairs"
        assert (len(d.middle) == 0) == (2 * l == n)
        covered = [x for p in d.pairs for x in p] + list(d.middle)
        for x in d.middle:
            assert all(abs(x - y) != l for y in range(1, n + 1))
    else:
        assert d.regime == "classes"
        covered = [x for c in d.classes for x in c]
        assert list(d.multiplicities) == sorted(d.multiplicities, reverse=True)
        assert all(len(c) == m + 1 for c, m in zip(d.classes, d.multiplicities))
    assert sorted(covered) == list(range(1, n + 1))


@pytest.mark.parametrize("n", [2, 4, 6, 8])
def test_views_coincide_at_half(n):
    l = n // 2
    pairs, classes = pair_decomposition(n, l), class_decomposition(n, l)
    assert pairs.pairs == classes.classes
    assert set(classes.multiplicities) == {1}


# -- enumeration -------------------------------------------------------------------

def test_enumerate_small_listings():
    assert [a.images for a in enumerate_semigroup(SemigroupSpec(2, 1))] == [(1, 2), (2, 1)]
    expected = [(1, 2, 1), (1, 2, 3), (2, 1, 2), (2, 3, 2), (3, 2, 1), (3, 2, 3)]
    assert [a.images for a in enumerate_semigroup(SemigroupSpec(3, 1))] == expected


def test_enumerate_sizes_4_2():
    # sizes frozen from tests/oracles.all_members
    assert len(enumerate_semigroup(SemigroupSpec(4, 2, P))) == 16
    assert len(enumerate_semigroup(SemigroupSpec(4, 2, R))) == 8


@pytest.mark.parametrize("n,l", CELLS_6)
@pytest.mark.parametrize("variant", [P, R])
def test_backtracking_equals_naive(n, l, variant):
    spec = SemigroupSpec(n, l, variant)
    fast = enumerate_semigroup(spec)
    assert fast == enumerate_naive(spec)


@pytest.mark.parametrize("n,l", [(3, 1), (4, 3), (5, 2), (5, 3)])
def test_backtracking_equals_definition(n, l):
    for variant, reflect in [(P, False), (R, True)]:
        keys = [a.images for a in enumerate_semigroup(SemigroupSpec(n, l, variant))]
        assert keys == all_members(n, l, reflect)


@pytest.mark.parametrize("n,l", CELLS_7)
def test_count_matches_enumeration(n, l):
    assert count_preserving(n, l) == len(enumerate_semigroup(SemigroupSpec(n, l)))


def test_count_top_length():
    # T_n(n-1): 1 and n fixed or swapped, the rest free
    for n in range(3, 10):
        assert count_preserving(n, n - 1) == 2 * n ** (n - 2)


@pytest.mark.parametrize("n,l", CELLS_7)
def test_inclusions(n, l):
    plain = enumerate_semigroup(SemigroupSpec(n, l, P))
    star = enumerate_semigroup(SemigroupSpec(n, l, R))
    assert star.issubset(plain)
    assert len(plain) < n ** n
    assert identity(n) in star
    assert (plain == star) == ((n, l) in {(2, 1), (3, 1)})


@pytest.mark.parametrize("n,l", [(n, l) for n in range(2, 6) for l in range(1, n)])
def test_plain_strictly_inside_full(n, l):
    plain = enumerate_semigroup(SemigroupSpec(n, l, P))
    full = enumerate_semigroup(SemigroupSpec(n, l, F))
    assert len(full) == n ** n
    assert plain.issubset(full) and len(plain) < len(full)


@pytest.mark.parametrize("n,l", [(n, l) for n in range(2, 6) for l in range(1, n)])
@pytest.mark.parametrize("variant", [P, R])
def test_closed_under_composition(n, l, variant):
    spec = SemigroupSpec(n, l, variant)
    elems = enumerate_semigroup(spec)
    for a in elems:
        for b in elems:
            assert spec.contains(compose(a, b))


@settings(max_examples=200)
@given(cells(max_n=7), st.data())
def test_closure_sampled(cell, data):
    n, l = cell
    for variant in (P, R):
        elems = enumerate_semigroup(SemigroupSpec(n, l, variant))
        a = data.draw(st.sampled_from(elems.elements))
        b = data.draw(st.sampled_from(elems.elements))
        assert compose(a, b) in elems


@pytest.mark.parametrize("n,l", [(6, 1), (7, 3), (7, 6)])
@pytest.mark.parametrize("variant", [P, R])
def test_parallel_enumeration_matches(n, l, variant):
    spec = SemigroupSpec(n, l, variant)
    assert enumerate_semigroup(spec, workers=3) == enumerate_semigroup(spec)


def test_enumeration_budget():
    with pytest.raises(CapacityError):
        enumerate_semigroup(SemigroupSpec(10, 9))
    with pytest.raises(CapacityError):
        enumerate_semigroup(SemigroupSpec(8, 2, F))
    with pytest.raises(CapacityError):
        enumerate_naive(SemigroupSpec(8, 2))


def test_cache_roundtrip(tmp_path):
    spec = SemigroupSpec(5, 2, R)
    first = enumerate_semigroup(spec, cache_dir=tmp_path)
    path = tmp_path / "T_5_2_star.txt"
    assert path.exists()
    assert load_cached(spec, tmp_path) == first
    assert enumerate_semigroup(spec, cache_dir=tmp_path) == first


def test_cache_rejects_tampering(tmp_path):
    spec = SemigroupSpec(5, 2, P)
    elems = enumerate_semigroup(spec)
    store_cached(spec, elems, tmp_path)
    path = tmp_path / spec.cache_name
    lines = path.read_text().splitlines()
    # drop one row: declared size no longer matches
    path.write_text("\n".join(lines[:-1]) + "\n")
    assert load_cached(spec, tmp_path) is None
    # swap a row for a non-member while keeping size and order plausible
    body = [ln for ln in lines if not ln.startswith("#")]
    body[0] = "1 1 1 1 1"
    path.write_text("\n".join(lines[:2] + sorted(body)) + "\n")
    assert load_cached(spec, tmp_path) is None
    # fresh enumeration replaces the bad file
    assert enumerate_semigroup(spec, cache_dir=tmp_path) == elems
    assert load_cached(spec, tmp_path) == elems


# -- structural properties of T*_n(l) -----------------------------------------------

@pytest.mark.parametrize("n,l", [(n, l) for n, l in CELLS_7 if 2 * l <= n])
def test_class_lemmas_hold(n, l):
    for a in enumerate_semigroup(SemigroupSpec(n, l, R)):
        assert class_lemma_violations(a, l) == {}, a


@pytest.mark.parametrize("n,l", [(n, l) for n, l in CELLS_7 if 2 * l >= n])
def test_pair_structure_holds(n, l):
    for a in enumerate_semigroup(SemigroupSpec(n, l, R)):
        assert pair_lemma_violations(a, l) == [], a


def test_class_lemma_checks_can_fail():
    # in T_6(2) but not T*_6(2): 1 and 2 collide across classes
    bad = class_lemma_violations(make(6, [1, 1, 3, 3, 5, 5]), 2)
    assert "a" in bad and "c" in bad
    # constant-on-class map breaks the progression and injectivity checks
    bad = class_lemma_violations(make(7, [1, 2, 3, 4, 1, 6, 3]), 2)
    assert "d" in bad and "e" in bad


def test_pair_lemma_checks_can_fail():
    msgs = pair_lemma_violations(make(5, [1, 1, 1, 4, 4]), 3)
    assert msgs
