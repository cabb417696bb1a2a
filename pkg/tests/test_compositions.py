from math import comb, factorial

import pytest
from hypothesis import given, strategies as st

from slidebij.compositions import (
    C_SENTINEL,
    CompositionError,
    asym_multinomial,
    brute_force_compositions,
    compositions,
    derive,
    format_composition,
    is_reverse_catalan,
    is_right_justified,
    maxzero,
    multinomial,
    parse_composition,
    reverse_catalan_compositions,
    undo_derive,
    zeros_right_of,
)


@st.composite
def balanced(draw, max_n=8):
    n = draw(st.integers(0, max_n))
    cuts = sorted(draw(st.lists(st.integers(0, n), min_size=n - 1, max_size=n - 1))) if n else []
    bounds = [0] + cuts + [n]
    return tuple(bounds[t + 1] - bounds[t] for t in range(n))


@pytest.mark.parametrize("k, want", [((0, 0, 2, 1, 1, 2), True), ((1, 1, 1, 1), True), ((2, 0), False)])
def test_reverse_catalan_examples(k, want):
    assert is_reverse_catalan(k) is want


@pytest.mark.parametrize("k, want", [((1, 0, 2, 1), 2), ((1, 1, 1), C_SENTINEL), ((0, 0, 2, 1, 1, 2), 2)])
def test_maxzero_examples(k, want):
    assert maxzero(k) == want


def test_sentinel_sorts_below_positions():
    assert C_SENTINEL < 1


@pytest.mark.parametrize("k, i, want", [
    ((0, 2, 0, 1, 0, 3), 2, 2),
    ((1, 1, 1), 1, 0),
    ((0, 0, 1, 1, 2, 0, 3, 1), 4, 1),
])
def test_zeros_right_of_examples(k, i, want):
    assert zeros_right_of(k, i) == want


def test_zeros_right_of_range():
    with pytest.raises(CompositionError):
        zeros_right_of((1, 1), 3)


@pytest.mark.parametrize("k, j, want", [((1, 0, 2, 1), 3, (1, 1, 1)), ((1, 0, 2, 1), 4, (1, 0, 2)), ((1, 1), 2, (1,))])
def test_derive_examples(k, j, want):
    assert derive(k, j) == want


@pytest.mark.parametrize("k, j", [((1, 0, 2, 1), 2), ((1, 0, 2, 1), 1), ((0, 2), 1)])
def test_derive_rejects_positions_left_of_maxzero_or_empty(k, j):
    with pytest.raises(CompositionError):
        derive(k, j)


@pytest.mark.parametrize("k, want", [
    ((1, 0, 2, 1), 8),
    ((0, 1, 2, 1), 12),
    ((1, 1, 1, 1), 24),
    ((0, 0, 0, 4), 1),
    ((1, 2, 1, 0), 0),
    ((), 1),
])
def test_asym_examples(k, want):
    assert asym_multinomial(k) == want


def test_asym_rejects_unbalanced():
    with pytest.raises(CompositionError):
        asym_multinomial((1, 2))


@pytest.mark.parametrize("k, want", [((1, 0, 2, 1), 12), ((0, 0, 0, 4), 1), ((1, 1, 1, 1), 24)])
def test_multinomial_examples(k, want):
    assert multinomial(k) == want


def test_factorial_case_up_to_ten():
    for n in range(11):
        assert asym_multinomial((1,) * n) == factorial(n)


def test_large_counts_are_exact():
    assert asym_multinomial((1,) * 25) == factorial(25)


def test_bounds_and_support_exhaustive():
    for n in range(9):
        for k in compositions(n):
            value = asym_multinomial(k)
            assert value <= multinomial(k)
            assert (value > 0) == is_reverse_catalan(k)


@given(balanced())
def test_recursion_self_consistent(k):
    if not k:
        return
    total = 0
    for j in range(maxzero(k) + 1, len(k) + 1):
        if k[j - 1]:
            total += asym_multinomial(derive(k, j))
    want = asym_multinomial(k)
    assert total == want or (want == 0 and not is_reverse_catalan(k))


@given(balanced())
def test_derive_then_undo(k):
    for j in range(maxzero(k) + 1, len(k) + 1):
        if k[j - 1]:
            zero_at = maxzero(k) if k[j - 1] > 1 else None
            assert undo_derive(derive(k, j), j, zero_at) == k


def test_composition_enumeration_matches_grid():
    for n in range(6):
        listed = list(compositions(n))
        assert len(listed) == len(set(listed)) == (comb(2 * n - 1, n) if n else 1)
        assert set(listed) == brute_force_compositions(n)
        assert listed == sorted(listed)


def test_reverse_catalan_enumeration():
    assert list(reverse_catalan_compositions(2)) == [(0, 2), (1, 1)]


def test_right_justified():
    assert is_right_justified((0, 1, 2, 1))
    assert not is_right_justified((1, 0, 2, 1))


def test_parse_and_format():
    assert parse_composition("0,0,2,1,1,2") == (0, 0, 2, 1, 1, 2)
    assert parse_composition(" ") == ()
    assert format_composition((1, 0, 2, 1)) == "1,0,2,1"
    for bad in ("1,,2", "a", "1,-1"):
        with pytest.raises(CompositionError):
            parse_composition(bad)
