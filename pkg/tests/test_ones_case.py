from itertools import permutations

import pytest
from hypothesis import given, strategies as st

from slidebij.caterpillar import tree_of_caterpillar_word
from slidebij.ones_case import OnesError, phi, rho, rho_bruteforce, rho_hat
from slidebij.patterns import PATTERN_23_1, contains_vincular
from slidebij.slide_rules import OMEGA, enumerate_slide_set, is_member
from slidebij.trees import parse_tree
from slidebij.verify import check_ones_branches

EXAMPLE = (8, 5, 3, 7, 6, 9, 4, 2, 1)


def _labels(et):
    if et is None:
        return []
    label, kids = et
    return [label] + [x for k in kids for x in _labels(k)]


def test_example_permutation():
    tree = rho(EXAMPLE)
    assert tree == parse_tree("(a,b,(((((c,1),2),(((3,4),(6,9)),7)),5),8))")
    assert phi(tree) == EXAMPLE
    assert is_member(tree, (1,) * 9, OMEGA)


def test_example_edge_shape():
    want = (8, ((5, ((3, ((2, ((1, ()),)), (7, ((6, ((4, ()), (9, ()))),)))),)),))
    assert rho_hat(EXAMPLE) == want


def test_empty_permutation():
    assert rho_hat(()) is None
    assert phi(rho(())) == ()


def test_avoiders_give_caterpillars():
    for n in range(1, 7):
        for p in permutations(range(1, n + 1)):
            if not contains_vincular(p, PATTERN_23_1):
                assert rho(p) == tree_of_caterpillar_word(p)


@given(st.integers(1, 9).flatmap(lambda n: st.permutations(range(1, n + 1))))
def test_round_trip_and_labels(perm):
    perm = tuple(perm)
    assert sorted(_labels(rho_hat(perm))) == sorted(perm)
    assert phi(rho(perm)) == perm


def test_rho_is_a_bijection_small():
    for n in range(6):
        ones = (1,) * n
        images = {rho(p) for p in permutations(range(1, n + 1))}
        assert images == enumerate_slide_set(ones, OMEGA)
        for tree in images:
            assert rho(phi(tree)) == tree


def test_bruteforce_agrees():
    for n in range(5):
        for p in permutations(range(1, n + 1)):
            assert rho_bruteforce(p) == rho(p)


@pytest.mark.parametrize("bad", [(1, 1), (0, 1), (2, 3)])
def test_rejects_non_permutations(bad):
    with pytest.raises(OnesError):
        rho(bad)


def test_branch_lemmas():
    assert check_ones_branches(5).passed
