import pytest
from hypothesis import given, strategies as st

from slidebij.bijection import (
    BijectionError,
    BijectionStep,
    big_pi,
    big_sigma,
    content,
    d_omega_parts,
    decompose,
    format_word,
    last,
    min2,
    parse_word,
    pi_ij,
    pi_j,
    sigma_ij,
    sigma_ij_cases,
    sigma_j,
    tree_of_word,
    word_of,
    word_steps,
)
from slidebij.compositions import asym_multinomial, derive, maxzero, reverse_catalan_compositions, undo_derive
from slidebij.slide_rules import OMEGA, enumerate_slide_set, is_member
from slidebij.trees import C, T0, is_caterpillar, leaves, parse_tree, serialize_tree
from slidebij.caterpillar import caterpillar_word

WORKED_TREE = "(a,b,((c,((2,4),((3,5),8))),(1,(6,7))))"
WORKED_K = (0, 0, 1, 1, 2, 0, 3, 1)
WORKED_CHAIN = ["6357465", "524635", "41352", "3124", "312", "21", "1", ""]


def _members(max_n):
    for n in range(1, max_n + 1):
        for k in reverse_catalan_compositions(n):
            for tree in sorted(enumerate_slide_set(k, OMEGA), key=serialize_tree):
                yield k, tree


def test_min2_examples():
    assert min2((C, 1)) == 1
    assert min2(((C, 1), 2)) == 1
    assert min2((C, (1, 2))) == (1, 2)
    with pytest.raises(BijectionError):
        min2(3)


def test_min2_shrinks():
    for _, tree in _members(3):
        branch = tree[2]
        while not isinstance(branch, int):
            smaller = min2(branch)
            assert len(list(leaves(smaller))) < len(list(leaves(branch)))
            branch = smaller


def test_last_examples():
    assert last(parse_tree("(a,b,(2,(1,c)))"), (1, 1)) == 1
    assert last(T0, ()) == C
    assert last(parse_tree(WORKED_TREE), WORKED_K) == 7


def test_last_after_sigma_j_is_j():
    for k, tree in _members(4):
        for j in range(maxzero(k) + 1, len(k) + 2):
            assert last(sigma_j(tree, k, j), undo_derive(k, j, None)) == j


def test_path_decomposition_invariants():
    for k, tree in _members(4):
        for leaf in range(1, len(k) + 1):
            try:
                dec = decompose(tree, k, leaf)
            except BijectionError:
                continue  # leaf hangs off the root vertex
            assert dec.minima[0] == C
            assert list(dec.minima) == sorted(set(dec.minima))
            if dec.length > 1:
                assert dec.minima[-2] < leaf
            for run in dec.runs:
                assert all(a > b for a, b in zip(run, run[1:]))


def test_decreasing_labels_give_one_run():
    tree = tree_of_word((3, 2, 1))
    dec = decompose(tree, (1, 1, 1), 1)
    assert dec.runs == ((3, 2, 1),)
    assert dec.length == 1


def test_sigma_ij_two_forms_agree_and_invert():
    for k, tree in _members(4):
        for i in range(maxzero(k) + 1, len(k) + 2):
            for j in range(i + 1, len(k) + 2):
                bigger = undo_derive(k, j, i)
                image = sigma_ij(tree, k, i, j)
                assert image == sigma_ij_cases(tree, k, i, j)
                assert is_member(image, bigger, OMEGA)
                assert pi_ij(image, bigger, i, j) == tree


def test_sigma_j_inverts():
    for k, tree in _members(4):
        for j in range(maxzero(k) + 1, len(k) + 2):
            bigger = undo_derive(k, j, None)
            image = sigma_j(tree, k, j)
            assert is_member(image, bigger, OMEGA)
            assert pi_j(image, bigger, j) == tree


def test_sigma_ij_precondition():
    with pytest.raises(BijectionError):
        sigma_ij(parse_tree("(a,b,(2,(1,c)))"), (1, 1), 2, 2)


def test_single_edge_tree_goes_back_to_base():
    tree = tree_of_word((1,))
    assert serialize_tree(tree) == "(a,b,(c,1))"
    assert pi_j(tree, (1,), 1) == T0


def test_top_heavy_two():
    assert d_omega_parts((0, 2)) == [(2, (1,))]
    assert len(enumerate_slide_set((0, 2), OMEGA)) == 1
    (only,) = enumerate_slide_set((1,), OMEGA)
    assert big_sigma(only, (0, 2), 2) in enumerate_slide_set((0, 2), OMEGA)


def test_big_maps_partition_small():
    for n in range(1, 5):
        for k in reverse_catalan_compositions(n):
            images = {}
            for j, smaller in d_omega_parts(k):
                for tree in enumerate_slide_set(smaller, OMEGA):
                    image = big_sigma(tree, k, j)
                    assert image not in images
                    images[image] = j
                    back, step = big_pi(image, k)
                    assert back == tree and step.j == j
                    assert step.tag == ("SIGMA_IJ" if k[j - 1] > 1 else "SIGMA_J")
            assert set(images) == enumerate_slide_set(k, OMEGA)
            assert len(images) == asym_multinomial(k)


def test_step_text():
    assert str(BijectionStep(3, None, (1, 1), (1, 1, 1))) == "sigma_3"
    assert str(BijectionStep(7, 6, (), ())) == "sigma_{6,7}"
    assert BijectionStep(7, C, (), ()).__str__() == "sigma_{c,7}"


def test_worked_chain():
    word = parse_word("73584757")
    assert [format_word(w) for w, _ in word_steps(word)] == WORKED_CHAIN
    tree = tree_of_word(word)
    assert serialize_tree(tree) == WORKED_TREE
    assert not is_caterpillar(tree)
    assert word_of(tree, WORKED_K) == word


def test_worked_tree_peels_to_6357465():
    tree = parse_tree(WORKED_TREE)
    back, step = big_pi(tree, WORKED_K)
    assert (step.i, step.j) == (6, 7)
    assert format_word(word_of(back, step.before)) == "6357465"
    assert back == tree_of_word(parse_word("6357465"))


def test_decreasing_caterpillar_word():
    assert word_of(parse_tree("(a,b,(2,(1,c)))"), (1, 1)) == (2, 1)


def test_invalid_words():
    with pytest.raises(BijectionError):
        tree_of_word((1, 1))
    with pytest.raises(BijectionError):
        tree_of_word((3, 1))


def test_words_small_exhaustive():
    for n in range(1, 5):
        for k in reverse_catalan_compositions(n):
            words = set()
            for tree in enumerate_slide_set(k, OMEGA):
                word = word_of(tree, k)
                assert content(word) == k
                assert word[-1] == last(tree, k)
                assert tree_of_word(word) == tree
                if is_caterpillar(tree):
                    assert caterpillar_word(tree, k) == word
                words.add(word)
            assert len(words) == asym_multinomial(k)


@st.composite
def members(draw):
    n = draw(st.integers(1, 5))
    ks = list(reverse_catalan_compositions(n))
    k = draw(st.sampled_from(ks))
    trees = sorted(enumerate_slide_set(k, OMEGA), key=serialize_tree)
    return k, draw(st.sampled_from(trees))


@given(members())
def test_word_round_trip(pair):
    k, tree = pair
    word = word_of(tree, k)
    assert tree_of_word(word) == tree
    assert last(tree, k) > maxzero(k)


def test_word_format():
    assert format_word((7, 3, 5)) == "735"
    assert format_word((10, 2)) == "10,2"
    assert parse_word("10,2") == (10, 2)
    assert parse_word("735") == (7, 3, 5)
    with pytest.raises(ValueError):
        parse_word("7x")
