import random
from itertools import product

import pytest

from oracles import burau_determinant, numpy_signature, random_word
from tbl.braid import BraidWord, cyclic_permute, parse_braid, self_linking, stabilize
from tbl.cover import chord_presentation, linking_matrix, sigma_x
from tbl.diagram import (close_braid, determinant, goeritz, is_alternating_braid_diagram,
                         permutation_cycles, signature, split_blocks, split_components)
from tbl.errors import UnsupportedInput
from tbl.khovanov import psi_nonzero
from tbl.linalg import int_det


def test_close_braid_structure():
    d = close_braid(BraidWord(3, (1, -2, 1)))
    assert [c.position for c in d.crossings] == [1, 2, 3]
    assert [c.sign for c in d.crossings] == [1, -1, 1]
    assert d.n_plus + d.n_minus == d.n == 3
    ids = [a.ident for a in d.arcs]
    assert len(ids) == len(set(ids)) == 2 * d.n
    ends = sorted(x for pair in d.in_arcs for x in pair)
    assert ends == ids  # every arc ends at exactly one crossing
    assert d.components == 2


def test_free_strands_get_closure_arcs():
    d = close_braid(BraidWord(3, (1,)))
    free = [a for a in d.arcs if a.start is None]
    assert [a.strand for a in free] == [2]
    assert d.closure_arc(2) == free[0].ident


def test_component_count_random():
    rng = random.Random(3)
    for _ in range(100):
        w = random_word(rng, rng.randint(1, 6), rng.randint(0, 12))
        assert close_braid(w).components == permutation_cycles(w.strands, w.letters)


def test_alternating_examples():
    assert is_alternating_braid_diagram(BraidWord(3, (1, -2, 1, -2)))
    assert is_alternating_braid_diagram(BraidWord(2, (1, 1, 1)))
    assert not is_alternating_braid_diagram(BraidWord(3, (1, 2)))
    assert not is_alternating_braid_diagram(BraidWord(3, (1, -1)))
    assert is_alternating_braid_diagram(BraidWord(4, (1, 3)))  # levels 1 and 3 not adjacent


def test_split_blocks():
    w = BraidWord(5, (1, -4, 1))
    assert split_blocks(w) == [(0, 1), (2, 2), (3, 4)]
    assert [c.letters for c in split_components(w)] == [(1, 1), (), (-1,)]


def test_goeritz_examples():
    g = goeritz(close_braid(parse_braid("1 1 1")))
    assert g.matrix.entries == ((-2, 1), (1, -2))
    assert g.mu == 0
    assert determinant(close_braid(parse_braid("1 -2 1 -2"))) == 5
    assert determinant(close_braid(BraidWord(2, ()))) == 0
    assert determinant(close_braid(BraidWord(1, ()))) == 1


def test_goeritz_drop_and_coloring_independence():
    rng = random.Random(5)
    for _ in range(60):
        w = random_word(rng, rng.randint(2, 5), rng.randint(1, 10))
        d = close_braid(w)
        base = determinant(d)
        for drop in range(4):
            assert abs(int_det(goeritz(d, drop=drop).matrix.entries)) == base
        alt = goeritz(d, alternate=True)
        assert abs(int_det(alt.matrix.entries)) == base
        if d.components == 1:
            assert numpy_signature(alt.matrix.tolist()) - alt.mu == signature(d)


def test_determinant_against_burau():
    rng = random.Random(8)
    for _ in range(60):
        w = random_word(rng, rng.randint(1, 4), rng.randint(0, 8))
        assert determinant(close_braid(w)) == burau_determinant(w)


def test_determinant_invariance():
    rng = random.Random(9)
    for _ in range(50):
        w = random_word(rng, rng.randint(1, 5), rng.randint(0, 12))
        det = determinant(close_braid(w))
        assert determinant(close_braid(cyclic_permute(w, rng.randint(0, 12)))) == det
        assert determinant(close_braid(stabilize(w, True))) == det
        assert determinant(close_braid(stabilize(w, False))) == det


def test_signature_examples():
    assert signature(close_braid(parse_braid("1 1 1"))) == -2
    assert signature(close_braid(parse_braid("1"))) == 0
    assert signature(close_braid(parse_braid("1 -2 1 -2"))) == 0
    assert signature(close_braid(parse_braid("-1 -1 -1"))) == 2
    for n in (3, 5, 7, 9):
        assert signature(close_braid(BraidWord(2, (1,) * n))) == -(n - 1)
    with pytest.raises(UnsupportedInput):
        signature(close_braid(parse_braid("1 1")))


def test_signature_matches_cover_and_mirror():
    rng = random.Random(10)
    seen = 0
    while seen < 60:
        w = random_word(rng, rng.randint(2, 5), rng.randint(1, 11))
        d = close_braid(w)
        if d.components != 1:
            continue
        seen += 1
        sig = signature(d)
        assert sig == sigma_x(linking_matrix(chord_presentation(w)))
        mirror = BraidWord(w.strands, tuple(-k for k in w.letters))
        assert signature(close_braid(mirror)) == -sig


def test_goeritz_and_linking_determinants_agree():
    rng = random.Random(12)
    for _ in range(200):
        w = random_word(rng, rng.randint(1, 5), rng.randint(0, 12))
        sp = linking_matrix(chord_presentation(w), check=False)
        assert abs(int_det(sp.linking_matrix.entries)) == determinant(close_braid(w))


def _alternating_words(max_b, max_n):
    for n in range(1, max_n + 1):
        yield from (BraidWord(2, (s,) * n) for s in (1, -1))
        if max_b >= 3:
            for s in (1, -1):
                for pattern in product((1, 2), repeat=n):
                    yield BraidWord(3, tuple(s * k if k == 1 else -s * k for k in pattern))


def test_alternating_knots_psi_criterion():
    count = 0
    for w in _alternating_words(3, 10):
        d = close_braid(w)
        if d.components != 1:
            continue
        count += 1
        expected = self_linking(w) == -signature(d) - 1
        assert psi_nonzero(d) == expected, w
    assert count > 100
