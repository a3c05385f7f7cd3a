import random
from fractions import Fraction as F

import pytest

from dahapoly.rootdata import build_root_system, ConfigurationError


def test_constants_from_known_systems():
    assert build_root_system("D", 4).m == 2
    g2 = build_root_system("G", 2)
    assert g2.O == (0,)
    assert g2.O_star == ()
    a1 = build_root_system("A", 1)
    assert a1.n_pos == 1
    # b1 = alpha/2: the single positive root has coordinate vector (2,)
    assert a1.pos_roots[0] == (F(2),)
    assert a1.pairing((1,), (1,)) == F(1, 2)
    assert a1.m == 2  # rank-1 system follows the |Pi| rule


def test_unsupported_configurations():
    with pytest.raises(ConfigurationError):
        build_root_system("D", 3)
    with pytest.raises(ConfigurationError):
        build_root_system("Z", 2)
    with pytest.raises(ConfigurationError):
        build_root_system("E", 6, weyl_cap=100)


def test_bilinear_form():
    a1 = build_root_system("A", 1)
    assert a1.pairing((1,), (1,)) == F(1, 2)
    assert a1.pairing((3,), (0,)) == 0
    a2 = build_root_system("A", 2)
    assert a2.pairing((1, 0), a2.alpha[0]) == 1
    assert a2.pairing((1, 0), a2.alpha[1]) == 0
    # symmetry and positivity on a few vectors
    rng = random.Random(0)
    for _ in range(20):
        b = tuple(rng.randint(-3, 3) for _ in range(2))
        c = tuple(rng.randint(-3, 3) for _ in range(2))
        assert a2.pairing(b, c) == a2.pairing(c, b)
        if any(b):
            assert a2.pairing(b, b) > 0


def test_dominance_compare():
    a1 = build_root_system("A", 1)
    assert a1.dominance_compare((-2,), (0,)) == "greater"
    assert a1.dominance_compare((-1,), (-1,)) == "equal"
    assert a1.dominance_compare((-1,), (-2,)) == "incomparable"
    a2 = build_root_system("A", 2)
    assert a2.dominance_compare((-1, -1), (0, 0)) == "greater"
    assert a2.dominance_compare((0, 0), (-1, -1)) == "less"


def test_affine_lengths_examples():
    a1 = build_root_system("A", 1)
    assert a1.aff_length(a1.aff_identity()) == 0
    assert a1.lambda_set(a1.aff_identity()) == []
    assert a1.aff_length((0, (1,))) == 1
    a2 = build_root_system("A", 2)
    assert a2.aff_length((0, (1, 0))) == 2
    assert a2.aff_length((0, (1, 1))) == 4


def test_reduced_word_examples():
    a1 = build_root_system("A", 1)
    r, word = a1.reduced_word((0, (1,)))
    assert r == 1 and word == (1,)
    r, word = a1.reduced_word(a1.aff_identity())
    assert r == 0 and word == ()
    a2 = build_root_system("A", 2)
    r, word = a2.reduced_word((0, (1, 1)))
    assert r == 0 and len(word) == 4


def test_length_formula_on_dominant_translations():
    # l_nu(b) = 2 (b, rho_nu) for dominant b, up to level 4
    for lab, rank in [("A", 2), ("B", 2), ("G", 2), ("A", 3)]:
        rs = build_root_system(lab, rank)
        from itertools import product
        for ks in product(range(5), repeat=rank):
            if sum(ks) > 4 or not any(ks):
                continue
            b = tuple(ks)
            ls = rs.aff_lengths((0, b))
            for nu in rs.nu_classes:
                assert ls[nu] == 2 * rs.pairing(b, rs.rho_nu[nu])


def test_random_words_recompose_and_lambda():
    rng = random.Random(7)
    for lab, rank in [("A", 1), ("A", 2), ("B", 2), ("A", 3)]:
        rs = build_root_system(lab, rank)
        for _ in range(25):
            g = rs.pi_pair(rng.choice(rs.O))
            for _ in range(rng.randint(0, 12)):
                g = rs.aff_mul(g, rs.aff_simple_pair(rng.randint(0, rank)))
            r, word = rs.reduced_word(g)
            assert rs.recompose(r, word) == g
            assert len(word) == rs.aff_length(g)
            lam = rs.lambda_set(g)
            assert len(lam) == len(word)
            # every listed affine root is positive and sent negative
            for ar in lam:
                assert not rs.aff_root_negative(ar)
                assert rs.aff_root_negative(rs.aff_act(g, ar))


def test_pi_permutes_affine_diagram():
    for lab, rank in [("A", 1), ("A", 2), ("B", 2), ("C", 3), ("A", 3)]:
        rs = build_root_system(lab, rank)
        for r in rs.O_star:
            perm = rs.pi_diagram_perm[r]
            assert perm is not None and sorted(perm) == list(range(rank + 1))
            assert perm[0] == r  # pi_r sends the affine node to node r


def test_longest_element():
    for lab, rank in [("A", 2), ("B", 2), ("G", 2), ("D", 4), ("F", 4)]:
        rs = build_root_system(lab, rank)
        w0 = rs.w0
        assert rs.mul(w0, w0) == 0
        for i in range(rs.n_pos):
            img = rs.act(w0, rs.pos_roots[i])
            assert rs.root_index[img] >= rs.n_pos


def test_json_roundtrip():
    rs = build_root_system("B", 2)
    data = rs.to_json()
    assert data["m"] == 1 and data["weyl_order"] == 8
    assert data["O"] == [0, 1]
