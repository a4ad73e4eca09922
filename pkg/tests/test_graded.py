"""Core graded machinery: Koszul signs, tensor products, composition."""

import itertools
import random
from fractions import Fraction

import pytest

from dghopf.fields import GF, QQ
from dghopf.graded import (
    GradedBasis,
    GradedMap,
    compose_permutations,
    from_one_line,
    interleave_permutation,
    inverse_permutation,
    koszul_sign,
    permutation_map,
    permutation_operator,
    permute_tuple,
    tensor_labels,
    tensor_of_maps,
    transposition,
)


def brute_force_sign(sigma, degrees):
    """Oracle: decompose into adjacent transpositions, multiplying the sign
    (-1)^(d_i * d_j) for each swap of neighbors."""
    items = list(range(len(sigma)))
    degs = list(degrees)
    target = list(permute_tuple(sigma, items))
    sign = 1
    current = items[:]
    cur_degs = degs[:]
    # bubble the current arrangement into the target arrangement
    for pos in range(len(target)):
        want = target[pos]
        at = current.index(want)
        while at > pos:
            d1, d2 = cur_degs[at - 1], cur_degs[at]
            if d1 % 2 and d2 % 2:
                sign = -sign
            current[at - 1], current[at] = current[at], current[at - 1]
            cur_degs[at - 1], cur_degs[at] = cur_degs[at], cur_degs[at - 1]
            at -= 1
    assert current == target
    return sign


def two_point_basis():
    return GradedBasis(("1", "x"), (0, 1))


def mixed_basis():
    return GradedBasis(("1", "a", "b", "c"), (0, 1, 2, 3))


class TestPermutationSigns:
    def test_odd_odd_transposition(self):
        sigma = transposition(2, 1, 2)
        assert koszul_sign(sigma, (1, 1)) == -1

    def test_even_odd_transposition(self):
        sigma = transposition(2, 1, 2)
        assert koszul_sign(sigma, (2, 1)) == 1

    def test_six_factor_interleave_matches_brute_force(self):
        # frozen oracle value: 3 inverted odd pairs, so the sign is -1
        sigma = interleave_permutation(3)
        degrees = (1, 1, 1, 1, 1, 1)
        assert brute_force_sign(sigma, degrees) == -1
        assert koszul_sign(sigma, degrees) == -1

    def test_signs_match_brute_force_exhaustively(self):
        for n in (2, 3):
            for sigma in itertools.permutations(range(n)):
                for degrees in itertools.product((0, 1, 2), repeat=n):
                    assert koszul_sign(sigma, degrees) == \
                        brute_force_sign(sigma, degrees)

    def test_signed_index_map(self):
        slot_map, sign = permutation_operator(transposition(2, 1, 2), (1, 1))
        assert permute_tuple(slot_map, ("u", "v")) == ("v", "u")
        assert sign == -1

    def test_operator_convention_sends_slot_i_to_sigma_i(self):
        # output slot j carries the input from slot sigma^{-1}(j)
        sigma = from_one_line([2, 3, 1])
        out = permute_tuple(sigma, ("p", "q", "r"))
        inv = inverse_permutation(sigma)
        assert out == tuple(("p", "q", "r")[inv[j]] for j in range(3))


class TestKoszulCoherence:
    def test_operators_compose_as_a_left_action(self):
        """permutation_operator(s∘t) = operator(s)∘operator(t), exhaustively
        over all pairs on <= 4 slots and all degree vectors in {0,1,2}^4."""
        for n in (2, 3, 4):
            perms = list(itertools.permutations(range(n)))
            for degrees in itertools.product((0, 1, 2), repeat=n):
                for sigma in perms:
                    for tau in perms:
                        lab = tuple(range(n))
                        # apply tau first, then sigma
                        mid = permute_tuple(tau, lab)
                        mid_degs = permute_tuple(tau, degrees)
                        s1 = koszul_sign(tau, degrees)
                        s2 = koszul_sign(sigma, mid_degs)
                        final = permute_tuple(sigma, mid)
                        comp = compose_permutations(sigma, tau)
                        assert final == permute_tuple(comp, lab)
                        assert s1 * s2 == koszul_sign(comp, degrees)

    def test_permutation_maps_compose_on_a_real_basis(self):
        basis = mixed_basis()
        slots = (basis,) * 3
        for sigma in itertools.permutations(range(3)):
            for tau in itertools.permutations(range(3)):
                ms = permutation_map(sigma, permute_tuple(tau, slots), QQ)
                mt = permutation_map(tau, slots, QQ)
                mc = permutation_map(compose_permutations(sigma, tau), slots, QQ)
                assert ms.compose(mt) == mc


class TestTensorOfMaps:
    def test_koszul_sign_on_odd_map(self):
        basis = two_point_basis()
        h = (basis,)
        # f = identity, g of degree 1 with g(1) = x
        one = GradedMap.identity(h, QQ)
        g = GradedMap(h, h, 1, QQ, {(0,): {(1,): Fraction(1)}})
        fg = tensor_of_maps(one, g)
        # (1⊗g)(x⊗1) = -x⊗g(1): the odd g moves past the odd x
        assert fg.column((1, 0)) == {(1, 1): Fraction(-1)}
        # (1⊗g)(1⊗1) = 1⊗x, no sign
        assert fg.column((0, 0)) == {(0, 1): Fraction(1)}

    def test_identity_tensor_identity(self):
        basis = mixed_basis()
        h = (basis,)
        one = GradedMap.identity(h, QQ)
        assert tensor_of_maps(one, one) == GradedMap.identity(h * 2, QQ)

    def test_degree_zero_right_factor_kills_sign(self):
        basis = two_point_basis()
        h = (basis,)
        f = GradedMap(h, h, 1, QQ, {(0,): {(1,): Fraction(1)}})
        one = GradedMap.identity(h, QQ)
        f1 = tensor_of_maps(f, one)
        assert f1.column((0, 1)) == {(1, 1): Fraction(1)}

    def test_associativity_up_to_label_identification(self):
        basis = two_point_basis()
        h = (basis,)
        f = GradedMap(h, h, 1, QQ, {(0,): {(1,): Fraction(2)}})
        g = GradedMap(h, h, 0, QQ, {(1,): {(1,): Fraction(3)}})
        k = GradedMap(h, h, 1, QQ, {(0,): {(1,): Fraction(-1)}})
        left = tensor_of_maps(tensor_of_maps(f, g), k)
        right = tensor_of_maps(f, tensor_of_maps(g, k))
        assert left == right

    def test_elementwise_sign_rule_on_example_algebra(self):
        from dghopf.examples import exterior_hopf
        H = exterior_hopf(2)
        h = (H.basis,)
        d_like = GradedMap(h, h, 1, QQ,
                           {(H.basis.index("x1"),): {
                               (H.basis.index("x1*x2"),): Fraction(1)}})
        fg = tensor_of_maps(d_like, d_like)
        for src, col in fg.cols.items():
            s1 = H.basis.degrees[src[0]]
            expected_sign = -1 if (1 * s1) % 2 else 1
            for tgt, v in col.items():
                by_hand = d_like.column((src[0],)).get((tgt[0],), Fraction(0)) \
                    * d_like.column((src[1],)).get((tgt[1],), Fraction(0)) \
                    * expected_sign
                assert v == by_hand


class TestCompose:
    def test_identity_laws(self):
        basis = mixed_basis()
        h = (basis,)
        one = GradedMap.identity(h, QQ)
        f = GradedMap(h, h, 1, QQ, {(1,): {(2,): Fraction(5)}})
        assert one.compose(f) == f
        assert f.compose(one) == f

    def test_zero_absorbs(self):
        basis = mixed_basis()
        h = (basis,)
        z = GradedMap.zero(h, h, 0, QQ)
        f = GradedMap(h, h, 1, QQ, {(1,): {(2,): Fraction(5)}})
        assert f.compose(z).is_zero()
        assert z.compose(f).is_zero()

    def test_random_sparse_composition_against_dense_oracle(self):
        rng = random.Random(11)
        basis = mixed_basis()
        h = (basis,)
        labels1 = tensor_labels(h)
        for _ in range(25):
            def random_map(p):
                cols = {}
                for src in labels1:
                    col = {}
                    sdeg = basis.degrees[src[0]]
                    for tgt in labels1:
                        if basis.degrees[tgt[0]] != sdeg + p:
                            continue
                        c = rng.randint(-3, 3)
                        if c:
                            col[tgt] = Fraction(c)
                    if col:
                        cols[src] = col
                return GradedMap(h, h, p, QQ, cols)
            f = random_map(1)
            g = random_map(0)
            fg = f.compose(g)
            n = len(basis)
            dense_f = [[f.column((j,)).get((i,), Fraction(0)) for j in range(n)]
                       for i in range(n)]
            dense_g = [[g.column((j,)).get((i,), Fraction(0)) for j in range(n)]
                       for i in range(n)]
            dense = [[sum(dense_f[i][k] * dense_g[k][j] for k in range(n))
                      for j in range(n)] for i in range(n)]
            for i in range(n):
                for j in range(n):
                    assert fg.column((j,)).get((i,), Fraction(0)) == dense[i][j]

    def test_shape_mismatch_raises(self):
        basis = mixed_basis()
        h = (basis,)
        f = GradedMap.identity(h, QQ)
        g = GradedMap.identity(h * 2, QQ)
        with pytest.raises(ValueError):
            f.compose(g)


class TestGradedBasis:
    def test_connectedness_enforced(self):
        with pytest.raises(ValueError):
            GradedBasis(("a", "b"), (1, 1))
        with pytest.raises(ValueError):
            GradedBasis(("1", "e", "f"), (0, 0, 1))
        with pytest.raises(ValueError):
            GradedBasis(("x", "1"), (1, 0))

    def test_degree_invariant_on_entries(self):
        basis = two_point_basis()
        h = (basis,)
        with pytest.raises(ValueError):
            GradedMap(h, h, 0, QQ, {(0,): {(1,): Fraction(1)}})

    def test_label_enumeration_is_sorted_and_filtered(self):
        basis = mixed_basis()
        h = (basis,)
        labs = tensor_labels(h * 2, max_degree=3, positive=True)
        assert labs == sorted(labs)
        assert all(0 not in lab for lab in labs)
        assert all(basis.degrees[a] + basis.degrees[b] <= 3 for a, b in labs)

    def test_prime_field_maps(self):
        field = GF(5)
        basis = two_point_basis()
        h = (basis,)
        f = GradedMap(h, h, 0, field, {(1,): {(1,): field(7)}})
        assert f.column((1,)) == {(1,): field(2)}
        assert (f + f + f + f + f).is_zero()
