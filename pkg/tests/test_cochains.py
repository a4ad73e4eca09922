"""The nine differentials: squares, commutation through D², specialization,
normalization closure."""

import itertools
from fractions import Fraction

import pytest

from dghopf.cochains import CartierComplex, Cochain, HochschildComplex, HopfComplex
from dghopf.cohomology import ComplexWindow, TotalCochain, assemble
from dghopf.examples import acyclic_cdga, exterior_hopf, truncated_polynomial_hopf
from dghopf.graded import GradedMap


@pytest.fixture(scope="module")
def lambda2():
    return exterior_hopf(2)


class TestClosedFormIdentities:
    @pytest.mark.parametrize("n", [1, 2])
    def test_del_B_of_identity_is_mu(self, n):
        H = exterior_hopf(n)
        ctx = HochschildComplex(H.algebra)
        ident = ctx.make(GradedMap.identity((H.basis,), H.field))
        assert ctx.del_B(ident) == ctx.make(H.mu)

    @pytest.mark.parametrize("n", [1, 2])
    def test_del_Omega_of_identity_is_delta(self, n):
        H = exterior_hopf(n)
        ctx = CartierComplex(H.coalgebra)
        ident = ctx.make(GradedMap.identity((H.basis,), H.field))
        assert ctx.del_Omega(ident) == ctx.make(H.delta)

    def test_d_B_of_identity_vanishes(self):
        A = acyclic_cdga(5)
        ctx = HochschildComplex(A)
        ident = ctx.make(GradedMap.identity((A.basis,), A.field))
        assert ctx.d_B(ident).is_zero()

    def test_d_B_is_zero_when_d_is(self):
        H = exterior_hopf(2)
        ctx = HochschildComplex(H.algebra)
        mu_c = ctx.make(H.mu)
        assert ctx.d_B(mu_c).is_zero()

    def test_del_B_hand_value_on_lambda2(self):
        # f of degree -1 with f(x1x2) = x1: del_B(f)(x1⊗x2) = -x1
        H = exterior_hopf(2)
        ctx = HochschildComplex(H.algebra)
        i1, i2 = H.basis.index("x1"), H.basis.index("x2")
        i12 = H.basis.index("x1*x2")
        f = ctx.make(GradedMap((H.basis,), (H.basis,), -1, H.field,
                               {(i12,): {(i1,): Fraction(1)}}))
        out = ctx.del_B(f)
        assert out.map.column((i1, i2)) == {(i1,): Fraction(-1)}

    def test_normalization_is_idempotent_and_closed(self):
        H = exterior_hopf(2)
        ctx = HochschildComplex(H.algebra)
        raw = GradedMap.identity((H.basis,), H.field)
        once = ctx.make(raw)
        assert ctx.make(once.map) == once
        assert (0,) not in once.map.cols  # the unit column was projected away
        out = ctx.del_B(once)
        for src in out.map.cols:
            assert all(H.basis.degrees[i] > 0 for i in src)


class TestSquaresAndWindows:
    @pytest.mark.parametrize("theory", ["hopf", "hochschild", "cartier"])
    @pytest.mark.parametrize("r", [1, 2, 3, 4])
    def test_assembled_squares_vanish(self, lambda2, theory, r):
        # AssembledComplex raises if any consecutive product is nonzero
        window = ComplexWindow(theory, 3, r)
        assemble(lambda2, window, degrees=range(max(1, r - 1), r + 2))

    def test_square_zero_over_prime_field(self):
        H = truncated_polynomial_hopf(5)
        for r in (1, 2, 3):
            assemble(H, ComplexWindow("hopf", 3, r))

    def test_q4_windows_also_square_to_zero(self, lambda2):
        for r in (1, 2, 3):
            assemble(lambda2, ComplexWindow("hopf", 4, r))

    def test_infinite_q_requires_caps(self):
        with pytest.raises(ValueError):
            ComplexWindow("hopf", None, 2)
        ComplexWindow("hopf", None, 2, m_max=3, n_max=3)

    def test_infinite_q_with_caps_squares_and_reports_clipping(self, lambda2):
        window = ComplexWindow("hopf", None, 2, m_max=2, n_max=2)
        cplx = assemble(lambda2, window)
        block = cplx.spaces[2][0]
        total = TotalCochain("hopf", {block.key: cplx._block_cochain(block, 0)})
        image, clipped = cplx.apply_total(total)
        # the (p, 2, n) component would leave the m-cap: must be flagged
        assert clipped or all(k[1] < 2 for k in total.components)

    def test_component_prefactor_spot_check(self, lambda2):
        # at (p,m,n) = (0,2,1) the prefactors are (+1, -1, +1)
        ctx = HopfComplex(lambda2)
        window = ComplexWindow("hopf", 3, 2)
        cplx = assemble(lambda2, window)
        block = next(b for b in cplx.spaces[2] if b.key == (0, 2, 1))
        f = cplx._block_cochain(block, 0)
        signed = ctx.signed_total((0, 2, 1), f)
        raw = {(1, 2, 1): ctx.d_C(f), (0, 3, 1): ctx.del_C(f),
               (0, 2, 2): ctx.delta_C(f)}
        for key, piece in signed.items():
            if key == (0, 3, 1):
                assert piece == -raw[key]
            else:
                assert piece == raw[key]


class TestSpecialization:
    """The triple complex restricted to n = 1 (resp. m = 1) with coefficients
    H reproduces the Hochschild (resp. Cartier) component differentials
    entrywise, and the total signs agree on the nose."""

    @pytest.mark.parametrize("r", [1, 2, 3])
    def test_n1_plane_matches_hochschild(self, lambda2, r):
        hopf = HopfComplex(lambda2)
        hoch = HochschildComplex(lambda2.algebra)
        window = ComplexWindow("hopf", 3, r)
        cplx = assemble(lambda2, window, degrees=[r])
        for block in cplx.spaces[r]:
            p, m, n = block.key
            if n != 1:
                continue
            for i in range(block.dim):
                f = cplx._block_cochain(block, i)
                fh = Cochain(f.map, True, False)
                assert hopf.d_C(f).map == hoch.d_B(fh).map
                assert hopf.del_C(f).map == hoch.del_B(fh).map
                # total prefactors: projection of D_C to the n=1 plane is D_B
                signed = hopf.signed_total((p, m, n), f)
                hoch_signed = hoch.signed_total((p, m), fh)
                assert signed.get((p + 1, m, 1), _z(f)).map == \
                    hoch_signed.get((p + 1, m), _z(f)).map
                assert signed.get((p, m + 1, 1), _z(f)).map == \
                    hoch_signed.get((p, m + 1), _z(f)).map

    @pytest.mark.parametrize("r", [1, 2, 3])
    def test_m1_plane_matches_cartier(self, lambda2, r):
        hopf = HopfComplex(lambda2)
        cart = CartierComplex(lambda2.coalgebra)
        window = ComplexWindow("hopf", 3, r)
        cplx = assemble(lambda2, window, degrees=[r])
        for block in cplx.spaces[r]:
            p, m, n = block.key
            if m != 1:
                continue
            for i in range(block.dim):
                f = cplx._block_cochain(block, i)
                fc = Cochain(f.map, False, True)
                assert hopf.d_C(f).map == cart.d_Omega(fc).map
                assert hopf.delta_C(f).map == cart.del_Omega(fc).map
                signed = hopf.signed_total((p, m, n), f)
                cart_signed = cart.signed_total((p, n), fc)
                assert signed.get((p + 1, 1, n), _z(f)).map == \
                    cart_signed.get((p + 1, n), _z(f)).map
                assert signed.get((p, 1, n + 1), _z(f)).map == \
                    cart_signed.get((p, n + 1), _z(f)).map


def _z(f):
    return Cochain(GradedMap.zero(f.map.source, f.map.target, 0, f.map.field),
                   False, False)


class TestNormalizationClosure:
    @pytest.mark.parametrize("r", [1, 2, 3])
    def test_all_differentials_preserve_normalized_spaces(self, lambda2, r):
        """Outputs of the signed total on window basis cochains vectorize
        back into the normalized window basis without residue; vectorize
        raises on any entry outside it."""
        for theory in ("hopf", "hochschild", "cartier"):
            window = ComplexWindow(theory, 3, r)
            cplx = assemble(lambda2, window, degrees=[r, r + 1])
            for j in range(cplx.dim(r)):
                image, clipped = cplx.apply_total(cplx.basis_element(r, j))
                assert not clipped
                cplx.vectorize(image, r + 1)
