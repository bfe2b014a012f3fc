import random
from fractions import Fraction

import pytest

from lietriple.algebra import LinearOperator
from lietriple.catalog import (
    example_1_2,
    full_matrix,
    full_matrix_gma,
    upper_triangular,
    upper_triangular_gma,
)
from lietriple.centralizers import (
    IdentityKind,
    block_decompose,
    build_from_blocks,
    corollary32_strengthen,
    is_identity_member,
    six_map_solution_space,
    six_maps_from_flat,
    solve_identity_space,
    verify_thm31_conditions,
)
from lietriple.errors import NotGMA
from lietriple.linalg import Matrix, Subspace

from oracles import dense_identity_space, residual_is_zero

F = Fraction
K = IdentityKind


@pytest.fixture(scope="module")
def gmas():
    return {
        "T2": upper_triangular_gma(2),
        "T3": upper_triangular_gma(3),
        "M2": full_matrix_gma(2),
        "M3": full_matrix_gma(3),
    }


@pytest.fixture(scope="module")
def ex12():
    return example_1_2()


def rand_combination(space, rng):
    flat = (F(0),) * space.ambient
    for bv in space.basis:
        c = F(rng.randint(-3, 3), rng.choice((1, 2)))
        flat = tuple(a + c * b for a, b in zip(flat, bv))
    return flat


class TestSolutionDimensions:
    def test_t2_ltc_matches_dense_oracle(self):
        t2 = upper_triangular(2)
        got = solve_identity_space(t2, K.LIE_TRIPLE_CENTRALIZER)
        oracle = dense_identity_space(t2, "ltc")
        assert got.dim == 3
        assert got == oracle

    def test_m2_ltc_matches_dense_oracle(self):
        m2 = full_matrix(2)
        got = solve_identity_space(m2, K.LIE_TRIPLE_CENTRALIZER)
        oracle = dense_identity_space(m2, "ltc")
        assert got.dim == 2
        assert got == oracle

    def test_example_ltc_is_everything(self, ex12):
        space = solve_identity_space(ex12.gma.algebra, K.LIE_TRIPLE_CENTRALIZER)
        assert space.dim == 144
        assert space.is_full()

    def test_example_lie_centralizer_strictly_smaller(self, ex12):
        space = solve_identity_space(ex12.gma.algebra, K.LIE_CENTRALIZER)
        assert space.dim == 33  # exact-kernel value, frozen as a regression
        # soundness: each basis solution satisfies the identity element-wise
        alg = ex12.gma.algebra
        for v in space.basis[:5]:
            assert residual_is_zero(alg, LinearOperator.from_flat(alg, v).matrix, "lc")

    def test_identity_operator_in_all_centralizer_kinds(self, gmas):
        for u in gmas.values():
            for kind in (K.LIE_CENTRALIZER, K.LIE_TRIPLE_CENTRALIZER, K.JORDAN_CENTRALIZER):
                space = solve_identity_space(u.algebra, kind)
                assert space.contains_vector(LinearOperator.identity(u.algebra).flatten())

    def test_derivation_oracle_agreement_on_t2(self):
        t2 = upper_triangular(2)
        for kind, name in ((K.DERIVATION, "der"), (K.LIE_DERIVATION, "lieder"),
                           (K.JORDAN_DERIVATION, "jder"), (K.LIE_TRIPLE_DERIVATION, "ltd")):
            assert solve_identity_space(t2, kind) == dense_identity_space(t2, name)


class TestInclusionLattice:
    def test_centralizer_inclusions(self, gmas, ex12):
        algebras = [u.algebra for u in gmas.values()] + [ex12.gma.algebra]
        for alg in algebras:
            ltc = solve_identity_space(alg, K.LIE_TRIPLE_CENTRALIZER)
            assert ltc.contains(solve_identity_space(alg, K.LIE_CENTRALIZER))
            assert ltc.contains(solve_identity_space(alg, K.JORDAN_CENTRALIZER))

    def test_strictness_on_example(self, ex12):
        alg = ex12.gma.algebra
        ltc = solve_identity_space(alg, K.LIE_TRIPLE_CENTRALIZER)
        lc = solve_identity_space(alg, K.LIE_CENTRALIZER)
        assert lc.dim < ltc.dim
        assert not lc.contains(ltc)


class TestMembership:
    def test_example_phi_is_triple_but_not_lie(self, ex12):
        alg = ex12.gma.algebra
        assert is_identity_member(alg, K.LIE_TRIPLE_CENTRALIZER, ex12.phi)
        chk = is_identity_member(alg, K.LIE_CENTRALIZER, ex12.phi)
        assert not chk
        assert chk.witness is not None and chk.lhs != chk.rhs

    def test_catalog_witness_pair(self, ex12):
        phi, a0, b0 = ex12.phi, ex12.a0, ex12.b0
        assert phi(a0 * b0 - b0 * a0) != phi(a0) * b0 - b0 * phi(a0)

    def test_zero_operator_member_everywhere(self, gmas):
        for u in gmas.values():
            for kind in K:
                target = u if kind is K.SINGULAR_JORDAN_DERIVATION else u.algebra
                assert is_identity_member(target, kind, LinearOperator.zero(u.algebra))

    def test_membership_agrees_with_subspace(self, gmas):
        rng = random.Random(9)
        for u in gmas.values():
            alg = u.algebra
            space = solve_identity_space(alg, K.LIE_TRIPLE_CENTRALIZER)
            for _ in range(5):
                member = LinearOperator.from_flat(alg, rand_combination(space, rng))
                assert is_identity_member(alg, K.LIE_TRIPLE_CENTRALIZER, member)
                assert space.contains_vector(member.flatten())
            # perturb: add a non-member direction when one exists
            full = Subspace.full(space.ambient)
            if space != full:
                outside = next(
                    v for v in full.basis if not space.contains_vector(v)
                )
                bad = LinearOperator.from_flat(
                    alg, tuple(a + b for a, b in zip(member.flatten(), outside))
                )
                assert not is_identity_member(alg, K.LIE_TRIPLE_CENTRALIZER, bad)
                assert not space.contains_vector(bad.flatten())

    def test_middle_slot_variant_same_space(self):
        for alg in (upper_triangular(2), upper_triangular(3), full_matrix(2)):
            ltc = solve_identity_space(alg, K.LIE_TRIPLE_CENTRALIZER)
            assert dense_identity_space(alg, "ltc_middle") == ltc

    def test_middle_slot_variant_on_example(self, ex12):
        # Triple products vanish identically, so the middle-slot identity
        # holds for arbitrary operators, matching the full solved space.
        alg = ex12.gma.algebra
        rng = random.Random(4)
        op = LinearOperator.from_flat(
            alg, tuple(F(rng.randint(-2, 2)) for _ in range(144))
        )
        assert residual_is_zero(alg, op.matrix, "ltc_middle")

    def test_sjd_requires_block_structure(self):
        with pytest.raises(NotGMA):
            solve_identity_space(upper_triangular(2), K.SINGULAR_JORDAN_DERIVATION)

    def test_sjd_vanishes_on_faithful_catalog(self, gmas):
        # Faithful pairings force both off-diagonal swap maps to zero.
        for u in gmas.values():
            assert solve_identity_space(u, K.SINGULAR_JORDAN_DERIVATION).is_zero()

    def test_sjd_nonzero_on_zero_pairing_context(self):
        from lietriple.catalog import rationals
        from lietriple.gma import Bimodule, MoritaContext, assemble

        q = rationals()
        reg = Bimodule.regular(q)
        zero_pairing = (((0,),),)
        u = assemble(MoritaContext(q, q, reg, reg, zero_pairing, zero_pairing))
        space = solve_identity_space(u, K.SINGULAR_JORDAN_DERIVATION)
        assert space.dim == 2  # the two off-diagonal swaps survive
        jder = solve_identity_space(u.algebra, K.JORDAN_DERIVATION)
        assert jder.contains(space)
        for v in space.basis:
            op = LinearOperator.from_flat(u.algebra, v)
            assert is_identity_member(u, K.SINGULAR_JORDAN_DERIVATION, op)


class TestBlockDecompose:
    def test_identity_on_t2(self, gmas):
        u = gmas["T2"]
        d = block_decompose(u, LinearOperator.identity(u.algebra))
        assert d.alpha1 == Matrix.identity(1)
        assert d.tau2 == Matrix.identity(1)
        assert d.beta4 == Matrix.identity(1)
        for name in ("alpha2", "alpha3", "alpha4", "beta1", "beta2", "beta3",
                      "tau1", "tau3", "tau4"):
            assert getattr(d, name).is_zero()

    def test_central_scaling_on_m2(self, gmas):
        u = gmas["M2"]
        op = 3 * LinearOperator.identity(u.algebra)
        d = block_decompose(u, op)
        for name in ("alpha1", "beta4", "tau2", "gamma3"):
            mat = getattr(d, name)
            assert mat.data[0][0] == 3

    def test_example_phi_corners(self, ex12):
        d = block_decompose(ex12.gma, ex12.phi)
        assert d.alpha4 == Matrix.identity(3)  # A-corner lands in B
        assert d.beta1 == Matrix.identity(3)  # B-corner lands in A
        for name in ("alpha1", "alpha2", "alpha3", "beta2", "beta3", "beta4",
                      "tau1", "tau2", "tau3", "tau4",
                      "gamma1", "gamma2", "gamma3", "gamma4"):
            assert getattr(d, name).is_zero()

    def test_exact_reassembly(self, gmas):
        rng = random.Random(17)
        for u in gmas.values():
            n = u.algebra.dim
            op = LinearOperator.from_flat(
                u.algebra, tuple(F(rng.randint(-5, 5), rng.choice((1, 2, 3))) for _ in range(n * n))
            )
            assert block_decompose(u, op).reassemble() == op


class TestThm31Conditions:
    def test_ltc_basis_passes(self, gmas):
        for u in gmas.values():
            space = solve_identity_space(u.algebra, K.LIE_TRIPLE_CENTRALIZER)
            for v in space.basis:
                op = LinearOperator.from_flat(u.algebra, v)
                rep = verify_thm31_conditions(u, block_decompose(u, op))
                assert rep.passed, rep.failures

    def test_identity_passes_on_m2(self, gmas):
        u = gmas["M2"]
        rep = verify_thm31_conditions(u, block_decompose(u, LinearOperator.identity(u.algebra)))
        assert rep.passed

    def test_swap_map_fails(self, gmas):
        u = gmas["M2"]
        swap = LinearOperator(
            u.algebra,
            Matrix.from_cols([(1, 0, 0, 0), (0, 0, 1, 0), (0, 1, 0, 0), (0, 0, 0, 1)]),
        )
        assert not is_identity_member(u.algebra, K.LIE_TRIPLE_CENTRALIZER, swap)
        rep = verify_thm31_conditions(u, block_decompose(u, swap))
        assert not rep.passed

    def test_six_map_space_dimension_equals_solution_space(self, gmas):
        # The block form is a bijection: same dimension on both sides.
        for u in gmas.values():
            ltc = solve_identity_space(u.algebra, K.LIE_TRIPLE_CENTRALIZER)
            assert six_map_solution_space(u).dim == ltc.dim


class TestBuildFromBlocks:
    def test_identity_components(self, gmas):
        u = gmas["T2"]
        ident = Matrix.identity(1)
        zero = Matrix.zeros(1, 1)
        op = build_from_blocks(u, ident, zero, ident, Matrix.zeros(0, 0), zero, ident)
        assert op == LinearOperator.identity(u.algebra)

    def test_t2_scalar_family(self, gmas):
        # Components (p, q, t, r, s) with t = p - r = s - q satisfy the
        # conditions; anything else fails with a witness.
        u = gmas["T2"]
        space = solve_identity_space(u.algebra, K.LIE_TRIPLE_CENTRALIZER)

        def op_of(p, q, t, r, s):
            m = lambda x: Matrix([[F(x)]])
            return build_from_blocks(u, m(p), m(q), m(t), Matrix.zeros(0, 0), m(r), m(s))

        good = op_of(5, 2, 3, 2, 5)  # t = 5-2 = 3 = 5-2
        assert space.contains_vector(good.flatten())
        assert is_identity_member(u.algebra, K.LIE_TRIPLE_CENTRALIZER, good)
        bad = op_of(5, 2, 4, 2, 5)  # t != p - r
        chk = is_identity_member(u.algebra, K.LIE_TRIPLE_CENTRALIZER, bad)
        assert not chk and chk.witness is not None
        assert not space.contains_vector(bad.flatten())

    def test_random_valid_tuples_assemble_into_space(self, gmas):
        rng = random.Random(23)
        for u in gmas.values():
            tuples = six_map_solution_space(u)
            ltc = solve_identity_space(u.algebra, K.LIE_TRIPLE_CENTRALIZER)
            for _ in range(5):
                maps = six_maps_from_flat(u, rand_combination(tuples, rng))
                op = build_from_blocks(
                    u, maps["alpha1"], maps["beta1"], maps["tau2"],
                    maps["gamma3"], maps["alpha4"], maps["beta4"],
                )
                assert ltc.contains_vector(op.flatten())


class TestCorollary32:
    def test_m2_ranges_trivially_central(self, gmas):
        u = gmas["M2"]
        space = solve_identity_space(u.algebra, K.LIE_TRIPLE_CENTRALIZER)
        for v in space.basis:
            rep = corollary32_strengthen(u, block_decompose(u, LinearOperator.from_flat(u.algebra, v)))
            assert rep.passed

    def test_m3_with_matrix_corner(self):
        # Split M3 after two rows: A = M2(Q), so range(beta1) must land in
        # the scalars of that corner.
        u = full_matrix_gma(3, split=2)
        assert u.dims == (4, 2, 2, 1)
        space = solve_identity_space(u.algebra, K.LIE_TRIPLE_CENTRALIZER)
        for v in space.basis:
            d = block_decompose(u, LinearOperator.from_flat(u.algebra, v))
            rep = corollary32_strengthen(u, d)
            assert rep.passed

    def test_zero_operator_passes(self, gmas):
        u = gmas["T2"]
        rep = corollary32_strengthen(u, block_decompose(u, LinearOperator.zero(u.algebra)))
        assert rep.passed
