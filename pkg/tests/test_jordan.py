import pytest

from rograd.algebras import matrix_algebra, split_octonions
from rograd.jordan import (
    albert_algebra,
    hermitian_algebra,
    hermitian_grid,
    pair_idempotent_peirce,
    peirce,
    rectangular_grid,
    rectangular_pair,
    verify_grid,
    verify_pair_identities,
    op_apply,
)
from rograd.rings import GF, QQ, ZZ
from rograd.roots import build, three_grading


@pytest.fixture(scope="module")
def DQ():
    return matrix_algebra(1, QQ, involution="identity")


@pytest.fixture(scope="module")
def M12(DQ):
    return rectangular_pair(1, 2, DQ)


class TestRectangularPair:
    def test_q_on_grid_members(self, M12):
        # Q_{E12}(E21) = E12: basis 0 of V+ is E[1,2], basis 0 of V- is E[2,1]
        out = op_apply(M12.ring, M12.Q_of(1, {0: 1}), {0: 1})
        assert out == {0: 1}

    def test_collinearity_triple(self, M12):
        # {E12 E21 E13} = E13
        out = M12.triple(1, {0: 1}, {0: 1}, {1: 1})
        assert out == {1: 1}

    def test_orthogonal_annihilation(self, DQ):
        V = rectangular_pair(2, 2, DQ)
        # plus basis: (i,j) -> i*2+j; minus: (j,i) -> j*2+i
        # E13 = (0,0) plus; E42 = minus (1,1); orthogonal cells
        q = V.Q_of(1, {0: 1})  # Q_{E13}
        assert op_apply(V.ring, q, {3: 1}) == {}  # Q_{E13} E42 = 0

    def test_identities_m12_m13(self, DQ):
        for j in (2, 3):
            V = rectangular_pair(1, j, DQ)
            rep = verify_pair_identities(V)
            assert all(viol == 0 for (_, viol, _) in rep.values())

    def test_identities_m22(self, DQ):
        V = rectangular_pair(2, 2, DQ)
        rep = verify_pair_identities(V, budget=10_000)
        assert all(viol == 0 for (_, viol, _) in rep.values())

    def test_octonion_pair_rejected_when_too_big(self):
        O = split_octonions(QQ)
        with pytest.raises(ValueError):
            rectangular_pair(2, 2, O)  # card K = 4 needs associativity

    def test_grid_verifies(self, M12, DQ):
        g = three_grading(build("A", 2), "collinear")
        fam = rectangular_grid(1, 2, DQ)
        rep = verify_grid(M12, fam, g)
        assert rep.ok
        assert rep.joint_dims() == {(1, -1, 0): 1, (1, 0, -1): 1}

    def test_duplicated_idempotent_fails(self, M12, DQ):
        g = three_grading(build("A", 2), "collinear")
        fam = rectangular_grid(1, 2, DQ)
        dup = dict(fam)
        dup[(1, 0, -1)] = dup[(1, -1, 0)]
        rep = verify_grid(M12, dup, g)
        assert not rep.ok
        assert any("associated != expected" in f for f in rep.failures)


class TestPairIdempotentPeirce:
    def test_grid_member_spaces(self, M12, DQ):
        fam = rectangular_grid(1, 2, DQ)
        pp = pair_idempotent_peirce(M12, fam[(1, -1, 0)])
        assert len(pp[2][1]) == 1  # V_2 contains E12 * D
        assert len(pp[1][1]) == 1
        assert len(pp[0][1]) == 0

    def test_zero_idempotent(self, M12):
        pp = pair_idempotent_peirce(M12, ({}, {}))
        assert len(pp[0][1]) == M12.dim(1)
        assert len(pp[2][1]) == 0

    def test_collinear_grid_members_mutually_v1(self, M12, DQ):
        fam = rectangular_grid(1, 2, DQ)
        e, f = fam[(1, -1, 0)], fam[(1, 0, -1)]
        pp_e = pair_idempotent_peirce(M12, e)
        from rograd.jordan import _membership_tester

        in_v1_plus = _membership_tester(QQ, pp_e[1][1], M12.dim(1))
        assert in_v1_plus(f[0])


class TestHermitianAlgebra:
    def test_h3_over_q(self, DQ):
        J = hermitian_algebra(3, DQ)
        assert J.dim == 6
        # the unit is an idempotent in the circle convention: u o u = 2u
        assert J.is_idempotent(J.unit)

    def test_product_rules(self, DQ):
        J = hermitian_algebra(3, DQ)
        idx = J.hermitian_data["index"]
        a12 = J.basis_vec(idx[(0, 1, 0)])
        b23 = J.basis_vec(idx[(1, 2, 0)])
        b21 = a12  # over Q with identity involution, 1[21] = 1[12]
        # a[12] o b[23] = (ab)[13]
        assert J.mul(a12, b23) == J.basis_vec(idx[(0, 2, 0)])
        # a[12] o b[21] = (ab + bbar abar)[11] + (ba + abar bbar)[22]
        out = J.mul(a12, b21)
        expected = J.add(
            J.smul(2, J.basis_vec(idx[(0, 0, 0)])),
            J.smul(2, J.basis_vec(idx[(1, 1, 0)])),
        )
        assert out == expected

    def test_h3_octonions_dim_27(self):
        O = split_octonions(QQ)
        J = hermitian_algebra(3, O)
        assert J.dim == 27

    def test_h4_needs_associative(self):
        O = split_octonions(QQ)
        with pytest.raises(ValueError):
            hermitian_algebra(4, O)

    def test_needs_half(self):
        D = matrix_algebra(1, ZZ, involution="identity")
        with pytest.raises(ValueError):
            hermitian_algebra(3, D)

    def test_peirce_square_lemma(self, DQ):
        # sum of J_ik^2 covers sum of J_ii for card I >= 3
        J = hermitian_algebra(3, DQ)
        es = [J.basis_vec(i) for i in range(3)]
        dec = peirce(J, es)
        from rograd.jordan import _membership_tester

        off = []
        for (a, b), vecs in dec.spaces.items():
            if a != b:
                for x in vecs:
                    for y in vecs:
                        off.append(J.mul(x, y))
        tester = _membership_tester(QQ, off, J.dim)
        for i in range(3):
            for v in dec.spaces[(i + 1, i + 1)]:
                assert tester(v)

    def test_hermitian_grid_c4(self):
        D = matrix_algebra(1, QQ, involution="identity")
        J = hermitian_algebra(4, D)
        V = J.pair()
        g = three_grading(build("C", 4), "hermitian")
        rep = verify_grid(V, hermitian_grid(J), g)
        assert rep.ok
        assert all(d == 1 for d in rep.joint_dims().values())


@pytest.fixture(scope="module")
def A():
    return albert_algebra(QQ)


class TestAlbertAlgebra:

    def test_dimension(self, A):
        assert A.dim == 27

    def test_e_products(self, A):
        e1 = A.basis_vec(0)
        assert A.mul(e1, e1) == A.smul(2, e1)
        # e_1 o P_1(x) = 0
        p1x = A.basis_vec(3)
        assert A.mul(e1, p1x) == {}
        # e_2 o P_1(x) = P_1(x)
        assert A.mul(A.basis_vec(1), p1x) == p1x

    def test_p_cross_product(self, A):
        # P_1(x) o P_2(y) = P_3(ybar xbar)
        O = A.albert_data["octonions"]
        p_idx = A.albert_data["p_idx"]
        for t in (0, 3, 5):
            for s in (1, 4, 7):
                lhs = A.mul(A.basis_vec(p_idx(0, t)), A.basis_vec(p_idx(1, s)))
                prod = O.mul(O.conj(O.basis_vec(s)), O.conj(O.basis_vec(t)))
                rhs = {p_idx(2, u): c for u, c in prod.items()}
                assert lhs == rhs

    def test_p_same_index_norm(self, A):
        O = A.albert_data["octonions"]
        p_idx = A.albert_data["p_idx"]
        # P_1(x) o P_1(y) = N(x,y)(e_2 + e_3)
        lhs = A.mul(A.basis_vec(p_idx(0, 0)), A.basis_vec(p_idx(0, 4)))
        val = O.norm_bilinear(O.basis_vec(0), O.basis_vec(4))
        assert lhs == ({1: val, 2: val} if val else {})

    def test_matches_hermitian_construction(self, A):
        O = split_octonions(QQ)
        H = hermitian_algebra(3, O)
        assert H.dim == A.dim == 27

    def test_peirce(self, A):
        es = [A.basis_vec(i) for i in range(3)]
        dec = peirce(A, es)
        dims = dec.dims()
        assert dims[(1, 1)] == dims[(2, 2)] == dims[(3, 3)] == 1
        assert dims[(1, 2)] == dims[(1, 3)] == dims[(2, 3)] == 8

    def test_single_idempotent_unit(self, A):
        dec = peirce(A, [A.unit])
        assert dec.dims() == {(1, 1): 27}

    def test_unsupported_ring(self):
        with pytest.raises(ValueError):
            albert_algebra(GF(3))
        with pytest.raises(ValueError):
            albert_algebra(ZZ)

    def test_pair_idempotents(self, A):
        V = A.pair()
        for i in range(3):
            e = (A.basis_vec(i), A.basis_vec(i))
            assert V.is_idempotent(e)


class TestJordanAlgebraBasics:
    def test_u_operator_unit(self, DQ):
        J = hermitian_algebra(3, DQ)
        for i in range(J.dim):
            assert J.U_apply(J.unit, J.basis_vec(i)) == J.basis_vec(i)

    def test_pair_identities_of_h3(self, DQ):
        V = hermitian_algebra(3, DQ).pair()
        rep = verify_pair_identities(V, budget=8_000)
        assert all(viol == 0 for (_, viol, _) in rep.values())

    def test_json(self, DQ):
        data = hermitian_algebra(3, DQ).to_json()
        assert data["dim"] == 6
        assert "u_op" in data and "table" in data


class TestOctonionPairPeirce:
    def test_grid_member_v2_is_octonion_cell(self):
        # V_2 of (E_12, E_21) in M(1,2,O) is the full E_12*O cell (dim 8)
        O = split_octonions(QQ)
        V = rectangular_pair(1, 2, O)
        fam = rectangular_grid(1, 2, O)
        pp = pair_idempotent_peirce(V, fam[(1, -1, 0)])
        assert len(pp[2][1]) == 8 and len(pp[1][1]) == 8 and len(pp[0][1]) == 0
        # the V_2 plus-part is exactly the first coordinate cell
        for vec in pp[2][1]:
            assert all(c < 8 for c in vec)
