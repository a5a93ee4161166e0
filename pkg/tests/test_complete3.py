import random

import pytest
import sympy

from blockcomplete.complete3 import (
    Completion3, Instance3, assemble, certify, check_conditions, construct_completion, factorize,
    lemma12_check, product, trace_checks,
)
from blockcomplete.errors import Infeasible, NotSquare, Singular
from blockcomplete.exact import Mat, is_invertible, mat
from blockcomplete.generate import (
    feasible3, invertible_square3, random3, random_completion3, random_invertible, random_rank,
)

from gf2_oracle import exists_invertible_completion


def det(m):
    return sympy.Matrix(m.tolist()).det()


WORKED = Instance3(mat([[1], [0]]), mat([[1, 0], [0, 0]]), mat([[1, 0]]))
WORKED_M = mat([
    [1, 0, 0, 0, 0],
    [0, 0, 1, 0, 0],
    [0, 1, 0, 0, 0],
    [0, 0, 0, 0, 1],
    [0, 0, 0, 1, 0],
])
# beta(A) = 2, alpha(B) = 1, so R(J1)' and R(J2)' are both one-dimensional
BRIDGED = Instance3(mat([[1], [0], [0]]), mat([[1, 0], [0, 0]]), mat([[1, 0, 0]]))

I1 = Mat.identity(1)


class TestCheckConditions:
    def test_identity_diagonal(self):
        rep = check_conditions(Instance3(I1, I1, I1))
        assert rep.feasible
        assert (rep.alphaB, rep.alphaC, rep.betaA, rep.betaB) == (0, 0, 0, 0)

    def test_worked(self):
        rep = check_conditions(WORKED)
        assert (rep.alphaB, rep.betaA, rep.betaB, rep.alphaC) == (1, 1, 1, 1)
        assert rep.a_left_invertible and rep.c_right_invertible
        assert rep.b1 and rep.b2 and rep.c_iso and rep.feasible
        assert rep.first_failure is None

    def test_kernel_too_big(self):
        rep = check_conditions(Instance3(mat([[1], [0]]), Mat.zeros(2, 2), mat([[1, 0]])))
        assert rep.alphaB == 2 and rep.betaA == 1
        assert not rep.b1 and not rep.feasible
        assert rep.first_failure == "b1"

    def test_failure_order(self):
        assert check_conditions(Instance3(mat([[0]]), Mat.zeros(2, 2), I1)).first_failure == "a"
        # b2: beta(B) = 1 > alpha(C) = 0
        inst = Instance3(mat([[1], [0]]), mat([[1], [0]]), I1)
        assert check_conditions(inst).first_failure == "b2"
        # c: alphaB + alphaC = 0 + 1 != betaA + betaB = 0 + 0
        inst = Instance3(I1, I1, mat([[1, 0]]))
        assert check_conditions(inst).first_failure == "c"


class TestConstruct:
    def test_identity_diagonal_gives_zero_completion(self):
        comp, _ = construct_completion(Instance3(I1, I1, I1))
        assert comp.D.is_zero() and comp.E.is_zero() and comp.F.is_zero()

    def test_worked(self):
        comp, trace = construct_completion(WORKED)
        assert comp.D == mat([[0, 0], [0, 1]])
        assert comp.E == Mat.zeros(2, 2)
        assert comp.F == mat([[0, 0], [0, 1]])
        M = assemble(WORKED, comp)
        assert M == WORKED_M
        assert det(M) in (1, -1)
        assert trace.RJ2_prime.dim == 0
        assert all(trace_checks(WORKED, trace).values())

    def test_bridge_isomorphism_used(self):
        comp, trace = construct_completion(BRIDGED)
        assert trace.RJ1_prime.dim == trace.RJ2_prime.dim == 1
        assert not comp.E.is_zero()
        # hand execution of the construction with the canonical rules
        assert comp.D == mat([[0, 0], [0, 1], [0, 0]])
        assert comp.E == mat([[0, 0, 0], [0, 0, 0], [0, 0, 1]])
        assert comp.F == mat([[0, 0, 0], [0, 1, 0]])
        M = assemble(BRIDGED, comp)
        assert det(M) != 0
        assert all(trace_checks(BRIDGED, trace).values())

    def test_infeasible_names_condition(self):
        with pytest.raises(Infeasible) as exc:
            construct_completion(Instance3(mat([[1], [0]]), Mat.zeros(2, 2), mat([[1, 0]])))
        assert exc.value.condition == "b1"

    def test_deterministic(self):
        inst = feasible3(random.Random(11))
        a, ta = construct_completion(inst)
        b, tb = construct_completion(inst)
        assert a == b and ta.to_json() == tb.to_json()

    @pytest.mark.parametrize("seed", range(60))
    def test_sound_on_feasible(self, seed):
        inst = feasible3(random.Random(seed))
        comp, trace = construct_completion(inst)
        M = assemble(inst, comp)
        cert = certify(M)
        assert cert.M @ cert.M_inverse == Mat.identity(M.rows)
        assert all(trace_checks(inst, trace).values())

    @pytest.mark.parametrize("seed", range(10))
    def test_determinant_oracle(self, seed):
        inst = feasible3(random.Random(1000 + seed), max_dim=3)
        comp, _ = construct_completion(inst)
        assert det(assemble(inst, comp)) != 0


class TestAssembleCertify:
    def test_scalars(self):
        inst = Instance3(mat([[2]]), mat([[3]]), mat([[5]]))
        M = assemble(inst, Completion3(mat([[7]]), mat([[11]]), mat([[13]])))
        assert M == mat([[2, 7, 11], [0, 3, 13], [0, 0, 5]])

    def test_zero_completion_block_diagonal(self):
        inst = Instance3(Mat.identity(2), I1, Mat.identity(2))
        assert assemble(inst, Completion3.zero(inst)) == Mat.identity(5)

    def test_certify_identity(self):
        assert certify(Mat.identity(3)).M_inverse == Mat.identity(3)

    def test_certify_worked(self):
        assert certify(WORKED_M).M_inverse == WORKED_M.T

    def test_certify_not_square(self):
        with pytest.raises(NotSquare):
            certify(Mat.zeros(2, 3))

    @pytest.mark.parametrize("seed", range(10))
    def test_infeasible_square_gives_kernel_witness(self, seed):
        rng = random.Random(seed)
        # A = 0 on a square instance: never completable
        inst = Instance3(Mat.zeros(1, 1), random_invertible(2, rng), random_invertible(1, rng))
        M = assemble(inst, random_completion3(inst, rng))
        with pytest.raises(Singular) as exc:
            certify(M)
        v = exc.value.kernel_vector
        assert not v.is_zero() and (M @ v).is_zero()


class TestFactorize:
    def test_zero_completion(self):
        fs = factorize(WORKED, Completion3.zero(WORKED))
        assert fs[1].is_identity() and fs[3].is_identity()

    def test_worked(self):
        comp, _ = construct_completion(WORKED)
        fs = factorize(WORKED, comp)
        # X'+Y'+Z' = 5, X'+Y'+Z = 6, X'+Y+Z = 6, X+Y+Z = 5
        assert [f.shape for f in fs] == [(5, 6), (6, 6), (6, 6), (6, 6), (6, 5)]
        assert fs[0] == mat([[1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0], [0, 0, 1, 0, 0, 0],
                             [0, 0, 0, 1, 0, 0], [0, 0, 0, 0, 1, 0]])
        assert fs[4] == mat([[1, 0, 0, 0, 0], [0, 0, 0, 0, 0], [0, 1, 0, 0, 0],
                             [0, 0, 1, 0, 0], [0, 0, 0, 1, 0], [0, 0, 0, 0, 1]])
        # explicit multiplication through sympy as an independent oracle
        prod = sympy.eye(5)
        for f in fs:
            prod = prod * sympy.Matrix(f.tolist())
        assert prod == sympy.Matrix(WORKED_M.tolist())

    @pytest.mark.parametrize("seed", range(40))
    def test_product_exact(self, seed):
        rng = random.Random(seed)
        inst = random3(rng)
        comp = random_completion3(inst, rng)
        fs = factorize(inst, comp)
        assert product(fs) == assemble(inst, comp)
        assert is_invertible(fs[1]) and is_invertible(fs[3])


class TestLemma12:
    def test_all_invertible(self):
        rep = lemma12_check(Instance3(I1, I1, I1), Completion3.zero(Instance3(I1, I1, I1)))
        assert rep.M_invertible and rep.holds

    @pytest.mark.parametrize("seed", range(20))
    def test_square_variants(self, seed):
        inst, comp = invertible_square3(random.Random(seed))
        rep = lemma12_check(inst, comp)
        assert rep.A_invertible and rep.B_invertible and rep.M_invertible
        assert rep.C_invertible and rep.holds

    @pytest.mark.parametrize("seed", range(20))
    def test_singular_A_forces_singular_M(self, seed):
        rng = random.Random(seed)
        n = rng.randint(1, 3)
        A = random_rank(n, n, n - 1, rng)
        inst = Instance3(A, random_invertible(rng.randint(1, 3), rng), random_invertible(rng.randint(1, 3), rng))
        comp = random_completion3(inst, rng)
        rep = lemma12_check(inst, comp)
        assert not rep.M_invertible and rep.holds
        assert det(assemble(inst, comp)) == 0


@pytest.mark.parametrize("seed", range(200))
def test_squareness_and_index_arithmetic(seed):
    rep = check_conditions(random3(random.Random(seed), max_dim=3))
    if rep.feasible:
        assert rep.betaA - rep.alphaB == rep.alphaC - rep.betaB >= 0


def test_feasible_implies_square():
    for seed in range(200):
        inst = random3(random.Random(seed), max_dim=3)
        if check_conditions(inst).feasible:
            d = inst.dims
            assert d["X"] + d["Y"] + d["Z"] == d["X'"] + d["Y'"] + d["Z'"]


@pytest.mark.parametrize("seed", range(40))
def test_agrees_with_gf2_search(seed):
    inst = random3(random.Random(seed), max_dim=2)
    assert check_conditions(inst).feasible == exists_invertible_completion([inst.A, inst.B, inst.C])


def test_json_round_trip():
    comp, _ = construct_completion(BRIDGED)
    assert Instance3.from_json(BRIDGED.to_json()) == BRIDGED
    assert Completion3.from_json(comp.to_json()) == comp
