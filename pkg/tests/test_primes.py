"""Prime elements, bicharacter lattices, and the probes behind them."""

import itertools
import random

import pytest

from cglkit.errors import NoGradingDefined, NoPredecessorSolution
from cglkit.pbw import PBWPolynomial
from cglkit.presentation import CGLPresentation, TorusData
from cglkit.presets import parse_preset_spec
from cglkit.primes import (
    bicharacter_radical,
    compute_P_x,
    compute_y_elements,
    greedy_prime_factorization,
    irreducibility_probe,
    is_saturated,
    monomials_of_degree,
    monomials_with_character,
    rank_of,
    saturation_closure,
    torus_center_basis,
    verify_quantum_affine,
)
from cglkit.scalars import LaurentFraction, ParameterSpace, SignedMonomial

SYMMETRIC_PRESETS = [
    "quantum-affine:2",
    "quantum-affine:3",
    "oq-matrices:2,2",
    "oq-matrices:2,3",
    "oq-matrices:3,2",
    "multiparam-matrices:2",
    "uq-sl3",
]
ALL_PRESETS = SYMMETRIC_PRESETS + ["quantum-plane-minus-one"]


# -- quantum minor oracle ----------------------------------------------------
#
# The t x t quantum minor on row set R and column set C of O_q(M_{t,n}) is
# the signed permutation sum over bijections R -> C with weight (-q)^inv.
# Generators sit row-major, so each summand is already an ordered monomial
# and no engine multiplication is involved.


def inversions(seq):
    return sum(
        1 for a in range(len(seq)) for b in range(a + 1, len(seq)) if seq[a] > seq[b]
    )


def quantum_minor(P, n, rows, cols):
    q = P.scalar("q")
    terms = {}
    for perm in itertools.permutations(range(len(cols))):
        exps = [0] * P.N
        for a, r in enumerate(rows):
            exps[(r - 1) * n + cols[perm[a]] - 1] = 1
        terms[tuple(exps)] = (-q) ** inversions(perm)
    return PBWPolynomial(P.space, P.N, terms)


@pytest.mark.parametrize("t,n", [(2, 2), (2, 3), (3, 2), (3, 3)])
def test_every_y_is_a_contiguous_quantum_minor(t, n):
    P = parse_preset_spec(f"oq-matrices:{t},{n}")
    T = compute_y_elements(P)
    for k in range(P.N):
        i, j = divmod(k, n)
        i, j = i + 1, j + 1
        r = min(i, j) - 1
        rows = list(range(i - r, i + 1))
        cols = list(range(j - r, j + 1))
        assert T.y[k] == quantum_minor(P, n, rows, cols)


def test_m22_table_exact():
    P = parse_preset_spec("oq-matrices:2,2")
    T = compute_y_elements(P)
    ed = T.eta_data
    assert ed.pred == [None, None, None, 0]
    assert ed.succ == [3, None, None, None]
    assert ed.eta == [0, 1, 2, 0]
    assert ed.ominus == [0, 0, 0, 1]
    assert ed.oplus == [1, 0, 0, 0]
    assert T.finals() == [1, 2, 3]
    assert P.format(T.y[3]) == "x1*x4 - q*x2*x3"
    assert list(T.c) == [3]
    assert P.format(T.c[3]) == "q*x2*x3"
    assert compute_P_x(P, T) == [1, 2]


@pytest.mark.parametrize(
    "spec,finals",
    [
        ("oq-matrices:2,3", [3, 4, 5, 6]),
        ("oq-matrices:3,2", [2, 4, 5, 6]),
        ("oq-matrices:3,3", [3, 6, 7, 8, 9]),
    ],
)
def test_oq_finals(spec, finals):
    P = parse_preset_spec(spec)
    T = compute_y_elements(P)
    assert [k + 1 for k in T.finals()] == finals


@pytest.mark.parametrize(
    "spec,rank",
    [
        ("quantum-affine:2", 2),
        ("quantum-affine:3", 3),
        ("oq-matrices:2,2", 3),
        ("oq-matrices:2,3", 4),
        ("oq-matrices:3,2", 4),
        ("oq-matrices:3,3", 5),
        ("multiparam-matrices:2", 3),
        ("uq-sl3", 2),
        ("quantum-plane-minus-one", 2),
    ],
)
def test_rank(spec, rank):
    P = parse_preset_spec(spec)
    assert rank_of(P, compute_y_elements(P)) == rank


def test_sl3_table():
    P = parse_preset_spec("uq-sl3")
    T = compute_y_elements(P)
    q = P.scalar("q")
    c = P.x(1).scale((q * q) / (q * q - P.scalar("1")))
    assert T.c[2] == c
    assert T.y[2] == P.mul(P.x(0), P.x(2)) - c
    assert T.finals() == [1, 2]
    assert compute_P_x(P, T) == [1]
    assert rank_of(P, T) == 2


def test_quantum_affine_case_is_trivial():
    P = parse_preset_spec("quantum-affine:3")
    T = compute_y_elements(P)
    assert all(y == P.x(k) for k, y in enumerate(T.y))
    assert T.eta_data.pred == [None, None, None]
    assert compute_P_x(P, T) == [0, 1, 2]
    assert T.qmat == P.lam


@pytest.mark.parametrize("spec", SYMMETRIC_PRESETS)
def test_y_elements_generate_a_quantum_affine_space(spec):
    P = parse_preset_spec(spec)
    T = compute_y_elements(P)
    report = verify_quantum_affine(P, T)
    assert report.passed, str(report)


def test_m22_determinant_row_of_qmat_is_trivial():
    P = parse_preset_spec("oq-matrices:2,2")
    T = compute_y_elements(P)
    assert all(v.is_one for v in T.qmat[3])
    assert all(T.qmat[j][3].is_one for j in range(4))


@pytest.mark.parametrize("spec", ["oq-matrices:2,2", "uq-sl3", "multiparam-matrices:2"])
def test_alpha_commutation_scalars(spec):
    P = parse_preset_spec(spec)
    T = compute_y_elements(P)
    for k in T.finals():
        for j in range(P.N):
            lhs = P.mul(P.x(j), T.y[k])
            rhs = P.mul(T.y[k], P.x(j)).scale(T.alpha[j][k].to_fraction())
            assert lhs == rhs


# -- bicharacter lattices ----------------------------------------------------


def brute_radical(M, box=2):
    """All vectors e in [-box, box]^N with prod_k M[k][j]^e_k = 1 for all j."""
    N = len(M)
    out = []
    for e in itertools.product(range(-box, box + 1), repeat=N):
        ok = True
        for j in range(N):
            value = SignedMonomial.one(M[0][0].space)
            for k in range(N):
                value = value * M[k][j] ** e[k]
            if not value.is_one:
                ok = False
                break
        if ok:
            out.append(e)
    return out


def test_minus_one_plane_radical_and_saturation():
    P = parse_preset_spec("quantum-plane-minus-one")
    rad = bicharacter_radical(P.lam)
    assert rad.basis == [[2, 0], [0, 2]]
    for e in itertools.product(range(-2, 3), repeat=2):
        assert rad.contains(e) == (e[0] % 2 == 0 and e[1] % 2 == 0)
    assert set(map(tuple, (r for r in rad.basis))) <= set(brute_radical(P.lam))
    sat = saturation_closure(P.lam)
    assert sat.basis == [[1, 0], [0, 1]]
    assert not is_saturated(P.lam)


@pytest.mark.parametrize("spec", ["oq-matrices:2,2", "uq-sl3", "multiparam-matrices:2"])
def test_radical_matches_brute_force(spec):
    P = parse_preset_spec(spec)
    rad = bicharacter_radical(P.lam)
    hits = brute_radical(P.lam)
    for e in itertools.product(range(-2, 3), repeat=P.N):
        assert rad.contains(e) == (e in hits)


def test_m22_radical_rank():
    P = parse_preset_spec("oq-matrices:2,2")
    rad = bicharacter_radical(P.lam)
    assert rad.rank == 2
    assert rad.contains((1, 0, 0, 1))
    assert rad.contains((0, 1, -1, 0))
    assert not rad.contains((1, 0, 0, 0))
    assert is_saturated(P.lam)


@pytest.mark.parametrize("spec", ALL_PRESETS)
def test_lambda_and_qmat_saturation_verdicts_agree(spec):
    P = parse_preset_spec(spec)
    T = compute_y_elements(P)
    assert is_saturated(P.lam) == is_saturated(T.qmat)


def test_full_radical_for_trivial_bicharacter():
    sp = ParameterSpace(("q",))
    one = SignedMonomial.one(sp)
    M = [[one, one], [one, one]]
    rad = bicharacter_radical(M)
    assert rad.basis == [[1, 0], [0, 1]]
    assert is_saturated(M)


def test_torus_center_of_quantum_matrices():
    P = parse_preset_spec("oq-matrices:2,2")
    T = compute_y_elements(P)
    center = torus_center_basis(P, T)
    assert center.lattice.basis == [[0, 1, -1, 0], [0, 0, 0, 1]]
    assert center.nonnegative == [False, True]


def test_torus_center_of_quantum_affine_plane_is_trivial():
    P = parse_preset_spec("quantum-affine:2")
    T = compute_y_elements(P)
    center = torus_center_basis(P, T)
    assert center.lattice.rank == 0
    assert center.nonnegative == []


# -- probes ------------------------------------------------------------------


@pytest.mark.parametrize("spec", ["oq-matrices:2,2", "uq-sl3"])
def test_final_y_elements_are_irreducible(spec):
    P = parse_preset_spec(spec)
    T = compute_y_elements(P)
    for k in T.finals():
        irreducible, complete = irreducibility_probe(P, T, k)
        assert irreducible
        assert complete


def test_greedy_factorization_recovers_products():
    P = parse_preset_spec("oq-matrices:2,2")
    T = compute_y_elements(P)
    rng = random.Random(2718)
    for _ in range(5):
        counts = {k: rng.randrange(0, 3) for k in T.finals()}
        if not any(counts.values()):
            counts[3] = 1
        scalar = P.scalar("3/2*q")
        w = PBWPolynomial.constant(P.space, P.N, scalar)
        for k in sorted(counts):
            for _ in range(counts[k]):
                w = P.mul(w, T.y[k])
        result = greedy_prime_factorization(P, T, w)
        assert result is not None
        found_scalar, found_counts = result
        assert found_counts == counts
        rebuilt = PBWPolynomial.constant(P.space, P.N, found_scalar)
        for k in sorted(found_counts):
            for _ in range(found_counts[k]):
                rebuilt = P.mul(rebuilt, T.y[k])
        assert rebuilt == w


def test_greedy_factorization_rejects_non_products():
    P = parse_preset_spec("oq-matrices:2,2")
    T = compute_y_elements(P)
    assert greedy_prime_factorization(P, T, P.x(0)) is None
    assert greedy_prime_factorization(P, T, P.x(0) + P.x(1)) is None


# -- failure modes of the recursion ------------------------------------------


def _two_generator_presentation(pi):
    sp = ParameterSpace(("q",))
    q = SignedMonomial.parameter(sp, "q")
    one = SignedMonomial.one(sp)
    torus = TorusData(
        rank=2,
        chi=[(1, 0), (0, 1)],
        h=[(q.to_fraction(), one.to_fraction()), (one.to_fraction(), q.to_fraction())],
        pi=pi,
    )
    Q = {(1, 0): PBWPolynomial(sp, 2, {(1, 0): LaurentFraction.one(sp)})}
    return CGLPresentation.build(sp, 2, {(1, 0): q.inverse()}, Q, torus)


def test_no_predecessor_solution():
    P = _two_generator_presentation((1, 1))
    with pytest.raises(NoPredecessorSolution):
        compute_y_elements(P)


def test_missing_grading_is_reported():
    P = _two_generator_presentation(None)
    with pytest.raises(NoGradingDefined):
        compute_y_elements(P)


# -- homogeneous monomial enumeration ----------------------------------------


def test_monomials_of_degree():
    P = parse_preset_spec("oq-matrices:2,2")
    assert len(monomials_of_degree(P, 1)) == 4
    assert len(monomials_of_degree(P, 2)) == 10
    assert sorted(monomials_of_degree(P, 1, top=2)) == [(0, 1, 0, 0), (1, 0, 0, 0)]


def test_monomials_with_character():
    P = parse_preset_spec("oq-matrices:2,2")
    chi = tuple(a + b for a, b in zip(P.torus.chi[0], P.torus.chi[3]))
    found = monomials_with_character(P, chi)
    assert sorted(found) == [(0, 1, 1, 0), (1, 0, 0, 1)]
