"""Nakayama automorphisms and core decompositions."""

from fractions import Fraction

import pytest

from cglkit.errors import NotReversible
from cglkit.pbw import PBWPolynomial
from cglkit.presentation import (
    CGLPresentation,
    TorusData,
    validate_cgl,
    validate_symmetric,
)
from cglkit.presets import parse_preset_spec
from cglkit.primes import compute_y_elements, rank_of
from cglkit.scalars import ParameterSpace, SignedMonomial
from cglkit.structure import (
    DiagonalMap,
    check_diagonal_automorphism,
    core_decomposition,
    diagonal_constraint_rank,
    nakayama_automorphism,
    verify_nakayama_by_normal_element,
)

SYMMETRIC_PRESETS = [
    "quantum-affine:2",
    "quantum-affine:3",
    "oq-matrices:2,2",
    "oq-matrices:2,3",
    "oq-matrices:3,2",
    "multiparam-matrices:2",
    "uq-sl3",
]


@pytest.mark.parametrize(
    "spec,expected",
    [
        ("quantum-affine:2", ["q^-1", "q"]),
        ("oq-matrices:2,2", ["q^2", "1", "1", "q^-2"]),
        ("oq-matrices:2,3", ["q^3", "q", "q^-1", "q", "q^-1", "q^-3"]),
        ("multiparam-matrices:2", ["lam^-1", "lam^-2*p12^4", "lam^2*p12^-4", "lam"]),
        ("uq-sl3", ["1", "1", "1"]),
    ],
)
def test_nakayama_eigenvalues(spec, expected):
    P = parse_preset_spec(spec)
    nu = nakayama_automorphism(P)
    assert [str(v) for v in nu.eigenvalues] == expected


def test_sl3_nakayama_is_the_identity():
    nu = nakayama_automorphism(parse_preset_spec("uq-sl3"))
    assert nu.is_identity


def test_diagonal_map_operations():
    P = parse_preset_spec("oq-matrices:2,2")
    T = compute_y_elements(P)
    nu = nakayama_automorphism(P)
    q = P.scalar("q")
    assert nu.apply(P.x(0)) == P.x(0).scale(q * q)
    assert nu.apply(P.x(1)) == P.x(1)
    # the quantum determinant is fixed
    assert nu.apply(T.y[3]) == T.y[3]
    assert nu.compose(nu.inverse()).is_identity
    assert not nu.is_identity
    assert nu.to_json_dict() == {"eigenvalues": ["q^2", "1", "1", "q^-2"]}
    spec = nu.as_spec(P)
    assert spec.images[0] == P.x(0).scale(q * q)
    assert spec.images[3] == P.x(3).scale((q * q).inverse())


def test_check_diagonal_automorphism():
    P = parse_preset_spec("oq-matrices:2,2")
    sp = P.space
    one = SignedMonomial.one(sp)
    two = SignedMonomial(sp, Fraction(2), (0,))
    half = SignedMonomial(sp, Fraction(1, 2), (0,))
    assert check_diagonal_automorphism(P, nakayama_automorphism(P))
    # mu_1 mu_4 must match mu_2 mu_3 because of the determinant correction
    assert not check_diagonal_automorphism(P, DiagonalMap([two, one, one, one]))
    assert check_diagonal_automorphism(P, DiagonalMap([two, one, one, half]))


@pytest.mark.parametrize("spec", SYMMETRIC_PRESETS + ["quantum-plane-minus-one"])
def test_diagonal_torus_dimension_equals_rank(spec):
    P = parse_preset_spec(spec)
    T = compute_y_elements(P)
    assert diagonal_constraint_rank(P) == rank_of(P, T)


@pytest.mark.parametrize("spec", SYMMETRIC_PRESETS)
def test_nakayama_verified_by_normal_element(spec):
    P = parse_preset_spec(spec)
    T = compute_y_elements(P)
    nu = nakayama_automorphism(P)
    report = verify_nakayama_by_normal_element(P, T, nu)
    assert report.passed, str(report)


def test_normal_element_conjugation_beyond_generators():
    P = parse_preset_spec("oq-matrices:2,2")
    T = compute_y_elements(P)
    nu = nakayama_automorphism(P)
    u = P.one()
    for l in T.finals():
        u = P.mul(u, T.y[l])
    for a in [
        P.mul(P.mul(P.x(0), P.x(0)), P.x(2)),
        P.mul(P.x(1), P.x(3)) + P.x(0),
        T.y[3],
    ]:
        assert P.mul(a, u) == P.mul(u, nu.apply(a))


def test_not_reversible_when_q_touches_an_endpoint():
    sp = ParameterSpace(("q",))
    q = SignedMonomial.parameter(sp, "q")
    one = SignedMonomial.one(sp)
    torus = TorusData(
        rank=2,
        chi=[(1, 0), (1, 1)],
        h=[(q, one), (one, q)],
        pi=(1, 0),
    )
    P = CGLPresentation.build(
        sp,
        2,
        {(1, 0): q},
        {(1, 0): PBWPolynomial(sp, 2, {(1, 0): q.to_fraction()})},
        torus,
    )
    with pytest.raises(NotReversible):
        nakayama_automorphism(P)


def test_single_generator_core_and_nakayama():
    sp = ParameterSpace(("q",))
    q = SignedMonomial.parameter(sp, "q")
    torus = TorusData(rank=1, chi=[(1,)], h=[(q,)], h_star=[(q,)], pi=(1,))
    P = CGLPresentation.build(sp, 1, {}, {}, torus)
    nu = nakayama_automorphism(P)
    assert nu.is_identity
    D = core_decomposition(P, compute_y_elements(P))
    assert D.P_x == [0]
    assert D.F_x == [0]
    assert D.C_x == []
    assert D.core.N == 0


@pytest.mark.parametrize(
    "spec", ["oq-matrices:2,2", "oq-matrices:2,3", "oq-matrices:3,2", "uq-sl3"]
)
def test_core_equals_whole_algebra_when_no_generator_splits_off(spec):
    P = parse_preset_spec(spec)
    D = core_decomposition(P, compute_y_elements(P))
    assert D.F_x == []
    assert D.C_x == list(range(P.N))
    assert D.core == P
    assert D.frame_lambda == []
    assert D.smash_scalars == {}
    assert D.core_report.passed


def test_quantum_affine_space_is_all_frame():
    P = parse_preset_spec("quantum-affine:3")
    D = core_decomposition(P, compute_y_elements(P))
    assert D.P_x == [0, 1, 2]
    assert D.F_x == [0, 1, 2]
    assert D.C_x == []
    assert D.core.N == 0
    assert D.frame_lambda == [list(row) for row in P.lam]
    assert D.core_report.passed


def central_extension_of_m22():
    """M22 shifted up one slot with a central generator x1 in front."""
    M = parse_preset_spec("oq-matrices:2,2")
    sp = M.space
    one = SignedMonomial.one(sp)
    q = SignedMonomial.parameter(sp, "q")
    lam = {}
    for a in range(1, 5):
        lam[(a, 0)] = one
        for b in range(1, a):
            lam[(a, b)] = M.lam[a - 1][b - 1]
    shifted = {
        (0,) + mono: coeff for mono, coeff in M.Q[(3, 0)].terms.items()
    }
    Q = {(4, 1): PBWPolynomial(sp, 5, shifted)}
    pad = (one,) * 4
    chi = [(1, 0, 0, 0, 0)] + [(0,) + tuple(M.torus.chi[g]) for g in range(4)]
    h = [(q,) + pad] + [(one,) + tuple(M.torus.h[g]) for g in range(4)]
    h_star = [(q,) + pad] + [(one,) + tuple(M.torus.h_star[g]) for g in range(4)]
    torus = TorusData(
        rank=5, chi=chi, h=h, h_star=h_star, pi=(1,) + tuple(M.torus.pi)
    )
    return M, CGLPresentation.build(sp, 5, lam, Q, torus)


def test_core_decomposition_with_a_proper_frame():
    M, P = central_extension_of_m22()
    assert validate_cgl(P).passed
    assert validate_symmetric(P).passed
    T = compute_y_elements(P)
    D = core_decomposition(P, T)
    assert D.P_x == [0, 2, 3]
    assert D.F_x == [0]
    assert D.C_x == [1, 2, 3, 4]
    core = D.core
    assert core.N == 4
    assert core.lam == M.lam
    assert list(core.Q) == [(3, 0)]
    assert core.Q[(3, 0)] == M.Q[(3, 0)]
    assert D.core_report.passed
    one = SignedMonomial.one(P.space)
    assert D.frame_lambda == [[one]]
    assert D.smash_scalars == {(0, k): one for k in [1, 2, 3, 4]}
    nu = nakayama_automorphism(P)
    assert [str(v) for v in nu.eigenvalues] == ["1", "q^2", "1", "1", "q^-2"]


def test_nakayama_lies_in_the_diagonal_torus():
    for spec in SYMMETRIC_PRESETS:
        P = parse_preset_spec(spec)
        nu = nakayama_automorphism(P)
        assert check_diagonal_automorphism(P, nu)
