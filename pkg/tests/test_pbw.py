"""PBW normalization engine: rewriting, grading, substitution."""

import random
from fractions import Fraction

import pytest

from cglkit import pbw
from cglkit.errors import (
    DivergenceBudgetExceeded,
    NotHomogeneous,
    ParseError,
    UnknownGenerator,
    ZeroElement,
)
from cglkit.pbw import PBWPolynomial, apply_endomorphism, multiply, normalize_words
from cglkit.presets import parse_preset_spec
from cglkit.scalars import LaurentFraction


def qa(n, s="q"):
    return parse_preset_spec(f"quantum-affine:{n}:{s}")


def rand_poly(P, rng, max_terms=3, max_exp=2):
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        mono = tuple(rng.randint(0, max_exp) for _ in range(P.N))
        coeff = LaurentFraction.from_monomial(
            P.space, Fraction(rng.randint(-2, 2) or 1), (rng.randint(-1, 1),) * P.space.m
        )
        terms[mono] = coeff
    return PBWPolynomial(P.space, P.N, terms)


def test_zero_and_constant():
    P = qa(2)
    z = PBWPolynomial.zero(P.space, P.N)
    assert z.is_zero
    assert z.as_constant() == LaurentFraction.zero(P.space)
    one = P.one()
    assert one.as_constant() == LaurentFraction.one(P.space)
    assert P.x(0).as_constant() is None


def test_binomial_square():
    # (x1 + x2)^2 = x1^2 + (1 + q) x1 x2 + x2^2 on the quantum plane
    P = qa(2)
    s = P.x(0) + P.x(1)
    sq = P.mul(s, s)
    q = P.scalar("q")
    expected = (
        pbw.power(P.x(0), 2, P)
        + P.mul(P.x(0), P.x(1)).scale(1 + q)
        + pbw.power(P.x(1), 2, P)
    )
    assert sq == expected


def test_oq_matrices_straightening():
    # x4 x1 = x1 x4 + (q^-1 - q) x2 x3 in O_q(M_2)
    P = parse_preset_spec("oq-matrices:2,2")
    lhs = P.mul(P.x(3), P.x(0))
    q = P.scalar("q")
    rhs = P.mul(P.x(0), P.x(3)) + P.mul(P.x(1), P.x(2)).scale(q.inverse() - q)
    assert lhs == rhs


def test_sl3_straightening():
    # x3 x1 = q x1 x3 - q x2 in U_q^+(sl_3)
    P = parse_preset_spec("uq-sl3")
    lhs = P.mul(P.x(2), P.x(0))
    q = P.scalar("q")
    rhs = P.mul(P.x(0), P.x(2)).scale(q) - P.x(1).scale(q)
    assert lhs == rhs


def test_associativity_and_strategy_independence():
    rng = random.Random(4321)
    for spec in ["quantum-affine:3:q", "oq-matrices:2,2", "uq-sl3"]:
        P = parse_preset_spec(spec)
        for _ in range(10):
            a, b, c = (rand_poly(P, rng) for _ in range(3))
            assert P.mul(P.mul(a, b), c) == P.mul(a, P.mul(b, c))
            assert multiply(a, b, P, strategy="leftmost") == multiply(
                a, b, P, strategy="rightmost"
            )


def test_fuel_budget_exhaustion():
    P = parse_preset_spec("oq-matrices:2,2")
    with pytest.raises(DivergenceBudgetExceeded):
        normalize_words(P, [(LaurentFraction.one(P.space), [3, 2, 1, 0])], fuel=2)


def test_graded_split_and_characters():
    P = parse_preset_spec("oq-matrices:2,2")
    p = P.mul(P.x(0), P.x(3)) + P.x(1)
    parts = pbw.graded_split(p, P)
    assert sorted(parts) == [1, 2]
    assert parts[1] == P.x(1)
    # characters: X11*X22 and X12*X21 share chi = e1+e2+e3+e4
    d = P.mul(P.x(0), P.x(3))
    assert pbw.character_of(d, P) == (1, 1, 1, 1)
    with pytest.raises(NotHomogeneous):
        pbw.character_of(p, P)
    with pytest.raises(ZeroElement):
        pbw.character_of(PBWPolynomial.zero(P.space, P.N), P)
    assert pbw.homogeneous_character(p, P) is None


def test_min_degree():
    P = parse_preset_spec("uq-sl3")
    # x2 carries degree 2 in the sl3 grading
    p = P.x(1) + P.mul(P.x(0), P.mul(P.x(0), P.x(2)))
    assert pbw.min_degree(p, P) == 2
    with pytest.raises(ZeroElement):
        pbw.min_degree(PBWPolynomial.zero(P.space, P.N), P)


def test_parse_and_format_roundtrip():
    P = parse_preset_spec("oq-matrices:2,2")
    rng = random.Random(99)
    for _ in range(20):
        p = rand_poly(P, rng)
        assert P.parse(P.format(p)) == p


def test_parse_exact_strings():
    P = parse_preset_spec("oq-matrices:2,2")
    q = P.scalar("q")
    p = P.parse("x1*x4 - q*x2*x3")
    assert p == P.mul(P.x(0), P.x(3)) - P.mul(P.x(1), P.x(2)).scale(q)
    assert P.format(p) == "x1*x4 - q*x2*x3"
    # aliases resolve and products normalize
    assert P.parse("X22 X11") == P.parse("x1*x4 + (q^-1 - q) x2 x3")
    assert P.parse("x1^2") == pbw.power(P.x(0), 2, P)
    assert P.parse("3") == PBWPolynomial.constant(P.space, P.N, P.scalar("3"))


def test_parse_error_positions():
    P = parse_preset_spec("oq-matrices:2,2")
    with pytest.raises(ParseError) as info:
        P.parse("x1 + @")
    assert info.value.line == 1
    assert info.value.col == 6
    with pytest.raises(UnknownGenerator):
        P.parse("x9")
    with pytest.raises(UnknownGenerator):
        P.parse("X31")
    with pytest.raises(ParseError):
        P.parse("x1 x2 +")


def test_parse_raw_mode_rejects_out_of_order():
    P = parse_preset_spec("oq-matrices:2,2")
    assert P.parse("x2*x3", normalize=False) == P.mul(P.x(1), P.x(2))
    with pytest.raises(ParseError):
        P.parse("x4*x1", normalize=False)


def test_apply_endomorphism_substitutes_in_order():
    P = qa(2)
    q = P.scalar("q")
    images = [P.x(0), P.x(0) + P.x(1)]
    p = P.mul(P.x(0), P.x(1))
    out = apply_endomorphism(images, p, P)
    assert out == P.mul(P.x(0), P.x(0) + P.x(1))
    # scalar coefficients pass through untouched
    out2 = apply_endomorphism(images, P.x(1).scale(q), P)
    assert out2 == (P.x(0) + P.x(1)).scale(q)


def test_supported_below():
    P = parse_preset_spec("oq-matrices:2,2")
    assert pbw.supported_below(P.mul(P.x(1), P.x(2)), 3)
    assert not pbw.supported_below(P.x(3), 3)
    assert pbw.supported_below(PBWPolynomial.zero(P.space, P.N), 0)
