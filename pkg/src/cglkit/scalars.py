"""Exact scalars over the rational function field Q(q_1, ..., q_m).

Two representations live here:

* ``LaurentFraction`` -- a quotient of multivariate Laurent polynomials with
  ``fractions.Fraction`` coefficients.  There is deliberately no multivariate
  GCD: equality is decided by cross-multiplication, and only cheap content
  reduction (common rational content, common pure-monomial factors, folding
  single-term denominators) keeps representations small.  Consequently
  ``(q^2 - 1)/(q - 1)`` and ``q + 1`` are equal but not identical.

* ``SignedMonomial`` -- an element of the subgroup of K^x generated by the
  parameters together with nonzero rationals, i.e. ``c * q1^e1 * ... * qm^em``.
  Commutation scalars and torus-element components are restricted to this
  group so that the additive logarithm into Z/2 x Z^m exists.

Laurent polynomials are sparse dicts mapping exponent tuples (ints, possibly
negative) to nonzero ``Fraction`` values.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .errors import DivisionByZero, NotAMonomial

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


@dataclass(frozen=True)
class ParameterSpace:
    """Ordered tuple of parameter names for K = Q(q_1, ..., q_m).

    m = 0 is allowed and gives K = Q.
    """

    names: tuple[str, ...]

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise ValueError("parameter names must be distinct")
        for name in self.names:
            if not _NAME_RE.match(name):
                raise ValueError(f"invalid parameter name {name!r}")

    @property
    def m(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        return self.names.index(name)

    def zero_exps(self) -> tuple[int, ...]:
        return (0,) * len(self.names)


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected int or Fraction, got {type(value).__name__}")


# -- sparse Laurent polynomial helpers (dict exponent-tuple -> Fraction) --


def _dict_clean(d):
    return {tuple(e): _as_fraction(c) for e, c in d.items() if c != 0}

def _dict_add(a, b):
    out = dict(a)
    for e, c in b.items():
        s = out.get(e, 0) + c
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return out

def _dict_neg(a):
    return {e: -c for e, c in a.items()}

def _dict_mul(a, b):
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            s = out.get(e, 0) + ca * cb
            if s:
                out[e] = s
            else:
                out.pop(e, None)
    return out

def _dict_pow(a, k):
    # callers guarantee k >= 1
    if k < 1:
        raise ValueError("power must be >= 1 here")
    result = None
    base = a
    while True:
        if k & 1:
            result = dict(base) if result is None else _dict_mul(result, base)
        k >>= 1
        if not k:
            return result
        base = _dict_mul(base, base)


def _term_sort_key(item):
    e, _ = item
    return (sum(e), e)


def _content(coeffs) -> Fraction:
    # gcd of numerators over lcm of denominators; positive by construction
    nums = [abs(c.numerator) for c in coeffs]
    dens = [c.denominator for c in coeffs]
    g = 0
    for n in nums:
        g = gcd(g, n)
    l = 1
    for d in dens:
        l = lcm(l, d)
    return Fraction(g, l)


# -- polynomial gcd on exponent-dict polynomials (nonnegative exponents) --
#
# Runs over Z with primitive pseudo-remainder sequences; monic Euclid over Q
# squares coefficient sizes at every step and stalls on moderate inputs.


def _poly_vars(a, m):
    return [i for i in range(m) if any(e[i] for e in a)]


def _lead_key(e):
    return (sum(e), e)


def _int_primitive(a):
    # integer coefficients with content 1 and positive leading coefficient
    if not a:
        return {}
    g = 0
    for c in a.values():
        g = gcd(g, abs(c))
    if a[max(a, key=_lead_key)] < 0:
        g = -g
    return {e: c // g for e, c in a.items()}


def _to_int_primitive(a):
    if not a:
        return {}
    l = 1
    for c in a.values():
        l = lcm(l, c.denominator)
    return _int_primitive({e: int(c * l) for e, c in a.items()})


def _lead_in_var(p, v):
    d = max(e[v] for e in p)
    return d, {e[:v] + (0,) + e[v + 1 :] : c for e, c in p.items() if e[v] == d}


def _gcd_univar_int(a, b, var, m):
    # primitive Euclid over Z on coefficient lists (low to high degree)
    def listify(p):
        out = [0] * (max(e[var] for e in p) + 1)
        for e, c in p.items():
            out[e[var]] = c
        return out

    def primitive(f):
        g = 0
        for c in f:
            g = gcd(g, abs(c))
        return [c // g for c in f]

    f, g = primitive(listify(a)), primitive(listify(b))
    while g:
        r = list(f)
        while r and len(r) >= len(g):
            d = gcd(r[-1], g[-1])
            ma, mb = g[-1] // d, r[-1] // d
            r = [ma * c for c in r]
            shift = len(r) - len(g)
            for i, c in enumerate(g):
                r[i + shift] -= mb * c
            while r and r[-1] == 0:
                r.pop()
            if r:
                r = primitive(r)
        f, g = g, r
    if f[-1] < 0:
        f = [-c for c in f]
    zero = (0,) * m
    out = {}
    for i, c in enumerate(f):
        if c:
            e = list(zero)
            e[var] = i
            out[tuple(e)] = c
    return out


def _pseudo_rem_int(f, g, v):
    dg, gl = _lead_in_var(g, v)
    r = dict(f)
    while r and max(e[v] for e in r) >= dg:
        dr, rl = _lead_in_var(r, v)
        shift = dr - dg
        shifted = {e[:v] + (e[v] + shift,) + e[v + 1 :] : c for e, c in g.items()}
        r = _dict_add(_dict_mul(gl, r), _dict_neg(_dict_mul(rl, shifted)))
        cont = 0
        for c in r.values():
            cont = gcd(cont, abs(c))
        if cont > 1:
            r = {e: c // cont for e, c in r.items()}
    return r


def _poly_div_exact_int(a, g, m):
    """Exact division a / g over Z; divisibility guaranteed by the callers."""
    if not a:
        return {}
    gv = _poly_vars(g, m)
    if not gv:
        ((_, c0),) = g.items()
        return {e: c // c0 for e, c in a.items()}
    v = gv[-1]
    dg, gl = _lead_in_var(g, v)
    r = dict(a)
    out = {}
    while r:
        dr, rl = _lead_in_var(r, v)
        q = _poly_div_exact_int(rl, gl, m)
        shift = dr - dg
        qs = {e[:v] + (e[v] + shift,) + e[v + 1 :] : c for e, c in q.items()}
        out = _dict_add(out, qs)
        r = _dict_add(r, _dict_neg(_dict_mul(qs, g)))
    return out


def _content_in_var_int(a, v, m):
    # gcd of the coefficient polynomials of a viewed in the variable v
    parts = {}
    for e, c in a.items():
        parts.setdefault(e[v], {})[e[:v] + (0,) + e[v + 1 :]] = c
    g = {}
    for coeff in parts.values():
        g = _poly_gcd_int(g, coeff, m)
        if len(g) == 1 and not any(next(iter(g))):
            break
    return g


def _poly_gcd_int(a, b, m):
    if not a:
        return _int_primitive(b)
    if not b:
        return _int_primitive(a)
    va, vb = _poly_vars(a, m), _poly_vars(b, m)
    joint = sorted(set(va) | set(vb))
    if not joint:
        return {(0,) * m: 1}
    if len(joint) == 1 and len(va) == 1 and len(vb) == 1:
        return _gcd_univar_int(a, b, joint[0], m)
    # main variable: smallest worst-case degree keeps the remainder chain short
    v = min(
        joint,
        key=lambda i: max(
            max((e[i] for e in a), default=0), max((e[i] for e in b), default=0)
        ),
    )
    ca = _content_in_var_int(a, v, m)
    cb = _content_in_var_int(b, v, m)
    cont = _poly_gcd_int(ca, cb, m)
    pa = _poly_div_exact_int(a, ca, m)
    pb = _poly_div_exact_int(b, cb, m)
    while pb:
        r = _pseudo_rem_int(pa, pb, v)
        pa = pb
        pb = _poly_div_exact_int(r, _content_in_var_int(r, v, m), m) if r else {}
    pa = _poly_div_exact_int(pa, _content_in_var_int(pa, v, m), m)
    return _int_primitive(_dict_mul(cont, pa))


def _poly_gcd(a, b, m):
    """gcd of two Fraction-coefficient polynomials, integer-primitive output."""
    g = _poly_gcd_int(_to_int_primitive(a), _to_int_primitive(b), m)
    return {e: Fraction(c) for e, c in g.items()}


def _poly_div_exact(a, g, m):
    """Exact division a / g over Q; assumes divisibility."""
    if not a:
        return {}
    gv = _poly_vars(g, m)
    if not gv:
        ((_, c0),) = g.items()
        return {e: c / c0 for e, c in a.items()}
    v = gv[-1]
    dg, gl = _lead_in_var(g, v)
    r = dict(a)
    out = {}
    while r:
        dr, rl = _lead_in_var(r, v)
        q = _poly_div_exact(rl, gl, m)
        shift = dr - dg
        qs = {e[:v] + (e[v] + shift,) + e[v + 1 :] : c for e, c in q.items()}
        out = _dict_add(out, qs)
        r = _dict_add(r, _dict_neg(_dict_mul(qs, g)))
    return out


class LaurentFraction:
    """num/den with Laurent-polynomial numerator and denominator.

    Instances are immutable by convention (no mutating API).  ``__eq__`` uses
    cross-multiplication; ``__hash__`` is disabled because equal values can
    have different representations.
    """

    __slots__ = ("space", "num", "den")

    def __init__(self, space: ParameterSpace, num, den=None):
        num = _dict_clean(num)
        if den is None:
            den = {space.zero_exps(): Fraction(1)}
        else:
            den = _dict_clean(den)
        if not den:
            raise DivisionByZero("zero denominator")
        object.__setattr__(self, "space", space)
        n, d = self._reduce(space, num, den)
        object.__setattr__(self, "num", n)
        object.__setattr__(self, "den", d)

    def __setattr__(self, *args):
        raise AttributeError("LaurentFraction is immutable")

    @staticmethod
    def _reduce(space, num, den):
        if not num:
            return {}, {space.zero_exps(): Fraction(1)}
        if len(den) == 1:
            # fold a monomial denominator into the numerator
            (de, dc), = den.items()
            num = {tuple(x - y for x, y in zip(e, de)): c / dc for e, c in num.items()}
            return num, {space.zero_exps(): Fraction(1)}
        # shift to nonnegative exponents, then cancel the polynomial gcd
        pool = list(num.items()) + list(den.items())
        mins = tuple(min(e[i] for e, _ in pool) for i in range(space.m))
        if any(mins):
            num = {tuple(x - y for x, y in zip(e, mins)): c for e, c in num.items()}
            den = {tuple(x - y for x, y in zip(e, mins)): c for e, c in den.items()}
        if len(num) > 1 and len(num) * len(den) <= 4096:
            g = _poly_gcd(num, den, space.m)
            if len(g) > 1:
                num = _poly_div_exact(num, g, space.m)
                den = _poly_div_exact(den, g, space.m)
                if len(den) == 1:
                    (de, dc), = den.items()
                    num = {
                        tuple(x - y for x, y in zip(e, de)): c / dc
                        for e, c in num.items()
                    }
                    return num, {space.zero_exps(): Fraction(1)}
        # joint content reduction: common rational content and common monomial
        pool = list(num.items()) + list(den.items())
        cont = _content([c for _, c in pool])
        mins = tuple(min(e[i] for e, _ in pool) for i in range(space.m))
        if cont != 1 or any(mins):
            num = {tuple(x - y for x, y in zip(e, mins)): c / cont for e, c in num.items()}
            den = {tuple(x - y for x, y in zip(e, mins)): c / cont for e, c in den.items()}
        # normalize the sign of the denominator's leading term
        lead = max(den.items(), key=_term_sort_key)
        if lead[1] < 0:
            num = _dict_neg(num)
            den = _dict_neg(den)
        return num, den

    # -- constructors --

    @classmethod
    def zero(cls, space):
        return cls(space, {})

    @classmethod
    def one(cls, space):
        return cls(space, {space.zero_exps(): Fraction(1)})

    @classmethod
    def from_rational(cls, space, value):
        return cls(space, {space.zero_exps(): _as_fraction(value)})

    @classmethod
    def from_monomial(cls, space, coeff, exps):
        coeff = _as_fraction(coeff)
        if coeff == 0:
            return cls.zero(space)
        return cls(space, {tuple(exps): coeff})

    @classmethod
    def parameter(cls, space, name):
        exps = [0] * space.m
        exps[space.index(name)] = 1
        return cls.from_monomial(space, 1, exps)

    # -- predicates --

    @property
    def is_zero(self) -> bool:
        return not self.num

    @property
    def is_one(self) -> bool:
        return self == 1

    def _coerce(self, other):
        if isinstance(other, LaurentFraction):
            if other.space != self.space:
                raise ValueError("mixed parameter spaces")
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentFraction.from_rational(self.space, other)
        if isinstance(other, SignedMonomial):
            return other.to_fraction()
        return NotImplemented

    # -- arithmetic --

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return LaurentFraction(self.space, _dict_add(self.num, other.num), dict(self.den))
        return LaurentFraction(
            self.space,
            _dict_add(_dict_mul(self.num, other.den), _dict_mul(other.num, self.den)),
            _dict_mul(self.den, other.den),
        )

    __radd__ = __add__

    def __neg__(self):
        return LaurentFraction(self.space, _dict_neg(self.num), dict(self.den))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return LaurentFraction(
            self.space, _dict_mul(self.num, other.num), _dict_mul(self.den, other.den)
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero:
            raise DivisionByZero("division by zero scalar")
        return LaurentFraction(
            self.space, _dict_mul(self.num, other.den), _dict_mul(self.den, other.num)
        )

    def __rtruediv__(self, other):
        return LaurentFraction.from_rational(self.space, other) / self

    def inverse(self):
        return 1 / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            raise TypeError("exponent must be an int")
        if k < 0:
            return self.inverse() ** (-k)
        if k == 0:
            return LaurentFraction.one(self.space)
        return LaurentFraction(self.space, _dict_pow(self.num, k), _dict_pow(self.den, k))

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return _dict_mul(self.num, other.den) == _dict_mul(other.num, self.den)

    __hash__ = None

    # -- conversion --

    def as_monomial(self) -> "SignedMonomial":
        """Representation-level view as a signed monomial.

        Requires the reduced numerator to be a single term (the denominator is
        trivial after reduction in that case).  Mathematically-monomial values
        hidden behind an unreduced quotient raise NotAMonomial.
        """
        if len(self.num) != 1 or len(self.den) != 1:
            raise NotAMonomial(f"not a monomial: {self}")
        (ne, nc), = self.num.items()
        (de, dc), = self.den.items()
        exps = tuple(x - y for x, y in zip(ne, de))
        return SignedMonomial(self.space, nc / dc, exps)

    def as_rational(self) -> Fraction:
        if self.is_zero:
            return Fraction(0)
        mono = self.as_monomial()
        if any(mono.exps):
            raise NotAMonomial(f"not a rational constant: {self}")
        return mono.coeff

    # -- display --

    def __str__(self):
        if self.is_zero:
            return "0"
        num_s = _poly_str(self.space, self.num)
        if len(self.den) == 1 and self.den == {self.space.zero_exps(): Fraction(1)}:
            return num_s
        den_s = _poly_str(self.space, self.den)
        return f"({num_s})/({den_s})"

    def __repr__(self):
        return f"<LaurentFraction {self}>"


def _monomial_str(space, coeff, exps):
    parts = []
    for name, e in zip(space.names, exps):
        if e == 1:
            parts.append(name)
        elif e != 0:
            parts.append(f"{name}^{e}")
    mag = abs(coeff)
    sign = "-" if coeff < 0 else ""
    if not parts:
        return f"{sign}{mag}"
    if mag != 1:
        parts.insert(0, str(mag))
    return sign + "*".join(parts)


def _poly_str(space, d):
    terms = sorted(d.items(), key=_term_sort_key, reverse=True)
    out = _monomial_str(space, terms[0][1], terms[0][0])
    for e, c in terms[1:]:
        piece = _monomial_str(space, abs(c), e)
        out += (" - " if c < 0 else " + ") + piece
    return out


@dataclass(frozen=True)
class SignedMonomial:
    """c * q1^e1 * ... * qm^em with c a nonzero rational.

    Group operations only (these are units); ``is_root_of_unity`` and
    ``monomial_log`` support the torsion analysis of commutation-scalar
    subgroups of K^x.
    """

    space: ParameterSpace
    coeff: Fraction
    exps: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeff", _as_fraction(self.coeff))
        object.__setattr__(self, "exps", tuple(self.exps))
        if self.coeff == 0:
            raise ValueError("SignedMonomial coefficient must be nonzero")
        if len(self.exps) != self.space.m:
            raise ValueError("exponent tuple has wrong length")

    @classmethod
    def one(cls, space):
        return cls(space, Fraction(1), space.zero_exps())

    @classmethod
    def minus_one(cls, space):
        return cls(space, Fraction(-1), space.zero_exps())

    @classmethod
    def parameter(cls, space, name, power=1):
        exps = [0] * space.m
        exps[space.index(name)] = power
        return cls(space, Fraction(1), tuple(exps))

    @classmethod
    def from_fraction(cls, value: LaurentFraction) -> "SignedMonomial":
        return value.as_monomial()

    def __mul__(self, other):
        if isinstance(other, SignedMonomial):
            if other.space != self.space:
                raise ValueError("mixed parameter spaces")
            return SignedMonomial(
                self.space,
                self.coeff * other.coeff,
                tuple(x + y for x, y in zip(self.exps, other.exps)),
            )
        return NotImplemented

    def inverse(self):
        return SignedMonomial(self.space, 1 / self.coeff, tuple(-e for e in self.exps))

    def __pow__(self, k: int):
        if not isinstance(k, int):
            raise TypeError("exponent must be an int")
        if k < 0:
            return self.inverse() ** (-k)
        return SignedMonomial(self.space, self.coeff**k, tuple(e * k for e in self.exps))

    @property
    def is_one(self) -> bool:
        return self.coeff == 1 and not any(self.exps)

    def is_root_of_unity(self) -> bool:
        """True iff this scalar has finite multiplicative order.

        In Q(q_1,...,q_m) the only roots of unity are +-1, i.e. exponent
        vector zero and coefficient in {1, -1}.
        """
        return not any(self.exps) and self.coeff in (1, -1)

    def monomial_log(self):
        """Additive logarithm into Z/2 x Z^m: (sign bit, exponent vector).

        Requires coeff in {1, -1}; other rationals are not in the image of
        the sign-times-monomial subgroup and raise NotAMonomial.
        """
        if self.coeff == 1:
            return (0, self.exps)
        if self.coeff == -1:
            return (1, self.exps)
        raise NotAMonomial(f"coefficient {self.coeff} is not +-1")

    def to_fraction(self) -> LaurentFraction:
        return LaurentFraction.from_monomial(self.space, self.coeff, self.exps)

    def __str__(self):
        return _monomial_str(self.space, self.coeff, self.exps)

    def __repr__(self):
        return f"<SignedMonomial {self}>"
