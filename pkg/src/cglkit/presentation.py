"""Presentation data for iterated skew polynomial algebras with torus action.

A presentation holds, for generators x_1..x_N (0-based indices in code):

* the multiplicatively skew-symmetric commutation matrix ``lam`` of
  SignedMonomials (x_k x_j = lam_{kj} x_j x_k + Q_{kj} for k > j),
* the lower-order terms ``Q`` as PBW polynomials supported below k,
* rational torus data: characters chi_i of the generators, covering torus
  elements h_k (and optionally h*_j for the reversed order), and an optional
  positive grading functional pi.

Validators return ValidationReports instead of raising so that broken input
can be diagnosed; structural impossibilities (shape mismatches, Q escaping
its prefix subalgebra) raise MalformedPresentation at construction.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

from . import pbw
from .errors import (
    DivergenceBudgetExceeded,
    MalformedPresentation,
    MissingHStar,
    NotInXi,
    NotReversible,
)
from .pbw import PBWPolynomial
from .reporting import ValidationReport
from .scalars import LaurentFraction, ParameterSpace, SignedMonomial

_GEN_RE = re.compile(r"x([1-9][0-9]*)\Z")


@dataclass
class TorusData:
    """Rational torus (K^x)^rank acting diagonally on the generators."""

    rank: int
    chi: list  # N tuples of ints, length rank
    h: list  # N tuples of SignedMonomial, length rank
    h_star: list | None = None
    pi: tuple | None = None

    def eigenvalue(self, char, element) -> SignedMonomial:
        """chi(h) = prod_a element[a]^char[a]."""
        space = element[0].space if element else None
        if space is None:
            raise ValueError("rank-0 torus has no eigenvalues")
        out = SignedMonomial.one(space)
        for a, e in enumerate(char):
            if e:
                out = out * element[a] ** e
        return out


class CGLPresentation:
    """Presentation of an iterated skew polynomial algebra over Q(params)."""

    def __init__(self, space, N, lam, Q, torus, name=None, aliases=None, fuel_factor=8):
        self.space = space
        self.N = N
        self.lam = [list(row) for row in lam]
        self.torus = torus
        self.name = name
        self.aliases = dict(aliases) if aliases else {}
        self.fuel_factor = fuel_factor
        self.file_issues: list[str] = []
        if len(self.lam) != N or any(len(row) != N for row in self.lam):
            raise MalformedPresentation(f"lambda must be {N}x{N}")
        if len(torus.chi) != N or len(torus.h) != N:
            raise MalformedPresentation("torus chi/h must have one row per generator")
        for row in torus.chi:
            if len(row) != torus.rank:
                raise MalformedPresentation("chi rows must have length torus.rank")
        for row in torus.h:
            if len(row) != torus.rank:
                raise MalformedPresentation("h rows must have length torus.rank")
        if torus.h_star is not None:
            if len(torus.h_star) != N or any(len(r) != torus.rank for r in torus.h_star):
                raise MalformedPresentation("h_star rows must be N x rank")
        if torus.pi is not None and len(torus.pi) != torus.rank:
            raise MalformedPresentation("pi must have length torus.rank")
        self.Q = {}
        for (k, j), poly in Q.items():
            if not (0 <= j < k < N):
                raise MalformedPresentation(f"Q index {(k, j)} out of range")
            if poly is None or poly.is_zero:
                continue
            if not pbw.supported_below(poly, k):
                raise MalformedPresentation(
                    f"Q[{k},{j}] must lie in the subalgebra on x1..x{k}"
                )
            self.Q[(k, j)] = poly
        # caches
        self._lam_frac = {}
        self._qhat = {}
        self.pair_cache = {}
        self._degrees = -1  # sentinel: not computed

    # -- construction helpers --

    @classmethod
    def build(cls, space, N, lower, Q, torus, name=None, aliases=None, fuel_factor=8):
        """Build from the strict lower triangle {(k, j): SignedMonomial}, k > j."""
        one = SignedMonomial.one(space)
        lam = [[one for _ in range(N)] for _ in range(N)]
        for (k, j), value in lower.items():
            if not (0 <= j < k < N):
                raise MalformedPresentation(f"lambda index {(k, j)} not strictly lower")
            lam[k][j] = value
            lam[j][k] = value.inverse()
        return cls(space, N, lam, Q, torus, name=name, aliases=aliases, fuel_factor=fuel_factor)

    # -- engine hooks --

    def lam_entry(self, k, j) -> SignedMonomial:
        return self.lam[k][j]

    def lam_fraction(self, k, j) -> LaurentFraction:
        key = (k, j)
        out = self._lam_frac.get(key)
        if out is None:
            out = self.lam[k][j].to_fraction()
            self._lam_frac[key] = out
        return out

    def q_entry(self, k, j):
        """Q_{kj} for k > j, or None when zero."""
        return self.Q.get((k, j))

    def qhat(self, u, v):
        """Lower-order term of x_u x_v = lam_{uv} x_v x_u + Qhat for any u != v."""
        key = (u, v)
        if key in self._qhat:
            return self._qhat[key]
        if u > v:
            out = self.Q.get((u, v))
        else:
            base = self.Q.get((v, u))
            out = None if base is None else base.scale(-self.lam_fraction(u, v))
        self._qhat[key] = out
        return out

    def generator_degrees(self):
        """pi-degrees of the generators, or None when no valid grading."""
        if self._degrees == -1:
            degs = None
            if self.torus.pi is not None:
                degs = [
                    sum(p * c for p, c in zip(self.torus.pi, chi)) for chi in self.torus.chi
                ]
                if any(d <= 0 for d in degs):
                    degs = None
            self._degrees = degs
        return self._degrees

    # -- conveniences --

    def x(self, i) -> PBWPolynomial:
        return PBWPolynomial.generator(self.space, self.N, i)

    def one(self) -> PBWPolynomial:
        return PBWPolynomial.constant(self.space, self.N, 1)

    def scalar(self, value) -> LaurentFraction:
        if isinstance(value, LaurentFraction):
            return value
        if isinstance(value, SignedMonomial):
            return value.to_fraction()
        if isinstance(value, str):
            from .parsing import parse_scalar

            return parse_scalar(value, self.space)
        return LaurentFraction.from_rational(self.space, value)

    def mul(self, p, r) -> PBWPolynomial:
        return pbw.multiply(p, r, self)

    def parse(self, src, normalize=True) -> PBWPolynomial:
        from .parsing import parse_poly

        return parse_poly(src, self, normalize=normalize)

    def format(self, p) -> str:
        from .parsing import format_poly

        return format_poly(p, names=self.generator_names(), degrees=self.generator_degrees())

    def generator_index(self, name):
        """0-based index for 'x<k>' or a registered alias; None when unknown."""
        match = _GEN_RE.match(name)
        if match:
            k = int(match.group(1))
            if 1 <= k <= self.N:
                return k - 1
            return None
        return self.aliases.get(name)

    def generator_names(self):
        return [f"x{i + 1}" for i in range(self.N)]

    def sigma(self, k, p) -> PBWPolynomial:
        """sigma_k = (h_k .) restricted to PBW polynomials (scales monomials)."""
        out = {}
        for mono, coeff in p.terms.items():
            factor = SignedMonomial.one(self.space)
            for i, e in enumerate(mono):
                if e:
                    factor = factor * self.lam[k][i] ** e
            out[mono] = coeff * factor.to_fraction()
        return PBWPolynomial(self.space, self.N, out)

    def delta(self, k, p) -> PBWPolynomial:
        """delta_k(p) = x_k p - sigma_k(p) x_k for p supported below k."""
        xk = self.x(k)
        return self.mul(xk, p) - self.mul(self.sigma(k, p), xk)

    def __eq__(self, other):
        if not isinstance(other, CGLPresentation):
            return NotImplemented
        if (self.space, self.N) != (other.space, other.N):
            return False
        for k in range(self.N):
            for j in range(self.N):
                if self.lam[k][j] != other.lam[k][j]:
                    return False
        if set(self.Q) != set(other.Q):
            return False
        if any(self.Q[key] != other.Q[key] for key in self.Q):
            return False
        t, u = self.torus, other.torus
        if (t.rank, list(map(tuple, t.chi)), t.pi) != (u.rank, list(map(tuple, u.chi)), u.pi):
            return False
        if [tuple(r) for r in t.h] != [tuple(r) for r in u.h]:
            return False
        hs_t = None if t.h_star is None else [tuple(r) for r in t.h_star]
        hs_u = None if u.h_star is None else [tuple(r) for r in u.h_star]
        return hs_t == hs_u

    __hash__ = None

    def __repr__(self):
        label = self.name or "presentation"
        return f"<CGLPresentation {label}: N={self.N}, params={self.space.names}>"

    # -- JSON --

    def to_json_dict(self):
        from .parsing import format_poly

        degrees = self.generator_degrees()
        q_obj = {}
        for (k, j) in sorted(self.Q):
            q_obj[f"{k + 1},{j + 1}"] = format_poly(self.Q[(k, j)], degrees=degrees)
        torus_obj = {
            "rank": self.torus.rank,
            "chi": [list(row) for row in self.torus.chi],
            "h": [[str(v) for v in row] for row in self.torus.h],
        }
        if self.torus.h_star is not None:
            torus_obj["h_star"] = [[str(v) for v in row] for row in self.torus.h_star]
        if self.torus.pi is not None:
            torus_obj["pi"] = list(self.torus.pi)
        return {
            "name": self.name or "",
            "params": list(self.space.names),
            "N": self.N,
            "lambda": [[str(v) for v in row] for row in self.lam],
            "Q": q_obj,
            "torus": torus_obj,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2)

    @classmethod
    def from_json_dict(cls, data, fuel_factor=8):
        from .parsing import parse_scalar

        try:
            names = tuple(data["params"])
            N = int(data["N"])
            lam_rows = data["lambda"]
            q_obj = data.get("Q", {})
            torus_obj = data["torus"]
        except (KeyError, TypeError) as exc:
            raise MalformedPresentation(f"missing or malformed field: {exc}") from exc
        space = ParameterSpace(names)
        if len(lam_rows) != N or any(len(r) != N for r in lam_rows):
            raise MalformedPresentation(f"lambda must be {N}x{N}")

        def scalar_mono(text):
            return parse_scalar(str(text), space).as_monomial()

        # only the strict lower triangle is read; the rest is derived, and any
        # disagreement with the file is recorded for the validator to report
        lower = {}
        for k in range(N):
            for j in range(k):
                lower[(k, j)] = scalar_mono(lam_rows[k][j])
        issues = []
        one = SignedMonomial.one(space)
        for k in range(N):
            diag = scalar_mono(lam_rows[k][k])
            if diag != one:
                issues.append(f"lambda[{k + 1}][{k + 1}] = {lam_rows[k][k]} is not 1")
            for j in range(k + 1, N):
                upper = scalar_mono(lam_rows[k][j])
                if upper != lower[(j, k)].inverse():
                    issues.append(
                        f"lambda[{k + 1}][{j + 1}] is not the inverse of "
                        f"lambda[{j + 1}][{k + 1}]"
                    )

        rank = int(torus_obj["rank"])
        chi = [tuple(int(c) for c in row) for row in torus_obj["chi"]]
        h = [tuple(scalar_mono(v) for v in row) for row in torus_obj["h"]]
        h_star = None
        if "h_star" in torus_obj:
            h_star = [tuple(scalar_mono(v) for v in row) for row in torus_obj["h_star"]]
        pi = tuple(int(v) for v in torus_obj["pi"]) if "pi" in torus_obj else None
        torus = TorusData(rank=rank, chi=chi, h=h, h_star=h_star, pi=pi)

        shell = cls.build(
            space, N, lower, {}, torus, name=data.get("name") or None, fuel_factor=fuel_factor
        )
        Q = {}
        for key, text in q_obj.items():
            try:
                k_s, j_s = key.split(",")
                k, j = int(k_s) - 1, int(j_s) - 1
            except ValueError as exc:
                raise MalformedPresentation(f"bad Q key {key!r}") from exc
            if not (0 <= j < k < N):
                raise MalformedPresentation(f"Q key {key!r} is not strictly lower")
            Q[(k, j)] = shell.parse(str(text), normalize=False)
        out = cls.build(
            space,
            N,
            lower,
            Q,
            torus,
            name=data.get("name") or None,
            fuel_factor=fuel_factor,
        )
        out.file_issues = issues
        return out

    @classmethod
    def from_json(cls, text, fuel_factor=8):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise MalformedPresentation(f"invalid JSON: {exc}") from exc
        return cls.from_json_dict(data, fuel_factor=fuel_factor)


# -- validators --


def validate_cgl(P: CGLPresentation) -> ValidationReport:
    """Check the defining axioms on the given presentation data.

    Covered: well-formedness of lambda, Q confined to prefix subalgebras and
    chi-homogeneous of the right character, pairwise consistency of the
    rewriting data (associativity on generator triples), local nilpotency of
    each delta_k, and the covering-torus conditions
    chi_{x_j}(h_k) = lambda_{kj} with lambda_k no root of unity.
    """
    report = ValidationReport(subject=f"CGL axioms for {P.name or 'presentation'}")
    one = SignedMonomial.one(P.space)
    if P.file_issues:
        report.add("lambda matrix as loaded", False, "; ".join(P.file_issues))
    ok = all(P.lam[k][k] == one for k in range(P.N))
    detail = "" if ok else "diagonal entries must equal 1"
    bad_skew = [
        (k, j)
        for k in range(P.N)
        for j in range(k)
        if not (P.lam[k][j] * P.lam[j][k]).is_one
    ]
    report.add("lambda diagonal", ok, detail)
    report.add(
        "lambda multiplicative skew-symmetry",
        not bad_skew,
        "" if not bad_skew else f"failing pairs {[(k + 1, j + 1) for k, j in bad_skew]}",
    )

    bad_support = [
        (k, j) for (k, j), poly in P.Q.items() if not pbw.supported_below(poly, k)
    ]
    report.add(
        "Q confined to prefix subalgebras",
        not bad_support,
        "" if not bad_support else f"failing pairs {[(k + 1, j + 1) for k, j in bad_support]}",
    )

    bad_char = []
    for (k, j), poly in P.Q.items():
        want = tuple(a + b for a, b in zip(P.torus.chi[k], P.torus.chi[j]))
        got = pbw.homogeneous_character(poly, P)
        if got != want:
            bad_char.append((k + 1, j + 1))
    report.add(
        "Q homogeneous of character chi_k + chi_j",
        not bad_char,
        "" if not bad_char else f"failing pairs {bad_char}",
    )

    # axiom (iii): the torus covers each sigma_k, with non-root-of-unity weight
    bad_eig = []
    bad_root = []
    for k in range(P.N):
        hk = P.torus.h[k]
        for j in range(k):
            if P.torus.eigenvalue(P.torus.chi[j], hk) != P.lam[k][j]:
                bad_eig.append((k + 1, j + 1))
        if P.torus.eigenvalue(P.torus.chi[k], hk).is_root_of_unity():
            bad_root.append(k + 1)
    report.add(
        "axiom (iii): chi_{x_j}(h_k) = lambda_{kj}",
        not bad_eig,
        "" if not bad_eig else f"failing (k, j) {bad_eig}",
    )
    report.add(
        "axiom (iii): lambda_k = chi_{x_k}(h_k) not a root of unity",
        not bad_root,
        "" if not bad_root else f"failing k {bad_root}",
    )

    # axiom (ii): local nilpotency of delta_k, bounded iteration
    degs = P.generator_degrees()
    nil_fail = []
    for k in range(P.N):
        if not any((k, j) in P.Q for j in range(k)):
            continue
        for j in range(k):
            if degs is not None:
                cap = degs[j] // min(degs) + P.N
            else:
                cap = 2 * P.N + 2
            value = P.Q.get((k, j))
            if value is None:
                continue
            steps = 1
            try:
                while not value.is_zero and steps <= cap:
                    if not pbw.supported_below(value, k):
                        break
                    value = P.delta(k, value)
                    steps += 1
                if not value.is_zero:
                    nil_fail.append((k + 1, j + 1))
            except DivergenceBudgetExceeded:
                nil_fail.append((k + 1, j + 1))
    report.add(
        "axiom (ii): each delta_k locally nilpotent",
        not nil_fail,
        "" if not nil_fail else f"failing (k, j) {nil_fail}",
    )

    # consistency of the rewriting data: associativity on generator triples
    assoc_fail = []
    try:
        for a in range(P.N):
            xa = P.x(a)
            for b in range(P.N):
                ab = P.mul(xa, P.x(b))
                for c in range(P.N):
                    left = P.mul(ab, P.x(c))
                    right = P.mul(xa, P.mul(P.x(b), P.x(c)))
                    if left != right:
                        assoc_fail.append((a + 1, b + 1, c + 1))
    except DivergenceBudgetExceeded as exc:
        report.add("rewriting consistency on generator triples", False, str(exc))
    else:
        report.add(
            "rewriting consistency on generator triples",
            not assoc_fail,
            "" if not assoc_fail else f"failing triples {assoc_fail[:5]}",
        )
    return report


def validate_symmetric(P: CGLPresentation) -> ValidationReport:
    """Check the symmetric-presentation conditions (two-sided CGL structure).

    Raises MissingHStar when no h*-family is present.
    """
    if P.torus.h_star is None:
        raise MissingHStar("presentation carries no h*-data")
    report = ValidationReport(subject=f"symmetric conditions for {P.name or 'presentation'}")
    bad_support = []
    for (k, j), poly in P.Q.items():
        if any(i <= j or i >= k for i in poly.support()):
            bad_support.append((k + 1, j + 1))
    report.add(
        "Q supported strictly between j and k",
        not bad_support,
        "" if not bad_support else f"failing pairs {bad_support}",
    )
    bad_eig = []
    bad_root = []
    for j in range(P.N):
        hs = P.torus.h_star[j]
        for k in range(j + 1, P.N):
            if P.torus.eigenvalue(P.torus.chi[k], hs) != P.lam[j][k]:
                bad_eig.append((j + 1, k + 1))
        if P.torus.eigenvalue(P.torus.chi[j], hs).is_root_of_unity():
            bad_root.append(j + 1)
    report.add(
        "h*: chi_{x_k}(h*_j) = lambda_{jk}",
        not bad_eig,
        "" if not bad_eig else f"failing (j, k) {bad_eig}",
    )
    report.add(
        "h*: weight chi_{x_j}(h*_j) not a root of unity",
        not bad_root,
        "" if not bad_root else f"failing j {bad_root}",
    )
    return report


def is_symmetric(P: CGLPresentation) -> bool:
    try:
        return validate_symmetric(P).passed
    except MissingHStar:
        return False


# -- torsion of the commutation subgroup --


def is_torsionfree(P: CGLPresentation) -> bool:
    """Whether the subgroup of K^x generated by the lambda_{kj} is torsionfree.

    Under monomial_log the subgroup lives in Z/2 x Z^m; it has torsion exactly
    when -1 (sign bit 1, zero exponents) is an integer combination of the
    generators.  Decided by an integer kernel plus a parity check.
    """
    from .lattice import integer_kernel

    logs = [P.lam[k][j].monomial_log() for k in range(P.N) for j in range(k)]
    if not logs:
        return True
    signs = [s for s, _ in logs]
    m = P.space.m
    if m == 0:
        return not any(signs)
    rows = [[v[i] for _, v in logs] for i in range(m)]
    kernel = integer_kernel(rows, n_cols=len(logs))
    for vec in kernel:
        if sum(n * s for n, s in zip(vec, signs)) % 2:
            return False
    return True


# -- admissible permutations --


def is_interval_permutation(tau) -> bool:
    """True when every prefix image tau([0, k]) is an integer interval."""
    N = len(tau)
    if sorted(tau) != list(range(N)):
        return False
    lo = hi = tau[0]
    for value in tau[1:]:
        if value == hi + 1:
            hi = value
        elif value == lo - 1:
            lo = value
        else:
            return False
    return True


def sample_interval_permutation(N, rng):
    """Uniform sample over the 2^(N-1) admissible permutations."""
    bits = [rng.randint(0, 1) for _ in range(N - 1)]
    start = sum(bits)  # number of descending steps determines tau(0)
    tau = [start]
    lo = hi = start
    for b in bits:
        if b:
            lo -= 1
            tau.append(lo)
        else:
            hi += 1
            tau.append(hi)
    return tau


def _convert_to_order(P, poly, positions):
    """Re-express a PBW polynomial in the permuted generator order.

    positions[g] is the new slot of old generator g; rewriting uses only the
    original presentation's pair data (via qhat), so no permuted data is
    needed.  Exponent slots of the result are indexed by new position.
    """
    one = LaurentFraction.one(P.space)
    items = []
    for mono, coeff in poly.terms.items():
        items.append((coeff * one, pbw.word_of_monomial(mono)))
    return pbw.normalize_words(P, items, order_positions=positions)


def permute_presentation(P: CGLPresentation, tau) -> CGLPresentation:
    """Present the same algebra with generators x_{tau(0)}, x_{tau(1)}, ...

    tau must be admissible (prefix images are intervals; NotInXi otherwise).
    Covering h-elements come from h on ascending steps and h* on descending
    steps (MissingHStar when h* is needed but absent).  Q-data is recomputed
    by normalization in the original algebra.  h*-data is carried over only
    for the identity; use reverse_presentation for the full flip.
    """
    tau = list(tau)
    if len(tau) != P.N or not is_interval_permutation(tau):
        raise NotInXi(f"{tau} does not have interval prefixes")
    N = P.N
    positions = [0] * N
    for a, g in enumerate(tau):
        positions[g] = a
    lower = {}
    for a in range(N):
        for b in range(a):
            lower[(a, b)] = P.lam[tau[a]][tau[b]]
    new_h = []
    hi = lo = tau[0]
    new_h.append(P.torus.h[tau[0]])
    for a in range(1, N):
        g = tau[a]
        if g == hi + 1:
            hi = g
            new_h.append(P.torus.h[g])
        else:
            lo = g
            if P.torus.h_star is None:
                raise MissingHStar(
                    f"descending step at position {a + 1} needs h*-data"
                )
            new_h.append(P.torus.h_star[g])
    torus = TorusData(
        rank=P.torus.rank,
        chi=[P.torus.chi[g] for g in tau],
        h=new_h,
        h_star=(P.torus.h_star if tau == sorted(tau) else None),
        pi=P.torus.pi,
    )
    Q = {}
    for a in range(N):
        for b in range(a):
            qhat = P.qhat(tau[a], tau[b])
            if qhat is None:
                continue
            converted = _convert_to_order(P, qhat, positions)
            if not converted.is_zero:
                Q[(a, b)] = converted
    name = f"{P.name}^tau" if P.name else None
    out = CGLPresentation.build(
        P.space, N, lower, Q, torus, name=name, fuel_factor=P.fuel_factor
    )
    return out


def reverse_presentation(P: CGLPresentation) -> CGLPresentation:
    """The same algebra presented on x_N, ..., x_1.

    Requires each Q_{kj} to be supported strictly between j and k
    (NotReversible otherwise) and an h*-family (MissingHStar), which becomes
    the h-family of the reversed presentation while h turns into its h*.
    """
    for (k, j), poly in P.Q.items():
        if any(i <= j or i >= k for i in poly.support()):
            raise NotReversible(
                f"Q[{k + 1},{j + 1}] is not supported strictly between the endpoints"
            )
    if P.torus.h_star is None:
        raise MissingHStar("reversal needs h*-data for the reversed covering torus")
    N = P.N
    tau = list(reversed(range(N)))
    positions = [0] * N
    for a, g in enumerate(tau):
        positions[g] = a
    lower = {}
    for a in range(N):
        for b in range(a):
            lower[(a, b)] = P.lam[tau[a]][tau[b]]
    torus = TorusData(
        rank=P.torus.rank,
        chi=[P.torus.chi[g] for g in tau],
        h=[P.torus.h_star[g] for g in tau],
        h_star=[P.torus.h[g] for g in tau],
        pi=P.torus.pi,
    )
    Q = {}
    for a in range(N):
        for b in range(a):
            qhat = P.qhat(tau[a], tau[b])
            if qhat is None:
                continue
            converted = _convert_to_order(P, qhat, positions)
            if not converted.is_zero:
                Q[(a, b)] = converted
    name = None
    if P.name:
        name = P.name[:-4] if P.name.endswith("^rev") else P.name + "^rev"
    return CGLPresentation.build(
        P.space, N, lower, Q, torus, name=name, fuel_factor=P.fuel_factor
    )
