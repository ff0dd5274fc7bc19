"""Nakayama automorphism computation and the core decomposition."""

from __future__ import annotations

from dataclasses import dataclass

from . import pbw
from .errors import InternalInconsistency, MissingHStar, NotReversible
from .lattice import row_space_basis
from .pbw import PBWPolynomial
from .presentation import CGLPresentation, TorusData, validate_symmetric
from .primes import YElementTable, compute_P_x
from .reporting import ValidationReport
from .scalars import SignedMonomial


@dataclass
class DiagonalMap:
    """x_k -> mu_k x_k for invertible scalars mu_k."""

    eigenvalues: list

    def apply(self, p: PBWPolynomial) -> PBWPolynomial:
        out = {}
        for mono, coeff in p.terms.items():
            factor = SignedMonomial.one(p.space)
            for i, e in enumerate(mono):
                if e:
                    factor = factor * self.eigenvalues[i] ** e
            out[mono] = coeff * factor.to_fraction()
        return PBWPolynomial(p.space, p.N, out)

    def as_spec(self, P):
        from .automorphisms import EndomorphismSpec

        return EndomorphismSpec(
            [P.x(i).scale(self.eigenvalues[i].to_fraction()) for i in range(P.N)]
        )

    def inverse(self) -> "DiagonalMap":
        return DiagonalMap([v.inverse() for v in self.eigenvalues])

    def compose(self, other: "DiagonalMap") -> "DiagonalMap":
        return DiagonalMap([a * b for a, b in zip(self.eigenvalues, other.eigenvalues)])

    @property
    def is_identity(self) -> bool:
        return all(v.is_one for v in self.eigenvalues)

    def to_json_dict(self):
        return {"eigenvalues": [str(v) for v in self.eigenvalues]}


def check_diagonal_automorphism(P: CGLPresentation, d: DiagonalMap) -> bool:
    """Whether x_i -> mu_i x_i preserves every defining relation.

    Equivalent to each Q_{kj} being an eigenvector of the diagonal scaling
    with eigenvalue mu_k mu_j.
    """
    for (k, j), poly in P.Q.items():
        want = d.eigenvalues[k] * d.eigenvalues[j]
        for mono in poly.terms:
            factor = SignedMonomial.one(P.space)
            for i, e in enumerate(mono):
                if e:
                    factor = factor * d.eigenvalues[i] ** e
            if factor != want:
                return False
    return True


def diagonal_constraint_rank(P: CGLPresentation) -> int:
    """Dimension of the torus of diagonal maps preserving the relations.

    Each monomial e of each Q_{kj} forces mu^(e - e_k - e_j) = 1; the
    solution torus has dimension N minus the rank of the constraint lattice.
    """
    rows = []
    for (k, j), poly in P.Q.items():
        for mono in poly.terms:
            rows.append(
                [
                    mono[i] - (1 if i == k else 0) - (1 if i == j else 0)
                    for i in range(P.N)
                ]
            )
    if not rows:
        return P.N
    return P.N - len(row_space_basis(rows))


def nakayama_automorphism(P: CGLPresentation) -> DiagonalMap:
    """The diagonal map x_k -> (prod_j lambda_kj) x_k.

    Requires every Q_{kj} to be supported strictly between its endpoints
    (the reversibility condition); the result is asserted to preserve the
    relations.
    """
    for (k, j), poly in P.Q.items():
        if any(i <= j or i >= k for i in poly.support()):
            raise NotReversible(
                f"Q[{k + 1},{j + 1}] is not supported strictly between the endpoints"
            )
    eigenvalues = []
    for k in range(P.N):
        value = SignedMonomial.one(P.space)
        for j in range(P.N):
            value = value * P.lam[k][j]
        eigenvalues.append(value)
    nu = DiagonalMap(eigenvalues)
    if not check_diagonal_automorphism(P, nu):
        raise InternalInconsistency("Nakayama eigenvalues fail relation preservation")
    return nu


def verify_nakayama_by_normal_element(
    P: CGLPresentation, T: YElementTable, nu: DiagonalMap
) -> ValidationReport:
    """Realize nu by conjugation: x_k u = nu(x_k) u for u the product of primes.

    u is the ordered product of the final y's (increasing index).  Separately
    checks the scalar identity beta_k = prod_j lambda_kj, where beta_k is the
    product of alpha_{k,l} over the final indices l.
    """
    report = ValidationReport(subject=f"Nakayama via normal element for {P.name or 'presentation'}")
    finals = T.finals()
    u = P.one()
    for l in finals:
        u = P.mul(u, T.y[l])
    bad = []
    for k in range(P.N):
        lhs = P.mul(P.x(k), u)
        rhs = P.mul(u, P.x(k)).scale(nu.eigenvalues[k].to_fraction())
        if lhs != rhs:
            bad.append(k + 1)
    report.add(
        "x_k u = u nu(x_k) for every generator",
        not bad,
        "" if not bad else f"failing k {bad}",
    )
    bad_beta = []
    for k in range(P.N):
        beta = SignedMonomial.one(P.space)
        for l in finals:
            beta = beta * T.alpha[k][l]
        if beta != nu.eigenvalues[k]:
            bad_beta.append(k + 1)
    report.add(
        "beta_k = prod_j lambda_kj for every generator",
        not bad_beta,
        "" if not bad_beta else f"failing k {bad_beta}",
    )
    return report


@dataclass
class CoreDecomposition:
    """Split of the generators into frame (F_x) and core (C_x) parts.

    The core presentation lives on the C_x generators; frame_lambda carries
    the commutation scalars within F_x and smash_scalars the action of the
    frame on the core.
    """

    P_x: list
    F_x: list
    C_x: list
    core: CGLPresentation
    frame_lambda: list
    smash_scalars: dict
    core_report: ValidationReport

    def to_json_dict(self):
        return {
            "P_x": [i + 1 for i in self.P_x],
            "F_x": [i + 1 for i in self.F_x],
            "C_x": [i + 1 for i in self.C_x],
            "core": self.core.to_json_dict(),
            "frame_lambda": [[str(v) for v in row] for row in self.frame_lambda],
            "smash_scalars": {
                f"{i + 1},{k + 1}": str(v) for (i, k), v in sorted(self.smash_scalars.items())
            },
            "core_report": self.core_report.to_dict(),
        }


def core_decomposition(P: CGLPresentation, T: YElementTable) -> CoreDecomposition:
    """Compute P_x, F_x, C_x and the induced core presentation.

    F_x collects the prime generators that are absent from every Q_{kj} with
    both endpoints outside P_x; the core is the restriction to the
    complement, which by construction contains all such Q-data.
    """
    if P.torus.h_star is None:
        raise MissingHStar("the core decomposition applies to symmetric presentations")
    p_set = compute_P_x(P, T)
    p_lookup = set(p_set)
    essential = [
        poly
        for (k, j), poly in P.Q.items()
        if k not in p_lookup and j not in p_lookup
    ]
    f_set = [
        i
        for i in p_set
        if all(all(mono[i] == 0 for mono in poly.terms) for poly in essential)
    ]
    f_lookup = set(f_set)
    c_set = [i for i in range(P.N) if i not in f_lookup]
    pos = {g: a for a, g in enumerate(c_set)}
    n_core = len(c_set)
    lower = {
        (a, b): P.lam[c_set[a]][c_set[b]] for a in range(n_core) for b in range(a)
    }
    Q = {}
    for (k, j), poly in P.Q.items():
        if k in pos and j in pos:
            if any(i not in pos for i in poly.support()):
                raise InternalInconsistency(
                    f"Q[{k + 1},{j + 1}] leaks outside the core generators"
                )
            terms = {}
            for mono, coeff in poly.terms.items():
                new = [0] * n_core
                for i, e in enumerate(mono):
                    if e:
                        new[pos[i]] = e
                terms[tuple(new)] = coeff
            Q[(pos[k], pos[j])] = PBWPolynomial(P.space, n_core, terms)
    torus = TorusData(
        rank=P.torus.rank,
        chi=[P.torus.chi[g] for g in c_set],
        h=[P.torus.h[g] for g in c_set],
        h_star=[P.torus.h_star[g] for g in c_set],
        pi=P.torus.pi,
    )
    core = CGLPresentation.build(
        P.space,
        n_core,
        lower,
        Q,
        torus,
        name=f"{P.name}|core" if P.name else None,
        fuel_factor=P.fuel_factor,
    )
    core_report = validate_symmetric(core)
    frame = [[P.lam[i][j] for j in f_set] for i in f_set]
    smash = {(i, k): P.lam[i][k] for i in f_set for k in c_set}
    return CoreDecomposition(
        P_x=p_set,
        F_x=f_set,
        C_x=c_set,
        core=core,
        frame_lambda=frame,
        smash_scalars=smash,
        core_report=core_report,
    )
