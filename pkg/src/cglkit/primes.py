"""Homogeneous prime elements of the nested subalgebra chain.

Implements the level function eta with its predecessor/successor statistics,
the recursively built elements y_k (y_k = y_{p(k)} x_k - c_k when delta_k is
nonzero, else y_k = x_k), the commutation matrices alpha and q, the embedded
quantum affine space check, the prime-generator set P_x, bicharacter radicals
with saturation, and the center lattice of the associated quantum torus.

All indices are 0-based in code; reports and CLI output are 1-based.  The
sentinels -infinity (for predecessors) and +infinity (for successors) are
represented by None.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import pbw
from .errors import (
    AmbiguousPredecessor,
    InternalInconsistency,
    NoGradingDefined,
    NoPredecessorSolution,
)
from .lattice import (
    integer_kernel,
    lattice_contains,
    row_space_basis,
    smith_invariant_factors,
    solve_rational,
)
from .linalg import solve_affine
from .pbw import PBWPolynomial
from .reporting import ValidationReport
from .scalars import LaurentFraction, SignedMonomial


@dataclass
class EtaData:
    """Level function and chain statistics of the y-element recursion."""

    eta: list
    pred: list
    succ: list
    ominus: list
    oplus: list

    def chain(self, k):
        """[k, p(k), p^2(k), ...] down to the chain head."""
        out = [k]
        while self.pred[out[-1]] is not None:
            out.append(self.pred[out[-1]])
        return out

    def finals(self):
        """Indices with no successor; their y's are the primes of the full algebra."""
        return [k for k, s in enumerate(self.succ) if s is None]

    def to_json_dict(self):
        def render(values):
            return [v + 1 if isinstance(v, int) else v for v in values]

        return {
            "eta": list(self.eta),
            "pred": [("-inf" if v is None else v + 1) for v in self.pred],
            "succ": [("+inf" if v is None else v + 1) for v in self.succ],
            "O_minus": list(self.ominus),
            "O_plus": list(self.oplus),
        }


@dataclass
class YElementTable:
    y: list
    c: dict
    alpha: list
    qmat: list
    eta_data: EtaData
    characters: list = field(default_factory=list)

    def finals(self):
        return self.eta_data.finals()

    def to_json_dict(self, P):
        from .parsing import format_poly

        degrees = P.generator_degrees()
        names = [f"x{i + 1}" for i in range(P.N)]
        return {
            "y": [format_poly(p, names=names, degrees=degrees) for p in self.y],
            "c": {
                str(k + 1): format_poly(p, names=names, degrees=degrees)
                for k, p in sorted(self.c.items())
            },
            "eta_data": self.eta_data.to_json_dict(),
            "alpha": [[str(v) for v in row] for row in self.alpha],
            "qmat": [[str(v) for v in row] for row in self.qmat],
            "finals": [k + 1 for k in self.finals()],
        }


def _chi_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _chi_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def monomials_with_character(P, chi, top=None):
    """Exponent tuples over x_0..x_{top-1} whose character is chi.

    Finite because the pi-grading is positive on generators; the search is a
    bounded knapsack over the pi-degree budget.
    """
    degs = P.generator_degrees()
    if degs is None:
        raise NoGradingDefined("character components need the positive grading pi")
    top = P.N if top is None else top
    pi = P.torus.pi
    budget = sum(p * c for p, c in zip(pi, chi))
    if budget < 0:
        return []
    out = []
    acc = [0] * P.N

    def rec(slot, remaining_chi, remaining_deg):
        if slot == top:
            if remaining_deg == 0 and not any(remaining_chi):
                out.append(tuple(acc))
            return
        chi_slot = P.torus.chi[slot]
        step = degs[slot]
        for e in range(remaining_deg // step + 1):
            acc[slot] = e
            rec(
                slot + 1,
                tuple(r - e * c for r, c in zip(remaining_chi, chi_slot)),
                remaining_deg - e * step,
            )
        acc[slot] = 0

    rec(0, tuple(chi), budget)
    return out


def monomials_of_degree(P, d, top=None):
    """Exponent tuples over x_0..x_{top-1} of pi-degree exactly d."""
    degs = P.generator_degrees()
    if degs is None:
        raise NoGradingDefined("graded components need the positive grading pi")
    top = P.N if top is None else top
    out = []
    acc = [0] * P.N

    def rec(slot, remaining):
        if slot == top:
            if remaining == 0:
                out.append(tuple(acc))
            return
        step = degs[slot]
        for e in range(remaining // step + 1):
            acc[slot] = e
            rec(slot + 1, remaining - e * step)
        acc[slot] = 0

    rec(0, d)
    return out


def _solve_membership(P, columns, target):
    """Coefficients c with sum(c_t * columns[t]) = target, or None.

    columns and target are PBW polynomials; the system is solved exactly over
    the scalar field.  Returns (coefficients, unique) where unique is False
    when the solution space is positive-dimensional.
    """
    monos = set(target.terms)
    for col in columns:
        monos |= set(col.terms)
    monos = sorted(monos)
    zero = LaurentFraction.zero(P.space)
    rows = [[col.terms.get(m, zero) for col in columns] for m in monos]
    rhs = [target.terms.get(m, zero) for m in monos]
    solved = solve_affine(rows, rhs, P.space)
    if solved is None:
        return None
    particular, null_basis = solved
    return particular, not null_basis


def _solve_predecessor(P, y_j, chain_j, k, target_chi):
    """Candidate c for y = y_j x_k - c normal in the prefix subalgebra.

    The normality scalars are pinned a priori: gamma_i is the product of
    lambda_{c,i} over the would-be chain [k] + chain_j, which is what moving
    x_i through the leading monomial of y produces.  Given those scalars the
    condition y x_i = gamma_i x_i y is linear in c.  Returns the unique c or
    None; a positive-dimensional solution space raises AmbiguousPredecessor.
    """
    chain = [k] + chain_j
    lead = P.mul(y_j, P.x(k))
    basis = monomials_with_character(P, target_chi, top=k)
    columns = [PBWPolynomial(P.space, P.N, {m: 1}) for m in basis]
    lhs_rows = []
    col_rows = [[] for _ in columns]
    for i in range(k + 1):
        gamma = SignedMonomial.one(P.space)
        for c in chain:
            gamma = gamma * P.lam[c][i]
        gamma_frac = gamma.to_fraction()
        xi = P.x(i)
        lhs_rows.append(P.mul(lead, xi) - P.mul(xi, lead).scale(gamma_frac))
        for t, col in enumerate(columns):
            col_rows[t].append(P.mul(col, xi) - P.mul(xi, col).scale(gamma_frac))
    # stack the per-generator conditions into one linear system
    stacked_target = _stack(P, lhs_rows)
    stacked_cols = [_stack(P, rows) for rows in col_rows]
    if not columns:
        return PBWPolynomial.zero(P.space, P.N) if stacked_target.is_zero else None
    solved = _solve_membership(P, stacked_cols, stacked_target)
    if solved is None:
        return None
    coeffs, unique = solved
    if not unique:
        raise AmbiguousPredecessor(
            f"multiple homogeneous c solve the normality system at k = {k + 1}"
        )
    terms = {m: coeff for m, coeff in zip(basis, coeffs) if not coeff.is_zero}
    return PBWPolynomial(P.space, P.N, terms)


def _stack(P, polys):
    """Pack a list of polynomials into one by shifting monomials to disjoint slots.

    Implemented by tagging each monomial with its list position; equality of
    the stacked object is equivalent to simultaneous equality of the parts.
    """
    terms = {}
    for pos, poly in enumerate(polys):
        for mono, coeff in poly.terms.items():
            terms[(pos,) + mono] = coeff
    return _Stacked(terms, P)


class _Stacked:
    """Minimal polynomial-like wrapper used only by the linear solver."""

    __slots__ = ("terms", "space")

    def __init__(self, terms, P):
        self.terms = terms
        self.space = P.space

    @property
    def is_zero(self):
        return not self.terms


def compute_y_elements(P) -> YElementTable:
    """Run the y-element recursion and assemble the full table.

    The result is cached on the presentation; presentations are treated as
    immutable after construction.
    """
    cached = getattr(P, "_y_table", None)
    if cached is not None:
        return cached
    if P.generator_degrees() is None:
        raise NoGradingDefined("the y-element search needs the positive grading pi")
    N = P.N
    y = []
    y_chi = []
    pred = []
    succ = [None] * N
    c_map = {}
    for k in range(N):
        if not any((k, j) in P.Q for j in range(k)):
            y.append(P.x(k))
            y_chi.append(tuple(P.torus.chi[k]))
            pred.append(None)
            continue
        hits = []
        for j in range(k):
            if succ[j] is not None:
                continue
            chain_j = [j]
            while pred[chain_j[-1]] is not None:
                chain_j.append(pred[chain_j[-1]])
            target_chi = _chi_add(y_chi[j], P.torus.chi[k])
            c = _solve_predecessor(P, y[j], chain_j, k, target_chi)
            if c is not None:
                hits.append((j, c))
        if not hits:
            raise NoPredecessorSolution(
                f"no currently-final y_j admits a normal y_j x_{k + 1} - c"
            )
        if len(hits) > 1:
            raise AmbiguousPredecessor(
                f"predecessors {[j + 1 for j, _ in hits]} all admit solutions "
                f"at k = {k + 1}"
            )
        j, c = hits[0]
        pred.append(j)
        succ[j] = k
        c_map[k] = c
        y.append(P.mul(y[j], P.x(k)) - c)
        y_chi.append(_chi_add(y_chi[j], P.torus.chi[k]))

    eta = [0] * N
    ominus = [0] * N
    label = 0
    for k in range(N):
        if pred[k] is None:
            eta[k] = label
            label += 1
        else:
            eta[k] = eta[pred[k]]
            ominus[k] = ominus[pred[k]] + 1
    oplus = [0] * N
    for k in reversed(range(N)):
        if succ[k] is not None:
            oplus[k] = oplus[succ[k]] + 1
    eta_data = EtaData(eta=eta, pred=pred, succ=succ, ominus=ominus, oplus=oplus)

    chains = [eta_data.chain(k) for k in range(N)]
    one = SignedMonomial.one(P.space)
    alpha = [[one for _ in range(N)] for _ in range(N)]
    qmat = [[one for _ in range(N)] for _ in range(N)]
    for j in range(N):
        for k in range(N):
            value = one
            for c in chains[k]:
                value = value * P.lam[j][c]
            alpha[j][k] = value
    for k in range(N):
        for j in range(N):
            value = one
            for u in chains[k]:
                for v in chains[j]:
                    value = value * P.lam[u][v]
            qmat[k][j] = value

    table = YElementTable(
        y=y, c=c_map, alpha=alpha, qmat=qmat, eta_data=eta_data, characters=y_chi
    )
    P._y_table = table
    return table


def rank_of(P, T: YElementTable) -> int:
    """Rank of the algebra, cross-checked three ways.

    The number of zero delta-columns, the number of successor-free indices,
    and the number of eta-levels must agree.
    """
    a = sum(1 for v in T.eta_data.pred if v is None)
    b = sum(1 for v in T.eta_data.succ if v is None)
    c = len(set(T.eta_data.eta))
    if not (a == b == c):
        raise InternalInconsistency(f"rank formulas disagree: {a}, {b}, {c}")
    return a


def compute_P_x(P, T: YElementTable):
    """0-based indices i with x_i prime, via singleton eta-levels.

    Cross-checked against the direct condition: no Q-data involves x_i as an
    endpoint (Q_{ki} = 0 for k > i and Q_{ij} = 0 for j < i).
    """
    ed = T.eta_data
    by_level = {i: ed.pred[i] is None and ed.succ[i] is None for i in range(P.N)}
    a_set = {i for i, flag in by_level.items() if flag}
    c_set = {
        i
        for i in range(P.N)
        if not any((k, i) in P.Q for k in range(i + 1, P.N))
        and not any((i, j) in P.Q for j in range(i))
    }
    if a_set != c_set:
        raise InternalInconsistency(
            f"eta-level criterion {sorted(a_set)} disagrees with the "
            f"Q-support criterion {sorted(c_set)}"
        )
    return sorted(a_set)


def verify_quantum_affine(P, T: YElementTable) -> ValidationReport:
    """Check y_k y_j = q_kj y_j y_k symbolically for every pair."""
    report = ValidationReport(subject=f"quantum affine relations for {P.name or 'presentation'}")
    bad = []
    for k in range(P.N):
        for j in range(k):
            lhs = P.mul(T.y[k], T.y[j])
            rhs = P.mul(T.y[j], T.y[k]).scale(T.qmat[k][j].to_fraction())
            if lhs != rhs:
                bad.append((k + 1, j + 1))
    report.add(
        "y_k y_j = q_kj y_j y_k for all pairs",
        not bad,
        "" if not bad else f"failing pairs {bad}",
    )
    return report


# -- bicharacter lattices --


@dataclass
class LatticeDescription:
    """Sublattice of Z^n given by a canonical (Hermite-form) row basis."""

    n: int
    basis: list

    @property
    def rank(self):
        return len(self.basis)

    def contains(self, vector):
        return lattice_contains(self.basis, vector)

    def to_json_dict(self):
        return {"n": self.n, "basis": [list(r) for r in self.basis]}


def _log_data(M):
    """Split a multiplicatively skew-symmetric matrix into sign and exponent rows."""
    N = len(M)
    sign_rows = []
    exp_rows = []
    m = M[0][0].space.m if N else 0
    for i in range(N):
        logs = [M[i][j].monomial_log() for j in range(N)]
        sign_rows.append([s for s, _ in logs])
        for a in range(m):
            exp_rows.append([v[a] for _, v in logs])
    return exp_rows, sign_rows, N


def bicharacter_radical(M) -> LatticeDescription:
    """Radical of the bicharacter e_i, e_j -> M[i][j] on Z^N.

    f is in the radical iff prod_j M[i][j]^{f_j} = 1 for every i: the
    exponent rows must vanish over Z and the sign rows mod 2.  The parity
    constraints are absorbed by the doubling trick: take the integer kernel
    of [[A, 0], [S, -2I]] and project to the f-block (the projection is an
    isomorphism since the auxiliary block is determined by f).
    """
    exp_rows, sign_rows, N = _log_data(M)
    big = [row + [0] * N for row in exp_rows]
    for i, row in enumerate(sign_rows):
        big.append(row + [-2 if j == i else 0 for j in range(N)])
    kernel = integer_kernel(big, n_cols=2 * N)
    return LatticeDescription(N, row_space_basis([vec[:N] for vec in kernel]))


def saturation_closure(M) -> LatticeDescription:
    """Saturation of the radical: the kernel of the exponent rows alone.

    The radical has index a power of 2 in this kernel (2f satisfies every
    parity constraint), and a kernel sublattice is saturated in Z^N, so this
    is exactly {f : nf in rad for some n > 0}.
    """
    exp_rows, _, N = _log_data(M)
    kernel = integer_kernel(exp_rows, n_cols=N) if exp_rows else [
        [1 if j == i else 0 for j in range(N)] for i in range(N)
    ]
    return LatticeDescription(N, row_space_basis(kernel))


def is_saturated(M) -> bool:
    """Whether Z^N modulo the radical of the bicharacter is torsionfree.

    Equivalent to the radical equalling its saturation; decided by the Smith
    invariant factors of the radical basis written in coordinates of the
    saturation basis.
    """
    rad = bicharacter_radical(M)
    sat = saturation_closure(M)
    if rad.rank != sat.rank:
        raise InternalInconsistency("radical and its saturation differ in rank")
    coords = []
    for vec in rad.basis:
        co = solve_rational(sat.basis, vec)
        if co is None or any(x.denominator != 1 for x in co):
            raise InternalInconsistency("radical vector outside its saturation")
        coords.append([int(x) for x in co])
    return all(d == 1 for d in smith_invariant_factors(coords))


@dataclass
class CenterLattice:
    """Exponent lattice of central y-monomials in the quantum torus."""

    lattice: LatticeDescription
    nonnegative: list

    def to_json_dict(self):
        return {
            "basis": [list(r) for r in self.lattice.basis],
            "all_nonnegative": list(self.nonnegative),
        }


def torus_center_basis(P, T: YElementTable) -> CenterLattice:
    """Basis of {f : y^f is central in the quantum torus on the y's}.

    Basis vectors with all-nonnegative entries give central elements of the
    affine algebra itself; each vector is flagged accordingly.
    """
    rad = bicharacter_radical(T.qmat)
    flags = [all(v >= 0 for v in row) for row in rad.basis]
    return CenterLattice(rad, flags)


# -- desk-scale probes backing the primeness claims --


def _divide_in_span(P, left, target, basis):
    """Solve left * b = target with b in the span of the basis monomials."""
    if not basis:
        return None
    columns = [P.mul(left, PBWPolynomial(P.space, P.N, {m: 1})) for m in basis]
    solved = _solve_membership(P, columns, target)
    if solved is None:
        return None
    coeffs, _ = solved
    terms = {m: c for m, c in zip(basis, coeffs) if not c.is_zero}
    return PBWPolynomial(P.space, P.N, terms)


def irreducibility_probe(P, T: YElementTable, k):
    """Search for y_k = a * b with homogeneous non-unit factors of lower degree.

    For each split of the pi-degree and each character of the left factor,
    the bilinear equation is linearized whenever one side's homogeneous
    component is 1-dimensional.  Returns (irreducible, complete): complete is
    False when some component pair was too fat to linearize.
    """
    y = T.y[k]
    chi_y = T.characters[k]
    d = pbw.min_degree(y, P)
    complete = True
    for d1 in range(1, d):
        by_char = {}
        for mono in monomials_of_degree(P, d1):
            chi = tuple(
                sum(e * c[a] for e, c in zip(mono, P.torus.chi))
                for a in range(P.torus.rank)
            )
            by_char.setdefault(chi, []).append(mono)
        for chi_a, B1 in by_char.items():
            B2 = monomials_with_character(P, _chi_sub(chi_y, chi_a))
            if not B2:
                continue
            if len(B1) == 1:
                left = PBWPolynomial(P.space, P.N, {B1[0]: 1})
                if _divide_in_span(P, left, y, B2) is not None:
                    return False, complete
            elif len(B2) == 1:
                right = PBWPolynomial(P.space, P.N, {B2[0]: 1})
                columns = [
                    P.mul(PBWPolynomial(P.space, P.N, {m: 1}), right) for m in B1
                ]
                if _solve_membership(P, columns, y) is not None:
                    return False, complete
            else:
                complete = False
    return True, complete


def greedy_prime_factorization(P, T: YElementTable, w):
    """Recover the multiset of final-prime factors of w by repeated division.

    w should be a scalar times a product of the final y's; returns
    (scalar, {k: multiplicity}) or None when division gets stuck before
    reaching a constant.
    """
    finals = T.finals()
    counts = {k: 0 for k in finals}
    rem = w
    progress = True
    while progress and rem.as_constant() is None:
        progress = False
        chi_rem = pbw.homogeneous_character(rem, P)
        if chi_rem is None:
            return None
        for k in finals:
            chi_b = _chi_sub(chi_rem, T.characters[k])
            basis = monomials_with_character(P, chi_b)
            quotient = _divide_in_span(P, T.y[k], rem, basis)
            if quotient is not None:
                counts[k] += 1
                rem = quotient
                progress = True
                break
    scalar = rem.as_constant()
    if scalar is None:
        return None
    return scalar, counts
