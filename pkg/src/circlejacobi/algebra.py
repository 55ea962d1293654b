"""The circle Jacobi algebra and its representations.

The algebra has three generators: two involutions M1, M2 and one more
generator K, subject to the anticommutation relations

    {K, M1} = g1 M1 + g2 I,    {K, M2} = g3 M2 + g4 I.

A nondegenerate quadruple (g1, g2, g3, g4) can be brought by an affine
substitution K -> mu K + nu to the canonical form

    {K, M1} = (alpha + beta + 1)(M1 - I),
    {K, M2} = (alpha + beta + 2) M2 + (alpha - beta) I.

Representing M1, M2 by the block reflection matrices of a CMV system
and K by a diagonal, the relations alone force the eigenvalues lambda_n
and the Verblunsky coefficients a_n; derive_representation performs
that construction from the matrix entries.  The module also checks the
functional realization (M1 = R, M2 = z R, K the Dunkl-type operator)
and the pair X = M1 M2 + M2 M1, Y = K^2 - (alpha+beta+1) K, which
closes into a centrally extended quadratic algebra with M1 as the
extension element.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .cmv import BandedOperator, anticommutator, build_m1, build_m2
from .dunkl import apply_k, lambda_n
from .errors import Degenerate, InconsistentSystem
from .laurent import LaurentPoly, Z_MINUS_ZINV
from .opuc import JacobiParams, OPUCFamily, verblunsky
from .report import VerificationReport
from .szego import build_p, build_q

Operator = Callable[[LaurentPoly], LaurentPoly]


# --------------------------------------------------------------------------
# Canonical form
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class AlgebraParams:
    """Structure constants (g1, g2, g3, g4) of the defining relations."""

    g1: Fraction
    g2: Fraction
    g3: Fraction
    g4: Fraction

    def __post_init__(self) -> None:
        for name in ("g1", "g2", "g3", "g4"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))


@dataclass(frozen=True)
class CanonicalForm:
    """Parameters (alpha, beta) of the canonical relations together with
    the substitution K -> mu K + nu that produced them."""

    alpha: Fraction
    beta: Fraction
    mu: Fraction
    nu: Fraction


def canonicalize(g: AlgebraParams) -> CanonicalForm:
    """Reduce (g1, g2, g3, g4) to canonical (alpha, beta, mu, nu).

    Requires g3 != g1 and g2 != 0; otherwise the quadruple is degenerate
    and no substitution reaches the canonical form with both parameters
    free.
    """
    if g.g3 == g.g1 or g.g2 == 0:
        raise Degenerate(f"degenerate structure constants {g}")
    mu = Fraction(1) / (g.g3 - g.g1)
    splus = -g.g2 * mu  # alpha + beta + 1
    d = g.g4 * mu  # alpha - beta
    alpha = (splus - 1 + d) / 2
    beta = (splus - 1 - d) / 2
    nu = (splus - mu * g.g1) / 2
    # substituting back must reproduce the input exactly
    assert (splus - 2 * nu) / mu == g.g1
    assert -splus / mu == g.g2
    assert (splus + 1 - 2 * nu) / mu == g.g3
    assert d / mu == g.g4
    return CanonicalForm(alpha=alpha, beta=beta, mu=mu, nu=nu)


# --------------------------------------------------------------------------
# Representation on the block matrices: deriving lambda_n and a_n
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class _Affine:
    """const + slope * t for the single free parameter t = lambda_0."""

    const: Fraction
    slope: Fraction

    def __neg__(self) -> "_Affine":
        return _Affine(-self.const, -self.slope)

    def __add__(self, other) -> "_Affine":
        if isinstance(other, _Affine):
            return _Affine(self.const + other.const, self.slope + other.slope)
        return _Affine(self.const + Fraction(other), self.slope)

    __radd__ = __add__

    def __sub__(self, other) -> "_Affine":
        return self + (-other if isinstance(other, _Affine) else -Fraction(other))

    def __rsub__(self, other) -> "_Affine":
        return (-self) + Fraction(other)

    def scale(self, c) -> "_Affine":
        return _Affine(self.const * c, self.slope * c)

    def at(self, t: Fraction) -> Fraction:
        return self.const + self.slope * t


def _solve_zero(eq: _Affine, what: str) -> Fraction:
    if eq.slope == 0:
        if eq.const != 0:
            raise InconsistentSystem(f"{what}: {eq.const} = 0 impossible")
        raise Degenerate(f"{what}: parameter left undetermined")
    return -eq.const / eq.slope


def derive_representation(alpha, beta, n_max: int):
    """Force (lambda_n, a_n), n <= n_max, out of the canonical relations.

    K is taken diagonal and M1, M2 the block reflection matrices.  The
    off-diagonal block entries (which equal 1 independently of the a_n)
    chain the eigenvalues together, the leading 1x1 block of M1 pins
    lambda_0, and each block diagonal then determines its a_n.  Every
    block yields one extra diagonal equation, which must hold as a
    consistency condition or the system has no such representation.

    Returns (lam, a), two tuples of Fractions of length n_max + 1.
    """
    alpha, beta = Fraction(alpha), Fraction(beta)
    splus = alpha + beta + 1  # coefficient in the M1 relation
    c2 = alpha + beta + 2  # M2 block coefficient
    d = alpha - beta

    # off-diagonal entries: the (2n, 2n+1) entry of the M2 relation and
    # the (2n+1, 2n+2) entry of the M1 relation both sit on a 1
    sym: list[_Affine] = [_Affine(Fraction(0), Fraction(1))]
    while len(sym) < n_max + 2:
        k = len(sym) - 1
        prev = sym[k]
        sym.append((c2 - prev) if k % 2 == 0 else (splus - prev))

    # leading 1x1 block of M1: 2 lambda_0 * 1 = splus * (1 - 1)
    lam0 = _solve_zero(sym[0].scale(2), "leading diagonal entry")
    lam = [s.at(lam0) for s in sym]

    a: list[Fraction] = [Fraction(0)] * (n_max + 1)
    for n in range(0, n_max + 1, 2):
        # M2 block on rows (n, n+1) with diagonal (a_n, -a_n):
        #   2 lambda_n a_n = c2 a_n + d      (row n)
        #  -2 lambda_{n+1} a_n = -c2 a_n + d (row n+1, consistency)
        den = 2 * lam[n] - c2
        if den == 0:
            raise Degenerate(f"a_{n} undetermined: vanishing diagonal pivot")
        a[n] = d / den
        if -2 * lam[n + 1] * a[n] != -c2 * a[n] + d:
            raise InconsistentSystem(f"second diagonal equation fails at a_{n}")
    for n in range(1, n_max + 1, 2):
        # M1 block on rows (n, n+1) with diagonal (a_n, -a_n):
        #   2 lambda_n a_n = splus (a_n - 1)
        #  -2 lambda_{n+1} a_n = splus (-a_n - 1)  (consistency)
        den = 2 * lam[n] - splus
        if den == 0:
            raise Degenerate(f"a_{n} undetermined: vanishing diagonal pivot")
        a[n] = -splus / den
        if -2 * lam[n + 1] * a[n] != splus * (-a[n] - 1):
            raise InconsistentSystem(f"second diagonal equation fails at a_{n}")
    return tuple(lam[: n_max + 1]), tuple(a)


def verify_representation_derivation(p: JacobiParams, n_max: int) -> VerificationReport:
    """The derived (lambda_n, a_n) coincide with the closed forms."""
    rep = VerificationReport(
        identity="representation-derivation",
        relation="block-matrix representation forces lambda_n and a_n",
        params={"alpha": p.alpha, "beta": p.beta, "n_max": n_max},
    )
    lam, a = derive_representation(p.alpha, p.beta, n_max)
    for n in range(n_max + 1):
        want = lambda_n(p, n)
        rep.add(
            f"lambda n={n}", lam[n] == want,
            "" if lam[n] == want else f"derived {lam[n]} != {want}",
        )
    for n in range(n_max + 1):
        want = verblunsky(p, n)
        rep.add(
            f"a n={n}", a[n] == want,
            "" if a[n] == want else f"derived {a[n]} != {want}",
        )
    return rep


# --------------------------------------------------------------------------
# Matrix form of the defining relations
# --------------------------------------------------------------------------


def _clean_row(row: dict) -> dict:
    return {j: c for j, c in row.items() if c != 0}


def _rows_match(rep, label: str, lhs: BandedOperator, rhs: BandedOperator) -> None:
    n = min(lhs.valid_rows, rhs.valid_rows)
    bad = [i for i in range(n) if _clean_row(lhs.row(i)) != _clean_row(rhs.row(i))]
    rep.add(
        label,
        not bad,
        f"rows {bad[:4]} differ" if bad else f"{n} rows agree",
    )
    if n < lhs.size:
        rep.skip(f"{label}: rows {n}..{lhs.size - 1} (truncation boundary)")


def verify_relations_matrix(p: JacobiParams, size: int) -> VerificationReport:
    """Both defining relations and both involutions as exact identities
    between truncated matrices, on every row unaffected by truncation."""
    if size < 3:
        raise ValueError("need size >= 3")
    a = [verblunsky(p, n) for n in range(size)]
    lam = [lambda_n(p, n) for n in range(size)]
    m1 = build_m1(a, size)
    m2 = build_m2(a, size)
    k = BandedOperator.diagonal(lam)
    eye = BandedOperator.identity(size)
    rep = VerificationReport(
        identity="algebra-matrix",
        relation="{K, M1} = (a+b+1)(M1 - I); {K, M2} = (a+b+2) M2 + (a-b) I",
        params={"alpha": p.alpha, "beta": p.beta, "size": size},
    )
    _rows_match(rep, "M1^2 = I", m1 @ m1, eye)
    _rows_match(rep, "M2^2 = I", m2 @ m2, eye)
    _rows_match(rep, "M1 relation", anticommutator(k, m1), (m1 - eye).scale(p.s))
    _rows_match(
        rep, "M2 relation", anticommutator(k, m2), m2.scale(p.s + 1) + eye.scale(p.d)
    )
    return rep


# --------------------------------------------------------------------------
# Functional realization: M1 = R, M2 = z R, K of Dunkl type
# --------------------------------------------------------------------------


def op_m1(f: LaurentPoly) -> LaurentPoly:
    return f.reflect()


def op_m2(f: LaurentPoly) -> LaurentPoly:
    return f.reflect().shift(1)


def _commute(a: Operator, b: Operator) -> Operator:
    return lambda f: a(b(f)) - b(a(f))


def build_xy(p: JacobiParams) -> tuple[Operator, Operator]:
    """X = M2 M1 + M1 M2 and Y = K^2 - (alpha+beta+1) K as maps on
    Laurent polynomials."""

    def x_op(f: LaurentPoly) -> LaurentPoly:
        return op_m2(op_m1(f)) + op_m1(op_m2(f))

    def y_op(f: LaurentPoly) -> LaurentPoly:
        kf = apply_k(f, p)
        return apply_k(kf, p) - kf * p.s

    return x_op, y_op


def build_xy_matrix(p: JacobiParams, size: int) -> tuple[BandedOperator, BandedOperator]:
    """The same pair in the block-matrix representation."""
    a = [verblunsky(p, n) for n in range(size)]
    m1 = build_m1(a, size)
    m2 = build_m2(a, size)
    k = BandedOperator.diagonal([lambda_n(p, n) for n in range(size)])
    x = m2 @ m1 + m1 @ m2
    y = k @ k - k.scale(p.s)
    return x, y


def verify_relations_functional(p: JacobiParams, d: int) -> VerificationReport:
    """Defining relations and involutions applied to the monomials z^k,
    |k| <= d, in the functional realization."""
    rep = VerificationReport(
        identity="algebra-functional",
        relation="relations on M1 = R, M2 = zR, K of Dunkl type",
        params={"alpha": p.alpha, "beta": p.beta, "monomial_range": d},
    )
    for k in range(-d, d + 1):
        f = LaurentPoly.monomial(k)
        checks = {
            "M1^2": op_m1(op_m1(f)) - f,
            "M2^2": op_m2(op_m2(f)) - f,
            "M1 rel": apply_k(op_m1(f), p) + op_m1(apply_k(f, p)) - (op_m1(f) - f) * p.s,
            "M2 rel": apply_k(op_m2(f), p)
            + op_m2(apply_k(f, p))
            - op_m2(f) * (p.s + 1)
            - f * p.d,
        }
        for name, res in checks.items():
            rep.add(f"{name} k={k}", res.is_zero, "" if res.is_zero else res.text())
    return rep


def verify_central_extension(
    fam: OPUCFamily, d: int = 10, matrix_size: int = 21
) -> VerificationReport:
    """The closure of X and Y into the extended quadratic algebra:

        [X, M1] = [Y, M1] = 0
        [X, [X, Y]] = 2 X^2 - 8 I
        [Y, [Y, X]] = 2 {X, Y} + (a+b)(a+b+2) X + 2(b-a) M1 + 2(a-b)(a+b+1) I

    checked both functionally on monomials z^k, |k| <= d, and as banded
    matrix identities at the given truncation size, with the two
    realizations tied together on the Laurent eigenfunctions.
    """
    if fam.params is None:
        raise ValueError("family carries no (alpha, beta) parameters")
    p = fam.params
    rep = VerificationReport(
        identity="central-extension",
        relation="X, Y close into an extended quadratic algebra over M1",
        params={"alpha": p.alpha, "beta": p.beta, "monomial_range": d,
                "matrix_size": matrix_size},
    )
    x_op, y_op = build_xy(p)
    c_x = (p.alpha + p.beta) * (p.alpha + p.beta + 2)
    c_m1 = 2 * (p.beta - p.alpha)
    c_i = 2 * p.d * p.s
    jr1 = _commute(x_op, _commute(x_op, y_op))
    jr2 = _commute(y_op, _commute(y_op, x_op))
    for k in range(-d, d + 1):
        f = LaurentPoly.monomial(k)
        checks = {
            "[X,M1]": x_op(op_m1(f)) - op_m1(x_op(f)),
            "[Y,M1]": y_op(op_m1(f)) - op_m1(y_op(f)),
            "JR1": jr1(f) - x_op(x_op(f)) * 2 + f * 8,
            "JR2": jr2(f)
            - (x_op(y_op(f)) + y_op(x_op(f))) * 2
            - x_op(f) * c_x
            - op_m1(f) * c_m1
            - f * c_i,
        }
        for name, res in checks.items():
            rep.add(f"{name} k={k}", res.is_zero, "" if res.is_zero else res.text())
    if p.alpha == p.beta:
        f = LaurentPoly.monomial(1)
        res = jr2(f) - (x_op(y_op(f)) + y_op(x_op(f))) * 2 - x_op(f) * c_x
        rep.add("extension term drops at alpha=beta", res.is_zero)

    # matrix side
    size = matrix_size
    a = [verblunsky(p, n) for n in range(size)]
    m1 = build_m1(a, size)
    x, y = build_xy_matrix(p, size)
    eye = BandedOperator.identity(size)

    def com(am, bm):
        return am @ bm - bm @ am

    _rows_match(rep, "[X,M1] matrix", com(x, m1), eye.scale(0))
    _rows_match(rep, "[Y,M1] matrix", com(y, m1), eye.scale(0))
    _rows_match(rep, "JR1 matrix", com(x, com(x, y)), (x @ x).scale(2) - eye.scale(8))
    _rows_match(
        rep,
        "JR2 matrix",
        com(y, com(y, x)),
        anticommutator(x, y).scale(2) + x.scale(c_x) + m1.scale(c_m1) + eye.scale(c_i),
    )

    # the matrix rows reproduce the functional action on the psi basis;
    # a row may reach bandwidth columns past its index
    top = min(fam.size + 1 - x.bandwidth, x.valid_rows, y.valid_rows)
    bad = [
        n
        for n in range(top)
        if x.apply_row(n, fam.psi) != x_op(fam.psi[n])
        or y.apply_row(n, fam.psi) != y_op(fam.psi[n])
    ]
    rep.add(
        "matrix rows match functional action on psi",
        not bad,
        f"rows {bad[:4]}" if bad else f"{top} rows agree",
    )
    return rep


# --------------------------------------------------------------------------
# The Y eigenproblem
# --------------------------------------------------------------------------


def big_lambda(p: JacobiParams, n: int) -> Fraction:
    """Y-eigenvalue of psi_n: pairs to m(alpha+beta+m+1), m = ceil(n/2)."""
    m = (n + 1) // 2
    return m * (p.alpha + p.beta + m + 1)


def y_eigencheck(fam: OPUCFamily, n_max: int | None = None) -> VerificationReport:
    """Y psi_n = Lambda_n psi_n with the paired eigenvalues, and the
    symmetric/antisymmetric eigenfunctions P_n, F_n = (z - 1/z) Q_{n-1}
    distinguished only by the reflection sign."""
    if fam.params is None:
        raise ValueError("family carries no (alpha, beta) parameters")
    p = fam.params
    if n_max is None:
        n_max = fam.size
    rep = VerificationReport(
        identity="y-eigen",
        relation="Y psi_n = Lambda_n psi_n; Y P_n = Lambda_{2n} P_n; Y F_n = Lambda_{2n} F_n",
        params={"alpha": p.alpha, "beta": p.beta, "n_max": n_max},
    )
    _, y_op = build_xy(p)
    for n in range(min(n_max, fam.size) + 1):
        lam = lambda_n(p, n)
        ok = lam * lam - p.s * lam == big_lambda(p, n)
        rep.add(f"Lambda coherence n={n}", ok)
    for n in range(min(n_max, fam.size) + 1):
        res = y_op(fam.psi[n]) - fam.psi[n] * big_lambda(p, n)
        rep.add(f"Y psi n={n}", res.is_zero, "" if res.is_zero else res.text())
    for n in range(min(n_max, (fam.size + 1) // 2) + 1):
        pn = build_p(fam, n).poly
        lam2n = big_lambda(p, 2 * n)
        res = y_op(pn) - pn * lam2n
        rep.add(f"Y P n={n}", res.is_zero, "" if res.is_zero else res.text())
        rep.add(f"R P n={n}", pn.reflect() == pn)
    for n in range(1, min(n_max, (fam.size - 1) // 2 + 1) + 1):
        fn = Z_MINUS_ZINV * build_q(fam, n - 1).poly
        res = y_op(fn) - fn * big_lambda(p, 2 * n)
        rep.add(f"Y F n={n}", res.is_zero, "" if res.is_zero else res.text())
        rep.add(f"R F n={n}", fn.reflect() == -fn)
    return rep
