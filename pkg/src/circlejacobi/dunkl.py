"""The first-order Dunkl-type operator and its CMV eigenvalue structure.

K = z d/dz + z((alpha+beta+1) z + alpha - beta)/(1 - z^2) (R - I) with
R the reflection f(z) -> f(1/z).  On Laurent polynomials the divided
term is exact: (R - I)f vanishes at z = +-1, so 1 - z^2 always divides.
K psi_n = lambda_n psi_n with lambda_n = -n/2 for even n and
(n+1)/2 + alpha + beta + 1 for odd n.
"""

from __future__ import annotations

from fractions import Fraction

from .laurent import LaurentPoly, ONE_MINUS_Z2
from .opuc import JacobiParams, OPUCFamily
from .report import VerificationReport

_ONE_MINUS_Z = LaurentPoly({0: 1, 1: -1})


def apply_k(f: LaurentPoly, p: JacobiParams) -> LaurentPoly:
    """Apply K at parameters p; exact, no remainder is ever discarded."""
    refl = f.reflect() - f
    out = f.theta()
    if refl.is_zero:
        return out
    numer = LaurentPoly({2: p.s, 1: p.d}) * refl
    if numer.is_zero:
        return out
    return out + numer.div_exact(ONE_MINUS_Z2)


def apply_k_single_moment(f: LaurentPoly) -> LaurentPoly:
    """Independent code path for the single-moment specialization
    K = z d/dz + z/(1 - z) (R - I)."""
    refl = f.reflect() - f
    out = f.theta()
    if refl.is_zero:
        return out
    return out + refl.shift(1).div_exact(_ONE_MINUS_Z)


def lambda_n(p: JacobiParams, n: int) -> Fraction:
    """Eigenvalue of K on psi_n."""
    if n < 0:
        raise ValueError("index must be >= 0")
    if n % 2 == 0:
        return Fraction(-n, 2)
    return Fraction(n + 1, 2) + p.s


def lambda_single_moment(n: int) -> Fraction:
    """Single-moment eigenvalues: -n/2 for even n, (n+3)/2 for odd n."""
    if n < 0:
        raise ValueError("index must be >= 0")
    return Fraction(-n, 2) if n % 2 == 0 else Fraction(n + 3, 2)


def verify_bispectral(fam: OPUCFamily) -> VerificationReport:
    """Exact check of K psi_n = lambda_n psi_n for every n in the family."""
    if fam.params is None:
        raise ValueError("family carries no (alpha, beta) parameters")
    p = fam.params
    rep = VerificationReport(
        identity="bispectral-eigen",
        relation="K psi_n = lambda_n psi_n",
        params={"alpha": p.alpha, "beta": p.beta, "n_max": fam.size},
    )
    for n in range(fam.size + 1):
        res = apply_k(fam.psi[n], p) - fam.psi[n] * lambda_n(p, n)
        rep.add(f"n={n}", res.is_zero, "" if res.is_zero else res.text())
    return rep


def selfadjoint_residual(
    f: LaurentPoly, g: LaurentPoly, p: JacobiParams, quad_order: int = 64
) -> float:
    """|<K f, g>_w - <f, K g>_w| in the weighted inner product
    <u, v>_w = int u(e^it) v(e^-it) w(t) dt / int w(t) dt (numeric)."""
    from .moments import MomentSeq, Weight, inner_product

    if quad_order < 64:
        raise ValueError("quad_order must be >= 64")
    ms = MomentSeq(Weight.jacobi(p.alpha, p.beta), quad_order=quad_order)
    kf = apply_k(f, p)
    kg = apply_k(g, p)
    return abs(float(inner_product(kf, g, ms)) - float(inner_product(f, kg, ms)))
