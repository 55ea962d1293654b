"""The map to orthogonal polynomials on [-2, 2] and its exact closure.

From the odd-index circle polynomials the symmetrization
P_n = z^(1-n) phi_{2n-1}(z) + z^(n-1) phi_{2n-1}(1/z) and the exact
quotient Q_n = (z^-n phi_{2n+1}(z) - z^n phi_{2n+1}(1/z)) / (z - 1/z)
produce two monic chains in x(z) = z + 1/z.  This module builds both,
derives their three-term recurrence coefficients from the Verblunsky
data, checks the Christoffel/Geronimus transforms connecting them, and
matches everything against an independently coded classical Jacobi
recurrence.

Polynomials in x are stored as reflection-invariant Laurent polynomials
in z; equality in x is decided as exact equality in z.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import ParamOutOfRange
from .laurent import LaurentPoly, Z_MINUS_ZINV, Z_PLUS_ZINV
from .opuc import BOUNDARY_A, OPUCFamily
from .report import VerificationReport

_ZERO = Fraction(0)
_ONE = Fraction(1)


# --------------------------------------------------------------------------
# The symmetrized variable x(z) = z + 1/z
# --------------------------------------------------------------------------


@lru_cache(maxsize=None)
def x_power(k: int) -> LaurentPoly:
    """(z + 1/z)^k."""
    if k < 0:
        raise ValueError("power must be >= 0")
    return Z_PLUS_ZINV**k


@dataclass(frozen=True)
class SymmetricLaurent:
    """A Laurent polynomial invariant under z -> 1/z.

    Such polynomials are exactly the polynomials in x(z) = z + 1/z; the
    peeled x-coefficients are available through x_coefficients().
    """

    poly: LaurentPoly

    def __post_init__(self) -> None:
        if self.poly.reflect() != self.poly:
            raise ValueError(f"not reflection-invariant: {self.poly.text()}")

    @property
    def x_degree(self) -> int:
        return 0 if self.poly.is_zero else self.poly.max_exp

    def x_coefficients(self) -> tuple[Fraction, ...]:
        """Coefficients (c_0, ..., c_d) with poly = sum c_k x(z)^k."""
        if self.poly.is_zero:
            return ()
        out = [_ZERO] * (self.x_degree + 1)
        rem = self.poly
        while not rem.is_zero:
            d = rem.max_exp
            if d < 0:
                raise AssertionError("symmetric peel escaped into negative degrees")
            c = rem.coeff(d)
            out[d] = c
            rem = rem - x_power(d) * c
        return tuple(out)


def from_x_coefficients(coeffs) -> SymmetricLaurent:
    total = LaurentPoly.zero()
    for k, c in enumerate(coeffs):
        total = total + x_power(k) * Fraction(c)
    return SymmetricLaurent(total)


# --------------------------------------------------------------------------
# Independent classical oracle (kept free of any circle-side input)
# --------------------------------------------------------------------------


def classical_jacobi_oracle(alpha, beta, n: int) -> SymmetricLaurent:
    """Monic Jacobi polynomial of degree n with parameters (alpha, beta),
    rescaled from [-1, 1] to [-2, 2] (argument x/2).

    Uses the closed-form three-term recurrence for the monic chain; the
    n = 1 step is taken in its cancelled form so parameter sums near -1
    stay well-defined.  This is the oracle the circle construction is
    matched against, so it deliberately shares none of that code path.
    """
    alpha, beta = Fraction(alpha), Fraction(beta)
    if alpha <= -1 or beta <= -1:
        raise ParamOutOfRange("oracle needs alpha > -1 and beta > -1")
    if n < 0:
        raise ValueError("degree must be >= 0")
    s = alpha + beta

    def b_coeff(k: int) -> Fraction:
        if k == 0:
            return 2 * (beta - alpha) / (s + 2)
        return 2 * (beta**2 - alpha**2) / ((2 * k + s) * (2 * k + s + 2))

    def u_coeff(k: int) -> Fraction:
        if k == 1:
            return 16 * (alpha + 1) * (beta + 1) / ((s + 2) ** 2 * (s + 3))
        return (
            16 * k * (k + alpha) * (k + beta) * (k + s)
            / ((2 * k + s) ** 2 * (2 * k + s + 1) * (2 * k + s - 1))
        )

    # x-coefficient lists; multiplying by x prepends a zero.
    prev: list[Fraction] = [_ONE]
    if n == 0:
        return from_x_coefficients(prev)
    cur: list[Fraction] = [-b_coeff(0), _ONE]
    for k in range(1, n):
        nxt = [_ZERO] + cur
        bk, uk = b_coeff(k), u_coeff(k)
        for i, c in enumerate(cur):
            nxt[i] -= bk * c
        for i, c in enumerate(prev):
            nxt[i] -= uk * c
        prev, cur = cur, nxt
    return from_x_coefficients(cur)


# --------------------------------------------------------------------------
# The two chains built from the circle data
# --------------------------------------------------------------------------


def build_p(fam: OPUCFamily, n: int) -> SymmetricLaurent:
    """P_n = z^(1-n) phi_{2n-1}(z) + z^(n-1) phi_{2n-1}(1/z), P_0 = 1."""
    if n == 0:
        return SymmetricLaurent(LaurentPoly.one())
    t = fam.phi[2 * n - 1]
    return SymmetricLaurent(t.shift(1 - n) + t.reflect().shift(n - 1))


def build_q(fam: OPUCFamily, n: int) -> SymmetricLaurent:
    """Q_n = (z^-n phi_{2n+1}(z) - z^n phi_{2n+1}(1/z)) / (z - 1/z).

    The numerator is antisymmetric, hence vanishes at z = +-1, so the
    division is exact.
    """
    t = fam.phi[2 * n + 1]
    num = t.shift(-n) - t.reflect().shift(n)
    return SymmetricLaurent(num.div_exact(Z_MINUS_ZINV))


def _a(fam: OPUCFamily, k: int) -> Fraction:
    """Extended coefficient accessor: a_{-1} = -1 by convention.

    Indices <= -2 only ever appear multiplied by 1 + a_{-1} = 0, so
    reading one is a bug, not a case to define."""
    if k >= 0:
        return fam.a[k]
    if k == -1:
        return BOUNDARY_A
    raise AssertionError(f"a_{k} must never be read")


def u_coeff(fam: OPUCFamily, n: int) -> Fraction:
    """u_n = (1 + a_{2n-1})(1 - a_{2n-3})(1 - a_{2n-2}^2); u_0 = 0."""
    lead = 1 + _a(fam, 2 * n - 1)
    if lead == 0:
        return _ZERO
    return lead * (1 - _a(fam, 2 * n - 3)) * (1 - _a(fam, 2 * n - 2) ** 2)


def b_coeff(fam: OPUCFamily, n: int) -> Fraction:
    """b_n = a_{2n}(1 - a_{2n-1}) - a_{2n-2}(1 + a_{2n-1}); b_0 = 2 a_0."""
    lead = 1 + _a(fam, 2 * n - 1)
    first = _a(fam, 2 * n) * (1 - _a(fam, 2 * n - 1))
    if lead == 0:
        return first
    return first - _a(fam, 2 * n - 2) * lead


def ut_coeff(fam: OPUCFamily, n: int) -> Fraction:
    """u~_n = (1 + a_{2n-1})(1 - a_{2n+1})(1 - a_{2n}^2); u~_0 = 0."""
    lead = 1 + _a(fam, 2 * n - 1)
    if lead == 0:
        return _ZERO
    return lead * (1 - _a(fam, 2 * n + 1)) * (1 - _a(fam, 2 * n) ** 2)


def bt_coeff(fam: OPUCFamily, n: int) -> Fraction:
    """b~_n = a_{2n}(1 - a_{2n+1}) - a_{2n+2}(1 + a_{2n+1})."""
    return _a(fam, 2 * n) * (1 - _a(fam, 2 * n + 1)) - _a(fam, 2 * n + 2) * (
        1 + _a(fam, 2 * n + 1)
    )


@dataclass
class SzegoPair:
    """The P and Q chains of one family with their recurrence data."""

    p: tuple[SymmetricLaurent, ...]
    q: tuple[SymmetricLaurent, ...]
    b: tuple[Fraction, ...]
    u: tuple[Fraction, ...]
    bt: tuple[Fraction, ...]
    ut: tuple[Fraction, ...]

    @property
    def p_top(self) -> int:
        return len(self.p) - 1

    @property
    def q_top(self) -> int:
        return len(self.q) - 1


def rec_coeffs(fam: OPUCFamily, upto: int) -> tuple[tuple, tuple, tuple, tuple]:
    """(b, u, b~, u~) for n = 0..upto; u_n, u~_n > 0 is checked for n >= 1."""
    if 2 * upto + 2 > fam.size:
        raise ValueError("family too short for requested coefficient range")
    b = tuple(b_coeff(fam, n) for n in range(upto + 1))
    u = tuple(u_coeff(fam, n) for n in range(upto + 1))
    bt = tuple(bt_coeff(fam, n) for n in range(upto + 1))
    ut = tuple(ut_coeff(fam, n) for n in range(upto + 1))
    for n in range(1, upto + 1):
        if u[n] <= 0 or ut[n] <= 0:
            raise AssertionError(f"recurrence weight at n={n} is not positive")
    return b, u, bt, ut


def build_szego_pair(fam: OPUCFamily) -> SzegoPair:
    """Build the maximal P/Q slice the family supports."""
    if fam.size < 3:
        raise ValueError("need a family of size >= 3")
    p_top = (fam.size + 1) // 2
    q_top = (fam.size - 1) // 2
    coeff_top = (fam.size - 2) // 2
    p = tuple(build_p(fam, n) for n in range(p_top + 1))
    q = tuple(build_q(fam, n) for n in range(q_top + 1))
    b, u, bt, ut = rec_coeffs(fam, coeff_top)
    return SzegoPair(p=p, q=q, b=b, u=u, bt=bt, ut=ut)


# --------------------------------------------------------------------------
# Verifications
# --------------------------------------------------------------------------


def _params_of(fam: OPUCFamily, **extra) -> dict:
    d: dict = {}
    if fam.params is not None:
        d["alpha"] = fam.params.alpha
        d["beta"] = fam.params.beta
    d.update(extra)
    return d


def _x_times(f: LaurentPoly) -> LaurentPoly:
    return f.shift(1) + f.shift(-1)


def verify_three_term(fam: OPUCFamily, pair: SzegoPair) -> VerificationReport:
    """P_{n+1} + b_n P_n + u_n P_{n-1} = x P_n, and the Q analogue."""
    rep = VerificationReport(
        identity="three-term",
        relation="P_{n+1} + b_n P_n + u_n P_{n-1} = x P_n (and Q with b~, u~)",
        params=_params_of(fam),
    )
    coeff_top = len(pair.b) - 1
    for n in range(min(pair.p_top - 1, coeff_top) + 1):
        res = pair.p[n + 1].poly + pair.p[n].poly * pair.b[n] - _x_times(pair.p[n].poly)
        if n >= 1:
            res = res + pair.p[n - 1].poly * pair.u[n]
        rep.add(f"P n={n}", res.is_zero, "" if res.is_zero else res.text())
    for n in range(min(pair.q_top - 1, coeff_top) + 1):
        res = pair.q[n + 1].poly + pair.q[n].poly * pair.bt[n] - _x_times(pair.q[n].poly)
        if n >= 1:
            res = res + pair.q[n - 1].poly * pair.ut[n]
        rep.add(f"Q n={n}", res.is_zero, "" if res.is_zero else res.text())
    return rep


def fit_recurrence(chain: list[SymmetricLaurent] | tuple[SymmetricLaurent, ...]):
    """Read (b_n, u_n) off a monic chain by exact coefficient matching.

    Returns (b, u, clean) where clean means x p_n - p_{n+1} really lay
    in span(p_n, p_{n-1}) at every step.
    """
    b: list[Fraction] = []
    u: list[Fraction] = [_ZERO]
    clean = True
    for n in range(len(chain) - 1):
        diff = SymmetricLaurent(_x_times(chain[n].poly) - chain[n + 1].poly)
        dx = list(diff.x_coefficients()) + [_ZERO] * (n + 1)
        bn = dx[n]
        b.append(bn)
        if n >= 1:
            rem = diff.poly - chain[n].poly * bn
            rx = list(SymmetricLaurent(rem).x_coefficients()) + [_ZERO] * n
            un = rx[n - 1]
            u.append(un)
            if rem != chain[n - 1].poly * un:
                clean = False
    return tuple(b), tuple(u), clean


def verify_recurrence_closure(fam: OPUCFamily, pair: SzegoPair) -> VerificationReport:
    """Fitted recurrence coefficients equal the Verblunsky formulas."""
    rep = VerificationReport(
        identity="recurrence-closure",
        relation="fitted (b_n, u_n) and (b~_n, u~_n) = closed forms in a_k",
        params=_params_of(fam),
    )
    coeff_top = len(pair.b) - 1
    bp, up, clean_p = fit_recurrence(pair.p)
    rep.add("P chain in span", clean_p)
    for n in range(min(len(bp) - 1, coeff_top) + 1):
        ok = bp[n] == pair.b[n]
        rep.add(f"b_{n}", ok, "" if ok else f"fit {bp[n]} != {pair.b[n]}")
    for n in range(1, min(len(up) - 1, coeff_top) + 1):
        ok = up[n] == pair.u[n]
        rep.add(f"u_{n}", ok, "" if ok else f"fit {up[n]} != {pair.u[n]}")
    bq, uq, clean_q = fit_recurrence(pair.q)
    rep.add("Q chain in span", clean_q)
    for n in range(min(len(bq) - 1, coeff_top) + 1):
        ok = bq[n] == pair.bt[n]
        rep.add(f"b~_{n}", ok, "" if ok else f"fit {bq[n]} != {pair.bt[n]}")
    for n in range(1, min(len(uq) - 1, coeff_top) + 1):
        ok = uq[n] == pair.ut[n]
        rep.add(f"u~_{n}", ok, "" if ok else f"fit {uq[n]} != {pair.ut[n]}")
    return rep


def verify_transforms(fam: OPUCFamily, pair: SzegoPair) -> VerificationReport:
    """The Christoffel and Geronimus transforms between the chains plus
    the exact reconstruction of psi from (P, Q) or (P_n, P_{n-1}) and
    the extraction of (P, Q) back from psi."""
    rep = VerificationReport(
        identity="szego-transforms",
        relation="Christoffel / Geronimus / psi reconstruction / PQ extraction",
        params=_params_of(fam),
    )
    z2 = Z_MINUS_ZINV * Z_MINUS_ZINV
    p, q, psi = pair.p, pair.q, fam.psi

    # (z - 1/z)^2 Q_{n-1} = P_{n+1} + (a_2n + a_{2n-2})(1 - a_{2n-1}) P_n
    #                       - (1 - a_{2n-1})(1 - a_{2n-3})(1 - a_{2n-2}^2) P_{n-1}
    top = min(pair.p_top - 1, pair.q_top + 1, fam.size // 2)
    for n in range(1, top + 1):
        c1 = (_a(fam, 2 * n) + _a(fam, 2 * n - 2)) * (1 - _a(fam, 2 * n - 1))
        c2 = (
            (1 - _a(fam, 2 * n - 1))
            * (1 - _a(fam, 2 * n - 3))
            * (1 - _a(fam, 2 * n - 2) ** 2)
        )
        res = z2 * q[n - 1].poly - (
            p[n + 1].poly + p[n].poly * c1 - p[n - 1].poly * c2
        )
        rep.add(f"christoffel n={n}", res.is_zero, "" if res.is_zero else res.text())

    # (z - 1/z)^2 Q_{n-1} = (x + 2 a_{2n-2}) P_n - 2(1 - a_{2n-3})(1 - a_{2n-2}^2) P_{n-1}
    top = min(pair.p_top, pair.q_top + 1)
    for n in range(1, top + 1):
        lead = _x_times(p[n].poly) + p[n].poly * (2 * _a(fam, 2 * n - 2))
        c2 = 2 * (1 - _a(fam, 2 * n - 3)) * (1 - _a(fam, 2 * n - 2) ** 2)
        res = z2 * q[n - 1].poly - (lead - p[n - 1].poly * c2)
        rep.add(f"christoffel' n={n}", res.is_zero, "" if res.is_zero else res.text())

    # P_n = Q_n - (1 + a_{2n-1})(a_2n + a_{2n-2}) Q_{n-1}
    #       - (1 + a_{2n-1})(1 + a_{2n-3})(1 - a_{2n-2}^2) Q_{n-2}
    top = min(pair.p_top, pair.q_top, fam.size // 2)
    for n in range(1, top + 1):
        lead = 1 + _a(fam, 2 * n - 1)
        c1 = lead * (_a(fam, 2 * n) + _a(fam, 2 * n - 2))
        rhs = q[n].poly - q[n - 1].poly * c1
        if n >= 2:
            c2 = lead * (1 + _a(fam, 2 * n - 3)) * (1 - _a(fam, 2 * n - 2) ** 2)
            rhs = rhs - q[n - 2].poly * c2
        # at n = 1 the Q_{-1} coefficient carries the factor 1 + a_{-1} = 0
        res = p[n].poly - rhs
        rep.add(f"geronimus n={n}", res.is_zero, "" if res.is_zero else res.text())

    # psi_{2n-1} = (P_n + (z - 1/z) Q_{n-1}) / 2
    # psi_2n     = ((1 - a_{2n-1}) P_n - (1 + a_{2n-1})(z - 1/z) Q_{n-1}) / 2
    top = min(pair.p_top, pair.q_top + 1)
    for n in range(1, top + 1):
        if 2 * n - 1 <= fam.size:
            res = psi[2 * n - 1] - (p[n].poly + Z_MINUS_ZINV * q[n - 1].poly) / 2
            rep.add(f"psi(P,Q) n={2 * n - 1}", res.is_zero, "" if res.is_zero else res.text())
        if 2 * n <= fam.size:
            am = _a(fam, 2 * n - 1)
            rhs = (p[n].poly * (1 - am) - Z_MINUS_ZINV * q[n - 1].poly * (1 + am)) / 2
            res = psi[2 * n] - rhs
            rep.add(f"psi(P,Q) n={2 * n}", res.is_zero, "" if res.is_zero else res.text())
    res = psi[0] - p[0].poly  # n = 0 case: the Q term carries 1 + a_{-1} = 0
    rep.add("psi(P,Q) n=0", res.is_zero, "" if res.is_zero else res.text())

    # The same two functions out of P_n and P_{n-1} alone, via exact
    # division by z - 1/z:
    # psi_{2n-1} = ((z + a_{2n-2}) P_n - (1-a_{2n-3})(1-a_{2n-2}^2) P_{n-1}) / (z - 1/z)
    # psi_2n = ((1+a_{2n-1})(1-a_{2n-3})(1-a_{2n-2}^2) P_{n-1}
    #           - (a_{2n-1} z + 1/z + a_{2n-2}(1+a_{2n-1})) P_n) / (z - 1/z)
    top = min(pair.p_top, (fam.size + 1) // 2)
    for n in range(1, top + 1):
        czp = LaurentPoly({1: 1, 0: _a(fam, 2 * n - 2)})
        c2 = (1 - _a(fam, 2 * n - 3)) * (1 - _a(fam, 2 * n - 2) ** 2)
        num = czp * p[n].poly - p[n - 1].poly * c2
        res = psi[2 * n - 1] - num.div_exact(Z_MINUS_ZINV)
        rep.add(f"psi(P,P) n={2 * n - 1}", res.is_zero, "" if res.is_zero else res.text())
        if 2 * n <= fam.size:
            am = _a(fam, 2 * n - 1)
            czm = LaurentPoly({1: am, -1: 1, 0: _a(fam, 2 * n - 2) * (1 + am)})
            num = p[n - 1].poly * ((1 + am) * c2) - czm * p[n].poly
            res = psi[2 * n] - num.div_exact(Z_MINUS_ZINV)
            rep.add(f"psi(P,P) n={2 * n}", res.is_zero, "" if res.is_zero else res.text())

    # P_n = psi_2n + (1 + a_{2n-1}) psi_{2n-1}
    # (z - 1/z) Q_{n-1} = -psi_2n + (1 - a_{2n-1}) psi_{2n-1}
    top = min(pair.p_top, fam.size // 2)
    for n in range(1, top + 1):
        am = _a(fam, 2 * n - 1)
        res = p[n].poly - (psi[2 * n] + psi[2 * n - 1] * (1 + am))
        rep.add(f"P from psi n={n}", res.is_zero, "" if res.is_zero else res.text())
        if n - 1 <= pair.q_top:
            res = Z_MINUS_ZINV * q[n - 1].poly - (
                -psi[2 * n] + psi[2 * n - 1] * (1 - am)
            )
            rep.add(f"Q from psi n={n}", res.is_zero, "" if res.is_zero else res.text())
    return rep


def verify_classical_match(fam: OPUCFamily, n_max: int) -> VerificationReport:
    """P_n equals the classical oracle at (alpha, beta) and Q_n equals it
    at (alpha + 1, beta + 1), exactly."""
    if fam.params is None:
        raise ValueError("family carries no (alpha, beta) parameters")
    p = fam.params
    rep = VerificationReport(
        identity="classical-match",
        relation="P_n = monic Jacobi(alpha, beta), Q_n = monic Jacobi(alpha+1, beta+1) on [-2, 2]",
        params=_params_of(fam, n_max=n_max),
    )
    p_top = min(n_max, (fam.size + 1) // 2)
    for n in range(p_top + 1):
        res = build_p(fam, n).poly - classical_jacobi_oracle(p.alpha, p.beta, n).poly
        rep.add(f"P n={n}", res.is_zero, "" if res.is_zero else res.text())
    q_top = min(n_max, (fam.size - 1) // 2)
    for n in range(q_top + 1):
        res = (
            build_q(fam, n).poly
            - classical_jacobi_oracle(p.alpha + 1, p.beta + 1, n).poly
        )
        rep.add(f"Q n={n}", res.is_zero, "" if res.is_zero else res.text())
    return rep


def verify_dep_and_pq_identity(fam: OPUCFamily, n_max: int) -> VerificationReport:
    """Two differential identities for the P chain, exact after clearing
    the z^2 - 1 denominator using d/dz = (1/z) theta:

      (z^2-1) z^2 P_n'' + z((a+b+2) z^2 + 2(a-b) z + a+b) P_n'
          = n(n+a+b+1) (z^2-1) P_n
      theta P_n = n (z - 1/z) Q_{n-1}
    """
    if fam.params is None:
        raise ValueError("family carries no (alpha, beta) parameters")
    al, be = fam.params.alpha, fam.params.beta
    rep = VerificationReport(
        identity="hypergeometric-ode",
        relation="second-order ODE for P_n ; theta P_n = n (z - 1/z) Q_{n-1}",
        params=_params_of(fam, n_max=n_max),
    )
    z2m1 = LaurentPoly({2: 1, 0: -1})
    drift = LaurentPoly({3: al + be + 2, 2: 2 * (al - be), 1: al + be})
    p_top = min(n_max, (fam.size + 1) // 2)
    for n in range(p_top + 1):
        f = build_p(fam, n).poly
        f1 = f.deriv()
        f2 = f1.deriv()
        lhs = z2m1 * f2.shift(2) + drift * f1
        rhs = z2m1 * f * (n * (n + al + be + 1))
        res = lhs - rhs
        rep.add(f"ODE n={n}", res.is_zero, "" if res.is_zero else res.text())
    q_top = min(n_max, (fam.size - 1) // 2 + 1)
    for n in range(q_top + 1):
        lhs = build_p(fam, n).poly.theta() if n <= p_top else None
        if lhs is None or (n >= 1 and n - 1 > (fam.size - 1) // 2):
            rep.skip(f"theta-PQ n={n} (family too short)")
            continue
        rhs = (
            LaurentPoly.zero()
            if n == 0
            else Z_MINUS_ZINV * build_q(fam, n - 1).poly * n
        )
        res = lhs - rhs
        rep.add(f"theta-PQ n={n}", res.is_zero, "" if res.is_zero else res.text())
    return rep
