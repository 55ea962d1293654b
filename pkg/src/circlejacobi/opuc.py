"""Jacobi OPUC construction in exact arithmetic.

Builds the monic orthogonal polynomials on the unit circle attached to
the weight (1-cos t)^(alpha+1/2) (1+cos t)^(beta+1/2): closed-form
Verblunsky coefficients, the Szego recurrence, squared norms, and the
CMV Laurent functions psi_n obtained by reordering the monomial basis as
1, z, z^-1, z^2, z^-2, ...
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import BadSupport, BadVerblunsky, ParamOutOfRange
from .laurent import LaurentPoly

#: Boundary convention a_{-1} = -1 used by the recurrence seeds of the
#: real-line map.  Indices <= -2 are never read anywhere in the package.
BOUNDARY_A = Fraction(-1)

_MINUS_ONE = Fraction(-1)
_HALF = Fraction(1, 2)


@dataclass(frozen=True)
class JacobiParams:
    """Exact parameter pair (alpha, beta), each > -1.

    The bound keeps the weight integrable and (with the per-index check
    in :func:`verblunsky`) every Verblunsky coefficient inside (-1, 1).
    """

    alpha: Fraction
    beta: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "alpha", Fraction(self.alpha))
        object.__setattr__(self, "beta", Fraction(self.beta))
        if self.alpha <= -1 or self.beta <= -1:
            raise ParamOutOfRange(
                f"need alpha > -1 and beta > -1, got ({self.alpha}, {self.beta})"
            )

    @property
    def s(self) -> Fraction:
        """alpha + beta + 1, the combination entering most formulas."""
        return self.alpha + self.beta + 1

    @property
    def d(self) -> Fraction:
        """alpha - beta."""
        return self.alpha - self.beta


def verblunsky(p: JacobiParams, n: int) -> Fraction:
    """a_n = -(alpha + 1/2 + (-1)^(n+1) (beta + 1/2)) / (n + alpha + beta + 2)."""
    if n < 0:
        raise ValueError("Verblunsky index must be >= 0")
    sign = 1 if n % 2 else -1  # (-1)^(n+1)
    num = p.alpha + _HALF + sign * (p.beta + _HALF)
    a = -num / (n + p.alpha + p.beta + 2)
    if not -1 < a < 1:
        raise ParamOutOfRange(f"a_{n} = {a} has modulus >= 1")
    return a


def single_moment_verblunsky(n: int) -> Fraction:
    """a_n = -1/(n+2) for the single-moment measure (1 - cos t)/(2 pi)."""
    return Fraction(-1, n + 2)


def star(f: LaurentPoly, n: int) -> LaurentPoly:
    """The degree-n reversal z^n f(1/z); real coefficients need no conjugation."""
    if f.is_zero:
        return f
    if f.min_exp < 0 or f.max_exp > n:
        raise BadSupport(
            f"reversal at degree {n} needs support in [0, {n}], got "
            f"[{f.min_exp}, {f.max_exp}]"
        )
    return f.reflect().shift(n)


def szego_advance(phi: LaurentPoly, a: Fraction, n: int) -> LaurentPoly:
    """One recurrence step: phi_{n+1} = z phi_n - a_n phi_n^*."""
    if phi.is_zero or phi.max_exp != n or phi.coeff(n) != 1:
        raise ValueError(f"phi must be monic of degree {n}")
    if not -1 < a < 1:
        raise BadVerblunsky(f"coefficient {a} lies outside (-1, 1)")
    return phi.shift(1) - star(phi, n) * a


def chi_basis(n: int) -> LaurentPoly:
    """The reordered monomial basis: chi_0 = 1, chi_{2k-1} = z^k, chi_{2k} = z^-k."""
    if n < 0:
        raise ValueError("basis index must be >= 0")
    if n % 2:
        return LaurentPoly.monomial((n + 1) // 2)
    return LaurentPoly.monomial(-(n // 2))


def chi_star(n: int) -> LaurentPoly:
    """chi_n(1/z)."""
    return chi_basis(n).reflect()


def chi_index(exponent: int) -> int:
    """Position of the monomial z^exponent in the chi ordering."""
    return 2 * exponent - 1 if exponent >= 1 else -2 * exponent


def max_chi_index(f: LaurentPoly) -> int:
    """Largest chi position present in f (-1 for the zero polynomial)."""
    if f.is_zero:
        return -1
    return max(chi_index(k) for k in f.support)


@dataclass
class OPUCFamily:
    """A finite slice of an OPUC family in exact arithmetic.

    Holds phi_0..phi_N (monic), the Verblunsky coefficients a_0..a_N,
    the squared norms h_0..h_N (h_0 = 1, h_n = prod_{k<n} (1 - a_k^2)),
    and the CMV Laurent functions psi_0..psi_N.  Treat instances as
    immutable: nothing in the package mutates a built family.
    """

    params: JacobiParams | None
    a: tuple[Fraction, ...]
    phi: tuple[LaurentPoly, ...]
    h: tuple[Fraction, ...]
    psi: tuple[LaurentPoly, ...]

    @property
    def size(self) -> int:
        """Largest index N available for phi/psi."""
        return len(self.phi) - 1


def _psi_from_phi(phi: LaurentPoly, n: int) -> LaurentPoly:
    # psi_{2m} = z^m phi_{2m}(1/z), psi_{2m+1} = z^-m phi_{2m+1}(z)
    m = n // 2
    if n % 2 == 0:
        return phi.reflect().shift(m)
    return phi.shift(-m)


def family_from_verblunsky(
    a: list[Fraction] | tuple[Fraction, ...],
    params: JacobiParams | None = None,
) -> OPUCFamily:
    """Build a family from an explicit coefficient list a_0..a_N.

    The optional params tag records which differential operator and
    eigenvalues the family claims to belong to; it is not rechecked
    against the supplied coefficients, which lets callers probe how the
    verifications respond to corrupted input.
    """
    coeffs = tuple(Fraction(v) for v in a)
    if not coeffs:
        raise ValueError("need at least a_0")
    for n, v in enumerate(coeffs):
        if not -1 < v < 1:
            raise BadVerblunsky(f"a_{n} = {v} lies outside (-1, 1)")
    top = len(coeffs) - 1
    phi: list[LaurentPoly] = [LaurentPoly.one()]
    for n in range(top):
        phi.append(szego_advance(phi[n], coeffs[n], n))
    h: list[Fraction] = [Fraction(1)]
    for n in range(top):
        h.append(h[-1] * (1 - coeffs[n] ** 2))
    psi = [_psi_from_phi(phi[n], n) for n in range(top + 1)]
    for n in range(top + 1):
        m = (n + 1) // 2
        window = (-(n // 2), m) if n % 2 else (-m, m)
        if not psi[n].is_zero and not (
            window[0] <= psi[n].min_exp and psi[n].max_exp <= window[1]
        ):
            raise AssertionError(f"psi_{n} escapes its Laurent window {window}")
        if psi[n].coeff(chi_basis(n).support[0]) == 0:
            raise AssertionError(f"psi_{n} lost its leading chi_{n} component")
    return OPUCFamily(params=params, a=coeffs, phi=tuple(phi), h=tuple(h), psi=tuple(psi))


def build_family(p: JacobiParams, n_max: int) -> OPUCFamily:
    """Construct the Jacobi OPUC family up to index n_max (>= 1)."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    a = [verblunsky(p, n) for n in range(n_max + 1)]
    return family_from_verblunsky(a, params=p)


def single_moment_phi(n: int) -> LaurentPoly:
    """Closed form for the single-moment measure:
    phi_n = (1/(n+1)) sum_{k=0}^{n} (k+1) z^k.

    Serves as an independent oracle for the recurrence construction at
    (alpha, beta) = (1/2, -1/2).
    """
    if n < 0:
        raise ValueError("index must be >= 0")
    scale = Fraction(1, n + 1)
    return LaurentPoly({k: scale * (k + 1) for k in range(n + 1)})
