"""Reflection block matrices and the pentadiagonal CMV matrix.

M1 and M2 are the exact involutive block truncations built from the
Verblunsky coefficients; their product C = M1 M2 is the CMV matrix.  A
finite truncation can cut the final 2x2 block, so every operator tracks
how many leading rows agree with the semi-infinite matrix
(``valid_rows``); verifications only assert on those rows and report the
rest as skipped.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import BadVerblunsky, ConvergenceFailure
from .laurent import LaurentPoly
from .opuc import OPUCFamily, verblunsky
from .report import VerificationReport

_ZERO = Fraction(0)


class BandedOperator:
    """Exact banded matrix with row-validity metadata.

    ``valid_rows`` counts the leading rows whose entries coincide with
    the semi-infinite operator the truncation approximates, including
    the guarantee that the full support of each such row is stored.
    Products propagate this conservatively.
    """

    __slots__ = ("size", "bandwidth", "valid_rows", "rows", "blocks")

    def __init__(
        self,
        size: int,
        rows: dict[int, dict[int, Fraction]],
        bandwidth: int,
        valid_rows: int,
        blocks: tuple[tuple[int, int], ...] = (),
    ):
        self.size = size
        self.rows = rows
        self.bandwidth = bandwidth
        self.valid_rows = valid_rows
        self.blocks = blocks

    # ------------------------------------------------------------- constructors

    @classmethod
    def identity(cls, size: int) -> "BandedOperator":
        return cls(size, {i: {i: Fraction(1)} for i in range(size)}, 0, size)

    @classmethod
    def diagonal(cls, values: Sequence[Fraction]) -> "BandedOperator":
        rows = {i: {i: Fraction(v)} for i, v in enumerate(values) if v}
        return cls(len(values), rows, 0, len(values))

    # ------------------------------------------------------------- inspection

    def entry(self, i: int, j: int) -> Fraction:
        return self.rows.get(i, {}).get(j, _ZERO)

    def row(self, i: int) -> dict[int, Fraction]:
        return dict(self.rows.get(i, {}))

    def entries(self):
        for i, row in sorted(self.rows.items()):
            for j, v in sorted(row.items()):
                yield i, j, v

    def max_band(self) -> int:
        """Largest |i - j| over stored entries (0 for the zero matrix)."""
        return max((abs(i - j) for i, j, _ in self.entries()), default=0)

    def rows_are_zero(self, upto: int) -> bool:
        return all(not self.rows.get(i) for i in range(upto))

    def __eq__(self, other) -> bool:
        if not isinstance(other, BandedOperator):
            return NotImplemented
        return self.size == other.size and self._clean() == other._clean()

    def _clean(self) -> dict[int, dict[int, Fraction]]:
        return {i: row for i, row in self.rows.items() if row}

    # ------------------------------------------------------------- arithmetic

    def _check_size(self, other: "BandedOperator") -> None:
        if self.size != other.size:
            raise ValueError("operator size mismatch")

    def __add__(self, other: "BandedOperator") -> "BandedOperator":
        self._check_size(other)
        rows: dict[int, dict[int, Fraction]] = {}
        for i in set(self.rows) | set(other.rows):
            merged = dict(self.rows.get(i, {}))
            for j, v in other.rows.get(i, {}).items():
                acc = merged.get(j, _ZERO) + v
                if acc:
                    merged[j] = acc
                else:
                    merged.pop(j, None)
            if merged:
                rows[i] = merged
        return BandedOperator(
            self.size,
            rows,
            max(self.bandwidth, other.bandwidth),
            min(self.valid_rows, other.valid_rows),
        )

    def __neg__(self) -> "BandedOperator":
        rows = {i: {j: -v for j, v in row.items()} for i, row in self.rows.items()}
        return BandedOperator(self.size, rows, self.bandwidth, self.valid_rows)

    def __sub__(self, other: "BandedOperator") -> "BandedOperator":
        return self + (-other)

    def scale(self, c: Fraction | int) -> "BandedOperator":
        c = Fraction(c)
        if not c:
            return BandedOperator(self.size, {}, 0, self.valid_rows)
        rows = {i: {j: v * c for j, v in row.items()} for i, row in self.rows.items()}
        return BandedOperator(self.size, rows, self.bandwidth, self.valid_rows)

    def __matmul__(self, other: "BandedOperator") -> "BandedOperator":
        self._check_size(other)
        rows: dict[int, dict[int, Fraction]] = {}
        for i, arow in self.rows.items():
            out: dict[int, Fraction] = {}
            for k, av in arow.items():
                brow = other.rows.get(k)
                if not brow:
                    continue
                for j, bv in brow.items():
                    acc = out.get(j, _ZERO) + av * bv
                    if acc:
                        out[j] = acc
                    else:
                        out.pop(j, None)
            if out:
                rows[i] = out
        # Row i of the product is trustworthy when row i of the left
        # factor is, and every row it touches on the right (within the
        # left bandwidth) is too.
        valid = min(self.valid_rows, other.valid_rows - self.bandwidth)
        return BandedOperator(
            self.size, rows, self.bandwidth + other.bandwidth, max(valid, 0)
        )

    # ------------------------------------------------------------- actions

    def apply_row(self, i: int, vectors: Sequence[LaurentPoly]) -> LaurentPoly:
        """sum_j M[i, j] * vectors[j]."""
        out = LaurentPoly.zero()
        for j, v in self.rows.get(i, {}).items():
            out = out + vectors[j] * v
        return out

    def to_float(self) -> np.ndarray:
        arr = np.zeros((self.size, self.size), dtype=float)
        for i, j, v in self.entries():
            arr[i, j] = float(v)
        return arr


def anticommutator(a: BandedOperator, b: BandedOperator) -> BandedOperator:
    return (a @ b) + (b @ a)


def commutator(a: BandedOperator, b: BandedOperator) -> BandedOperator:
    return (a @ b) - (b @ a)


def _check_coeffs(a: Sequence[Fraction], needed: int) -> None:
    if len(a) < needed:
        raise ValueError(f"need Verblunsky coefficients up to index {needed - 1}")
    for n in range(needed):
        if not -1 < a[n] < 1:
            raise BadVerblunsky(f"a_{n} = {a[n]} lies outside (-1, 1)")


def _block(a: Fraction) -> tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]:
    one = Fraction(1)
    return ((a, one), (one - a * a, -a))


def build_m1(a: Sequence[Fraction], size: int) -> BandedOperator:
    """Truncation of M1: a leading 1x1 block [1], then 2x2 blocks with
    parameters a_1, a_3, a_5, ... starting at row 1."""
    if size < 1:
        raise ValueError("size must be >= 1")
    if size > 1:
        last = size - 1 if size % 2 == 0 else size - 2  # largest odd row index
        _check_coeffs(a, last + 1)
    rows: dict[int, dict[int, Fraction]] = {0: {0: Fraction(1)}}
    blocks: list[tuple[int, int]] = [(0, 1)]
    r = 1
    cut = False
    while r < size:
        av = Fraction(a[r])
        if not -1 < av < 1:
            raise BadVerblunsky(f"a_{r} = {av} lies outside (-1, 1)")
        blk = _block(av)
        if r + 1 < size:
            rows[r] = {r: blk[0][0], r + 1: blk[0][1]}
            rows[r + 1] = {r: blk[1][0], r + 1: blk[1][1]}
            blocks.append((r, 2))
        else:
            rows[r] = {r: blk[0][0]}  # cut block: partner column truncated away
            blocks.append((r, 1))
            cut = True
        r += 2
    valid = size - 1 if cut else size
    return BandedOperator(size, rows, 1, valid, tuple(blocks))


def build_m2(a: Sequence[Fraction], size: int) -> BandedOperator:
    """Truncation of M2: 2x2 blocks with parameters a_0, a_2, a_4, ...
    starting at row 0."""
    if size < 1:
        raise ValueError("size must be >= 1")
    last = size - 2 if size % 2 == 0 else size - 1  # largest even row index
    _check_coeffs(a, last + 1)
    rows: dict[int, dict[int, Fraction]] = {}
    blocks: list[tuple[int, int]] = []
    r = 0
    cut = False
    while r < size:
        av = Fraction(a[r])
        if not -1 < av < 1:
            raise BadVerblunsky(f"a_{r} = {av} lies outside (-1, 1)")
        blk = _block(av)
        if r + 1 < size:
            rows[r] = {r: blk[0][0], r + 1: blk[0][1]}
            rows[r + 1] = {r: blk[1][0], r + 1: blk[1][1]}
            blocks.append((r, 2))
        else:
            rows[r] = {r: blk[0][0]}
            blocks.append((r, 1))
            cut = True
        r += 2
    valid = size - 1 if cut else size
    return BandedOperator(size, rows, 1, valid, tuple(blocks))


def cmv_matrix(a: Sequence[Fraction], size: int) -> BandedOperator:
    """C = M1 M2, pentadiagonal by construction; the band is asserted."""
    c = build_m1(a, size) @ build_m2(a, size)
    if c.max_band() > 2:
        raise AssertionError("CMV product escaped the pentadiagonal band")
    c.bandwidth = 2
    return c


def _residual_text(poly: LaurentPoly) -> str:
    return poly.text()


def _reference_a(fam: OPUCFamily, count: int) -> list[Fraction]:
    """Coefficients the verification matrices are built from.

    A family that carries its parameter point is checked against the
    matrices that point dictates, so a family whose stored coefficients
    have drifted from the claimed parameters produces residuals instead
    of being excused by rebuilding both sides from the same data."""
    if fam.params is not None:
        return [verblunsky(fam.params, k) for k in range(count)]
    return list(fam.a[:count])


def verify_reflection_rows(fam: OPUCFamily) -> VerificationReport:
    """Row-wise checks psi_n(1/z) = sum_m (M1)_{nm} psi_m and
    z psi_n(1/z) = sum_m (M2)_{nm} psi_m on rows with complete blocks."""
    size = fam.size + 1
    a = _reference_a(fam, size)
    m1 = build_m1(a, size)
    m2 = build_m2(a, size)
    rep = VerificationReport(
        identity="reflection-rows",
        relation="psi(1/z) = M1 psi(z) ; z psi(1/z) = M2 psi(z)",
        params=_fam_params(fam, size=size),
    )
    for n in range(size):
        if n < m1.valid_rows:
            lhs = fam.psi[n].reflect()
            res = lhs - m1.apply_row(n, fam.psi)
            rep.add(f"M1 row {n}", res.is_zero, "" if res.is_zero else _residual_text(res))
        else:
            rep.skip(f"M1 row {n} (cut block)")
        if n < m2.valid_rows:
            lhs = fam.psi[n].reflect().shift(1)
            res = lhs - m2.apply_row(n, fam.psi)
            rep.add(f"M2 row {n}", res.is_zero, "" if res.is_zero else _residual_text(res))
        else:
            rep.skip(f"M2 row {n} (cut block)")
    return rep


def verify_gevp_and_five_term(fam: OPUCFamily) -> VerificationReport:
    """Row-wise checks of M2 psi = z M1 psi and of the five-term
    recurrence C psi = z psi on interior rows."""
    size = fam.size + 1
    a = _reference_a(fam, size)
    m1 = build_m1(a, size)
    m2 = build_m2(a, size)
    c = m1 @ m2
    if c.max_band() > 2:
        raise AssertionError("CMV product escaped the pentadiagonal band")
    rep = VerificationReport(
        identity="cmv-rows",
        relation="M2 psi = z M1 psi ; (M1 M2) psi = z psi",
        params=_fam_params(fam, size=size),
    )
    pencil_rows = min(m1.valid_rows, m2.valid_rows)
    for n in range(size):
        if n < pencil_rows:
            res = m2.apply_row(n, fam.psi) - m1.apply_row(n, fam.psi).shift(1)
            rep.add(f"pencil row {n}", res.is_zero, "" if res.is_zero else _residual_text(res))
        else:
            rep.skip(f"pencil row {n} (boundary)")
        if n < c.valid_rows:
            res = c.apply_row(n, fam.psi) - fam.psi[n].shift(1)
            rep.add(f"C row {n}", res.is_zero, "" if res.is_zero else _residual_text(res))
        else:
            rep.skip(f"C row {n} (boundary)")
    return rep


def truncated_spectrum(op: BandedOperator) -> list[complex]:
    """Eigenvalues of the float image, sorted by argument then modulus.

    This is the single floating-point route in the operator layer and is
    informational only; no exact verification consumes it.
    """
    try:
        vals = np.linalg.eigvals(op.to_float())
    except np.linalg.LinAlgError as exc:  # pragma: no cover - numpy rarely fails here
        raise ConvergenceFailure(str(exc)) from exc
    return sorted(vals.tolist(), key=lambda v: (np.angle(v), abs(v)))


def _fam_params(fam: OPUCFamily, **extra) -> dict:
    d: dict = {}
    if fam.params is not None:
        d["alpha"] = fam.params.alpha
        d["beta"] = fam.params.beta
    d.update(extra)
    return d
