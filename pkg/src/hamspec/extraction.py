"""Solve the two-channel system for the zero-frequency amplitude and round it.

The model: the filtered output's constant and linear coefficients (c0, c1)
are written as k0 * (1, -beta~) + z1 * (phi01, phi11), where the second
column is the measured response of steps 2..n_d+3 to a unit e^{-t} and
beta~ = tr_{n_d}(e^{r_last})/r_last. k0 is the zero-frequency amplitude
claim; z1 the decay amplitude entering step 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .numerics import (
    NormalizedSeries,
    PrecisionComplex,
    PrecisionReal,
    R_ZERO,
    cadd,
    cdiv,
    cmul,
    cone,
    csub,
    csup,
    from_fraction,
    pow2,
    rabs,
    rcmp,
    rdiv,
    rmax,
    rmul,
    rneg,
    truncated_exp,
)
from .schedule import StepSchedule

FLAG_LIMIT = Fraction(1, 4)


class SingularSystemError(ArithmeticError):
    """The two-channel system's determinant is numerically zero."""


@dataclass(frozen=True)
class ExtractionResult:
    k0: PrecisionComplex
    z1: PrecisionComplex
    n_h_rounded: int
    imag_magnitude: PrecisionReal
    round_distance: PrecisionReal
    phi00: PrecisionComplex
    phi10: PrecisionComplex
    phi01: PrecisionComplex
    phi11: PrecisionComplex
    c0: PrecisionComplex
    c1: PrecisionComplex
    residual0: PrecisionReal
    residual1: PrecisionReal

    @property
    def flags(self) -> tuple:
        out = []
        if self.round_distance.to_fraction() > FLAG_LIMIT:
            out.append("round_distance")
        if self.imag_magnitude.to_fraction() > FLAG_LIMIT:
            out.append("imaginary")
        return tuple(out)


def nearest_integer(x: PrecisionReal):
    """Round-half-even nearest integer and the exact distance to it."""
    frac = x.to_fraction()
    n = round(frac)
    return n, abs(frac - n)


def extract_nh(
    o: NormalizedSeries,
    phi01: PrecisionComplex,
    phi11: PrecisionComplex,
    sched: StepSchedule,
    p: int,
) -> ExtractionResult:
    """Closed-form 2x2 solve; rounds Re(k0) to the nearest integer.

    Raises SingularSystemError when |det| falls below 2^(-p/2) times the
    largest system coefficient (run should be marked inconclusive).
    """
    c0, c1 = o.coeffs[0], o.coeffs[1]
    r_last = sched.times[-1]
    n_d = len(sched.times) - 4  # times holds entries for steps 1..n_d+3
    phi00 = cone(p)
    phi10 = PrecisionComplex(
        rneg(rdiv(truncated_exp(r_last, n_d, p), r_last, p)), R_ZERO
    )
    det = csub(cmul(phi00, phi11, p), cmul(phi10, phi01, p), p)
    scale = rmax(rmax(csup(phi00), csup(phi10)), rmax(csup(phi01), csup(phi11)))
    threshold = rmul(pow2(-(p // 2), p), scale, p)
    if rcmp(csup(det), threshold) < 0:
        raise SingularSystemError(
            f"two-channel system determinant below 2^-{p // 2} of coefficient scale"
        )
    k0 = cdiv(csub(cmul(c0, phi11, p), cmul(phi01, c1, p), p), det, p)
    z1 = cdiv(csub(cmul(phi00, c1, p), cmul(phi10, c0, p), p), det, p)
    residual0 = csup(csub(cadd(cmul(phi00, k0, p), cmul(phi01, z1, p), p), c0, p))
    residual1 = csup(csub(cadd(cmul(phi10, k0, p), cmul(phi11, z1, p), p), c1, p))
    n_h, dist = nearest_integer(k0.re)
    return ExtractionResult(
        k0=k0,
        z1=z1,
        n_h_rounded=n_h,
        imag_magnitude=rabs(k0.im),
        round_distance=from_fraction(dist, p) if dist else R_ZERO,
        phi00=phi00,
        phi10=phi10,
        phi01=phi01,
        phi11=phi11,
        c0=c0,
        c1=c1,
        residual0=residual0,
        residual1=residual1,
    )
