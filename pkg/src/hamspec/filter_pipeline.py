"""First-order low-pass steps realized as integrator cascades on normalized
coefficients, with a zero-output condition at each step's scheduled time.

One step: (1) the zero-state response of y' + y = u via the index-shift
cascade out[d+1+i] += u[d] * (-1)^i; (2) evaluate the response at the
step's time r, and add the multiple of e^{-t} that zeroes it there. The
added term is a homogeneous solution, so the output still solves the ODE.
"""

from __future__ import annotations

from .numerics import (
    C_ZERO,
    NormalizedSeries,
    PrecisionComplex,
    PrecisionReal,
    R_ZERO,
    cadd,
    cdiv_real,
    cneg,
    from_int,
    rneg,
    series_eval,
    truncated_exp,
)
from .schedule import PipelineProfile, StepSchedule


class DegenerateScheduleError(ArithmeticError):
    """The truncated decay tr_m(e^{-r}) vanished; the adjustment divides by it."""


def integrator_cascade(series: NormalizedSeries, m: int) -> NormalizedSeries:
    """Zero-state response of y' + y = u truncated to degree m:
    out_k = sum_{d=0..k-1} (-1)^(k-1-d) u_d, accumulated in ascending d."""
    p = series.precision
    coeffs = series.coeffs
    out = [C_ZERO]
    for k in range(1, m + 1):
        acc = C_ZERO
        for d in range(min(k - 1, len(coeffs) - 1) + 1):
            u = coeffs[d]
            if u.is_zero():
                continue
            acc = cadd(acc, u if (k - 1 - d) % 2 == 0 else cneg(u), p)
        out.append(acc)
    return NormalizedSeries(out, p)


def filter_step(
    series: NormalizedSeries, r_sp: PrecisionReal, m: int, p: int
) -> NormalizedSeries:
    """One step at degree m: cascade, then pin the output to zero at r_sp."""
    work = series if series.precision == p else series.reround(p)
    shifted = integrator_cascade(work, m)
    w = series_eval(shifted, r_sp)
    q = truncated_exp(rneg(r_sp), m, p)
    if q.is_zero():
        raise DegenerateScheduleError(
            f"truncated decay vanished at r={r_sp.to_float()} with degree {m}"
        )
    adj = cneg(cdiv_real(w, q, p))
    neg_adj = cneg(adj)
    out = []
    for i, c in enumerate(shifted.coeffs):
        out.append(cadd(c, adj if i % 2 == 0 else neg_adj, p))
    return NormalizedSeries(out, p)


def run_pipeline(
    f_series: NormalizedSeries,
    sched: StepSchedule,
    profile: PipelineProfile,
    dump=None,
) -> NormalizedSeries:
    """All steps 1..n_d+3. Step 1 runs at degree n_d1; its output is then
    truncated (coefficients above n_d dropped, no re-rounding) and the
    remaining steps run at degree n_d. `dump`, if given, is called with
    (step_index, series) after every step."""
    n_d, n_d1, p = profile.n_d, profile.n_d1, profile.p_2
    if f_series.degree_bound != n_d1:
        raise ValueError(
            f"input series degree {f_series.degree_bound} != n_d1 {n_d1}"
        )
    j = f_series.reround(p)
    j = filter_step(j, sched.times[1], n_d1, p)
    if dump:
        dump(1, j)
    j = j.truncate(n_d)
    for sp in range(2, n_d + 4):
        j = filter_step(j, sched.times[sp], n_d, p)
        if dump:
            dump(sp, j)
    return j


def decay_series(m: int, p: int) -> NormalizedSeries:
    """Normalized form of e^{-t}: coefficients (-1)^k."""
    one = from_int(1, p)
    neg_one = rneg(one)
    return NormalizedSeries(
        [PrecisionComplex(one if k % 2 == 0 else neg_one, R_ZERO) for k in range(m + 1)],
        p,
    )


def run_pseudo_steps(sched: StepSchedule, profile: PipelineProfile, dump=None):
    """Run e^{-t} through steps 2..n_d+3 at degree n_d; return the final
    constant and linear coefficients (the decay-channel system column)."""
    n_d, p = profile.n_d, profile.p_2
    j = decay_series(n_d, p)
    for sp in range(2, n_d + 4):
        j = filter_step(j, sched.times[sp], n_d, p)
        if dump:
            dump(sp, j)
    return j.coeffs[0], j.coeffs[1]
