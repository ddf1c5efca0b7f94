"""Step semantics: cascade ODE identity, zero pinning, linearity, pipelines."""

import random
from fractions import Fraction

import pytest

from hamspec.filter_pipeline import (
    DegenerateScheduleError,
    decay_series,
    filter_step,
    integrator_cascade,
    run_pipeline,
    run_pseudo_steps,
)
from hamspec.numerics import (
    NormalizedSeries,
    PrecisionComplex,
    cfrom_int,
    cmul_int,
    const_series,
    from_fraction,
    from_int,
    series_eval,
    zero_series,
)
from hamspec.schedule import build_schedule, desk_profile
from conftest import trunc_exp_fraction


def random_series(rng, m, p, mag=20):
    def coeff():
        return from_fraction(
            Fraction(rng.randrange(-(1 << mag), 1 << mag), rng.randrange(1, 1 << mag)), p
        )

    return NormalizedSeries(
        [PrecisionComplex(coeff(), coeff()) for _ in range(m + 1)], p
    )


def sup_fractions(series):
    return max(
        max(abs(c.re.to_fraction()), abs(c.im.to_fraction())) for c in series.coeffs
    )


class TestFilterStep:
    def test_hand_worked_degree_one(self):
        # input [1, 0], r = 1/2: cascade [0, 1]; value 1/2; decay 1/2;
        # adjustment -1 -> output [-1, 2], which vanishes at 1/2
        p = 128
        out = filter_step(
            NormalizedSeries([cfrom_int(1, 0, p), cfrom_int(0, 0, p)], p),
            from_fraction(Fraction(1, 2), p),
            1,
            p,
        )
        assert [c.re.to_fraction() for c in out.coeffs] == [-1, 2]
        assert all(c.im.is_zero() for c in out.coeffs)

    def test_constant_input_produces_scaled_decay(self):
        # constant k0 in, k0 - k0*alpha*e^{-t} out, alpha the reciprocal of
        # the truncated decay at the step time
        p = 256
        m = 64
        k0 = 5
        out = filter_step(const_series(cfrom_int(k0, 0, p), m, p), from_int(16, p), m, p)
        alpha = 1 / trunc_exp_fraction(Fraction(-16), m)
        tol = Fraction(2) ** -190
        for k, c in enumerate(out.coeffs):
            want = k0 - k0 * alpha if k == 0 else -k0 * alpha * (-1) ** k
            assert abs(c.re.to_fraction() - want) <= tol * abs(want)
            assert c.im.is_zero()

    def test_zero_input(self):
        p = 128
        out = filter_step(zero_series(8, p), from_fraction(Fraction(1, 3), p), 8, p)
        assert all(c.is_zero() for c in out.coeffs)

    def test_output_vanishes_at_step_time(self):
        rng = random.Random(42)
        p = 256
        m = 16
        for _ in range(10):
            u = random_series(rng, m, p)
            r = from_fraction(Fraction(rng.randrange(1, 1 << 20), 1 << 20), p)
            o = filter_step(u, r, m, p)
            v = series_eval(o, r)
            total = sum(
                abs(c.re.to_fraction()) + abs(c.im.to_fraction()) for c in o.coeffs
            )
            bound = Fraction(2) ** -128 * total
            assert abs(v.re.to_fraction()) <= bound
            assert abs(v.im.to_fraction()) <= bound

    def test_ode_identity(self):
        # o' + o - u vanishes coefficient-wise below the rounding floor
        rng = random.Random(7)
        p = 256
        m = 16
        for _ in range(10):
            u = random_series(rng, m, p)
            r = from_fraction(Fraction(rng.randrange(1, 1 << 16), 1 << 16), p)
            o = filter_step(u, r, m, p)
            scale = max(sup_fractions(o), sup_fractions(u))
            bound = Fraction(2) ** -128 * scale
            for k in range(m):
                for part in ("re", "im"):
                    ok = getattr(o.coeffs[k], part).to_fraction()
                    ok1 = getattr(o.coeffs[k + 1], part).to_fraction()
                    uk = getattr(u.coeffs[k], part).to_fraction()
                    assert abs(ok1 + ok - uk) <= bound

    def test_linearity(self):
        rng = random.Random(99)
        p = 256
        m = 12
        u = random_series(rng, m, p)
        v = random_series(rng, m, p)
        r = from_fraction(Fraction(3, 8), p)
        both = filter_step(
            NormalizedSeries(
                [
                    PrecisionComplex(*(cmul_int(a, 2, p).re, cmul_int(a, 2, p).im))
                    for a in u.coeffs
                ],
                p,
            ),
            r,
            m,
            p,
        )
        single = filter_step(u, r, m, p)
        # doubling is exact scaling, so the outputs match bit for bit
        assert both.bits() == tuple(cmul_int(c, 2, p).bits() for c in single.coeffs)
        # general additivity holds to rounding
        s = filter_step(
            NormalizedSeries(
                [
                    PrecisionComplex(
                        from_fraction(a.re.to_fraction() + b.re.to_fraction(), p),
                        from_fraction(a.im.to_fraction() + b.im.to_fraction(), p),
                    )
                    for a, b in zip(u.coeffs, v.coeffs)
                ],
                p,
            ),
            r,
            m,
            p,
        )
        su = filter_step(u, r, m, p)
        sv = filter_step(v, r, m, p)
        scale = max(sup_fractions(su), sup_fractions(sv), Fraction(1))
        bound = Fraction(2) ** -128 * scale
        for k in range(m + 1):
            for part in ("re", "im"):
                got = getattr(s.coeffs[k], part).to_fraction()
                want = getattr(su.coeffs[k], part).to_fraction() + getattr(
                    sv.coeffs[k], part
                ).to_fraction()
                assert abs(got - want) <= bound

    def test_degenerate_decay_rejected(self):
        # m=1, r=1: truncated decay 1 - r vanishes
        p = 128
        with pytest.raises(DegenerateScheduleError):
            filter_step(
                NormalizedSeries([cfrom_int(1, 0, p), cfrom_int(0, 0, p)], p),
                from_int(1, p),
                1,
                p,
            )


class TestCascade:
    def test_exact_over_small_integers(self):
        # with integer inputs every partial sum is exact: compare against a
        # pure-rational mirror of the cascade
        rng = random.Random(3)
        p = 256
        m = 16
        ints = [rng.randrange(-50, 50) for _ in range(m + 1)]
        series = NormalizedSeries([cfrom_int(v, 0, p) for v in ints], p)
        out = integrator_cascade(series, m)
        for k in range(m + 1):
            want = sum((-1) ** (k - 1 - d) * ints[d] for d in range(k))
            assert out.coeffs[k].re.to_fraction() == want

    def test_telescoping_identity(self):
        # out_{k+1} + out_k = u_k exactly for integer inputs
        p = 192
        vals = [3, -7, 11, 2, -9]
        series = NormalizedSeries([cfrom_int(v, 0, p) for v in vals], p)
        out = integrator_cascade(series, 4)
        for k in range(4):
            assert (
                out.coeffs[k + 1].re.to_fraction() + out.coeffs[k].re.to_fraction()
                == vals[k]
            )


class TestPipeline:
    def test_constant_cycle_form(self):
        # constant k0 through steps 1..n_d+1 keeps only the constant and the
        # top coefficient -k0*alpha
        prof = desk_profile(4)
        sched = build_schedule(prof)
        p, n_d = prof.p_2, prof.n_d
        k0 = 5
        j = filter_step(const_series(cfrom_int(k0, 0, p), prof.n_d1, p), sched.times[1], prof.n_d1, p)
        j = j.truncate(n_d)
        for sp in range(2, n_d + 2):
            j = filter_step(j, sched.times[sp], n_d, p)
        alpha = 1 / trunc_exp_fraction(Fraction(-16), prof.n_d1)
        scale = k0 * alpha
        tol = Fraction(2) ** -100 * scale
        assert abs(j.coeffs[0].re.to_fraction() - k0) <= tol
        assert abs(j.coeffs[n_d].re.to_fraction() + k0 * alpha) <= tol
        for k in range(1, n_d):
            assert abs(j.coeffs[k].re.to_fraction()) <= tol

    def test_zero_pipeline(self):
        prof = desk_profile(4)
        sched = build_schedule(prof)
        out = run_pipeline(zero_series(prof.n_d1, prof.p_2), sched, prof)
        assert all(c.is_zero() for c in out.coeffs)

    def test_rejects_wrong_degree(self):
        prof = desk_profile(4)
        sched = build_schedule(prof)
        with pytest.raises(ValueError):
            run_pipeline(zero_series(16, prof.p_2), sched, prof)

    def test_step_one_runs_at_full_degree_then_truncates(self):
        prof = desk_profile(4)
        sched = build_schedule(prof)
        seen = {}
        run_pipeline(
            const_series(cfrom_int(1, 0, prof.p_2), prof.n_d1, prof.p_2),
            sched,
            prof,
            dump=lambda sp, s: seen.__setitem__(sp, s.degree_bound),
        )
        assert seen[1] == prof.n_d1
        assert all(seen[sp] == prof.n_d for sp in range(2, prof.n_d + 4))

    def test_output_is_final_step_state(self):
        prof = desk_profile(4)
        sched = build_schedule(prof)
        last = {}
        out = run_pipeline(
            const_series(cfrom_int(3, 0, prof.p_2), prof.n_d1, prof.p_2),
            sched,
            prof,
            dump=lambda sp, s: last.__setitem__("series", s),
        )
        assert out.bits() == last["series"].bits()


class TestPseudoSteps:
    def test_finite_and_nonzero_at_desk_profile(self):
        prof = desk_profile(4)
        sched = build_schedule(prof)
        phi01, phi11 = run_pseudo_steps(sched, prof)
        assert not phi01.is_zero() and not phi11.is_zero()
        assert phi01.im.is_zero() and phi11.im.is_zero()
        # golden values, cross-checked against an independent high-precision
        # rational/mpmath reconstruction of the same cascade
        from hamspec.numerics import to_decimal

        assert to_decimal(phi01.re).startswith("-1.114335080346308")
        assert to_decimal(phi11.re).startswith("8.232851406949203")

    def test_linearity_under_doubling(self):
        prof = desk_profile(4)
        sched = build_schedule(prof)
        p, n_d = prof.p_2, prof.n_d
        base = decay_series(n_d, p)
        doubled = NormalizedSeries([cmul_int(c, 2, p) for c in base.coeffs], p)
        j = doubled
        for sp in range(2, n_d + 4):
            j = filter_step(j, sched.times[sp], n_d, p)
        phi01, phi11 = run_pseudo_steps(sched, prof)
        assert j.coeffs[0] == cmul_int(phi01, 2, p)
        assert j.coeffs[1] == cmul_int(phi11, 2, p)

    def test_degenerate_profile_surfaces_error(self):
        prof = desk_profile(4, n_d=1, r_mu=1)
        sched = build_schedule(prof, validate=False)
        with pytest.raises(DegenerateScheduleError):
            run_pseudo_steps(sched, prof)
