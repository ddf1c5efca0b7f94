"""Anatomy of one filter step and of the step-time schedule.

A step is the zero-state response of y' + y = u on normalized coefficients
(an index-shift cascade), plus a multiple of e^{-t} chosen to zero the
output at the step's scheduled time. Feeding a constant through step 1
manufactures the companion term -k0*alpha*e^{-t}; the later step times are
roots chosen so that exactly this companion cancels, step after step.
"""

from fractions import Fraction

from hamspec.filter_pipeline import filter_step
from hamspec.numerics import cfrom_int, const_series, from_fraction, series_eval, to_decimal
from hamspec.schedule import build_schedule, desk_profile

profile = desk_profile(4)
sched = build_schedule(profile)
p = profile.p_2

print("schedule for the desk parameters (times are zero-output instants):")
print("  alpha =", to_decimal(sched.alpha, 12), " beta =", to_decimal(sched.beta, 12))
for sp in range(1, 12):
    print(f"  step {sp:2d}: r = {to_decimal(sched.times[sp], 12)}")
print("note the solved times grow with the step index")
print()

print("a tiny worked step: input [1, 0] at degree 1, time 1/2")
out = filter_step(
    const_series(cfrom_int(1, 0, p), 1, p), from_fraction(Fraction(1, 2), p), 1, p
)
print("  output coefficients:", [c.re.to_float() for c in out.coeffs])
print("  output value at 1/2:", series_eval(out, from_fraction(Fraction(1, 2), p)).re.to_float())
print()

print("constant 5 through step 1 (degree 64, time 16):")
o1 = filter_step(const_series(cfrom_int(5, 0, p), 64, p), sched.times[1], 64, p)
print("  constant coefficient: ", to_decimal(o1.coeffs[0].re, 12), " = 5 - 5*alpha")
print("  decay coefficient:    ", to_decimal(o1.coeffs[1].re, 12), " = +5*alpha")
print()

print("and through the whole cycle of steps 2..9 (degree 8):")
j = o1.truncate(8)
for sp in range(2, 10):
    j = filter_step(j, sched.times[sp], 8, p)
print("  coefficients:", [round(c.re.to_float(), 6) for c in j.coeffs])
print("  only the constant 5 and the top term -5*alpha survive;")
print("  the top term dies in the next cascade, closing the cycle")
