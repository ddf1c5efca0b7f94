"""Arbitrary-precision binary floating point and truncated power-series arithmetic.

Values are immutable. Every arithmetic primitive rounds its result to an
explicit mantissa width ``p`` (round-to-nearest, ties-to-even), so results
are bit-reproducible on any platform. Series are stored with normalized
coefficients: ``coeffs[k]`` holds ``a_k`` in ``sum a_k t^k / k!``, which
turns integration into an index shift and keeps exponential series exact
before rounding.
"""

from __future__ import annotations

import math
from fractions import Fraction


class SeriesConfigError(ValueError):
    """Operands disagree on degree bound or precision."""


# ---------------------------------------------------------------------------
# PrecisionReal
# ---------------------------------------------------------------------------


class PrecisionReal:
    """sign/mantissa/exponent triple: value = sign * mantissa * 2**exponent.

    Nonzero values keep the mantissa top bit set (bit_length == p for the
    precision they were rounded to); zero is (0, 0, 0). The class carries no
    precision field: the target width is an argument of every operation.
    """

    __slots__ = ("sign", "mantissa", "exponent")

    def __init__(self, sign: int, mantissa: int, exponent: int):
        self.sign = sign
        self.mantissa = mantissa
        self.exponent = exponent

    def __repr__(self):
        return f"PrecisionReal({self.sign}, {self.mantissa:#x}, {self.exponent})"

    def __eq__(self, other):
        if not isinstance(other, PrecisionReal):
            return NotImplemented
        return rcmp(self, other) == 0

    def __hash__(self):
        return hash(self.to_fraction())

    def is_zero(self) -> bool:
        return self.sign == 0

    def bits(self) -> tuple:
        """Structural identity (serialization key)."""
        return (self.sign, self.mantissa, self.exponent)

    def to_fraction(self) -> Fraction:
        if self.sign == 0:
            return Fraction(0)
        if self.exponent >= 0:
            return Fraction(self.sign * self.mantissa * (1 << self.exponent))
        return Fraction(self.sign * self.mantissa, 1 << -self.exponent)

    def to_float(self) -> float:
        if self.sign == 0:
            return 0.0
        top = self.exponent + self.mantissa.bit_length()
        if top > 1024:
            return math.inf if self.sign > 0 else -math.inf
        if top < -1100:
            return 0.0
        return float(self.to_fraction())

    def log2_magnitude(self) -> float:
        """log2 |x| for magnitude reports; -inf for zero."""
        if self.sign == 0:
            return -math.inf
        L = self.mantissa.bit_length()
        return self.exponent + L - 1 + math.log2(self.mantissa / (1 << (L - 1)))


R_ZERO = PrecisionReal(0, 0, 0)


def _round_mag(sign: int, mag: int, exp: int, p: int) -> PrecisionReal:
    """Round sign*mag*2^exp to p mantissa bits, nearest-even."""
    if mag == 0:
        return R_ZERO
    L = mag.bit_length()
    if L <= p:
        return PrecisionReal(sign, mag << (p - L), exp - (p - L))
    shift = L - p
    keep = mag >> shift
    rem = mag - (keep << shift)
    half = 1 << (shift - 1)
    if rem > half or (rem == half and keep & 1):
        keep += 1
        if keep >> p:
            keep >>= 1
            exp += 1
    return PrecisionReal(sign, keep, exp + shift)


def round_to(a: PrecisionReal, p: int) -> PrecisionReal:
    if a.sign == 0:
        return R_ZERO
    return _round_mag(a.sign, a.mantissa, a.exponent, p)


def from_int(v: int, p: int) -> PrecisionReal:
    if v == 0:
        return R_ZERO
    return _round_mag(1 if v > 0 else -1, abs(v), 0, p)


def from_ratio(num: int, den: int, p: int) -> PrecisionReal:
    """Correctly rounded num/den."""
    if den == 0:
        raise ZeroDivisionError("from_ratio with zero denominator")
    if num == 0:
        return R_ZERO
    sign = 1 if (num > 0) == (den > 0) else -1
    num, den = abs(num), abs(den)
    shift = max(0, p + 3 + den.bit_length() - num.bit_length())
    q, rem = divmod(num << shift, den)
    if rem:
        q |= 1
    return _round_mag(sign, q, -shift, p)


def from_fraction(x: Fraction, p: int) -> PrecisionReal:
    return from_ratio(x.numerator, x.denominator, p)


def rneg(a: PrecisionReal) -> PrecisionReal:
    if a.sign == 0:
        return a
    return PrecisionReal(-a.sign, a.mantissa, a.exponent)


def rabs(a: PrecisionReal) -> PrecisionReal:
    if a.sign >= 0:
        return a
    return PrecisionReal(1, a.mantissa, a.exponent)


def radd(a: PrecisionReal, b: PrecisionReal, p: int) -> PrecisionReal:
    if a.sign == 0:
        return round_to(b, p)
    if b.sign == 0:
        return round_to(a, p)
    ta = a.exponent + a.mantissa.bit_length()
    tb = b.exponent + b.mantissa.bit_length()
    if ta < tb or (ta == tb and a.mantissa.bit_length() < b.mantissa.bit_length()):
        a, b, ta, tb = b, a, tb, ta
    # b is now no larger in magnitude scale; clamp the alignment shift and
    # fold the out-shifted operand into a sticky bit.
    gap = ta - tb
    guard = p + 4
    if gap > guard:
        mag = a.mantissa << guard
        mag = mag + 1 if a.sign == b.sign else mag - 1
        return _round_mag(a.sign, mag, a.exponent - guard, p)
    e0 = min(a.exponent, b.exponent)
    va = (a.mantissa << (a.exponent - e0)) * a.sign
    vb = (b.mantissa << (b.exponent - e0)) * b.sign
    v = va + vb
    if v == 0:
        return R_ZERO
    return _round_mag(1 if v > 0 else -1, abs(v), e0, p)


def rsub(a: PrecisionReal, b: PrecisionReal, p: int) -> PrecisionReal:
    return radd(a, rneg(b), p)


def rmul(a: PrecisionReal, b: PrecisionReal, p: int) -> PrecisionReal:
    if a.sign == 0 or b.sign == 0:
        return R_ZERO
    return _round_mag(a.sign * b.sign, a.mantissa * b.mantissa, a.exponent + b.exponent, p)


def rmul_int(a: PrecisionReal, k: int, p: int) -> PrecisionReal:
    """a*k for exact integer k, with a single rounding."""
    if a.sign == 0 or k == 0:
        return R_ZERO
    sign = a.sign if k > 0 else -a.sign
    return _round_mag(sign, a.mantissa * abs(k), a.exponent, p)


def rdiv(a: PrecisionReal, b: PrecisionReal, p: int) -> PrecisionReal:
    if b.sign == 0:
        raise ZeroDivisionError("division by zero PrecisionReal")
    if a.sign == 0:
        return R_ZERO
    shift = p + 3
    q, rem = divmod(a.mantissa << shift, b.mantissa)
    if rem:
        q |= 1
    return _round_mag(a.sign * b.sign, q, a.exponent - b.exponent - shift, p)


def rdiv_int(a: PrecisionReal, k: int, p: int) -> PrecisionReal:
    """a/k for exact integer k, with a single rounding."""
    if k == 0:
        raise ZeroDivisionError("division by zero integer")
    if a.sign == 0:
        return R_ZERO
    sign = a.sign if k > 0 else -a.sign
    k = abs(k)
    shift = p + 3 + k.bit_length()
    q, rem = divmod(a.mantissa << shift, k)
    if rem:
        q |= 1
    return _round_mag(sign, q, a.exponent - shift, p)


def rcmp(a: PrecisionReal, b: PrecisionReal) -> int:
    """Exact value comparison: -1, 0, +1."""
    if a.sign != b.sign:
        return 1 if a.sign > b.sign else -1
    if a.sign == 0:
        return 0
    ta = a.exponent + a.mantissa.bit_length()
    tb = b.exponent + b.mantissa.bit_length()
    if ta != tb:
        return a.sign if ta > tb else -a.sign
    e0 = min(a.exponent, b.exponent)
    va = a.mantissa << (a.exponent - e0)
    vb = b.mantissa << (b.exponent - e0)
    if va == vb:
        return 0
    return a.sign if va > vb else -a.sign


def rmax(a: PrecisionReal, b: PrecisionReal) -> PrecisionReal:
    return a if rcmp(a, b) >= 0 else b


def truncated_exp(x: PrecisionReal, m: int, p: int) -> PrecisionReal:
    """sum_{i=0..m} x^i/i!, term recurrence, ascending accumulation."""
    acc = from_int(1, p)
    term = from_int(1, p)
    for i in range(1, m + 1):
        term = rdiv_int(rmul(term, x, p), i, p)
        acc = radd(acc, term, p)
    return acc


def pow2(k: int, p: int) -> PrecisionReal:
    """Exact 2^k at precision p."""
    return PrecisionReal(1, 1 << (p - 1), k - (p - 1))


def to_decimal(a: PrecisionReal, digits: int = 20) -> str:
    """Exact-integer-math decimal rendering, deterministic."""
    if a.sign == 0:
        return "0"
    top = a.exponent + a.mantissa.bit_length() - 1
    dec = math.floor(top * 0.3010299956639812)
    # scaled = round(|a| * 10^(digits-1-dec)) with exact integer arithmetic
    while True:
        g = digits - 1 - dec
        num = a.mantissa * (10 ** g if g >= 0 else 1) * (1 << a.exponent if a.exponent >= 0 else 1)
        den = (10 ** -g if g < 0 else 1) * (1 << -a.exponent if a.exponent < 0 else 1)
        q, rem = divmod(num, den)
        if 2 * rem >= den:
            q += 1
        if q >= 10 ** digits:
            dec += 1
            continue
        if q < 10 ** (digits - 1):
            dec -= 1
            continue
        break
    s = str(q)
    body = s[0] + "." + s[1:] if digits > 1 else s
    sign = "-" if a.sign < 0 else ""
    return f"{sign}{body}e{dec:+d}"


def to_hex(a: PrecisionReal) -> str:
    """Lowercase hex float literal with binary exponent, e.g. 0x1.8p+1."""
    if a.sign == 0:
        return "0x0p+0"
    L = a.mantissa.bit_length()
    top = a.exponent + L - 1
    frac_bits = L - 1
    frac = a.mantissa - (1 << frac_bits)
    pad = (-frac_bits) % 4
    nibbles = (frac_bits + pad) // 4
    body = format(frac << pad, f"0{nibbles}x").rstrip("0") if frac_bits else ""
    sign = "-" if a.sign < 0 else ""
    if body:
        return f"{sign}0x1.{body}p{top:+d}"
    return f"{sign}0x1p{top:+d}"


def from_hex(text: str, p: int) -> PrecisionReal:
    """Parse to_hex output; lossless for values written at precision <= p."""
    s = text.strip()
    if s in ("0x0p+0", "0x0p0"):
        return R_ZERO
    sign = 1
    if s.startswith("-"):
        sign = -1
        s = s[1:]
    if not s.startswith("0x1"):
        raise ValueError(f"bad hex float literal: {text!r}")
    s = s[3:]
    if "p" not in s:
        raise ValueError(f"bad hex float literal: {text!r}")
    mant_s, exp_s = s.split("p", 1)
    top = int(exp_s)
    if mant_s == "":
        frac, frac_bits = 0, 0
    elif mant_s.startswith("."):
        frac = int(mant_s[1:], 16) if mant_s[1:] else 0
        frac_bits = 4 * len(mant_s[1:])
    else:
        raise ValueError(f"bad hex float literal: {text!r}")
    mag = (1 << frac_bits) | frac
    val = _round_mag(sign, mag, top - frac_bits, p)
    if frac_bits >= p and (mag & ((1 << (frac_bits + 1 - p)) - 1)):
        # more significant bits than the target width can hold exactly
        if val.to_fraction() != Fraction(sign * mag, 1) * Fraction(2) ** (top - frac_bits):
            raise ValueError(f"hex literal does not fit in {p} bits: {text!r}")
    return val


# ---------------------------------------------------------------------------
# PrecisionComplex
# ---------------------------------------------------------------------------


class PrecisionComplex:
    """Pair of PrecisionReal; component-wise rounding, no joint normalization."""

    __slots__ = ("re", "im")

    def __init__(self, re: PrecisionReal, im: PrecisionReal):
        self.re = re
        self.im = im

    def __repr__(self):
        return f"PrecisionComplex({self.re!r}, {self.im!r})"

    def __eq__(self, other):
        if not isinstance(other, PrecisionComplex):
            return NotImplemented
        return rcmp(self.re, other.re) == 0 and rcmp(self.im, other.im) == 0

    def is_zero(self) -> bool:
        return self.re.sign == 0 and self.im.sign == 0

    def bits(self) -> tuple:
        return self.re.bits() + self.im.bits()

    def to_fractions(self) -> tuple:
        return (self.re.to_fraction(), self.im.to_fraction())

    def to_complex(self) -> complex:
        return complex(self.re.to_float(), self.im.to_float())


C_ZERO = PrecisionComplex(R_ZERO, R_ZERO)


def cfrom_int(re: int, im: int, p: int) -> PrecisionComplex:
    return PrecisionComplex(from_int(re, p), from_int(im, p))


def cone(p: int) -> PrecisionComplex:
    return PrecisionComplex(from_int(1, p), R_ZERO)


def cadd(a: PrecisionComplex, b: PrecisionComplex, p: int) -> PrecisionComplex:
    return PrecisionComplex(radd(a.re, b.re, p), radd(a.im, b.im, p))


def csub(a: PrecisionComplex, b: PrecisionComplex, p: int) -> PrecisionComplex:
    return PrecisionComplex(rsub(a.re, b.re, p), rsub(a.im, b.im, p))


def cneg(a: PrecisionComplex) -> PrecisionComplex:
    return PrecisionComplex(rneg(a.re), rneg(a.im))


def cmul(a: PrecisionComplex, b: PrecisionComplex, p: int) -> PrecisionComplex:
    re = rsub(rmul(a.re, b.re, p), rmul(a.im, b.im, p), p)
    im = radd(rmul(a.re, b.im, p), rmul(a.im, b.re, p), p)
    return PrecisionComplex(re, im)


def cmul_int(a: PrecisionComplex, k: int, p: int) -> PrecisionComplex:
    return PrecisionComplex(rmul_int(a.re, k, p), rmul_int(a.im, k, p))


def cmul_real(a: PrecisionComplex, r: PrecisionReal, p: int) -> PrecisionComplex:
    return PrecisionComplex(rmul(a.re, r, p), rmul(a.im, r, p))


def cdiv_real(a: PrecisionComplex, r: PrecisionReal, p: int) -> PrecisionComplex:
    return PrecisionComplex(rdiv(a.re, r, p), rdiv(a.im, r, p))


def cdiv(a: PrecisionComplex, b: PrecisionComplex, p: int) -> PrecisionComplex:
    d = radd(rmul(b.re, b.re, p), rmul(b.im, b.im, p), p)
    re = rdiv(radd(rmul(a.re, b.re, p), rmul(a.im, b.im, p), p), d, p)
    im = rdiv(rsub(rmul(a.im, b.re, p), rmul(a.re, b.im, p), p), d, p)
    return PrecisionComplex(re, im)


def csup(a: PrecisionComplex) -> PrecisionReal:
    """max(|re|, |im|) -- the magnitude proxy used by all threshold checks."""
    return rmax(rabs(a.re), rabs(a.im))


# ---------------------------------------------------------------------------
# NormalizedSeries
# ---------------------------------------------------------------------------


class NormalizedSeries:
    """Truncated Taylor series sum_{k<=m} coeffs[k] t^k/k! at precision p."""

    __slots__ = ("coeffs", "precision")

    def __init__(self, coeffs, precision: int):
        coeffs = tuple(coeffs)
        if not coeffs:
            raise SeriesConfigError("series needs at least the constant coefficient")
        self.coeffs = coeffs
        self.precision = precision

    @property
    def degree_bound(self) -> int:
        return len(self.coeffs) - 1

    def __repr__(self):
        return f"NormalizedSeries(m={self.degree_bound}, p={self.precision})"

    def __eq__(self, other):
        if not isinstance(other, NormalizedSeries):
            return NotImplemented
        return (
            self.precision == other.precision
            and len(self.coeffs) == len(other.coeffs)
            and all(a == b for a, b in zip(self.coeffs, other.coeffs))
        )

    def bits(self) -> tuple:
        return tuple(c.bits() for c in self.coeffs)

    def truncate(self, m: int) -> "NormalizedSeries":
        """Drop coefficients above degree m (no re-rounding); pad with zeros."""
        cs = list(self.coeffs[: m + 1])
        while len(cs) < m + 1:
            cs.append(C_ZERO)
        return NormalizedSeries(cs, self.precision)

    def reround(self, p: int) -> "NormalizedSeries":
        if p == self.precision:
            return self
        cs = [PrecisionComplex(round_to(c.re, p), round_to(c.im, p)) for c in self.coeffs]
        return NormalizedSeries(cs, p)


def zero_series(m: int, p: int) -> NormalizedSeries:
    return NormalizedSeries([C_ZERO] * (m + 1), p)


def const_series(value: PrecisionComplex, m: int, p: int) -> NormalizedSeries:
    return NormalizedSeries([value] + [C_ZERO] * m, p)


def series_add(a: NormalizedSeries, b: NormalizedSeries) -> NormalizedSeries:
    if a.degree_bound != b.degree_bound:
        raise SeriesConfigError(
            f"degree bounds differ: {a.degree_bound} vs {b.degree_bound}"
        )
    if a.precision != b.precision:
        raise SeriesConfigError(f"precisions differ: {a.precision} vs {b.precision}")
    p = a.precision
    return NormalizedSeries(
        [cadd(x, y, p) for x, y in zip(a.coeffs, b.coeffs)], p
    )


def series_mul(a: NormalizedSeries, b: NormalizedSeries, m: int) -> NormalizedSeries:
    """Truncated product with binomial weights:
    c_k = sum_j binom(k,j) a_j b_{k-j}.

    Terms are accumulated in mirror pairs (j, k-j) ascending, which makes the
    operation bit-exactly commutative for same-shape operands while keeping a
    fixed deterministic reduction order.
    """
    if a.precision != b.precision:
        raise SeriesConfigError(f"precisions differ: {a.precision} vs {b.precision}")
    p = a.precision
    da, db = a.degree_bound, b.degree_bound
    ca, cb = a.coeffs, b.coeffs
    comb = math.comb
    out = []
    for k in range(m + 1):
        lo = max(0, k - db)
        hi = min(k, da)
        acc = C_ZERO
        for j in range(lo, hi + 1):
            j2 = k - j
            mirror_in_range = lo <= j2 <= hi and j2 <= da and k - j2 <= db
            if mirror_in_range and j2 < j:
                continue  # already accumulated as the mirror of j2
            aj, bk = ca[j], cb[j2]
            if aj.is_zero() or bk.is_zero():
                term = C_ZERO
            else:
                term = cmul_int(cmul(aj, bk, p), comb(k, j), p)
            if mirror_in_range and j2 > j:
                am, bm = ca[j2], cb[j]
                if am.is_zero() or bm.is_zero():
                    term2 = C_ZERO
                else:
                    term2 = cmul_int(cmul(am, bm, p), comb(k, j2), p)
                term = cadd(term, term2, p)
            acc = cadd(acc, term, p)
        out.append(acc)
    return NormalizedSeries(out, p)


def series_eval(a: NormalizedSeries, t0: PrecisionReal) -> PrecisionComplex:
    """sum a_k t0^k/k!, ascending k, factor by recurrence f_k = f_{k-1} t0/k."""
    p = a.precision
    acc = C_ZERO
    factor = from_int(1, p)
    for k, coeff in enumerate(a.coeffs):
        if k:
            factor = rdiv_int(rmul(factor, t0, p), k, p)
        if not coeff.is_zero():
            acc = cadd(acc, cmul_real(coeff, factor, p), p)
    return acc


def exp_series(lam: PrecisionComplex, m: int, p: int) -> NormalizedSeries:
    """Series of e^{lam t}: a_k = lam^k by repeated rounded multiplication."""
    coeffs = [cone(p)]
    for _ in range(m):
        coeffs.append(cmul(coeffs[-1], lam, p))
    return NormalizedSeries(coeffs, p)


def series_scale_time(a: NormalizedSeries, c: int) -> NormalizedSeries:
    """t -> c*t on normalized coefficients: a_k * c^k, one rounding each."""
    if c < 1:
        raise ValueError(f"time scale must be >= 1, got {c}")
    p = a.precision
    out = []
    ck = 1
    for k, coeff in enumerate(a.coeffs):
        if k:
            ck *= c
        out.append(cmul_int(coeff, ck, p))
    return NormalizedSeries(out, p)


def series_derivative_shift(a: NormalizedSeries) -> NormalizedSeries:
    """Normalized-coefficient derivative: left index shift, zero-padded."""
    return NormalizedSeries(list(a.coeffs[1:]) + [C_ZERO], a.precision)


# ---------------------------------------------------------------------------
# Series file format
# ---------------------------------------------------------------------------


def series_to_text(a: NormalizedSeries) -> str:
    lines = [f"series m={a.degree_bound} p={a.precision}"]
    for k, c in enumerate(a.coeffs):
        lines.append(f"{k} {to_hex(c.re)} {to_hex(c.im)}")
    return "\n".join(lines) + "\n"


def series_from_text(text: str) -> NormalizedSeries:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty series file")
    head = lines[0].split()
    if len(head) != 3 or head[0] != "series":
        raise ValueError(f"bad series header: {lines[0]!r}")
    try:
        m = int(head[1].removeprefix("m="))
        p = int(head[2].removeprefix("p="))
    except ValueError as exc:
        raise ValueError(f"bad series header: {lines[0]!r}") from exc
    coeffs = [C_ZERO] * (m + 1)
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 3:
            raise ValueError(f"bad series line: {ln!r}")
        k = int(parts[0])
        if not 0 <= k <= m:
            raise ValueError(f"coefficient index {k} out of range 0..{m}")
        coeffs[k] = PrecisionComplex(from_hex(parts[1], p), from_hex(parts[2], p))
    return NormalizedSeries(coeffs, p)
