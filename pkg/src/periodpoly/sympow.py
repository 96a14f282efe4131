"""Symmetric-power L-function data for rational elliptic curves.

From a Weierstrass model over Q with squarefree conductor N, point counts
a_p = p + 1 - #E(F_p) determine Satake parameters alpha_p (|alpha_p| = 1,
alpha_p + conj(alpha_p) = a_p / sqrt(p)).  The n-th symmetric power has
local factors

    good p:  prod_{j=0}^{n} (1 - alpha_p^{n-2j} p^{n/2} p^{-s})^{-1},
    bad  p:  (1 - a_p^n p^{-s})^{-1}   (multiplicative reduction),

weight w = n, degree d = n+1, conductor N^n, and Hodge numbers h_nu = 1
for every 0 <= nu <= m = (n-1)/2 (weight-2 case).  All local-factor
coefficients are exact integers here: the elementary symmetric functions
of the inverse roots are computed by Newton's identities from the integer
power sums tr Sym^n(Frob_p^s), never from floating-point alpha powers.
"""

from dataclasses import dataclass

import mpmath as mp
import numpy as np

from .errors import InputError
from .lfunc import LFunctionData
from .numutil import primes_upto, smallest_prime_factors

# naive point counting is O(p); this bound keeps a single prime under ~50 ms
MAX_COUNT_PRIME = 2_000_000


@dataclass(frozen=True)
class CurveSpec:
    """Integral Weierstrass model y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6
    with squarefree conductor (multiplicative reduction at every bad prime)
    and no CM."""

    a1: int
    a2: int
    a3: int
    a4: int
    a6: int
    conductor: int
    label: str = ""
    cm_flag: bool = False

    def __post_init__(self):
        if self.discriminant == 0:
            raise InputError("singular Weierstrass model (discriminant 0)")
        n = self.conductor
        if n < 1:
            raise InputError("conductor must be positive")
        for p in primes_upto(_isqrt(n)):
            if n % (p * p) == 0:
                raise InputError("conductor %d is not squarefree" % n)
        if self.cm_flag:
            raise InputError("CM curves are out of scope (cm_flag must be false)")

    @property
    def b_invariants(self):
        b2 = self.a1 ** 2 + 4 * self.a2
        b4 = 2 * self.a4 + self.a1 * self.a3
        b6 = self.a3 ** 2 + 4 * self.a6
        b8 = (
            self.a1 ** 2 * self.a6
            + 4 * self.a2 * self.a6
            - self.a1 * self.a3 * self.a4
            + self.a2 * self.a3 ** 2
            - self.a4 ** 2
        )
        return b2, b4, b6, b8

    @property
    def discriminant(self):
        b2, b4, b6, b8 = self.b_invariants
        return -(b2 ** 2) * b8 - 8 * b4 ** 3 - 27 * b6 ** 2 + 9 * b2 * b4 * b6


@dataclass(frozen=True)
class SatakePair:
    """Unit-circle Satake parameter at a good prime: alpha + 1/alpha =
    a_p / p^{(k-1)/2} with k = 2 in the elliptic-curve setting."""

    p: int
    alpha: complex
    a_p: int


def _isqrt(n):
    return int(n ** 0.5) + 1


def ap_count(curve, p):
    """Trace of Frobenius a_p = p - #affine points (works verbatim for good
    and multiplicative primes; the point at infinity shifts both sides by 1
    in the good case)."""
    if p > MAX_COUNT_PRIME:
        raise InputError("p = %d exceeds the point-counting bound %d" % (p, MAX_COUNT_PRIME))
    if p == 2:
        count = 0
        for x in range(2):
            for y in range(2):
                lhs = (y * y + curve.a1 * x * y + curve.a3 * y) % 2
                rhs = (x ** 3 + curve.a2 * x * x + curve.a4 * x + curve.a6) % 2
                count += lhs == rhs
        return 2 - count
    # complete the square: (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6
    b2, b4, b6, _ = curve.b_invariants
    x = np.arange(p, dtype=np.int64)
    f = ((4 * x % p + b2 % p) * x % p + (2 * b4) % p) * x % p
    f = (f + b6) % p
    sq = np.zeros(p, dtype=bool)
    sq[(x * x) % p] = True
    chi = np.where(f == 0, 0, np.where(sq[f], 1, -1))
    return int(-chi.sum())


def satake_pair(curve, p):
    """SatakePair at a good prime p (raises for p | N)."""
    if curve.conductor % p == 0:
        raise InputError("p = %d divides the conductor; no Satake pair" % p)
    ap = ap_count(curve, p)
    t = mp.mpf(ap) / (2 * mp.sqrt(p))
    alpha = mp.mpc(t, mp.sqrt(max(mp.mpf(0), 1 - t * t)))
    return SatakePair(p=p, alpha=complex(alpha), a_p=ap)


def _power_traces(ap, p, n, count):
    """t[s] = alpha^s + beta^s (unnormalized: alpha beta = p), then
    w[s] = tr Sym^n(Frob^s) = sum_{j=0}^{n} alpha^{(n-j)s} beta^{js},
    all exact integers, for s = 1..count."""
    t = [2, ap]
    for s in range(2, count + 1):
        t.append(ap * t[s - 1] - p * t[s - 2])
    w = []
    for s in range(1, count + 1):
        q = p ** s
        ts = t[s]
        wv = [1, ts]
        for _ in range(2, n + 1):
            wv.append(ts * wv[-1] - q * wv[-2])
        w.append(wv[n] if n >= 1 else 1)
    return w


def sym_local_factor(n, p, sat, bad):
    """Denominator polynomial of the Sym^n local factor at p, as the exact
    integer coefficient list [1, c_1, ..., c_{n+1}] in X = p^{-s} (degree 1
    for bad p).

    Good p: Newton's identities convert the power sums
    tr Sym^n(Frob^s) into elementary symmetric functions of the n+1
    inverse roots alpha^{n-2j} p^{n/2}.
    """
    if n < 1 or n % 2 == 0:
        raise InputError("symmetric power n must be odd and >= 1")
    if bad:
        return [1, -sat.a_p ** n]
    deg = n + 1
    ps = _power_traces(sat.a_p, p, n, deg)
    e = [1]
    for i in range(1, deg + 1):
        acc = 0
        for s in range(1, i + 1):
            acc += (-1) ** (s - 1) * e[i - s] * ps[s - 1]
        if acc % i:
            raise InputError("Newton identity failed at p=%d (non-integer e_%d)" % (p, i))
        e.append(acc // i)
    return [(-1) ** i * e[i] for i in range(deg + 1)]


def _local_expansion(dcoeffs, p, x):
    """h[r] = coefficient of p^{-rs} in 1/D(p^{-s}) for p^r <= x, via the
    linear recurrence h_r = -sum_{s>=1} D_s h_{r-s}."""
    rmax = 0
    q = 1
    while q * p <= x:
        q *= p
        rmax += 1
    h = [1]
    for r in range(1, rmax + 1):
        acc = 0
        for s in range(1, min(r, len(dcoeffs) - 1) + 1):
            acc -= dcoeffs[s] * h[r - s]
        h.append(acc)
    return h


def sym_dirichlet_coeffs(curve, n, x):
    """lambda_{Sym^n}(1..x) as exact integers, by multiplicative assembly
    of the local expansions (smallest-prime-factor sieve)."""
    if n < 1 or n % 2 == 0:
        raise InputError("symmetric power n must be odd and >= 1")
    if x < 1:
        raise InputError("x must be >= 1")
    lam = [0] * (x + 1)
    lam[1] = 1
    if x == 1:
        return lam[1:]
    spf = smallest_prime_factors(x)
    prime_pow = {}
    for p in primes_upto(x):
        if curve.conductor % p == 0:
            ap = ap_count(curve, p)
            d = [1, -(ap ** n)]
        else:
            d = sym_local_factor(n, p, satake_pair(curve, p), False)
        prime_pow[p] = _local_expansion(d, p, x)
    for v in range(2, x + 1):
        p = int(spf[v])
        q, r = v, 0
        while q % p == 0:
            q //= p
            r += 1
        lam[v] = prime_pow[p][r] * lam[q] if q > 1 else prime_pow[p][r]
    return lam[1:]


def sym_hodge(n, k=2):
    """Hodge numbers of Sym^n of a weight-k form: h_nu = 1 exactly when
    nu is a multiple of k-1 inside [0, m]; for k = 2 all of 0..m."""
    w = n * (k - 1)
    m = (w - 1) // 2
    return tuple(1 if (k == 2 or nu % (k - 1) == 0) else 0 for nu in range(m + 1))


def sym_lfunction_data(curve, n, x, eps, label=None):
    """LFunctionData for Sym^n of the curve: w = n, d = n+1, conductor N^n,
    coefficients to x.  The root number eps is an input (determined
    externally or via determine_root_number); nothing here computes it
    from local data."""
    if n < 3 or n % 2 == 0:
        raise InputError("symmetric power n must be odd and >= 3")
    coeffs = sym_dirichlet_coeffs(curve, n, x)
    return LFunctionData(
        weight=n,
        degree=n + 1,
        conductor=curve.conductor ** n,
        hodge=sym_hodge(n),
        root_number=eps,
        coefficients=tuple(coeffs),
        label=label or ("%s-sym%d" % (curve.label or "curve", n)),
    )


def determine_root_number(curve, n, x=None, bits=96):
    """Experimentally pick eps in {+1, -1} for Sym^n by comparing the AFE
    value of Lambda(w) under each sign against the absolutely convergent
    direct series N^{w/2} L_inf(w) L(w).

    Returns (eps, margin) where margin = mismatch(loser)/mismatch(winner);
    a margin near 1 means the determination is unreliable (raise x).  This
    is a numerical consistency device, not a proof.
    """
    from .lfunc import Precision, completed_lambda, gamma_completed

    w = n
    if x is None:
        # the certified tail majorant for degree d needs roughly this reach
        # at a 1e-8 relative target (divisor-function polylog overhead)
        x = {3: 4000, 5: 20000}.get(n, 75000)
    with mp.workprec(bits + 16):
        base = sym_lfunction_data(curve, n, x, 1)
        scale = mp.power(base.conductor, mp.mpf(w) / 2) * gamma_completed(
            w, base, bits=bits
        )
        prec = Precision(
            mantissa_bits=bits, target_abs_error=float(scale * mp.mpf("1e-8"))
        )
        direct = mp.fsum(
            mp.mpf(lam) * mp.power(k, -w)
            for k, lam in enumerate(base.coefficients, start=1)
            if lam
        )
        ref = scale * direct
        mism = {}
        for eps in (1, -1):
            data = base if eps == 1 else LFunctionData(
                weight=base.weight,
                degree=base.degree,
                conductor=base.conductor,
                hodge=base.hodge,
                root_number=eps,
                coefficients=base.coefficients,
                label=base.label,
            )
            val, _ = completed_lambda(w, data, prec)
            mism[eps] = abs(val - ref)
        winner = 1 if mism[1] <= mism[-1] else -1
        margin = float(mism[-winner] / max(mism[winner], mp.mpf("1e-300")))
        return winner, margin
