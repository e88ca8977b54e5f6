"""p-adic numbers, the Iwasawa logarithm and p-adic polylogarithms.

Polylogarithms use the branch log p = 0 and are evaluated on every residue
disk except the one around 1:

* v(x) >= 1: the defining series sum x^k / k^n;
* v(x) < 0: the inversion identity
  Li_n(x) = -(-1)^n Li_n(1/x) - log(x)^n / n!;
* v(x) = 0, x != 1 mod p: a Taylor expansion in s = log(x) around the
  Teichmuller point tau of the disk,
  Li_n(x) = sum_k Li_{n-k}(tau) s^k / k!.

The values Li_j(tau) come from the Frobenius differences
f_j(z) = Li_j(z) - p^-j Li_j(z^p), which are single power series in
u = 1/(1 - z) converging for |u| <= 1, i.e. on the whole of z != 1 mod p.
f_0 = u - u^p / (u^p - (u - 1)^p), and f_j is obtained from f_{j-1} by
integrating against dz/z = du / (u (u - 1)) with f_j = 0 at z = 0.
Since tau^p = tau, Li_j(tau) = f_j(tau) / (1 - p^-j). For j <= 0 the values
are rational functions of tau.

Internally everything runs on Python integers modulo a power of p, with a
common power-of-p scale absorbing the denominators introduced by the
integrations; results are wrapped as :class:`PadicNumber` at the requested
precision after guard digits.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from threading import Lock

from .core_arith import as_rational, format_rational, is_prime
from .errors import DomainError, UnsupportedError

__all__ = [
    "PadicNumber",
    "DiskExpansion",
    "DEFAULT_PRECISION",
    "teichmuller",
    "padic_log",
    "li_series",
    "frobenius_diff",
    "frobenius_diff1",
    "padic_li",
    "disk_expansion",
    "coleman_weight2",
    "valuation",
]

DEFAULT_PRECISION = 20
_GUARD = 6  # extra digits carried internally beyond the requested precision


def valuation(x, p: int) -> int | None:
    """p-adic valuation of a rational; None for 0."""
    x = as_rational(x)
    if x == 0:
        return None
    v, num, den = 0, x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def _vp_int(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _check_prime(p: int) -> None:
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if p == 2:
        raise UnsupportedError("p = 2 is not supported by the p-adic evaluator")


def _rational_mod(x: Fraction, p: int, m: int) -> int:
    """Integer representative of a p-integral rational modulo p^m."""
    mod = p ** m
    if x.denominator % p == 0:
        raise DomainError(f"{x} is not {p}-integral")
    return x.numerator * pow(x.denominator, -1, mod) % mod


# -- numbers -----------------------------------------------------------------

class PadicNumber:
    """p^valuation * unit, known modulo p^prec.

    A value that vanishes to the working precision has unit 0 and
    valuation equal to prec. Precision is tracked pessimistically:

    * a + b is known to min(prec_a, prec_b);
    * a * b to min(prec_a + v_b, prec_b + v_a);
    * a / b to v_a - v_b + min(prec_a - v_a, prec_b - v_b).
    """

    __slots__ = ("p", "unit", "valuation", "prec")

    def __init__(self, p: int, unit: int, valuation: int, prec: int):
        if unit == 0 or valuation >= prec:
            unit, valuation = 0, prec
        else:
            while unit % p == 0:
                unit //= p
                valuation += 1
            if valuation >= prec:
                unit, valuation = 0, prec
            else:
                unit %= p ** (prec - valuation)
        self.p = p
        self.unit = unit
        self.valuation = valuation
        self.prec = prec

    # construction
    @classmethod
    def from_rational(cls, x, p: int, prec: int = DEFAULT_PRECISION) -> "PadicNumber":
        x = as_rational(x)
        if x == 0:
            return cls(p, 0, prec, prec)
        v = valuation(x, p)
        if v >= prec:
            return cls(p, 0, prec, prec)
        num, den = x.numerator, x.denominator
        if v > 0:
            num //= p ** v
        elif v < 0:
            den //= p ** (-v)
        mod = p ** (prec - v)
        return cls(p, num * pow(den, -1, mod) % mod, v, prec)

    @classmethod
    def from_scaled(cls, A: int, E: int, p: int, prec: int) -> "PadicNumber":
        """The value A / p^E, where A is meaningful modulo p^(prec + E)."""
        if A == 0:
            return cls(p, 0, prec, prec)
        v = _vp_int(A, p)
        return cls(p, A // p ** v, v - E, prec)

    @classmethod
    def zero(cls, p: int, prec: int = DEFAULT_PRECISION) -> "PadicNumber":
        return cls(p, 0, prec, prec)

    def _coerce(self, other) -> "PadicNumber | None":
        if isinstance(other, PadicNumber):
            if other.p != self.p:
                raise ValueError("mixing different primes")
            return other
        if isinstance(other, (int, Fraction)):
            slack = abs(self.valuation) + abs(valuation(other, self.p) or 0) + 8
            return PadicNumber.from_rational(other, self.p, self.prec + slack)
        return None

    # predicates
    def is_zero(self) -> bool:
        return self.unit == 0

    def __bool__(self):
        return not self.is_zero()

    @property
    def relative_precision(self) -> int:
        return self.prec - self.valuation

    # arithmetic
    def __add__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        a, p = self, self.p
        prec = min(a.prec, b.prec)
        e = min(a.valuation, b.valuation, prec)
        A = a.unit * p ** (a.valuation - e) + b.unit * p ** (b.valuation - e)
        return PadicNumber(p, A % p ** (prec - e), e, prec)

    __radd__ = __add__

    def __neg__(self):
        return PadicNumber(self.p, -self.unit, self.valuation, self.prec)

    def __sub__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return self + (-b)

    def __rsub__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return b + (-self)

    def __mul__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        a = self
        prec = min(a.prec + b.valuation, b.prec + a.valuation)
        if a.is_zero() or b.is_zero():
            return PadicNumber(a.p, 0, prec, prec)
        v = a.valuation + b.valuation
        return PadicNumber(a.p, a.unit * b.unit, v, prec)

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return self._div(b)

    def __rtruediv__(self, other):
        a = self._coerce(other)
        if a is None:
            return NotImplemented
        return a._div(self)

    def _div(self, b: "PadicNumber") -> "PadicNumber":
        a = self
        if b.is_zero():
            raise ZeroDivisionError("division by a p-adic number that vanishes to its precision")
        v = a.valuation - b.valuation
        rel = min(a.prec - a.valuation, b.prec - b.valuation)
        prec = v + rel
        if a.is_zero():
            return PadicNumber(a.p, 0, prec, prec)
        mod = a.p ** max(rel, 1)
        return PadicNumber(a.p, a.unit * pow(b.unit, -1, mod), v, prec)

    def __pow__(self, k: int):
        if k < 0:
            return PadicNumber.from_rational(1, self.p, self.prec + 8) / self ** (-k)
        out = PadicNumber.from_rational(1, self.p, self.prec + max(0, -self.valuation) * k + 8)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        b = self._coerce(other) if not isinstance(other, PadicNumber) or other.p == self.p else None
        if b is None:
            return NotImplemented
        return (self - b).is_zero()

    def __hash__(self):
        return hash((self.p, self.prec))

    def with_precision(self, prec: int) -> "PadicNumber":
        """Truncate (never extend) to absolute precision prec."""
        prec = min(prec, self.prec)
        return PadicNumber(self.p, self.unit, self.valuation, prec)

    # output
    def lift(self) -> Fraction:
        """Rational representative p^v * unit with 0 <= unit < p^(prec - v)."""
        if self.is_zero():
            return Fraction(0)
        return Fraction(self.p) ** self.valuation * self.unit

    def digits(self) -> list[int]:
        """Base-p digits of the unit, least significant first."""
        out, u = [], self.unit
        for _ in range(self.prec - self.valuation):
            out.append(u % self.p)
            u //= self.p
        return out

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "zero": self.is_zero(),
            "valuation": self.valuation,
            "precision": self.prec,
            "unit_digits": self.digits(),
            "value": format_rational(self.lift()),
        }

    def __repr__(self):
        if self.is_zero():
            return f"O({self.p}^{self.prec})"
        return f"{self.p}^{self.valuation} * {self.unit} + O({self.p}^{self.prec})"


def _as_padic(x, p: int, prec: int) -> PadicNumber:
    if isinstance(x, PadicNumber):
        if x.p != p:
            raise ValueError("prime mismatch")
        return x
    return PadicNumber.from_rational(x, p, prec)


# -- Teichmuller and log -----------------------------------------------------

def _teich_int(a: int, p: int, m: int) -> int:
    mod = p ** m
    return pow(a % mod, p ** (m - 1), mod)


def teichmuller(x, p: int, prec: int = DEFAULT_PRECISION) -> PadicNumber:
    """The (p-1)-th root of unity congruent to x mod p."""
    _check_prime(p)
    xp = _as_padic(x, p, prec)
    if xp.valuation != 0:
        raise DomainError(f"Teichmuller lift needs a unit, got valuation {xp.valuation}")
    return PadicNumber(p, _teich_int(xp.unit, p, prec), 0, prec)


def _log_unit_int(a: int, p: int, m: int) -> int:
    """log(a) mod p^m for an integer unit a, Iwasawa branch."""
    # log a = log(a^(p-1)) / (p-1); a^(p-1) = 1 + z with p | z
    c = 0
    while p ** (c + 1) <= 2 * m + 2:
        c += 1
    work = m + c + 2
    mod = p ** work
    z = (pow(a, p - 1, mod) - 1) % mod
    if z == 0:
        return 0
    total, zk, k = 0, 1, 1
    scale = p ** c
    while True:
        zk = zk * z % mod
        if zk == 0 or k - c > work:
            break
        if k - _vp_int(k, p) >= m + 1 and _vp_int(zk, p) - _vp_int(k, p) >= m + 1:
            break
        vk = _vp_int(k, p)
        unit_k = k // p ** vk
        term = zk * p ** (c - vk) * pow(unit_k, -1, mod) if vk <= c else None
        if term is None:
            # k has more factors of p than the scale; its term is tiny anyway
            k += 1
            continue
        total = (total + term if k % 2 else total - term) % mod
        k += 1
    total //= scale  # exact: log(1 + z) is divisible by p
    mod_m = p ** m
    return total * pow(p - 1, -1, mod_m) % mod_m


def padic_log(x, p: int, prec: int = DEFAULT_PRECISION) -> PadicNumber:
    """Iwasawa logarithm: log p = 0 and log of roots of unity = 0."""
    _check_prime(p)
    if isinstance(x, PadicNumber):
        if x.is_zero():
            raise DomainError("log of 0")
        prec = min(prec, x.prec - x.valuation) if x.valuation < x.prec else prec
        unit = x.unit
    else:
        x = as_rational(x)
        if x == 0:
            raise DomainError("log of 0")
        v = valuation(x, p)
        u = x / Fraction(p) ** v
        unit = _rational_mod(u, p, prec + 2)
    return PadicNumber.from_scaled(_log_unit_int(unit, p, prec + 2), 0, p, prec)


# -- series at the disk around 0 ---------------------------------------------

def _li_series_int(n: int, a: int, va: int, p: int, L: int) -> tuple[int, int]:
    """Sum_{k>=1} x^k / k^n modulo p^L (absolute) as (A, E) with value A / p^E.

    x = a is an integer with v_p(a) = va >= 1.
    """
    # terms with k*va - n*v_p(k) >= L vanish; find the last one that doesn't
    K, k = 1, 1
    while True:
        vk = 0
        while p ** (vk + 1) <= k:
            vk += 1
        if k * va - n * vk >= L + 1 and (k + 1) * va - n * (vk + 1) >= L + 1:
            break
        K = k
        k += 1
    c = 0
    while p ** (c + 1) <= K:
        c += 1
    E = n * c
    mod = p ** (L + E)
    total, xk = 0, 1
    for k in range(1, K + 1):
        xk = xk * a % mod
        vk = _vp_int(k, p)
        uk = k // p ** vk
        total += xk * p ** (E - n * vk) * pow(uk, -n, mod)
    return total % mod, E


def li_series(n: int, x, p: int, prec: int = DEFAULT_PRECISION) -> PadicNumber:
    """Sum_{k>=1} x^k / k^n for v_p(x) >= 1."""
    _check_prime(p)
    if n < 0:
        raise DomainError("series needs n >= 0")
    x = as_rational(x)
    if x == 0:
        return PadicNumber.zero(p, prec)
    va = valuation(x, p)
    if va < 1:
        raise DomainError(f"series needs v_{p}(x) >= 1, got {va}")
    L = prec + _GUARD
    a = _rational_mod(x, p, L + n * 64)
    A, E = _li_series_int(n, a, va, p, L)
    return PadicNumber.from_scaled(A, E, p, prec)


# -- the evaluation engine for unit points -----------------------------------

@lru_cache(maxsize=None)
def _eulerian(m: int) -> tuple[int, ...]:
    """Coefficients of P_m with Li_{-m}(z) = P_m(z) / (1 - z)^(m+1)."""
    if m == 0:
        return (0, 1)
    prev = _eulerian(m - 1)
    # P_m = z * (P_{m-1}' (1 - z) + m P_{m-1})
    deriv = [i * c for i, c in enumerate(prev)][1:]
    q = [0] * (len(prev) + 1)
    for i, c in enumerate(deriv):
        q[i] += c
        q[i + 1] -= c
    for i, c in enumerate(prev):
        q[i] += m * c
    while len(q) > 1 and q[-1] == 0:
        q.pop()
    return tuple([0] + q)


class _Engine:
    """Frobenius-difference series and Teichmuller data for one (p, W, nmax)."""

    def __init__(self, p: int, W: int, nmax: int):
        self.p, self.W, self.nmax = p, W, nmax
        # truncation: coefficients of f_n satisfy v(c_k) >= (k - p + 1)/(p - 1) - n log_p k
        K = p
        while True:
            logk = 0
            while p ** (logk + 1) <= K:
                logk += 1
            if (K - p) // (p - 1) - nmax * (logk + 1) >= W + 2:
                break
            K += p - 1
        self.K = K
        vK = 0
        while p ** (vK + 1) <= K + 1:
            vK += 1
        self.vK = vK
        self.G = nmax * vK
        self.M = W + self.G + 2
        self.mod = p ** self.M
        self.series = self._build_series()
        self._disks: dict[int, dict[int, int]] = {}
        self._lock = Lock()

    def _build_series(self) -> list[list[int]]:
        p, K, mod, vK = self.p, self.K, self.mod, self.vK
        # 1/Q with Q(u) = u^p - (u - 1)^p, an integer series since Q(0) = 1
        Q = [0] * (p + 1)
        for i in range(p + 1):
            Q[i] = -((-1) ** (p - i)) * _binom(p, i)
        Q[p] += 1
        assert Q[0] == 1 and Q[p] == 0
        inv = [0] * (K + 1)
        inv[0] = 1
        for k in range(1, K + 1):
            s = 0
            for i in range(1, min(k, p - 1) + 1):
                s += Q[i] * inv[k - i]
            inv[k] = -s % mod
        f0 = [0] * (K + 1)
        f0[1] = 1
        for k in range(p, K + 1):
            f0[k] = (f0[k] - inv[k - p]) % mod
        series = [f0]
        for n in range(1, self.nmax + 1):
            prev = series[-1]
            # g = f/u, h = g/(u - 1) = -sum_{j<=k} g_j, then integrate h du
            h, acc = [0] * K, 0
            for k in range(K):
                acc = (acc + prev[k + 1]) % mod
                h[k] = -acc % mod
            new = [0] * (K + 1)
            for k in range(K):
                vk = _vp_int(k + 1, p)
                uk = (k + 1) // p ** vk
                new[k + 1] = h[k] * p ** (vK - vk) * pow(uk, -1, mod) % mod
            new[0] = -sum(new[1:]) % mod  # f_n = 0 at u = 1, i.e. z = 0
            series.append(new)
        # rescale so that f_n carries the common scale p^G
        for n in range(len(series)):
            shift = self.G - n * vK
            series[n] = [c * p ** shift % mod for c in series[n]]
        return series

    def eval_series(self, n: int, u: int) -> int:
        """f_n(u) * p^G modulo p^M, for an integer u."""
        acc = 0
        for c in reversed(self.series[n]):
            acc = (acc * u + c) % self.mod
        return acc

    def disk(self, r: int, mmax: int) -> dict[int, int]:
        """Li_j(tau) * p^G mod p^M for -mmax <= j <= nmax, tau = teich(r)."""
        mmax = max(mmax, 0)
        with self._lock:
            cached = self._disks.get(r)
            if cached is not None and min(cached) <= -mmax:
                return cached
        p, mod, G = self.p, self.mod, self.G
        tau = _teich_int(r, p, self.M)
        one_minus = (1 - tau) % mod
        u = pow(one_minus, -1, mod)
        vals: dict[int, int] = {}
        for j in range(1, self.nmax + 1):
            pj = p ** j
            vals[j] = self.eval_series(j, u) * pj * pow(pj - 1, -1, mod) % mod
        scale = p ** G
        upow = u
        for m in range(0, mmax + 1):
            upow = upow * u % mod if m else u
            coeffs = _eulerian(m)
            acc = 0
            for c in reversed(coeffs):
                acc = (acc * tau + c) % mod
            vals[-m] = acc * upow * scale % mod
        with self._lock:
            self._disks[r] = vals
        return vals

    def li_unit(self, n: int, a: int) -> int:
        """Li_n(x) * p^G mod p^M for an integer unit a = x mod p^(M + extra)."""
        p, mod = self.p, self.mod
        s_terms = self._s_terms(a)
        vals = self.disk(a % p, len(s_terms) - n)
        acc = 0
        for k, t in enumerate(s_terms):
            acc += vals[n - k] * t
        return acc % mod

    def _s_terms(self, a: int) -> list[int]:
        """s^k / k! mod p^M for s = log(x), until the terms vanish."""
        p, M = self.p, self.M
        extra = M  # v(k!) < k/(p-1) <= M over the useful range
        s = _log_unit_int(a, p, M + extra)
        out = [1]
        if s == 0:
            return out
        bigmod = p ** (M + extra)
        sk, fact_unit, fact_v = 1, 1, 0
        k = 0
        vs = _vp_int(s, p)
        while True:
            k += 1
            sk = sk * s % bigmod
            vk = _vp_int(k, p)
            fact_v += vk
            fact_unit = fact_unit * (k // p ** vk)
            if k * vs - fact_v >= M:
                break
            term = (sk // p ** fact_v) * pow(fact_unit, -1, p ** M) % p ** M
            out.append(term)
        return out


def _binom(n: int, k: int) -> int:
    return factorial(n) // (factorial(k) * factorial(n - k))


@lru_cache(maxsize=64)
def _engine(p: int, W: int, nmax: int) -> _Engine:
    return _Engine(p, W, nmax)


def _engine_for(p: int, prec: int, n: int) -> _Engine:
    nmax = max(4, -(-n // 4) * 4)
    return _engine(p, prec + _GUARD, nmax)


# -- public evaluators -------------------------------------------------------

def frobenius_diff(n: int, x, p: int, prec: int = DEFAULT_PRECISION) -> PadicNumber:
    """f_n(x) = Li_n(x) - p^-n Li_n(x^p) for x != 1 mod p (including v(x) != 0)."""
    _check_prime(p)
    if n < 0:
        raise DomainError("n must be nonnegative")
    x = as_rational(x)
    v = valuation(x, p)
    if v == 0 and (x.numerator - x.denominator) % p == 0:
        raise DomainError(f"x = {format_rational(x)} lies in the residue disk of 1 mod {p}")
    eng = _engine_for(p, prec, n)
    u = Fraction(1) / (1 - x)
    U = _rational_mod(u, p, eng.M) if valuation(u, p) >= 0 else None
    if U is None:
        raise DomainError("u = 1/(1-x) is not integral")
    return PadicNumber.from_scaled(eng.eval_series(n, U), eng.G, p, prec)


def frobenius_diff1(x, p: int, prec: int = DEFAULT_PRECISION) -> PadicNumber:
    """f_1(x) = -(1/p) log((1-x)^p / (1-x^p)), from the closed form."""
    _check_prime(p)
    x = as_rational(x)
    v = valuation(x, p)
    if v is not None and v < 0:
        raise DomainError("closed form needs v_p(x) >= 0")
    if v == 0 and (x.numerator - x.denominator) % p == 0:
        raise DomainError(f"x = {format_rational(x)} lies in the residue disk of 1 mod {p}")
    arg = (1 - x) ** p / (1 - x ** p)
    return -padic_log(arg, p, prec + 1) / p


def padic_li(n: int, x, p: int, prec: int = DEFAULT_PRECISION) -> PadicNumber:
    """The p-adic polylogarithm Li_n(x), branch log p = 0."""
    _check_prime(p)
    if n < 0:
        raise DomainError("n must be nonnegative")
    x = as_rational(x)
    if x == 0:
        return PadicNumber.zero(p, prec)
    if n == 0:
        return PadicNumber.from_rational(x / (1 - x), p, prec) if x != 1 else _raise_one(p)
    v = valuation(x, p)
    if v >= 1:
        return li_series(n, x, p, prec)
    if v < 0:
        work = prec + _GUARD + n
        inv = li_series(n, 1 / x, p, work)
        lg = padic_log(x, p, work)
        out = -inv if n % 2 == 0 else inv
        out = out - lg ** n / factorial(n)
        return out.with_precision(prec)
    if (x.numerator - x.denominator) % p == 0:
        _raise_one(p, x)
    eng = _engine_for(p, prec, n)
    a = _rational_mod(x, p, 2 * eng.M)
    return PadicNumber.from_scaled(eng.li_unit(n, a), eng.G, p, prec)


def _raise_one(p, x=None):
    what = f"x = {format_rational(x)}" if x is not None else "x"
    raise DomainError(f"{what} lies in the residue disk of 1 mod {p}")


@dataclass(frozen=True)
class DiskExpansion:
    """Li_n on the residue disk of tau as a power series in s = log(x).

    ``coefficients[k]`` is Li_{n-k}(tau) / k!; the series converges for
    v(s) >= ``radius_exponent``.
    """

    p: int
    n: int
    center: PadicNumber
    coefficients: tuple[PadicNumber, ...]
    radius_exponent: int = 1

    def evaluate(self, s: PadicNumber) -> PadicNumber:
        acc = PadicNumber.zero(self.p, self.coefficients[0].prec)
        for c in reversed(self.coefficients):
            acc = acc * s + c
        return acc

    def derivative(self) -> "DiskExpansion":
        """d/ds, which is the expansion of Li_{n-1}."""
        coeffs = tuple(c * (k + 1) for k, c in enumerate(self.coefficients[1:]))
        return DiskExpansion(self.p, self.n - 1, self.center, coeffs, self.radius_exponent)


def disk_expansion(n: int, residue: int, p: int, prec: int = DEFAULT_PRECISION,
                   terms: int | None = None) -> DiskExpansion:
    """Expansion of Li_n around the Teichmuller point of a residue class."""
    _check_prime(p)
    r = residue % p
    if r in (0, 1):
        raise DomainError(f"no unit expansion on the residue disk of {r} mod {p}")
    eng = _engine_for(p, prec, n)
    depth = terms if terms is not None else 2 * eng.M
    vals = eng.disk(r, depth - n)
    coeffs = []
    for k in range(depth):
        val = PadicNumber.from_scaled(vals[n - k], eng.G, p, prec + _GUARD)
        coeffs.append((val / factorial(k)).with_precision(prec))
    tau = PadicNumber(p, _teich_int(r, p, prec), 0, prec)
    return DiskExpansion(p, n, tau, tuple(coeffs))


def coleman_weight2(x, p: int, prec: int = DEFAULT_PRECISION) -> PadicNumber:
    """Li_2(x) - (1/2) log(x) Li_1(x)."""
    work = prec + 2
    val = padic_li(2, x, p, work) - padic_log(x, p, work) * padic_li(1, x, p, work) / 2
    return val.with_precision(prec)
