"""Dimension series for the fundamental-group side and the cocycle side.

All series are products of geometric factors 1/(1 - t^m) (or, bigraded,
1/(1 - s^a t^m)) truncated at a bound T, computed over Python integers.
The fundamental-group side has ``ell_m`` algebra generators in halved
weight m; the cocycle side has ``ext_dim(m) * ell_m`` of them.

Besides truncated comparison, :func:`decide_crossover` settles whether the
crossover exists at all from the factor lists alone:

* if every factor 1/(1 - t^a) of the first series can be matched to a
  distinct factor 1/(1 - t^b) of the second with b dividing a, the first
  series is dominated termwise for every n and no crossover exists;
* if the first series has strictly more factors, its coefficients grow
  with a higher polynomial degree along multiples of the lcm of the factor
  degrees, so some d_n eventually exceeds c_n.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Mapping

from .words import witt_count

__all__ = [
    "GeneratorProfile",
    "FieldProfile",
    "DimSeries",
    "BiSeries",
    "Crossover",
    "CrossoverVerdict",
    "DEFAULT_TRUNCATION",
    "series_pi",
    "series_Z",
    "biseries_pi",
    "biseries_Z",
    "crossover",
    "crossover_bigraded",
    "compare_series",
    "decide_crossover",
    "depth_one_factors",
    "ext_dim",
    "z1_bound",
    "hadian_check",
    "evertse_bound",
    "factor_series",
    "first_crossover_stream",
]

DEFAULT_TRUNCATION = 64


@dataclass(frozen=True)
class GeneratorProfile:
    """Generator counts ell_m by halved weight.

    ``witt=True`` means ell_m = witt_count(m) for every m (the full group);
    otherwise ``ell`` is a finitely supported table.
    """

    ell: tuple[tuple[int, int], ...] = ()
    witt: bool = False
    label: str = ""

    @staticmethod
    def from_mapping(ell: Mapping[int, int], label: str = "") -> "GeneratorProfile":
        items = tuple(sorted((int(m), int(c)) for m, c in ell.items() if c))
        if any(m < 1 or c < 0 for m, c in items):
            raise ValueError("generator counts need m >= 1 and ell_m >= 0")
        return GeneratorProfile(items, False, label)

    @staticmethod
    def witt_profile() -> "GeneratorProfile":
        return GeneratorProfile((), True, "witt")

    @staticmethod
    def depth_one(k: int) -> "GeneratorProfile":
        """e0, e1 in weight 1 and e1 e0^(m-1) for 2 <= m <= 2k."""
        if k < 1:
            raise ValueError("k must be positive")
        ell = {1: 2}
        ell.update({m: 1 for m in range(2, 2 * k + 1)})
        return GeneratorProfile.from_mapping(ell, f"depth-one k={k}")

    @staticmethod
    def zero() -> "GeneratorProfile":
        return GeneratorProfile((), False, "zero")

    def ell_at(self, m: int) -> int:
        if self.witt:
            return witt_count(m) if m >= 1 else 0
        return dict(self.ell).get(m, 0)

    def support_bound(self) -> int | None:
        if self.witt:
            return None
        return max((m for m, _ in self.ell), default=0)

    def truncated(self, w: int) -> "GeneratorProfile":
        return GeneratorProfile.from_mapping(
            {m: self.ell_at(m) for m in range(1, w + 1)}, f"{self.label} (<= {w})")

    def to_json(self) -> dict:
        if self.witt:
            return {"kind": "witt"}
        return {"kind": "finite", "ell": {str(m): c for m, c in self.ell}, "label": self.label}


@dataclass(frozen=True)
class FieldProfile:
    """|S| and the real/complex places of the number field (Q: r1=1, r2=0)."""

    s: int
    r1: int = 1
    r2: int = 0

    def __post_init__(self):
        if self.s < 0 or self.r1 < 0 or self.r2 < 0:
            raise ValueError("field profile entries must be nonnegative")


def ext_dim(n: int, fp: FieldProfile) -> int:
    """Dimension of the degree-n primitive periods: s, r2 (even), r1 + r2 (odd)."""
    if n < 1:
        return 0
    if n == 1:
        return fp.s
    if n % 2 == 0:
        return fp.r2
    return fp.r1 + fp.r2


@dataclass(frozen=True)
class DimSeries:
    coefficients: tuple[int, ...]

    @property
    def T(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, n: int) -> int:
        return self.coefficients[n]

    def __len__(self):
        return len(self.coefficients)


@dataclass(frozen=True)
class BiSeries:
    """Coefficients indexed by (depth, halved weight), zero outside the table."""

    table: tuple[tuple[int, ...], ...]

    @property
    def T(self) -> int:
        return len(self.table[0]) - 1

    def __getitem__(self, key: tuple[int, int]) -> int:
        k, n = key
        if k < 0 or n < 0 or k >= len(self.table) or n > self.T:
            return 0
        return self.table[k][n]

    def row(self, depth: int) -> DimSeries:
        if depth >= len(self.table):
            return DimSeries((0,) * (self.T + 1))
        return DimSeries(self.table[depth])

    def marginal(self) -> DimSeries:
        return DimSeries(tuple(sum(row[n] for row in self.table) for n in range(self.T + 1)))


# -- series arithmetic -------------------------------------------------------

def _multiply_geometric(c: list[int], m: int, e: int) -> None:
    """c <- c / (1 - t^m)^e in place, truncated to len(c)."""
    T = len(c) - 1
    if e == 0 or m > T:
        return
    # e repeated passes cost e*T; the binomial convolution costs about T^2/(2m)
    if 2 * e * m <= T:
        for _ in range(e):
            for i in range(m, T + 1):
                c[i] += c[i - m]
        return
    # binomial expansion; ell_m gets huge for the full group
    coeffs = [comb(e + j - 1, j) for j in range(T // m + 1)]
    old = c[:]
    for i in range(T + 1):
        c[i] = sum(coeffs[j] * old[i - m * j] for j in range(i // m + 1))


def factor_series(factors: Mapping[int, int], T: int) -> DimSeries:
    """Coefficients of prod_m (1 - t^m)^(-e_m) up to t^T."""
    c = [1] + [0] * T
    for m in sorted(factors):
        _multiply_geometric(c, m, factors[m])
    return DimSeries(tuple(c))


def _pi_factors(prof: GeneratorProfile, T: int) -> dict[int, int]:
    top = T if prof.witt else min(T, prof.support_bound() or 0)
    return {m: prof.ell_at(m) for m in range(1, top + 1) if prof.ell_at(m)}


def _z_factors(prof: GeneratorProfile, fp: FieldProfile, T: int) -> dict[int, int]:
    out = {}
    for m, e in _pi_factors(prof, T).items():
        r = ext_dim(m, fp) * e
        if r:
            out[m] = r
    return out


def series_pi(prof: GeneratorProfile, T: int = DEFAULT_TRUNCATION) -> DimSeries:
    return factor_series(_pi_factors(prof, T), T)


def series_Z(prof: GeneratorProfile, fp: FieldProfile, T: int = DEFAULT_TRUNCATION) -> DimSeries:
    return factor_series(_z_factors(prof, fp, T), T)


def _bi_series(factors: list[tuple[int, int, int]], T: int, D: int) -> BiSeries:
    """prod (1 - s^a t^b)^(-e) over (a, b, e), depth <= D, weight <= T."""
    table = [[0] * (T + 1) for _ in range(D + 1)]
    table[0][0] = 1
    for a, b, e in factors:
        for _ in range(e):
            for k in range(a, D + 1):
                src, dst = table[k - a], table[k]
                for n in range(b, T + 1):
                    dst[n] += src[n - b]
    return BiSeries(tuple(tuple(r) for r in table))


def biseries_pi(k: int, T: int = DEFAULT_TRUNCATION, include_log: bool = True,
                max_depth: int | None = None) -> BiSeries:
    """1/((1-t)(1-st)(1-st^2)...(1-st^2k)); the (1-t) factor is log."""
    D = T if max_depth is None else max_depth
    factors = [(0, 1, 1)] if include_log else []
    factors += [(1, m, 1) for m in range(1, 2 * k + 1)]
    return _bi_series(factors, T, D)


def biseries_Z(k: int, fp: FieldProfile, T: int = DEFAULT_TRUNCATION,
               max_depth: int | None = None) -> BiSeries:
    """1/((1-t)^s (1-st)^s prod_{2<=m<=2k} (1-st^m)^ext_dim(m))."""
    D = T if max_depth is None else max_depth
    factors = [(0, 1, fp.s), (1, 1, fp.s)]
    factors += [(1, m, ext_dim(m, fp)) for m in range(2, 2 * k + 1)]
    return _bi_series(factors, T, D)


# -- crossover ---------------------------------------------------------------

@dataclass(frozen=True)
class Crossover:
    """Minimal w with d_w > c_w and N = c_w + 1, or none below T."""

    found: bool
    T: int
    w: int | None = None
    N: int | None = None
    d_w: int | None = None
    c_w: int | None = None

    def to_json(self) -> dict:
        if not self.found:
            return {"found": False, "none_below": self.T}
        return {"found": True, "w": self.w, "N": self.N, "d_w": self.d_w, "c_w": self.c_w}


def compare_series(d: DimSeries, c: DimSeries) -> Crossover:
    T = min(d.T, c.T)
    for n in range(T + 1):
        if d[n] > c[n]:
            return Crossover(True, T, n, c[n] + 1, d[n], c[n])
    return Crossover(False, T)


def crossover(prof: GeneratorProfile, fp: FieldProfile, T: int = DEFAULT_TRUNCATION) -> Crossover:
    """Graded crossover between series_pi(prof) and series_Z(prof, fp)."""
    return compare_series(series_pi(prof, T), series_Z(prof, fp, T))


def crossover_bigraded(k: int, fp: FieldProfile, depth: int = 1,
                       T: int = DEFAULT_TRUNCATION) -> Crossover:
    """Crossover inside one depth row of the bigraded series."""
    d = biseries_pi(k, T, max_depth=depth).row(depth)
    c = biseries_Z(k, fp, T, max_depth=depth).row(depth)
    return compare_series(d, c)


@dataclass(frozen=True)
class CrossoverVerdict:
    exists: bool | None
    reason: str
    witness: Crossover | None = None

    def to_json(self) -> dict:
        out = {"exists": self.exists, "reason": self.reason}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        return out


def depth_one_factors(k: int, fp: FieldProfile) -> tuple[dict[int, int], dict[int, int]]:
    """Factor multiplicities of the graded depth-one series on both sides."""
    prof = GeneratorProfile.depth_one(k)
    T = 2 * k
    return _pi_factors(prof, T), _z_factors(prof, fp, T)


def _expand(factors: Mapping[int, int]) -> list[int]:
    return [m for m in sorted(factors) for _ in range(factors[m])]


def _divisibility_matching(d: list[int], c: list[int]) -> bool:
    """Is there an injection d -> c with each image dividing its source?"""
    match_of_c = [-1] * len(c)

    def augment(i: int, seen: list[bool]) -> bool:
        for j, b in enumerate(c):
            if seen[j] or d[i] % b:
                continue
            seen[j] = True
            if match_of_c[j] < 0 or augment(match_of_c[j], seen):
                match_of_c[j] = i
                return True
        return False

    # larger degrees have fewer admissible partners, so place them first
    order = sorted(range(len(d)), key=lambda i: -d[i])
    d = [d[i] for i in order]
    return all(augment(i, [False] * len(c)) for i in range(len(d)))


def _search_witness(d_factors: Mapping[int, int], c_factors: Mapping[int, int],
                    T_max: int) -> Crossover:
    """Direct comparison with doubling truncation, so small witnesses stay cheap."""
    T = min(64, T_max)
    while True:
        cr = compare_series(factor_series(d_factors, T), factor_series(c_factors, T))
        if cr.found or T >= T_max:
            return cr
        T = min(2 * T, T_max)


def first_crossover_stream(d_factors: Mapping[int, int], c_factors: Mapping[int, int],
                           limit: int) -> Crossover:
    """Minimal n <= limit with d_n > c_n, in memory proportional to the factor degrees.

    Each factor 1/(1 - t^m) is a recurrence y_n = x_n + y_(n-m) kept in a
    ring buffer of length m, so coefficients are produced one at a time.
    Slow in pure Python (about 10^5 coefficients per second) but usable far
    beyond the reach of :func:`factor_series`.
    """
    def stages(f):
        return [(m, [0] * m) for m in sorted(f) for _ in range(f[m])]

    sd, sc = stages(d_factors), stages(c_factors)
    for n in range(limit + 1):
        x = y = 1 if n == 0 else 0
        for m, buf in sd:
            j = n % m
            x += buf[j]
            buf[j] = x
        for m, buf in sc:
            j = n % m
            y += buf[j]
            buf[j] = y
        if x > y:
            return Crossover(True, limit, n, y + 1, x, y)
    return Crossover(False, limit)


def decide_crossover(d_factors: Mapping[int, int], c_factors: Mapping[int, int],
                     search_T: int = DEFAULT_TRUNCATION) -> CrossoverVerdict:
    """Decide whether some d_n > c_n for two finite products of geometric factors.

    Returns exists=False with a domination certificate, exists=True with a
    growth certificate (and a witness when it lies below ``search_T``), or
    exists=None when neither certificate applies and the search is empty.
    """
    d_list, c_list = _expand(d_factors), _expand(c_factors)
    if len(d_list) <= len(c_list) and _divisibility_matching(d_list, c_list):
        return CrossoverVerdict(False, "dominated: divisibility injection of factors")
    witness = _search_witness(d_factors, c_factors, search_T)
    if len(d_list) > len(c_list):
        reason = f"growth: {len(d_list)} factors against {len(c_list)}"
        return CrossoverVerdict(True, reason, witness if witness.found else None)
    if witness.found:
        return CrossoverVerdict(True, "witness found by direct comparison", witness)
    return CrossoverVerdict(None, f"undecided: no certificate and none below {search_T}")


# -- cross-check bounds ------------------------------------------------------

def z1_bound(prof: GeneratorProfile, fp: FieldProfile) -> int:
    """sum_m ext_dim(m) ell_m; for Q this is s*ell_1 + r1*(ell_3 + ell_5 + ...)."""
    top = prof.support_bound()
    if top is None:
        raise ValueError("z1_bound needs a finitely supported profile")
    return sum(ext_dim(m, fp) * prof.ell_at(m) for m in range(1, top + 1))


def hadian_check(prof: GeneratorProfile, fp: FieldProfile, w: int | None = None) -> bool:
    """ell_1 + ... + ell_w > sum_{m <= w} ext_dim(m) ell_m."""
    if w is None:
        w = prof.support_bound()
        if w is None:
            raise ValueError("a weight bound is required for the full profile")
    lhs = sum(prof.ell_at(m) for m in range(1, w + 1))
    rhs = sum(ext_dim(m, fp) * prof.ell_at(m) for m in range(1, w + 1))
    return lhs > rhs


def evertse_bound(s: int) -> int:
    """3 * 7^(1 + 2s), an upper bound for the number of solutions of u + v = 1."""
    if s < 0:
        raise ValueError("s must be nonnegative")
    return 3 * 7 ** (1 + 2 * s)
