"""S-unit enumeration, polylog monomial bases and determinant sieves.

A monomial log^r0 * Li_1^r1 * ... * Li_m^rm has halved weight
r0 + sum(i * ri) and depth sum(ri). Constraint matrices have one row per
point and one column per monomial. Rows at a tangent vector c at infinity
are rational multiples of log(c)^w; they are stored with that factor
split off, so the matrix itself stays exact there.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import factorial
from typing import Iterable, Sequence

from .core_arith import as_rational, det, factorize, format_rational, is_prime
from .errors import DomainError, UnsupportedError
from .padic import DEFAULT_PRECISION, PadicNumber, padic_li, padic_log
from .period_ring import Point, UPeriod, li_u, log_point, log_u

__all__ = [
    "SUnitSet",
    "enumerate_s_units",
    "Monomial",
    "monomial_basis",
    "ConstraintMatrix",
    "constraint_matrix",
    "DetResult",
    "det_residual",
    "ColemanFunction",
    "coleman_from_minors",
    "padic_period",
    "DEFAULT_BOUND",
    "DEFAULT_SLACK",
]

DEFAULT_BOUND = 6
DEFAULT_SLACK = 4


# -- S-units -----------------------------------------------------------------

def _check_primes(S: Iterable[int]) -> tuple[int, ...]:
    S = tuple(sorted(set(int(p) for p in S)))
    for p in S:
        if not is_prime(p):
            raise DomainError(f"{p} is not prime")
    return S


@dataclass(frozen=True)
class SUnitSet:
    """Solutions x of x + y = 1 in S-units with exponents of x bounded by B."""

    primes: tuple[int, ...]
    bound: int
    points: tuple[Fraction, ...]

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, x):
        return as_rational(x) in self.points

    def in_interval(self, lo, hi) -> tuple[Fraction, ...]:
        """Points strictly between lo and hi."""
        lo, hi = as_rational(lo), as_rational(hi)
        return tuple(x for x in self.points if lo < x < hi)

    def to_json(self) -> dict:
        return {
            "primes": list(self.primes),
            "bound": self.bound,
            "count": len(self.points),
            "points": [format_rational(x) for x in self.points],
        }


def enumerate_s_units(S: Iterable[int], bound: int = DEFAULT_BOUND) -> SUnitSet:
    """All x = +-prod p^a (|a| <= bound) such that 1 - x is an S-unit too.

    1 - x is tested by factorization, so the only truncation is on x.
    """
    S = _check_primes(S)
    if bound < 1:
        raise DomainError("exponent bound must be at least 1")
    found = set()
    for exps in product(range(-bound, bound + 1), repeat=len(S)):
        mag = Fraction(1)
        for p, a in zip(S, exps):
            mag *= Fraction(p) ** a
        for x in (mag, -mag):
            y = 1 - x
            if y == 0:
                continue
            if factorize(y).is_unit_outside(S):
                found.add(x)
    return SUnitSet(S, bound, tuple(sorted(found)))


# -- monomials ---------------------------------------------------------------

_FACTOR = re.compile(r"^(log|Li(\d+))(?:\^(\d+))?$")


@dataclass(frozen=True, order=True)
class Monomial:
    """log^r0 * prod Li_i^ri; ``exponents`` is (r0, r1, ..., rm)."""

    exponents: tuple[int, ...]

    def __post_init__(self):
        e = tuple(self.exponents)
        while len(e) > 1 and e[-1] == 0:
            e = e[:-1]
        if not e:
            e = (0,)
        if any(r < 0 for r in e):
            raise ValueError("negative exponent")
        object.__setattr__(self, "exponents", e)

    @property
    def weight(self) -> int:
        return sum(i * r for i, r in enumerate(self.exponents)) + self.exponents[0]

    @property
    def depth(self) -> int:
        return sum(self.exponents[1:])

    @property
    def max_li(self) -> int:
        return len(self.exponents) - 1

    def sort_key(self):
        return (sum(self.exponents), self.exponents)

    @classmethod
    def parse(cls, text: str) -> "Monomial":
        text = text.strip().replace(" ", "")
        if text in ("", "1"):
            return cls((0,))
        exps: dict[int, int] = {}
        for part in text.split("*"):
            m = _FACTOR.match(part)
            if not m:
                raise ValueError(f"cannot parse monomial factor {part!r}")
            idx = 0 if m.group(1) == "log" else int(m.group(2))
            if m.group(2) is not None and idx < 1:
                raise ValueError("Li index must be positive")
            exps[idx] = exps.get(idx, 0) + int(m.group(3) or 1)
        top = max(exps)
        return cls(tuple(exps.get(i, 0) for i in range(top + 1)))

    def rational_tangent_factor(self) -> Fraction:
        """Value at a tangent vector c at infinity divided by log(c)^weight."""
        out = Fraction(1)
        for i, r in enumerate(self.exponents[1:], start=1):
            out /= factorial(i) ** r
        return out

    def symbolic(self, pt: Point) -> UPeriod:
        out = log_point(pt) ** self.exponents[0]
        for i, r in enumerate(self.exponents[1:], start=1):
            if r:
                out = out * li_u(i, pt) ** r
        return out

    def padic(self, x, p: int, prec: int) -> PadicNumber:
        out = PadicNumber.from_rational(1, p, prec + 8)
        if self.exponents[0]:
            out = out * padic_log(x, p, prec + 4) ** self.exponents[0]
        for i, r in enumerate(self.exponents[1:], start=1):
            if r:
                out = out * padic_li(i, x, p, prec + 4) ** r
        return out.with_precision(prec)

    def __str__(self):
        parts = []
        for i, r in enumerate(self.exponents):
            if not r:
                continue
            base = "log" if i == 0 else f"Li{i}"
            parts.append(base if r == 1 else f"{base}^{r}")
        return "*".join(parts) or "1"


def monomial_basis(max_li: int, w: int, depth: int | None = None,
                   include_log: bool = True) -> list[Monomial]:
    """All monomials of halved weight w in log, Li_1..Li_max_li."""
    if w < 0 or max_li < 0:
        raise DomainError("weight and max_li must be nonnegative")
    out: list[Monomial] = []

    def rec(i: int, remaining: int, acc: list[int]):
        if i == 0:
            if remaining and not include_log:
                return
            e = [remaining] + acc[::-1]
            mono = Monomial(tuple(e))
            if depth is None or mono.depth == depth:
                out.append(mono)
            return
        for r in range(remaining // i + 1):
            rec(i - 1, remaining - i * r, acc + [r])

    rec(max_li, w, [])
    return sorted(set(out), key=Monomial.sort_key)


# -- constraint matrices -----------------------------------------------------

def _as_point(pt) -> Point:
    if isinstance(pt, Point):
        return pt
    if isinstance(pt, str):
        return Point.parse(pt)
    return Point.finite(pt)


@dataclass
class ConstraintMatrix:
    """Rows = points, columns = monomials.

    ``rows`` holds the reduced rows (tangential factor removed);
    ``row_factors[j]`` is None for a finite point, else the symbolic
    factor log(c)^w together with its p-adic value in p-adic mode.
    """

    points: tuple[Point, ...]
    monomials: tuple[Monomial, ...]
    mode: str
    rows: list[list]
    row_factors: list
    p: int | None = None
    prec: int | None = None

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), len(self.monomials))

    def full_rows(self) -> list[list]:
        out = []
        for row, fac in zip(self.rows, self.row_factors):
            if fac is None:
                out.append(list(row))
            else:
                f = fac[0] if self.mode == "symbolic" else fac[1]
                out.append([f * e for e in row])
        return out

    def to_json(self) -> dict:
        def enc(v):
            if isinstance(v, PadicNumber):
                return v.to_json()
            if isinstance(v, UPeriod):
                return v.to_json()
            return format_rational(v)

        return {
            "mode": self.mode,
            "p": self.p,
            "precision": self.prec,
            "points": [str(pt) for pt in self.points],
            "monomials": [str(m) for m in self.monomials],
            "rows": [[enc(v) for v in row] for row in self.rows],
            "row_factors": [None if f is None else str(f[0]) for f in self.row_factors],
        }


def constraint_matrix(points: Sequence, monomials: Sequence[Monomial], mode: str = "symbolic",
                      p: int | None = None, prec: int = DEFAULT_PRECISION) -> ConstraintMatrix:
    """Evaluate every monomial at every point."""
    if mode not in ("symbolic", "padic"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "padic" and p is None:
        raise ValueError("p-adic mode needs a prime")
    pts = tuple(_as_point(pt) for pt in points)
    monos = tuple(m if isinstance(m, Monomial) else Monomial.parse(m) for m in monomials)
    weights = {m.weight for m in monos}
    rows, factors = [], []
    for pt in pts:
        if pt.kind == "tangential":
            if len(weights) > 1:
                raise UnsupportedError("tangential rows need monomials of a single weight")
            w = weights.pop() if weights else 0
            weights.add(w)
            rows.append([m.rational_tangent_factor() for m in monos])
            sym = log_u(pt.value) ** w
            val = None
            if mode == "padic":
                val = padic_log(pt.value, p, prec + 4) ** w
            factors.append((sym, val))
        elif pt.kind == "finite":
            if mode == "symbolic":
                rows.append([m.symbolic(pt) for m in monos])
            else:
                rows.append([m.padic(pt.value, p, prec) for m in monos])
            factors.append(None)
        else:
            raise DomainError("the base point cannot be a row")
    return ConstraintMatrix(pts, monos, mode, rows, factors, p if mode == "padic" else None,
                            prec if mode == "padic" else None)


@dataclass(frozen=True)
class DetResult:
    determinant: object
    valuation: int
    precision: int
    full_valuation: int
    target: int
    slack: int
    passed: bool

    def to_json(self) -> dict:
        d = self.determinant
        return {
            "determinant": d.to_json() if isinstance(d, PadicNumber) else format_rational(d),
            "valuation": self.valuation,
            "precision": self.precision,
            "full_valuation": self.full_valuation,
            "target": self.target,
            "slack": self.slack,
            "pass": self.passed,
        }


def _padic_det(rows, p: int, prec: int) -> PadicNumber:
    conv = [[v if isinstance(v, PadicNumber) else PadicNumber.from_rational(v, p, prec + 8)
             for v in row] for row in rows]
    if not conv:
        return PadicNumber.from_rational(1, p, prec)
    return det(conv)


def det_residual(M: ConstraintMatrix, slack: int = DEFAULT_SLACK) -> DetResult:
    """Valuation of the determinant of a square p-adic constraint matrix.

    Passes iff the reduced determinant vanishes to at least prec - slack
    digits. ``full_valuation`` includes the tangential row factors.
    """
    if M.mode != "padic":
        raise ValueError("det_residual needs a p-adic matrix")
    n, m = M.shape
    if n != m:
        raise ValueError(f"matrix is {n}x{m}, not square")
    D = _padic_det(M.rows, M.p, M.prec)
    full = D
    for f in M.row_factors:
        if f is not None:
            full = full * f[1]
    target = M.prec - slack
    return DetResult(D, D.valuation, D.prec, full.valuation, target, slack, D.valuation >= target)


# -- Coleman functions from minors -------------------------------------------

@dataclass
class ColemanFunction:
    """sum_i coefficients[i] * monomials[i](x), vanishing on integral points."""

    monomials: tuple[Monomial, ...]
    coefficients: tuple
    points: tuple[Point, ...]
    mode: str
    reductions: int = 0
    p: int | None = None
    prec: int | None = None
    notes: list[str] = field(default_factory=list)

    def is_trivial(self) -> bool:
        return all(_is_zero(c) for c in self.coefficients)

    def evaluate(self, x, p: int | None = None, prec: int | None = None) -> PadicNumber:
        """p-adic value at a finite point; symbolic coefficients are specialized."""
        p = p if p is not None else self.p
        prec = prec if prec is not None else (self.prec or DEFAULT_PRECISION)
        if p is None:
            raise ValueError("a prime is needed to evaluate")
        total = PadicNumber.zero(p, prec)
        for c, mono in zip(self.coefficients, self.monomials):
            if _is_zero(c):
                continue
            cv = padic_period(c, p, prec) if isinstance(c, UPeriod) else c
            total = total + cv * mono.padic(x, p, prec)
        return total

    def to_json(self) -> dict:
        def enc(c):
            if isinstance(c, PadicNumber):
                return c.to_json()
            if isinstance(c, UPeriod):
                return str(c)
            return format_rational(c)

        return {
            "mode": self.mode,
            "monomials": [str(m) for m in self.monomials],
            "coefficients": [enc(c) for c in self.coefficients],
            "points": [str(pt) for pt in self.points],
            "reductions": self.reductions,
        }


def _is_zero(c) -> bool:
    if isinstance(c, PadicNumber):
        return c.is_zero()
    return not c


def _cofactors(rows: list[list], n_cols: int) -> list:
    """Cofactors along a free first row placed above ``rows``."""
    out = []
    for i in range(n_cols):
        minor = [[v for k, v in enumerate(row) if k != i] for row in rows]
        d = det(minor) if minor else Fraction(1)
        out.append(d if i % 2 == 0 else -d)
    return out


def coleman_from_minors(points: Sequence, monomials: Sequence, mode: str = "symbolic",
                        p: int | None = None, prec: int = DEFAULT_PRECISION) -> ColemanFunction:
    """Expand det(free row; known points) along the free row.

    If every cofactor vanishes, the last point and last monomial are
    dropped and the smaller system is expanded instead.
    """
    monos = [m if isinstance(m, Monomial) else Monomial.parse(m) for m in monomials]
    pts = [_as_point(pt) for pt in points]
    if len(pts) != len(monos) - 1:
        raise ValueError(f"need {len(monos) - 1} points for {len(monos)} monomials, got {len(pts)}")
    reductions = 0
    while True:
        M = constraint_matrix(pts, monos, mode, p, prec)
        rows = M.rows
        if mode == "padic":
            rows = [[v if isinstance(v, PadicNumber) else PadicNumber.from_rational(v, p, prec + 8)
                     for v in row] for row in rows]
        coeffs = _cofactors(rows, len(monos))
        fn = ColemanFunction(tuple(monos), tuple(coeffs), tuple(pts), mode, reductions,
                             p if mode == "padic" else None, prec if mode == "padic" else None)
        if not fn.is_trivial() or len(monos) == 1:
            return fn
        fn.notes.append("all cofactors vanish")
        pts, monos = pts[:-1], monos[:-1]
        reductions += 1


def padic_period(xi, p: int, prec: int = DEFAULT_PRECISION) -> PadicNumber:
    """p-adic period of a resolved symbol: L(q) -> log_p(q), Li(n; x) -> Li_n^p(x)."""
    if not isinstance(xi, UPeriod):
        return PadicNumber.from_rational(xi, p, prec)
    total = PadicNumber.zero(p, prec)
    for mono, c in xi.terms.items():
        term = PadicNumber.from_rational(as_rational(c), p, prec + 8)
        for g, e in mono:
            if g[0] == "L":
                val = padic_log(g[1], p, prec + 4)
            elif g[0] == "Li":
                val = padic_li(g[1], g[2], p, prec + 4)
            else:
                raise UnsupportedError(f"no p-adic value for {g[0]} symbols")
            term = term * val ** e
        total = total + term
    return total.with_precision(prec)
