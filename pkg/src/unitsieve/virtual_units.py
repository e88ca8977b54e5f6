"""Divisors on rational points, unramified divisor spaces and virtual cocycles.

A divisor is a finite formal combination sum n_x [x] of points x != 0, 1,
with rational or polynomial coefficients. Period symbols extend to divisors
linearly. For the generator space M_n = {log, Li_1, ..., Li_n}:

* a divisor is M_n-unramified outside S when every Li_k of it (and its log)
  passes the recursive ramification test; this is linear in the n_x;
* it is a virtual cocycle when, for 2 <= m <= n,
  Delta' Li_m(xi) = sum_{i=1}^{m-1} Li_{m-i}(xi) (x) log(xi)^i / i!,
  which is polynomial of degree up to m in the n_x.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import factorial, gcd
from typing import Iterable, Mapping, Sequence

from .core_arith import (
    ConicFamily,
    ParamPoly,
    as_rational,
    factorize,
    format_rational,
    nullspace,
    param_solve_conic,
    rank,
)
from .errors import DomainError, UnsupportedError
from .period_ring import (
    Point,
    TensorPeriod,
    UPeriod,
    li_u,
    log_u,
    ramification_conditions,
    reduced_coproduct,
)

__all__ = [
    "Divisor",
    "GeneratorSpace",
    "li_of_divisor",
    "unramified_space",
    "in_span",
    "same_span",
    "CocycleSystem",
    "cocycle_system",
    "cocycle_defect",
    "VirtualSolution",
    "solve_virtual",
    "zagier_condition",
    "DEFAULT_HEIGHT",
]

DEFAULT_HEIGHT = 50


# -- divisors ----------------------------------------------------------------

class Divisor:
    """sum n_x [x] over rational points x not in {0, 1}."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping | None = None):
        clean: dict[Fraction, object] = {}
        for x, c in (coeffs or {}).items():
            x = as_rational(x)
            if x in (0, 1):
                raise DomainError(f"{x} cannot be in the support of a divisor")
            if isinstance(c, int):
                c = Fraction(c)
            elif isinstance(c, str):
                c = as_rational(c)
            prev = clean.get(x)
            c = c if prev is None else prev + c
            if c:
                clean[x] = c
            elif x in clean:
                del clean[x]
        self.coeffs = dict(sorted(clean.items()))

    @classmethod
    def point(cls, x, coeff=1) -> "Divisor":
        return cls({x: coeff})

    @classmethod
    def parse(cls, text: str) -> "Divisor":
        """Parse ``"6[1/3] - [1/9] + 3/2[3/4]"``."""
        s = text.replace(" ", "")
        out: dict = {}
        i = 0
        while i < len(s):
            j = s.index("[", i)
            k = s.index("]", j)
            c = s[i:j]
            if c in ("", "+"):
                c = "1"
            elif c == "-":
                c = "-1"
            elif c.endswith("*"):
                c = c[:-1]
            x = as_rational(s[j + 1:k])
            out[x] = out.get(x, Fraction(0)) + as_rational(c)
            i = k + 1
        return cls(out)

    @property
    def support(self) -> tuple[Fraction, ...]:
        return tuple(self.coeffs)

    def coefficient(self, x):
        return self.coeffs.get(as_rational(x), Fraction(0))

    def vector(self, support: Sequence) -> list:
        return [self.coefficient(x) for x in support]

    def __add__(self, other: "Divisor") -> "Divisor":
        out = dict(self.coeffs)
        for x, c in other.coeffs.items():
            out[x] = out[x] + c if x in out else c
        return Divisor(out)

    def __neg__(self):
        return Divisor({x: -c for x, c in self.coeffs.items()})

    def __sub__(self, other: "Divisor") -> "Divisor":
        return self + (-other)

    def __mul__(self, c):
        if isinstance(c, (int, Fraction, ParamPoly)):
            return Divisor({x: v * c for x, v in self.coeffs.items()})
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Divisor):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(self.coeffs))

    def __bool__(self):
        return bool(self.coeffs)

    def substitute(self, values: Mapping[str, object]) -> "Divisor":
        out = {}
        for x, c in self.coeffs.items():
            if isinstance(c, ParamPoly):
                c = c.substitute(values)
                if c.is_constant():
                    c = c.constant_term()
            out[x] = c
        return Divisor(out)

    def degree(self):
        total = Fraction(0)
        for c in self.coeffs.values():
            total = total + c
        return total

    def to_json(self) -> list[dict]:
        return [{"point": format_rational(x), "coeff": _fmt(c)} for x, c in self.coeffs.items()]

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for x, c in self.coeffs.items():
            if isinstance(c, ParamPoly):
                parts.append(f"({c})[{format_rational(x)}]")
            elif c == 1:
                parts.append(f"[{format_rational(x)}]")
            elif c == -1:
                parts.append(f"-[{format_rational(x)}]")
            else:
                parts.append(f"{format_rational(c)}[{format_rational(x)}]")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"Divisor({self})"


def _fmt(c) -> str:
    return str(c) if isinstance(c, ParamPoly) else format_rational(c)


@dataclass(frozen=True)
class GeneratorSpace:
    """M_n: the symbols log, Li_1, ..., Li_n."""

    max_li: int

    def __post_init__(self):
        if self.max_li < 1:
            raise DomainError("generator space needs max_li >= 1")

    @property
    def symbols(self) -> tuple[int, ...]:
        """0 stands for log."""
        return tuple(range(self.max_li + 1))

    def __str__(self):
        return f"M{self.max_li}"


def _space(M) -> GeneratorSpace:
    return M if isinstance(M, GeneratorSpace) else GeneratorSpace(int(M))


def li_of_divisor(k: int, xi: Divisor) -> UPeriod:
    """sum n_x Li_k(x); k = 0 means log."""
    out = UPeriod()
    for x, c in xi.coeffs.items():
        term = log_u(x) if k == 0 else li_u(k, Point.finite(x))
        out = out + term * c
    return out


# -- unramified spaces -------------------------------------------------------

def _generic_divisor(support: Sequence[Fraction], prefix: str = "c") -> tuple[Divisor, tuple[str, ...]]:
    names = tuple(f"{prefix}{i}" for i in range(len(support)))
    gens = ParamPoly.gens(*names) if names else ()
    return Divisor(dict(zip(support, gens))), names


def unramified_space(D: Iterable, M, S: Iterable[int]) -> list[Divisor]:
    """Basis of divisors on D whose M-symbols are unramified outside S.

    The basis is the reduced-echelon nullspace basis of the linear
    ramification conditions, sparsest vectors first.
    """
    M = _space(M)
    S = frozenset(S)
    support = sorted({as_rational(x) for x in D})
    for x in support:
        if x in (0, 1):
            raise DomainError(f"{x} cannot be in the support of a divisor")
        factorize(x)
        factorize(1 - x)
    if not support:
        return []
    xi, names = _generic_divisor(support)
    rows = []
    for k in M.symbols:
        for cond in ramification_conditions(li_of_divisor(k, xi), S):
            if isinstance(cond, ParamPoly):
                vec, const = cond.linear_coefficients(names)
                rows.append(vec)
    if not rows:
        rows = [[Fraction(0)] * len(support)]
    basis = nullspace(rows, cols=len(support))
    # sparsest first, so degree-one divisors lead
    order = sorted(range(len(basis)), key=lambda i: (sum(1 for c in basis[i] if c), i))
    return [Divisor(dict(zip(support, basis[i]))) for i in order]


def in_span(basis: Sequence[Divisor], xi: Divisor) -> bool:
    support = sorted(set(xi.support).union(*(b.support for b in basis)) if basis else xi.support)
    A = [b.vector(support) for b in basis]
    if not A:
        return not xi
    return rank(A + [xi.vector(support)]) == rank(A)


def same_span(a: Sequence[Divisor], b: Sequence[Divisor]) -> bool:
    return all(in_span(a, x) for x in b) and all(in_span(b, x) for x in a)


# -- cocycle systems ---------------------------------------------------------

@dataclass
class CocycleSystem:
    """Polynomial equations in the parameters of xi = sum t_i basis_i."""

    parameters: tuple[str, ...]
    basis: tuple[Divisor, ...]
    equations: tuple[ParamPoly, ...]
    max_li: int
    primes: tuple[int, ...]

    def divisor(self, values: Sequence) -> Divisor:
        out = Divisor()
        for b, v in zip(self.basis, values):
            out = out + b * as_rational(v)
        return out

    def residuals(self, values: Sequence) -> list[Fraction]:
        assign = dict(zip(self.parameters, (as_rational(v) for v in values)))
        return [e.evaluate(assign) for e in self.equations]

    def is_solution(self, values: Sequence) -> bool:
        return not any(self.residuals(values))

    def to_json(self) -> dict:
        return {
            "parameters": list(self.parameters),
            "basis": [str(b) for b in self.basis],
            "equations": [str(e) for e in self.equations],
            "max_li": self.max_li,
            "primes": list(self.primes),
        }


def cocycle_defect(m: int, xi: Divisor) -> TensorPeriod:
    """Delta' Li_m(xi) - sum_{i=1}^{m-1} Li_{m-i}(xi) (x) log(xi)^i / i!."""
    lhs = reduced_coproduct(li_of_divisor(m, xi))
    lg = li_of_divisor(0, xi)
    rhs = TensorPeriod()
    power = UPeriod.const(1)
    for i in range(1, m):
        power = power * lg
        rhs = rhs + TensorPeriod.pure(li_of_divisor(m - i, xi), power / factorial(i))
    return lhs - rhs


def cocycle_system(basis: Sequence[Divisor], M, S: Iterable[int] = (),
                   prefix: str = "t") -> CocycleSystem:
    """Equations for sum t_i basis_i to be a virtual M-cocycle."""
    M = _space(M)
    names = tuple(f"{prefix}{i + 1}" for i in range(len(basis)))
    xi = Divisor()
    for b, t in zip(basis, ParamPoly.gens(*names) if names else ()):
        xi = xi + b * t
    seen, eqs = set(), []
    for m in range(2, M.max_li + 1):
        defect = cocycle_defect(m, xi)
        for _, c in defect.sorted_terms():
            c = c if isinstance(c, ParamPoly) else ParamPoly.const(c, names)
            c = c.with_variables(names) if set(c.variables) <= set(names) else c
            c = c.primitive()
            if c and c not in seen:
                seen.add(c)
                eqs.append(c)
    return CocycleSystem(names, tuple(basis), tuple(eqs), M.max_li, tuple(sorted(set(S))))


# -- solving -----------------------------------------------------------------

def _height(x: Fraction) -> int:
    return max(abs(x.numerator), x.denominator)


def _rationals_up_to(H: int) -> list[Fraction]:
    out = {Fraction(0)}
    for d in range(1, H + 1):
        for n in range(0, H + 1):
            if gcd(n, d) == 1:
                out.add(Fraction(n, d))
                out.add(Fraction(-n, d))
    return sorted(out, key=lambda x: (_height(x), abs(x), x < 0))


def _divisors(n: int) -> list[int]:
    n = abs(n)
    if n == 0:
        return [0]
    out = [1]
    for p, e in factorize(n).exponents:
        out = [d * p ** k for d in out for k in range(e + 1)]
    return sorted(out)


def _rational_roots(coeffs: list[Fraction]) -> list[Fraction]:
    """Rational roots of sum coeffs[i] z^i."""
    while coeffs and coeffs[-1] == 0:
        coeffs = coeffs[:-1]
    if len(coeffs) <= 1:
        return []
    roots = set()
    while coeffs[0] == 0:
        roots.add(Fraction(0))
        coeffs = coeffs[1:]
        if len(coeffs) <= 1:
            return sorted(roots)
    den = 1
    for c in coeffs:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    if len(ints) == 3:
        c0, c1, c2 = ints
        disc = c1 * c1 - 4 * c2 * c0
        if disc >= 0:
            r = _isqrt_exact(disc)
            if r is not None:
                roots.update({Fraction(-c1 + r, 2 * c2), Fraction(-c1 - r, 2 * c2)})
        return sorted(roots)
    for p_ in _divisors(ints[0]):
        for q_ in _divisors(ints[-1]):
            for sgn in (1, -1):
                z = Fraction(sgn * p_, q_)
                if sum(c * z ** i for i, c in enumerate(ints)) == 0:
                    roots.add(z)
    return sorted(roots)


def _isqrt_exact(n: int) -> int | None:
    from math import isqrt
    r = isqrt(n)
    return r if r * r == n else None


@dataclass
class VirtualSolution:
    system: CocycleSystem
    status: str  # "family", "points", "none found" or "zero only"
    solutions: list[tuple[Fraction, ...]] = field(default_factory=list)
    family: ConicFamily | None = None
    height_bound: int = DEFAULT_HEIGHT

    def divisors(self) -> list[Divisor]:
        return [self.system.divisor(s) for s in self.solutions]

    def family_divisor(self, a) -> Divisor:
        if self.family is None:
            raise ValueError("no parametrized family")
        return self.system.divisor(self.family.at(a))

    def to_json(self) -> dict:
        out = {
            "status": self.status,
            "height_bound": self.height_bound,
            "system": self.system.to_json(),
            "solutions": [
                {"parameters": [format_rational(v) for v in s], "divisor": str(self.system.divisor(s))}
                for s in self.solutions
            ],
        }
        if self.family is not None:
            out["family"] = {
                "parameter": self.family.parameter,
                "numerators": [str(n) for n in self.family.numerators],
                "denominator": str(self.family.denominator),
                "base_point": [format_rational(v) for v in self.family.base_point],
            }
        return out


def _search(system: CocycleSystem, H: int, limit: int) -> list[tuple[Fraction, ...]]:
    """Nonzero solutions, fixing all but the first parameter at height <= H."""
    names = system.parameters
    r = len(names)
    eqs = [e for e in system.equations if e]
    cands = _rationals_up_to(H)
    if r > 1 and len(cands) ** (r - 1) > 400_000:
        cands = _rationals_up_to(max(1, int(400_000 ** (1 / (r - 1)) ** 0.5)))
    found = set()
    first = names[0]
    for rest in product(cands, repeat=r - 1):
        assign = dict(zip(names[1:], rest))
        reduced = [e.substitute(assign) for e in eqs]
        reduced = [e for e in reduced if e]
        if not reduced:
            continue  # first parameter free on this slice; skipped
        pivot = min(reduced, key=lambda e: (e.degree(), len(e.terms)))
        if pivot.is_constant():
            continue
        uni = pivot.with_variables((first,))
        deg = uni.degree()
        coeffs = [uni.coefficient({first: i}) for i in range(deg + 1)]
        for z in _rational_roots(coeffs):
            sol = (z,) + tuple(rest)
            if any(sol) and system.is_solution(sol):
                found.add(sol)
        if len(found) >= limit:
            break
    return sorted(found, key=lambda s: (max(_height(v) for v in s), [abs(v) for v in s[::-1]], s))


def solve_virtual(basis: Sequence[Divisor], M, S: Iterable[int] = (),
                  height_bound: int = DEFAULT_HEIGHT, limit: int = 12) -> VirtualSolution:
    """Rational virtual cocycles on the span of ``basis``.

    A single conic in two parameters is parametrized through its smallest
    nonzero rational point. Otherwise only verified points found up to the
    height bound are returned; an empty result is "none found", never a
    proof that none exist.
    """
    system = cocycle_system(basis, M, S)
    if not basis:
        return VirtualSolution(system, "zero only", [], None, height_bound)
    if not system.equations:
        return VirtualSolution(system, "points", [], None, height_bound)
    sols = _search(system, height_bound, limit)
    if not sols:
        return VirtualSolution(system, "none found", [], None, height_bound)
    family = None
    if len(system.parameters) == 2 and len(system.equations) == 1 and system.equations[0].degree() == 2:
        try:
            family = param_solve_conic(system.equations[0], sols[0])
        except UnsupportedError:
            family = None
    return VirtualSolution(system, "family" if family else "points", sols, family, height_bound)


def zagier_condition(xi: Divisor, n: int) -> bool:
    """Delta' Li_n(xi) = 0."""
    return not reduced_coproduct(li_of_divisor(n, xi))
