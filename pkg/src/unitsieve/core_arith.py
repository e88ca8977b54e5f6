"""Exact arithmetic: rationals, factorization, parameter polynomials and
rational linear algebra.

Nothing in this module touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import permutations
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

from .errors import DomainError, UnsupportedError

__all__ = [
    "Factorization",
    "ParamPoly",
    "ConicFamily",
    "as_rational",
    "parse_rational",
    "format_rational",
    "factorize",
    "is_prime",
    "rref",
    "rank",
    "nullspace",
    "det",
    "permutation_sign",
    "param_solve_conic",
]


# -- rationals ---------------------------------------------------------------

def as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot interpret {x!r} as a rational")


def parse_rational(text: str) -> Fraction:
    """Parse "a/b" or "a"; whitespace is ignored."""
    s = text.strip().replace(" ", "")
    if not s:
        raise ValueError("empty rational")
    try:
        if "/" in s:
            num, den = s.split("/")
            return Fraction(int(num), int(den))
        return Fraction(int(s))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational: {text!r}") from exc


def format_rational(x) -> str:
    x = as_rational(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


# -- factorization -----------------------------------------------------------

def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _factor_int(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@dataclass(frozen=True)
class Factorization:
    sign: int
    exponents: tuple[tuple[int, int], ...]

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.exponents)

    def as_dict(self) -> dict[int, int]:
        return dict(self.exponents)

    def valuation(self, p: int) -> int:
        return self.as_dict().get(p, 0)

    def value(self) -> Fraction:
        out = Fraction(self.sign)
        for p, e in self.exponents:
            out *= Fraction(p) ** e
        return out

    def is_unit_outside(self, primes: Iterable[int]) -> bool:
        allowed = set(primes)
        return all(p in allowed for p in self.primes)

    def __mul__(self, other: "Factorization") -> "Factorization":
        exps = self.as_dict()
        for p, e in other.exponents:
            exps[p] = exps.get(p, 0) + e
        return Factorization(
            self.sign * other.sign,
            tuple(sorted((p, e) for p, e in exps.items() if e)),
        )


def factorize(x) -> Factorization:
    """Sign and prime exponents of a nonzero rational, by trial division."""
    x = as_rational(x)
    if x == 0:
        raise DomainError("cannot factorize 0")
    exps = _factor_int(abs(x.numerator))
    for p, e in _factor_int(x.denominator).items():
        exps[p] = exps.get(p, 0) - e
    return Factorization(1 if x > 0 else -1, tuple(sorted(exps.items())))


# -- parameter polynomials ---------------------------------------------------

def _grlex_key(exps: tuple[int, ...]):
    return (sum(exps), exps)


class ParamPoly:
    """Multivariate polynomial over Q in named variables.

    Terms are kept in a dict keyed by exponent tuples aligned with
    ``variables``; zero coefficients are never stored. Printing and
    iteration use graded lex order, leading term first.
    """

    __slots__ = ("variables", "terms", "_hash")

    def __init__(self, variables: Sequence[str] = (), terms: Mapping | None = None):
        self.variables = tuple(variables)
        clean: dict[tuple[int, ...], Fraction] = {}
        for exps, c in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != len(self.variables):
                raise ValueError("exponent tuple does not match variables")
            c = as_rational(c)
            if c:
                clean[exps] = clean.get(exps, Fraction(0)) + c
                if not clean[exps]:
                    del clean[exps]
        self.terms = clean
        self._hash = None

    # construction
    @classmethod
    def const(cls, c, variables: Sequence[str] = ()) -> "ParamPoly":
        n = len(tuple(variables))
        return cls(variables, {(0,) * n: c})

    @classmethod
    def var(cls, name: str, variables: Sequence[str] | None = None) -> "ParamPoly":
        variables = tuple(variables) if variables is not None else (name,)
        if name not in variables:
            raise ValueError(f"{name} not among {variables}")
        exps = tuple(1 if v == name else 0 for v in variables)
        return cls(variables, {exps: 1})

    @classmethod
    def gens(cls, *names: str) -> tuple["ParamPoly", ...]:
        return tuple(cls.var(n, names) for n in names)

    # variable bookkeeping
    def with_variables(self, variables: Sequence[str]) -> "ParamPoly":
        variables = tuple(variables)
        if variables == self.variables:
            return self
        index = {v: i for i, v in enumerate(variables)}
        for v, e in self._used():
            if v not in index:
                raise ValueError(f"variable {v} would be dropped")
        terms = {}
        for exps, c in self.terms.items():
            new = [0] * len(variables)
            for v, e in zip(self.variables, exps):
                if e:
                    new[index[v]] = e
            terms[tuple(new)] = c
        return ParamPoly(variables, terms)

    def _used(self):
        for exps in self.terms:
            for v, e in zip(self.variables, exps):
                if e:
                    yield v, e

    def _unify(self, other):
        if isinstance(other, ParamPoly):
            if other.variables == self.variables:
                return self, other
            merged = self.variables + tuple(v for v in other.variables if v not in self.variables)
            return self.with_variables(merged), other.with_variables(merged)
        if isinstance(other, (int, Fraction)):
            return self, ParamPoly.const(other, self.variables)
        return None, None

    # ring operations
    def __add__(self, other):
        a, b = self._unify(other)
        if a is None:
            return NotImplemented
        terms = dict(a.terms)
        for exps, c in b.terms.items():
            terms[exps] = terms.get(exps, Fraction(0)) + c
        return ParamPoly(a.variables, terms)

    __radd__ = __add__

    def __neg__(self):
        return ParamPoly(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        a, b = self._unify(other)
        if a is None:
            return NotImplemented
        return a + (-b)

    def __rsub__(self, other):
        a, b = self._unify(other)
        if a is None:
            return NotImplemented
        return b + (-a)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return ParamPoly(self.variables, {e: c * other for e, c in self.terms.items()})
        a, b = self._unify(other)
        if a is None:
            return NotImplemented
        terms: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                terms[e] = terms.get(e, Fraction(0)) + c1 * c2
        return ParamPoly(a.variables, terms)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / as_rational(other))
        if isinstance(other, ParamPoly) and other.is_constant():
            return self * (Fraction(1) / other.constant_term())
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        out = ParamPoly.const(1, self.variables)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # predicates and comparison
    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * len(self.variables), Fraction(0))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_term() == other
        if not isinstance(other, ParamPoly):
            return NotImplemented
        return not (self - other).terms

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.constant_term())
            else:
                self._hash = hash(frozenset(self._canonical_terms()))
        return self._hash

    def _canonical_terms(self):
        for exps, c in self.terms.items():
            yield tuple(sorted((v, e) for v, e in zip(self.variables, exps) if e)), c

    # inspection
    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def leading_coefficient(self) -> Fraction:
        return self.sorted_terms()[0][1] if self.terms else Fraction(0)

    def homogeneous_part(self, d: int) -> "ParamPoly":
        return ParamPoly(self.variables, {e: c for e, c in self.terms.items() if sum(e) == d})

    def coefficient(self, monomial: Mapping[str, int]) -> Fraction:
        exps = tuple(monomial.get(v, 0) for v in self.variables)
        return self.terms.get(exps, Fraction(0))

    def linear_coefficients(self, variables: Sequence[str]) -> tuple[list[Fraction], Fraction]:
        """Coefficient vector and constant of an affine-linear polynomial."""
        if self.degree() > 1:
            raise ValueError("polynomial is not linear")
        vec = [self.coefficient({v: 1}) for v in variables]
        used = {v for v, _ in self._used()}
        if not used <= set(variables):
            raise ValueError("polynomial uses variables outside the given list")
        return vec, self.constant_term()

    # evaluation
    def substitute(self, values: Mapping[str, object]):
        """Replace variables by rationals or ParamPolys; others stay symbolic."""
        keep = tuple(v for v in self.variables if v not in values)
        out = ParamPoly.const(0, keep)
        for exps, c in self.terms.items():
            term = ParamPoly.const(c, keep)
            for v, e in zip(self.variables, exps):
                if not e:
                    continue
                if v in values:
                    term = term * (values[v] ** e)
                else:
                    term = term * ParamPoly.var(v, keep) ** e
            out = out + term
        return out

    def evaluate(self, values: Mapping[str, object]) -> Fraction:
        res = self.substitute({k: as_rational(v) for k, v in values.items()})
        if not res.is_constant():
            raise ValueError("not all variables were assigned")
        return res.constant_term()

    def primitive(self) -> "ParamPoly":
        """Scale to coprime integer coefficients with positive leading term."""
        if not self.terms:
            return self
        den = reduce(lcm, (c.denominator for c in self.terms.values()), 1)
        num = reduce(gcd, (c.numerator for c in self.terms.values()), 0)
        scale = Fraction(den, num)
        if self.leading_coefficient() < 0:
            scale = -scale
        return self * scale

    # printing
    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exps, c in self.sorted_terms():
            mono = "*".join(
                v if e == 1 else f"{v}^{e}" for v, e in zip(self.variables, exps) if e
            )
            mag = abs(c)
            if not mono:
                body = format_rational(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{format_rational(mag)}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"ParamPoly({str(self)!r}, variables={self.variables})"


# -- linear algebra ----------------------------------------------------------

def _to_fraction_rows(M) -> list[list[Fraction]]:
    return [[as_rational(x) for x in row] for row in M]


def rref(M) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    A = _to_fraction_rows(M)
    if not A:
        return [], []
    rows, cols = len(A), len(A[0])
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if A[i][c]), None)
        if pivot is None:
            continue
        A[r], A[pivot] = A[pivot], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(rows):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return A, pivots


def rank(M) -> int:
    return len(rref(M)[1])


def nullspace(M, cols: int | None = None) -> list[list[Fraction]]:
    """Basis of {v : Mv = 0}, returned in reduced echelon form.

    The basis vectors, stacked as rows, form a matrix in reduced row
    echelon form: each starts with a 1 and has zeros above the other
    leading ones. ``cols`` is needed only when M has no rows.
    """
    A = _to_fraction_rows(M)
    n = len(A[0]) if A else cols
    if n is None:
        raise ValueError("column count unknown for an empty matrix")
    R, pivots = rref(A) if A else ([], [])
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, pc in zip(R, pivots):
            v[pc] = -row[f]
        basis.append(v)
    if not basis:
        return []
    normal, _ = rref(basis)
    return [row for row in normal if any(row)]


def permutation_sign(perm: Sequence[int]) -> int:
    sign, seen = 1, [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def det(M):
    """Determinant over any commutative ring of Python numbers.

    Rational matrices use Gaussian elimination; anything else (ParamPoly,
    period symbols, p-adic numbers) falls back to the Leibniz expansion,
    which is fine for the small sizes used here.
    """
    n = len(M)
    if any(len(row) != n for row in M):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return Fraction(1)
    if all(isinstance(x, (int, Fraction)) for row in M for x in row):
        A = _to_fraction_rows(M)
        out = Fraction(1)
        for c in range(n):
            pivot = next((i for i in range(c, n) if A[i][c]), None)
            if pivot is None:
                return Fraction(0)
            if pivot != c:
                A[c], A[pivot] = A[pivot], A[c]
                out = -out
            out *= A[c][c]
            for i in range(c + 1, n):
                if A[i][c]:
                    f = A[i][c] / A[c][c]
                    A[i] = [x - f * y for x, y in zip(A[i], A[c])]
        return out
    total = None
    for perm in permutations(range(n)):
        term = M[0][perm[0]]
        for i in range(1, n):
            term = term * M[i][perm[i]]
        if permutation_sign(perm) < 0:
            term = -term
        total = term if total is None else total + term
    return total


# -- conics ------------------------------------------------------------------

@dataclass(frozen=True)
class ConicFamily:
    """Rational parametrization (n1(a)/d(a), n2(a)/d(a)) of a conic."""

    variables: tuple[str, str]
    parameter: str
    numerators: tuple[ParamPoly, ParamPoly]
    denominator: ParamPoly
    base_point: tuple[Fraction, Fraction]
    base_parameter: Fraction

    def at(self, a) -> tuple[Fraction, Fraction]:
        a = as_rational(a)
        d = self.denominator.evaluate({self.parameter: a})
        if d == 0:
            raise DomainError(f"parameter {a} is a pole of the family")
        return tuple(n.evaluate({self.parameter: a}) / d for n in self.numerators)

    def compose(self, q: ParamPoly) -> ParamPoly:
        """q evaluated on the family, cleared of the denominator d(a)^2."""
        x, y = self.variables
        n1, n2 = self.numerators
        d = self.denominator
        out = ParamPoly.const(0, (self.parameter,))
        for exps, c in q.with_variables(self.variables).terms.items():
            i, j = exps
            out = out + c * n1 ** i * n2 ** j * d ** (2 - i - j)
        return out

    def __str__(self):
        n1, n2 = self.numerators
        return f"({n1})/({self.denominator}), ({n2})/({self.denominator})"


def _conic_matrix(q: ParamPoly) -> list[list[Fraction]]:
    x, y = q.variables
    c = q.coefficient
    half = Fraction(1, 2)
    return [
        [c({x: 2}), half * c({x: 1, y: 1}), half * c({x: 1})],
        [half * c({x: 1, y: 1}), c({y: 2}), half * c({y: 1})],
        [half * c({x: 1}), half * c({y: 1}), c({})],
    ]


def param_solve_conic(q: ParamPoly, pt, parameter: str = "a") -> ConicFamily:
    """Parametrize the conic q = 0 by lines through the rational point pt.

    The direction of the sweeping line is T + a*N where T is tangent to the
    conic at pt and N is along the gradient, both scaled by the first
    nonzero gradient entry. The family passes through pt at a = 0.
    """
    if len(q.variables) != 2:
        raise UnsupportedError("conic must be in exactly two variables")
    if q.degree() != 2:
        raise UnsupportedError("polynomial is not a quadric")
    x, y = q.variables
    p0 = (as_rational(pt[0]), as_rational(pt[1]))
    if q.evaluate({x: p0[0], y: p0[1]}) != 0:
        raise DomainError(f"point {p0} is not on the conic")
    if det(_conic_matrix(q)) == 0:
        raise UnsupportedError("degenerate conic")
    gx = q.coefficient({x: 2}) * 2 * p0[0] + q.coefficient({x: 1, y: 1}) * p0[1] + q.coefficient({x: 1})
    gy = q.coefficient({y: 2}) * 2 * p0[1] + q.coefficient({x: 1, y: 1}) * p0[0] + q.coefficient({y: 1})
    scale = gx if gx else gy
    # gradient vanishes only at a singular point, excluded by the rank test
    a = ParamPoly.var(parameter)
    dx = -gy / scale - a * (gx / scale)
    dy = gx / scale - a * (gy / scale)
    q2 = q.homogeneous_part(2)
    quad = (q2.coefficient({x: 2}) * dx * dx
            + q2.coefficient({x: 1, y: 1}) * dx * dy
            + q2.coefficient({y: 2}) * dy * dy)
    lin = gx * dx + gy * dy
    if not quad:
        raise UnsupportedError("sweeping direction is asymptotic for every parameter")
    n1 = p0[0] * quad - lin * dx
    n2 = p0[1] * quad - lin * dy
    return ConicFamily((x, y), parameter, (n1, n2), quad, p0, Fraction(0))
