"""Symbolic unipotent periods over Q.

The ring is a polynomial algebra over Q on three families of generators:

* ``L(p)``     the logarithm of a prime p, degree 1;
* ``Z(m)``     an odd zeta value, m >= 3, degree m;
* ``Li(n;x)``  a formal polylogarithm at a rational point x, n >= 2, degree n.

Degrees are halved weights: the period of weight 2n has degree n.
Weight-one symbols always resolve into ``L(p)`` terms, signs being torsion.
Polylogarithms at distinct points are algebraically independent here; no
distribution or inversion relations are imposed, so conditions derived at
degree >= 3 are sufficient rather than necessary.

Two further generator kinds carry iterated integrals that have no closed
form in the families above: ``I(x;w;0)`` for a word w from 0 to a point x,
and ``I(0;w;1)`` for a zeta-type integral. Words are written innermost
letter first, so ``Li_n(x) = I(x;10...0;0)``. They appear only as outputs
of :func:`goncharov_D`.

Coefficients may be rationals or :class:`ParamPoly`, so that linear and
quadratic conditions on divisor coefficients come out of the same code.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterable, Iterator, Mapping, Sequence, Union

from .core_arith import ParamPoly, as_rational, factorize, format_rational, is_prime
from .errors import DomainError, UnsupportedError

__all__ = [
    "Point",
    "UPeriod",
    "TensorPeriod",
    "gen_log",
    "gen_zeta",
    "gen_li",
    "gen_name",
    "gen_degree",
    "log_u",
    "log_point",
    "li_u",
    "coproduct",
    "reduced_coproduct",
    "infinitesimal_coaction",
    "project_indecomposables",
    "nu",
    "sigma",
    "ramification_conditions",
    "unramified_outside",
    "goncharov_D",
    "iterated_from_zero",
    "coproduct_left",
    "coproduct_right",
]

Coeff = Union[Fraction, ParamPoly]


# -- points ------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class Point:
    """A rational point of P^1 minus {0, 1, inf}, or a tangential base point.

    ``kind`` is ``"finite"``, ``"tangential"`` (a tangent vector ``value``
    at infinity) or ``"base"`` (the unit tangent vector at 0).
    """

    kind: str
    value: Fraction = Fraction(0)

    @staticmethod
    def finite(x) -> "Point":
        x = as_rational(x)
        if x in (0, 1):
            raise DomainError(f"{x} is not a point of P^1 minus 0, 1, infinity")
        return Point("finite", x)

    @staticmethod
    def tangential(c) -> "Point":
        c = as_rational(c)
        if c == 0:
            raise DomainError("tangent vector must be nonzero")
        return Point("tangential", c)

    @staticmethod
    def base() -> "Point":
        return Point("base", Fraction(0))

    @staticmethod
    def parse(text: str) -> "Point":
        """``"a/b"`` for a finite point, ``"tinf:c"`` for a tangent vector c at infinity."""
        s = text.strip()
        if s.startswith("tinf:"):
            return Point.tangential(as_rational(s[5:]))
        if s == "base":
            return Point.base()
        return Point.finite(as_rational(s))

    @property
    def is_finite(self) -> bool:
        return self.kind == "finite"

    def __str__(self):
        if self.kind == "finite":
            return format_rational(self.value)
        if self.kind == "tangential":
            return f"tinf:{format_rational(self.value)}"
        return "base"


def _as_point(pt) -> Point:
    if isinstance(pt, Point):
        return pt
    if isinstance(pt, str):
        return Point.parse(pt)
    return Point.finite(pt)


# -- generators --------------------------------------------------------------
# Generators are tuples so that they hash and compare quickly:
#   ("L", p) | ("Z", m) | ("Li", n, x) | ("I", end, word, base)

_RANK = {"L": 0, "Z": 1, "Li": 2, "I": 3}


def gen_log(p: int) -> tuple:
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    return ("L", p)


def gen_zeta(m: int) -> tuple:
    if m < 3 or m % 2 == 0:
        raise DomainError("zeta generators need odd m >= 3")
    return ("Z", m)


def gen_li(n: int, x) -> tuple:
    if n < 2:
        raise DomainError("formal polylogarithm generators start at n = 2")
    return ("Li", n, _as_point(x).value)


def _gen_key(g):
    if g[0] == "I":
        return (3, str(g[1]), len(g[2]), g[2], str(g[3]))
    return (_RANK[g[0]],) + tuple(g[1:])


def gen_degree(g) -> int:
    kind = g[0]
    if kind == "L":
        return 1
    if kind in ("Z", "Li"):
        return g[1]
    return len(g[2])


def gen_name(g) -> str:
    kind = g[0]
    if kind == "L":
        return f"L({g[1]})"
    if kind == "Z":
        return f"Z({g[1]})"
    if kind == "Li":
        return f"Li({g[1]};{format_rational(g[2])})"
    return f"I({_label(g[1])};{g[2]};{_label(g[3])})"


def _label(v) -> str:
    return format_rational(v) if isinstance(v, (int, Fraction)) else str(v)


# monomials are sorted tuples of (generator, exponent)

def _mono_mul(a: tuple, b: tuple) -> tuple:
    if not a:
        return b
    if not b:
        return a
    exps: dict = dict(a)
    for g, e in b:
        exps[g] = exps.get(g, 0) + e
    return tuple(sorted(exps.items(), key=lambda t: _gen_key(t[0])))


def _mono_degree(m: tuple) -> int:
    return sum(gen_degree(g) * e for g, e in m)


def _mono_name(m: tuple) -> str:
    if not m:
        return "1"
    return "*".join(gen_name(g) if e == 1 else f"{gen_name(g)}^{e}" for g, e in m)


def _mono_sort_key(m: tuple):
    return (_mono_degree(m), tuple((_gen_key(g), e) for g, e in m))


def _coeff_str(c) -> str:
    if isinstance(c, ParamPoly):
        return f"({c})"
    return format_rational(c)


def _coeff_json(c) -> str:
    return str(c) if isinstance(c, ParamPoly) else format_rational(c)


# -- UPeriod -----------------------------------------------------------------

class UPeriod:
    """Polynomial in period generators with rational or ParamPoly coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple, Coeff] | None = None):
        clean: dict[tuple, Coeff] = {}
        for m, c in (terms or {}).items():
            if isinstance(c, int):
                c = Fraction(c)
            if c:
                prev = clean.get(m)
                c = c if prev is None else prev + c
                if c:
                    clean[m] = c
                else:
                    del clean[m]
        self.terms = clean

    @classmethod
    def const(cls, c) -> "UPeriod":
        return cls({(): c})

    @classmethod
    def gen(cls, g, coeff=1) -> "UPeriod":
        return cls({((g, 1),): coeff})

    @classmethod
    def zero(cls) -> "UPeriod":
        return cls()

    # arithmetic
    def __add__(self, other):
        other = _lift(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out[m] + c if m in out else c
        return UPeriod(out)

    __radd__ = __add__

    def __neg__(self):
        return UPeriod({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = _lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _lift(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, ParamPoly)):
            return UPeriod({m: c * other for m, c in self.terms.items()})
        if not isinstance(other, UPeriod):
            return NotImplemented
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                c = c1 * c2
                out[m] = out[m] + c if m in out else c
        return UPeriod(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / as_rational(other))
        return NotImplemented

    def __pow__(self, k: int):
        out = UPeriod.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        other = _lift(other)
        if other is None:
            return NotImplemented
        return not (self - other).terms

    def __hash__(self):
        return hash(frozenset((m, c) for m, c in self.terms.items()))

    # inspection
    def degree(self) -> int:
        return max((_mono_degree(m) for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({_mono_degree(m) for m in self.terms}) <= 1

    def homogeneous_part(self, d: int) -> "UPeriod":
        return UPeriod({m: c for m, c in self.terms.items() if _mono_degree(m) == d})

    def constant_term(self) -> Coeff:
        return self.terms.get((), Fraction(0))

    def coefficient(self, monomial: tuple) -> Coeff:
        return self.terms.get(monomial, Fraction(0))

    def coefficients(self) -> list[Coeff]:
        return [c for _, c in self.sorted_terms()]

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: _mono_sort_key(t[0]))

    def generators(self) -> set:
        return {g for m in self.terms for g, _ in m}

    def is_parametric(self) -> bool:
        return any(isinstance(c, ParamPoly) and not c.is_constant() for c in self.terms.values())

    def map_coefficients(self, f) -> "UPeriod":
        return UPeriod({m: f(c) for m, c in self.terms.items()})

    def substitute(self, values: Mapping[str, object]) -> "UPeriod":
        def sub(c):
            if isinstance(c, ParamPoly):
                r = c.substitute(values)
                return r.constant_term() if r.is_constant() else r
            return c
        return self.map_coefficients(sub)

    def to_json(self) -> list[dict]:
        out = []
        for m, c in self.sorted_terms():
            gens = []
            for g, e in m:
                gens.extend([gen_name(g)] * e)
            out.append({"gens": gens, "coeff": _coeff_json(c)})
        return out

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            if not m:
                parts.append(_coeff_str(c))
            elif c == 1:
                parts.append(_mono_name(m))
            elif c == -1:
                parts.append("-" + _mono_name(m))
            else:
                parts.append(f"{_coeff_str(c)}*{_mono_name(m)}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"UPeriod({self})"


def _lift(x):
    if isinstance(x, UPeriod):
        return x
    if isinstance(x, (int, Fraction, ParamPoly)):
        return UPeriod.const(x)
    return None


# -- TensorPeriod ------------------------------------------------------------

class TensorPeriod:
    """Finite sum of monomial tensors with rational or ParamPoly coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[tuple, tuple], Coeff] | None = None):
        clean: dict = {}
        for k, c in (terms or {}).items():
            if isinstance(c, int):
                c = Fraction(c)
            if c:
                prev = clean.get(k)
                c = c if prev is None else prev + c
                if c:
                    clean[k] = c
                else:
                    del clean[k]
        self.terms = clean

    @classmethod
    def pure(cls, left: UPeriod, right: UPeriod) -> "TensorPeriod":
        left, right = _lift(left), _lift(right)
        out: dict = {}
        for m1, c1 in left.terms.items():
            for m2, c2 in right.terms.items():
                k = (m1, m2)
                c = c1 * c2
                out[k] = out[k] + c if k in out else c
        return cls(out)

    def __add__(self, other: "TensorPeriod"):
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return TensorPeriod(out)

    def __neg__(self):
        return TensorPeriod({k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "TensorPeriod"):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, ParamPoly)):
            return TensorPeriod({k: c * other for k, c in self.terms.items()})
        if not isinstance(other, TensorPeriod):
            return NotImplemented
        out: dict = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                k = (_mono_mul(a1, a2), _mono_mul(b1, b2))
                c = c1 * c2
                out[k] = out[k] + c if k in out else c
        return TensorPeriod(out)

    __rmul__ = __mul__

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, TensorPeriod):
            return NotImplemented
        return not (self - other).terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def degrees(self) -> set[tuple[int, int]]:
        return {(_mono_degree(a), _mono_degree(b)) for a, b in self.terms}

    def total_degrees(self) -> set[int]:
        return {a + b for a, b in self.degrees()}

    def coefficients(self) -> list[Coeff]:
        return [c for _, c in self.sorted_terms()]

    def sorted_terms(self):
        return sorted(self.terms.items(),
                      key=lambda t: (_mono_sort_key(t[0][0]), _mono_sort_key(t[0][1])))

    def right_slice(self, right_monomial: tuple) -> UPeriod:
        """Left factor paired with a given right monomial."""
        return UPeriod({a: c for (a, b), c in self.terms.items() if b == right_monomial})

    def map_right(self, f) -> "TensorPeriod":
        out = TensorPeriod()
        for (a, b), c in self.terms.items():
            out = out + TensorPeriod.pure(UPeriod({a: c}), f(UPeriod({b: 1})))
        return out

    def to_json(self) -> list[dict]:
        def names(m):
            out = []
            for g, e in m:
                out.extend([gen_name(g)] * e)
            return out
        return [{"left": names(a), "right": names(b), "coeff": _coeff_json(c)}
                for (a, b), c in self.sorted_terms()]

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (a, b), c in self.sorted_terms():
            body = f"{_mono_name(a)} ⊗ {_mono_name(b)}"
            if c == 1:
                parts.append(body)
            elif c == -1:
                parts.append("-" + body)
            else:
                parts.append(f"{_coeff_str(c)}*{body}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"TensorPeriod({self})"


# -- resolution of weight-one symbols and tangential points ------------------

def log_u(x) -> UPeriod:
    """Sum of v_p(x) L(p); the sign of x is torsion and dropped."""
    x = as_rational(x)
    if x == 0:
        raise DomainError("log of 0")
    f = factorize(x)
    return UPeriod({((("L", p), 1),): e for p, e in f.exponents})


def log_point(pt) -> UPeriod:
    pt = _as_point(pt)
    if pt.kind == "base":
        return UPeriod()
    return log_u(pt.value)


def li_u(n: int, pt) -> UPeriod:
    """Unipotent Li_n at a point.

    Li_1(x) = -log(1 - x). At a tangent vector c at infinity,
    Li_n = log(c)^n / n!, extending the prime case to any rational c.
    """
    if n < 0:
        raise DomainError("polylogarithm index must be nonnegative")
    pt = _as_point(pt)
    if n == 0:
        return UPeriod.const(1)
    if pt.kind == "base":
        return UPeriod()
    if pt.kind == "tangential":
        return log_u(pt.value) ** n / factorial(n)
    if n == 1:
        return -log_u(1 - pt.value)
    return UPeriod.gen(gen_li(n, pt))


# -- coproducts --------------------------------------------------------------

@lru_cache(maxsize=4096)
def _coproduct_gen(g) -> TensorPeriod:
    kind = g[0]
    one = UPeriod.const(1)
    if kind in ("L", "Z"):
        x = UPeriod.gen(g)
        return TensorPeriod.pure(x, one) + TensorPeriod.pure(one, x)
    if kind == "Li":
        n, x = g[1], g[2]
        out = TensorPeriod.pure(one, UPeriod.gen(g))
        lg = log_u(x)
        power = one
        for i in range(n):
            left = li_u(n - i, Point.finite(x))
            out = out + TensorPeriod.pure(left, power / factorial(i))
            power = power * lg
        return out
    raise UnsupportedError(f"no coproduct formula for {gen_name(g)}")


def coproduct(xi: UPeriod) -> TensorPeriod:
    """Full coproduct, an algebra morphism; L and Z are primitive."""
    xi = _lift(xi)
    out = TensorPeriod()
    for m, c in xi.terms.items():
        t = TensorPeriod({((), ()): c})
        for g, e in m:
            dg = _coproduct_gen(g)
            for _ in range(e):
                t = t * dg
        out = out + t
    return out


def reduced_coproduct(xi: UPeriod) -> TensorPeriod:
    """Delta - id(x)1 - 1(x)id on the positive-degree part; constants go to 0."""
    xi = _lift(xi)
    pos = UPeriod({m: c for m, c in xi.terms.items() if m})
    one = UPeriod.const(1)
    return coproduct(pos) - TensorPeriod.pure(pos, one) - TensorPeriod.pure(one, pos)


def project_indecomposables(xi: UPeriod) -> UPeriod:
    """Projection modulo products: keep single-generator monomials only."""
    return UPeriod({m: c for m, c in _lift(xi).terms.items() if len(m) == 1 and m[0][1] == 1})


def infinitesimal_coaction(xi: UPeriod) -> TensorPeriod:
    """D = (id (x) pi) Delta. Contains the term 1 (x) pi(xi)."""
    xi = _lift(xi)
    out = TensorPeriod()
    for m, c in xi.terms.items():
        if not m:
            continue
        # D is a derivation: D(g1...gk) = sum over one factor sent to the right
        for idx, (g, e) in enumerate(m):
            rest = list(m)
            if e == 1:
                rest.pop(idx)
            else:
                rest[idx] = (g, e - 1)
            rest_mono = tuple(rest)
            for (a, b), cg in _coproduct_gen(g).terms.items():
                if len(b) == 1 and b[0][1] == 1:
                    k = (_mono_mul(rest_mono, a), b)
                    out = out + TensorPeriod({k: c * cg * e})
    return out


def coproduct_left(t: TensorPeriod) -> dict:
    """(Delta (x) id) applied to a tensor, as {(m1, m2, m3): coeff}."""
    out: dict = {}
    for (a, b), c in t.terms.items():
        for (a1, a2), c1 in coproduct(UPeriod({a: 1})).terms.items():
            k = (a1, a2, b)
            out[k] = out.get(k, 0) + c * c1
    return {k: v for k, v in out.items() if v}


def coproduct_right(t: TensorPeriod) -> dict:
    """(id (x) Delta) applied to a tensor, as {(m1, m2, m3): coeff}."""
    out: dict = {}
    for (a, b), c in t.terms.items():
        for (b1, b2), c1 in coproduct(UPeriod({b: 1})).terms.items():
            k = (a, b1, b2)
            out[k] = out.get(k, 0) + c * c1
    return {k: v for k, v in out.items() if v}


# -- derivations and ramification --------------------------------------------

def nu(q: int, xi: UPeriod) -> UPeriod:
    """Left factor of D(xi) paired with L(q)."""
    return infinitesimal_coaction(xi).right_slice(((("L", q), 1),))


def sigma(m: int, xi: UPeriod) -> UPeriod:
    """Left factor of D(xi) paired with Z(m)."""
    return infinitesimal_coaction(xi).right_slice(((("Z", m), 1),))


def _slices(xi: UPeriod) -> Iterator[tuple[tuple, UPeriod]]:
    D = infinitesimal_coaction(xi)
    by_right: dict = {}
    for (a, b), c in D.terms.items():
        g = b[0][0]
        if g[0] in ("L", "Z"):
            by_right.setdefault(g, {})[a] = c
    for g in sorted(by_right, key=_gen_key):
        yield g, UPeriod(by_right[g])


def ramification_conditions(xi: UPeriod, S: Iterable[int]) -> list[Coeff]:
    """Coefficients that must vanish for xi to be unramified outside S.

    The test is recursive: every L(q)-slice with q outside S must vanish,
    and the L(p)-slices (p in S) and Z(m)-slices must themselves be
    unramified. Slices against formal polylogarithm symbols are ignored.
    The conditions are linear in the coefficients of xi.
    """
    S = frozenset(S)
    out: list = []

    def walk(x: UPeriod):
        for g, piece in _slices(x):
            if g[0] == "L" and g[1] not in S:
                out.extend(piece.coefficients())
            else:
                walk(piece)

    walk(_lift(xi))
    return out


def unramified_outside(xi: UPeriod, S: Iterable[int]):
    """True/False for rational xi; the nonzero conditions for parametric xi."""
    conds = ramification_conditions(xi, S)
    if _lift(xi).is_parametric():
        seen, uniq = set(), []
        for c in conds:
            c = c if isinstance(c, ParamPoly) else ParamPoly.const(c)
            c = c.primitive()
            if c and c not in seen:
                seen.add(c)
                uniq.append(c)
        return uniq
    return not any(conds)


# -- iterated integrals and the Goncharov formula ----------------------------

def iterated_from_zero(x, letters: str) -> UPeriod:
    """I(x; a_1 ... a_N; 0) with a_1 next to x, resolved where possible.

    Constant words are shuffle powers of log(x) or Li_1(x); the word with a
    single 1 next to 0 is Li_N(x). Anything else stays a formal symbol.
    """
    pt = _as_point(x)
    word = letters[::-1]  # innermost letter first
    n = len(word)
    if n == 0:
        return UPeriod.const(1)
    if set(word) == {"0"}:
        return log_point(pt) ** n / factorial(n)
    if set(word) == {"1"}:
        return li_u(1, pt) ** n / factorial(n)
    if word == "1" + "0" * (n - 1):
        return li_u(n, pt)
    if not pt.is_finite:
        raise UnsupportedError(f"no resolution of word {word} at {pt}")
    return UPeriod.gen(("I", pt.value, word, 0))


def _pi_zeta(a: str, letters: str, b: str) -> UPeriod:
    """pi(I(a; letters; b)) for a, b in {0, 1}."""
    n = len(letters)
    if n == 0 or a == b or len(set(letters)) == 1:
        return UPeriod()
    if n % 2 == 0:
        # no indecomposables of even degree over Q
        return UPeriod()
    sign = 1
    if a == "1":
        # path reversal: I(1; w; 0) = (-1)^|w| I(0; reversed w; 1)
        letters = letters[::-1]
        sign = -1 if n % 2 else 1
    return UPeriod.gen(("I", 0, letters[::-1], 1), sign)


def _pi_from_point(x: Point, letters: str, b: str) -> UPeriod:
    """pi(I(x; letters; b)) for b in {0, 1}, by composing paths through 0."""
    head = project_indecomposables(iterated_from_zero(x, letters))
    if b == "0":
        return head
    return head + _pi_zeta("0", letters, "1")


def goncharov_D(word: str, endpoint) -> TensorPeriod:
    """Infinitesimal coaction of Li_word(x) = I(x; word; 0) by the double sum.

    ``word`` is written innermost letter first (``"10"`` is Li_2). The
    formula runs over a_1 ... a_N = reversed(word) with a_{N+1} = 0.
    """
    if not word:
        raise DomainError("empty word")
    if any(ch not in "01" for ch in word):
        raise DomainError(f"word {word!r} has letters outside '01'")
    x = _as_point(endpoint)
    a = " " + word[::-1] + "0"  # 1-based a_1 .. a_{N+1}
    N = len(word)
    out = TensorPeriod()
    for i in range(1, N + 1):
        for j in range(i + 1, N + 2):
            right = _pi_zeta(a[i], a[i + 1:j], a[j])
            if not right:
                continue
            left = iterated_from_zero(x, a[1:i + 1] + a[j:N + 1])
            out = out + TensorPeriod.pure(left, right)
    for j in range(1, N + 2):
        right = _pi_from_point(x, a[1:j], a[j])
        if not right:
            continue
        left = iterated_from_zero(x, a[j:N + 1])
        out = out + TensorPeriod.pure(left, right)
    return out
