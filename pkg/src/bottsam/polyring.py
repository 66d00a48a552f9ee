"""Exact sparse multivariate polynomials over Z in the simple-root variables.

A ``Poly`` maps exponent tuples to nonzero integer coefficients; the zero
polynomial is the empty map.  Grading convention: polynomial degree ``d``
corresponds to cohomological degree ``2d``, and the zero polynomial counts
as homogeneous of degree 0.

``RatFn`` is the restricted fraction field the triangular inversions need:
the denominator is a multiset of positive-root linear forms, kept factored.
Every denominator the pipeline produces is a product of roots, so reduction
to lowest terms only ever requires exact division by linear forms and no
general multivariate GCD is implemented.  Because root vectors are primitive,
divisibility by these forms is the same over Z, Z[1/2] and Q (Gauss), which
is why all intermediate arithmetic can stay over Z.

Canonical printing uses graded lexicographic order with a1 > a2 > ...
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import Char2Forbidden, ConfigurationError, NotDivisible, NotHomogeneous
from .rootsys import Root, RootDatum, render_root

Monomial = tuple[int, ...]


def _grlex(mono: Monomial) -> tuple:
    return (sum(mono), mono)


class Poly:
    """Sparse integer polynomial in n variables (immutable by convention)."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: dict[Monomial, int] | None = None):
        self.n = n
        self.terms = {m: c for m, c in (terms or {}).items() if c != 0}

    # -- constructors ----------------------------------------------------

    @staticmethod
    def zero(n: int) -> "Poly":
        return Poly(n, {})

    @staticmethod
    def const(n: int, c: int) -> "Poly":
        return Poly(n, {(0,) * n: c})

    @staticmethod
    def variable(n: int, i: int) -> "Poly":
        """The degree-1 monomial a_i (1-based)."""
        return Poly(n, {tuple(int(j == i - 1) for j in range(n)): 1})

    # -- predicates -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def constant_value(self) -> int:
        """The value of a constant polynomial (degree-0 terms only)."""
        if not self.terms:
            return 0
        ((mono, coeff),) = self.terms.items()
        if any(mono):
            raise NotHomogeneous(f"{self} is not a constant")
        return coeff

    # -- arithmetic --------------------------------------------------------

    def _check(self, other: "Poly") -> None:
        if self.n != other.n:
            raise ConfigurationError("polynomials over different variable counts")

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Poly(self.n, out)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __neg__(self) -> "Poly":
        return Poly(self.n, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other: "Poly | int") -> "Poly":
        if isinstance(other, int):
            if other == 0:
                return Poly.zero(self.n)
            return Poly(self.n, {m: c * other for m, c in self.terms.items()})
        self._check(other)
        out: dict[Monomial, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    del out[m]
        return Poly(self.n, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        out = Poly.const(self.n, 1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Poly) and self.n == other.n and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.n, tuple(sorted(self.terms.items()))))

    # -- degrees -----------------------------------------------------------

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=0)

    def homogeneous_degree(self) -> int:
        """Common degree of all monomials; 0 for the zero polynomial."""
        degs = {sum(m) for m in self.terms}
        if not degs:
            return 0
        if len(degs) > 1:
            raise NotHomogeneous(f"mixed degrees {sorted(degs)} in {self}")
        return degs.pop()

    # -- rendering -----------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms, key=_grlex, reverse=True):
            coeff = self.terms[mono]
            factors = []
            for i, e in enumerate(mono, start=1):
                if e == 1:
                    factors.append(f"a{i}")
                elif e > 1:
                    factors.append(f"a{i}^{e}")
            body = "*".join(factors)
            mag = abs(coeff)
            if not body:
                text = str(mag)
            elif mag == 1:
                text = body
            else:
                text = f"{mag}*{body}"
            parts.append(("-" if coeff < 0 else "+", text))
        sign0, text0 = parts[0]
        out = ("-" if sign0 == "-" else "") + text0
        for sign, text in parts[1:]:
            out += f" {sign} {text}"
        return out

    __repr__ = __str__

    def to_json(self) -> dict[str, int]:
        """{"e1,e2,...": coeff} with keys in descending grlex order."""
        return {",".join(map(str, m)): self.terms[m]
                for m in sorted(self.terms, key=_grlex, reverse=True)}


def linear_form(root: Root) -> Poly:
    """The degree-1 polynomial whose coefficients are the root's coordinates."""
    n = len(root)
    return Poly(n, {tuple(int(j == i) for j in range(n)): c
                    for i, c in enumerate(root) if c != 0})


def exact_divide(f: Poly, g: Poly) -> Poly:
    """Return q with f = q*g, or raise NotDivisible."""
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if f.is_zero():
        return Poly.zero(f.n)
    f._check(g)
    glt = max(g.terms, key=_grlex)
    glc = g.terms[glt]
    rem = dict(f.terms)
    quot: dict[Monomial, int] = {}
    while rem:
        flt = max(rem, key=_grlex)
        flc = rem[flt]
        if any(a < b for a, b in zip(flt, glt)) or flc % glc:
            raise NotDivisible(f"({f}) is not divisible by ({g})")
        mono = tuple(a - b for a, b in zip(flt, glt))
        c = flc // glc
        quot[mono] = c
        for gm, gc in g.terms.items():
            m = tuple(a + b for a, b in zip(mono, gm))
            s = rem.get(m, 0) - c * gc
            if s:
                rem[m] = s
            else:
                rem.pop(m, None)
    return Poly(f.n, quot)


def divides(g: Poly, f: Poly) -> bool:
    try:
        exact_divide(f, g)
        return True
    except NotDivisible:
        return False


def divides_power(f: Poly, alpha: Root, m: int) -> bool:
    """True iff the linear form of alpha, to the power m, divides f exactly."""
    if m <= 0 or f.is_zero():
        return True
    form = linear_form(alpha)
    cur = f
    for _ in range(m):
        try:
            cur = exact_divide(cur, form)
        except NotDivisible:
            return False
    return True


# -- coefficient fields ------------------------------------------------------


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    """A coefficient field: the rationals (characteristic 0) or F_p."""

    characteristic: int

    def __post_init__(self):
        if self.characteristic != 0 and not _is_prime(self.characteristic):
            raise ConfigurationError(
                f"characteristic must be 0 or prime, got {self.characteristic}")

    def check(self, datum: RootDatum) -> None:
        """Enforce the coefficient rule: char 2 is forbidden with a C component."""
        if self.characteristic == 2 and datum.has_C_component():
            raise Char2Forbidden(
                "characteristic 2 is not allowed for root data with a type-C component")

    def reduce_int(self, c: int) -> int:
        return c % self.characteristic if self.characteristic else c

    def __str__(self) -> str:
        return "Q" if self.characteristic == 0 else f"F{self.characteristic}"


def reduce_mod(f: Poly, k: FieldSpec, datum: RootDatum | None = None) -> Poly:
    """Reduce coefficients into k; with a datum supplied, the char-2 guard runs."""
    if datum is not None:
        k.check(datum)
    if k.characteristic == 0:
        return f
    return Poly(f.n, {m: c % k.characteristic for m, c in f.terms.items()})


# -- Laurent polynomials in v -------------------------------------------------


@dataclass(frozen=True)
class LaurentV:
    """A finitely supported Laurent polynomial in v with integer coefficients."""

    coeffs: tuple[tuple[int, int], ...]  # sorted (exponent, coefficient) pairs

    @staticmethod
    def from_dict(d: dict[int, int]) -> "LaurentV":
        return LaurentV(tuple(sorted((e, c) for e, c in d.items() if c != 0)))

    @staticmethod
    def zero() -> "LaurentV":
        return LaurentV(())

    def as_dict(self) -> dict[int, int]:
        return dict(self.coeffs)

    def __add__(self, other: "LaurentV") -> "LaurentV":
        d = self.as_dict()
        for e, c in other.coeffs:
            d[e] = d.get(e, 0) + c
        return LaurentV.from_dict(d)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for e, c in sorted(self.coeffs, reverse=True):
            if e == 0:
                body = str(abs(c))
            else:
                power = "v" if e == 1 else f"v^{e}"
                body = power if abs(c) == 1 else f"{abs(c)}*{power}"
            parts.append(("-" if c < 0 else "+", body))
        sign0, body0 = parts[0]
        out = ("-" if sign0 == "-" else "") + body0
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


# -- restricted fractions ------------------------------------------------------


def _den_mul(a: dict[Root, int], b: dict[Root, int]) -> dict[Root, int]:
    out = dict(a)
    for r, m in b.items():
        out[r] = out.get(r, 0) + m
    return out


def _den_poly(n: int, den: dict[Root, int]) -> Poly:
    out = Poly.const(n, 1)
    for r, m in den.items():
        out = out * linear_form(r) ** m
    return out


class RatFn:
    """num / prod(alpha^m) with positive-root linear-form denominators, in lowest terms."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: dict[Root, int] | None = None):
        den = {r: m for r, m in (den or {}).items() if m > 0}
        if num.is_zero():
            den = {}
        else:
            for root in list(den):
                form = linear_form(root)
                while den[root] > 0:
                    try:
                        num = exact_divide(num, form)
                    except NotDivisible:
                        break
                    den[root] -= 1
                if den[root] == 0:
                    del den[root]
        self.num = num
        self.den = den

    @staticmethod
    def from_poly(p: Poly) -> "RatFn":
        return RatFn(p)

    @property
    def n(self) -> int:
        return self.num.n

    def is_poly(self) -> bool:
        return not self.den

    def to_poly(self) -> Poly:
        if self.den:
            raise NotDivisible(f"{self} has a nontrivial denominator")
        return self.num

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def den_poly(self) -> Poly:
        return _den_poly(self.n, self.den)

    @staticmethod
    def _coerce(value: "RatFn | Poly | int", n: int) -> "RatFn":
        if isinstance(value, RatFn):
            return value
        if isinstance(value, Poly):
            return RatFn(value)
        return RatFn(Poly.const(n, value))

    def __add__(self, other: "RatFn | Poly | int") -> "RatFn":
        other = RatFn._coerce(other, self.n)
        common = {r: max(self.den.get(r, 0), other.den.get(r, 0))
                  for r in {*self.den, *other.den}}
        lift_a = _den_poly(self.n, {r: m - self.den.get(r, 0)
                                    for r, m in common.items()})
        lift_b = _den_poly(self.n, {r: m - other.den.get(r, 0)
                                    for r, m in common.items()})
        return RatFn(self.num * lift_a + other.num * lift_b, common)

    __radd__ = __add__

    def __neg__(self) -> "RatFn":
        out = RatFn.__new__(RatFn)
        out.num = -self.num
        out.den = dict(self.den)
        return out

    def __sub__(self, other: "RatFn | Poly | int") -> "RatFn":
        return self + (-RatFn._coerce(other, self.n))

    def __mul__(self, other: "RatFn | Poly | int") -> "RatFn":
        other = RatFn._coerce(other, self.n)
        return RatFn(self.num * other.num, _den_mul(self.den, other.den))

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (Poly, int)):
            other = RatFn._coerce(other, self.n)
        if not isinstance(other, RatFn):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, tuple(sorted(self.den.items()))))

    def __str__(self) -> str:
        if not self.den:
            return str(self.num)
        factors = []
        for root in sorted(self.den):
            m = self.den[root]
            base = render_root(root)
            base = f"({base})" if ("+" in base or "-" in base[1:]) else base
            factors.append(base if m == 1 else f"{base}^{m}")
        den = "*".join(factors)
        num = str(self.num)
        if " " in num:
            num = f"({num})"
        return f"{num}/({den})" if "*" in den or "^" in den else f"{num}/{den}"

    __repr__ = __str__
