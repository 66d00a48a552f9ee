"""Point classes on galleries: copy/concentration operators, bases, criteria.

A point class assigns a polynomial to every gallery of its declared domain
(all of Gamma, a fiber, or a fiber complement).  It is the computational
stand-in for an equivariant cohomology class restricted to the fixed points.

The two constructions ``delta_copy`` (copy) and ``nabla`` (concentration)
produce classes for the word from classes for its truncation; ``basis_B``
iterates them along a tree index.  The fiber basis ``basis_b`` and the
complement basis ``basis_c`` admit closed forms obtained by unrolling their
recursions, which is what ``b_value`` and ``c_value`` implement:

    b_gamma(delta) = prod over i in D(gamma) of beta~_i(delta),
                     provided delta agrees with gamma on D(gamma), else 0;

and similarly for ``c`` with concentration levels read off the Bruhat walk.

The executable membership criteria check the divisibility congruences

    sum over delta ~ gamma with J(delta) in J(gamma) of
        (-1)^{|J(delta)|} f(delta)  =  0  mod alpha^{|J(gamma)|}

(and the D-variants) for every positive root alpha.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import ConfigurationError, NotDivisible, NotInImage
from .gallery import (
    D_alpha,
    Gallery,
    J_alpha,
    M_alpha,
    TreeIndex,
    Word,
    alpha_class,
    dot,
    enumerate_cofiber,
    enumerate_fiber,
    enumerate_galleries,
    equiv_alpha,
    pi,
    wall_data,
)
from .polyring import Poly, divides_power, exact_divide, linear_form
from .rootsys import Root, WeylElement


@dataclass(frozen=True, eq=False)
class PointClass:
    """A map from a fixed tuple of galleries to polynomials."""

    word: Word
    domain: tuple[Gallery, ...]
    values: dict[Gallery, Poly]

    def value(self, gallery: Gallery) -> Poly:
        try:
            return self.values[gallery]
        except KeyError:
            raise ConfigurationError(f"gallery {gallery} outside the class domain")

    def _check(self, other: "PointClass") -> None:
        if self.word != other.word or self.domain != other.domain:
            raise ConfigurationError("point classes over different domains")

    def __add__(self, other: "PointClass") -> "PointClass":
        self._check(other)
        return PointClass(self.word, self.domain,
                          {g: self.values[g] + other.values[g] for g in self.domain})

    def __sub__(self, other: "PointClass") -> "PointClass":
        self._check(other)
        return PointClass(self.word, self.domain,
                          {g: self.values[g] - other.values[g] for g in self.domain})

    def __neg__(self) -> "PointClass":
        return PointClass(self.word, self.domain,
                          {g: -v for g, v in self.values.items()})

    def scale(self, c: "Poly | int") -> "PointClass":
        return PointClass(self.word, self.domain,
                          {g: v * c for g, v in self.values.items()})

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, PointClass) and self.word == other.word
                and self.domain == other.domain and self.values == other.values)

    def __hash__(self) -> int:
        return hash((self.word, self.domain,
                     tuple(self.values[g] for g in self.domain)))

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.values.values())

    def restrict(self, domain: Sequence[Gallery]) -> "PointClass":
        return PointClass(self.word, tuple(domain),
                          {g: self.value(g) for g in domain})

    def extend_zero(self) -> "PointClass":
        """Extend by zero to all of Gamma."""
        full = enumerate_galleries(self.word)
        zero = Poly.zero(self.word.datum.n)
        return PointClass(self.word, full,
                          {g: self.values.get(g, zero) for g in full})

    def degree(self) -> int:
        """Cohomological degree 2d when every value is homogeneous of degree d."""
        degs = {v.homogeneous_degree() for v in self.values.values() if not v.is_zero()}
        if len(degs) > 1:
            from .errors import NotHomogeneous

            raise NotHomogeneous(f"mixed value degrees {sorted(degs)}")
        return 2 * degs.pop() if degs else 0


def unit_class(word: Word) -> PointClass:
    dom = enumerate_galleries(word)
    one = Poly.const(word.datum.n, 1)
    return PointClass(word, dom, {g: one for g in dom})


def indicator_class(gallery: Gallery) -> PointClass:
    word = gallery.word
    dom = enumerate_galleries(word)
    zero = Poly.zero(word.datum.n)
    vals = {g: zero for g in dom}
    vals[gallery] = Poly.const(word.datum.n, 1)
    return PointClass(word, dom, vals)


def dot_class(f: PointClass) -> PointClass:
    """Precompose with the end-folding involution."""
    return PointClass(f.word, f.domain, {g: f.value(dot(g)) for g in f.domain})


# -- copy and concentration -----------------------------------------------------


def delta_copy(word: Word, f: PointClass) -> PointClass:
    """Copy a class on the truncated word to the full word."""
    if f.word != word.truncated():
        raise ConfigurationError("copy source must live on the truncated word")
    dom = enumerate_galleries(word)
    return PointClass(word, dom, {g: f.value(g.truncated()) for g in dom})


def nabla(word: Word, t: bool, f: PointClass) -> PointClass:
    """Concentration at t (True = the reflection branch): beta_r scaling."""
    if f.word != word.truncated():
        raise ConfigurationError("concentration source must live on the truncated word")
    dom = enumerate_galleries(word)
    zero = Poly.zero(word.datum.n)
    vals = {}
    for g in dom:
        if g.choices[-1] == t:
            vals[g] = linear_form(wall_data(g).beta[-1]) * f.value(g.truncated())
        else:
            vals[g] = zero
    return PointClass(word, dom, vals)


def nabla_tilde(word: Word, t: bool, f: PointClass) -> PointClass:
    """Concentration using beta~_r; equals nabla_e resp. -nabla_s."""
    if f.word != word.truncated():
        raise ConfigurationError("concentration source must live on the truncated word")
    dom = enumerate_galleries(word)
    zero = Poly.zero(word.datum.n)
    vals = {}
    for g in dom:
        if g.choices[-1] == t:
            vals[g] = linear_form(wall_data(g).beta_tilde[-1]) * f.value(g.truncated())
        else:
            vals[g] = zero
    return PointClass(word, dom, vals)


# -- basis families ----------------------------------------------------------------


@dataclass(frozen=True)
class BasisFamily:
    """An ordered family of point classes with its indexing metadata."""

    label: str
    elements: tuple[PointClass, ...]
    index: tuple  # tree paths for B_rho, galleries for the b/c families


def basis_B(word: Word, rho: TreeIndex) -> BasisFamily:
    """The 2^r classes obtained by iterating copy/concentration along rho."""
    if rho.depth != word.r:
        raise ConfigurationError("tree depth does not match the word length")
    if word.r == 0:
        return BasisFamily("B", (unit_class(word),), ((),))
    sub = word.truncated()
    part0 = basis_B(sub, rho.child0)
    part1 = basis_B(sub, rho.child1)
    elements = [delta_copy(word, f) for f in part0.elements]
    elements += [nabla(word, rho.use_s, f) for f in part1.elements]
    paths = tuple((0,) + p for p in part0.index) + tuple((1,) + p for p in part1.index)
    return BasisFamily("B", tuple(elements), paths)


def a_poly(gamma: Gallery) -> Poly:
    """The diagonal normalizer: product of beta~_i over the D-walls of gamma."""
    wd = wall_data(gamma)
    out = Poly.const(gamma.word.datum.n, 1)
    for i in sorted(wd.D):
        out = out * linear_form(wd.beta_tilde[i - 1])
    return out


def b_value(gamma: Gallery, delta: Gallery) -> Poly:
    """The closed form of the fiber-basis recursion."""
    if gamma.word != delta.word:
        raise ConfigurationError("galleries over different words")
    n = gamma.word.datum.n
    walls = wall_data(gamma)
    delta_walls = wall_data(delta)
    out = Poly.const(n, 1)
    for i in sorted(walls.D):
        if delta.choices[i - 1] != gamma.choices[i - 1]:
            return Poly.zero(n)
        out = out * linear_form(delta_walls.beta_tilde[i - 1])
    return out


def basis_b(word: Word, x: WeylElement, domain: str = "full") -> BasisFamily:
    """The fiber basis at x, one class per fiber gallery, ascending by the fiber order."""
    fiber = enumerate_fiber(word, x)
    if not fiber:
        raise ConfigurationError("empty fiber")
    dom = fiber if domain == "fiber" else enumerate_galleries(word)
    elements = tuple(
        PointClass(word, dom, {d: b_value(g, d) for d in dom}) for g in fiber)
    return BasisFamily("b", elements, fiber)


def c_concentration_levels(word: Word, x: WeylElement, gamma: Gallery) -> frozenset[int]:
    """Positions where the c-recursion concentrates, from the Bruhat walk at x."""
    datum = word.datum
    w = x
    out = set()
    for i in range(word.r, 0, -1):
        letter = word.indices[i - 1]
        if gamma.choices[i - 1]:
            w = w * datum.simple_reflection(letter)
        if not datum.descends_right(w, letter):  # w < w s_i: concentrate
            out.add(i)
    return frozenset(out)


def c_value(word: Word, x: WeylElement, gamma: Gallery, delta: Gallery) -> Poly:
    """The closed form of the complement-basis recursion."""
    n = word.datum.n
    levels = c_concentration_levels(word, x, gamma)
    delta_walls = wall_data(delta)
    out = Poly.const(n, 1)
    for i in sorted(levels):
        if delta.choices[i - 1] != gamma.choices[i - 1]:
            return Poly.zero(n)
        out = out * linear_form(delta_walls.beta[i - 1])
    return out


def basis_c(word: Word, x: WeylElement, domain: str = "full") -> BasisFamily:
    """The complement family at x: restricted to the cofiber it is a basis."""
    if domain == "cofiber":
        index = enumerate_cofiber(word, x)
        dom = index
    else:
        index = enumerate_galleries(word)
        dom = index
    elements = tuple(
        PointClass(word, dom, {d: c_value(word, x, g, d) for d in dom}) for g in index)
    return BasisFamily("c", elements, index)


def c_tree_path(word: Word, x: WeylElement, gamma: Gallery) -> tuple[int, ...]:
    """The leaf of basis_B(tree_xi(word, x)) that the class of gamma occupies."""
    datum = word.datum
    w = x
    path = []
    for i in range(word.r, 0, -1):
        letter = word.indices[i - 1]
        s = datum.simple_reflection(letter)
        label_s = datum.descends_right(w, letter)  # the xi root label at this stage
        path.append(1 if gamma.choices[i - 1] == label_s else 0)
        if gamma.choices[i - 1]:
            w = w * s
    return tuple(path)


def b_tree_path(gamma: Gallery) -> tuple[int, ...]:
    """The leaf of basis_B(tree_rho(word, pi(gamma))) matching b_gamma, up to sign."""
    D = wall_data(gamma).D
    return tuple(1 if i in D else 0 for i in range(gamma.r, 0, -1))


# -- membership criteria -------------------------------------------------------------


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    witness: tuple[Gallery, Root] | None = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok


def _passes(total: Poly, alpha: Root, power: int) -> bool:
    return divides_power(total, alpha, power)


def check_prop1(f: PointClass) -> CheckResult:
    """Membership test for the full image: J-congruences over all of Gamma."""
    word = f.word
    datum = word.datum
    for alpha in sorted(datum.positive_roots):
        seen: set[tuple[tuple[bool, ...], frozenset[int]]] = set()
        for gamma in f.domain:
            Jg = J_alpha(gamma, alpha)
            walls = M_alpha(gamma, alpha)
            rep = tuple(False if i + 1 in walls else c
                        for i, c in enumerate(gamma.choices))
            key = (rep, Jg)
            if key in seen:
                continue
            seen.add(key)
            total = Poly.zero(datum.n)
            for delta in alpha_class(gamma, alpha):
                Jd = J_alpha(delta, alpha)
                if Jd <= Jg:
                    total = total + f.value(delta) * (-1) ** len(Jd)
            if not _passes(total, alpha, len(Jg)):
                return CheckResult(False, (gamma, alpha),
                                   f"J-congruence fails at {gamma} mod "
                                   f"({linear_form(alpha)})^{len(Jg)}")
    return CheckResult(True)


def check_prop2(f: PointClass, x: WeylElement) -> CheckResult:
    """Membership test for the fiber image: D-congruences over the fiber of x."""
    word = f.word
    datum = word.datum
    fiber = set(enumerate_fiber(word, x))
    for alpha in sorted(datum.positive_roots):
        seen: set[tuple[tuple[bool, ...], frozenset[int]]] = set()
        for gamma in fiber:
            Dg = D_alpha(gamma, alpha)
            walls = M_alpha(gamma, alpha)
            rep = tuple(False if i + 1 in walls else c
                        for i, c in enumerate(gamma.choices))
            key = (rep, Dg)
            if key in seen:
                continue
            seen.add(key)
            total = Poly.zero(datum.n)
            for delta in alpha_class(gamma, alpha):
                if delta not in fiber:
                    continue
                Dd = D_alpha(delta, alpha)
                if Dd <= Dg:
                    total = total + f.value(delta) * (-1) ** len(Dd)
            if not _passes(total, alpha, len(Dg)):
                return CheckResult(False, (gamma, alpha),
                                   f"D-congruence fails at {gamma} mod "
                                   f"({linear_form(alpha)})^{len(Dg)}")
    return CheckResult(True)


def check_prop3(f: PointClass, x: WeylElement) -> CheckResult:
    """Membership test for the complement image: a J-family and a D-family."""
    word = f.word
    datum = word.datum
    fiber_x = set(enumerate_fiber(word, x))
    for alpha in sorted(datum.positive_roots):
        s_alpha_x = datum.reflection(alpha) * x
        fiber_sx = set(enumerate_fiber(word, s_alpha_x))
        seen: set[tuple[tuple[bool, ...], frozenset[int], bool]] = set()
        for gamma in f.domain:
            walls = M_alpha(gamma, alpha)
            rep = tuple(False if i + 1 in walls else c
                        for i, c in enumerate(gamma.choices))
            if gamma not in fiber_sx:
                # J-family: gamma away from both the fiber and its alpha-partner.
                if pi(gamma) == s_alpha_x:
                    continue
                Jg = J_alpha(gamma, alpha)
                key = (rep, Jg, False)
                if key in seen:
                    continue
                seen.add(key)
                total = Poly.zero(datum.n)
                for delta in alpha_class(gamma, alpha):
                    Jd = J_alpha(delta, alpha)
                    if Jd <= Jg:
                        total = total + f.value(delta) * (-1) ** len(Jd)
                if not _passes(total, alpha, len(Jg)):
                    return CheckResult(False, (gamma, alpha),
                                       f"J-congruence fails at {gamma}")
            else:
                # D-family over the fiber of s_alpha x.
                Dg = D_alpha(gamma, alpha)
                key = (rep, Dg, True)
                if key in seen:
                    continue
                seen.add(key)
                total = Poly.zero(datum.n)
                for delta in alpha_class(gamma, alpha):
                    if delta not in fiber_sx:
                        continue
                    Dd = D_alpha(delta, alpha)
                    if Dd <= Dg:
                        total = total + f.value(delta) * (-1) ** len(Dd)
                if not _passes(total, alpha, len(Dg)):
                    return CheckResult(False, (gamma, alpha),
                                       f"D-congruence fails at {gamma}")
    return CheckResult(True)


# -- coordinates -----------------------------------------------------------------


def decompose_in_B(f: PointClass, rho: TreeIndex) -> dict[tuple[int, ...], Poly]:
    """Coordinates of f over basis_B(rho); NotInImage when a division fails."""
    word = f.word
    if rho.depth != word.r:
        raise ConfigurationError("tree depth does not match the word length")
    if word.r == 0:
        return {(): f.value(f.domain[0])}
    sub = word.truncated()
    sub_dom = enumerate_galleries(sub)
    t = rho.use_s
    f_prime = PointClass(sub, sub_dom,
                         {g: f.value(g.extended(not t, word)) for g in sub_dom})
    h_vals = {}
    for g in sub_dom:
        ext = g.extended(t, word)
        num = f.value(ext) - f_prime.value(g)
        beta_r = linear_form(wall_data(ext).beta[-1])
        try:
            h_vals[g] = exact_divide(num, beta_r)
        except NotDivisible:
            raise NotInImage(f"value at {ext} is not divisible by beta_r")
    h_prime = PointClass(sub, sub_dom, h_vals)
    out = {}
    for path, coeff in decompose_in_B(f_prime, rho.child0).items():
        out[(0,) + path] = coeff
    for path, coeff in decompose_in_B(h_prime, rho.child1).items():
        out[(1,) + path] = coeff
    return out


def decompose_in_b_fiber(f: PointClass, x: WeylElement) -> dict[Gallery, Poly]:
    """Coordinates over the restricted fiber basis, by triangular back-substitution."""
    word = f.word
    fiber = enumerate_fiber(word, x)
    residual = {g: f.value(g) for g in fiber}
    coords: dict[Gallery, Poly] = {}
    for gamma in fiber:
        try:
            c = exact_divide(residual[gamma], a_poly(gamma))
        except NotDivisible:
            raise NotInImage(f"value at {gamma} is not divisible by a(gamma)")
        coords[gamma] = c
        if not c.is_zero():
            for delta in fiber:
                residual[delta] = residual[delta] - c * b_value(gamma, delta)
    if any(not v.is_zero() for v in residual.values()):
        raise NotInImage("back-substitution left a nonzero residual")
    return coords


# -- the doubling identity -------------------------------------------------------


def load_product(gamma: Gallery) -> Poly:
    """prod over i of beta_i(gamma): the diagonal of the pairing matrix."""
    wd = wall_data(gamma)
    out = Poly.const(gamma.word.datum.n, 1)
    for b in wd.beta:
        out = out * linear_form(b)
    return out


def p_q_classes(gamma: Gallery, alpha: Root) -> tuple[PointClass, PointClass]:
    """The pair (p, q) satisfying 2^(|M|-|J|) p = q; used by the property suite."""
    word = gamma.word
    n = word.datum.n
    dom = enumerate_galleries(word)
    Jg = J_alpha(gamma, alpha)
    power = len(Jg)
    p_vals = {}
    for delta in dom:
        if equiv_alpha(gamma, delta, alpha):
            Jd = J_alpha(delta, alpha)
            if Jd <= Jg:
                val = load_product(delta) * (-1) ** len(Jd)
                quotient = val
                form = linear_form(alpha)
                for _ in range(power):
                    quotient = exact_divide(quotient, form)
                p_vals[delta] = quotient
                continue
        p_vals[delta] = Poly.zero(n)
    p = PointClass(word, dom, p_vals)

    def build_q(g: Gallery) -> PointClass:
        w = g.word
        if w.r == 0:
            return unit_class(w)
        sub = build_q(g.truncated())
        walls = M_alpha(g, alpha)
        r = w.r
        if r not in walls:
            return nabla(w, g.choices[-1], sub)
        if r not in J_alpha(g, alpha):
            return (nabla(w, g.choices[-1], sub)
                    + nabla(w, not g.choices[-1], sub)
                    - delta_copy(w, sub).scale(linear_form(alpha)))
        return -delta_copy(w, sub)

    return p, build_q(gamma)
