"""Combinatorial galleries over a fixed word of simple reflections.

A gallery is a choice vector over the word: at each position it either takes
the reflection (``s``) or stays (``e``).  Galleries are rendered as strings
like ``"ese"``.  The derived wall data (prefix products, beta / beta-tilde
roots, the load-bearing index sets J and D) is computed once per gallery and
cached; prefix products are shared across galleries through a per-word cache,
so enumerating all 2^r galleries costs O(2^r * r) Weyl operations.

Two orders appear:

* ``cmp_triangle`` is the total order comparing prefix chains top-down;
* ``cmp_fiber`` compares bottom-up and is total only inside a fiber, so it
  returns INCOMPARABLE across fibers instead of guessing.

Both reduce every Bruhat comparison to a root-sign test on ``w`` vs ``w s_i``.
"""

from __future__ import annotations

import enum
import functools
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .errors import ConfigurationError
from .rootsys import Root, RootDatum, WeylElement, is_positive


@dataclass(frozen=True, eq=False)
class Word:
    """A sequence of 1-based simple-root indices over a root datum."""

    datum: RootDatum
    indices: tuple[int, ...]

    def __post_init__(self):
        for i in self.indices:
            if not 1 <= i <= self.datum.n:
                raise ConfigurationError(f"word letter {i} out of range 1..{self.datum.n}")

    @property
    def r(self) -> int:
        return len(self.indices)

    def truncated(self) -> "Word":
        if not self.indices:
            raise ConfigurationError("cannot truncate the empty word")
        return Word(self.datum, self.indices[:-1])

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, Word)
                and self.datum == other.datum and self.indices == other.indices)

    def __hash__(self) -> int:
        return hash((self.datum.components, self.indices))

    def __repr__(self) -> str:
        return f"Word({self.datum!r}, {self.indices})"


@dataclass(frozen=True, eq=False)
class Gallery:
    """A choice vector over a word; choices[i] True means position i+1 took s."""

    word: Word
    choices: tuple[bool, ...]

    def __post_init__(self):
        if len(self.choices) != self.word.r:
            raise ConfigurationError("gallery length does not match its word")

    @property
    def r(self) -> int:
        return len(self.choices)

    def truncated(self) -> "Gallery":
        return Gallery(self.word.truncated(), self.choices[:-1])

    def extended(self, choice: bool, word: "Word") -> "Gallery":
        return Gallery(word, self.choices + (choice,))

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, Gallery)
                and self.word == other.word and self.choices == other.choices)

    def __hash__(self) -> int:
        return hash((self.word.indices, self.choices))

    def __str__(self) -> str:
        return "".join("s" if c else "e" for c in self.choices) or "()"

    def __repr__(self) -> str:
        return f"Gallery({self})"


class Ordering(enum.Enum):
    LT = -1
    EQ = 0
    GT = 1
    INCOMPARABLE = 2


@functools.lru_cache(maxsize=None)
def _prefix_element(word: Word, bits: tuple[bool, ...]) -> WeylElement:
    if not bits:
        return word.datum.identity()
    head = _prefix_element(word, bits[:-1])
    if bits[-1]:
        return head * word.datum.simple_reflection(word.indices[len(bits) - 1])
    return head


def prefixes(gallery: Gallery) -> tuple[WeylElement, ...]:
    """gamma^0 .. gamma^r, the partial products of the gallery's choices."""
    return tuple(_prefix_element(gallery.word, gallery.choices[:i])
                 for i in range(gallery.r + 1))


def pi(gallery: Gallery) -> WeylElement:
    return _prefix_element(gallery.word, gallery.choices)


@dataclass(frozen=True)
class WallData:
    """Cached per-gallery wall data: prefixes, beta roots and load-bearing sets."""

    prefixes: tuple[WeylElement, ...]
    beta: tuple[Root, ...]        # beta[i-1] = gamma^i(-a_i), 1-based positions
    beta_tilde: tuple[Root, ...]  # beta_tilde[i-1] = gamma^{i-1}(-a_i)
    J: frozenset[int]
    D: frozenset[int]


@functools.lru_cache(maxsize=None)
def wall_data(gallery: Gallery) -> WallData:
    word = gallery.word
    datum = word.datum
    pref = prefixes(gallery)
    beta = []
    beta_tilde = []
    for i, letter in enumerate(word.indices, start=1):
        neg = tuple(-c for c in datum.simple_root(letter))
        beta.append(pref[i].apply(neg))
        beta_tilde.append(pref[i - 1].apply(neg))
    J = frozenset(i for i, b in enumerate(beta, start=1) if is_positive(b))
    D = frozenset(i for i, b in enumerate(beta_tilde, start=1) if is_positive(b))
    return WallData(pref, tuple(beta), tuple(beta_tilde), J, D)


def M_alpha(gallery: Gallery, alpha: Root) -> frozenset[int]:
    """Positions i with beta_i = +-alpha; constant on the ~_alpha class."""
    neg = tuple(-c for c in alpha)
    return frozenset(i for i, b in enumerate(wall_data(gallery).beta, start=1)
                     if b == alpha or b == neg)


def J_alpha(gallery: Gallery, alpha: Root) -> frozenset[int]:
    return frozenset(i for i, b in enumerate(wall_data(gallery).beta, start=1)
                     if b == alpha)


def D_alpha(gallery: Gallery, alpha: Root) -> frozenset[int]:
    return frozenset(i for i, b in enumerate(wall_data(gallery).beta_tilde, start=1)
                     if b == alpha)


def equiv_alpha(gamma: Gallery, delta: Gallery, alpha: Root) -> bool:
    """gamma ~_alpha delta: choices agree away from the alpha-walls of gamma."""
    if gamma.word != delta.word:
        raise ConfigurationError("galleries over different words")
    walls = M_alpha(gamma, alpha)
    return all(g == d for i, (g, d) in enumerate(zip(gamma.choices, delta.choices), start=1)
               if i not in walls)


def alpha_class(gamma: Gallery, alpha: Root) -> list[Gallery]:
    """The ~_alpha equivalence class, by toggling choices on the alpha-walls."""
    walls = sorted(M_alpha(gamma, alpha))
    out = []
    for mask in range(1 << len(walls)):
        choices = list(gamma.choices)
        for bit, pos in enumerate(walls):
            if (mask >> bit) & 1:
                choices[pos - 1] = not choices[pos - 1]
        out.append(Gallery(gamma.word, tuple(choices)))
    return out


def dot(gamma: Gallery) -> Gallery:
    """Fold the end: toggle the last letter."""
    if gamma.r == 0:
        raise ConfigurationError("dot is undefined for the empty word")
    return Gallery(gamma.word, gamma.choices[:-1] + (not gamma.choices[-1],))


# -- the two orders ------------------------------------------------------------


def _compare_step(common: WeylElement, datum: RootDatum, letter: int,
                  d_took_s: bool) -> Ordering:
    """Compare w*delta_i vs w*gamma_i when exactly one of them took s_letter."""
    # The two prefixes are {w, w s_letter}; w < w s_letter iff no right descent.
    w_lt_ws = not datum.descends_right(common, letter)
    delta_is_w = not d_took_s
    if delta_is_w:
        return Ordering.LT if w_lt_ws else Ordering.GT
    return Ordering.GT if w_lt_ws else Ordering.LT


def cmp_triangle(delta: Gallery, gamma: Gallery) -> Ordering:
    """The total order: first prefix divergence, scanned from the left."""
    if delta.word != gamma.word:
        raise ConfigurationError("galleries over different words")
    datum = delta.word.datum
    for i in range(delta.r):
        if delta.choices[i] != gamma.choices[i]:
            common = _prefix_element(delta.word, delta.choices[:i])
            return _compare_step(common, datum, delta.word.indices[i], delta.choices[i])
    return Ordering.EQ


def cmp_fiber(delta: Gallery, gamma: Gallery) -> Ordering:
    """The fiber order: last prefix divergence; INCOMPARABLE across fibers."""
    if delta.word != gamma.word:
        raise ConfigurationError("galleries over different words")
    dp = prefixes(delta)
    gp = prefixes(gamma)
    if dp[-1] != gp[-1]:
        return Ordering.INCOMPARABLE
    datum = delta.word.datum
    for i in range(delta.r - 1, -1, -1):
        if dp[i] != gp[i]:
            # dp[i] = dp[i+1]*delta_{i+1}; the pair is {w, w s} for w = common suffix head.
            common = dp[i + 1]
            letter = delta.word.indices[i]
            # delta^i equals common iff delta did not take s at position i+1.
            return _compare_step(common, datum, letter, delta.choices[i])
    return Ordering.EQ


def _as_cmp(order: Callable[[Gallery, Gallery], Ordering]) -> Callable[[Gallery, Gallery], int]:
    def cmp(a: Gallery, b: Gallery) -> int:
        res = order(a, b)
        if res is Ordering.INCOMPARABLE:
            raise ConfigurationError("galleries are incomparable")
        return res.value

    return cmp


# -- enumeration ----------------------------------------------------------------


@functools.lru_cache(maxsize=None)
def enumerate_galleries(word: Word) -> tuple[Gallery, ...]:
    """All 2^r galleries, ordered by binary counting (e before s per position)."""
    r = word.r
    out = []
    for k in range(1 << r):
        bits = tuple(bool((k >> (r - 1 - i)) & 1) for i in range(r))
        out.append(Gallery(word, bits))
    return tuple(out)


@functools.lru_cache(maxsize=None)
def fibers(word: Word) -> dict[WeylElement, tuple[Gallery, ...]]:
    """Partition of Gamma by pi, each fiber sorted ascending by the fiber order."""
    groups: dict[WeylElement, list[Gallery]] = {}
    for g in enumerate_galleries(word):
        groups.setdefault(pi(g), []).append(g)
    return {x: tuple(sorted(gs, key=functools.cmp_to_key(_as_cmp(cmp_fiber))))
            for x, gs in groups.items()}


def enumerate_fiber(word: Word, x: WeylElement) -> tuple[Gallery, ...]:
    return fibers(word).get(x, ())


def enumerate_cofiber(word: Word, x: WeylElement) -> tuple[Gallery, ...]:
    """Gamma minus the fiber of x, in the deterministic enumeration order."""
    return tuple(g for g in enumerate_galleries(word) if pi(g) != x)


# -- structural self-test ----------------------------------------------------------


def check_alternation(gamma: Gallery, alpha: Root) -> bool:
    """The J/D alternation along the alpha-walls, ending per the sign of s_alpha pi."""
    walls = sorted(M_alpha(gamma, alpha))
    if not walls:
        return True
    J = J_alpha(gamma, alpha)
    D = D_alpha(gamma, alpha)
    for a, b in zip(walls, walls[1:]):
        if (a in J) != (b in D):
            return False
    datum = gamma.word.datum
    x = pi(gamma)
    # s_alpha x < x iff x^{-1}(alpha) < 0
    s_alpha_x_lt_x = not is_positive(x.inverse().apply(alpha))
    return (walls[-1] in J) == s_alpha_x_lt_x


# -- tree analogs ------------------------------------------------------------------


@dataclass(frozen=True)
class TreeIndex:
    """A labeling of the full binary tree of depth r; use_s picks s_{r-|u|} over e."""

    depth: int
    use_s: bool | None
    child0: "TreeIndex | None"
    child1: "TreeIndex | None"

    @staticmethod
    def leaf() -> "TreeIndex":
        return TreeIndex(0, None, None, None)

    @staticmethod
    def node(use_s: bool, child0: "TreeIndex", child1: "TreeIndex") -> "TreeIndex":
        if child0.depth != child1.depth:
            raise ConfigurationError("tree children of unequal depth")
        return TreeIndex(child0.depth + 1, use_s, child0, child1)

    def size(self) -> int:
        return 2 ** self.depth - 1


def all_tree_indices(r: int) -> Iterable[TreeIndex]:
    """All 2^(2^r - 1) labelings; only feasible for small r."""
    if r == 0:
        yield TreeIndex.leaf()
        return
    subs = list(all_tree_indices(r - 1))
    for c0 in subs:
        for c1 in subs:
            for use_s in (False, True):
                yield TreeIndex.node(use_s, c0, c1)


def tree_rho(word: Word, x: WeylElement) -> TreeIndex:
    """The canonical tree whose basis contains (up to sign) the fiber basis at x."""
    if word.r == 0:
        return TreeIndex.leaf()
    datum = word.datum
    letter = word.indices[-1]
    s = datum.simple_reflection(letter)
    # root label t with x t > x t s_r
    use_s = not datum.descends_right(x, letter)
    xt = x * s if use_s else x
    sub = word.truncated()
    return TreeIndex.node(use_s, tree_rho(sub, xt * s), tree_rho(sub, xt))


def tree_xi(word: Word, x: WeylElement) -> TreeIndex:
    """The canonical tree whose basis equals the c-family at x."""
    if word.r == 0:
        return TreeIndex.leaf()
    datum = word.datum
    letter = word.indices[-1]
    s = datum.simple_reflection(letter)
    # root label t with x t < x t s_r
    use_s = datum.descends_right(x, letter)
    xt = x * s if use_s else x
    sub = word.truncated()
    return TreeIndex.node(use_s, tree_xi(sub, xt * s), tree_xi(sub, xt))
