"""Finite crystallographic root systems with exact integer Weyl arithmetic.

Roots live in the root lattice and are stored as integer coordinate vectors
over the simple-root basis, so a root is just a ``tuple[int, ...]`` of length
``n``.  Weyl elements are integer matrices acting on those coordinates;
equality is structural, which keeps tests like ``pi(gamma) == x`` exact.

Cartan conventions (fixed once, verified by the closure tests):

* types A, D, E: all simple roots have squared length 2;
* type B_n: the last simple root is short, so ``s_n(a_{n-1}) = a_{n-1} + 2 a_n``;
* type C_n: the last simple root is long, so ``s_1(a_2) = a_2 + 2 a_1`` in C_2;
* type F_4: ``a_3, a_4`` short, double bond between ``a_2`` and ``a_3``;
* type G_2: ``a_1`` short, so ``s_1(a_2) = a_2 + 3 a_1``.

Bruhat order is never implemented in full generality: every comparison the
algorithms need is between ``w`` and ``w*s_i`` or between ``x`` and
``s_alpha*x``, and both reduce to a sign test on a single root.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import ConfigurationError, InvariantViolation

Root = tuple[int, ...]

# |Phi+| per component, used as an independent cross-check of the closure.
POSITIVE_ROOT_COUNTS = {
    "A": lambda n: n * (n + 1) // 2,
    "B": lambda n: n * n,
    "C": lambda n: n * n,
    "D": lambda n: n * (n - 1),
    "E": lambda n: {6: 36, 7: 63, 8: 120}[n],
    "F": lambda n: 24,
    "G": lambda n: 6,
}

_RANK_BOUNDS = {
    "A": lambda n: n >= 1,
    "B": lambda n: n >= 2,
    "C": lambda n: n >= 2,
    "D": lambda n: n >= 3,
    "E": lambda n: n in (6, 7, 8),
    "F": lambda n: n == 4,
    "G": lambda n: n == 2,
}


def _gram_component(letter: str, rank: int) -> list[list[int]]:
    """Gram matrix of one component, normalized so short roots have norm 2."""
    n = rank
    g = [[0] * n for _ in range(n)]

    def chain(edges: Iterable[tuple[int, int]], norms: Sequence[int], offdiag) -> None:
        for i in range(n):
            g[i][i] = norms[i]
        for i, j in edges:
            g[i][j] = g[j][i] = offdiag(i, j)

    path = [(i, i + 1) for i in range(n - 1)]
    if letter == "A":
        chain(path, [2] * n, lambda i, j: -1)
    elif letter == "B":
        # long ... long short
        norms = [4] * (n - 1) + [2]
        chain(path, norms, lambda i, j: -2)
    elif letter == "C":
        # short ... short long
        norms = [2] * (n - 1) + [4]
        chain(path, norms, lambda i, j: -1 if j < n - 1 else -2)
    elif letter == "D":
        edges = [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
        chain(edges, [2] * n, lambda i, j: -1)
    elif letter == "E":
        # Bourbaki numbering: chain a1-a3-a4-a5-a6(-a7-a8), a2 hangs off a4.
        edges = [(0, 2), (2, 3), (3, 4), (4, 5), (1, 3)]
        edges += [(5, 6)] if n >= 7 else []
        edges += [(6, 7)] if n == 8 else []
        chain(edges, [2] * n, lambda i, j: -1)
    elif letter == "F":
        norms = [4, 4, 2, 2]
        chain(path, norms, lambda i, j: -2 if (i, j) != (2, 3) else -1)
    elif letter == "G":
        chain(path, [2, 6], lambda i, j: -3)
    else:  # pragma: no cover - guarded by build_root_datum
        raise ConfigurationError(f"unknown component type {letter!r}")
    return g


@dataclass(frozen=True, eq=False)
class WeylElement:
    """An integer-linear automorphism of the root lattice; rows index coordinates."""

    matrix: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.matrix)

    def apply(self, root: Root) -> Root:
        m = self.matrix
        return tuple(sum(row[j] * root[j] for j in range(len(root))) for row in m)

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        a, b = self.matrix, other.matrix
        n = len(a)
        return WeylElement(tuple(
            tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
            for i in range(n)
        ))

    def inverse(self) -> "WeylElement":
        n = self.n
        aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
               for i, row in enumerate(self.matrix)]
        for col in range(n):
            piv = next(r for r in range(col, n) if aug[r][col] != 0)
            aug[col], aug[piv] = aug[piv], aug[col]
            inv = 1 / aug[col][col]
            aug[col] = [x * inv for x in aug[col]]
            for r in range(n):
                if r != col and aug[r][col] != 0:
                    f = aug[r][col]
                    aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
        out = []
        for row in aug:
            cells = row[n:]
            if any(c.denominator != 1 for c in cells):
                raise InvariantViolation("Weyl matrix inverse is not integral")
            out.append(tuple(int(c) for c in cells))
        return WeylElement(tuple(out))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, WeylElement) and self.matrix == other.matrix

    def __hash__(self) -> int:
        return hash(self.matrix)

    def __repr__(self) -> str:
        return f"WeylElement({self.matrix!r})"


def identity_element(n: int) -> WeylElement:
    return WeylElement(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))


def zero_root(n: int) -> Root:
    return (0,) * n


def is_positive(root: Root) -> bool:
    """True iff all coordinates >= 0 and the vector is nonzero."""
    if all(c == 0 for c in root):
        raise ConfigurationError("the zero vector is not a root")
    return all(c >= 0 for c in root)


def is_negative(root: Root) -> bool:
    return not is_positive(root)


def render_root(root: Root) -> str:
    """Render a root as "a1+a2", "2*a1+a2", "-a1" over the simple-root basis."""
    parts: list[str] = []
    for i, c in enumerate(root, start=1):
        if c == 0:
            continue
        mag = f"a{i}" if abs(c) == 1 else f"{abs(c)}*a{i}"
        if not parts:
            parts.append(mag if c > 0 else f"-{mag}")
        else:
            parts.append(f"+{mag}" if c > 0 else f"-{mag}")
    return "".join(parts) if parts else "0"


@dataclass(frozen=True, eq=False)
class RootDatum:
    """A finite crystallographic root system given by its component type labels."""

    components: tuple[tuple[str, int], ...]
    n: int
    gram: tuple[tuple[int, ...], ...]
    positive_roots: frozenset[Root]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RootDatum) and self.components == other.components

    def __hash__(self) -> int:
        return hash(self.components)

    def __repr__(self) -> str:
        return "RootDatum(%s)" % "+".join(f"{t}{r}" for t, r in self.components)

    # -- basic vectors -------------------------------------------------

    def simple_root(self, i: int) -> Root:
        self._check_index(i)
        return tuple(int(j == i - 1) for j in range(self.n))

    @property
    def simple_roots(self) -> tuple[Root, ...]:
        return tuple(self.simple_root(i) for i in range(1, self.n + 1))

    def is_root(self, root: Root) -> bool:
        return root in self.positive_roots or tuple(-c for c in root) in self.positive_roots

    # -- Weyl elements -------------------------------------------------

    def identity(self) -> WeylElement:
        return identity_element(self.n)

    def pairing(self, beta: Root, alpha: Root) -> int:
        """<beta, alpha^vee> = 2 (beta, alpha) / (alpha, alpha); exact for roots."""
        g = self.gram
        dot_ba = sum(beta[i] * g[i][j] * alpha[j] for i in range(self.n) for j in range(self.n))
        dot_aa = sum(alpha[i] * g[i][j] * alpha[j] for i in range(self.n) for j in range(self.n))
        num = 2 * dot_ba
        if num % dot_aa:
            raise ConfigurationError(f"{render_root(alpha)} is not a root of {self!r}")
        return num // dot_aa

    def simple_reflection(self, i: int) -> WeylElement:
        self._check_index(i)
        return self.reflection(self.simple_root(i))

    def reflection(self, alpha: Root) -> WeylElement:
        """s_alpha: beta -> beta - <beta, alpha^vee> alpha, for alpha in Phi+."""
        if alpha not in self.positive_roots:
            raise ConfigurationError(f"{render_root(alpha)} is not a positive root")
        cols = []
        for j in range(1, self.n + 1):
            e_j = self.simple_root(j)
            c = self.pairing(e_j, alpha)
            cols.append(tuple(e_j[i] - c * alpha[i] for i in range(self.n)))
        return WeylElement(tuple(tuple(cols[j][i] for j in range(self.n)) for i in range(self.n)))

    def word_to_element(self, word: Sequence[int]) -> WeylElement:
        """Product of simple reflections, left to right."""
        w = self.identity()
        for i in word:
            w = w * self.simple_reflection(i)
        return w

    # -- length / inversions / descent tests ----------------------------

    def inversion_set(self, w: WeylElement) -> frozenset[Root]:
        """{alpha in Phi+ : w^{-1}(alpha) < 0} = {alpha : s_alpha w < w}."""
        winv = w.inverse()
        return frozenset(a for a in self.positive_roots if not is_positive(winv.apply(a)))

    def length(self, w: WeylElement) -> int:
        return len(self.inversion_set(w))

    def descends_right(self, w: WeylElement, i: int) -> bool:
        """True iff w s_i < w, i.e. w(a_i) is a negative root."""
        self._check_index(i)
        return not is_positive(w.apply(self.simple_root(i)))

    def has_C_component(self) -> bool:
        return any(t == "C" for t, _ in self.components)

    def _check_index(self, i: int) -> None:
        if not 1 <= i <= self.n:
            raise ConfigurationError(f"simple-root index {i} out of range 1..{self.n}")


def _closure_positive_roots(gram: list[list[int]], n: int) -> frozenset[Root]:
    simples = [tuple(int(j == i) for j in range(n)) for i in range(n)]

    def pair(beta, alpha_idx):
        num = 2 * sum(beta[i] * gram[i][alpha_idx] for i in range(n))
        den = gram[alpha_idx][alpha_idx]
        assert num % den == 0
        return num // den

    found: set[Root] = set(simples)
    frontier = list(simples)
    while frontier:
        nxt = []
        for beta in frontier:
            for i in range(n):
                c = pair(beta, i)
                img = tuple(beta[j] - c * int(j == i) for j in range(n))
                if all(x >= 0 for x in img) and any(img) and img not in found:
                    found.add(img)
                    nxt.append(img)
        frontier = nxt
    return frozenset(found)


@lru_cache(maxsize=None)
def _build_cached(components: tuple[tuple[str, int], ...]) -> RootDatum:
    n = sum(r for _, r in components)
    gram = [[0] * n for _ in range(n)]
    off = 0
    for letter, rank in components:
        block = _gram_component(letter, rank)
        for i in range(rank):
            for j in range(rank):
                gram[off + i][off + j] = block[i][j]
        off += rank
    positives = _closure_positive_roots(gram, n)
    expected = sum(POSITIVE_ROOT_COUNTS[t](r) for t, r in components)
    if len(positives) != expected:
        raise InvariantViolation(
            f"closure found {len(positives)} positive roots, expected {expected}")
    return RootDatum(
        components=components,
        n=n,
        gram=tuple(tuple(row) for row in gram),
        positive_roots=positives,
    )


def build_root_datum(components: Iterable[tuple[str, int] | Sequence]) -> RootDatum:
    """Construct a root datum from (type letter, rank) pairs, e.g. [("A", 7)]."""
    normalized = []
    for comp in components:
        letter, rank = comp
        letter = str(letter).upper()
        rank = int(rank)
        if letter not in _RANK_BOUNDS:
            raise ConfigurationError(f"unknown component type {letter!r}")
        if not _RANK_BOUNDS[letter](rank):
            raise ConfigurationError(f"invalid rank {rank} for type {letter}")
        normalized.append((letter, rank))
    if not normalized:
        raise ConfigurationError("root datum needs at least one component")
    return _build_cached(tuple(normalized))
