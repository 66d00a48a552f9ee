"""The costalk-to-stalk pipeline: fiber matrices, graded defect, multiplicities.

For a word and a Weyl element x, the fiber basis values form an upper
triangular matrix H over the fiber (rows and columns ascending in the fiber
order) whose diagonal is the normalizer a(gamma).  With P the diagonal matrix
of full load products, the inclusion of the costalk module into the stalk
module is described by the transition matrix (H^-1)^T P H^-1, all of whose
entries are divisible by the Euler class e_x (the product of the positive
roots inverted by x^-1).

Grading bookkeeping for the divided matrix: source element i sits in
cohomological degree 2(r - |D(gamma_i)| - l(x)), target element j in degree
2|D(gamma_j)|, and the (i, j) entry is homogeneous of polynomial degree
(d_src(i) - d_tgt(j)) / 2.  The scalar diagonal blocks A^(n) collect the
degree-n-to-degree-n constants; their ranks over the coefficient field give
the defect, a Laurent polynomial in v, and the multiplicities m(x, d) are
read off via d = d_x + n - r with d_x = l(x).
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

from .cohom import a_poly, b_value, load_product
from .errors import ConfigurationError, InvariantViolation
from .gallery import Gallery, Word, enumerate_fiber, wall_data
from .polyring import FieldSpec, LaurentV, Poly, RatFn, exact_divide, linear_form
from .rootsys import WeylElement


@dataclass(frozen=True)
class FiberMatrix:
    """A square matrix indexed by the ascending fiber at x."""

    word: Word
    x: WeylElement
    order: tuple[Gallery, ...]
    entries: tuple[tuple, ...]  # Poly or RatFn, by kind
    kind: str  # H | P | inverse | transition | divided

    @property
    def size(self) -> int:
        return len(self.order)

    def entry(self, i: int, j: int):
        return self.entries[i][j]


def matrix_H(word: Word, x: WeylElement) -> FiberMatrix:
    """H[i][j] = b_{gamma_i}(delta_j), upper triangular with diagonal a(gamma_i)."""
    fiber = enumerate_fiber(word, x)
    if not fiber:
        raise ConfigurationError("empty fiber")
    entries = tuple(tuple(b_value(g, d) for d in fiber) for g in fiber)
    m = FiberMatrix(word, x, fiber, entries, "H")
    _assert_triangular(m)
    return m


def _assert_triangular(H: FiberMatrix) -> None:
    for i, gamma in enumerate(H.order):
        for j in range(i):
            if not H.entries[i][j].is_zero():
                raise InvariantViolation("fiber matrix is not upper triangular")
        if H.entries[i][i] != a_poly(gamma):
            raise InvariantViolation("fiber matrix diagonal differs from a(gamma)")


def matrix_P(word: Word, x: WeylElement) -> FiberMatrix:
    """Diagonal matrix of full load products over the fiber."""
    fiber = enumerate_fiber(word, x)
    if not fiber:
        raise ConfigurationError("empty fiber")
    zero = Poly.zero(word.datum.n)
    entries = tuple(
        tuple(load_product(g) if i == j else zero for j in range(len(fiber)))
        for i, g in enumerate(fiber))
    return FiberMatrix(word, x, fiber, entries, "P")


def invert_upper_triangular(H: FiberMatrix) -> FiberMatrix:
    """Exact inverse by back-substitution; denominators stay factored."""
    m = H.size
    n = H.word.datum.n
    zero = RatFn(Poly.zero(n))
    one = Poly.const(n, 1)
    inv: list[list[RatFn]] = [[zero] * m for _ in range(m)]
    diag_dens = []
    for gamma in H.order:
        wd = wall_data(gamma)
        den: dict = {}
        for i in sorted(wd.D):
            root = wd.beta_tilde[i - 1]
            den[root] = den.get(root, 0) + 1
        diag_dens.append(den)
    for j in range(m):
        inv[j][j] = RatFn(one, diag_dens[j])
        for i in range(j - 1, -1, -1):
            acc = zero
            for k in range(i + 1, j + 1):
                if H.entries[i][k].is_zero() or inv[k][j].is_zero():
                    continue
                acc = acc + inv[k][j] * H.entries[i][k]
            if acc.is_zero():
                continue
            inv[i][j] = -(acc * RatFn(one, diag_dens[i]))
    return FiberMatrix(H.word, H.x, H.order, tuple(tuple(row) for row in inv), "inverse")


def euler_class(word: Word, x: WeylElement) -> Poly:
    """Product of the inversion-set linear forms; degree = length(x)."""
    datum = word.datum
    out = Poly.const(datum.n, 1)
    for root in sorted(datum.inversion_set(x)):
        out = out * linear_form(root)
    return out


def transition_matrix(word: Word, x: WeylElement,
                      _parts: tuple[FiberMatrix, FiberMatrix] | None = None) -> FiberMatrix:
    """(H^-1)^T P H^-1; asserted symmetric with polynomial entries."""
    if _parts is None:
        H = matrix_H(word, x)
        Hinv = invert_upper_triangular(H)
    else:
        H, Hinv = _parts
    fiber = H.order
    m = len(fiber)
    n = word.datum.n
    products = [load_product(g) for g in fiber]
    rows: list[list[Poly]] = [[Poly.zero(n)] * m for _ in range(m)]
    for i in range(m):
        for j in range(i, m):
            acc = RatFn(Poly.zero(n))
            for k in range(m):
                left = Hinv.entries[k][i]
                right = Hinv.entries[k][j]
                if left.is_zero() or right.is_zero():
                    continue
                acc = acc + left * right * products[k]
            if not acc.is_poly():
                raise InvariantViolation(
                    f"transition entry ({i + 1},{j + 1}) kept a denominator: {acc}")
            rows[i][j] = rows[j][i] = acc.to_poly()
    return FiberMatrix(word, x, fiber, tuple(tuple(r) for r in rows), "transition")


def divide_by_euler(T: FiberMatrix, e_x: Poly) -> FiberMatrix:
    """Entrywise exact division by the Euler class."""
    entries = tuple(
        tuple(exact_divide(v, e_x) for v in row) for row in T.entries)
    return FiberMatrix(T.word, T.x, T.order, entries, "divided")


@dataclass(frozen=True)
class CostalkData:
    """Everything the defect needs, computed once per (word, x) over Z."""

    word: Word
    x: WeylElement
    H: FiberMatrix
    Hinv: FiberMatrix
    P: FiberMatrix
    transition: FiberMatrix
    euler: Poly
    divided: FiberMatrix
    d_sets: tuple[int, ...]      # |D(gamma_i)| per fiber index
    x_length: int

    @property
    def r(self) -> int:
        return self.word.r

    def source_degree(self, i: int) -> int:
        return 2 * (self.r - self.d_sets[i] - self.x_length)

    def target_degree(self, j: int) -> int:
        return 2 * self.d_sets[j]


@functools.lru_cache(maxsize=None)
def costalk_data(word: Word, x: WeylElement) -> CostalkData:
    H = matrix_H(word, x)
    Hinv = invert_upper_triangular(H)
    _assert_inverse(H, Hinv)
    P = matrix_P(word, x)
    T = transition_matrix(word, x, _parts=(H, Hinv))
    e_x = euler_class(word, x)
    divided = divide_by_euler(T, e_x)
    d_sets = tuple(len(wall_data(g).D) for g in H.order)
    data = CostalkData(word, x, H, Hinv, P, T, e_x, divided, d_sets,
                       word.datum.length(x))
    _assert_divided_degrees(data)
    return data


def _assert_inverse(H: FiberMatrix, Hinv: FiberMatrix) -> None:
    m = H.size
    n = H.word.datum.n
    for i in range(m):
        for j in range(i, m):
            acc = RatFn(Poly.zero(n))
            for k in range(i, j + 1):
                acc = acc + Hinv.entries[k][j] * H.entries[i][k]
            want = 1 if i == j else 0
            if acc != RatFn(Poly.const(n, want)):
                raise InvariantViolation(f"H * H^-1 differs from identity at ({i},{j})")


def _assert_divided_degrees(data: CostalkData) -> None:
    m = data.divided.size
    for i in range(m):
        for j in range(m):
            entry = data.divided.entries[i][j]
            predicted = (data.source_degree(i) - data.target_degree(j)) // 2
            if predicted < 0:
                if not entry.is_zero():
                    raise InvariantViolation(
                        f"negative-degree entry ({i + 1},{j + 1}) is nonzero")
            elif not entry.is_zero() and entry.homogeneous_degree() != predicted:
                raise InvariantViolation(
                    f"entry ({i + 1},{j + 1}) has degree "
                    f"{entry.homogeneous_degree()}, predicted {predicted}")


# -- ranks over the coefficient field ---------------------------------------------


def rank_rational(matrix: list[list[int]]) -> int:
    """Rank over Q by fraction-free (Bareiss) elimination on integers."""
    m = [row[:] for row in matrix]
    if not m or not m[0]:
        return 0
    rows, cols = len(m), len(m[0])
    rank = 0
    prev = 1
    for col in range(cols):
        piv = next((r for r in range(rank, rows) if m[r][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for r in range(rank + 1, rows):
            for c in range(col + 1, cols):
                m[r][c] = (m[r][c] * m[rank][col] - m[r][col] * m[rank][c]) // prev
            m[r][col] = 0
        prev = m[rank][col]
        rank += 1
        if rank == rows:
            break
    return rank


def rank_mod_p(matrix: list[list[int]], p: int) -> int:
    m = [[v % p for v in row] for row in matrix]
    if not m or not m[0]:
        return 0
    rows, cols = len(m), len(m[0])
    rank = 0
    for col in range(cols):
        piv = next((r for r in range(rank, rows) if m[r][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][col], p - 2, p) if p > 2 else m[rank][col]
        m[rank] = [(v * inv) % p for v in m[rank]]
        for r in range(rows):
            if r != rank and m[r][col]:
                f = m[r][col]
                m[r] = [(a - f * b) % p for a, b in zip(m[r], m[rank])]
        rank += 1
        if rank == rows:
            break
    return rank


def field_rank(matrix: list[list[int]], k: FieldSpec) -> int:
    if k.characteristic == 0:
        return rank_rational(matrix)
    return rank_mod_p(matrix, k.characteristic)


# -- the defect --------------------------------------------------------------------


@dataclass(frozen=True)
class Block:
    """The scalar degree-n block: rows index targets, columns index sources."""

    n: int
    rows: int
    cols: int
    rank: int
    entries: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class DefectReport:
    field: FieldSpec
    defect: LaurentV
    blocks: tuple[Block, ...]
    multiplicities: dict[int, int]
    d_x: int
    r: int

    def reconstructed_defect(self) -> LaurentV:
        """The Laurent polynomial sum of m(x,d) v^(d_x - d - r); must equal defect."""
        out: dict[int, int] = {}
        for d, m in self.multiplicities.items():
            e = self.d_x - d - self.r
            out[e] = out.get(e, 0) + m
        return LaurentV.from_dict(out)


def defect(word: Word, x: WeylElement, k: FieldSpec) -> DefectReport:
    """Graded defect of the divided costalk-to-stalk matrix over k."""
    k.check(word.datum)
    data = costalk_data(word, x)
    m = data.divided.size
    sources: dict[int, list[int]] = {}
    targets: dict[int, list[int]] = {}
    for i in range(m):
        sources.setdefault(data.source_degree(i), []).append(i)
        targets.setdefault(data.target_degree(i), []).append(i)
    blocks = []
    defect_coeffs: dict[int, int] = {}
    for n in sorted(set(sources) & set(targets)):
        srcs = sources[n]
        tgts = targets[n]
        block = [[k.reduce_int(data.divided.entries[i][j].constant_value())
                  for i in srcs] for j in tgts]
        rank = field_rank(block, k)
        blocks.append(Block(n, len(tgts), len(srcs), rank,
                            tuple(tuple(row) for row in block)))
        if rank:
            defect_coeffs[-n] = rank
    laurent = LaurentV.from_dict(defect_coeffs)
    mult = {data.x_length + n - data.r: c for n, c in
            ((-e, c) for e, c in laurent.coeffs)}
    report = DefectReport(k, laurent, tuple(blocks), mult, data.x_length, data.r)
    if report.reconstructed_defect() != laurent:
        raise InvariantViolation("multiplicity bookkeeping does not reproduce the defect")
    return report


@dataclass(frozen=True)
class TorsionReport:
    word: Word
    x: WeylElement
    base: DefectReport
    primes: tuple[tuple[int, DefectReport], ...]
    torsion_primes: tuple[int, ...]

    def differing_blocks(self, p: int) -> tuple[tuple[int, int, int], ...]:
        """(n, rank over Q, rank over F_p) for blocks whose rank differs."""
        by_n = {b.n: b.rank for b in self.base.blocks}
        rep = dict(self.primes)[p]
        return tuple((b.n, by_n.get(b.n, 0), b.rank)
                     for b in rep.blocks if by_n.get(b.n, 0) != b.rank)


def torsion_scan(word: Word, x: WeylElement, primes) -> TorsionReport:
    """Compare the defect over Q against each requested prime."""
    base = defect(word, x, FieldSpec(0))
    rows = []
    torsion = []
    for p in primes:
        rep = defect(word, x, FieldSpec(p))
        rows.append((p, rep))
        if rep.defect != base.defect:
            torsion.append(p)
    return TorsionReport(word, x, base, tuple(rows), tuple(torsion))
