"""Shape transition graphs, path counts, and distinct-parts series.

Chains of slices that grow one box at a time project onto a finite directed
graph on shapes.  Grouping the shapes by weight class mod the rank makes
the adjacency matrix block-cyclic, and its rank-th power block diagonal;
the blocks drive linear recurrences for the number ``a_n`` of chains of
length n out of the empty slice, which in turn give the generating function
for cylindric partitions into distinct parts:

    sum over n of a_n * q^(n(n+1)/2) / (q;q)_n.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .core import Profile, Shape, all_shapes, shape_of_zero
from .qpoly import QPoly
from .rings import QuadElement, Ring, ZZ, ring_of
from .series import TruncatedSeries, inv_poch_finite, lambert_zddz
from .slices import Slice, slice_shape, slice_with, successors, zero_slice


class NoRecurrenceFound(Exception):
    pass


@dataclass(frozen=True)
class ShapeTransitionGraph:
    rank: int
    level: int
    nodes: tuple[Shape, ...]
    edges: frozenset[tuple[Shape, Shape]]  # (source, target), weight goes up 1
    marked: Shape | None = None

    def out_neighbors(self, s: Shape) -> list[Shape]:
        return sorted((t for f, t in self.edges if f == s), key=lambda x: x.parts)

    def in_neighbors(self, t: Shape) -> list[Shape]:
        return sorted((f for f, tt in self.edges if tt == t), key=lambda x: x.parts)

    def to_adjacency_text(self) -> str:
        lines = []
        for s in self.nodes:
            targets = " ".join(str(t) for t in self.out_neighbors(s))
            mark = " *" if s == self.marked else ""
            lines.append(f"{s}{mark}: {targets}")
        return "\n".join(lines)


def build_graph(rank: int, level: int, profile: Profile | None = None
                ) -> ShapeTransitionGraph:
    """Directed graph on all shapes of the family, one edge per outer-corner
    addition, computed on representative slices far from the length floor."""
    nodes = tuple(all_shapes(rank, level))
    rep_profile = profile if profile is not None else Profile((level,) + (0,) * (rank - 1))
    edges = set()
    for sh in nodes:
        # Representative: the minimal slice of this shape pushed up by enough
        # whole columns that the length floor never interferes.
        w0 = _min_weight(rep_profile, sh)
        rep = slice_with(rep_profile, sh, w0 + rank * (level + 1))
        assert rep is not None
        for nxt in successors(rep):
            edges.add((sh, slice_shape(nxt)))
    marked = shape_of_zero(profile) if profile is not None else None
    return ShapeTransitionGraph(rank, level, nodes, frozenset(edges), marked)


def _min_weight(profile: Profile, shape: Shape) -> int:
    from .slices import min_slice_weight
    return min_slice_weight(profile, shape)


def weight_class_order(graph: ShapeTransitionGraph) -> tuple[list[Shape], list[int]]:
    """Shapes grouped by |shape| mod rank (class 0 first), lexicographic
    inside a class; returns (ordering, class sizes)."""
    classes: list[list[Shape]] = [[] for _ in range(graph.rank)]
    for s in sorted(graph.nodes, key=lambda x: x.parts):
        classes[s.weight % graph.rank].append(s)
    order = [s for cl in classes for s in cl]
    return order, [len(cl) for cl in classes]


def adjacency_matrix(graph: ShapeTransitionGraph
                     ) -> tuple[list[Shape], list[list[int]], list[int]]:
    """(ordering, matrix, class sizes) with entry [i][j] = 1 when an edge
    runs from node j to node i, so the matrix acts on count vectors."""
    order, sizes = weight_class_order(graph)
    idx = {s: i for i, s in enumerate(order)}
    n = len(order)
    mat = [[0] * n for _ in range(n)]
    for f, t in graph.edges:
        mat[idx[t]][idx[f]] = 1
    return order, mat, sizes


def matrix_power(mat: Sequence[Sequence[int]], k: int) -> list[list[int]]:
    n = len(mat)
    result = [[int(i == j) for j in range(n)] for i in range(n)]
    base = [list(row) for row in mat]
    while k:
        if k & 1:
            result = _matmul(result, base)
        base = _matmul(base, base)
        k >>= 1
    return result


def _matmul(a, b):
    n = len(a)
    return [[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)]
            for i in range(n)]


def diagonal_blocks(mat: Sequence[Sequence[int]], sizes: Sequence[int]
                    ) -> list[list[list[int]]]:
    """Cut a block-diagonal matrix along the class sizes; raises if any
    off-block entry is nonzero."""
    blocks = []
    start = 0
    n = len(mat)
    for size in sizes:
        stop = start + size
        for i in range(start, stop):
            for j in range(n):
                if not (start <= j < stop) and mat[i][j] != 0:
                    raise ValueError(f"matrix is not block diagonal at {(i, j)}")
        blocks.append([[mat[i][j] for j in range(start, stop)]
                       for i in range(start, stop)])
        start = stop
    return blocks


def char_poly(block: Sequence[Sequence] ) -> QPoly:
    """Monic characteristic polynomial det(xI - M), computed by
    fraction-free (Bareiss) elimination over exact polynomials."""
    n = len(block)
    m = [[QPoly((0, 1)) if i == j else QPoly() for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            m[i][j] = m[i][j] - QPoly((block[i][j],))
    sign = 1
    prev = QPoly.one()
    for k in range(n - 1):
        if not m[k][k]:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                continue
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]).div_exact(prev)
            m[i][k] = QPoly()
        prev = m[k][k]
    det = m[n - 1][n - 1] if n else QPoly.one()
    return det if sign == 1 else -det


@dataclass(frozen=True)
class PathCountTable:
    """Chain counts out of the empty slice, total and per ending shape."""

    profile: Profile
    order: int
    totals: tuple[int, ...]                       # a_n for n = 0..order
    by_shape: tuple[tuple[tuple[Shape, int], ...], ...]

    def count_at(self, n: int, shape: Shape) -> int:
        return dict(self.by_shape[n]).get(shape, 0)


def path_counts(profile: Profile, order: int) -> PathCountTable:
    """Dynamic program over slices of weight <= order; a chain advances by
    one outer corner per step, so layer n holds the counts after n steps."""
    layer: dict[Slice, int] = {zero_slice(profile): 1}
    totals = [1]
    by_shape = [((slice_shape(zero_slice(profile)), 1),)]
    for _ in range(order):
        nxt: dict[Slice, int] = {}
        for s, cnt in layer.items():
            for t in successors(s):
                nxt[t] = nxt.get(t, 0) + cnt
        layer = nxt
        totals.append(sum(layer.values()))
        shapes: dict[Shape, int] = {}
        for s, cnt in layer.items():
            shapes[slice_shape(s)] = shapes.get(slice_shape(s), 0) + cnt
        by_shape.append(tuple(sorted(shapes.items(), key=lambda kv: kv[0].parts)))
    return PathCountTable(profile, order, tuple(totals), tuple(by_shape))


@dataclass(frozen=True)
class LinearRecurrence:
    """A_0 b_n + A_1 b_{n-1} + ... + A_v b_{n-v} = 0.

    ``exceptions`` counts the leading windows that break the rule: the
    relation holds at every n >= order + exceptions.
    """

    coeffs: tuple[Fraction, ...]   # A_0..A_v, A_0 = 1
    exceptions: int

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def holds_at(self, seq: Sequence, n: int) -> bool:
        v = self.order
        if n < v:
            return False
        return sum(self.coeffs[i] * Fraction(seq[n - i]) for i in range(v + 1)) == 0

    def characteristic(self) -> QPoly:
        """Companion characteristic polynomial, highest power first in x."""
        return QPoly(tuple(reversed(self.coeffs)))

    def __str__(self) -> str:
        terms = " + ".join(f"({a})*b[n-{i}]" if i else f"({a})*b[n]"
                           for i, a in enumerate(self.coeffs))
        return f"{terms} = 0  ({self.exceptions} exceptional windows)"


def fit_recurrence(values: Sequence, modulus: int = 1, residue: int = 0,
                   max_order: int | None = None) -> LinearRecurrence:
    """Minimal-order constant-coefficient recurrence for a subsequence.

    Takes values[residue::modulus], solves for rational coefficients by
    exact elimination on the trailing windows, then scans from the front
    for the exceptional prefix.  Each candidate order v needs at least
    3v + 2 terms; raises NoRecurrenceFound past the order cap.
    """
    seq = [Fraction(v) for v in values[residue::modulus]]
    m = len(seq)
    cap = (m - 2) // 3 if max_order is None else max_order
    for v in range(cap + 1):
        if m < 3 * v + 2:
            break
        sol = _solve_tail(seq, v)
        if sol is None:
            continue
        last_bad = v - 1
        for n in range(v, m):
            if seq[n] != sum(sol[i - 1] * seq[n - i] for i in range(1, v + 1)):
                last_bad = n
        exceptions = last_bad - v + 1
        # Demand enough validated windows beyond the exceptional prefix.
        if m - (v + exceptions) >= v + 2:
            coeffs = (Fraction(1),) + tuple(-c for c in sol)
            return LinearRecurrence(coeffs, exceptions)
    raise NoRecurrenceFound(f"no recurrence of order <= {cap} fits {len(seq)} terms")


def _solve_tail(seq: list[Fraction], v: int) -> list[Fraction] | None:
    """Coefficients c with seq[n] = sum c_i seq[n-i] on the trailing windows."""
    m = len(seq)
    if v == 0:
        tail = seq[max(0, m - 2):]
        return [] if all(x == 0 for x in tail) else None
    rows = [[seq[n - i] for i in range(1, v + 1)] + [seq[n]]
            for n in range(m - 1, max(v - 1, m - 2 * v - 2), -1)]
    return _solve_exact(rows, v)


def _solve_exact(rows: list[list[Fraction]], v: int) -> list[Fraction] | None:
    """Gauss elimination over Fractions; None when inconsistent; free
    variables default to zero."""
    mat = [list(r) for r in rows]
    pivots: list[tuple[int, int]] = []
    row = 0
    for col in range(v):
        piv = next((i for i in range(row, len(mat)) if mat[i][col] != 0), None)
        if piv is None:
            continue
        mat[row], mat[piv] = mat[piv], mat[row]
        lead = mat[row][col]
        mat[row] = [x / lead for x in mat[row]]
        for i in range(len(mat)):
            if i != row and mat[i][col] != 0:
                factor = mat[i][col]
                mat[i] = [a - factor * b for a, b in zip(mat[i], mat[row])]
        pivots.append((row, col))
        row += 1
    for i in range(row, len(mat)):
        if mat[i][v] != 0:
            return None
    sol = [Fraction(0)] * v
    for r, c in pivots:
        sol[c] = mat[r][v]
    return sol


def distinct_gf(profile: Profile, order: int) -> TruncatedSeries:
    """Generating function for cylindric partitions into distinct parts:
    sum over n of a_n q^{n(n+1)/2} / (q;q)_n, truncated."""
    top = 0
    while (top + 1) * (top + 2) // 2 <= order:
        top += 1
    counts = path_counts(profile, top)
    total = TruncatedSeries.zero(ZZ, order)
    for n in range(top + 1):
        tri = n * (n + 1) // 2
        if tri > order:
            break
        term = inv_poch_finite(n, order).shift(tri).scale(counts.totals[n])
        total = total + term
    return total


@dataclass(frozen=True)
class ClosedFormReport:
    profile: Profile
    order: int
    ok: bool
    first_mismatch: int | None
    irrational_ok: bool

    def __str__(self) -> str:
        status = "ok" if self.ok and self.irrational_ok else "MISMATCH"
        extra = "" if self.first_mismatch is None else f" at q^{self.first_mismatch}"
        return (f"closed form for {self.profile} to q^{self.order}: {status}{extra}; "
                f"irrational parts cancel: {self.irrational_ok}")


def verify_closed_form(profile: Profile, combination, residual, order: int,
                       ring: Ring | None = None) -> ClosedFormReport:
    """Check distinct_gf against residual(q) + sum of alpha * termwise
    z-derivative series.

    ``combination`` lists (alpha, beta, k) triples, evaluated as
    alpha * sum n^k beta^n q^{n(n+1)/2}/(q;q)_n; ``residual`` is a low-order
    coefficient list.  Over a quadratic field the final coefficients must
    also have vanishing irrational part.
    """
    if ring is None:
        probe = next(iter(combination), None)
        ring = ring_of(probe[0]) if probe else ZZ
    total = TruncatedSeries.from_coeffs(ring, list(residual), order)
    for alpha, beta, k in combination:
        term = lambert_zddz(beta, k, order, ring).scale(alpha)
        total = total + term
    reference = distinct_gf(profile, order)
    irrational_ok = True
    first_bad = None
    for i in range(order + 1):
        lhs = total.coeffs[i]
        rhs = ring.coerce(reference.coeffs[i])
        if isinstance(lhs, QuadElement) and lhs.b != 0:
            irrational_ok = False
        if lhs != rhs and first_bad is None:
            first_bad = i
    return ClosedFormReport(profile, order, first_bad is None, first_bad,
                            irrational_ok)


def solve_residual(profile: Profile, combination, degree_bound: int,
                   order: int, ring: Ring) -> QPoly | None:
    """Convenience mode: the residual polynomial (degree <= degree_bound)
    that reconciles the weighted products with distinct_gf, or None when
    the difference is not a polynomial of that degree."""
    total = TruncatedSeries.zero(ring, order)
    for alpha, beta, k in combination:
        total = total + lambert_zddz(beta, k, order, ring).scale(alpha)
    diff = distinct_gf(profile, order).into_ring(ring) - total
    if any(diff.coeffs[i] for i in range(degree_bound + 1, order + 1)):
        return None
    return QPoly(diff.coeffs[:degree_bound + 1])
