"""Exact rational linear algebra: row echelon, kernels, subspaces.

All matrices are lists of rows; entries are ints or fractions.Fraction.
Everything is exact; no floating point. Row reduction has a fraction-free
fast path for all-integer input, which is where almost all the time is
spent when decomposing adjoint actions.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

Vector = tuple[Fraction, ...]


def _is_int_matrix(rows) -> bool:
    return all(isinstance(x, int) for row in rows for x in row)


def _strip_row_gcd(row: list[int]) -> list[int]:
    g = 0
    for x in row:
        g = gcd(g, x)
        if g == 1:
            return row
    if g > 1:
        return [x // g for x in row]
    return row


def _rref_int(rows: list[list[int]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form of an integer matrix.

    Forward elimination is fraction-free (cross-multiplication with gcd
    stripping); the final normalization to leading-1 rows produces exact
    Fractions.
    """
    m = [list(r) for r in rows]
    nr = len(m)
    nc = len(m[0]) if nr else 0
    pivots: list[int] = []
    pr = 0
    for pc in range(nc):
        piv = None
        best = None
        for i in range(pr, nr):
            v = m[i][pc]
            if v != 0:
                a = abs(v)
                if best is None or a < best:
                    best, piv = a, i
                    if a == 1:
                        break
        if piv is None:
            continue
        m[pr], m[piv] = m[piv], m[pr]
        prow = m[pr]
        pv = prow[pc]
        for i in range(pr + 1, nr):
            v = m[i][pc]
            if v == 0:
                continue
            row = m[i]
            m[i] = _strip_row_gcd(
                [pv * row[j] - v * prow[j] for j in range(nc)]
            )
        pivots.append(pc)
        pr += 1
    # back substitution over Q
    out: list[list[Fraction]] = [
        [Fraction(x) for x in m[i]] for i in range(pr)
    ]
    for i in range(pr - 1, -1, -1):
        pc = pivots[i]
        inv = Fraction(1, 1) / out[i][pc]
        out[i] = [x * inv for x in out[i]]
        for k in range(i):
            f = out[k][pc]
            if f:
                out[k] = [a - f * b for a, b in zip(out[k], out[i])]
    return out, pivots


def _rref_frac(rows) -> tuple[list[list[Fraction]], list[int]]:
    m = [[Fraction(x) for x in r] for r in rows]
    nr = len(m)
    nc = len(m[0]) if nr else 0
    pivots: list[int] = []
    pr = 0
    for pc in range(nc):
        piv = None
        for i in range(pr, nr):
            if m[i][pc] != 0:
                piv = i
                break
        if piv is None:
            continue
        m[pr], m[piv] = m[piv], m[pr]
        inv = 1 / m[pr][pc]
        m[pr] = [x * inv for x in m[pr]]
        prow = m[pr]
        for i in range(nr):
            if i != pr and m[i][pc] != 0:
                f = m[i][pc]
                m[i] = [a - f * b for a, b in zip(m[i], prow)]
        pivots.append(pc)
        pr += 1
    return m[:pr], pivots


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    rows = [list(r) for r in rows]
    if not rows or not rows[0]:
        return [], []
    if _is_int_matrix(rows):
        return _rref_int(rows)
    return _rref_frac(rows)


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[0])


def kernel_basis(rows: Sequence[Sequence], ncols: int | None = None) -> "Subspace":
    """Exact null space of a matrix, as a canonical Subspace.

    `ncols` is required when `rows` is empty (the zero map), in which case
    the kernel is the full space.
    """
    rows = [list(r) for r in rows]
    if not rows:
        if ncols is None:
            raise ValueError("kernel of empty matrix needs explicit ncols")
        return Subspace.full(ncols)
    nc = len(rows[0])
    if any(len(r) != nc for r in rows):
        raise ValueError("inconsistent row lengths")
    if ncols is not None and ncols != nc:
        raise ValueError("ncols does not match matrix width")
    red, pivots = rref(rows)
    pivset = set(pivots)
    free = [j for j in range(nc) if j not in pivset]
    vecs = []
    for j in free:
        v = [Fraction(0)] * nc
        v[j] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -red[i][j]
        vecs.append(v)
    return Subspace(nc, vecs)


def mat_vec(rows, v):
    return [sum((r[j] * v[j] for j in range(len(v))), start=Fraction(0)) for r in rows]


def mat_mul(a, b):
    nb = len(b[0])
    bt = list(zip(*b))
    return [
        [sum((ra[k] * bc[k] for k in range(len(ra))), start=Fraction(0)) for bc in bt]
        for ra in a
    ]


def identity(n: int) -> list[list[Fraction]]:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def solve(rows, rhs):
    """One exact solution x of A x = rhs, or None if inconsistent."""
    nr = len(rows)
    nc = len(rows[0]) if nr else 0
    aug = [list(rows[i]) + [rhs[i]] for i in range(nr)]
    red, pivots = rref(aug)
    for i, row in enumerate(red):
        if (i >= len(pivots) or pivots[i] == nc) and row[nc] != 0:
            return None
    if pivots and pivots[-1] == nc:
        return None
    x = [Fraction(0)] * nc
    for i, pc in enumerate(pivots):
        x[pc] = red[i][nc]
    return x


class LinearSolver:
    """Reusable exact solver for A x = b with fixed A (column space queries).

    Row-reduces the augmented-identity system once, then answers membership
    and coordinate queries per right-hand side in O(rows * cols).
    """

    def __init__(self, columns: Sequence[Sequence]):
        # store the matrix whose columns are the given vectors
        self.ncols = len(columns)
        self.nrows = len(columns[0]) if columns else 0
        rows = [[Fraction(columns[j][i]) for j in range(self.ncols)]
                for i in range(self.nrows)]
        aug = [rows[i] + [Fraction(int(i == j)) for j in range(self.nrows)]
               for i in range(self.nrows)]
        red, pivots = _rref_frac(aug)
        self._red = red
        self._pivots = [p for p in pivots if p < self.ncols]
        if len(self._pivots) != len(pivots):
            raise ValueError("identity block produced spurious pivots")

    def coordinates(self, vec):
        """Coordinates of vec in the original columns, or None."""
        nc = self.ncols
        acc = [Fraction(0)] * nc
        consistent = True
        for i, row in enumerate(self._red):
            s = sum((row[nc + k] * vec[k] for k in range(self.nrows)),
                    start=Fraction(0))
            if i < len(self._pivots):
                acc[self._pivots[i]] = s
            elif s != 0:
                consistent = False
                break
        if not consistent:
            return None
        return acc


class Subspace:
    """A linear subspace of Q^n in canonical reduced-row-echelon form.

    Equality, containment and intersection are decidable by direct
    comparison of the canonical bases.
    """

    __slots__ = ("ambient_dim", "basis", "_pivots")

    def __init__(self, ambient_dim: int, vectors: Iterable[Sequence]):
        self.ambient_dim = ambient_dim
        vecs = [list(v) for v in vectors]
        for v in vecs:
            if len(v) != ambient_dim:
                raise ValueError("vector length does not match ambient dimension")
        red, pivots = rref(vecs) if vecs else ([], [])
        self.basis: tuple[Vector, ...] = tuple(tuple(r) for r in red)
        self._pivots = tuple(pivots)

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, identity(n))

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, [])

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and self.ambient_dim == other.ambient_dim
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"

    def contains(self, vec) -> bool:
        v = [Fraction(x) for x in vec]
        for row, pc in zip(self.basis, self._pivots):
            c = v[pc]
            if c:
                v = [a - c * b for a, b in zip(v, row)]
        return all(x == 0 for x in v)

    def coordinates(self, vec):
        """Coefficients of vec in the canonical basis, or None."""
        v = [Fraction(x) for x in vec]
        coeffs = []
        for row, pc in zip(self.basis, self._pivots):
            c = v[pc]
            coeffs.append(c)
            if c:
                v = [a - c * b for a, b in zip(v, row)]
        if any(x != 0 for x in v):
            return None
        return coeffs

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.basis)

    def sum(self, other: "Subspace") -> "Subspace":
        self._check_ambient(other)
        return Subspace(self.ambient_dim, list(self.basis) + list(other.basis))

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check_ambient(other)
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.ambient_dim)
        # x in A cap B  <=>  x = u^T A = v^T B; solve [A^T | -B^T] z = 0
        cols = len(self.basis) + len(other.basis)
        rows = []
        for i in range(self.ambient_dim):
            row = [self.basis[j][i] for j in range(len(self.basis))]
            row += [-other.basis[j][i] for j in range(len(other.basis))]
            rows.append(row)
        ker = kernel_basis(rows, cols)
        vecs = []
        for z in ker.basis:
            u = z[: len(self.basis)]
            vec = [
                sum((u[j] * self.basis[j][i] for j in range(len(u))),
                    start=Fraction(0))
                for i in range(self.ambient_dim)
            ]
            vecs.append(vec)
        return Subspace(self.ambient_dim, vecs)

    def _check_ambient(self, other: "Subspace"):
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("ambient dimensions differ")
