"""Matrix realizations of real semisimple Lie algebras with involutions.

Algebras are spans of exact rational matrices with bracket = commutator.
Complex and quaternionic algebras are realized as real matrix algebras
(C as 2x2 blocks, H as 4x4), so a single real engine serves all the
classical families. Involutions are linear maps on basis coordinates,
usually of the form X -> P X P^-1 or X -> -P X^T P^-1.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .errors import IrrationalSpectrum, NotASubalgebra, SignatureMismatch
from .linalg import Subspace, kernel_basis, rref
from . import rootdata


class SMat:
    """Sparse square matrix over Q, keyed by (row, col)."""

    __slots__ = ("n", "entries")

    def __init__(self, n: int, entries=None):
        self.n = n
        self.entries: dict[tuple[int, int], Fraction] = {}
        if entries:
            for (i, j), v in entries.items():
                if v:
                    self.entries[(i, j)] = v

    @classmethod
    def from_dense(cls, rows) -> "SMat":
        n = len(rows)
        e = {}
        for i, row in enumerate(rows):
            for j, v in enumerate(row):
                if v:
                    e[(i, j)] = v
        return cls(n, e)

    @classmethod
    def unit(cls, n: int, i: int, j: int, v=1) -> "SMat":
        return cls(n, {(i, j): v})

    def dense(self):
        rows = [[Fraction(0)] * self.n for _ in range(self.n)]
        for (i, j), v in self.entries.items():
            rows[i][j] = Fraction(v)
        return rows

    def copy(self) -> "SMat":
        return SMat(self.n, dict(self.entries))

    def __add__(self, other: "SMat") -> "SMat":
        e = dict(self.entries)
        for k, v in other.entries.items():
            w = e.get(k, 0) + v
            if w:
                e[k] = w
            elif k in e:
                del e[k]
        return SMat(self.n, e)

    def __sub__(self, other: "SMat") -> "SMat":
        e = dict(self.entries)
        for k, v in other.entries.items():
            w = e.get(k, 0) - v
            if w:
                e[k] = w
            elif k in e:
                del e[k]
        return SMat(self.n, e)

    def scale(self, c) -> "SMat":
        if not c:
            return SMat(self.n)
        return SMat(self.n, {k: v * c for k, v in self.entries.items()})

    def __matmul__(self, other: "SMat") -> "SMat":
        byrow: dict[int, list] = {}
        for (i, j), v in other.entries.items():
            byrow.setdefault(i, []).append((j, v))
        e: dict[tuple[int, int], Fraction] = {}
        for (i, k), a in self.entries.items():
            for j, b in byrow.get(k, ()):
                key = (i, j)
                w = e.get(key, 0) + a * b
                if w:
                    e[key] = w
                elif key in e:
                    del e[key]
        return SMat(self.n, e)

    def bracket(self, other: "SMat") -> "SMat":
        return (self @ other) - (other @ self)

    def transpose(self) -> "SMat":
        return SMat(self.n, {(j, i): v for (i, j), v in self.entries.items()})

    def trace(self):
        return sum((v for (i, j), v in self.entries.items() if i == j), start=0)

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other):
        return isinstance(other, SMat) and self.n == other.n and self.entries == other.entries

    def __hash__(self):
        return hash((self.n, tuple(sorted(self.entries.items()))))

    def flat(self) -> dict[int, Fraction]:
        return {i * self.n + j: v for (i, j), v in self.entries.items()}


def _sparse_rref(vecs: list[dict[int, Fraction]]):
    """RREF of sparse vectors; returns (rows as dicts, pivot list)."""
    rows = [dict(v) for v in vecs if v]
    done: list[dict[int, Fraction]] = []
    pivots: list[int] = []
    while rows:
        piv = min(min(r) for r in rows)
        take = None
        for idx, r in enumerate(rows):
            if min(r) == piv:
                take = idx
                break
        row = rows.pop(take)
        inv = Fraction(1) / Fraction(row[piv])
        row = {k: Fraction(v) * inv for k, v in row.items()}
        nxt = []
        for r in rows:
            c = r.get(piv)
            if c:
                out = dict(r)
                for k, v in row.items():
                    w = out.get(k, 0) - c * v
                    if w:
                        out[k] = w
                    elif k in out:
                        del out[k]
                if out:
                    nxt.append(out)
            else:
                nxt.append(r)
        rows = nxt
        for d, p in zip(done, pivots):
            c = d.get(piv)
            if c:
                for k, v in row.items():
                    w = d.get(k, 0) - c * v
                    if w:
                        d[k] = w
                    elif k in d:
                        del d[k]
        done.append(row)
        pivots.append(piv)
    order = sorted(range(len(done)), key=lambda i: pivots[i])
    return [done[i] for i in order], [pivots[i] for i in order]


class MatrixLieAlgebra:
    """A real Lie algebra of rational matrices, closed under commutator."""

    def __init__(self, ambient_size: int, basis_mats: Sequence[SMat],
                 label: str = "", check_closure: bool = True,
                 check_semisimple: bool = False):
        self.ambient_size = ambient_size
        rows, pivots = _sparse_rref([m.flat() for m in basis_mats])
        if len(rows) != len(basis_mats):
            raise ValueError(f"{label}: basis matrices are linearly dependent")
        self._rows = rows
        self._pivots = pivots
        self.basis: list[SMat] = []
        n = ambient_size
        for r in rows:
            self.basis.append(SMat(n, {(k // n, k % n): v for k, v in r.items()}))
        self.label = label
        if check_closure:
            self._check_closure()
        if check_semisimple:
            if not self.killing_nondegenerate():
                raise ValueError(f"{label}: Killing form is degenerate")

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __repr__(self):
        return f"MatrixLieAlgebra({self.label or '?'}, dim={self.dim}, n={self.ambient_size})"

    # -- coordinates --------------------------------------------------
    def reduce_flat(self, vec: dict[int, Fraction]):
        """Reduce a flattened matrix against the basis; (coords, residual)."""
        v = {k: Fraction(x) for k, x in vec.items() if x}
        coords = [Fraction(0)] * self.dim
        for i, (row, p) in enumerate(zip(self._rows, self._pivots)):
            c = v.get(p)
            if c:
                coords[i] = c
                for k, w in row.items():
                    t = v.get(k, 0) - c * w
                    if t:
                        v[k] = t
                    elif k in v:
                        del v[k]
        return coords, v

    def coords_of(self, mat: SMat):
        coords, res = self.reduce_flat(mat.flat())
        if res:
            raise ValueError(f"matrix not in span of {self.label or 'algebra'}")
        return coords

    def contains_mat(self, mat: SMat) -> bool:
        return not self.reduce_flat(mat.flat())[1]

    def mat_of(self, coords) -> SMat:
        acc = SMat(self.ambient_size)
        for c, b in zip(coords, self.basis):
            if c:
                acc = acc + b.scale(c)
        return acc

    def bracket_coords(self, u, v):
        return self.coords_of(self.mat_of(u).bracket(self.mat_of(v)))

    # -- structure ----------------------------------------------------
    def _check_closure(self):
        for i in range(self.dim):
            bi = self.basis[i]
            for j in range(i + 1, self.dim):
                br = bi.bracket(self.basis[j])
                if self.reduce_flat(br.flat())[1]:
                    raise NotASubalgebra(
                        f"{self.label}: bracket of basis {i},{j} leaves the span")

    def ad_matrix(self, y: SMat):
        """Matrix of ad(y) on basis coordinates (columns = images)."""
        cols = []
        for b in self.basis:
            cols.append(self.coords_of(y.bracket(b)))
        d = self.dim
        rows = [[cols[j][i] for j in range(d)] for i in range(d)]
        return _intify(rows)

    def ad_sparse_cols(self, y: SMat) -> list[dict[int, Fraction]]:
        out = []
        for b in self.basis:
            coords = self.coords_of(y.bracket(b))
            out.append({i: c for i, c in enumerate(coords) if c})
        return out

    def killing_nondegenerate(self) -> bool:
        ads = [self.ad_sparse_cols(b) for b in self.basis]
        d = self.dim
        # K(b_i, b_j) = trace(ad b_i ad b_j)
        rows = []
        for i in range(d):
            adi = ads[i]
            row = []
            for j in range(d):
                adj = ads[j]
                s = Fraction(0)
                for k in range(d):
                    col = adj[k]
                    for l, v in col.items():
                        w = adi[l].get(k)
                        if w:
                            s += w * v
                row.append(s)
            rows.append(row)
        return len(rref(_intify(rows))[0]) == d

    def killing_gram(self, vectors) -> list[list[Fraction]]:
        """Gram matrix of the Killing form on the given coordinate vectors."""
        mats = [self.mat_of(v) for v in vectors]
        ads = [self.ad_sparse_cols(m) for m in mats]
        out = []
        for a in ads:
            row = []
            for b in ads:
                s = Fraction(0)
                for k in range(self.dim):
                    for l, v in b[k].items():
                        w = a[l].get(k)
                        if w:
                            s += w * v
                row.append(s)
            out.append(row)
        return out

    def subspace_mats(self, space: Subspace) -> list[SMat]:
        return [self.mat_of(v) for v in space.basis]

    def is_bracket_closed(self, space: Subspace) -> bool:
        mats = self.subspace_mats(space)
        for i in range(len(mats)):
            for j in range(i + 1, len(mats)):
                br = mats[i].bracket(mats[j])
                if not space.contains(self.coords_of(br)):
                    return False
        return True


def _intify(rows):
    if all(isinstance(x, int) or (isinstance(x, Fraction) and x.denominator == 1)
           for r in rows for x in r):
        return [[int(x) for x in r] for r in rows]
    return rows


class InvolutionMap:
    """An involutive automorphism, stored by its action on basis coordinates."""

    def __init__(self, algebra: MatrixLieAlgebra, columns: list[dict[int, Fraction]],
                 name: str = "", verify: str = "basic"):
        self.algebra = algebra
        self.columns = columns
        self.name = name
        if verify in ("basic", "full"):
            self._verify_square()
        if verify == "full":
            self._verify_automorphism()

    # construction ----------------------------------------------------
    @classmethod
    def from_map(cls, algebra: MatrixLieAlgebra, fn: Callable[[SMat], SMat],
                 name: str = "", verify: str = "basic") -> "InvolutionMap":
        cols = []
        for b in algebra.basis:
            img = fn(b)
            cols.append({i: c for i, c in enumerate(algebra.coords_of(img)) if c})
        return cls(algebra, cols, name=name, verify=verify)

    @classmethod
    def conjugation(cls, algebra: MatrixLieAlgebra, p: SMat, p_inv: SMat | None = None,
                    transpose: bool = False, name: str = "",
                    verify: str = "basic") -> "InvolutionMap":
        """X -> P X P^-1, or X -> -P X^T P^-1 when transpose is set."""
        if p_inv is None:
            p_inv = _invert_smat(p)
        if transpose:
            fn = lambda m: (p @ m.transpose() @ p_inv).scale(-1)
        else:
            fn = lambda m: p @ m @ p_inv
        return cls.from_map(algebra, fn, name=name, verify=verify)

    # application -----------------------------------------------------
    def apply_coords(self, v):
        out = [Fraction(0)] * self.algebra.dim
        for j, c in enumerate(v):
            if c:
                for i, w in self.columns[j].items():
                    out[i] += c * w
        return out

    def apply_mat(self, m: SMat) -> SMat:
        return self.algebra.mat_of(self.apply_coords(self.algebra.coords_of(m)))

    def compose_columns(self, other: "InvolutionMap") -> list[dict[int, Fraction]]:
        """Columns of self о other."""
        cols = []
        for j in range(self.algebra.dim):
            acc: dict[int, Fraction] = {}
            for k, c in other.columns[j].items():
                for i, w in self.columns[k].items():
                    t = acc.get(i, 0) + c * w
                    if t:
                        acc[i] = t
                    elif i in acc:
                        del acc[i]
            cols.append(acc)
        return cols

    def commutes_with(self, other: "InvolutionMap") -> bool:
        return self.compose_columns(other) == other.compose_columns(self)

    def fixed_subspace(self, sign: int) -> Subspace:
        """Eigenspace for eigenvalue `sign` (+1 or -1)."""
        if sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        d = self.algebra.dim
        rows = [[Fraction(0)] * d for _ in range(d)]
        for j, col in enumerate(self.columns):
            for i, v in col.items():
                rows[i][j] = v
        for i in range(d):
            rows[i][i] -= sign
        return kernel_basis(_intify(rows), d)

    # verification ----------------------------------------------------
    def _verify_square(self):
        sq = self.compose_columns(self)
        for j, col in enumerate(sq):
            if col != {j: Fraction(1)}:
                raise ValueError(f"{self.name or 'involution'} does not square to identity")

    def _verify_automorphism(self):
        alg = self.algebra
        imgs = [alg.mat_of(self.apply_coords(_e(alg.dim, i))) for i in range(alg.dim)]
        for i in range(alg.dim):
            for j in range(i + 1, alg.dim):
                lhs = self.apply_mat(alg.basis[i].bracket(alg.basis[j]))
                rhs = imgs[i].bracket(imgs[j])
                if lhs != rhs:
                    raise ValueError(
                        f"{self.name or 'involution'} is not an automorphism "
                        f"(fails on basis pair {i},{j})")

    def is_automorphism_on_pairs(self) -> bool:
        try:
            self._verify_automorphism()
        except ValueError:
            return False
        return True


def _e(n, i):
    v = [Fraction(0)] * n
    v[i] = Fraction(1)
    return v


def _invert_smat(p: SMat) -> SMat:
    n = p.n
    rows = p.dense()
    aug = [rows[i] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return SMat.from_dense([red[i][n:] for i in range(n)])


def fixed_subalgebra(inv: InvolutionMap, sign: int) -> Subspace:
    """Eigenspace of an involution; the +1 space is bracket-closed."""
    return inv.fixed_subspace(sign)


class RootSpace:
    __slots__ = ("alpha", "space", "plus", "minus")

    def __init__(self, alpha, space, plus, minus):
        self.alpha = alpha          # tuple of Fractions, functional on a-basis
        self.space = space          # Subspace in g-coordinates
        self.plus = plus            # +1 eigenspace of theta*sigma
        self.minus = minus

    @property
    def m_plus(self):
        return self.plus.dim

    @property
    def m_minus(self):
        return self.minus.dim


class RootDecomposition:
    """Joint eigenspace decomposition of g under ad(a)."""

    def __init__(self, pair: "SymmetricPairRealization", zero_space: Subspace,
                 roots: dict[tuple, RootSpace]):
        self.pair = pair
        self.zero_space = zero_space
        self.roots = roots

    def root_list(self):
        return sorted(self.roots, key=lambda a: tuple(a))

    def abstract(self) -> "rootdata.RestrictedRootData":
        pair = self.pair
        z_k_h = self.zero_space.intersect(pair.k).intersect(pair.h)
        mult = {a: (rs.m_plus, rs.m_minus) for a, rs in self.roots.items()}
        return rootdata.RestrictedRootData(
            roots=list(self.roots.keys()),
            mult=mult,
            dim_z_k_h=z_k_h.dim,
            dim_z_g_a=self.zero_space.dim,
        )


class SymmetricPairRealization:
    """(g, sigma, theta, a): commuting involutions and a maximal abelian
    subspace of p cap q, with the derived subspaces."""

    def __init__(self, g: MatrixLieAlgebra, sigma: InvolutionMap,
                 theta: InvolutionMap, a_mats: Sequence[SMat],
                 pair_id: str = "", h_label: str = "", check: bool = True):
        self.g = g
        self.sigma = sigma
        self.theta = theta
        self.a_mats = list(a_mats)
        self.a_coords = [tuple(g.coords_of(m)) for m in self.a_mats]
        self.pair_id = pair_id
        self.h_label = h_label
        self.h = sigma.fixed_subspace(+1)
        self.q = sigma.fixed_subspace(-1)
        self.k = theta.fixed_subspace(+1)
        self.p = theta.fixed_subspace(-1)
        self._decomp: RootDecomposition | None = None
        if check:
            self._validate()

    def __repr__(self):
        return f"SymmetricPair({self.pair_id or self.g.label + '/' + self.h_label})"

    @property
    def rank(self) -> int:
        return len(self.a_mats)

    def _validate(self):
        if not self.sigma.commutes_with(self.theta):
            raise ValueError(f"{self.pair_id}: sigma and theta do not commute")
        if self.h.dim + self.q.dim != self.g.dim:
            raise ValueError(f"{self.pair_id}: sigma eigenspaces do not fill g")
        if self.k.dim + self.p.dim != self.g.dim:
            raise ValueError(f"{self.pair_id}: theta eigenspaces do not fill g")
        pq = self.p.intersect(self.q)
        for m in self.a_mats:
            if not pq.contains(self.g.coords_of(m)):
                raise ValueError(f"{self.pair_id}: a is not inside p cap q")
        # pairwise commuting
        for i in range(len(self.a_mats)):
            for j in range(i + 1, len(self.a_mats)):
                if not self.a_mats[i].bracket(self.a_mats[j]).is_zero():
                    raise ValueError(f"{self.pair_id}: a is not abelian")
        # maximality: centralizer of a inside p cap q equals a
        cen = self.centralizer_in(pq)
        a_space = Subspace(self.g.dim, [list(v) for v in self.a_coords])
        if cen != a_space:
            raise ValueError(
                f"{self.pair_id}: a is not maximal abelian in p cap q "
                f"(centralizer has dim {cen.dim}, a has dim {a_space.dim})")
        # direct sum of the four intersections
        dims = (self.k.intersect(self.h).dim + self.k.intersect(self.q).dim
                + self.p.intersect(self.h).dim + self.p.intersect(self.q).dim)
        if dims != self.g.dim:
            raise ValueError(f"{self.pair_id}: four-fold decomposition does not fill g")

    def centralizer_in(self, space: Subspace) -> Subspace:
        """{x in space : [a, x] = 0} as a subspace of g."""
        if space.dim == 0:
            return space
        mats = self.g.subspace_mats(space)
        rows = []
        for y in self.a_mats:
            for col_idx in range(len(mats)):
                pass
            cols = [self.g.coords_of(y.bracket(m)) for m in mats]
            for i in range(self.g.dim):
                rows.append([cols[j][i] for j in range(len(mats))])
        ker = kernel_basis(_intify(rows), len(mats))
        vecs = []
        for kv in ker.basis:
            vec = [Fraction(0)] * self.g.dim
            for c, b in zip(kv, space.basis):
                if c:
                    vec = [x + c * y for x, y in zip(vec, b)]
            vecs.append(vec)
        return Subspace(self.g.dim, vecs)

    # -- restricted root decomposition ---------------------------------
    def root_decomposition(self) -> RootDecomposition:
        if self._decomp is None:
            self._decomp = _decompose(self)
        return self._decomp

    def theta_sigma_columns(self):
        return self.theta.compose_columns(self.sigma)


# ---------------------------------------------------------------------
# eigen machinery


def _ambient_eigenvalues(y: SMat) -> list[Fraction]:
    """Distinct rational eigenvalues of a semisimple rational matrix.

    Raises IrrationalSpectrum if the minimal polynomial does not split
    over Q with simple roots accounting for the full space.
    """
    n = y.n
    rows = y.dense()
    roots: set[Fraction] = set()
    for seed in (1, 2, 3):
        rng = random.Random(seed)
        v = [Fraction(rng.randint(-5, 5)) for _ in range(n)]
        ann = _annihilator(rows, v)
        roots |= set(_rational_roots(ann))
        total = 0
        for t in roots:
            m = [[rows[i][j] - (t if i == j else 0) for j in range(n)] for i in range(n)]
            total += kernel_basis(_intify(m), n).dim
        if total == n:
            return sorted(roots)
    raise IrrationalSpectrum(
        "matrix spectrum does not split over Q; fall back to catalog root data")


def _annihilator(rows, v) -> list[Fraction]:
    """Monic annihilator polynomial of v under the operator, low-to-high coeffs."""
    n = len(v)
    vs = [list(v)]
    while True:
        w = [sum((Fraction(rows[i][j]) * vs[-1][j] for j in range(n)), start=Fraction(0))
             for i in range(n)]
        cols = list(zip(*vs))
        rowsys = [list(c) for c in cols]
        sol = _lin_solve(rowsys, w)
        if sol is not None:
            return [-c for c in sol] + [Fraction(1)]
        vs.append(w)
        if len(vs) > n + 1:
            raise IrrationalSpectrum("annihilator search failed")


def _lin_solve(rows, rhs):
    from .linalg import solve
    return solve(rows, rhs)


def _rational_roots(coeffs: list[Fraction]) -> list[Fraction]:
    """All rational roots (with the polynomial splitting check left to caller)."""
    from math import gcd as _g
    den = 1
    for c in coeffs:
        den = den * c.denominator // _g(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    while ints and ints[-1] == 0:
        ints.pop()
    if not ints:
        return []
    shift = 0
    while ints[0] == 0:
        ints = ints[1:]
        shift = 1
    roots = [Fraction(0)] * shift if shift else []
    a0, an = abs(ints[0]), abs(ints[-1])
    if a0 == 0:
        return sorted(set(roots))

    def divisors(m):
        out = []
        d = 1
        while d * d <= m:
            if m % d == 0:
                out.append(d)
                out.append(m // d)
            d += 1
        return out

    found = set(roots)
    for p in divisors(a0):
        for q in divisors(an):
            for s in (1, -1):
                cand = Fraction(s * p, q)
                if cand in found:
                    continue
                acc = Fraction(0)
                for c in reversed(ints):
                    acc = acc * cand + c
                if acc == 0:
                    found.add(cand)
    return sorted(found)


def _restriction_matrix(dense_op, basis_rows):
    """Matrix of an operator restricted to an invariant subspace.

    basis_rows: canonical (RREF) basis vectors of the subspace. Images are
    re-expressed in that basis; a nonzero residual means the subspace was
    not invariant.
    """
    sub = Subspace(len(basis_rows[0]), basis_rows)
    cols = []
    for b in sub.basis:
        img = [sum((Fraction(dense_op[i][j]) * b[j] for j in range(len(b))
                    if dense_op[i][j]), start=Fraction(0))
               for i in range(len(b))]
        coords = sub.coordinates(img)
        if coords is None:
            raise IrrationalSpectrum("subspace not invariant under operator")
        cols.append(coords)
    k = len(cols)
    return [[cols[j][i] for j in range(k)] for i in range(k)], sub


def _eigen_split(op_rows, candidates):
    """Split the space into eigenspaces of an operator with candidate
    eigenvalues; returns list of (value, kernel row-vectors)."""
    k = len(op_rows)
    if k == 0:
        return []
    # filter candidates through an annihilator of a few vectors
    roots = set()
    for seed in (11, 12):
        rng = random.Random(seed)
        v = [Fraction(rng.randint(-4, 4)) for _ in range(k)]
        ann = _annihilator(op_rows, v)
        for t in candidates:
            acc = Fraction(0)
            for c in reversed(ann):
                acc = acc * t + c
            if acc == 0:
                roots.add(t)
        pieces = []
        total = 0
        for t in sorted(roots):
            m = [[Fraction(op_rows[i][j]) - (t if i == j else 0) for j in range(k)]
                 for i in range(k)]
            ker = kernel_basis(_intify(m), k)
            if ker.dim:
                pieces.append((t, [list(v2) for v2 in ker.basis]))
                total += ker.dim
        if total == k:
            return pieces
    raise IrrationalSpectrum(
        "adjoint action does not split over Q on an invariant subspace")


def _decompose(pair: SymmetricPairRealization) -> RootDecomposition:
    g = pair.g
    d = g.dim
    # candidate ad-eigenvalues = differences of ambient eigenvalues
    cand_per_y = []
    for y in pair.a_mats:
        evs = _ambient_eigenvalues(y)
        cand_per_y.append(sorted({a - b for a in evs for b in evs}))

    pieces: list[tuple[list, tuple]] = [([_e(d, i) for i in range(d)], ())]
    for yi, y in enumerate(pair.a_mats):
        ad_rows = g.ad_matrix(y)
        nxt = []
        for basis_rows, weights in pieces:
            if len(basis_rows) == d:
                op, sub = ad_rows, None
                carriers = None
            else:
                op, sub = _restriction_matrix(ad_rows, basis_rows)
                carriers = sub.basis
            for t, kvecs in _eigen_split(op, cand_per_y[yi]):
                if carriers is None:
                    vecs = kvecs
                else:
                    vecs = []
                    for kv in kvecs:
                        vec = [Fraction(0)] * d
                        for c, b in zip(kv, carriers):
                            if c:
                                vec = [x + c * yv for x, yv in zip(vec, b)]
                        vecs.append(vec)
                nxt.append((vecs, weights + (t,)))
        pieces = nxt

    ts_cols = pair.theta_sigma_columns()
    dim_g = g.dim
    dense_ts = [[Fraction(0)] * dim_g for _ in range(dim_g)]
    for j, col in enumerate(ts_cols):
        for i, v in col.items():
            dense_ts[i][j] = v

    zero = None
    roots: dict[tuple, RootSpace] = {}
    covered = 0
    for basis_rows, weights in pieces:
        space = Subspace(dim_g, basis_rows)
        covered += space.dim
        if all(w == 0 for w in weights):
            zero = space
            continue
        op, sub = _restriction_matrix(dense_ts, [list(b) for b in space.basis])
        plus_vecs, minus_vecs = [], []
        for t, kvecs in _eigen_split(op, [Fraction(1), Fraction(-1)]):
            for kv in kvecs:
                vec = [Fraction(0)] * dim_g
                for c, b in zip(kv, sub.basis):
                    if c:
                        vec = [x + c * yv for x, yv in zip(vec, b)]
                (plus_vecs if t == 1 else minus_vecs).append(vec)
        alpha = tuple(weights)
        roots[alpha] = RootSpace(alpha, space,
                                 Subspace(dim_g, plus_vecs),
                                 Subspace(dim_g, minus_vecs))
    if covered != dim_g or zero is None:
        raise IrrationalSpectrum("root decomposition does not fill g")
    return RootDecomposition(pair, zero, roots)


# ---------------------------------------------------------------------
# operations on pairs


def rank_of_compact_subalgebra(alg: MatrixLieAlgebra, s: Subspace,
                               seed: int = 0, samples: int = 5) -> int:
    """Rank via generic centralizers: min over sampled X of dim ker(ad X|s).

    Sampling is deterministic for a fixed seed; coordinates are integers
    in [-100, 100].
    """
    if s.dim == 0:
        return 0
    if not alg.is_bracket_closed(s):
        raise NotASubalgebra("rank requested for a non-closed subspace")
    mats = alg.subspace_mats(s)
    k = len(mats)
    rng = random.Random(seed)
    best = None
    done = 0
    while done < samples:
        coeffs = [rng.randint(-100, 100) for _ in range(k)]
        if all(c == 0 for c in coeffs):
            continue
        x = SMat(alg.ambient_size)
        for c, m in zip(coeffs, mats):
            if c:
                x = x + m.scale(c)
        cols = [alg.coords_of(x.bracket(m)) for m in mats]
        rows = []
        sub = Subspace(alg.dim, [list(v) for v in s.basis])
        for j in range(k):
            coords = sub.coordinates(cols[j])
            rows.append(coords)
        op = [[rows[j][i] for j in range(k)] for i in range(k)]
        dim_ker = kernel_basis(_intify(op), k).dim
        best = dim_ker if best is None else min(best, dim_ker)
        done += 1
    return best


def sigma_eps_involution(pair: SymmetricPairRealization,
                         eps: "rootdata.Signature",
                         verify: str = "basic") -> InvolutionMap:
    """The twisted involution: sigma on the centralizer of a, eps(alpha)*sigma
    on each restricted root space."""
    decomp = pair.root_decomposition()
    rd = decomp.abstract()
    values = rootdata.extend_to_all_roots(eps, rd)
    g = pair.g
    d = g.dim
    adapted: list[list[Fraction]] = []
    images: list[list[Fraction]] = []
    for v in decomp.zero_space.basis:
        adapted.append(list(v))
        images.append(pair.sigma.apply_coords(v))
    for alpha in decomp.root_list():
        rs = decomp.roots[alpha]
        sgn = values[alpha]
        for v in rs.space.basis:
            adapted.append(list(v))
            img = pair.sigma.apply_coords(v)
            images.append([sgn * x for x in img])
    # columns of sigma_eps on g-coordinates: solve M * A = B with A the
    # adapted basis as columns
    from .linalg import LinearSolver
    solver = LinearSolver([list(v) for v in adapted])
    cols: list[dict[int, Fraction]] = []
    for j in range(d):
        coord = solver.coordinates(_e(d, j))
        img = [Fraction(0)] * d
        for c, im in zip(coord, images):
            if c:
                img = [x + c * y for x, y in zip(img, im)]
        cols.append({i: v for i, v in enumerate(img) if v})
    inv = InvolutionMap(pair.g, cols, name=f"sigma_eps", verify=verify)
    return inv


def g_halfeps_subalgebra(pair: SymmetricPairRealization,
                         heps: "rootdata.HalfSignature") -> Subspace:
    """Fixed algebra of the fourth-root twist: the centralizer of a plus the
    root spaces (and their sigma-images) where the half-signature is 1."""
    decomp = pair.root_decomposition()
    rd = decomp.abstract()
    values = rootdata.extend_to_all_roots(heps, rd)
    vecs = [list(v) for v in decomp.zero_space.basis]
    for alpha, rs in decomp.roots.items():
        if values[alpha] == rootdata.U4_ONE:
            vecs.extend(list(v) for v in rs.space.basis)
    return Subspace(pair.g.dim, vecs)


def isotropy_unimodular(pair: SymmetricPairRealization) -> bool:
    """True iff the isotropy action on g/h is traceless over a basis of h,
    i.e. an h-invariant top form on g/h exists."""
    return reductive_isotropy_unimodular(pair.g, pair.h)


def find_hyperbolic_witness(pair: SymmetricPairRealization, seed: int = 0,
                            samples: int = 8):
    """Search for X0 in p with centralizer exactly the associated algebra.

    Returns (coords_of_X0, diagnostic). coords is None when no witness was
    found; the diagnostic says why.
    """
    g = pair.g
    st_cols = pair.sigma.compose_columns(pair.theta)
    d = g.dim
    rows = [[Fraction(0)] * d for _ in range(d)]
    for j, col in enumerate(st_cols):
        for i, v in col.items():
            rows[i][j] = v
    for i in range(d):
        rows[i][i] -= 1
    ha = kernel_basis(_intify(rows), d)

    # center of h^a
    ha_mats = g.subspace_mats(ha)
    crows = []
    for m in ha_mats:
        cols = [g.coords_of(m.bracket(x)) for x in ha_mats]
        for i in range(d):
            crows.append([cols[j][i] for j in range(len(ha_mats))])
    if not ha_mats:
        return None, "associated algebra is zero"
    cker = kernel_basis(_intify(crows), len(ha_mats))
    center_vecs = []
    for kv in cker.basis:
        vec = [Fraction(0)] * d
        for c, b in zip(kv, ha.basis):
            if c:
                vec = [x + c * y for x, y in zip(vec, b)]
        center_vecs.append(vec)
    center = Subspace(d, center_vecs)
    c_space = center.intersect(pair.p)
    if c_space.dim == 0:
        return None, "center of associated algebra meets p trivially"

    rng = random.Random(seed)
    cmats = g.subspace_mats(c_space)
    for _ in range(samples):
        coeffs = [rng.randint(-100, 100) for _ in range(len(cmats))]
        if all(c == 0 for c in coeffs):
            continue
        x0 = SMat(g.ambient_size)
        for c, m in zip(coeffs, cmats):
            if c:
                x0 = x0 + m.scale(c)
        z = kernel_basis(g.ad_matrix(x0), d)
        if z == ha:
            return g.coords_of(x0), None
    return None, "no sampled central element had centralizer equal to h^a"


class ReductivePairRealization:
    """(g, h) reductive but not necessarily symmetric: h is a theta-stable
    bracket-closed subspace. Used by the invariant-restriction checker."""

    def __init__(self, g: MatrixLieAlgebra, h: Subspace, theta: InvolutionMap,
                 pair_id: str = "", h_label: str = "", check: bool = True):
        self.g = g
        self.h = h
        self.theta = theta
        self.pair_id = pair_id
        self.h_label = h_label
        self.k = theta.fixed_subspace(+1)
        self.k_h = self.k.intersect(h)
        if check:
            if not g.is_bracket_closed(h):
                raise NotASubalgebra(f"{pair_id}: h is not a subalgebra")
            for v in h.basis:
                if not h.contains(theta.apply_coords(list(v))):
                    raise ValueError(f"{pair_id}: h is not theta-stable")

    def __repr__(self):
        return f"ReductivePair({self.pair_id})"


def reductive_isotropy_unimodular(g: MatrixLieAlgebra, h: Subspace) -> bool:
    """Trace of the isotropy action on g/h vanishes over a basis of h."""
    hmats = g.subspace_mats(h)
    hsub = Subspace(g.dim, [list(v) for v in h.basis])
    for x in hmats:
        ad_cols = g.ad_sparse_cols(x)
        tr_g = sum((ad_cols[j].get(j, 0) for j in range(g.dim)), start=Fraction(0))
        tr_h = Fraction(0)
        for j, bv in enumerate(hsub.basis):
            img = [Fraction(0)] * g.dim
            for c_idx, c in enumerate(bv):
                if c:
                    for i, w in ad_cols[c_idx].items():
                        img[i] += c * w
            coords = hsub.coordinates(img)
            if coords is None:
                raise NotASubalgebra("h is not ad(h)-invariant")
            tr_h += coords[j]
        if tr_g - tr_h != 0:
            return False
    return True


def associated_fixed_space(pair: SymmetricPairRealization) -> Subspace:
    """Fixed space of sigma*theta (the associated subalgebra h^a)."""
    st_cols = pair.sigma.compose_columns(pair.theta)
    d = pair.g.dim
    rows = [[Fraction(0)] * d for _ in range(d)]
    for j, col in enumerate(st_cols):
        for i, v in col.items():
            rows[i][j] = v
    for i in range(d):
        rows[i][i] -= 1
    return kernel_basis(_intify(rows), d)
