"""Concrete realizations of the classical symmetric pairs.

Complex matrices are realified as 2x2 real blocks, quaternions as 4x4
blocks (left regular representation on the basis 1, i, j, k). Every
involution used here is of the form X -> P X P^-1 or X -> -P X^T P^-1
for an explicit rational P, and theta = -transpose is the Cartan
involution of every realization.

Each family ships both the matrix constructor and the matching abstract
root-data recipe; cross-validation of the two is part of the catalog
test suite.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache

from .errors import ParameterViolation
from .linalg import Subspace
from .matrixlie import (InvolutionMap, MatrixLieAlgebra, SMat,
                        SymmetricPairRealization)
from .rootdata import RestrictedRootData

# ----------------------------------------------------------------------
# realification helpers

F0 = Fraction(0)
F1 = Fraction(1)


def rc(n: int, entries: dict) -> SMat:
    """Realify a complex n x n matrix given as {(i, j): (re, im)}."""
    out = {}
    for (i, j), (a, b) in entries.items():
        if a:
            out[(2 * i, 2 * j)] = Fraction(a)
            out[(2 * i + 1, 2 * j + 1)] = Fraction(a)
        if b:
            out[(2 * i, 2 * j + 1)] = Fraction(-b)
            out[(2 * i + 1, 2 * j)] = Fraction(b)
    return SMat(2 * n, out)


_QL = {
    # left-multiplication 4x4 blocks for 1, i, j, k
    0: ((0, 0, 1), (1, 1, 1), (2, 2, 1), (3, 3, 1)),
    1: ((0, 1, -1), (1, 0, 1), (2, 3, -1), (3, 2, 1)),
    2: ((0, 2, -1), (1, 3, 1), (2, 0, 1), (3, 1, -1)),
    3: ((0, 3, -1), (1, 2, -1), (2, 1, 1), (3, 0, 1)),
}


def rq(n: int, entries: dict) -> SMat:
    """Realify a quaternionic n x n matrix given as {(i, j): (a, b, c, d)}."""
    out = {}
    for (i, j), q in entries.items():
        for u in range(4):
            coef = q[u]
            if not coef:
                continue
            for (r, c, s) in _QL[u]:
                key = (4 * i + r, 4 * j + c)
                v = out.get(key, 0) + Fraction(s * coef)
                if v:
                    out[key] = v
                elif key in out:
                    del out[key]
    return SMat(4 * n, out)


def qmul(p, q):
    """Quaternion product of 4-tuples."""
    a1, b1, c1, d1 = p
    a2, b2, c2, d2 = q
    return (
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    )


def qconj(q):
    return (q[0], -q[1], -q[2], -q[3])


def real_mat(n: int, entries: dict) -> SMat:
    return SMat(n, {k: Fraction(v) for k, v in entries.items() if v})


# common realified scalars / forms


def conj_blocks(n: int) -> SMat:
    """rho(complex conjugation): diag(1, -1) per block."""
    e = {}
    for i in range(n):
        e[(2 * i, 2 * i)] = F1
        e[(2 * i + 1, 2 * i + 1)] = -F1
    return SMat(2 * n, e)


def rc_scalar_i(n: int) -> SMat:
    """rho(i * identity)."""
    return rc(n, {(i, i): (0, 1) for i in range(n)})


def rc_diag_signs(signs) -> SMat:
    n = len(signs)
    return rc(n, {(i, i): (signs[i], 0) for i in range(n)})


def rq_diag_signs(signs) -> SMat:
    n = len(signs)
    return rq(n, {(i, i): (signs[i], 0, 0, 0) for i in range(n)})


def sign_vector(p: int, q: int):
    return [1] * p + [-1] * q


# ----------------------------------------------------------------------
# ambient bases for the classical algebras (all exact, all integer)


def basis_sl_r(n: int) -> list[SMat]:
    out = []
    for i in range(n):
        for j in range(n):
            if i != j:
                out.append(SMat.unit(n, i, j))
    for k in range(n - 1):
        out.append(SMat(n, {(k, k): F1, (k + 1, k + 1): -F1}))
    return out


def basis_sl_c(n: int) -> list[SMat]:
    out = []
    for i in range(n):
        for j in range(n):
            if i != j:
                out.append(rc(n, {(i, j): (1, 0)}))
                out.append(rc(n, {(i, j): (0, 1)}))
    for k in range(n - 1):
        out.append(rc(n, {(k, k): (1, 0), (k + 1, k + 1): (-1, 0)}))
        out.append(rc(n, {(k, k): (0, 1), (k + 1, k + 1): (0, -1)}))
    return out


def basis_so_pq(p: int, q: int) -> list[SMat]:
    """so(p, q) for the diagonal form diag(I_p, -I_q)."""
    n = p + q
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            same = (i < p) == (j < p)
            if same:
                out.append(SMat(n, {(i, j): F1, (j, i): -F1}))
            else:
                out.append(SMat(n, {(i, j): F1, (j, i): F1}))
    return out


def basis_so_c(n: int) -> list[SMat]:
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            out.append(rc(n, {(i, j): (1, 0), (j, i): (-1, 0)}))
            out.append(rc(n, {(i, j): (0, 1), (j, i): (0, -1)}))
    return out


def _sp_units(n: int):
    """Complex-matrix units of sp(n, .): A/B/C block patterns of size 2n."""
    pats = []
    for i in range(n):
        for j in range(n):
            pats.append({(i, j): 1, (n + j, n + i): -1})
    for i in range(n):
        for j in range(i, n):
            b = {(i, n + j): 1}
            if i != j:
                b[(j, n + i)] = 1
            pats.append(b)
            c = {(n + i, j): 1}
            if i != j:
                c[(n + j, i)] = 1
            pats.append(c)
    return pats


def basis_sp_r(n: int) -> list[SMat]:
    return [real_mat(2 * n, pat) for pat in _sp_units(n)]


def basis_sp_c(n: int) -> list[SMat]:
    out = []
    for pat in _sp_units(n):
        out.append(rc(2 * n, {k: (v, 0) for k, v in pat.items()}))
        out.append(rc(2 * n, {k: (0, v) for k, v in pat.items()}))
    return out


def basis_sl_h(n: int) -> list[SMat]:
    out = []
    units = [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]
    for i in range(n):
        for j in range(n):
            if i != j:
                for u in units:
                    out.append(rq(n, {(i, j): u}))
    for k in range(n):
        for u in units[1:]:
            out.append(rq(n, {(k, k): u}))
    for k in range(n - 1):
        out.append(rq(n, {(k, k): (1, 0, 0, 0), (k + 1, k + 1): (-1, 0, 0, 0)}))
    return out


def basis_sp_pq(p: int, q: int) -> list[SMat]:
    """sp(p, q): quaternionic anti-hermitian for diag(I_p, -I_q)."""
    n = p + q
    s = sign_vector(p, q)
    units = [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            for u in units:
                e = {(i, j): u, (j, i): tuple(-s[i] * s[j] * x for x in qconj(u))}
                out.append(rq(n, e))
    for k in range(n):
        for u in units[1:]:
            out.append(rq(n, {(k, k): u}))
    return out


def basis_su_split(n: int) -> list[SMat]:
    """su(n, n) for the hermitian form [[0, I], [I, 0]]."""
    m = 2 * n
    out = []
    # A free (D = -A^*), with Im tr A = 0
    for i in range(n):
        for j in range(n):
            out.append(rc(m, {(i, j): (1, 0), (n + j, n + i): (-1, 0)}))
            if i != j:
                out.append(rc(m, {(i, j): (0, 1), (n + j, n + i): (0, 1)}))
    for k in range(n - 1):
        out.append(rc(m, {(k, k): (0, 1), (n + k, n + k): (0, 1),
                          (k + 1, k + 1): (0, -1), (n + k + 1, n + k + 1): (0, -1)}))
    # B, C anti-hermitian
    for off in (0, n):
        src = (0, n) if off == 0 else (n, 0)
        for i in range(n):
            for j in range(i, n):
                a, b = src
                if i != j:
                    out.append(rc(m, {(a + i, b + j): (1, 0), (a + j, b + i): (-1, 0)}))
                    out.append(rc(m, {(a + i, b + j): (0, 1), (a + j, b + i): (0, 1)}))
                else:
                    out.append(rc(m, {(a + i, b + i): (0, 1)}))
    return out


def basis_so_split(n: int) -> list[SMat]:
    """so(n, n) for the symmetric form [[0, I], [I, 0]]."""
    m = 2 * n
    out = []
    for i in range(n):
        for j in range(n):
            out.append(real_mat(m, {(i, j): 1, (n + j, n + i): -1}))
    for off, base in ((0, n), (n, 0)):
        for i in range(n):
            for j in range(i + 1, n):
                out.append(real_mat(m, {(off + i, base + j): 1,
                                        (off + j, base + i): -1}))
    return out


def basis_sp_nn_split(n: int) -> list[SMat]:
    """sp(n, n) for the quaternionic hermitian form [[0, I], [I, 0]]."""
    m = 2 * n
    units = [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]
    out = []
    # A free, D = -A^*
    for i in range(n):
        for j in range(n):
            for u in units:
                out.append(rq(m, {(i, j): u,
                                  (n + j, n + i): tuple(-x for x in qconj(u))}))
    # B, C anti-hermitian quaternionic
    for a, b in ((0, n), (n, 0)):
        for i in range(n):
            for u in units[1:]:
                out.append(rq(m, {(a + i, b + i): u}))
            for j in range(i + 1, n):
                for u in units:
                    out.append(rq(m, {(a + i, b + j): u,
                                      (a + j, b + i): tuple(-x for x in qconj(u))}))
    return out


def basis_so_star_split(n: int) -> list[SMat]:
    """so*(4n) as quaternionic 2n x 2n for the skew form [[0, jI], [jI, 0]].

    Blocks: x11 free with x22 = j x11^* j; x12, x21 in
    {B : B^* j + j B = 0} (j-symmetric plus 1/i/k-skew components).
    """
    m = 2 * n
    units = [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]
    jq = (0, 0, 1, 0)
    out = []
    for i in range(n):
        for j in range(n):
            for u in units:
                other = qmul(qmul(jq, qconj(u)), jq)
                out.append(rq(m, {(i, j): u, (n + j, n + i): other}))
    skew_units = [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 0, 1)]
    for a, b in ((0, n), (n, 0)):
        for i in range(n):
            out.append(rq(m, {(a + i, b + i): jq}))
            for j in range(i + 1, n):
                for u in skew_units:
                    out.append(rq(m, {(a + i, b + j): u, (a + j, b + i): tuple(-x for x in u)}))
                out.append(rq(m, {(a + i, b + j): jq, (a + j, b + i): jq}))
    return out


# ----------------------------------------------------------------------
# involution helpers


def theta_neg_transpose(alg: MatrixLieAlgebra) -> InvolutionMap:
    return InvolutionMap.from_map(alg, lambda m: m.transpose().scale(-1),
                                  name="theta", verify="basic")


def ad_involution(alg: MatrixLieAlgebra, p: SMat, name: str,
                  transpose: bool = False) -> InvolutionMap:
    return InvolutionMap.conjugation(alg, p, transpose=transpose, name=name,
                                     verify="basic")


# ----------------------------------------------------------------------
# root-data recipe helpers


def _roots_from_weights(weights, classes):
    """Build a root dict from weight vectors.

    `classes` is a list of (vectors, (m_plus, m_minus)); vectors are
    root coordinate tuples. Entries with zero multiplicity are dropped.
    """
    mult = {}
    for vecs, (mp, mm) in classes:
        if mp + mm == 0:
            continue
        for v in vecs:
            v = tuple(Fraction(x) for x in v)
            if all(x == 0 for x in v):
                raise ValueError("zero root in recipe")
            cur = mult.get(v, (0, 0))
            mult[v] = (cur[0] + mp, cur[1] + mm)
    return mult


def _e(r, k, scale=1):
    v = [0] * r
    v[k] = scale
    return tuple(v)


def _pairs(r):
    return [(i, j) for i in range(r) for j in range(r) if i < j]


def _pm_pairs(r, i, j):
    """The four vectors +-e_i +- e_j."""
    out = []
    for si in (1, -1):
        for sj in (1, -1):
            v = [0] * r
            v[i] = si
            v[j] = sj
            out.append(tuple(v))
    return out


def _sum_type(r, i, j):
    """+-(e_i + e_j)."""
    out = []
    for s in (1, -1):
        v = [0] * r
        v[i] = s
        v[j] = s
        out.append(tuple(v))
    return out


def _diff_type(r, i, j):
    out = []
    for s in (1, -1):
        v = [0] * r
        v[i] = s
        v[j] = -s
        out.append(tuple(v))
    return out


def _shorts(r, i, scale=1):
    return [_e(r, i, scale), _e(r, i, -scale)]


def make_rootdata(mult_dict, dim_z_k_h, dim_z_g_a) -> RestrictedRootData:
    return RestrictedRootData(list(mult_dict.keys()), mult_dict,
                              dim_z_k_h, dim_z_g_a)


# ----------------------------------------------------------------------
# family builders: each returns (SymmetricPairRealization, RestrictedRootData)


def _check(cond, msg):
    if not cond:
        raise ParameterViolation(msg)


def build_cr_su(p: int, q: int):
    """(sl(p+q, C), su(p, q))."""
    _check(p >= 1 and q >= 1, "su(p,q) real form needs p, q >= 1")
    n = p + q
    g = _algebra(f"sl({n},C)", lambda: (2 * n, basis_sl_c(n)))
    theta = theta_neg_transpose(g)
    pp = rc_diag_signs(sign_vector(p, q))
    sigma = ad_involution(g, pp, "sigma", transpose=True)
    a_mats = [rc(n, {(k, k): (1, 0), (k + 1, k + 1): (-1, 0)}) for k in range(n - 1)]
    pair = SymmetricPairRealization(g, sigma, theta, a_mats,
                                    pair_id=f"sl({n},C)/su({p},{q})",
                                    h_label=f"su({p},{q})")
    pair.complex_structure = rc_scalar_i(n)
    # weights e_i on the diagonal basis H_k = E_kk - E_(k+1)(k+1)
    r = n - 1

    def ecoord(i):
        return tuple(Fraction((1 if i == k else 0) - (1 if i == k + 1 else 0))
                     for k in range(r))

    classes = []
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            root = tuple(a - b for a, b in zip(ecoord(i), ecoord(j)))
            same = (i < p) == (j < p)
            classes.append(([root], (2, 0) if same else (0, 2)))
    rd = make_rootdata(_roots_from_weights(None, classes), n - 1, 2 * (n - 1))
    return pair, rd


def build_cr_sl_real(n2: int):
    """(sl(2n, C), sl(2n, R)); n2 = 2n."""
    _check(n2 >= 2 and n2 % 2 == 0, "sl(m,R) twist needs even m >= 2")
    n = n2 // 2
    g = _algebra(f"sl({n2},C)", lambda: (2 * n2, basis_sl_c(n2)))
    theta = theta_neg_transpose(g)
    sigma = ad_involution(g, conj_blocks(n2), "sigma")
    a_mats = [rc(n2, {(2 * k, 2 * k + 1): (0, -1), (2 * k + 1, 2 * k): (0, 1)})
              for k in range(n)]
    pair = SymmetricPairRealization(g, sigma, theta, a_mats,
                                    pair_id=f"sl({n2},C)/sl({n2},R)",
                                    h_label=f"sl({n2},R)")
    pair.complex_structure = rc_scalar_i(n2)
    r = n
    classes = []
    for i, j in _pairs(r):
        classes.append((_sum_type(r, i, j), (2, 2)))
        classes.append((_diff_type(r, i, j), (2, 2)))
    for i in range(r):
        classes.append((_shorts(r, i, 2), (0, 2)))
    rd = make_rootdata(_roots_from_weights(None, classes), n, 4 * n - 2)
    return pair, rd


def build_cr_so(p: int, q: int):
    """(so(p+q, C), so(p, q))."""
    _check(p >= 1 and q >= 1 and p + q >= 3, "so(p,q) real form needs p, q >= 1")
    n = p + q
    g = _algebra(f"so({n},C)", lambda: (2 * n, basis_so_c(n)))
    theta = ad_involution(g, conj_blocks(n), "theta")
    sgn = sign_vector(p, q)
    pm = SMat(2 * n, {})
    e = {}
    for i in range(n):
        e[(2 * i, 2 * i)] = Fraction(sgn[i])
        e[(2 * i + 1, 2 * i + 1)] = Fraction(-sgn[i])
    pm = SMat(2 * n, e)
    sigma = ad_involution(g, pm, "sigma")
    pa, qa = p // 2, q // 2
    blocks = [(2 * t, 2 * t + 1) for t in range(pa)]
    blocks += [(p + 2 * t, p + 2 * t + 1) for t in range(qa)]
    a_mats = [rc(n, {(i, j): (0, 1), (j, i): (0, -1)}) for (i, j) in blocks]
    pair = SymmetricPairRealization(g, sigma, theta, a_mats,
                                    pair_id=f"so({n},C)/so({p},{q})",
                                    h_label=f"so({p},{q})")
    pair.complex_structure = rc_scalar_i(n)
    r = pa + qa
    classes = []
    for i, j in _pairs(pa):
        classes.append((_sum_type(r, i, j), (2, 0)))
        classes.append((_diff_type(r, i, j), (2, 0)))
    for i, j in _pairs(qa):
        classes.append((_sum_type(r, pa + i, pa + j), (2, 0)))
        classes.append((_diff_type(r, pa + i, pa + j), (2, 0)))
    for i in range(pa):
        for j in range(qa):
            classes.append((_sum_type(r, i, pa + j), (0, 2)))
            classes.append((_diff_type(r, i, pa + j), (0, 2)))
    podd, qodd = p % 2, q % 2
    for i in range(pa):
        mp = 2 * podd
        mm = 2 * qodd
        if mp + mm:
            classes.append((_shorts(r, i), (mp, mm)))
    for j in range(qa):
        mp = 2 * qodd
        mm = 2 * podd
        if mp + mm:
            classes.append((_shorts(r, pa + j), (mp, mm)))
    mult = _roots_from_weights(None, classes)
    sigma_m = sum(a + b for a, b in mult.values())
    rd = make_rootdata(mult, r, n * (n - 1) - sigma_m)
    return pair, rd


def build_cr_so_star(n: int):
    """(so(2n, C), so*(2n))."""
    _check(n >= 2, "so*(2n) needs n >= 2")
    m = 2 * n
    g = _algebra(f"so({m},C)", lambda: (2 * m, basis_so_c(m)))
    theta = ad_involution(g, conj_blocks(m), "theta")
    jr = rc(m, {(i, n + i): (1, 0) for i in range(n)}
            | {(n + i, i): (-1, 0) for i in range(n)})
    sigma = ad_involution(g, jr @ conj_blocks(m), "sigma")
    a_mats = [rc(m, {(k, n + k): (0, 1), (n + k, k): (0, -1)}) for k in range(n)]
    pair = SymmetricPairRealization(g, sigma, theta, a_mats,
                                    pair_id=f"so({m},C)/so*({m})",
                                    h_label=f"so*({m})")
    pair.complex_structure = rc_scalar_i(m)
    classes = []
    for i, j in _pairs(n):
        classes.append((_diff_type(n, i, j), (2, 0)))
        classes.append((_sum_type(n, i, j), (0, 2)))
    rd = make_rootdata(_roots_from_weights(None, classes), n, 2 * n)
    return pair, rd


def build_cr_sp_real(n: int):
    """(sp(n, C), sp(n, R))."""
    _check(n >= 1, "sp(n,R) needs n >= 1")
    m = 2 * n
    g = _algebra(f"sp({n},C)", lambda: (2 * m, basis_sp_c(n)))
    theta = theta_neg_transpose(g)
    sigma = ad_involution(g, conj_blocks(m), "sigma")
    a_mats = [rc(m, {(k, n + k): (0, 1), (n + k, k): (0, -1)}) for k in range(n)]
    pair = SymmetricPairRealization(g, sigma, theta, a_mats,
                                    pair_id=f"sp({n},C)/sp({n},R)",
                                    h_label=f"sp({n},R)")
    pair.complex_structure = rc_scalar_i(m)
    classes = []
    for i, j in _pairs(n):
        classes.append((_diff_type(n, i, j), (2, 0)))
        classes.append((_sum_type(n, i, j), (0, 2)))
    for i in range(n):
        classes.append((_shorts(n, i, 2), (0, 2)))
    rd = make_rootdata(_roots_from_weights(None, classes), n, 2 * n)
    return pair, rd


def build_cr_sp_pq(p: int, q: int):
    """(sp(p+q, C), sp(p, q))."""
    _check(p >= 1 and q >= 1, "sp(p,q) needs p, q >= 1")
    n = p + q
    m = 2 * n
    g = _algebra(f"sp({n},C)", lambda: (2 * m, basis_sp_c(n)))
    theta = theta_neg_transpose(g)
    signs = sign_vector(p, q) * 2
    sigma = ad_involution(g, rc_diag_signs(signs), "sigma", transpose=True)
    a_mats = [rc(m, {(k, k): (1, 0), (n + k, n + k): (-1, 0)}) for k in range(n)]
    pair = SymmetricPairRealization(g, sigma, theta, a_mats,
                                    pair_id=f"sp({n},C)/sp({p},{q})",
                                    h_label=f"sp({p},{q})")
    pair.complex_structure = rc_scalar_i(m)
    classes = []
    for i, j in _pairs(n):
        same = (i < p) == (j < p)
        mm = (2, 0) if same else (0, 2)
        classes.append((_diff_type(n, i, j), mm))
        classes.append((_sum_type(n, i, j), mm))
    for i in range(n):
        classes.append((_shorts(n, i, 2), (2, 0)))
    rd = make_rootdata(_roots_from_weights(None, classes), n, 2 * n)
    return pair, rd


def build_slr_so(p: int, q: int):
    """(sl(p+q, R), so(p, q))."""
    _check(p >= 1 and q >= 1, "so(p,q) in sl needs p, q >= 1")
    n = p + q
    g = _algebra(f"sl({n},R)", lambda: (n, basis_sl_r(n)))
    theta = theta_neg_transpose(g)
    sigma = ad_involution(g, real_mat(n, {(i, i): s for i, s in
                                          enumerate(sign_vector(p, q))}),
                          "sigma", transpose=True)
    a_mats = [SMat(n, {(k, k): F1, (k + 1, k + 1): -F1}) for k in range(n - 1)]
    pair = SymmetricPairRealization(g, sigma, theta, a_mats,
                                    pair_id=f"sl({n},R)/so({p},{q})",
                                    h_label=f"so({p},{q})")
    r = n - 1

    def ecoord(i):
        return tuple(Fraction((1 if i == k else 0) - (1 if i == k + 1 else 0))
                     for k in range(r))

    classes = []
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            root = tuple(a - b for a, b in zip(ecoord(i), ecoord(j)))
            same = (i < p) == (j < p)
            classes.append(([root], (1, 0) if same else (0, 1)))
    rd = make_rootdata(_roots_from_weights(None, classes), 0, n - 1)
    return pair, rd


def build_slh_sp(p: int, q: int):
    """(sl(p+q, H), sp(p, q))."""
    _check(p >= 1 and q >= 1, "sp(p,q) in sl(n,H) needs p, q >= 1")
    n = p + q
    g = _algebra(f"sl({n},H)", lambda: (4 * n, basis_sl_h(n)))
    theta = theta_neg_transpose(g)
    sigma = ad_involution(g, rq_diag_signs(sign_vector(p, q)), "sigma",
                          transpose=True)
    a_mats = [rq(n, {(k, k): (1, 0, 0, 0), (k + 1, k + 1): (-1, 0, 0, 0)})
              for k in range(n - 1)]
    pair = SymmetricPairRealization(g, sigma, theta, a_mats,
                                    pair_id=f"sl({n},H)/sp({p},{q})",
                                    h_label=f"sp({p},{q})")
    r = n - 1

    def ecoord(i):
        return tuple(Fraction((1 if i == k else 0) - (1 if i == k + 1 else 0))
                     for k in range(r))

    classes = []
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            root = tuple(a - b for a, b in zip(ecoord(i), ecoord(j)))
            same = (i < p) == (j < p)
            classes.append(([root], (4, 0) if same else (0, 4)))
    rd = make_rootdata(_roots_from_weights(None, classes), 3 * n, 4 * n - 1)
    return pair, rd


def build_su_nn_glc(n: int):
    """(su(n, n), sl(n, C) + R)."""
    _check(n >= 1, "su(n,n) needs n >= 1")
    m = 2 * n
    g = _algebra(f"su({n},{n})", lambda: (2 * m, basis_su_split(n)))
    theta = theta_neg_transpose(g)
    s = rc_diag_signs([1] * n + [-1] * n)
    sigma = ad_involution(g, s, "sigma")
    a_mats = [rc(m, {(k, n + k): (0, 1), (n + k, k): (0, -1)}) for k in range(n)]
    pair = SymmetricPairRealization(g, sigma, theta, a_mats,
                                    pair_id=f"su({n},{n})/sl({n},C)+R",
                                    h_label=f"sl({n},C)+R")
    classes = []
    for i, j in _pairs(n):
        classes.append((_diff_type(n, i, j), (2, 0)))
        classes.append((_sum_type(n, i, j), (0, 2)))
    for i in range(n):
        classes.append((_shorts(n, i, 2), (0, 1)))
    rd = make_rootdata(_roots_from_weights(None, classes), n - 1, 2 * n - 1)
    return pair, rd


def build_so_hooks(p: int, q: int):
    """(so(p+1, q+1), so(p, 1) + so(1, q))."""
    _check(p >= 0 and q >= 0 and (p, q) not in ((0, 0), (1, 1)),
           "so(p+1,q+1) hooks need (p,q) >= 0, not (0,0) or (1,1)")
    bp, bq = p + 1, q + 1
    n = bp + bq
    g = _algebra(f"so({bp},{bq})", lambda: (n, basis_so_pq(bp, bq)))
    theta = theta_neg_transpose(g)
    # +1 on first factor coords {pos_1..pos_p, neg_1}; -1 on the rest
    dd = {}
    for i in range(p):
        dd[(i, i)] = 1
    dd[(p, p)] = -1
    dd[(bp, bp)] = 1
    for i in range(bp + 1, n):
        dd[(i, i)] = -1
    sigma = ad_involution(g, real_mat(n, dd), "sigma")
    t = min(p, q)
    hooks = [(p, bp)] + [(k, bp + 1 + k) for k in range(t)]
    a_mats = [SMat(n, {(i, j): F1, (j, i): F1}) for (i, j) in hooks]
    pair = SymmetricPairRealization(g, sigma, theta, a_mats,
                                    pair_id=f"so({bp},{bq})/so({p},1)+so(1,{q})",
                                    h_label=f"so({p},1)+so(1,{q})")
    r = t + 1
    L = abs(p - q)
    classes = []
    for i, j in _pairs(r):
        if i == 0:
            classes.append((_sum_type(r, i, j), (0, 1)))
            classes.append((_diff_type(r, i, j), (0, 1)))
        else:
            classes.append((_sum_type(r, i, j), (1, 0)))
            classes.append((_diff_type(r, i, j), (1, 0)))
    if L:
        classes.append((_shorts(r, 0), (0, L)))
        for i in range(1, r):
            classes.append((_shorts(r, i), (L, 0)))
    rd = make_rootdata(_roots_from_weights(None, classes),
                       L * (L - 1) // 2, L * (L - 1) // 2 + r)
    return pair, rd


def build_so_nn_soc(n: int):
    """(so(n, n), so(n, C)), split form."""
    _check(n >= 2, "so(n,n)/so(n,C) needs n >= 2")
    m = 2 * n
    g = _algebra(f"so({n},{n})split", lambda: (m, basis_so_split(n)))
    theta = theta_neg_transpose(g)
    jr = real_mat(m, {(i, n + i): 1 for i in range(n)}
                  | {(n + i, i): -1 for i in range(n)})
    sigma = ad_involution(g, jr, "sigma")
    a_mats = [SMat(m, {(k, k): F1, (n + k, n + k): -F1}) for k in range(n)]
    pair = SymmetricPairRealization(g, sigma, theta, a_mats,
                                    pair_id=f"so({n},{n})/so({n},C)",
                                    h_label=f"so({n},C)")
    classes = []
    for i, j in _pairs(n):
        classes.append((_diff_type(n, i, j), (1, 0)))
        classes.append((_sum_type(n, i, j), (0, 1)))
    rd = make_rootdata(_roots_from_weights(None, classes), 0, n)
    return pair, rd


def build_so_star_glh(n: int):
    """(so*(4n), sl(n, H) + R), quaternionic split skew form."""
    _check(n >= 1, "so*(4n) needs n >= 1")
    m = 2 * n
    g = _algebra(f"so*({2 * m})", lambda: (4 * m, basis_so_star_split(n)))
    theta = theta_neg_transpose(g)
    sigma = ad_involution(g, rq_diag_signs([1] * n + [-1] * n), "sigma")
    a_mats = [rq(m, {(k, n + k): (0, 0, 1, 0), (n + k, k): (0, 0, -1, 0)})
              for k in range(n)]
    pair = SymmetricPairRealization(g, sigma, theta, a_mats,
                                    pair_id=f"so*({2 * m})/sl({n},H)+R",
                                    h_label=f"sl({n},H)+R")
    classes = []
    for i, j in _pairs(n):
        classes.append((_diff_type(n, i, j), (4, 0)))
        classes.append((_sum_type(n, i, j), (0, 4)))
    for i in range(n):
        classes.append((_shorts(n, i, 2), (0, 1)))
    rd = make_rootdata(_roots_from_weights(None, classes), 3 * n, 4 * n)
    return pair, rd


def build_sp_r_glr(n: int):
    """(sp(n, R), sl(n, R) + R)."""
    _check(n >= 1, "sp(n,R) needs n >= 1")
    m = 2 * n
    g = _algebra(f"sp({n},R)", lambda: (m, basis_sp_r(n)))
    theta = theta_neg_transpose(g)
    sigma = ad_involution(g, real_mat(m, {(i, i): 1 if i < n else -1
                                          for i in range(m)}), "sigma")
    a_mats = [SMat(m, {(k, n + k): F1, (n + k, k): F1}) for k in range(n)]
    pair = SymmetricPairRealization(g, sigma, theta, a_mats,
                                    pair_id=f"sp({n},R)/sl({n},R)+R",
                                    h_label=f"sl({n},R)+R")
    classes = []
    for i, j in _pairs(n):
        classes.append((_diff_type(n, i, j), (1, 0)))
        classes.append((_sum_type(n, i, j), (0, 1)))
    for i in range(n):
        classes.append((_shorts(n, i, 2), (0, 1)))
    rd = make_rootdata(_roots_from_weights(None, classes), 0, n)
    return pair, rd


def build_sp_nn_spc(n: int):
    """(sp(n, n), sp(n, C)), quaternionic split form."""
    _check(n >= 1, "sp(n,n) needs n >= 1")
    m = 2 * n
    g = _algebra(f"sp({n},{n})", lambda: (4 * m, basis_sp_nn_split(n)))
    theta = theta_neg_transpose(g)
    sigma = ad_involution(g, rq_diag_signs([1] * n + [-1] * n), "sigma",
                          transpose=True)
    a_mats = [rq(m, {(k, k): (1, 0, 0, 0), (n + k, n + k): (-1, 0, 0, 0)})
              for k in range(n)]
    pair = SymmetricPairRealization(g, sigma, theta, a_mats,
                                    pair_id=f"sp({n},{n})/sp({n},C)",
                                    h_label=f"sp({n},C)")
    classes = []
    for i, j in _pairs(n):
        classes.append((_diff_type(n, i, j), (4, 0)))
        classes.append((_sum_type(n, i, j), (0, 4)))
    for i in range(n):
        classes.append((_shorts(n, i, 2), (0, 3)))
    rd = make_rootdata(_roots_from_weights(None, classes), 3 * n, 4 * n)
    return pair, rd


def build_so_sym(p: int, q: int, r: int):
    """(so(p+r, q), so(p, q) + so(r))."""
    _check(p >= 1 and q >= 1 and r >= 1, "so_sym needs p, q, r >= 1")
    n = p + q + r
    g = _algebra(f"so({p + r},{q})", lambda: (n, basis_so_pq(p + r, q)))
    theta = theta_neg_transpose(g)
    dd = {(i, i): 1 for i in range(p)}
    dd |= {(p + i, p + i): -1 for i in range(r)}
    dd |= {(p + r + i, p + r + i): 1 for i in range(q)}
    sigma = ad_involution(g, real_mat(n, dd), "sigma")
    t = min(r, q)
    a_mats = [SMat(n, {(p + k, p + r + k): F1, (p + r + k, p + k): F1})
              for k in range(t)]
    pair = SymmetricPairRealization(g, sigma, theta, a_mats,
                                    pair_id=f"so({p + r},{q})/so({p},{q})+so({r})",
                                    h_label=f"so({p},{q})+so({r})")
    classes = []
    for i, j in _pairs(t):
        classes.append((_diff_type(t, i, j), (1, 0)))
        classes.append((_sum_type(t, i, j), (1, 0)))
    short_tot = p + q + r - 2 * t
    if short_tot:
        for i in range(t):
            classes.append((_shorts(t, i), (q + r - 2 * t, p)))
    zkh = (p * (p - 1) + (r - t) * (r - t - 1) + (q - t) * (q - t - 1)) // 2
    rd = make_rootdata(_roots_from_weights(None, classes),
                       zkh, zkh + t + (r - t) * (q - t))
    return pair, rd


def build_riemannian(glabel: str):
    """(g, k): sigma = theta controls."""
    fam, params = parse_label(glabel)
    if fam == "sl" and params[-1] == "R":
        n = params[0]
        g = _algebra(f"sl({n},R)", lambda: (n, basis_sl_r(n)))
        theta = theta_neg_transpose(g)
        a_mats = [SMat(n, {(k, k): F1, (k + 1, k + 1): -F1}) for k in range(n - 1)]
        classes = []
        r = n - 1

        def ecoord(i):
            return tuple(Fraction((1 if i == k else 0) - (1 if i == k + 1 else 0))
                         for k in range(r))

        for i in range(n):
            for j in range(n):
                if i != j:
                    classes.append((
                        [tuple(a - b for a, b in zip(ecoord(i), ecoord(j)))], (1, 0)))
        rd = make_rootdata(_roots_from_weights(None, classes), 0, n - 1)
    elif fam == "sl" and params[-1] == "C":
        n = params[0]
        g = _algebra(f"sl({n},C)", lambda: (2 * n, basis_sl_c(n)))
        theta = theta_neg_transpose(g)
        a_mats = [rc(n, {(k, k): (1, 0), (k + 1, k + 1): (-1, 0)})
                  for k in range(n - 1)]
        classes = []
        r = n - 1

        def ecoord(i):
            return tuple(Fraction((1 if i == k else 0) - (1 if i == k + 1 else 0))
                         for k in range(r))

        for i in range(n):
            for j in range(n):
                if i != j:
                    classes.append((
                        [tuple(a - b for a, b in zip(ecoord(i), ecoord(j)))], (2, 0)))
        rd = make_rootdata(_roots_from_weights(None, classes), n - 1, 2 * (n - 1))
    elif fam == "so":
        p, q = params[0], params[1]
        n = p + q
        g = _algebra(f"so({p},{q})", lambda: (n, basis_so_pq(p, q)))
        theta = theta_neg_transpose(g)
        t = min(p, q)
        a_mats = [SMat(n, {(k, p + k): F1, (p + k, k): F1}) for k in range(t)]
        classes = []
        for i, j in _pairs(t):
            classes.append((_diff_type(t, i, j), (1, 0)))
            classes.append((_sum_type(t, i, j), (1, 0)))
        if n - 2 * t:
            for i in range(t):
                classes.append((_shorts(t, i), (n - 2 * t, 0)))
        L = abs(p - q)
        rd = make_rootdata(_roots_from_weights(None, classes),
                           L * (L - 1) // 2, L * (L - 1) // 2 + t)
    else:
        raise ParameterViolation(f"no Riemannian control for {glabel}")
    sigma = theta
    pair = SymmetricPairRealization(g, sigma, theta, a_mats,
                                    pair_id=f"{glabel}/max-compact",
                                    h_label="max-compact")
    if fam == "sl" and params[-1] == "C":
        pair.complex_structure = rc_scalar_i(params[0])
    return pair, rd


# ----------------------------------------------------------------------
# label parsing and the family registry


_LABEL_RE = re.compile(r"^(sl|su|so|sp|so\*)\(([^)]*)\)$")


def parse_label(label: str):
    """'so(3,2)' -> ('so', (3, 2)); 'sl(2,C)' -> ('sl', (2, 'C'))."""
    m = _LABEL_RE.match(label.replace(" ", ""))
    if not m:
        raise ValueError(f"cannot parse label {label!r}")
    fam = m.group(1)
    parts = []
    for tok in m.group(2).split(","):
        tok = tok.strip()
        parts.append(int(tok) if re.fullmatch(r"-?\d+", tok) else tok)
    return fam, tuple(parts)


_ALGEBRA_CACHE: dict = {}


def _algebra(key: str, builder) -> MatrixLieAlgebra:
    if key not in _ALGEBRA_CACHE:
        n, mats = builder()
        _ALGEBRA_CACHE[key] = MatrixLieAlgebra(n, mats, label=key,
                                               check_closure=True)
    return _ALGEBRA_CACHE[key]


_PAIR_CACHE: dict = {}


class Family:
    """A parametrized family of symmetric pairs with realization + recipe."""

    def __init__(self, fid: str, params: tuple[str, ...], builder,
                 g_label, h_label, constraints=None):
        self.fid = fid
        self.params = params
        self.builder = builder
        self.g_label = g_label
        self.h_label = h_label
        self.constraints = constraints or (lambda **kw: None)

    def build(self, **kw):
        key = (self.fid, tuple(sorted(kw.items())))
        if key not in _PAIR_CACHE:
            self.constraints(**kw)
            _PAIR_CACHE[key] = self.builder(**kw)
        return _PAIR_CACHE[key]

    def labels(self, **kw):
        return self.g_label(**kw), self.h_label(**kw)


FAMILIES: dict[str, Family] = {}


def _register(fid, params, builder, g_label, h_label):
    FAMILIES[fid] = Family(fid, params, builder, g_label, h_label)


_register("cr_su", ("p", "q"), lambda p, q: build_cr_su(p, q),
          lambda p, q: f"sl({p + q},C)", lambda p, q: f"su({p},{q})")
_register("cr_sl_real", ("n",), lambda n: build_cr_sl_real(2 * n),
          lambda n: f"sl({2 * n},C)", lambda n: f"sl({2 * n},R)")
_register("cr_so", ("p", "q"), lambda p, q: build_cr_so(p, q),
          lambda p, q: f"so({p + q},C)", lambda p, q: f"so({p},{q})")
_register("cr_so_star", ("n",), lambda n: build_cr_so_star(n),
          lambda n: f"so({2 * n},C)", lambda n: f"so*({2 * n})")
_register("cr_sp_real", ("n",), lambda n: build_cr_sp_real(n),
          lambda n: f"sp({n},C)", lambda n: f"sp({n},R)")
_register("cr_sp_pq", ("p", "q"), lambda p, q: build_cr_sp_pq(p, q),
          lambda p, q: f"sp({p + q},C)", lambda p, q: f"sp({p},{q})")
_register("slr_so", ("p", "q"), lambda p, q: build_slr_so(p, q),
          lambda p, q: f"sl({p + q},R)", lambda p, q: f"so({p},{q})")
_register("slh_sp", ("p", "q"), lambda p, q: build_slh_sp(p, q),
          lambda p, q: f"sl({p + q},H)", lambda p, q: f"sp({p},{q})")
_register("su_nn_glc", ("n",), lambda n: build_su_nn_glc(n),
          lambda n: f"su({n},{n})", lambda n: f"sl({n},C)+R")
_register("so_hooks", ("p", "q"), lambda p, q: build_so_hooks(p, q),
          lambda p, q: f"so({p + 1},{q + 1})",
          lambda p, q: f"so({p},1)+so(1,{q})")
_register("so_nn_soc", ("n",), lambda n: build_so_nn_soc(n),
          lambda n: f"so({n},{n})", lambda n: f"so({n},C)")
_register("so_star_glh", ("n",), lambda n: build_so_star_glh(n),
          lambda n: f"so*({4 * n})", lambda n: f"sl({n},H)+R")
_register("sp_r_glr", ("n",), lambda n: build_sp_r_glr(n),
          lambda n: f"sp({n},R)", lambda n: f"sl({n},R)+R")
_register("sp_nn_spc", ("n",), lambda n: build_sp_nn_spc(n),
          lambda n: f"sp({n},{n})", lambda n: f"sp({n},C)")
_register("so_sym", ("p", "q", "r"), lambda p, q, r: build_so_sym(p, q, r),
          lambda p, q, r: f"so({p + r},{q})",
          lambda p, q, r: f"so({p},{q})+so({r})")
_register("riem", ("g",), lambda g: build_riemannian(g),
          lambda g: g, lambda g: "max-compact")


def build_pair(fid: str, **kw):
    if fid not in FAMILIES:
        raise ParameterViolation(f"unknown family {fid!r}")
    return FAMILIES[fid].build(**kw)
