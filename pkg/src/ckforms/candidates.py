"""Candidate (compact subgroup, algebra map) data for the invariant
restriction checker.

Each candidate ships: the compact subalgebra c realized inside g, a
torus basis for the maximal compact of h, the invariant presentations of
g, h and c, the connecting algebra map, and the four restriction maps of
the diagram. The coordinates are the evident block embeddings.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ParameterViolation, ParityViolation
from .invariants import (AlgebraMap, InvariantPresentation, TorusEmbedding,
                         build_presentation, enlarge, full_ring_presentation,
                         phi_sl_family, phi_so_family, restriction_via_blocks,
                         tensor_presentation)
from .linalg import Subspace
from .matrixlie import MatrixLieAlgebra, ReductivePairRealization, SMat
from .poly import MultiPoly
from .realizations import (basis_sl_r, basis_so_pq, theta_neg_transpose,
                           _algebra)


@dataclass
class CompactCandidate:
    """All data needed to run the invariant-restriction criterion."""

    label: str
    c_space: Subspace
    t_mats: list
    gP: InvariantPresentation
    hP: InvariantPresentation
    cP: InvariantPresentation
    phi: AlgebraMap
    emb_g_to_h: object
    emb_g_to_c: object
    emb_h_to_t: object
    emb_c_to_t: object

    def describe(self) -> dict:
        return {"compact_subgroup": self.label,
                "map": self.phi.name,
                "dim_c": self.c_space.dim}


def _rot(n: int, i: int, j: int) -> SMat:
    return SMat(n, {(i, j): Fraction(1), (j, i): Fraction(-1)})


def _subspace_from_mats(g: MatrixLieAlgebra, mats) -> Subspace:
    return Subspace(g.dim, [g.coords_of(m) for m in mats])


def so_family_candidate(p: int, q: int, r: int):
    """SO0(p+r, q) / SO0(p, q) with C = SO(p+1) x SO(q).

    Needs q odd and p even: the subalgebra invariants must be free of the
    Pfaffian for the coefficient-convolution map to hit every generator.
    """
    if q % 2 != 1:
        raise ParityViolation("q must be odd")
    if p % 2 != 0:
        raise ParityViolation("p must be even for this construction")
    if not (p >= 1 and q >= 1 and r >= 1):
        raise ParameterViolation("need p, q, r >= 1")
    n = p + q + r
    g = _algebra(f"so({p + r},{q})", lambda: (n, basis_so_pq(p + r, q)))
    theta = theta_neg_transpose(g)
    # h = so(p,q) on coordinates {1..p} u {negatives}
    neg0 = p + r
    h_mats = []
    coords_h = list(range(p)) + list(range(neg0, n))
    for ii in range(len(coords_h)):
        for jj in range(ii + 1, len(coords_h)):
            i, j = coords_h[ii], coords_h[jj]
            same = (i < p) == (j < p)
            if same:
                h_mats.append(_rot(n, i, j))
            else:
                h_mats.append(SMat(n, {(i, j): Fraction(1), (j, i): Fraction(1)}))
    h = _subspace_from_mats(g, h_mats)
    pair = ReductivePairRealization(g, h, theta,
                                    pair_id=f"so({p + r},{q})/so({p},{q})",
                                    h_label=f"so({p},{q})")
    # c = so(p+1) x so(q): rotations among first p+1 positives and among negatives
    c_mats = [_rot(n, i, j) for i in range(p + 1) for j in range(i + 1, p + 1)]
    c_mats += [_rot(n, i, j) for i in range(neg0, n) for j in range(i + 1, n)]
    c_space = _subspace_from_mats(g, c_mats)
    # torus of K_H = SO(p) x SO(q): block rotations
    t_mats = [_rot(n, 2 * t, 2 * t + 1) for t in range(p // 2)]
    t_mats += [_rot(n, neg0 + 2 * t, neg0 + 2 * t + 1) for t in range((q - 1) // 2)]

    gP = build_presentation(f"so({n},C)", prefix="g")
    hP, cP, phi = phi_so_family(p, q, r)
    pa, qa = p // 2, (q - 1) // 2
    mg = len(gP.torus_vars)

    def lin(vars_, name):
        return MultiPoly.var(vars_, name)

    zero_h = MultiPoly.zero(hP.torus_vars)
    sub_gh = {}
    for i in range(mg):
        if i < pa + qa:
            sub_gh[gP.torus_vars[i]] = lin(hP.torus_vars, hP.torus_vars[i])
        else:
            sub_gh[gP.torus_vars[i]] = zero_h
    emb_g_to_h = TorusEmbedding(gP.torus_vars, hP.torus_vars, sub_gh)
    zero_c = MultiPoly.zero(cP.torus_vars)
    sub_gc = {}
    for i in range(mg):
        if i < pa + qa:
            sub_gc[gP.torus_vars[i]] = lin(cP.torus_vars, cP.torus_vars[i])
        else:
            sub_gc[gP.torus_vars[i]] = zero_c
    emb_g_to_c = TorusEmbedding(gP.torus_vars, cP.torus_vars, sub_gc)
    tvars = tuple([f"t{i}" for i in range(1, pa + 1)]
                  + [f"s{i}" for i in range(1, qa + 1)])
    tP = full_ring_presentation(tvars)
    emb_h_to_t = TorusEmbedding(
        hP.torus_vars, tvars,
        {hP.torus_vars[i]: MultiPoly.var(tvars, tvars[i])
         for i in range(pa + qa)})
    emb_c_to_t = TorusEmbedding(
        cP.torus_vars, tvars,
        {cP.torus_vars[i]: MultiPoly.var(tvars, tvars[i])
         for i in range(pa + qa)})
    cand = CompactCandidate(
        label=f"SO({p + 1})xSO({q})", c_space=c_space, t_mats=t_mats,
        gP=gP, hP=hP, cP=cP, phi=phi,
        emb_g_to_h=emb_g_to_h, emb_g_to_c=emb_g_to_c,
        emb_h_to_t=emb_h_to_t, emb_c_to_t=emb_c_to_t)
    return pair, cand


def sl_family_candidate(n: int, m: int):
    """SL(n, R) / SL(m, R) with C = SO(m+1); n > m >= 2, m even."""
    if not (n > m >= 2):
        raise ParameterViolation("need n > m >= 2")
    if m % 2 != 0:
        raise ParameterViolation("need m even")
    g = _algebra(f"sl({n},R)", lambda: (n, basis_sl_r(n)))
    theta = theta_neg_transpose(g)
    h_mats = [SMat.unit(n, i, j) for i in range(m) for j in range(m) if i != j]
    h_mats += [SMat(n, {(k, k): Fraction(1), (k + 1, k + 1): Fraction(-1)})
               for k in range(m - 1)]
    h = _subspace_from_mats(g, h_mats)
    pair = ReductivePairRealization(g, h, theta,
                                    pair_id=f"sl({n},R)/sl({m},R)",
                                    h_label=f"sl({m},R)")
    c_mats = [_rot(n, i, j) for i in range(m + 1) for j in range(i + 1, m + 1)]
    c_space = _subspace_from_mats(g, c_mats)
    t_mats = [_rot(n, 2 * t, 2 * t + 1) for t in range(m // 2)]

    gP = build_presentation(f"sl({n},C)", prefix="x")
    hP, cP, phi = phi_sl_family(n, m)
    xv, yv = gP.torus_vars, hP.torus_vars
    sub_gh = {}
    ylast = MultiPoly.zero(yv)
    for v in yv:
        ylast = ylast - MultiPoly.var(yv, v)
    for i, xvar in enumerate(xv):
        if i < m - 1:
            sub_gh[xvar] = MultiPoly.var(yv, yv[i])
        elif i == m - 1:
            sub_gh[xvar] = ylast
        else:
            sub_gh[xvar] = MultiPoly.zero(yv)
    emb_g_to_h = TorusEmbedding(xv, yv, sub_gh)
    emb_g_to_c = restriction_via_blocks(gP, cP.torus_vars,
                                        list(cP.torus_vars), n - m,
                                        name="rest g->c", target=cP)
    tvars = tuple(f"w{i}" for i in range(1, m // 2 + 1))
    tP = full_ring_presentation(tvars)
    emb_h_to_t = restriction_via_blocks(hP, tvars, list(tvars), 0,
                                        name="rest h->t", target=tP)
    emb_c_to_t = TorusEmbedding(
        cP.torus_vars, tvars,
        {cP.torus_vars[i]: MultiPoly.var(tvars, tvars[i])
         for i in range(m // 2)})
    cand = CompactCandidate(
        label=f"SO({m + 1})", c_space=c_space, t_mats=t_mats,
        gP=gP, hP=hP, cP=cP, phi=phi,
        emb_g_to_h=emb_g_to_h, emb_g_to_c=emb_g_to_c,
        emb_h_to_t=emb_h_to_t, emb_c_to_t=emb_c_to_t)
    return pair, cand


def sl_chain_candidate(ps: list[int], q: int):
    """SL(p1+...+pk+q, R) / (SL(p1,R) x ... x SL(pk,R)), product of p_i even,
    q >= 1: the base factor check extended by the commuting factors."""
    if not ps or any(p < 2 for p in ps):
        raise ParameterViolation("every factor needs p_i >= 2")
    if q < 1:
        raise ParameterViolation("need q >= 1")
    evens = [i for i, p in enumerate(ps) if p % 2 == 0]
    if not evens:
        raise ParameterViolation("product of the p_i must be even")
    base = evens[0]
    order = [base] + [i for i in range(len(ps)) if i != base]
    ps_ord = [ps[i] for i in order]
    n = sum(ps) + q
    m = ps_ord[0]
    g = _algebra(f"sl({n},R)", lambda: (n, basis_sl_r(n)))
    theta = theta_neg_transpose(g)
    offsets = []
    off = 0
    for p in ps_ord:
        offsets.append(off)
        off += p
    h_mats = []
    for p, o in zip(ps_ord, offsets):
        h_mats += [SMat.unit(n, o + i, o + j)
                   for i in range(p) for j in range(p) if i != j]
        h_mats += [SMat(n, {(o + k, o + k): Fraction(1),
                            (o + k + 1, o + k + 1): Fraction(-1)})
                   for k in range(p - 1)]
    h = _subspace_from_mats(g, h_mats)
    hlab = "x".join(f"sl({p},R)" for p in ps_ord)
    pair = ReductivePairRealization(g, h, theta,
                                    pair_id=f"sl({n},R)/{hlab}",
                                    h_label=hlab)
    # c = SO(m+1) block at the base factor, K_L = prod SO(p_j) at the others
    c_mats = [_rot(n, i, j) for i in range(m + 1) for j in range(i + 1, m + 1)]
    for p, o in zip(ps_ord[1:], offsets[1:]):
        c_mats += [_rot(n, o + i, o + j)
                   for i in range(p) for j in range(i + 1, p)]
    c_space = _subspace_from_mats(g, c_mats)
    t_mats = []
    for p, o in zip(ps_ord, offsets):
        t_mats += [_rot(n, o + 2 * t, o + 2 * t + 1) for t in range(p // 2)]

    # presentations: base map enlarged factor by factor
    _, _, phi = phi_sl_family(n, m)
    for idx, p in enumerate(ps_ord[1:], start=1):
        lP = build_presentation(f"sl({p},C)", prefix=f"y{idx}_")
        klP = build_presentation(f"so({p},C)", prefix=f"z{idx}_")
        rest_l = restriction_via_blocks(lP, klP.torus_vars,
                                        list(klP.torus_vars), p - 2 * (p // 2),
                                        name=f"rest sl({p})->so({p})",
                                        target=klP)
        phi = enlarge(phi, lP, klP, rest_l)
    hP = phi.source
    cP = phi.target
    gP = build_presentation(f"sl({n},C)", prefix="x")
    # g -> h: block diagonal with per-factor trace elimination
    yv = hP.torus_vars
    sub_gh = {}
    pos = 0
    images = []
    for p, o in zip(ps_ord, offsets):
        fvars = yv[pos:pos + p - 1]
        last = MultiPoly.zero(yv)
        for v in fvars:
            last = last - MultiPoly.var(yv, v)
        images += [MultiPoly.var(yv, v) for v in fvars] + [last]
        pos += p - 1
    images += [MultiPoly.zero(yv)] * q
    xv = gP.torus_vars
    for i, xvar in enumerate(xv):
        sub_gh[xvar] = images[i]
    emb_g_to_h = TorusEmbedding(xv, yv, sub_gh)
    emb_g_to_c = restriction_via_blocks(
        gP, cP.torus_vars, list(cP.torus_vars),
        n - 2 * len(cP.torus_vars), name="rest g->c", target=cP)
    nt = sum(p // 2 for p in ps_ord)
    tvars = tuple(f"w{i}" for i in range(1, nt + 1))
    tP = full_ring_presentation(tvars)
    # h -> t: per-factor characteristic polynomials on the factor's blocks
    images_ht = {}
    pos = 0
    for idx, p in enumerate(ps_ord):
        fP = build_presentation(f"sl({p},C)", prefix="tmp")
        blocks = [MultiPoly.var(tvars, tvars[pos + i]) for i in range(p // 2)]
        from .poly import charpoly_coeffs_blocks
        coeffs = charpoly_coeffs_blocks(blocks, p - 2 * (p // 2))
        for k in range(2, p + 1):
            sym = f"f{k}" if len(ps_ord) == 1 else f"f{k}@{idx}" \
                if idx or len(ps_ord) > 1 else f"f{k}"
            images_ht[_chain_sym(k, idx, len(ps_ord))] = coeffs[k - 1]
        pos += p // 2
    emb_h_to_t = AlgebraMap(hP, tP, {s: images_ht[s] for s in hP.generators},
                            name="rest h->t")
    # c -> t: so(m+1) vars then each K_L factor's vars onto the w's
    sub_ct = {}
    pos = 0
    cvi = 0
    cvars = cP.torus_vars
    for idx, p in enumerate(ps_ord):
        nblocks = p // 2
        for i in range(nblocks):
            sub_ct[cvars[cvi]] = MultiPoly.var(tvars, tvars[pos + i])
            cvi += 1
        pos += nblocks
    emb_c_to_t = TorusEmbedding(cvars, tvars, sub_ct)
    cand = CompactCandidate(
        label=f"SO({m + 1})x" + "x".join(f"SO({p})" for p in ps_ord[1:]),
        c_space=c_space, t_mats=t_mats,
        gP=gP, hP=hP, cP=cP, phi=phi,
        emb_g_to_h=emb_g_to_h, emb_g_to_c=emb_g_to_c,
        emb_h_to_t=emb_h_to_t, emb_c_to_t=emb_c_to_t)
    return pair, cand


def _chain_sym(k: int, idx: int, nfactors: int) -> str:
    """Generator symbol of factor idx in the iterated tensor presentation.

    enlarge() suffixes the existing symbols with @0 at each step, so after
    j extra factors the base symbols carry j suffixes of @0 and factor i
    carries @1 then @0s.
    """
    if nfactors == 1:
        return f"f{k}"
    sym = f"f{k}"
    if idx == 0:
        for _ in range(nfactors - 1):
            sym += "@0"
        return sym
    sym += "@1"
    for _ in range(nfactors - 1 - idx):
        sym += "@0"
    return sym
