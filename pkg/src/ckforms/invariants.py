"""Invariant polynomial algebras presented by torus restriction.

A presentation stores the generators of the invariant algebra of a
classical complex Lie algebra as exact polynomials in coordinates on a
standard maximal torus: characteristic-polynomial coefficients, plus the
Pfaffian in the even orthogonal case. By the Chevalley restriction
theorem the presentations are faithful, so the diagram conditions reduce
to polynomial identities here.

Restriction maps between presentations come in two flavours: plain
linear variable substitutions (when the source torus contains the target
torus as a coordinate subtorus), and maps computed by symbolically
expanding the characteristic polynomial of an embedded torus element
(needed when the embedding mixes compact and split directions, where no
rational linear substitution exists).
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement

from .errors import (ParityViolation, ParameterViolation, UnsupportedFamily,
                     VariableCollision, VariableMismatch)
from .linalg import solve
from .poly import (MultiPoly, charpoly_coeffs_blocks, elementary_symmetric,
                   pfaffian, poly_substitute)


class InvariantPresentation:
    """Generators of an invariant algebra as polynomials on a torus."""

    def __init__(self, label: str, torus_vars, generators: dict,
                 weyl_substitutions=None, check_weyl: bool = True):
        self.label = label
        self.torus_vars = tuple(torus_vars)
        self.generators = dict(generators)
        self.weyl_substitutions = list(weyl_substitutions or [])
        for name, g in self.generators.items():
            if g.variables != self.torus_vars:
                raise VariableMismatch(
                    f"{label}: generator {name} uses foreign variables")
        if check_weyl:
            bad = self.weyl_failures()
            if bad:
                raise ValueError(f"{label}: generators not Weyl-invariant: {bad}")
        self._monomial_cache: dict = {}

    def weyl_failures(self):
        out = []
        for idx, sub in enumerate(self.weyl_substitutions):
            for name, g in self.generators.items():
                if g.substitute(sub, self.torus_vars) != g:
                    out.append((idx, name))
        return out

    def degrees(self) -> dict:
        return {n: g.degree() for n, g in self.generators.items()}

    def generator_monomials(self, degree: int):
        """All products of generators of total degree `degree`, expanded.

        Returns a list of (exponent-dict, MultiPoly). Cached per degree.
        """
        if degree in self._monomial_cache:
            return self._monomial_cache[degree]
        degs = self.degrees()
        names = sorted(self.generators)
        out = []

        def rec(idx, remaining, expo):
            if remaining == 0:
                poly = MultiPoly.const(self.torus_vars, 1)
                for n, e in expo.items():
                    poly = poly * (self.generators[n] ** e)
                out.append((dict(expo), poly))
                return
            if idx == len(names):
                return
            name = names[idx]
            d = degs[name]
            if d <= 0:
                rec(idx + 1, remaining, expo)
                return
            maxe = remaining // d
            for e in range(maxe + 1):
                if e:
                    expo[name] = e
                rec(idx + 1, remaining - e * d, expo)
                if e:
                    del expo[name]

        rec(0, degree, {})
        self._monomial_cache[degree] = out
        return out

    def decompose(self, poly: MultiPoly):
        """Write a torus polynomial as a polynomial in the generators.

        Returns a list of (exponent-dict, coefficient) or None if the
        polynomial is not in the subalgebra the generators span.
        """
        if poly.variables != self.torus_vars:
            raise VariableMismatch(f"{self.label}: cannot decompose foreign polynomial")
        if poly.is_zero():
            return []
        by_degree: dict[int, MultiPoly] = {}
        for e, c in poly.terms.items():
            d = sum(e)
            part = by_degree.setdefault(d, MultiPoly.zero(self.torus_vars))
            part.terms[e] = c
        result = []
        for d, part in sorted(by_degree.items()):
            monos = self.generator_monomials(d)
            if not monos:
                return None
            keys = sorted({e for _, mp in monos for e in mp.terms}
                          | set(part.terms))
            rows = [[mp.terms.get(k, Fraction(0)) for _, mp in monos]
                    for k in keys]
            rhs = [part.terms.get(k, Fraction(0)) for k in keys]
            sol = solve(rows, rhs)
            if sol is None:
                return None
            # confirm (solve gives a solution of the normal system only
            # when consistent; verify exactly)
            rec = MultiPoly.zero(self.torus_vars)
            for c, (_, mp) in zip(sol, monos):
                if c:
                    rec = rec + mp * c
            if rec != part:
                return None
            for c, (expo, _) in zip(sol, monos):
                if c:
                    result.append((expo, c))
        return result


class TorusEmbedding:
    """A rational linear substitution between torus coordinate systems."""

    def __init__(self, source_vars, target_vars, substitution: dict):
        self.source_vars = tuple(source_vars)
        self.target_vars = tuple(target_vars)
        self.substitution = {}
        for v in self.source_vars:
            img = substitution.get(v)
            if img is None:
                raise VariableMismatch(f"missing substitution image for {v}")
            if img.variables != self.target_vars:
                img = img.extend(self.target_vars)
            if not all(sum(e) <= 1 for e in img.terms):
                raise ValueError(f"substitution image for {v} is not linear")
            self.substitution[v] = img

    def on_poly(self, poly: MultiPoly) -> MultiPoly:
        if poly.variables != self.source_vars:
            raise VariableMismatch("polynomial not over the embedding's source")
        return poly.substitute(self.substitution, self.target_vars)


class AlgebraMap:
    """Algebra homomorphism given by generator images in the target torus."""

    def __init__(self, source: InvariantPresentation,
                 target: InvariantPresentation, images: dict, name: str = ""):
        self.source = source
        self.target = target
        self.name = name
        self.images = {}
        for sym, gen in source.generators.items():
            if sym not in images:
                raise VariableMismatch(f"{name}: no image for generator {sym}")
            img = images[sym]
            if img.variables != target.torus_vars:
                img = img.extend(target.torus_vars)
            if not img.is_zero():
                if not img.is_homogeneous() or img.degree() != gen.degree():
                    raise ValueError(
                        f"{name}: image of {sym} is not homogeneous of degree "
                        f"{gen.degree()}")
            self.images[sym] = img

    def on_generator(self, sym: str) -> MultiPoly:
        return self.images[sym]

    def on_poly(self, poly: MultiPoly) -> MultiPoly:
        """Apply to an arbitrary invariant: decompose, then map."""
        dec = self.source.decompose(poly)
        if dec is None:
            raise ValueError(
                f"{self.name}: polynomial is not in the source invariant algebra")
        acc = MultiPoly.zero(self.target.torus_vars)
        for expo, c in dec:
            term = MultiPoly.const(self.target.torus_vars, c)
            for sym, e in expo.items():
                term = term * (self.images[sym] ** e)
            acc = acc + term
        return acc


# ----------------------------------------------------------------------
# presentations of the classical invariant algebras


def build_presentation(label: str, prefix: str = "x") -> InvariantPresentation:
    """Invariant presentation for sl(n,C), so(n,C) or gl(n,C).

    Generators are characteristic polynomial coefficients f_k defined by
    det(t I - X) = t^n + f_1 t^(n-1) + ... + f_n, restricted to the
    standard torus; so(2m, C) additionally carries the Pfaffian, with the
    sign pinned so that it equals the product of the block coordinates.
    """
    fam, n = _parse_inv_label(label)
    if fam == "sl":
        if n < 2:
            raise UnsupportedFamily(f"{label}: need n >= 2")
        vars_ = tuple(f"{prefix}{i}" for i in range(1, n))
        xs = [MultiPoly.var(vars_, v) for v in vars_]
        last = MultiPoly.zero(vars_)
        for x in xs:
            last = last - x
        entries = xs + [last]
        gens = {}
        for k in range(2, n + 1):
            gens[f"f{k}"] = elementary_symmetric(entries, k, vars_) * Fraction((-1) ** k)
        weyl = []
        for i in range(n - 2):
            sub = {v: MultiPoly.var(vars_, v) for v in vars_}
            sub[vars_[i]], sub[vars_[i + 1]] = sub[vars_[i + 1]], sub[vars_[i]]
            weyl.append(sub)
        if n >= 2:
            sub = {v: MultiPoly.var(vars_, v) for v in vars_}
            sub[vars_[-1]] = last
            weyl.append(sub)
        return InvariantPresentation(label, vars_, gens, weyl)
    if fam == "gl":
        vars_ = tuple(f"{prefix}{i}" for i in range(1, n + 1))
        xs = [MultiPoly.var(vars_, v) for v in vars_]
        gens = {f"f{k}": elementary_symmetric(xs, k, vars_) * Fraction((-1) ** k)
                for k in range(1, n + 1)}
        weyl = []
        for i in range(n - 1):
            sub = {v: MultiPoly.var(vars_, v) for v in vars_}
            sub[vars_[i]], sub[vars_[i + 1]] = sub[vars_[i + 1]], sub[vars_[i]]
            weyl.append(sub)
        return InvariantPresentation(label, vars_, gens, weyl)
    if fam == "so":
        m = n // 2
        vars_ = tuple(f"{prefix}{i}" for i in range(1, m + 1))
        zs = [MultiPoly.var(vars_, v) for v in vars_]
        coeffs = charpoly_coeffs_blocks(zs, n - 2 * m)
        gens = {}
        if n % 2 == 1:
            for k in range(1, m + 1):
                gens[f"f{2 * k}"] = coeffs[2 * k - 1]
        else:
            for k in range(1, m):
                gens[f"f{2 * k}"] = coeffs[2 * k - 1]
            if m >= 1:
                pf = MultiPoly.const(vars_, 1)
                for z in zs:
                    pf = pf * z
                gens["pf"] = pf
        weyl = []
        for i in range(m - 1):
            sub = {v: MultiPoly.var(vars_, v) for v in vars_}
            sub[vars_[i]], sub[vars_[i + 1]] = sub[vars_[i + 1]], sub[vars_[i]]
            weyl.append(sub)
        if m >= 1:
            sub = {v: MultiPoly.var(vars_, v) for v in vars_}
            if n % 2 == 1:
                sub[vars_[-1]] = -MultiPoly.var(vars_, vars_[-1])
                weyl.append(sub)
            elif m >= 2:
                sub[vars_[-1]] = -MultiPoly.var(vars_, vars_[-1])
                sub[vars_[-2]] = -MultiPoly.var(vars_, vars_[-2])
                weyl.append(sub)
        return InvariantPresentation(label, vars_, gens, weyl)
    raise UnsupportedFamily(f"no invariant presentation for {label}")


def _parse_inv_label(label: str):
    lab = label.replace(" ", "")
    for fam in ("sl", "so", "gl"):
        if lab.startswith(fam + "(") and lab.endswith(",C)"):
            return fam, int(lab[len(fam) + 1:-3])
    raise UnsupportedFamily(f"cannot parse invariant algebra label {label!r}")


def tensor_presentation(label: str, parts: list[InvariantPresentation]
                        ) -> InvariantPresentation:
    """Joint presentation of a direct sum; generator names get @k suffixes."""
    vars_: list[str] = []
    for p in parts:
        for v in p.torus_vars:
            if v in vars_:
                raise VariableCollision(f"variable {v} appears in two factors")
            vars_.append(v)
    vars_t = tuple(vars_)
    gens = {}
    weyl = []
    ident = {v: MultiPoly.var(vars_t, v) for v in vars_t}
    for idx, p in enumerate(parts):
        for name, g in p.generators.items():
            gens[f"{name}@{idx}"] = g.extend(vars_t)
        for sub in p.weyl_substitutions:
            full = dict(ident)
            for v, img in sub.items():
                full[v] = img.extend(vars_t)
            weyl.append(full)
    return InvariantPresentation(label, vars_t, gens, weyl, check_weyl=False)


# ----------------------------------------------------------------------
# the two families of maps used by the checkers


def phi_so_family(p: int, q: int, r: int):
    """Map from so(p+q,C)-invariants to so(p+1,C) (x) so(q,C)-invariants.

    The image of f_2k is the k-th coefficient convolution
    sum_{i+j=k} f_2i (x) f_2j, with out-of-range f treated as 0.
    Requires p even and q odd so that the source has no Pfaffian
    generator; r only enters the enclosing checker.
    """
    if p % 2 != 0 or q % 2 != 1:
        raise ParityViolation("need p even and q odd")
    if r < 1 or p < 1 or q < 1:
        raise ParameterViolation("need p, q, r >= 1")
    hP = build_presentation(f"so({p + q},C)", prefix="h")
    aP = build_presentation(f"so({p + 1},C)", prefix="a")
    bP = build_presentation(f"so({q},C)", prefix="b") if q >= 2 else \
        InvariantPresentation(f"so({q},C)", (), {}, [])
    cP = tensor_presentation(f"so({p + 1},C)+so({q},C)", [aP, bP])
    avars = [MultiPoly.var(cP.torus_vars, v) for v in aP.torus_vars]
    bvars = [MultiPoly.var(cP.torus_vars, v) for v in bP.torus_vars]
    asq = [v * v for v in avars]
    bsq = [v * v for v in bvars]
    images = {}
    for k in range(1, (p + q - 1) // 2 + 1):
        acc = MultiPoly.zero(cP.torus_vars)
        for i in range(0, k + 1):
            j = k - i
            ei = elementary_symmetric(asq, i, cP.torus_vars)
            ej = elementary_symmetric(bsq, j, cP.torus_vars)
            acc = acc + ei * ej
        images[f"f{2 * k}"] = acc
    return hP, cP, AlgebraMap(hP, cP, images, name=f"phi_so({p},{q},{r})")


def phi_sl_family(n: int, m: int):
    """Map from sl(m,C)-invariants to so(m+1,C)-invariants: f_k -> f_k,
    with odd-degree targets vanishing. Requires n > m >= 2 and m even."""
    if not (n > m >= 2):
        raise ParameterViolation("need n > m >= 2")
    if m % 2 != 0:
        raise ParameterViolation("need m even")
    hP = build_presentation(f"sl({m},C)", prefix="y")
    cP = build_presentation(f"so({m + 1},C)", prefix="z")
    zs = [MultiPoly.var(cP.torus_vars, v) for v in cP.torus_vars]
    zsq = [z * z for z in zs]
    images = {}
    for k in range(2, m + 1):
        if k % 2 == 0:
            images[f"f{k}"] = elementary_symmetric(zsq, k // 2, cP.torus_vars)
        else:
            images[f"f{k}"] = MultiPoly.zero(cP.torus_vars)
    return hP, cP, AlgebraMap(hP, cP, images, name=f"phi_sl({n},{m})")


def restriction_via_blocks(source: InvariantPresentation,
                           target_vars, block_vars: list[str],
                           extra_zeros: int, name: str = "",
                           target: InvariantPresentation | None = None
                           ) -> AlgebraMap:
    """Restriction map computed from an embedded block torus element.

    The embedded element is block diagonal with 2x2 rotation blocks in
    the named target variables plus zero entries; generator images are
    read off the symbolic characteristic polynomial (and the Pfaffian
    image is the block product when the blocks cover everything, zero
    otherwise).
    """
    tv = tuple(target_vars)
    if target is None:
        target = InvariantPresentation(f"S({','.join(tv)})", tv,
                                       {v: MultiPoly.var(tv, v) for v in tv}, [])
    zs = [MultiPoly.var(tv, v) for v in block_vars]
    fam, n = _parse_inv_label(source.label.split("+")[0]) \
        if "+" not in source.label else (None, None)
    coeffs = charpoly_coeffs_blocks(zs, extra_zeros)
    images = {}
    for sym in source.generators:
        if sym == "pf":
            if extra_zeros == 0:
                pf = MultiPoly.const(tv, 1)
                for z in zs:
                    pf = pf * z
                images[sym] = pf
            else:
                images[sym] = MultiPoly.zero(tv)
        else:
            k = int(sym[1:])
            images[sym] = coeffs[k - 1] if k - 1 < len(coeffs) else \
                MultiPoly.zero(tv)
    return AlgebraMap(source, target, images, name=name)


def full_ring_presentation(vars_) -> InvariantPresentation:
    """The polynomial ring on the given variables, presented by itself."""
    tv = tuple(vars_)
    return InvariantPresentation(f"S({','.join(tv)})", tv,
                                 {v: MultiPoly.var(tv, v) for v in tv}, [])


def _as_poly_map(obj, poly):
    if isinstance(obj, TorusEmbedding):
        return obj.on_poly(poly)
    if isinstance(obj, AlgebraMap):
        return obj.on_poly(poly)
    raise TypeError(f"not a restriction map: {obj!r}")


def check_restriction_diagram(gP: InvariantPresentation,
                              hP: InvariantPresentation,
                              cP: InvariantPresentation,
                              phi: AlgebraMap,
                              emb_g_to_h, emb_g_to_c,
                              emb_h_to_t, emb_c_to_t):
    """Verify both triangles of the restriction diagram exactly.

    For every generator f of the ambient invariants:
        restrict(f, g->c) == phi(restrict(f, g->h))
    and for every generator u of the subalgebra invariants:
        restrict(phi(u), c->t) == restrict(u, h->t).

    Returns (ok, list of failing generator names).
    """
    failures = []
    for sym, gen in sorted(gP.generators.items()):
        lhs = _as_poly_map(emb_g_to_c, gen)
        via_h = _as_poly_map(emb_g_to_h, gen)
        dec = hP.decompose(via_h)
        if dec is None:
            failures.append(sym)
            continue
        rhs = MultiPoly.zero(cP.torus_vars)
        for expo, c in dec:
            term = MultiPoly.const(cP.torus_vars, c)
            for s, e in expo.items():
                term = term * (phi.images[s] ** e)
            rhs = rhs + term
        if lhs != rhs:
            failures.append(sym)
    for sym, gen in sorted(hP.generators.items()):
        lhs = _as_poly_map(emb_c_to_t, phi.images[sym])
        if isinstance(emb_h_to_t, AlgebraMap):
            rhs = emb_h_to_t.on_generator(sym)
        else:
            rhs = emb_h_to_t.on_poly(gen)
        if lhs.variables != rhs.variables:
            raise VariableMismatch("triangle legs land in different rings")
        if lhs != rhs:
            failures.append(sym)
    return (not failures), failures


def enlarge(phi: AlgebraMap, lP: InvariantPresentation,
            klP: InvariantPresentation, rest_l: AlgebraMap) -> AlgebraMap:
    """Tensor a diagram map with the compact restriction of an extra
    commuting reductive factor: h + l maps into c + k_l.

    With no extra factor this returns phi itself.
    """
    if lP is None or not lP.torus_vars and not lP.generators:
        return phi
    if rest_l.source is not lP or rest_l.target is not klP:
        raise ParameterViolation("rest_l must map the factor onto its compact part")
    src = tensor_presentation(f"{phi.source.label}+{lP.label}", [phi.source, lP])
    tgt = tensor_presentation(f"{phi.target.label}+{klP.label}", [phi.target, klP])
    images = {}
    for sym, img in phi.images.items():
        images[f"{sym}@0"] = img.extend(tgt.torus_vars)
    for sym, img in rest_l.images.items():
        images[f"{sym}@1"] = img.extend(tgt.torus_vars)
    return AlgebraMap(src, tgt, images, name=f"{phi.name}+rest({lP.label})")
