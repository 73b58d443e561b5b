"""Sparse multivariate polynomials with exact rational coefficients.

A MultiPoly carries its own ordered variable tuple; exponent keys are
tuples indexed against it. Substitution is the workhorse: it implements
every restriction map between invariant presentations.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence


class MissingImage(KeyError):
    """A used variable has no image under a substitution."""


class MultiPoly:
    __slots__ = ("variables", "terms")

    def __init__(self, variables: Sequence[str], terms: Mapping | None = None):
        self.variables: tuple[str, ...] = tuple(variables)
        clean: dict[tuple[int, ...], Fraction] = {}
        if terms:
            nv = len(self.variables)
            for exp, c in terms.items():
                c = Fraction(c)
                if c == 0:
                    continue
                exp = tuple(exp)
                if len(exp) != nv:
                    raise ValueError("exponent length does not match variables")
                clean[exp] = clean.get(exp, Fraction(0)) + c
                if clean[exp] == 0:
                    del clean[exp]
        self.terms: dict[tuple[int, ...], Fraction] = clean

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, variables: Sequence[str]) -> "MultiPoly":
        return cls(variables, {})

    @classmethod
    def const(cls, variables: Sequence[str], c) -> "MultiPoly":
        z = (0,) * len(tuple(variables))
        return cls(variables, {z: Fraction(c)})

    @classmethod
    def var(cls, variables: Sequence[str], name: str) -> "MultiPoly":
        variables = tuple(variables)
        i = variables.index(name)
        e = [0] * len(variables)
        e[i] = 1
        return cls(variables, {tuple(e): Fraction(1)})

    # -- basic queries ------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def used_variables(self) -> set[str]:
        used = set()
        for e in self.terms:
            for i, k in enumerate(e):
                if k:
                    used.add(self.variables[i])
        return used

    # -- arithmetic ---------------------------------------------------
    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.variables != self.variables:
                raise ValueError("variable tuples differ; align first")
            return other
        return MultiPoly.const(self.variables, other)

    def __add__(self, other) -> "MultiPoly":
        other = self._coerce(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = t.get(e, Fraction(0)) + c
            if t[e] == 0:
                del t[e]
        out = MultiPoly.zero(self.variables)
        out.terms = t
        return out

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        out = MultiPoly.zero(self.variables)
        out.terms = {e: -c for e, c in self.terms.items()}
        return out

    def __sub__(self, other) -> "MultiPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "MultiPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            c = Fraction(other)
            out = MultiPoly.zero(self.variables)
            if c != 0:
                out.terms = {e: v * c for e, v in self.terms.items()}
            return out
        other = self._coerce(other)
        t: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = t.get(e)
                t[e] = c1 * c2 if v is None else v + c1 * c2
        out = MultiPoly.zero(self.variables)
        out.terms = {e: c for e, c in t.items() if c != 0}
        return out

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MultiPoly":
        if n < 0:
            raise ValueError("negative power")
        out = MultiPoly.const(self.variables, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            return self.variables == other.variables and self.terms == other.terms
        return self.terms == MultiPoly.const(self.variables, other).terms

    def __hash__(self):
        return hash((self.variables, tuple(sorted(self.terms.items()))))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items()):
            mono = "*".join(
                f"{v}^{k}" if k > 1 else v
                for v, k in zip(self.variables, e)
                if k
            )
            parts.append(f"{c}" if not mono else (f"{c}*{mono}" if c != 1 else mono))
        return " + ".join(parts)

    # -- substitution ---------------------------------------------------
    def substitute(self, images: Mapping[str, "MultiPoly"],
                   target_vars: Sequence[str] | None = None) -> "MultiPoly":
        """Exact composite polynomial under variable -> polynomial images.

        Substitution is an algebra homomorphism. Every variable actually
        used must have an image; images must share one target variable
        tuple.
        """
        used = self.used_variables()
        missing = sorted(v for v in used if v not in images)
        if missing:
            raise MissingImage(f"no image for variable(s): {', '.join(missing)}")
        if target_vars is None:
            tv = None
            for img in images.values():
                tv = img.variables
                break
            if tv is None:
                tv = ()
        else:
            tv = tuple(target_vars)
        for v in used:
            if images[v].variables != tv:
                raise ValueError("substitution images live in different rings")
        out = MultiPoly.zero(tv)
        pow_cache: dict[tuple[str, int], MultiPoly] = {}
        for e, c in self.terms.items():
            term = MultiPoly.const(tv, c)
            for var, k in zip(self.variables, e):
                if not k:
                    continue
                key = (var, k)
                p = pow_cache.get(key)
                if p is None:
                    p = images[var] ** k
                    pow_cache[key] = p
                term = term * p
            out = out + term
        return out

    def rename(self, variables: Sequence[str]) -> "MultiPoly":
        """Same terms over a new variable tuple of equal length."""
        variables = tuple(variables)
        if len(variables) != len(self.variables):
            raise ValueError("variable count mismatch")
        out = MultiPoly.zero(variables)
        out.terms = dict(self.terms)
        return out

    def extend(self, variables: Sequence[str]) -> "MultiPoly":
        """View in a larger ring containing all current variables."""
        variables = tuple(variables)
        idx = [variables.index(v) for v in self.variables]
        out = MultiPoly.zero(variables)
        t = {}
        for e, c in self.terms.items():
            ne = [0] * len(variables)
            for pos, k in zip(idx, e):
                ne[pos] = k
            t[tuple(ne)] = c
        out.terms = t
        return out


def poly_substitute(p: MultiPoly, images: Mapping[str, MultiPoly],
                    target_vars: Sequence[str] | None = None) -> MultiPoly:
    return p.substitute(images, target_vars)


def elementary_symmetric(vals: Sequence[MultiPoly | Fraction], k: int, ring_vars=None):
    """e_k of the given values (polynomials or scalars); e_0 = 1."""
    if k < 0:
        raise ValueError("negative index")
    if ring_vars is None and vals and isinstance(vals[0], MultiPoly):
        ring_vars = vals[0].variables
    one = MultiPoly.const(ring_vars or (), 1)
    if k == 0:
        return one
    if k > len(vals):
        return MultiPoly.zero(ring_vars or ())
    acc = MultiPoly.zero(ring_vars or ())
    for comb in combinations(vals, k):
        term = one
        for v in comb:
            term = term * v
        acc = acc + term
    return acc


def charpoly_coeffs_diag(entries: Sequence[MultiPoly]) -> list[MultiPoly]:
    """Coefficients [f_1, ..., f_n] of det(t*I - diag(entries)).

    det(t*I - X) = t^n + f_1 t^(n-1) + ... + f_n, so f_k = (-1)^k e_k.
    """
    n = len(entries)
    ring = entries[0].variables if entries else ()
    return [
        elementary_symmetric(entries, k, ring) * Fraction((-1) ** k)
        for k in range(1, n + 1)
    ]


def charpoly_coeffs_blocks(block_vars: Sequence[MultiPoly], extra_zeros: int
                           ) -> list[MultiPoly]:
    """Char poly coefficients of a block torus element.

    The element is block diagonal with 2x2 skew blocks [[0, -z],[z, 0]]
    and `extra_zeros` additional zero diagonal entries, so
    det(t*I - X) = t^extra_zeros * prod (t^2 + z^2); returns [f_1..f_n].
    """
    ring = block_vars[0].variables if block_vars else ()
    n = 2 * len(block_vars) + extra_zeros
    sq = [z * z for z in block_vars]
    out = [MultiPoly.zero(ring) for _ in range(n)]
    for k in range(0, len(block_vars) + 1):
        if 2 * k - 1 >= 0 and 2 * k <= n:
            if k > 0:
                out[2 * k - 1] = elementary_symmetric(sq, k, ring)
    return out


def pfaffian(mat: Sequence[Sequence[MultiPoly | Fraction]], ring_vars=None):
    """Pfaffian of a skew-symmetric matrix by perfect-matching expansion.

    Intended for sizes 2m <= 10; sign convention is the standard one with
    pf([[0, a], [-a, 0]]) = a.
    """
    n = len(mat)
    if n % 2:
        raise ValueError("odd size has no Pfaffian")
    if ring_vars is None:
        for row in mat:
            for x in row:
                if isinstance(x, MultiPoly):
                    ring_vars = x.variables
                    break
            if ring_vars is not None:
                break
    ring = ring_vars or ()

    def as_poly(x):
        return x if isinstance(x, MultiPoly) else MultiPoly.const(ring, x)

    if n == 0:
        return MultiPoly.const(ring, 1)

    def rec(indices: tuple[int, ...]):
        if not indices:
            return MultiPoly.const(ring, 1)
        i = indices[0]
        rest = indices[1:]
        acc = MultiPoly.zero(ring)
        for pos, j in enumerate(rest):
            entry = as_poly(mat[i][j])
            if entry.is_zero():
                continue
            sign = Fraction((-1) ** pos)
            sub = tuple(x for x in rest if x != j)
            acc = acc + entry * rec(sub) * sign
        return acc

    return rec(tuple(range(n)))
