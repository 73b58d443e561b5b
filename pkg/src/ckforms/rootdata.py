"""Abstract restricted root systems with two-sided multiplicities.

Roots are rational coordinate vectors on a* (coordinates taken against a
chosen basis of a). Signatures take values in {+1, -1} on a simple system
and extend multiplicatively; half-signatures take values in the fourth
roots of unity, kept as an exact 4-element type.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import RankTooLarge, SignatureMismatch, LiftMismatch


class Unit4:
    """Fourth root of unity: exponent k means i^k."""

    __slots__ = ("k",)

    def __init__(self, k: int):
        self.k = k % 4

    def __mul__(self, other: "Unit4") -> "Unit4":
        return Unit4(self.k + other.k)

    def __pow__(self, n: int) -> "Unit4":
        return Unit4(self.k * (n % 4))

    def inverse(self) -> "Unit4":
        return Unit4(-self.k)

    def square(self) -> "Unit4":
        return Unit4(2 * self.k)

    def as_sign(self) -> int:
        if self.k == 0:
            return 1
        if self.k == 2:
            return -1
        raise ValueError("not a real sign")

    def is_real(self) -> bool:
        return self.k % 2 == 0

    def __eq__(self, other):
        return isinstance(other, Unit4) and self.k == other.k

    def __hash__(self):
        return hash(("u4", self.k))

    def __repr__(self):
        return ("1", "i", "-1", "-i")[self.k]

    @classmethod
    def parse(cls, s: str) -> "Unit4":
        table = {"1": 0, "+1": 0, "i": 1, "+i": 1, "-1": 2, "-i": 3}
        if s not in table:
            raise ValueError(f"not a fourth root of unity: {s!r}")
        return cls(table[s])


U4_ONE = Unit4(0)
U4_I = Unit4(1)
U4_MINUS_ONE = Unit4(2)
U4_MINUS_I = Unit4(3)


def _vec(v) -> tuple[Fraction, ...]:
    return tuple(Fraction(x) for x in v)


class RestrictedRootData:
    """A restricted root system Sigma in a* with multiplicities (m+, m-).

    The invariant inner product on a is reconstructed from the data
    itself: the trace form of ad on a is sum over roots of
    m_total(alpha) * alpha(x) * alpha(y), which is exactly the Killing
    form of the ambient algebra restricted to a. The pairing on a* uses
    its inverse.
    """

    def __init__(self, roots: Iterable[Sequence], mult: Mapping,
                 dim_z_k_h: int, dim_z_g_a: int,
                 simple: Sequence[Sequence] | None = None,
                 validate: bool = True):
        self.roots: tuple[tuple[Fraction, ...], ...] = tuple(
            sorted({_vec(r) for r in roots}))
        if not self.roots:
            self.rank_coords = 0
        else:
            self.rank_coords = len(self.roots[0])
        self.mult: dict[tuple[Fraction, ...], tuple[int, int]] = {
            _vec(r): (int(m[0]), int(m[1])) for r, m in mult.items()}
        self.dim_z_k_h = int(dim_z_k_h)
        self.dim_z_g_a = int(dim_z_g_a)
        self._pair_cache: dict = {}
        if simple is not None:
            self.simple: tuple[tuple[Fraction, ...], ...] = tuple(
                _vec(s) for s in simple)
        else:
            self.simple = self._find_simple()
        self._coeff_cache: dict = {}
        if validate:
            self._validate()

    # -- inner product -------------------------------------------------
    def _gram(self):
        """Gram matrix on a of the trace form sum m_tot(alpha) alpha x alpha."""
        n = self.rank_coords
        g = [[Fraction(0)] * n for _ in range(n)]
        for r, (mp, mm) in self.mult.items():
            m = mp + mm
            for i in range(n):
                if r[i] == 0:
                    continue
                for j in range(n):
                    if r[j]:
                        g[i][j] += m * r[i] * r[j]
        return g

    def _dual_gram(self):
        if "dual" not in self._pair_cache:
            from .linalg import rref
            gram = self._gram()
            n = len(gram)
            aug = [list(gram[i]) + [Fraction(int(i == j)) for j in range(n)]
                   for i in range(n)]
            red, pivots = rref(aug)
            if pivots[:n] != list(range(n)):
                raise ValueError(
                    "roots do not span a*; invariant pairing is singular")
            self._pair_cache["dual"] = [red[i][n:] for i in range(n)]
        return self._pair_cache["dual"]

    def pairing(self, a, b) -> Fraction:
        """Invariant inner product of two functionals on a."""
        a, b = _vec(a), _vec(b)
        dg = self._dual_gram()
        return sum((a[i] * dg[i][j] * b[j]
                    for i in range(len(a)) for j in range(len(b))),
                   start=Fraction(0))

    # -- structure ------------------------------------------------------
    @property
    def rank(self) -> int:
        return len(self.simple)

    def _find_simple(self):
        if not self.roots:
            return ()
        pos = [r for r in self.roots if _lex_positive(r)]
        posset = set(pos)
        simple = []
        for r in pos:
            decomposable = False
            for s in pos:
                if s == r:
                    continue
                diff = tuple(a - b for a, b in zip(r, s))
                if diff in posset:
                    decomposable = True
                    break
            if not decomposable:
                simple.append(r)
        return tuple(sorted(simple))

    def positive_roots(self):
        coeffs = {r: self.simple_coefficients(r) for r in self.roots}
        return tuple(r for r in self.roots
                     if all(c >= 0 for c in coeffs[r]) and any(coeffs[r]))

    def simple_coefficients(self, root) -> tuple[Fraction, ...]:
        root = _vec(root)
        if root in self._coeff_cache:
            return self._coeff_cache[root]
        from .linalg import solve
        rows = [[self.simple[j][i] for j in range(len(self.simple))]
                for i in range(self.rank_coords)]
        sol = solve(rows, list(root))
        if sol is None:
            raise ValueError(f"root {root} is not in the span of the simple system")
        out = tuple(sol)
        self._coeff_cache[root] = out
        return out

    def is_root(self, v) -> bool:
        return _vec(v) in self.mult

    def _validate(self):
        rootset = set(self.roots)
        if set(self.mult) != rootset:
            raise ValueError("multiplicity map does not match root set")
        for r in self.roots:
            neg = tuple(-x for x in r)
            if neg not in rootset:
                raise ValueError(f"roots not closed under negation at {r}")
            if self.mult[r] != self.mult[neg]:
                raise ValueError(f"multiplicities not symmetric at {r}")
            if all(x == 0 for x in r):
                raise ValueError("zero vector listed as root")
        # integrality of simple coefficients, uniform sign
        for r in self.roots:
            coeffs = self.simple_coefficients(r)
            if any(c.denominator != 1 for c in coeffs):
                raise ValueError(f"root {r} is not an integer combination of the simple system")
            if not (all(c >= 0 for c in coeffs) or all(c <= 0 for c in coeffs)):
                raise ValueError(f"root {r} has mixed-sign simple coefficients")
        # reflection closure and Cartan integrality
        for s in self.roots:
            ss = self.pairing(s, s)
            if ss == 0:
                raise ValueError("isotropic root")
            for r in self.roots:
                c = 2 * self.pairing(r, s) / ss
                if c.denominator != 1:
                    raise ValueError(f"Cartan pairing of {r},{s} not integral")
                refl = tuple(a - c * b for a, b in zip(r, s))
                if refl not in rootset:
                    raise ValueError(f"reflection of {r} in {s} leaves the root set")

    # -- serialization helpers -------------------------------------------
    def key(self):
        return (self.roots, tuple(sorted(self.mult.items())),
                self.dim_z_k_h, self.dim_z_g_a)

    def same_data(self, other: "RestrictedRootData") -> bool:
        return self.key() == other.key()


def _lex_positive(v) -> bool:
    for x in v:
        if x != 0:
            return x > 0
    return False


class Signature:
    """Sign assignment on a simple system, extended multiplicatively."""

    def __init__(self, values_on_simple: Sequence[int]):
        vals = tuple(int(v) for v in values_on_simple)
        if any(v not in (1, -1) for v in vals):
            raise ValueError("signature values must be +1 or -1")
        self.values_on_simple = vals

    def __repr__(self):
        return "Signature(" + ",".join("+" if v == 1 else "-" for v in self.values_on_simple) + ")"

    def __eq__(self, other):
        return (isinstance(other, Signature)
                and self.values_on_simple == other.values_on_simple)

    def __hash__(self):
        return hash(("sig", self.values_on_simple))

    def is_trivial(self) -> bool:
        return all(v == 1 for v in self.values_on_simple)


class HalfSignature:
    """Fourth-root-of-unity assignment on a simple system."""

    def __init__(self, values_on_simple: Sequence[Unit4]):
        vals = tuple(values_on_simple)
        if any(not isinstance(v, Unit4) for v in vals):
            raise ValueError("half-signature values must be fourth roots of unity")
        self.values_on_simple = vals

    def __repr__(self):
        return "HalfSignature(" + ",".join(repr(v) for v in self.values_on_simple) + ")"

    def __eq__(self, other):
        return (isinstance(other, HalfSignature)
                and self.values_on_simple == other.values_on_simple)

    def __hash__(self):
        return hash(("halfsig", self.values_on_simple))

    def square(self) -> Signature:
        return Signature([v.square().as_sign() for v in self.values_on_simple])


def extend_to_all_roots(sig, rd: RestrictedRootData) -> dict:
    """Extend a (half-)signature from the simple system to every root.

    For alpha = sum n_i psi_i the value is prod values[i]^n_i; this is the
    unique multiplicative extension.
    """
    vals = sig.values_on_simple
    if len(vals) != rd.rank:
        raise SignatureMismatch(
            f"signature rank {len(vals)} does not match root system rank {rd.rank}")
    out = {}
    half = isinstance(sig, HalfSignature)
    for r in rd.roots:
        coeffs = rd.simple_coefficients(r)
        if half:
            acc = U4_ONE
            for v, n in zip(vals, coeffs):
                acc = acc * (v ** int(n))
        else:
            acc = 1
            for v, n in zip(vals, coeffs):
                if v == -1 and int(n) % 2:
                    acc = -acc
        out[r] = acc
    return out


def twist_multiplicities(rd: RestrictedRootData, eps: Signature) -> RestrictedRootData:
    """Swap (m+, m-) exactly on the roots where the signature is -1."""
    values = extend_to_all_roots(eps, rd)
    mult = {}
    for r, (mp, mm) in rd.mult.items():
        mult[r] = (mm, mp) if values[r] == -1 else (mp, mm)
    return RestrictedRootData(rd.roots, mult, rd.dim_z_k_h, rd.dim_z_g_a,
                              simple=rd.simple, validate=False)


def is_basic(rd: RestrictedRootData) -> bool:
    """m+ >= m- for every root alpha with alpha/2 not a root."""
    rootset = set(rd.roots)
    for r, (mp, mm) in rd.mult.items():
        half = tuple(x / 2 for x in r)
        if half in rootset:
            continue
        if mp < mm:
            return False
    return True


def dim_k_cap_h(rd: RestrictedRootData) -> int:
    """dim(k cap h) from root data: the centralizer part plus the positive
    m+ sum."""
    return rd.dim_z_k_h + sum(rd.mult[r][0] for r in rd.positive_roots())


def enumerate_family(rd: RestrictedRootData, max_rank: int = 12):
    """All 2^r signature twists of the data, in deterministic order."""
    r = rd.rank
    if r > max_rank:
        raise RankTooLarge(f"rank {r} exceeds enumeration bound {max_rank}")
    out = []
    for bits in range(1 << r):
        sig = Signature([1 if not (bits >> i) & 1 else -1 for i in range(r)])
        out.append((sig, twist_multiplicities(rd, sig)))
    return out


def halfsig_lifts(eps: Signature, rd: RestrictedRootData) -> list[HalfSignature]:
    """The 2^r half-signatures squaring to the given signature."""
    if len(eps.values_on_simple) != rd.rank:
        raise SignatureMismatch("signature rank does not match root data")
    choices = []
    for v in eps.values_on_simple:
        choices.append((U4_ONE, U4_MINUS_ONE) if v == 1 else (U4_I, U4_MINUS_I))
    out = []
    r = rd.rank
    for bits in range(1 << r):
        vals = [choices[i][(bits >> i) & 1] for i in range(r)]
        out.append(HalfSignature(vals))
    return out


def check_lift(heps: HalfSignature, eps: Signature):
    if heps.square() != eps:
        raise LiftMismatch("half-signature does not square to the signature")
