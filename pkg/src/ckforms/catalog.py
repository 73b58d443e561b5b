"""Catalog of classified pairs: the classification tables as versioned,
line-oriented data, with loader, validation, and cross-checking of the
abstract root data against the matrix engine.

Classical rows reference a realization family and get their root data
from the family recipe at instantiation time; exceptional rows carry
explicit root data inline (they have no matrix realization and are
always reported with provenance CATALOG).
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources

from .errors import CatalogParseError, CatalogValidationError, IrrationalSpectrum
from .rootdata import RestrictedRootData
from . import realizations
from . import rootsystems

FORMAT_VERSION = 1

_KNOWN_KEYS = {"g", "h", "family", "params", "constraint", "tables", "star",
               "candidate", "admits", "note", "fixed", "confirm",
               "rootrank", "rootdims", "root"}


@dataclass
class ParamConstraint:
    """A decidable predicate over integer parameters."""

    text: str

    def ok(self, env: dict) -> bool:
        t = self.text.strip()
        m = re.fullmatch(r"\((\w+),(\w+)\)!=\((-?\d+),(-?\d+)\)", t.replace(" ", ""))
        if m:
            a, b = env[m.group(1)], env[m.group(2)]
            return (a, b) != (int(m.group(3)), int(m.group(4)))
        m = re.fullmatch(r"(\w+)\s+(odd|even)", t)
        if m:
            v = env[m.group(1)]
            return v % 2 == (1 if m.group(2) == "odd" else 0)
        m = re.fullmatch(r"(\w+)\s+div\s+(\d+)", t)
        if m:
            return env[m.group(1)] % int(m.group(2)) == 0
        m = re.fullmatch(r"(\w+)\s*(>=|<=|!=|=|>|<)\s*(-?\d+|\w+)", t)
        if m:
            lhs = env[m.group(1)]
            rhs = int(m.group(3)) if re.fullmatch(r"-?\d+", m.group(3)) \
                else env[m.group(3)]
            op = m.group(2)
            return {"<": lhs < rhs, ">": lhs > rhs, "<=": lhs <= rhs,
                    ">=": lhs >= rhs, "=": lhs == rhs, "!=": lhs != rhs}[op]
        raise CatalogValidationError(f"cannot evaluate constraint {self.text!r}")


@dataclass
class CatalogEntry:
    id: str
    g_label: str = ""
    h_label: str = ""
    family: str = ""
    params: tuple[str, ...] = ()
    fixed: dict = field(default_factory=dict)
    constraints: list[ParamConstraint] = field(default_factory=list)
    tables: tuple[str, ...] = ()
    star: tuple[str, ...] = ()
    candidates: list[tuple[str, list[ParamConstraint]]] = field(default_factory=list)
    admits_compact_form: bool | None = None
    confirm: list[ParamConstraint] | None = None
    note: str = ""
    rootdata_inline: RestrictedRootData | None = None

    @property
    def exceptional(self) -> bool:
        return not self.family

    def admissible(self, **params) -> bool:
        env = dict(params)
        for k, v in self.fixed.items():
            if k in env and env[k] != v:
                return False
            env[k] = v
        try:
            return all(c.ok(env) for c in self.constraints)
        except KeyError:
            return False

    def full_params(self, **params) -> dict:
        env = {k: v for k, v in self.fixed.items()}
        env.update(params)
        return env

    def iter_admissible(self, bound: int, limit: int | None = None):
        """Admissible integer parameter assignments with values <= bound."""
        free = [p for p in self.params if p not in self.fixed]
        count = 0
        for combo in itertools.product(range(0, bound + 1), repeat=len(free)):
            env = dict(zip(free, combo))
            env.update(self.fixed)
            if self.admissible(**env):
                yield env
                count += 1
                if limit is not None and count >= limit:
                    return

    def instantiate(self, **params):
        if self.exceptional:
            raise CatalogValidationError(f"{self.id}: exceptional rows have no realization")
        env = self.full_params(**params)
        if not self.admissible(**env):
            raise CatalogValidationError(
                f"{self.id}: parameters {env} violate the row's constraints")
        return realizations.build_pair(self.family, **env)

    def confirm_expected(self, **params) -> bool:
        if self.admits_compact_form:
            return False
        if self.confirm is None:
            return bool(self.tables)
        env = self.full_params(**params)
        return all(c.ok(env) for c in self.confirm)

    def labels(self, **params):
        if self.exceptional or not self.family:
            return self.g_label, self.h_label
        env = self.full_params(**params)
        fam = realizations.FAMILIES[self.family]
        return fam.labels(**env)


# ----------------------------------------------------------------------
# parsing and serialization


def parse_catalog(text: str) -> list[CatalogEntry]:
    lines = text.splitlines()
    entries: list[CatalogEntry] = []
    i = 0
    version_seen = False
    cur: dict | None = None
    roots: list | None = None
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        toks = line.split()
        key = toks[0]
        if key == "catalog-format":
            if len(toks) != 2 or not toks[1].isdigit():
                raise CatalogParseError("bad catalog-format line", lineno)
            if int(toks[1]) != FORMAT_VERSION:
                raise CatalogParseError(
                    f"unsupported catalog format {toks[1]}", lineno)
            version_seen = True
            continue
        if not version_seen:
            raise CatalogParseError("missing catalog-format header", lineno)
        if key == "entry":
            if cur is not None:
                raise CatalogParseError("nested entry", lineno)
            if len(toks) != 2:
                raise CatalogParseError("entry needs exactly one id", lineno)
            cur = {"id": toks[1], "constraint": [], "candidate": [],
                   "root": [], "fixed": {}, "confirm": None}
            continue
        if key == "end":
            if cur is None:
                raise CatalogParseError("end without entry", lineno)
            entries.append(_finish_entry(cur, lineno))
            cur = None
            continue
        if cur is None:
            raise CatalogParseError(f"directive outside entry: {key}", lineno)
        if key not in _KNOWN_KEYS:
            raise CatalogParseError(f"unknown field {key!r}", lineno)
        rest = line.strip()[len(key):].strip()
        if key == "constraint":
            cur["constraint"].append(ParamConstraint(rest))
        elif key == "confirm":
            cur.setdefault("confirm", None)
            if cur["confirm"] is None:
                cur["confirm"] = []
            if rest != "always":
                cur["confirm"].append(ParamConstraint(rest))
        elif key == "candidate":
            parts = rest.split(" if ", 1)
            guards = [ParamConstraint(p.strip())
                      for p in parts[1].split(";")] if len(parts) == 2 else []
            cur["candidate"].append((parts[0].strip(), guards))
        elif key == "fixed":
            name, val = rest.split(None, 1)
            cur["fixed"][name] = int(val) if re.fullmatch(r"-?\d+", val.strip()) \
                else val.strip()
        elif key == "root":
            cur["root"].append((rest, lineno))
        elif key in ("params", "tables", "star"):
            cur[key] = tuple(rest.split())
        elif key == "admits":
            if rest not in ("yes", "no"):
                raise CatalogParseError("admits must be yes or no", lineno)
            cur["admits"] = rest == "yes"
        elif key in ("rootrank", "rootdims"):
            cur[key] = tuple(int(x) for x in rest.split())
        else:
            cur[key] = rest
    if cur is not None:
        raise CatalogParseError("unterminated entry", len(lines))
    ids = [e.id for e in entries]
    if len(set(ids)) != len(ids):
        raise CatalogParseError("duplicate entry ids")
    return entries


def _finish_entry(d: dict, lineno: int) -> CatalogEntry:
    rootdata = None
    if d["root"]:
        if "rootrank" not in d or "rootdims" not in d:
            raise CatalogParseError(
                f"{d['id']}: inline roots need rootrank and rootdims", lineno)
        mult = {}
        for text, ln in d["root"]:
            try:
                coords_s, mp_s, mm_s = text.split()
                vec = tuple(Fraction(x) for x in coords_s.split(","))
                mult[vec] = (int(mp_s), int(mm_s))
            except ValueError as exc:
                raise CatalogParseError(f"bad root line: {text}", ln) from exc
        zkh, zga = d["rootdims"]
        try:
            rootdata = RestrictedRootData(list(mult), mult, zkh, zga)
        except ValueError as exc:
            raise CatalogValidationError(
                f"{d['id']}: inline root data invalid: {exc}") from exc
        if rootdata.rank != d["rootrank"][0]:
            raise CatalogValidationError(
                f"{d['id']}: declared rank {d['rootrank'][0]} but simple "
                f"system has size {rootdata.rank}")
    entry = CatalogEntry(
        id=d["id"], g_label=d.get("g", ""), h_label=d.get("h", ""),
        family=d.get("family", ""), params=tuple(d.get("params", ())),
        fixed=d["fixed"], constraints=d["constraint"],
        tables=tuple(d.get("tables", ())), star=tuple(d.get("star", ())),
        candidates=d["candidate"], admits_compact_form=d.get("admits"),
        confirm=d.get("confirm"), note=d.get("note", ""),
        rootdata_inline=rootdata)
    if entry.exceptional and entry.rootdata_inline is None:
        raise CatalogValidationError(
            f"{entry.id}: entries need a realization family or root data")
    if entry.family and entry.family not in realizations.FAMILIES:
        raise CatalogValidationError(
            f"{entry.id}: unknown realization family {entry.family!r}")
    for name, _ in entry.candidates:
        if name not in ("so_family", "sl_family"):
            raise CatalogValidationError(
                f"{entry.id}: unknown candidate recipe {name!r}")
    return entry


def serialize_catalog(entries: list[CatalogEntry]) -> str:
    out = [f"catalog-format {FORMAT_VERSION}"]
    for e in entries:
        out.append("")
        out.append(f"entry {e.id}")
        if e.g_label:
            out.append(f"  g {e.g_label}")
        if e.h_label:
            out.append(f"  h {e.h_label}")
        if e.family:
            out.append(f"  family {e.family}")
        if e.params:
            out.append(f"  params {' '.join(e.params)}")
        for k, v in e.fixed.items():
            out.append(f"  fixed {k} {v}")
        for c in e.constraints:
            out.append(f"  constraint {c.text}")
        if e.tables:
            out.append(f"  tables {' '.join(e.tables)}")
        if e.star:
            out.append(f"  star {' '.join(e.star)}")
        for name, guards in e.candidates:
            if guards:
                out.append(f"  candidate {name} if "
                           + "; ".join(g.text for g in guards))
            else:
                out.append(f"  candidate {name}")
        if e.admits_compact_form is not None:
            out.append(f"  admits {'yes' if e.admits_compact_form else 'no'}")
        if e.confirm is not None:
            if e.confirm:
                for c in e.confirm:
                    out.append(f"  confirm {c.text}")
            else:
                out.append("  confirm always")
        if e.note:
            out.append(f"  note {e.note}")
        rd = e.rootdata_inline
        if rd is not None:
            out.append(f"  rootrank {rd.rank}")
            out.append(f"  rootdims {rd.dim_z_k_h} {rd.dim_z_g_a}")
            for r in rd.roots:
                mp, mm = rd.mult[r]
                coords = ",".join(str(x) for x in r)
                out.append(f"  root {coords} {mp} {mm}")
        out.append("end")
    return "\n".join(out) + "\n"


def load_catalog(path=None) -> list[CatalogEntry]:
    """Load and validate a catalog file; default is the shipped catalog."""
    if path is None:
        text = resources.files("ckforms").joinpath("data/catalog.txt").read_text()
    else:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    if not text.strip():
        return []
    return parse_catalog(text)


def cross_validate(entry: CatalogEntry, params: dict) -> dict:
    """Instantiate the matrix realization, recompute the root data and
    compare field by field against the recipe. Mismatch is a hard failure;
    an irrational spectrum is downgraded to SKIPPED."""
    if entry.exceptional:
        return {"entry": entry.id, "params": params, "status": "SKIPPED",
                "reason": "no matrix realization (catalog data only)"}
    try:
        pair, recipe_rd = entry.instantiate(**params)
        computed = pair.root_decomposition().abstract()
    except IrrationalSpectrum as exc:
        return {"entry": entry.id, "params": params, "status": "SKIPPED",
                "reason": str(exc)}
    mism = []
    if set(computed.mult) != set(recipe_rd.mult):
        mism.append("root sets differ")
    else:
        for r in sorted(computed.mult):
            if computed.mult[r] != recipe_rd.mult[r]:
                mism.append(f"multiplicity at {tuple(str(x) for x in r)}: "
                            f"computed {computed.mult[r]}, "
                            f"catalog {recipe_rd.mult[r]}")
    if computed.dim_z_k_h != recipe_rd.dim_z_k_h:
        mism.append(f"dim z cap k cap h: computed {computed.dim_z_k_h}, "
                    f"catalog {recipe_rd.dim_z_k_h}")
    if computed.dim_z_g_a != recipe_rd.dim_z_g_a:
        mism.append(f"dim z_g(a): computed {computed.dim_z_g_a}, "
                    f"catalog {recipe_rd.dim_z_g_a}")
    status = "MATCH" if not mism else "MISMATCH"
    return {"entry": entry.id, "params": params, "status": status,
            "mismatches": mism}


# ----------------------------------------------------------------------
# exceptional root data recipes (used to generate the shipped file and to
# verify it in tests)


def _simple_vec(rank, i):
    return tuple(1 if k == i else 0 for k in range(rank))


def cr_equal_rank_data(typ: str, rank: int, sub_simples, dim_k_h: int
                       ) -> RestrictedRootData:
    """Type (complex, real form) rows with rank(k_h) = rank(g): the full
    root system with real multiplicity 2 per root, split by membership in
    the compact subsystem."""
    roots = rootsystems.generate_roots(typ, rank)
    sub = rootsystems.subsystem_closure(typ, rank, sub_simples)
    mult = {}
    for r in roots:
        mult[tuple(Fraction(x) for x in r)] = (2, 0) if r in sub else (0, 2)
    rd = RestrictedRootData(list(mult), mult, rank, 2 * rank)
    n_compact = sum(1 for r in roots if r in sub)
    if n_compact + rank != dim_k_h:
        raise CatalogValidationError(
            f"compact subsystem size {n_compact} + rank {rank} != "
            f"dim k_h = {dim_k_h}")
    return rd


def levi_twist_data(typ: str, rank: int, mult_by_length, levi_simples,
                    dim_z_k_h: int, dim_z_g_a: int) -> RestrictedRootData:
    """Rows whose associated algebra is a hyperbolic centralizer: the split
    restricted system of g with multiplicities (m, 0) on the Levi
    subsystem of the witness and (0, m) outside."""
    roots = rootsystems.generate_roots(typ, rank)
    gram = rootsystems.symmetrized_gram(typ, rank)
    levi = rootsystems.subsystem_closure(typ, rank, levi_simples) \
        if levi_simples else set()

    def length2(r):
        return sum(Fraction(r[i]) * gram[i][j] * r[j]
                   for i in range(rank) for j in range(rank))

    lengths = sorted({length2(r) for r in roots})
    mult = {}
    for r in roots:
        m = mult_by_length[lengths.index(length2(r))]
        v = tuple(Fraction(x) for x in r)
        mult[v] = (m, 0) if r in levi else (0, m)
    return RestrictedRootData(list(mult), mult, dim_z_k_h, dim_z_g_a)


def e6c_e66_data() -> RestrictedRootData:
    """(e6 complex, split real form): restriction to the torus of the
    compact sp(4); a rank-4 system of F4 shape in block coordinates."""
    r = 4
    mult = {}

    def put(vec, m):
        mult[tuple(Fraction(x) for x in vec)] = m

    for i in range(r):
        for s in (1, -1):
            put(_e_scaled(r, i, 2 * s), (2, 0))
    for i in range(r):
        for j in range(i + 1, r):
            for si in (1, -1):
                for sj in (1, -1):
                    v = [0] * r
                    v[i], v[j] = si, sj
                    put(v, (2, 2))
    for signs in itertools.product((1, -1), repeat=4):
        put(list(signs), (0, 2))
    return RestrictedRootData(list(mult), mult, 4, 12)


def _e_scaled(r, i, s):
    v = [0] * r
    v[i] = s
    return v


def exceptional_rootdata() -> dict[str, RestrictedRootData]:
    """Root data for every exceptional row, derived from subsystem
    structure; keys are the entry ids used by the shipped catalog."""
    hr_e6 = rootsystems.highest_root("E", 6)
    hr_e7 = rootsystems.highest_root("E", 7)
    hr_e8 = rootsystems.highest_root("E", 8)
    hr_f4 = rootsystems.highest_root("F", 4)
    hr_g2 = rootsystems.highest_root("G", 2)
    s = _simple_vec
    neg = lambda v: tuple(-x for x in v)

    out = {}
    out["exc.e6C.e6-2"] = cr_equal_rank_data(
        "E", 6, [s(6, 0), s(6, 2), s(6, 3), s(6, 4), s(6, 5), neg(hr_e6)], 38)
    out["exc.e6C.e6-m14"] = cr_equal_rank_data(
        "E", 6, [s(6, i) for i in (1, 2, 3, 4, 5)], 46)
    out["exc.e7C.e7-7"] = cr_equal_rank_data(
        "E", 7, [neg(hr_e7)] + [s(7, i) for i in (0, 2, 3, 4, 5, 6)], 63)
    out["exc.e7C.e7-m5"] = cr_equal_rank_data(
        "E", 7, [s(7, i) for i in (1, 2, 3, 4, 5, 6)] + [neg(hr_e7)], 69)
    out["exc.e7C.e7-m25"] = cr_equal_rank_data(
        "E", 7, [s(7, i) for i in range(6)], 79)
    out["exc.e8C.e8-8"] = cr_equal_rank_data(
        "E", 8, [s(8, i) for i in (1, 2, 3, 4, 5, 6, 7)] + [neg(hr_e8)], 120)
    out["exc.e8C.e8-m24"] = cr_equal_rank_data(
        "E", 8, [s(8, i) for i in range(7)] + [neg(hr_e8)], 136)
    out["exc.f4C.f4-4"] = cr_equal_rank_data(
        "F", 4, [s(4, 1), s(4, 2), s(4, 3), neg(hr_f4)], 24)
    out["exc.f4C.f4-m20"] = cr_equal_rank_data(
        "F", 4, [neg(hr_f4), s(4, 0), s(4, 1), s(4, 2)], 36)
    # G2: compact su(2)+su(2): highest (long) root plus an orthogonal short
    roots_g2 = rootsystems.generate_roots("G", 2)
    gram_g2 = rootsystems.symmetrized_gram("G", 2)

    def ipg(u, v):
        return sum(Fraction(u[i]) * gram_g2[i][j] * v[j]
                   for i in range(2) for j in range(2))

    short = [r for r in roots_g2 if ipg(r, r) == min(ipg(r, r) for r in roots_g2)]
    orth = [r for r in short if ipg(r, hr_g2) == 0]
    out["exc.g2C.g2-2"] = cr_equal_rank_data("G", 2, [hr_g2, orth[0]], 6)
    out["exc.e6C.e6-6"] = e6c_e66_data()
    # split-side rows with hyperbolic associated algebras
    out["exc.e66.sp22"] = levi_twist_data(
        "E", 6, [1], [s(6, i) for i in (1, 2, 3, 4, 5)], 0, 6)
    out["exc.e77.sl4h"] = levi_twist_data(
        "E", 7, [1], [s(7, i) for i in range(6)], 0, 7)
    out["exc.e6m26.f4m20"] = levi_twist_data(
        "A", 2, [8], [s(2, 0)], 28, 30)
    out["exc.e7m25.e6m26"] = levi_twist_data(
        "C", 3, [8, 1], [s(3, 0), s(3, 1)], 28, 31)
    return out
