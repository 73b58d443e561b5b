"""The decision procedures: each sufficient condition packaged as a
checker, plus an aggregator running every applicable one.

OBSTRUCTED means some criterion fired; NO_CONCLUSION is the only other
verdict and never asserts that compact quotients exist. Every OBSTRUCTED
report carries enough exact witness data to be replayed from scratch.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (LiftMismatch, NotBasicInput, NotComplexRealForm,
                     RankTooLarge)
from .invariants import check_restriction_diagram
from .linalg import Subspace, kernel_basis
from .matrixlie import (ReductivePairRealization, SymmetricPairRealization,
                        associated_fixed_space, find_hyperbolic_witness,
                        g_halfeps_subalgebra, isotropy_unimodular,
                        rank_of_compact_subalgebra,
                        reductive_isotropy_unimodular, sigma_eps_involution)
from .rootdata import (HalfSignature, Signature, check_lift, dim_k_cap_h,
                       enumerate_family, halfsig_lifts, is_basic,
                       twist_multiplicities)

OBSTRUCTED = "OBSTRUCTED"
NO_CONCLUSION = "NO_CONCLUSION"


@dataclass
class CriterionResult:
    name: str
    fired: bool
    witness: dict = field(default_factory=dict)
    detail: str = ""

    def to_dict(self):
        return {"criterion": self.name, "fired": self.fired,
                "witness": _jsonable(self.witness), "detail": self.detail}


@dataclass
class ObstructionReport:
    pair_id: str
    verdict: str
    criteria: list[CriterionResult] = field(default_factory=list)
    provenance: str = "COMPUTED"
    note: str = ""

    @property
    def criteria_fired(self):
        return [c for c in self.criteria if c.fired]

    def merge(self, other: "ObstructionReport") -> "ObstructionReport":
        crits = self.criteria + other.criteria
        verdict = OBSTRUCTED if any(c.fired for c in crits) else NO_CONCLUSION
        return ObstructionReport(self.pair_id, verdict, crits,
                                 self.provenance, self.note or other.note)

    def to_dict(self):
        return {
            "pair": self.pair_id,
            "verdict": self.verdict,
            "provenance": self.provenance,
            "criteria": [c.to_dict() for c in self.criteria],
            "note": self.note,
        }


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (Signature, HalfSignature)):
        return repr(x)
    return x


def _mk_report(pair_id, results) -> ObstructionReport:
    verdict = OBSTRUCTED if any(r.fired for r in results) else NO_CONCLUSION
    return ObstructionReport(pair_id, verdict, list(results))


# ----------------------------------------------------------------------
# criterion 1: complex algebra with a non-basic real form


def is_complex_real_form_pair(pair: SymmetricPairRealization) -> bool:
    j = getattr(pair, "complex_structure", None)
    if j is None:
        return False
    g = pair.g
    if 2 * pair.h.dim != g.dim:
        return False
    # h + i*h spans g: multiply h-basis matrices by the complex structure
    vecs = [list(v) for v in pair.h.basis]
    for v in pair.h.basis:
        m = g.mat_of(list(v))
        vecs.append(g.coords_of(j @ m))
    return Subspace(g.dim, vecs).dim == g.dim


def check_real_form_signature(pair: SymmetricPairRealization
                              ) -> ObstructionReport:
    """Complex semisimple algebra, real form subalgebra: obstruction iff the
    pair's multiplicity data is not basic. The rank hypothesis of the
    underlying signature criterion holds automatically here (the compact
    part of h contains i*a), so only basicness is tested.
    """
    if not is_complex_real_form_pair(pair):
        raise NotComplexRealForm(
            f"{pair.pair_id}: need a complexified algebra and a real form")
    rd = pair.root_decomposition().abstract()
    bad = [r for r, (mp, mm) in sorted(rd.mult.items())
           if mp < mm and tuple(x / 2 for x in r) not in rd.mult]
    fired = bool(bad)
    witness = {}
    if fired:
        r = bad[0]
        witness = {"non_basic_root": [str(x) for x in r],
                   "m_plus": rd.mult[r][0], "m_minus": rd.mult[r][1]}
    return _mk_report(pair.pair_id, [CriterionResult(
        "real_form_signature", fired, witness,
        "multiplicity data is not basic" if fired else
        "multiplicity data is basic; no conclusion")])


# ----------------------------------------------------------------------
# criterion 2: associated algebra is a hyperbolic centralizer


def check_hyperbolic_centralizer(pair: SymmetricPairRealization,
                                 seed: int = 0, samples: int = 8
                                 ) -> ObstructionReport:
    x0, diag = find_hyperbolic_witness(pair, seed=seed, samples=samples)
    fired = x0 is not None
    witness = {}
    if fired:
        ha = associated_fixed_space(pair)
        witness = {"x0_coords": [str(c) for c in x0],
                   "x0_entries": sorted(
                       (f"{i},{j}", str(v))
                       for (i, j), v in pair.g.mat_of(x0).entries.items()),
                   "centralizer_dim": ha.dim, "seed": seed}
    return _mk_report(pair.pair_id, [CriterionResult(
        "hyperbolic_centralizer", fired, witness,
        "associated algebra is the centralizer of the witness" if fired
        else (diag or ""))])


def replay_hyperbolic(pair: SymmetricPairRealization, witness: dict) -> bool:
    """Re-validate a hyperbolic witness from its stored coordinates."""
    coords = [Fraction(c) for c in witness["x0_coords"]]
    if all(c == 0 for c in coords):
        return False
    x0 = pair.g.mat_of(coords)
    if not pair.p.contains(coords):
        return False
    z = kernel_basis(pair.g.ad_matrix(x0), pair.g.dim)
    return z == associated_fixed_space(pair)


# ----------------------------------------------------------------------
# criterion 3: signature twist with matching compact ranks


def check_signature_rank(basic_pair: SymmetricPairRealization,
                         eps: Signature,
                         heps: HalfSignature | None = None,
                         seed: int = 0, samples: int = 5,
                         lift_rank_bound: int = 8) -> ObstructionReport:
    """For a basic pair and a signature twist that is not basic: obstruction
    for the twisted pair when some half-signature lift preserves the rank
    of the compact part of the twisted subalgebra.

    The report names the twisted target pair, not the basic input.
    """
    rd = basic_pair.root_decomposition().abstract()
    if not is_basic(rd):
        raise NotBasicInput(f"{basic_pair.pair_id}: input pair is not basic")
    if heps is not None:
        check_lift(heps, eps)
    target_id = f"{basic_pair.g.label}/twist{eps!r}"
    twisted = twist_multiplicities(rd, eps)
    if is_basic(twisted):
        return ObstructionReport(target_id, NO_CONCLUSION, [CriterionResult(
            "signature_rank", False, {},
            "twisted pair is basic; criterion does not apply")])
    sig_inv = sigma_eps_involution(basic_pair, eps)
    h_eps = sig_inv.fixed_subspace(+1)
    k_heps = basic_pair.k.intersect(h_eps)
    rank_kh = rank_of_compact_subalgebra(basic_pair.g, k_heps,
                                         seed=seed, samples=samples)
    if heps is not None:
        lifts = [heps]
    else:
        if rd.rank > lift_rank_bound:
            raise RankTooLarge(
                f"rank {rd.rank} exceeds lift enumeration bound {lift_rank_bound}")
        lifts = halfsig_lifts(eps, rd)
    tried = 0
    for lift in lifts:
        gh = g_halfeps_subalgebra(basic_pair, lift)
        inter = k_heps.intersect(gh)
        rank_inter = rank_of_compact_subalgebra(basic_pair.g, inter,
                                                seed=seed, samples=samples)
        tried += 1
        if rank_inter == rank_kh:
            witness = {
                "eps_on_simple": list(eps.values_on_simple),
                "lift_on_simple": [repr(v) for v in lift.values_on_simple],
                "rank_k_cap_h_eps": rank_kh,
                "rank_with_halfsig": rank_inter,
                "dim_h_eps": h_eps.dim,
                "seed": seed,
            }
            return ObstructionReport(target_id, OBSTRUCTED, [CriterionResult(
                "signature_rank", True, witness,
                "twisted pair non-basic and compact ranks agree")])
    return ObstructionReport(target_id, NO_CONCLUSION, [CriterionResult(
        "signature_rank", False, {"lifts_tried": tried},
        "rank condition failed for every tested lift")])


# ----------------------------------------------------------------------
# criterion 4: compact subgroup with a commuting invariant restriction


def check_invariant_restriction(pair: ReductivePairRealization, cand,
                                seed: int = 0, samples: int = 5
                                ) -> ObstructionReport:
    """Conditions: (i) dim c > dim(k cap h); (ii) the shipped torus of the
    maximal compact of h lies in c, is abelian, and has full rank;
    (iii) the restriction diagram commutes exactly. The top-cohomology
    hypothesis is verified as unimodularity of the isotropy action.
    """
    from .errors import CandidateIllFormed
    g = pair.g
    results = []
    dim_c, dim_kh = cand.c_space.dim, pair.k_h.dim
    cond_i = dim_c > dim_kh
    if not g.is_bracket_closed(cand.c_space):
        raise CandidateIllFormed(f"{cand.label}: c is not a subalgebra")
    # (ii) torus containment / abelian / full rank
    t_ok = all(cand.c_space.contains(g.coords_of(t)) for t in cand.t_mats)
    for i in range(len(cand.t_mats)):
        for j in range(i + 1, len(cand.t_mats)):
            if not cand.t_mats[i].bracket(cand.t_mats[j]).is_zero():
                t_ok = False
    t_in_kh = all(pair.k_h.contains(g.coords_of(t)) for t in cand.t_mats)
    rank_kh = rank_of_compact_subalgebra(g, pair.k_h, seed=seed,
                                         samples=samples)
    cond_ii = t_ok and t_in_kh and len(cand.t_mats) == rank_kh
    ok_diag, failures = check_restriction_diagram(
        cand.gP, cand.hP, cand.cP, cand.phi,
        cand.emb_g_to_h, cand.emb_g_to_c, cand.emb_h_to_t, cand.emb_c_to_t)
    unimod = reductive_isotropy_unimodular(g, pair.h)
    fired = cond_i and cond_ii and ok_diag and unimod
    detail = []
    if not cond_i:
        detail.append(f"dim C = {dim_c} not greater than dim K_H = {dim_kh}")
    if not cond_ii:
        detail.append("torus condition failed")
    if not ok_diag:
        detail.append(f"diagram failed on {failures}")
    if not unimod:
        detail.append("isotropy action not unimodular")
    witness = {"candidate": cand.describe(), "dim_c": dim_c,
               "dim_k_h": dim_kh, "rank_k_h": rank_kh,
               "torus_dim": len(cand.t_mats), "seed": seed}
    results.append(CriterionResult(
        "invariant_restriction", fired, witness if fired else {},
        "; ".join(detail) if detail else
        "compact subgroup strictly larger, torus verified, diagram commutes"))
    return _mk_report(pair.pair_id, results)


def check_enlarged(build_enlarged, seed: int = 0, samples: int = 5
                   ) -> ObstructionReport:
    """Re-run the full invariant-restriction check on enlarged data rather
    than trusting the product lemma. `build_enlarged` supplies the
    (pair, candidate) for the enlarged homogeneous space."""
    pair, cand = build_enlarged()
    return check_invariant_restriction(pair, cand, seed=seed, samples=samples)


# ----------------------------------------------------------------------
# the aggregator


def decide(pair, candidates=(), seed: int = 0, samples: int = 5,
           lift_rank_bound: int = 8, family_rank_bound: int = 12
           ) -> ObstructionReport:
    """Run every applicable checker in fixed order and merge the reports.

    Order: real-form signature, hyperbolic centralizer, invariant
    restriction over the supplied candidates, then the signature-rank
    criterion through a computed basic member of the pair's family.
    NO_CONCLUSION never asserts that compact quotients exist.
    """
    results: list[CriterionResult] = []
    pid = pair.pair_id
    if isinstance(pair, SymmetricPairRealization):
        if is_complex_real_form_pair(pair):
            rep = check_real_form_signature(pair)
            results.extend(rep.criteria)
        rep = check_hyperbolic_centralizer(pair, seed=seed)
        results.extend(rep.criteria)
    for cand_fn in candidates:
        rpair, cand = cand_fn()
        rep = check_invariant_restriction(rpair, cand, seed=seed,
                                          samples=samples)
        for c in rep.criteria:
            results.append(c)
    if isinstance(pair, SymmetricPairRealization):
        rd = pair.root_decomposition().abstract()
        if rd.rank <= family_rank_bound and not is_basic(rd):
            found = None
            for sig, twisted in enumerate_family(rd, family_rank_bound):
                if is_basic(twisted):
                    found = sig
                    break
            if found is not None:
                if found.is_trivial():
                    basic_pair = pair
                else:
                    sinv = sigma_eps_involution(pair, found)
                    basic_pair = SymmetricPairRealization(
                        pair.g, sinv, pair.theta, pair.a_mats,
                        pair_id=f"{pair.g.label}/basic-member",
                        h_label="basic member", check=False)
                    basic_pair.complex_structure = getattr(
                        pair, "complex_structure", None)
                try:
                    rep = check_signature_rank(basic_pair, found, None,
                                               seed=seed, samples=samples,
                                               lift_rank_bound=lift_rank_bound)
                    results.extend(rep.criteria)
                except (NotBasicInput, RankTooLarge):
                    pass
    verdict = OBSTRUCTED if any(r.fired for r in results) else NO_CONCLUSION
    return ObstructionReport(pid, verdict, results)
