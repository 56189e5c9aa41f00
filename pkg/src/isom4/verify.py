"""End-to-end verification suite behind the command line.

Every check produces one record with a stable id, a verdict, and
printable expected/actual values.  DISCREPANCY marks the documented
places where the computation contradicts the advertised value without
failing the run; UNSUPPORTED marks inputs that are out of scope by
design.  For a fixed seed the report is deterministic modulo the
runtime fields.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from .cache import ResultCache
from .claims import ClassificationQuery, classify
from .cohomology import (
    classify_central_extensions,
    cohomology_record,
    group_digest,
    second_cohomology,
    verify_extension_isomorphism,
)
from .embeddings import embed_into_so5, is_faithful_rep
from .errors import InvalidInputError, UnsupportedCaseError
from .fixedpoints import (
    batch_lefschetz_cp2,
    batch_lefschetz_s4,
    involution_catalog,
)
from .groups import (
    abelian,
    alternating,
    binary_dihedral,
    binary_icosahedral,
    binary_octahedral,
    binary_tetrahedral,
    build_metacyclic,
    central_product,
    cyclic,
    dihedral,
    direct_product,
    is_isomorphic,
    klein_by_cyclic3,
    matches_family,
    max_cyclic_normal_index,
    order_gl,
    q8_by_cyclic3,
    quaternion_group,
    symmetric,
)
from .sphere import (
    ExtentConfig,
    LensParams,
    canonicalize_lens,
    extent_lower_bound,
    extent_upper_bound,
    isolated_fixed_point_budget,
    scan_extent_threshold,
)

__all__ = [
    "REPORT_VERSION",
    "CheckRecord",
    "VerifyConfig",
    "exit_code",
    "verify_all",
]

REPORT_VERSION = 1
STATUSES = ("PASS", "FAIL", "DISCREPANCY", "UNSUPPORTED")

_THRESHOLD = math.pi / 3.0


@dataclass(frozen=True)
class CheckRecord:
    id: str
    status: str
    expected: str
    actual: str
    runtime_ms: int

    def __post_init__(self):
        if self.status not in STATUSES:
            raise InvalidInputError(f"unknown check status {self.status!r}")
        if self.runtime_ms < 0:
            raise InvalidInputError("runtime must be nonnegative")

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "status": self.status,
            "expected": self.expected,
            "actual": self.actual,
            "runtime_ms": self.runtime_ms,
        }


@dataclass(frozen=True)
class VerifyConfig:
    """Knobs for the full suite.

    ``threshold_n`` is the first deck order the scan must certify; the
    default 61 is the sharp value, and lowering it to 60 makes the scan
    fail on the 36 canonical quotients there.  ``cache`` short-circuits
    the cohomology and scan recomputation when set."""

    seed: int = 0
    threshold_n: int = 61
    scan_max: int = 300
    q: int = 5
    batch_count: int = 1000
    optimizer_spot_checks: int = 3
    optimizer_restarts: int = 32
    cache: ResultCache | None = None

    def __post_init__(self):
        if not 0 <= int(self.seed) < 2**64:
            raise InvalidInputError("seed must fit in 64 unsigned bits")
        if self.threshold_n < 3:
            raise InvalidInputError("threshold_n must be at least 3")
        if self.scan_max < self.threshold_n:
            raise InvalidInputError("scan_max must be at least threshold_n")
        if self.q < 2:
            raise InvalidInputError("q must be at least 2")
        if self.batch_count < 1:
            raise InvalidInputError("batch_count must be positive")
        if self.optimizer_spot_checks < 0 or self.optimizer_restarts < 1:
            raise InvalidInputError("optimizer knobs must be positive")


def _fmt(value: float) -> str:
    return f"{value:.12g}"


def _cached(cfg: VerifyConfig, key: str, compute):
    if cfg.cache is None:
        return compute()
    value, _ = cfg.cache.get_or_compute(key, compute)
    return value


# ---------------------------------------------------------------- sphere

def _check_extent_sharp_low(cfg):
    value = extent_upper_bound(LensParams(60, 1, 1), cfg.q)
    ok = value >= _THRESHOLD
    return ("PASS" if ok else "FAIL",
            f"upper bound at deck order 60 >= pi/3 = {_fmt(_THRESHOLD)}",
            _fmt(value))


def _check_extent_sharp_high(cfg):
    value = extent_upper_bound(LensParams(61, 1, 1), cfg.q)
    ok = value < _THRESHOLD
    return ("PASS" if ok else "FAIL",
            f"upper bound at deck order 61 < pi/3 = {_fmt(_THRESHOLD)}",
            _fmt(value))


def _check_extent_scan(cfg):
    key = f"scan-n{cfg.threshold_n}-{cfg.scan_max}-q{cfg.q}"

    def compute():
        bad = scan_extent_threshold(cfg.threshold_n, cfg.scan_max, cfg.q,
                                    _THRESHOLD)
        summary = {"violations": len(bad)}
        if bad:
            worst = max(bad, key=lambda row: row.upper_bound)
            summary["first"] = (f"(n,k,l)=({worst.n},{worst.k},{worst.l}) "
                                f"bound {_fmt(worst.upper_bound)}")
        return summary

    summary = _cached(cfg, key, compute)
    count = summary["violations"]
    expected = (f"0 quotients with bound >= pi/3 for deck order in "
                f"[{cfg.threshold_n}, {cfg.scan_max}]")
    if count == 0:
        return "PASS", expected, "0 violations"
    return "FAIL", expected, f"{count} violations, e.g. {summary['first']}"


def _check_budget(cfg):
    bound = extent_upper_bound(LensParams(61, 1, 1), cfg.q)
    budget = isolated_fixed_point_budget(bound)
    ok = budget["contradiction"]
    return ("PASS" if ok else "FAIL",
            "six isolated fixed points need total angle > 20*pi, yet "
            "60 angles of at most the extent bound cannot exceed it",
            f"60 * {_fmt(bound)} = {_fmt(budget['six_point_budget'])} vs "
            f"20*pi = {_fmt(20 * math.pi)}; contradiction={ok}")


def _check_optimizer_consistency(cfg):
    rng = np.random.default_rng(cfg.seed)
    worst_gap = -math.inf
    cases = []
    for _ in range(cfg.optimizer_spot_checks):
        n = int(rng.integers(3, 201))
        while True:
            k = int(rng.integers(1, n))
            l = int(rng.integers(1, n))
            if math.gcd(k, n) == 1 and math.gcd(l, n) == 1:
                break
        params = canonicalize_lens(n, k, l)
        ecfg = ExtentConfig(q=cfg.q, restarts=cfg.optimizer_restarts,
                            seed=int(rng.integers(2**63)))
        report = extent_lower_bound(params, ecfg)
        gap = report.lower_bound - report.upper_bound
        worst_gap = max(worst_gap, gap)
        cases.append(f"({params.n},{params.k},{params.l})")
    ok = worst_gap <= 1e-9
    return ("PASS" if ok else "FAIL",
            "optimized spread never exceeds the closed-form bound "
            "(tolerance 1e-9)",
            f"worst lower-upper gap {_fmt(worst_gap)} over {', '.join(cases)}")


def _check_sphere_diameter(cfg):
    report = extent_lower_bound(LensParams(1, 1, 1),
                                ExtentConfig(q=2, seed=cfg.seed))
    ok = report.lower_bound >= math.pi - 1e-3
    return ("PASS" if ok else "FAIL",
            "2-point extent of the round 3-sphere reaches pi within 1e-3",
            _fmt(report.lower_bound))


# ------------------------------------------------------------ cohomology

def _factors(group, m, cfg, name):
    key = f"h2-{name}-{group_digest(group)}-m{m}"
    payload = _cached(cfg, key, lambda: cohomology_record(group, m))
    return tuple(payload["invariant_factors"])


def _table_check(cfg, rows):
    # rows: (label, group, m, expected invariant factors)
    bad = []
    for label, group, m, want in rows:
        got = _factors(group, m, cfg, label)
        if got != want:
            bad.append(f"{label} m={m}: got {got}, want {want}")
    expected = "; ".join(f"{label} m={m} -> {want}" for label, _, m, want in rows)
    if not bad:
        return "PASS", expected, "all entries match"
    return "FAIL", expected, "; ".join(bad)


def _check_h2_tetrahedral(cfg):
    a4 = alternating(4)
    rows = []
    for m in (2, 3, 4, 5, 6, 12):
        d = math.gcd(6, m)
        rows.append(("A4", a4, m, (d,) if d > 1 else ()))
    return _table_check(cfg, rows)


def _check_h2_icosahedral(cfg):
    a5 = alternating(5)
    rows = []
    for m in (2, 3, 4, 6):
        d = math.gcd(2, m)
        rows.append(("A5", a5, m, (d,) if d > 1 else ()))
    return _table_check(cfg, rows)


def _check_h2_dihedral_odd(cfg):
    rows = [(f"D{n}", dihedral(n), m, ())
            for n in (6, 10) for m in (3, 5)]
    return _table_check(cfg, rows)


def _check_h2_dihedral_even(cfg):
    rows = [(f"D{n}", dihedral(n), m, (2,))
            for n in (6, 10) for m in (2, 4, 6)]
    return _table_check(cfg, rows)


def _check_h2_dihedral_2group(cfg):
    rows = [(f"D{n}", dihedral(n), m, (2, 2, 2))
            for n in (8, 12) for m in (2, 4)]
    return _table_check(cfg, rows)


def _check_h2_octahedral(cfg):
    s4 = symmetric(4)
    bad = []
    for m in (2, 3, 4, 6):
        got = _factors(s4, m, cfg, "S4")
        want = (2, 2) if m % 2 == 0 else ()
        if got != want:
            bad.append(f"m={m}: got {got}, want {want}")
    if bad:
        return ("FAIL",
                "octahedral table: trivial for odd m, rank-2 for even m",
                "; ".join(bad))
    return ("DISCREPANCY",
            "advertised value for even m is a single Z_2",
            "computed Z_2 x Z_2 for even m, confirmed by the universal "
            "coefficient splitting Hom(Z_2, Z_m) + Ext(Z_2, Z_m); odd m "
            "trivial as advertised")


def _check_h2_cyclic_rule(cfg):
    rng = np.random.default_rng(cfg.seed + 1)
    bad = []
    pairs = []
    for _ in range(6):
        n = int(rng.integers(2, 41))
        m = int(rng.integers(2, 33))
        pairs.append((n, m))
        d = math.gcd(n, m)
        want = (d,) if d > 1 else ()
        got = second_cohomology(cyclic(n), m).invariant_factors
        if tuple(got) != want:
            bad.append(f"(n,m)=({n},{m}): got {tuple(got)}, want {want}")
    expected = "H^2 of a cyclic group Z_n with Z_m coefficients is Z_gcd(n,m)"
    if not bad:
        return "PASS", expected, f"verified on {pairs}"
    return "FAIL", expected, "; ".join(bad)


# ------------------------------------------------------------ extensions

def _check_extensions_icosahedral(cfg):
    a5 = alternating(5)
    classes = classify_central_extensions(a5, 2)
    split = direct_product(cyclic(2), a5)
    names = []
    found_split = found_binary = False
    for cls in classes:
        if is_isomorphic(cls.group, split):
            found_split = True
            names.append("Z2 x A5")
        elif is_isomorphic(cls.group, binary_icosahedral()):
            found_binary = True
            names.append("binary icosahedral")
        else:
            names.append(f"unrecognized order {cls.group.size}")
    ok = len(classes) == 2 and found_split and found_binary
    return ("PASS" if ok else "FAIL",
            "exactly two isomorphism types: the product Z2 x A5 and the "
            "binary icosahedral double cover",
            f"{len(classes)} types: {', '.join(names)}")


def _check_extensions_octahedral(cfg):
    s4 = symmetric(4)
    classes = classify_central_extensions(s4, 2)
    split = direct_product(cyclic(2), s4)
    found_split = any(is_isomorphic(c.group, split) for c in classes)
    found_binary = any(is_isomorphic(c.group, binary_octahedral())
                       for c in classes)
    total = sum(c.class_count for c in classes)
    ok = found_split and found_binary and total == 4
    return ("PASS" if ok else "FAIL",
            "the binary octahedral double cover and the split product both "
            "occur among the 4 cohomology classes",
            f"{total} classes in {len(classes)} isomorphism types; "
            f"split={found_split}, binary={found_binary}")


def _check_extension_binary_covers(cfg):
    cases = [("icosa", 2), ("icosa", 4)]
    bad = []
    for kind, m in cases:
        key = f"ext-double-cover-{kind}-m{m}"
        ok = _cached(cfg, key, lambda k=kind, mm=m: bool(
            verify_extension_isomorphism("polyhedral-double-cover",
                                         kind=k, m=mm)))
        if not ok:
            bad.append(f"{kind} m={m}")
    expected = ("unique nontrivial extension of the icosahedral group by "
                "Z_m is Z_m joined with its binary double cover over the "
                "common central involution, m in {2, 4}")
    if not bad:
        return "PASS", expected, "both central-product models verified"
    return "FAIL", expected, f"mismatch at {', '.join(bad)}"


def _check_extension_klein_exponent(cfg):
    printed = verify_extension_isomorphism("klein-3power", r=1, m_plus=1,
                                           variant="printed")
    corrected = verify_extension_isomorphism("klein-3power", r=1, m_plus=1,
                                             variant="corrected")
    if printed is False and corrected is True:
        return ("DISCREPANCY",
                "advertised 3-power extension of the tetrahedral group "
                "keeps the same cyclic exponent 3^r",
                "realized group needs exponent 3^(r+1): printed model "
                "False, corrected model True at r=1")
    return ("FAIL",
            "printed model False and corrected model True at r=1",
            f"printed={printed}, corrected={corrected}")


def _check_extension_dicyclic_m2(cfg):
    bad = []
    for k in (3, 5):
        key = f"ext-dicyclic-m2-k{k}"
        ok = _cached(cfg, key, lambda kk=k: bool(
            verify_extension_isomorphism("dihedral-central-product",
                                         m=2, k=kk, variant="printed")))
        if not ok:
            bad.append(f"k={k}")
    expected = ("nontrivial extension of the dihedral group of order 2k by "
                "Z_2 is the dicyclic group of order 4k, k in {3, 5}")
    if not bad:
        return "PASS", expected, "both dicyclic models verified"
    return "FAIL", expected, f"mismatch at {', '.join(bad)}"


def _check_extension_dicyclic_m4(cfg):
    printed = verify_extension_isomorphism("dihedral-central-product",
                                           m=4, k=3, variant="printed")
    corrected = verify_extension_isomorphism("dihedral-central-product",
                                             m=4, k=3, variant="corrected")
    if printed is False and corrected is True:
        return ("DISCREPANCY",
                "advertised model at m=4, k=3 is Z_4 joined with the "
                "dicyclic group of order 12 over the central involution",
                "that central product is already the split extension once "
                "4 divides m; the realized group is Z_3 acted on by Z_8 "
                "through inversion (printed False, corrected True)")
    return ("FAIL",
            "printed model False and corrected model True at m=4, k=3",
            f"printed={printed}, corrected={corrected}")


# ------------------------------------------------------------ embeddings

def _embed_ok(group, hint):
    rep = embed_into_so5(group, hint)
    return is_faithful_rep(rep), float(rep.homomorphism_residual())


def _check_embed_abelian(cfg):
    rng = np.random.default_rng(cfg.seed + 2)
    worst = 0.0
    bad = []
    for i in range(10):
        a = int(rng.integers(1, 11))
        b = int(rng.integers(1, 100 // a + 1))
        group = abelian([a, b])
        ok, residual = _embed_ok(group, {"kind": "abelian"})
        worst = max(worst, residual)
        if not ok:
            bad.append(f"Z{a} x Z{b}")
    expected = ("10 sampled abelian groups of rank at most 2 and order at "
                "most 100 embed faithfully in SO(5), residual < 1e-9")
    if not bad:
        return "PASS", expected, f"10/10 faithful, max residual {worst:.2e}"
    return "FAIL", expected, f"not faithful: {', '.join(bad)}"


def _check_embed_central_products(cfg):
    bad = []
    worst = 0.0
    for poly, lift in (("octa", binary_octahedral()),
                       ("icosa", binary_icosahedral())):
        zh = int(np.flatnonzero(lift.element_orders == 2)[0])
        for m in (2, 4):
            group = central_product(cyclic(m), lift, m // 2, zh)
            ok, residual = _embed_ok(group, {"kind": "central-product",
                                             "poly": poly, "m": m})
            worst = max(worst, residual)
            if not ok:
                bad.append(f"{poly} m={m}")
    expected = ("Z_m joined with the binary octahedral/icosahedral group "
                "over the central involution embeds faithfully in SO(5), "
                "m in {2, 4}")
    if not bad:
        return "PASS", expected, f"4/4 faithful, max residual {worst:.2e}"
    return "FAIL", expected, f"not faithful: {', '.join(bad)}"


def _check_embed_klein_family(cfg):
    bad = []
    worst = 0.0
    cases = [(1, 1), (1, 5), (1, 7), (2, 1)]
    for r, m_plus in cases:
        group = direct_product(klein_by_cyclic3(r), cyclic(m_plus))
        ok, residual = _embed_ok(group, {"kind": "klein-3power",
                                         "power": r, "m_plus": m_plus})
        worst = max(worst, residual)
        if not ok:
            bad.append(f"(r,m+)=({r},{m_plus})")
    expected = ("rank-2 elementary 2-group rotations twisted by a 3-power "
                "cycle, times a coprime cyclic factor, embed faithfully in "
                "SO(5) for 3^r * m+ up to 21")
    if not bad:
        return "PASS", expected, f"{len(cases)} cases faithful, max residual {worst:.2e}"
    return "FAIL", expected, f"not faithful: {', '.join(bad)}"


def _check_embed_quaternion_u2(cfg):
    group = q8_by_cyclic3(2)
    ok, residual = _embed_ok(group, {"kind": "u2-mixed",
                                     "r": 1, "s": 1, "m_plus": 1})
    expected = ("the quaternion group extended by a 9-cycle acts unitarily "
                "on C^2; the realified model embeds faithfully in SO(5)")
    if ok:
        return "PASS", expected, f"order {group.size} faithful, residual {residual:.2e}"
    return "FAIL", expected, f"not faithful (residual {residual:.2e})"


def _check_embed_dihedral_mixed(cfg):
    group = binary_dihedral(12)
    ok, residual = _embed_ok(group, {"kind": "dihedral-mixed", "m": 2, "k": 3})
    expected = ("the dicyclic group of order 12 (m=2, k=3 mixed dihedral "
                "case) embeds faithfully in SO(5)")
    if ok:
        return "PASS", expected, f"faithful, residual {residual:.2e}"
    return "FAIL", expected, f"not faithful (residual {residual:.2e})"


def _check_embed_two_group(cfg):
    group = abelian([2, 2, 2])
    try:
        embed_into_so5(group, {"kind": "two-group"})
    except UnsupportedCaseError as exc:
        return ("UNSUPPORTED",
                "2-groups with an index-2 cyclic subgroup have no explicit "
                "recipe and must be refused, not mis-embedded",
                str(exc))
    return ("FAIL",
            "unsupported-case error for the 2-group hint",
            "no error raised")


# ----------------------------------------------------------- fixed points

def _check_fixedpoint_sphere_batch(cfg):
    result = batch_lefschetz_s4(cfg.batch_count, cfg.seed + 3)
    ok = result["all_pass"]
    return ("PASS" if ok else "FAIL",
            f"chi(Fix) = 2 = Lefschetz number for {cfg.batch_count} random "
            "rotations of the 4-sphere",
            f"{result['count'] - len(result['failures'])}/{result['count']} pass")


def _check_fixedpoint_plane_batch(cfg):
    result = batch_lefschetz_cp2(cfg.batch_count, cfg.seed + 4)
    ok = result["all_pass"]
    return ("PASS" if ok else "FAIL",
            f"chi(Fix) = 3 = Lefschetz number for {cfg.batch_count} random "
            "unitary maps of the projective plane",
            f"{result['count'] - len(result['failures'])}/{result['count']} pass")


def _check_involution_catalog(cfg):
    entries = involution_catalog()
    bad = [e["label"] for e in entries
           if e["result"]["eq_pass"] != e["expected_pass"]]
    conj = next(e for e in entries if e["label"] == "cp2-conjugation")
    conj_ok = (conj["data"].fix_euler == 1
               and conj["result"]["derived_self_intersection"] == -1)
    expected = ("chi(Fix) = 2 + [Fix]^2 holds for the conjugation and "
                "holomorphic involutions and rules out the free one; the "
                "conjugation record reads 1 = 2 + (-1)")
    if not bad and conj_ok:
        return "PASS", expected, "3/3 catalog entries as predicted"
    return "FAIL", expected, f"mismatched entries: {bad or 'conjugation record'}"


# ------------------------------------------------------- group structure

def _check_gl_order(cfg):
    value = order_gl(3, 2)
    ok = value == 168
    return ("PASS" if ok else "FAIL",
            "|GL(3, F_2)| = (2^3-1)(2^3-2)(2^3-4) = 168",
            str(value))


def _check_cyclic_index_catalog(cfg):
    catalog = [
        ("Z30", cyclic(30)),
        ("D24", dihedral(24)),
        ("dicyclic24", binary_dihedral(24)),
        ("A4", alternating(4)),
        ("S4", symmetric(4)),
        ("A5", alternating(5)),
        ("binary tetrahedral", binary_tetrahedral()),
        ("binary octahedral", binary_octahedral()),
        ("binary icosahedral", binary_icosahedral()),
        ("metacyclic(7,3,2)", build_metacyclic(7, 3, 2)),
    ]
    indices = {name: max_cyclic_normal_index(g) for name, g in catalog}
    worst = max(indices.values())
    a5 = indices["A5"]
    ok = worst <= 120 and a5 == 60
    listing = ", ".join(f"{name}={idx}" for name, idx in indices.items())
    return ("PASS" if ok else "FAIL",
            "every catalog group has a normal cyclic subgroup of index at "
            "most 120, with the icosahedral group at exactly 60",
            listing)


def _check_family_membership(cfg):
    cases = [
        ("Z15 odd-cyclic", cyclic(15), "odd-cyclic", True),
        ("D24 odd-cyclic", dihedral(24), "odd-cyclic", False),
        ("dicyclic x Z5", direct_product(binary_dihedral(12), cyclic(5)),
         "binary-dihedral-times-odd-cyclic", True),
        ("metacyclic(7,3,2)", build_metacyclic(7, 3, 2),
         "metacyclic-odd-projective", True),
        ("A5 polyhedral", alternating(5), "polyhedral", True),
        ("Q8 polyhedral", quaternion_group(), "polyhedral", False),
        ("Z3 x Z9 rank", abelian([3, 9]), "abelian-rank-le-2", True),
        ("Z2^3 rank", abelian([2, 2, 2]), "abelian-rank-le-2", False),
    ]
    bad = [name for name, g, family, want in cases
           if matches_family(g, family) is not want]
    expected = "structural family tags match hand-checked witnesses"
    if not bad:
        return "PASS", expected, f"{len(cases)}/{len(cases)} witnesses agree"
    return "FAIL", expected, f"mismatches: {', '.join(bad)}"


def _check_classification_lookup(cfg):
    wanted = {
        (1, "odd"): ("odd-order-structure", "odd-nonabelian-projective-plane"),
        (2, "odd"): ("odd-b2-2-cyclic",),
        (0, "odd"): ("odd-b2-0-abelian",),
    }
    bad = []
    for (b2, parity), ids in wanted.items():
        got = {r.id for r in classify(ClassificationQuery(b2=b2, order_parity=parity))}
        missing = [i for i in ids if i not in got]
        if missing:
            bad.append(f"(b2={b2}, {parity}) lacks {missing}")
    expected = ("the decision table returns the structure dichotomy at "
                "b2=1, the cyclic branch at b2=2, and the rank-2 abelian "
                "statement at b2=0 for odd order")
    if not bad:
        return "PASS", expected, "all three lookups contain the required records"
    return "FAIL", expected, "; ".join(bad)


_SUITE = (
    ("extent-sharp-at-60", _check_extent_sharp_low,
     "The closed-form 5-point extent bound on the lens quotient of deck "
     "order 60 with both rotation exponents 1 is at least pi/3."),
    ("extent-sharp-at-61", _check_extent_sharp_high,
     "The closed-form 5-point extent bound on the lens quotient of deck "
     "order 61 with both rotation exponents 1 is strictly below pi/3."),
    ("extent-scan-range", _check_extent_scan,
     "Every canonical lens quotient with deck order in the configured "
     "range has 5-point extent bound strictly below pi/3."),
    ("fixed-point-budget", _check_budget,
     "Six isolated fixed points of an isometric circle-commuting action "
     "would span twenty geodesic triangles whose angle sum exceeds "
     "20*pi, contradicting the extent bound; hence at most five."),
    ("extent-optimizer-consistency", _check_optimizer_consistency,
     "A maximized q-point spread found by local search never exceeds the "
     "closed-form upper bound on the same quotient."),
    ("sphere-diameter-recovery", _check_sphere_diameter,
     "On the round 3-sphere the optimizer recovers the diameter pi as "
     "the 2-point extent."),
    ("h2-tetrahedral-table", _check_h2_tetrahedral,
     "The degree-2 cohomology of the tetrahedral group with Z_m "
     "coefficients is cyclic of order gcd(6, m)."),
    ("h2-icosahedral-table", _check_h2_icosahedral,
     "The degree-2 cohomology of the icosahedral group with Z_m "
     "coefficients is cyclic of order gcd(2, m)."),
    ("h2-dihedral-odd-trivial", _check_h2_dihedral_odd,
     "Dihedral groups of orders 6 and 10 have trivial degree-2 "
     "cohomology with odd cyclic coefficients."),
    ("h2-dihedral-even-z2", _check_h2_dihedral_even,
     "Dihedral groups of orders 6 and 10 have degree-2 cohomology Z_2 "
     "with even cyclic coefficients."),
    ("h2-dihedral-2group-rank3", _check_h2_dihedral_2group,
     "Dihedral groups of orders 8 and 12 have degree-2 cohomology of "
     "rank 3 over Z_2 with even cyclic coefficients."),
    ("h2-octahedral-discrepancy", _check_h2_octahedral,
     "The degree-2 cohomology of the octahedral group with even cyclic "
     "coefficients: advertised as one copy of Z_2, computed as "
     "Z_2 x Z_2 and confirmed by universal coefficients."),
    ("h2-cyclic-rule", _check_h2_cyclic_rule,
     "The degree-2 cohomology of Z_n with Z_m coefficients is cyclic of "
     "order gcd(n, m)."),
    ("extensions-icosahedral-m2", _check_extensions_icosahedral,
     "The central extensions of the icosahedral group by Z_2 are the "
     "split product and the binary icosahedral group, exactly two "
     "isomorphism types."),
    ("extensions-octahedral-m2", _check_extensions_octahedral,
     "The central extensions of the octahedral group by Z_2 comprise "
     "four cohomology classes and include the split product and the "
     "binary octahedral group."),
    ("extension-binary-covers", _check_extension_binary_covers,
     "The unique nontrivial central extension of the icosahedral group "
     "by Z_m (m = 2, 4) is the central product of Z_m with the binary "
     "icosahedral group over the shared involution."),
    ("extension-klein-exponent", _check_extension_klein_exponent,
     "The nontrivial central extension of the tetrahedral group by a "
     "3-power: the advertised model keeps exponent 3^r, the realized "
     "group requires 3^(r+1)."),
    ("extension-dicyclic-m2", _check_extension_dicyclic_m2,
     "The nontrivial central extension of the dihedral group of order "
     "2k by Z_2 is the dicyclic group of order 4k, for odd k."),
    ("extension-dicyclic-m4", _check_extension_dicyclic_m4,
     "The advertised central-product model for the nontrivial extension "
     "of the dihedral group of order 2k by Z_m degenerates once 4 "
     "divides m; the realized group is an odd cycle inverted by a "
     "2-power cycle."),
    ("embed-abelian-sample", _check_embed_abelian,
     "Abelian groups of rank at most 2 act orthogonally on R^5 through "
     "two rotation planes and a fixed axis."),
    ("embed-central-products", _check_embed_central_products,
     "Central products of a cyclic 2-power with a binary polyhedral "
     "group act on R^4 by left/right quaternion multiplication, hence "
     "orthogonally on R^5."),
    ("embed-klein-family", _check_embed_klein_family,
     "The rank-2 elementary 2-group twisted by a 3-power cycle, times a "
     "coprime cyclic factor, acts as rotations on R^3 plus a plane "
     "rotation, hence orthogonally on R^5."),
    ("embed-quaternion-u2", _check_embed_quaternion_u2,
     "The quaternion group extended by a 9-cycle is a unitary subgroup "
     "of U(2); realifying gives a faithful orthogonal action on R^5."),
    ("embed-dihedral-mixed", _check_embed_dihedral_mixed,
     "The dicyclic group of order 12 sits in U(2) as the mixed dihedral "
     "case m=2, k=3; realifying gives a faithful orthogonal action on "
     "R^5."),
    ("embed-two-group-unsupported", _check_embed_two_group,
     "2-groups with an index-2 cyclic subgroup carry no printed matrix "
     "recipe; the embedding front end must refuse them explicitly."),
    ("fixedpoint-sphere-batch", _check_fixedpoint_sphere_batch,
     "A nontrivial rotation of the 4-sphere fixes a point set of Euler "
     "characteristic 2, its Lefschetz number."),
    ("fixedpoint-plane-batch", _check_fixedpoint_plane_batch,
     "A unitary map of the projective plane fixes a point set of Euler "
     "characteristic 3, its Lefschetz number."),
    ("fixedpoint-involution-catalog", _check_involution_catalog,
     "For a locally linear involution with 2-dimensional fixed set F, "
     "chi(F) = 2 + [F]^2; the conjugation involution realizes "
     "1 = 2 + (-1)."),
    ("gl-order-check", _check_gl_order,
     "The integral automorphisms of the rank-3 odd intersection lattice "
     "have order (2^3-1)(2^3-2)(2^3-4) = 168 up to 2-torsion."),
    ("cyclic-normal-index-catalog", _check_cyclic_index_catalog,
     "Each catalog group contains a normal cyclic subgroup of index at "
     "most 120; the icosahedral group realizes exactly 60."),
    ("family-membership-spot-checks", _check_family_membership,
     "The structural family tags recognize hand-checked member and "
     "non-member groups."),
    ("classification-lookup", _check_classification_lookup,
     "The classification decision table returns the expected statement "
     "records on the three reference queries."),
)


def verify_all(config: VerifyConfig | None = None) -> dict:
    """Run the whole suite; returns the JSON-ready report."""
    cfg = config if config is not None else VerifyConfig()
    checks = []
    legend = {}
    seen = set()
    for check_id, fn, anchor in _SUITE:
        if check_id in seen:
            raise InvalidInputError(f"duplicate check id {check_id!r}")
        seen.add(check_id)
        start = time.perf_counter()
        try:
            status, expected, actual = fn(cfg)
        except Exception as exc:  # a crashed check is a failed check
            status, expected, actual = "FAIL", "check completes", repr(exc)
        elapsed = int(round((time.perf_counter() - start) * 1000))
        checks.append(CheckRecord(check_id, status, expected, actual, elapsed))
        legend[check_id] = anchor
    return {
        "version": REPORT_VERSION,
        "seed": cfg.seed,
        "checks": [record.to_json() for record in checks],
        "legend": legend,
    }


def exit_code(report: dict) -> int:
    """0 when nothing failed (discrepancies are documented, not fatal)."""
    return 1 if any(c["status"] == "FAIL" for c in report["checks"]) else 0
