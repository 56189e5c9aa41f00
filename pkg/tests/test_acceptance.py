"""End-to-end acceptance gates, one test per criterion.

Each test prints exactly one ACCEPTANCE line with its verdict before
asserting, so a `pytest -v -s` run reads as a checklist.  Numeric
tolerances are stated inline next to each assertion.
"""

import math
import time

import numpy as np

from isom4.claims import ClassificationQuery, classify
from isom4.cohomology import (
    classify_central_extensions,
    second_cohomology,
    verify_extension_isomorphism,
)
from isom4.embeddings import embed_into_so5, is_faithful_rep, pu3_metacyclic
from isom4.errors import UnsupportedCaseError
from isom4.fixedpoints import (
    batch_lefschetz_cp2,
    batch_lefschetz_s4,
    involution_catalog,
    lefschetz_check_cp2,
)
from isom4.groups import (
    GroupKind,
    abelian,
    alternating,
    binary_dihedral,
    binary_icosahedral,
    binary_octahedral,
    binary_tetrahedral,
    build_metacyclic,
    build_standard,
    central_product,
    cyclic,
    dihedral,
    direct_product,
    is_isomorphic,
    klein_by_cyclic3,
    max_cyclic_normal_index,
    order_gl,
    q8_by_cyclic3,
    symmetric,
)
from isom4.sphere import (
    ExtentConfig,
    LensParams,
    canonicalize_lens,
    extent_lower_bound,
    extent_upper_bound,
    isolated_fixed_point_budget,
    scan_extent,
    scan_extent_threshold,
)

THRESHOLD = math.pi / 3.0
BOUND_61 = 1.0455854008586938  # high-precision oracle, frozen
BOUND_60 = 1.0472172441694827


def report(num, ok, detail):
    print(f"ACCEPTANCE {num:02d} {'PASS' if ok else 'FAIL'} {detail}")
    assert ok, f"criterion {num}: {detail}"


def test_criterion_01_scan_range():
    start = time.perf_counter()
    violations = scan_extent_threshold(61, 300, 5, THRESHOLD)
    elapsed = time.perf_counter() - start
    below = scan_extent(60, 60, 5, THRESHOLD)
    ok = (not violations
          and any(not row.passes for row in below)
          and elapsed < 60.0)
    report(1, ok,
           f"0 violations in [61, 300] expected, found {len(violations)}; "
           f"n=60 exceeds pi/3 at {sum(not r.passes for r in below)}/"
           f"{len(below)} quotients; scan took {elapsed:.1f}s (< 60s)")


def test_criterion_02_fixed_point_budget():
    bound = extent_upper_bound(LensParams(61, 1, 1), 5)
    budget = isolated_fixed_point_budget(bound)
    ok = (budget["contradiction"]
          and abs(bound - BOUND_61) < 1e-12
          and round(bound, 4) == 1.0456)
    report(2, ok,
           f"bound {bound:.12f} (oracle {BOUND_61:.12f}, tol 1e-12), "
           f"60 angles give {budget['six_point_budget']:.6f} "
           f"<= 20*pi = {20 * math.pi:.6f}: contradiction="
           f"{budget['contradiction']}")


def test_criterion_03_optimizer_sound():
    rng = np.random.default_rng(0)
    worst_gap = -math.inf
    for i in range(50):
        n = int(rng.integers(3, 201))
        k = int(rng.integers(1, n))
        l = int(rng.integers(1, n))
        if math.gcd(k, n) != 1 or math.gcd(l, n) != 1:
            k = l = 1
        params = canonicalize_lens(n, k, l)
        upper = extent_upper_bound(params, 5)
        lower = extent_lower_bound(
            params, ExtentConfig(q=5, restarts=6, seed=i)).lower_bound
        worst_gap = max(worst_gap, lower - upper)
        assert lower <= upper + 1e-9, (params, lower, upper)
    sphere = extent_lower_bound(LensParams(1, 1, 1), ExtentConfig(q=2, seed=0))
    ok = worst_gap <= 1e-9 and sphere.lower_bound >= math.pi - 1e-3
    report(3, ok,
           f"50 seeded quotients: max(lower - upper) = {worst_gap:.2e} "
           f"(tol 1e-9); 2-point extent of S^3 = {sphere.lower_bound:.6f} "
           f">= pi - 1e-3")


def test_criterion_04_h2_tables():
    failures = []

    def expect(label, group, m, want):
        got = second_cohomology(group, m).invariant_factors
        if got != want:
            failures.append(f"{label} m={m}: got {got}, want {want}")

    for m in (2, 3, 4, 5, 6, 12):
        d = math.gcd(6, m)
        expect("A4", alternating(4), m, (d,) if d > 1 else ())
    for m in (2, 3, 4, 6):
        d = math.gcd(2, m)
        expect("A5", alternating(5), m, (d,) if d > 1 else ())
    for order in (6, 10):
        expect(f"D{order}", dihedral(order), 3, ())
        expect(f"D{order}", dihedral(order), 2, (2,))
    for order in (8, 12):
        expect(f"D{order}", dihedral(order), 2, (2, 2, 2))
    # the octahedral group: computed rank 2 against the advertised
    # single Z_2; recorded as a discrepancy, not a hard failure
    s4_even = second_cohomology(symmetric(4), 2).invariant_factors
    s4_odd = second_cohomology(symmetric(4), 3).invariant_factors
    discrepancy = s4_even == (2, 2) and s4_odd == ()
    ok = not failures and discrepancy
    detail = (f"A4/A5/dihedral tables all match; octahedral m=2 computed "
              f"{s4_even} vs advertised (2,): DISCREPANCY documented")
    if failures:
        detail = "; ".join(failures)
    report(4, ok, detail)


def test_criterion_05_extension_classification():
    icosa = classify_central_extensions(alternating(5), 2)
    split = [c for c in icosa if c.class_orders == (1,)]
    twisted = [c for c in icosa if c.class_orders == (2,)]
    icosa_ok = (
        len(icosa) == 2
        and len(split) == 1
        and len(twisted) == 1
        and is_isomorphic(split[0].group,
                          direct_product(cyclic(2), alternating(5)))
        and is_isomorphic(twisted[0].group,
                          build_standard(GroupKind("binary-icosa")))
    )
    octa = classify_central_extensions(symmetric(4), 2)
    octa_ok = (
        len(octa) == 4
        and any(is_isomorphic(c.group, direct_product(cyclic(2), symmetric(4)))
                for c in octa)
        and any(is_isomorphic(c.group, build_standard(GroupKind("binary-octa")))
                for c in octa)
    )
    ok = icosa_ok and octa_ok
    report(5, ok,
           f"icosahedral: {len(icosa)} types (split + binary cover); "
           f"octahedral: {len(octa)} types including split and binary cover "
           f"(rank-2 coefficient group, so 4 not 2)")


def test_criterion_06_dicyclic_products():
    ok_23 = verify_extension_isomorphism(
        "dihedral-central-product", m=2, k=3, variant="printed")
    ok_25 = verify_extension_isomorphism(
        "dihedral-central-product", m=2, k=5, variant="printed")
    printed_43 = verify_extension_isomorphism(
        "dihedral-central-product", m=4, k=3, variant="printed")
    corrected_43 = verify_extension_isomorphism(
        "dihedral-central-product", m=4, k=3, variant="corrected")
    ok = ok_23 and ok_25 and (not printed_43) and corrected_43
    report(6, ok,
           f"(m,k)=(2,3): printed model holds = {ok_23}; (2,5): {ok_25}; "
           f"(4,3): printed model holds = {printed_43} with corrected "
           f"model = {corrected_43}: DISCREPANCY documented")


def test_criterion_07_projective_unitary_models():
    worst = 0.0
    all_faithful = True
    all_lefschetz = True
    for m, n, r in ((7, 3, 2), (13, 3, 3), (31, 3, 5)):
        rep = pu3_metacyclic(m, n, r)
        worst = max(worst, rep.homomorphism_residual())
        all_faithful = all_faithful and is_faithful_rep(rep)
        for mat in rep.matrices:
            if not lefschetz_check_cp2(mat)["pass"]:
                all_lefschetz = False
    ok = worst < 1e-12 and all_faithful and all_lefschetz
    report(7, ok,
           f"3 metacyclic models: max residual {worst:.2e} (tol 1e-12), "
           f"faithful = {all_faithful}, every element has chi(Fix) = 3 "
           f"on the projective plane = {all_lefschetz}")


def test_criterion_08_so5_embeddings():
    checked = 0
    worst = 0.0

    def embed_ok(group, hint):
        nonlocal checked, worst
        rep = embed_into_so5(group, hint)
        worst = max(worst, rep.homomorphism_residual())
        checked += 1
        return is_faithful_rep(rep) and rep.homomorphism_residual() < 1e-9

    ok = True
    rng = np.random.default_rng(2)
    for _ in range(10):
        a = int(rng.integers(1, 11))
        b = int(rng.integers(1, 100 // a + 1))
        ok = ok and embed_ok(abelian([a, b]), {"kind": "abelian"})
    for poly, lift in (("octa", binary_octahedral()),
                       ("icosa", binary_icosahedral())):
        zh = int(np.flatnonzero(lift.element_orders == 2)[0])
        for m in (2, 4):
            group = central_product(cyclic(m), lift, m // 2, zh)
            ok = ok and embed_ok(group, {"kind": "central-product",
                                         "poly": poly, "m": m})
    for r, m_plus in ((1, 1), (1, 5), (1, 7), (2, 1)):
        group = direct_product(klein_by_cyclic3(r), cyclic(m_plus))
        ok = ok and embed_ok(group, {"kind": "klein-3power",
                                     "power": r, "m_plus": m_plus})
    ok = ok and embed_ok(q8_by_cyclic3(2),
                         {"kind": "u2-mixed", "r": 1, "s": 1, "m_plus": 1})
    ok = ok and embed_ok(binary_dihedral(12),
                         {"kind": "dihedral-mixed", "m": 2, "k": 3})
    try:
        embed_into_so5(abelian([2, 2, 2]), {"kind": "two-group"})
        two_group_refused = False
    except UnsupportedCaseError:
        two_group_refused = True
    ok = ok and two_group_refused
    report(8, ok,
           f"{checked} groups embedded faithfully in SO(5), max residual "
           f"{worst:.2e} (tol 1e-9); 2-group hint raises UNSUPPORTED "
           f"= {two_group_refused}")


def test_criterion_09_lefschetz_batches():
    s4 = batch_lefschetz_s4(1000, seed=3)
    cp2 = batch_lefschetz_cp2(1000, seed=4)
    conj = next(e for e in involution_catalog()
                if e["label"] == "cp2-conjugation")
    conj_ok = (conj["data"].fix_euler == 1
               and conj["result"]["eq_pass"]
               and conj["result"]["derived_self_intersection"] == -1)
    ok = s4["all_pass"] and cp2["all_pass"] and conj_ok
    report(9, ok,
           f"1000/1000 rotations give chi(Fix) = 2; 1000/1000 unitaries "
           f"give chi(Fix) = 3; conjugation involution satisfies "
           f"1 = 2 + (-1) with self-intersection -1")


def test_criterion_10_order_bounds():
    gl_ok = order_gl(3, 2) == 168
    catalog = {
        "Z30": cyclic(30),
        "D24": dihedral(24),
        "dicyclic24": binary_dihedral(24),
        "A4": alternating(4),
        "S4": symmetric(4),
        "A5": alternating(5),
        "binary-tetra": binary_tetrahedral(),
        "binary-octa": binary_octahedral(),
        "binary-icosa": binary_icosahedral(),
        "metacyclic21": build_metacyclic(7, 3, 2),
    }
    indices = {label: max_cyclic_normal_index(g) for label, g in catalog.items()}
    worst = max(indices.values())
    ok = gl_ok and worst <= 120 and indices["A5"] == 60
    report(10, ok,
           f"|GL(3, F_2)| = {order_gl(3, 2)} (expected 168); max cyclic "
           f"normal index over {len(catalog)} groups = {worst} (<= 120), "
           f"icosahedral = {indices['A5']}")


def test_classification_lookups_round_out_the_gate():
    # statement lookups used by the suite resolve and carry their bounds
    records = classify(ClassificationQuery(b2=2, order_parity="odd",
                                           pseudofree=True,
                                           intersection_form="odd"))
    ids = {r.id for r in records}
    assert "odd-b2-2-cyclic" in ids
    assert "odd-form-pseudofree-families" in ids
    by_id = {r.id: r for r in records}
    assert by_id["normal-cyclic-index-120"].bounds == (("cyclic_normal_index", 120),)
