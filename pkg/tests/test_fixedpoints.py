import math

import numpy as np
import pytest

from isom4.errors import InvalidInputError
from isom4.fixedpoints import (
    FixComponent,
    FixedSetDescriptor,
    InvolutionTraceData,
    LinearSphereAction,
    batch_lefschetz_cp2,
    batch_lefschetz_s4,
    fixed_set_cp2,
    fixed_set_s4,
    involution_catalog,
    involution_identity_check,
    lefschetz_check_cp2,
    lefschetz_check_s4,
    random_so5,
    random_u3,
)


def rot2(theta):
    return np.array([[math.cos(theta), -math.sin(theta)],
                     [math.sin(theta), math.cos(theta)]])


def block_diag(*blocks):
    n = sum(b.shape[0] for b in blocks)
    out = np.zeros((n, n))
    at = 0
    for b in blocks:
        out[at:at + b.shape[0], at:at + b.shape[0]] = b
        at += b.shape[0]
    return out


# --- sphere side -------------------------------------------------------------


def test_identity_fixes_whole_sphere():
    fix = fixed_set_s4(np.eye(5))
    assert fix.euler_char == 2
    assert fix.components[0].dimension == 4


def test_two_rotation_blocks_fix_two_points():
    g = block_diag(rot2(0.7), rot2(1.3), np.eye(1))
    fix = fixed_set_s4(g)
    assert [c.dimension for c in fix.components] == [0]
    assert fix.euler_char == 2


def test_single_rotation_block_fixes_2sphere():
    g = block_diag(rot2(0.4), np.eye(3))
    fix = fixed_set_s4(g)
    assert [c.dimension for c in fix.components] == [2]
    assert fix.euler_char == 2


def test_eigenvalue_near_one_still_clusters():
    # a rotation by 1e-13 is below the cluster threshold: treated as
    # the identity rather than a spurious isolated pair
    g = block_diag(rot2(1e-13), np.eye(3))
    assert fixed_set_s4(g).components[0].dimension == 4


def test_lefschetz_check_s4_passes_on_samples():
    rng = np.random.default_rng(5)
    for _ in range(25):
        record = lefschetz_check_s4(random_so5(rng))
        assert record["lefschetz"] == 2
        assert record["pass"]


def test_sphere_rejects_bad_matrices():
    with pytest.raises(InvalidInputError):
        fixed_set_s4(np.eye(4))
    with pytest.raises(InvalidInputError):
        fixed_set_s4(2.0 * np.eye(5))
    reflect = np.diag([-1.0, 1.0, 1.0, 1.0, 1.0])
    with pytest.raises(InvalidInputError):
        fixed_set_s4(reflect)


def test_linear_sphere_action_batches():
    rng = np.random.default_rng(6)
    mats = np.stack([random_so5(rng) for _ in range(3)])
    action = LinearSphereAction(mats)
    assert action.count == 3
    single = LinearSphereAction(np.eye(5))
    assert single.count == 1
    with pytest.raises(ValueError):
        action.matrices[0, 0, 0] = 2.0
    with pytest.raises(InvalidInputError):
        LinearSphereAction(np.eye(4))


# --- projective plane side -----------------------------------------------------


def test_distinct_eigenvalues_fix_three_points():
    u = np.diag(np.exp(2j * np.pi * np.array([0.0, 1.0, 2.0]) / 3.0))
    fix = fixed_set_cp2(u)
    assert len(fix.components) == 3
    assert fix.euler_char == 3


def test_repeated_eigenvalue_fixes_line_and_point():
    fix = fixed_set_cp2(np.diag([1.0, 1.0, -1.0]))
    assert sorted(c.dimension for c in fix.components) == [0, 2]
    assert fix.euler_char == 3


def test_scalar_fixes_whole_plane():
    fix = fixed_set_cp2(1j * np.eye(3))
    assert [c.dimension for c in fix.components] == [4]
    assert fix.euler_char == 3


def test_lefschetz_check_cp2_passes_on_samples():
    rng = np.random.default_rng(9)
    for _ in range(25):
        record = lefschetz_check_cp2(random_u3(rng))
        assert record["lefschetz"] == 3
        assert record["pass"]


def test_cp2_rejects_non_unitary():
    with pytest.raises(InvalidInputError):
        fixed_set_cp2(np.ones((3, 3)))
    with pytest.raises(InvalidInputError):
        fixed_set_cp2(np.eye(2))


# --- batches --------------------------------------------------------------------


def test_batch_s4_small():
    out = batch_lefschetz_s4(50, seed=1)
    assert out == {"count": 50, "failures": [], "all_pass": True}


def test_batch_cp2_small():
    out = batch_lefschetz_cp2(50, seed=1)
    assert out == {"count": 50, "failures": [], "all_pass": True}


def test_batches_deterministic():
    assert batch_lefschetz_s4(10, seed=3) == batch_lefschetz_s4(10, seed=3)


# --- involution identities --------------------------------------------------------


def test_involution_identity_arithmetic():
    data = InvolutionTraceData(trace_h2=-1, signature_g=-1, fix_euler=1)
    result = involution_identity_check(data)
    assert result["eq_pass"]
    assert result["derived_self_intersection"] == -1


def test_involution_data_validation():
    with pytest.raises(InvalidInputError):
        InvolutionTraceData(trace_h2=1, signature_g=-1, fix_euler=1)


def test_involution_catalog_entries():
    entries = involution_catalog()
    by_label = {e["label"]: e for e in entries}
    assert set(by_label) == {"cp2-conjugation", "cp2-holomorphic-split",
                             "free-involution-hypothetical"}
    conj = by_label["cp2-conjugation"]
    # real locus count 1 = 2 + (-1): the fixed surface carries
    # self-intersection -1 through the signature term
    assert conj["data"].fix_euler == 1
    assert conj["result"]["eq_pass"]
    assert conj["result"]["derived_self_intersection"] == -1
    holo = by_label["cp2-holomorphic-split"]
    assert holo["data"].fix_euler == 3
    assert holo["result"]["eq_pass"]
    free = by_label["free-involution-hypothetical"]
    assert not free["result"]["eq_pass"]
    assert not free["expected_pass"]
    for entry in entries:
        assert entry["result"]["eq_pass"] == entry["expected_pass"]


def test_component_dimension_validation():
    with pytest.raises(InvalidInputError):
        FixComponent(3, 0, "bad")
    desc = FixedSetDescriptor((FixComponent(0, 1, "pt"), FixComponent(2, 2, "S^2")))
    assert desc.euler_char == 3
