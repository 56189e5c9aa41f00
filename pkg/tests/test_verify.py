import copy

import pytest

from isom4.cache import ResultCache
from isom4.errors import InvalidInputError
from isom4.verify import (
    REPORT_VERSION,
    STATUSES,
    CheckRecord,
    VerifyConfig,
    _check_extent_scan,
    exit_code,
    verify_all,
)

EXPECTED_NON_PASS = {
    "h2-octahedral-discrepancy": "DISCREPANCY",
    "extension-klein-exponent": "DISCREPANCY",
    "extension-dicyclic-m4": "DISCREPANCY",
    "embed-two-group-unsupported": "UNSUPPORTED",
}


def small_config(**overrides):
    base = dict(scan_max=80, batch_count=50,
                optimizer_spot_checks=1, optimizer_restarts=4)
    base.update(overrides)
    return VerifyConfig(**base)


@pytest.fixture(scope="module")
def report_and_rerun(tmp_path_factory):
    cache = ResultCache(tmp_path_factory.mktemp("verify-cache"))
    cold = verify_all(small_config(cache=cache))
    warm = verify_all(small_config(cache=cache))
    return cold, warm


def test_report_schema(report_and_rerun):
    report, _ = report_and_rerun
    assert set(report) == {"version", "seed", "checks", "legend"}
    assert report["version"] == REPORT_VERSION
    assert report["seed"] == 0
    for check in report["checks"]:
        assert set(check) == {"id", "status", "expected", "actual", "runtime_ms"}
        assert check["status"] in STATUSES
        assert check["expected"]
        assert check["actual"]
        assert isinstance(check["runtime_ms"], int)


def test_at_least_25_distinct_checks(report_and_rerun):
    report, _ = report_and_rerun
    ids = [c["id"] for c in report["checks"]]
    assert len(ids) >= 25
    assert len(set(ids)) == len(ids)


def test_legend_covers_every_check(report_and_rerun):
    report, _ = report_and_rerun
    ids = {c["id"] for c in report["checks"]}
    assert set(report["legend"]) == ids
    assert all(isinstance(v, str) and v for v in report["legend"].values())


def test_expected_statuses(report_and_rerun):
    report, _ = report_and_rerun
    for check in report["checks"]:
        want = EXPECTED_NON_PASS.get(check["id"], "PASS")
        assert check["status"] == want, (check["id"], check["actual"])


def test_exit_code_zero_without_failures(report_and_rerun):
    report, _ = report_and_rerun
    assert exit_code(report) == 0
    broken = copy.deepcopy(report)
    broken["checks"][0]["status"] = "FAIL"
    assert exit_code(broken) == 1


def test_warm_rerun_identical_modulo_runtime(report_and_rerun):
    cold, warm = report_and_rerun

    def strip(rep):
        out = copy.deepcopy(rep)
        for check in out["checks"]:
            check.pop("runtime_ms")
        return out

    assert strip(cold) == strip(warm)


def test_scan_check_fails_below_sharp_threshold():
    status, _, actual = _check_extent_scan(small_config(threshold_n=60))
    assert status == "FAIL"
    assert "60" in actual


def test_check_record_validation():
    with pytest.raises(InvalidInputError):
        CheckRecord("x", "MAYBE", "a", "b", 0)
    with pytest.raises(InvalidInputError):
        CheckRecord("x", "PASS", "a", "b", -1)


def test_config_validation():
    with pytest.raises(InvalidInputError):
        VerifyConfig(threshold_n=2)
    with pytest.raises(InvalidInputError):
        VerifyConfig(scan_max=50)  # below the default threshold of 61
    with pytest.raises(InvalidInputError):
        VerifyConfig(q=1)
    with pytest.raises(InvalidInputError):
        VerifyConfig(batch_count=0)
    with pytest.raises(InvalidInputError):
        VerifyConfig(seed=-1)
    with pytest.raises(InvalidInputError):
        VerifyConfig(optimizer_restarts=0)
