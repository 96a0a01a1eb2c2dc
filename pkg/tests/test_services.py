import json
import math

import numpy as np
import pytest

from teichranders.core.errors import UsageError
from teichranders.core.halfplane import HPoint
from teichranders.core.torus import FoliationVec, ray_profile
from teichranders.services.metric_service import metric_service
from teichranders.services.output_service import output_service
from teichranders.services.space_file_service import space_file_service
from teichranders.services.verification_service import (
    ANCHORS,
    SUITES,
    VerificationService,
    verification_service,
)

I, TWO_I = HPoint(0.0, 1.0), HPoint(0.0, 2.0)


@pytest.fixture(scope="module")
def full_summary(small_sizes):
    return verification_service.run("all", seed=0, sizes=small_sizes)


class TestVerificationService:
    def test_suite_names(self):
        assert verification_service.suite_names() == ("all",) + SUITES

    def test_unknown_suite(self):
        with pytest.raises(UsageError):
            verification_service.run("nope")

    @pytest.mark.parametrize("suite", ["halfplane", "weakmetric", "torus"])
    def test_small_suites_pass(self, suite, small_sizes):
        summary = verification_service.run(suite, seed=0, sizes=small_sizes)
        failed = [check.name for check in summary.checks if not check.passed]
        assert summary.passed, failed
        assert summary.suite == suite
        assert summary.cases == sum(check.cases for check in summary.checks)

    def test_all_suites_pass(self, full_summary):
        failed = [check.name for check in full_summary.checks if not check.passed]
        assert full_summary.passed, failed
        assert full_summary.suite == "all"

    def test_every_anchor_is_checked(self, full_summary):
        covered = {check.anchor for check in full_summary.checks}
        assert set(ANCHORS) <= covered, sorted(set(ANCHORS) - covered)
        assert len(set(ANCHORS)) == len(ANCHORS)

    def test_summary_flags_are_json_booleans(self, full_summary):
        record = json.loads(full_summary.to_json())
        assert record["passed"] is True
        assert all(check["passed"] is True for check in record["checks"])

    def test_same_seed_same_summary(self, small_sizes):
        service = VerificationService(small_sizes)
        first = service.run("halfplane", seed=3).to_json()
        assert service.run("halfplane", seed=3).to_json() == first


class TestOutputService:
    def test_csv_has_header_and_trailer(self):
        text = output_service.render_csv(
            [{"a": 0.1, "b": "x"}], ("a", "b"), trailer=["schema=1"]
        )
        assert text == "a,b\n0.10000000000000001,x\n# schema=1\n"

    def test_ray_csv(self):
        report = ray_profile(I, FoliationVec(0.0, 1.0), FoliationVec(1.0, 0.0), 2.0, 5)
        lines = output_service.render_ray(report, "csv").splitlines()
        assert lines[0] == "t,delta_omega,decay,im"
        assert len(lines) == 1 + 5 + 4
        assert "# verdict=Bounded" in lines
        assert json.loads(output_service.render_ray(report, "json"))["verdict"] == "Bounded"

    def test_format_check(self):
        assert output_service.check_format("csv") == "csv"
        with pytest.raises(UsageError):
            output_service.check_format("xml")

    def test_write(self, tmp_path):
        target = tmp_path / "out.json"
        output_service.write("{}\n", target)
        assert target.read_text() == "{}\n"
        with pytest.raises(UsageError):
            output_service.write("{}\n", tmp_path / "missing" / "out.json")


class TestSpaceFileService:
    def test_loads_a_description(self, tmp_path):
        path = tmp_path / "space.json"
        path.write_text(json.dumps({"grid": {"nx": 8, "ny": 4}, "basis": ["1 + x*y"]}))
        space = space_file_service.load_space(path)
        assert space.k == 1
        assert space.cells == 32
        assert space.shape == (8, 4)

    def test_default_space(self):
        assert space_file_service.load_space(None).k == 2

    def test_rejects_bad_files(self, tmp_path):
        with pytest.raises(UsageError):
            space_file_service.load_description(tmp_path / "missing.json")
        broken = tmp_path / "broken.json"
        broken.write_text("{not json")
        with pytest.raises(UsageError):
            space_file_service.load_description(broken)
        empty = tmp_path / "empty.json"
        empty.write_text(json.dumps({"basis": []}))
        with pytest.raises(UsageError):
            space_file_service.load_description(empty)

    def test_parse_coefficients(self):
        np.testing.assert_array_equal(
            space_file_service.parse_coefficients("1,0.5+0.2i", 2), [1.0, 0.5 + 0.2j]
        )
        np.testing.assert_array_equal(
            space_file_service.parse_coefficients([2.0, "-i"], 2), [2.0, -1j]
        )
        with pytest.raises(UsageError):
            space_file_service.parse_coefficients("1", 2)
        with pytest.raises(UsageError):
            space_file_service.parse_coefficients("1,x", 2)


class TestMetricService:
    def test_distance(self):
        record = metric_service.distance(I, TWO_I, 1.0, FoliationVec(1.0, 0.0))
        assert record.d_teich == pytest.approx(0.5 * math.log(2.0))
        assert record.delta_t == pytest.approx(math.log(2.0))
        assert record.delta_omega == pytest.approx(record.delta_t)
        dumped = record.model_dump(by_alias=True)
        assert dumped["from"] == "0.0+1.0i"
        assert dumped["schema"] == 1

    def test_distance_without_foliation(self):
        record = metric_service.distance(TWO_I, I, 0.0)
        assert record.delta_omega is None
        assert record.delta_t == pytest.approx(record.d_teich)

    def test_geodesic(self):
        record = metric_service.geodesic(I, TWO_I, 5)
        assert record.length == pytest.approx(0.5 * math.log(2.0))
        assert len(record.points) == 5
        assert record.points[-1]["im"] == pytest.approx(2.0)
        assert all(row["norm"] == pytest.approx(1.0) for row in record.points)

    def test_cometric(self, line_space):
        record = metric_service.cometric(line_space, [1.0], [0.5])
        assert record.g_omega == pytest.approx(2.0 / 3.0, rel=1e-9)
        assert record.dual_estimate is None
        with pytest.raises(UsageError):
            metric_service.cometric(line_space, [1.0], [0.5], check_dual=True, samples=0)

    def test_cometric_with_dual_estimate(self, line_space):
        record = metric_service.cometric(
            line_space, [1.0], [0.5], check_dual=True, samples=200
        )
        assert record.rel_err <= 1e-5
