import pytest

from pisometry.suites import SUITE_IDS, SuiteConfig, run, run_suite


class TestConfig:
    def test_validation(self):
        with pytest.raises(ValueError):
            SuiteConfig(suite="nope")
        with pytest.raises(ValueError):
            SuiteConfig(trials=0)
        with pytest.raises(ValueError):
            SuiteConfig(dim=17)


class TestRunners:
    @pytest.mark.parametrize("name", sorted(SUITE_IDS))
    def test_small_run_passes(self, name):
        result = run_suite(name, SuiteConfig(suite=name, trials=4, dim=3, seed=5))
        assert result.passed, result.failures[:3]

    def test_all_collects_every_suite(self):
        report = run(SuiteConfig(suite="all", trials=2, dim=3, seed=6))
        assert [s.name for s in report.suites] == sorted(SUITE_IDS, key=SUITE_IDS.get)
        assert report.passed

    def test_report_obj_is_deterministic(self):
        cfg = SuiteConfig(suite="cthm", trials=4, dim=4, seed=9)
        assert run(cfg).to_obj() == run(cfg).to_obj()
