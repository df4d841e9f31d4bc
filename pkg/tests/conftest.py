import os

from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

# acceptance criterion id -> outcome, filled by the acceptance tests' fixture
ACCEPTANCE: dict[str, list[str]] = {}


def pytest_runtest_logreport(report):
    crit = dict(report.user_properties).get("criterion")
    if crit is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        ACCEPTANCE.setdefault(crit, []).append(report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for crit in sorted(ACCEPTANCE, key=lambda c: int(c.split()[0])):
        outcomes = ACCEPTANCE[crit]
        status = "PASS" if all(o == "passed" for o in outcomes) else "FAIL"
        tr.write_line(f"{status}  criterion {crit}  ({len(outcomes)} checks)")
