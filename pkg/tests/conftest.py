import pytest

_acceptance = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    label = dict(report.user_properties).get("acceptance")
    if label is None:
        return
    ok = _acceptance.get(label, True) and report.outcome == "passed"
    _acceptance[label] = ok


@pytest.fixture(autouse=True)
def _acceptance_label(request):
    marker = request.node.get_closest_marker("acceptance")
    if marker is not None:
        request.node.user_properties.append(("acceptance", marker.args[0]))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_acceptance):
        status = "PASS" if _acceptance[label] else "FAIL"
        terminalreporter.write_line(f"{status}  {label}")
