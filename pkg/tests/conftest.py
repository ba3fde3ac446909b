import pytest


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(label): end-to-end acceptance criterion, summarised after the run")


def pytest_collection_modifyitems(items):
    for k, item in enumerate(items):
        mark = item.get_closest_marker("acceptance")
        if mark:
            item.user_properties += [("acceptance", mark.args[0]), ("position", k)]


def pytest_terminal_summary(terminalreporter):
    lines = []
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            if getattr(rep, "when", "call") != "call" and outcome != "error":
                continue
            props = dict(getattr(rep, "user_properties", ()))
            if "acceptance" not in props:
                continue
            detail = props.get("detail", "")
            verdict = "PASS" if outcome == "passed" else "FAIL"
            lines.append((props["position"], f"{verdict}  {props['acceptance']}" + (f"  [{detail}]" if detail else "")))
    if lines:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(lines):
            terminalreporter.write_line(line)


@pytest.fixture
def detail(record_property):
    """Attach a one-line measurement to the acceptance summary."""

    def _detail(text: str):
        record_property("detail", text)

    return _detail
