import pytest

from vlc_preeq import DEFAULT_LED, LinkConfig, derive_led_model


@pytest.fixture
def cfg():
    return LinkConfig()


@pytest.fixture
def led():
    return derive_led_model(DEFAULT_LED, 50.0)


def pytest_terminal_summary(terminalreporter):
    lines = []
    for key in ("passed", "failed"):
        for rep in terminalreporter.stats.get(key, []):
            if rep.when == "call":
                lines += [v for k, v in rep.user_properties if k == "acceptance"]
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
