import pytest

from rumkit.generators import GENERATORS, generator

ALL = sorted(GENERATORS)


@pytest.fixture(params=ALL)
def any_framework(request):
    return generator(request.param)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
