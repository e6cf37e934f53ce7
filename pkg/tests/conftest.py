import contextlib
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from scharlau.groups import builtin  # noqa: E402
from scharlau.sl2 import build_specials  # noqa: E402
from scharlau.verify import sl2_group  # noqa: E402

ACCEPTANCE_LINES = []


@contextlib.contextmanager
def criterion(label):
    """Record one pass/fail line per acceptance criterion."""
    try:
        yield
    except pytest.skip.Exception as e:
        ACCEPTANCE_LINES.append(f"SKIP  {label}  ({e})")
        raise
    except BaseException as e:
        ACCEPTANCE_LINES.append(f"FAIL  {label}  ({type(e).__name__}: {str(e)[:120]})")
        raise
    ACCEPTANCE_LINES.append(f"PASS  {label}")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def G17():
    return sl2_group(17)


@pytest.fixture(scope="session")
def sp17():
    return build_specials(17)


@pytest.fixture(scope="session")
def G5():
    return sl2_group(5)


@pytest.fixture(scope="session")
def g21():
    return builtin("gpq:7:3")
