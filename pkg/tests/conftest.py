import json
import os

import pytest
from hypothesis import settings

settings.register_profile("bernlab", max_examples=40, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "bernlab"))

_ACCEPTANCE_KEY = pytest.StashKey[dict]()


def pytest_configure(config):
    config.stash[_ACCEPTANCE_KEY] = {}


@pytest.fixture
def acceptance(request):
    """Record sub-checks of an acceptance criterion: ``acceptance(n, name, ok, detail)``."""
    log = request.config.stash[_ACCEPTANCE_KEY]

    def record(criterion, name, ok, detail=""):
        log.setdefault(criterion, []).append((name, bool(ok), detail))
        return bool(ok)

    return record


def pytest_terminal_summary(terminalreporter, config):
    log = config.stash.get(_ACCEPTANCE_KEY, {})
    if not log:
        return
    terminalreporter.section("acceptance criteria")
    for crit in sorted(log):
        checks = log[crit]
        bad = [c for c in checks if not c[1]]
        status = "PASS" if not bad else "FAIL"
        shown = bad if bad else checks
        detail = "; ".join(f"{name}: {d}" if d else name for name, _, d in shown)
        terminalreporter.write_line(f"criterion {crit:>2} {status}  {detail}")


@pytest.fixture
def spec_file(tmp_path):
    """Write a function spec to a JSON file and return its path."""

    def write(spec, name="f.json"):
        path = tmp_path / name
        path.write_text(json.dumps(spec))
        return str(path)

    return write
