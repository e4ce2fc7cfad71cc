import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from msextract.extract import scan_sources  # noqa: E402
from msextract.synthetic import planted_monolith  # noqa: E402

ACCEPTANCE_RESULTS = []


@pytest.fixture(scope="session")
def planted(tmp_path_factory):
    """The planted monolith: 3 services x 6 classes plus 3 shared utilities."""
    root = tmp_path_factory.mktemp("planted")
    pm = planted_monolith(root / "src")
    truth = pm.write_truth(root / "truth.json")
    return pm, truth


@pytest.fixture(scope="session")
def planted_facts(planted):
    pm, _ = planted
    return scan_sources(pm.root)


@pytest.fixture
def java_tree(tmp_path):
    """Write ``{relative path: source}`` under a fresh directory and return it."""

    def write(files):
        for rel, text in files.items():
            path = tmp_path / rel
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(text, encoding="utf-8")
        return tmp_path

    return write


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, name, ok, detail in sorted(ACCEPTANCE_RESULTS):
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {number}. {name}: {detail}")
