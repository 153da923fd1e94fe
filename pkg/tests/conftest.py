import json
import os

import pytest

from coxgrowth.diagram import Diagram, load_diagram
from coxgrowth.diagram import INF

HERE = os.path.dirname(os.path.abspath(__file__))
ROOT = os.path.dirname(HERE)
DIAGRAM_DIR = os.path.join(ROOT, "diagrams")


def diagram_path(name):
    return os.path.join(DIAGRAM_DIR, name)


def star(k):
    return Diagram(["c"] + [f"l{i}" for i in range(1, k + 1)],
                   [("c", f"l{i}", 3) for i in range(1, k + 1)])


@pytest.fixture(scope="session")
def frozen():
    with open(os.path.join(HERE, "data", "frozen.json")) as fh:
        return json.load(fh)


@pytest.fixture(scope="session")
def A2():
    return Diagram(["s1", "s2"], [("s1", "s2", 3)])


@pytest.fixture(scope="session")
def A3():
    return load_diagram(diagram_path("A3.txt"))


@pytest.fixture(scope="session")
def D4():
    return load_diagram(diagram_path("D4.txt"))


@pytest.fixture(scope="session")
def A2aff():
    return load_diagram(diagram_path("A2_affine.txt"))


@pytest.fixture(scope="session")
def K15():
    return star(5)


@pytest.fixture(scope="session")
def W3():
    return Diagram(["s1", "s2", "s3"], [("s1", "s2", INF), ("s1", "s3", INF), ("s2", "s3", INF)])


@pytest.fixture(scope="session")
def D4aff_J():
    return (0, 1, 2, 3, 4)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
