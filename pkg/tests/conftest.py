import os

import hypothesis
import numpy as np
import pytest

from modules.graph_core import MixedGraph

np.seterr(all="warn")

hypothesis.settings.register_profile("default", max_examples=30, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=5, deadline=None)
hypothesis.settings.register_profile("acceptance", max_examples=300, deadline=None)
hypothesis.settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "default"))


def ug(labels, *edges):
    return MixedGraph.from_labels(list(labels), [tuple(e) for e in edges])


def cg(labels, lines=(), arrows=()):
    return MixedGraph.from_labels(list(labels), [tuple(e) for e in lines], [tuple(e) for e in arrows])


def cycle(n):
    labels = "abcdefghij"[:n]
    return ug(labels, *[labels[i] + labels[(i + 1) % n] for i in range(n)])


@pytest.fixture
def three_cliques():
    """Chordal: cliques abc, acd, cde."""
    return ug("abcde", "ab", "bc", "ac", "ad", "cd", "ce", "de")


@pytest.fixture
def cycle_triangle():
    """4-cycle a-b-c-d glued to triangle cde along cd."""
    return ug("abcde", "ab", "bc", "cd", "da", "ce", "de")


@pytest.fixture
def cg_example():
    """a -> c -- d <- b."""
    return cg("abcd", lines=["cd"], arrows=["ac", "bd"])


@pytest.fixture
def c4():
    return cycle(4)


@pytest.fixture
def c5():
    return cycle(5)


CYCLE_TRIANGLE_TEXT = """# four-cycle with a triangle on c,d
vertex a
vertex b
vertex c
vertex d
vertex e
edge a -- b
edge b -- c
edge c -- d
edge d -- a
edge c -- e
edge d -- e
"""

CG_TEXT = """vertex a
vertex b
vertex c
vertex d
edge a -> c
edge b -> d
edge c -- d
"""


@pytest.fixture
def cycle_triangle_file(tmp_path):
    path = tmp_path / "cycle_triangle.txt"
    path.write_text(CYCLE_TRIANGLE_TEXT)
    return str(path)


@pytest.fixture
def cg_file(tmp_path):
    path = tmp_path / "cg.txt"
    path.write_text(CG_TEXT)
    return str(path)
