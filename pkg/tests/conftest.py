from __future__ import annotations

import sys
from pathlib import Path

import pytest
from hypothesis import settings

from isomat.graphs import LoopedSimpleGraph, path_graph

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture
def p3():
    return path_graph(3)


@pytest.fixture
def p4():
    return path_graph(4)


@pytest.fixture
def k1():
    return LoopedSimpleGraph.from_edges(1)


@pytest.fixture
def k1_looped():
    return LoopedSimpleGraph.from_edges(1, loops=[0])
