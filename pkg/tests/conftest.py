import random

import pytest
from hypothesis import strategies as st

from observa.generators import named_example, random_colored_graph
from observa.graph import ColoredDigraph


@pytest.fixture
def loop1():
    return named_example("loop1")


@pytest.fixture
def twocyc():
    return named_example("twocyc")


@pytest.fixture
def chain():
    return named_example("chain")


@pytest.fixture
def amb():
    return named_example("amb")


@pytest.fixture
def star2():
    return named_example("star(2)")


@pytest.fixture
def shift():
    return named_example("shift")


def all_colored_graphs(n, m):
    """Every colored digraph on ``n`` nodes and ``m`` colors (all edge subsets)."""
    triples = [(u, v, c) for u in range(n) for v in range(n) for c in range(m)]
    nodes = tuple(str(i) for i in range(n))
    colors = tuple("abcdefgh"[:m])
    for mask in range(1 << len(triples)):
        yield ColoredDigraph(nodes, colors,
                             tuple(t for i, t in enumerate(triples) if mask >> i & 1))


def exhaustive_corpus(max_n=3, m=2):
    for n in range(max_n + 1):
        yield from all_colored_graphs(n, m)


def random_corpus(count, max_n=5, max_m=3, seed=2024):
    """Seeded random graphs: sizes, color counts and densities drawn per instance."""
    rng = random.Random(seed)
    for i in range(count):
        n = rng.randint(1, max_n)
        m = rng.randint(1, max_m)
        p = rng.choice([0.1, 0.15, 0.2, 0.3, 0.4, 0.6])
        yield random_colored_graph(n, m, p, seed * 100_003 + i)


@st.composite
def colored_graphs(draw, max_n=5, max_m=3):
    n = draw(st.integers(0, max_n))
    m = draw(st.integers(1, max_m))
    triples = [(u, v, c) for u in range(n) for v in range(n) for c in range(m)]
    edges = draw(st.lists(st.sampled_from(triples), unique=True, max_size=len(triples))) if triples else []
    return ColoredDigraph.build(n, "abcdefgh"[:m], edges)


_ACCEPTANCE: dict[int, str] = {}


@pytest.fixture
def acceptance():
    """Record a one-line acceptance verdict; printed now and in the run summary."""
    def record(number, title, passed, detail=""):
        line = f"criterion {number} [{'PASS' if passed else 'FAIL'}] {title}: {detail}"
        _ACCEPTANCE[number] = line
        print(line)
    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for number in sorted(_ACCEPTANCE):
            terminalreporter.write_line(_ACCEPTANCE[number])
