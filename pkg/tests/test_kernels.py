import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from helpers import naive_st_cut
from kecss import kernels
from kecss.mincut import Network

BACKENDS = kernels.backends()


@pytest.fixture(params=[name for name, _ in BACKENDS])
def backend(request):
    return dict(BACKENDS)[request.param]


def test_compiled_backend_is_built():
    names = [name for name, _ in BACKENDS]
    assert "python" in names
    assert "cython" in names, "compiled kernels missing; reinstall with Cython available"


def test_pure_python_switch(monkeypatch):
    import importlib
    monkeypatch.setenv("KECSS_PURE_PYTHON", "1")
    mod = importlib.reload(kernels)
    try:
        assert mod.BACKEND == "python"
    finally:
        monkeypatch.delenv("KECSS_PURE_PYTHON")
        importlib.reload(kernels)


def test_path_bottleneck(backend):
    value, reach = backend.max_flow(3, [0, 1], [1, 2], [5, 2], [1, 0, 0], [0, 0, 1])
    assert value == 2
    assert list(reach)[:3] == [1, 1, 0]


def test_multi_terminal(backend):
    # two sources feeding one sink
    value, reach = backend.max_flow(3, [0, 1], [2, 2], [3, 4], [1, 1, 0], [0, 0, 1])
    assert value == 7


@st.composite
def small_network(draw):
    n = draw(st.integers(2, 6))
    arcs = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1), st.integers(1, 6)),
                         max_size=12))
    arcs = [(u, v, c) for u, v, c in arcs if u != v]
    s = draw(st.integers(0, n - 1))
    t = draw(st.integers(0, n - 1).filter(lambda t: t != s))
    return n, arcs, s, t


@settings(max_examples=200, deadline=None)
@given(small_network())
def test_max_flow_equals_min_cut(data):
    n, arcs, s, t = data
    want = naive_st_cut(range(n), arcs, {s}, {t})
    for _, mod in BACKENDS:
        tails = [u for u, _, _ in arcs]
        heads = [v for _, v, _ in arcs]
        caps = [c for _, _, c in arcs]
        src = [int(i == s) for i in range(n)]
        snk = [int(i == t) for i in range(n)]
        value, reach = mod.max_flow(n, tails, heads, caps, src, snk)
        assert value == want
        side = {i for i in range(n) if reach[i]}
        assert s in side and t not in side
        assert sum(c for u, v, c in arcs if (u in side) != (v in side)) == want


@settings(max_examples=100, deadline=None)
@given(small_network())
def test_minimal_side_is_contained_in_every_min_cut(data):
    n, arcs, s, t = data
    net = Network(range(n), [(u, v, Fraction(c)) for u, v, c in arcs])
    value, side = net.flow([s], [t])
    from helpers import all_sides
    for other in all_sides(range(n)):
        if s in other and t not in other and net.capacity(other) == value:
            assert side <= other


def test_backends_pivot_identically():
    rng = random.Random(3)
    for _ in range(50):
        rows = [[rng.randint(-5, 5) for _ in range(6)] for _ in range(4)]
        r = rng.randrange(4)
        c = rng.randrange(5)
        if rows[r][c] == 0:
            rows[r][c] = 3
        outs = []
        for _, mod in BACKENDS:
            copy_rows = [list(x) for x in rows]
            d = mod.pivot(copy_rows, r, c, 1)
            outs.append((d, copy_rows))
        assert all(o == outs[0] for o in outs)
        d, after = outs[0]
        assert d > 0
        # the pivot column becomes d times a unit vector
        assert [after[i][c] for i in range(4)] == [d if i == r else 0 for i in range(4)]


def test_large_capacities_fall_back_to_python():
    value, _ = kernels.max_flow(2, [0], [1], [1 << 70], [1, 0], [0, 1])
    assert value == 1 << 70
