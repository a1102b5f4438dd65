import random

import pytest
from hypothesis import given, settings, strategies as st

from clusterk0.quiver import (
    CycleError,
    DynkinType,
    Quiver,
    QuiverError,
    adjacency,
    all_orientations,
    build_example_family,
    cartan,
    coxeter,
    dynkin_quiver,
    dynkin_type,
    kbar_hereditary,
    parse_quiver,
    reduce_source_sink,
    reduction_step,
)
from clusterk0.verify import random_acyclic_quiver
from clusterk0.zlinalg import AbelianGroup, IntMatrix

KRONECKER = Quiver(2, ((1, 2), (1, 2)))


@st.composite
def acyclic_quivers(draw, n_max=8, arrows_max=12):
    n = draw(st.integers(1, n_max))
    perm = draw(st.permutations(range(1, n + 1)))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    if not pairs:
        return Quiver(n)
    chosen = draw(st.lists(st.sampled_from(pairs), max_size=arrows_max))
    return Quiver(n, tuple((perm[i], perm[j]) for i, j in chosen))


def _trees(rng, n):
    arrows = []
    for v in range(2, n + 1):
        u = rng.randint(1, v - 1)
        arrows.append((u, v) if rng.random() < 0.5 else (v, u))
    return Quiver(n, tuple(arrows))


# --- parsing --------------------------------------------------------------


def test_parse_examples():
    assert parse_quiver("2\n1 2\n1 2") == KRONECKER
    assert parse_quiver("1\n") == Quiver(1)
    assert parse_quiver("# comment\r\n3  # three vertices\r\n\r\n1 2\r\n2 3 \r\n") == Quiver(3, ((1, 2), (2, 3)))


@pytest.mark.parametrize(
    "text, message",
    [
        ("2\n1 1", "loop"),
        ("", "missing vertex count"),
        ("x\n", "vertex count"),
        ("2\n1 2 3", "expected"),
        ("2\n1 a", "non-integer"),
        ("2\n1 3", "out of range"),
    ],
)
def test_parse_errors(text, message):
    with pytest.raises(QuiverError, match=message):
        parse_quiver(text)


def test_round_trip_text():
    q = build_example_family(1, [2])
    assert parse_quiver(q.to_text()) == q


# --- matrices -------------------------------------------------------------


def test_adjacency_examples():
    assert adjacency(KRONECKER) == IntMatrix.from_rows([[0, 2], [0, 0]])
    assert adjacency(Quiver(2, ((1, 2),))) == IntMatrix.from_rows([[0, 1], [0, 0]])
    assert adjacency(Quiver(3)).is_zero()


def test_cartan_examples():
    assert cartan(Quiver(2, ((1, 2),))) == IntMatrix.from_rows([[1, 1], [0, 1]])
    assert cartan(KRONECKER) == IntMatrix.from_rows([[1, 2], [0, 1]])
    assert cartan(Quiver(1)) == IntMatrix.identity(1)
    with pytest.raises(CycleError):
        cartan(Quiver(2, ((1, 2), (2, 1))))


def test_coxeter_examples():
    assert coxeter(Quiver(1)) == IntMatrix.from_rows([[-1]])
    phi = coxeter(Quiver(2, ((1, 2),)))
    assert phi == IntMatrix.from_rows([[0, 1], [-1, -1]])
    assert phi ** 3 == IntMatrix.identity(2) and phi != IntMatrix.identity(2)


def test_kronecker_coxeter_has_infinite_order():
    phi = coxeter(KRONECKER)
    ident = IntMatrix.identity(2)
    n = phi - ident
    # unipotent with a nonzero nilpotent part: Phi^k = I + kN never returns to I
    assert not n.is_zero() and (n @ n).is_zero()
    assert phi[0, 0] + phi[1, 1] == 2 and phi.det() == 1


@settings(max_examples=150)
@given(acyclic_quivers())
def test_cartan_is_inverse_of_one_minus_b(q):
    c = cartan(q)
    assert c @ (IntMatrix.identity(q.n) - adjacency(q)) == IntMatrix.identity(q.n)
    assert c.det() == 1
    phi = coxeter(q)
    assert abs(phi.det()) == 1


# --- K-groups -------------------------------------------------------------


@pytest.mark.parametrize(
    "name, group",
    [
        ("A2", AbelianGroup()), ("A3", AbelianGroup(1)), ("A4", AbelianGroup()), ("A5", AbelianGroup(1)),
        ("D4", AbelianGroup(2)), ("D5", AbelianGroup(1)), ("D6", AbelianGroup(2)),
        ("E6", AbelianGroup()), ("E7", AbelianGroup(1)), ("E8", AbelianGroup()),
    ],
)
def test_dynkin_groups(name, group):
    assert kbar_hereditary(dynkin_quiver(DynkinType(name[0], int(name[1:])))) == group


def test_kronecker_group():
    assert kbar_hereditary(KRONECKER) == AbelianGroup(0, (2, 2))


@pytest.mark.parametrize("name", ["A4", "D4", "A5"])
def test_group_independent_of_orientation(name):
    t = DynkinType(name[0], int(name[1:]))
    groups = {kbar_hereditary(q) for q in all_orientations(t)}
    assert len(groups) == 1


@settings(max_examples=200)
@given(acyclic_quivers())
def test_adjacency_lemma_and_paired_torsion(q):
    g = kbar_hereditary(q)  # asserts both routes agree
    tors = list(g.torsion)
    assert all(tors.count(d) % 2 == 0 for d in set(tors))


def test_trees_have_free_groups():
    rng = random.Random(7)
    for _ in range(100):
        q = _trees(rng, rng.randint(1, 9))
        assert kbar_hereditary(q).torsion == ()


@settings(max_examples=150)
@given(acyclic_quivers())
def test_reduction_step_preserves_group(q):
    step = reduction_step(q)
    if step is not None:
        assert kbar_hereditary(step[0]) == kbar_hereditary(q)


# --- reduction ------------------------------------------------------------


def test_reduce_a3_linear():
    small, trace = reduce_source_sink(dynkin_quiver(DynkinType("A", 3)))
    assert small.n == 1 and trace == [(1, 2)]


def test_reduce_a2():
    small, trace = reduce_source_sink(Quiver(2, ((1, 2),)))
    assert small.n == 0 and trace == [(1, 2)]
    assert kbar_hereditary(small).is_trivial


def test_reduce_outward_star():
    star = Quiver(4, ((1, 2), (1, 3), (1, 4)))
    small, trace = reduce_source_sink(star)
    assert small == Quiver(2) and len(trace) == 1
    assert kbar_hereditary(small) == kbar_hereditary(dynkin_quiver(DynkinType("D", 4))) == AbelianGroup(2)


def test_reduce_trace_uses_original_labels():
    q = Quiver(5, ((5, 4), (1, 2), (2, 3), (1, 3), (1, 3)))
    small, trace = reduce_source_sink(q)
    assert trace[0] == (5, 4)
    assert small.n == 3


def test_reduce_trees_to_isolated_vertices():
    rng = random.Random(11)
    for _ in range(50):
        q = _trees(rng, rng.randint(1, 9))
        small, _ = reduce_source_sink(q)
        assert small.arrows == ()
        assert kbar_hereditary(q) == AbelianGroup(small.n)


# --- witness family -------------------------------------------------------


@pytest.mark.parametrize(
    "r, m, group",
    [
        (1, [], AbelianGroup(1)),
        (0, [2], AbelianGroup(0, (2, 2))),
        (2, [2, 4], AbelianGroup(2, (2, 2, 4, 4))),
        (1, [3, 3], AbelianGroup(1, (3, 3, 3, 3))),
        (0, [1], AbelianGroup()),
    ],
)
def test_example_family(r, m, group):
    assert kbar_hereditary(build_example_family(r, m)) == group


def test_example_family_validation():
    with pytest.raises(ValueError):
        build_example_family(0, [2, 3])
    with pytest.raises(ValueError):
        build_example_family(-1, [])


# --- Dynkin ---------------------------------------------------------------


def test_dynkin_quiver_conventions():
    assert dynkin_quiver(DynkinType("A", 3)).arrows == ((1, 2), (2, 3))
    assert dynkin_quiver(DynkinType("D", 4)).arrows == ((1, 3), (2, 3), (3, 4))
    e7 = dynkin_quiver(DynkinType("E", 7))
    assert sorted(e7.arrows) == [(1, 2), (2, 3), (3, 4), (3, 7), (4, 5), (5, 6)]


@pytest.mark.parametrize("family, n", [("A", 0), ("D", 3), ("E", 9), ("B", 3)])
def test_invalid_dynkin_types(family, n):
    with pytest.raises(ValueError):
        DynkinType(family, n)


@pytest.mark.parametrize("name", ["A1", "A4", "D4", "D7", "E6", "E7", "E8"])
def test_dynkin_recognition(name):
    t = DynkinType(name[0], int(name[1:]))
    for q in list(all_orientations(t))[:8]:
        assert dynkin_type(q) == t


def test_non_dynkin_recognition():
    assert dynkin_type(KRONECKER) is None
    assert dynkin_type(Quiver(5, ((1, 5), (2, 5), (3, 5), (4, 5)))) is None  # extended D4
    assert dynkin_type(Quiver(3, ((1, 2),))) is None  # disconnected
    assert dynkin_type(Quiver(3, ((1, 2), (2, 3), (1, 3)))) is None  # cycle in the graph


def test_random_generator_is_acyclic():
    rng = random.Random(3)
    assert all(random_acyclic_quiver(rng).is_acyclic() for _ in range(50))
