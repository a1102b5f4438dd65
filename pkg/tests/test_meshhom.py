import random

import pytest

from clusterk0.meshhom import (
    DObj,
    LambdaForm,
    NotDynkinError,
    ar_triangle_additivity_check,
    coxeter_number,
    dynkin_lambda_table,
    knit,
    lambda_,
    marked_objects,
)
from clusterk0.oracle import brick_representations, hom_dim, positive_roots
from clusterk0.quiver import DynkinType, Quiver, all_orientations, dynkin_quiver

TYPES = ["A1", "A2", "A3", "A4", "A5", "D4", "D5", "D6", "E6", "E7", "E8"]


def dyn(name):
    return DynkinType(name[0], int(name[1:]))


_cache = {}


def ar_of(name):
    if name not in _cache:
        _cache[name] = knit(dynkin_quiver(dyn(name)))
    return _cache[name]


# --- knitting -------------------------------------------------------------


def test_a2_modules():
    ar = ar_of("A2")
    assert sorted(ar.dims) == [(0, 1), (1, 0), (1, 1)]
    assert ar.dims[ar.projective[1]] == (1, 1)
    assert ar.dims[ar.injective[1]] == (1, 0)


@pytest.mark.parametrize("name", TYPES)
def test_module_count_and_tau(name):
    t = dyn(name)
    ar = ar_of(name)
    assert len(ar) == t.positive_roots
    for i in range(len(ar)):
        assert (ar.tau[i] is None) == (i in ar.proj_vertex)
        assert (ar.tau_inv[i] is None) == (i in ar.inj_vertex)
        if ar.tau[i] is not None:
            assert ar.dims[ar.tau[i]] == ar.coxeter_dim.apply(ar.dims[i])
            assert ar.tau_inv[ar.tau[i]] == i


@pytest.mark.parametrize("name", ["A3", "D4", "D5", "E6"])
def test_knitting_finds_positive_roots(name):
    q = dynkin_quiver(dyn(name))
    assert set(knit(q).dims) == set(positive_roots(q, bound=3))


@pytest.mark.parametrize("name", ["A4", "D4", "D5"])
def test_all_orientations_knit(name):
    t = dyn(name)
    for q in all_orientations(t):
        ar = knit(q)
        assert len(ar) == t.positive_roots


def test_non_dynkin_rejected():
    with pytest.raises(NotDynkinError):
        knit(Quiver(2, ((1, 2), (1, 2))))
    with pytest.raises(NotDynkinError):
        knit(Quiver(5, ((1, 5), (2, 5), (3, 5), (4, 5))))


# --- module homs ----------------------------------------------------------


@pytest.mark.parametrize("name", TYPES)
def test_hom_from_projective_and_bricks(name):
    ar = ar_of(name)
    for v, p in ar.projective.items():
        for m in range(len(ar)):
            assert ar.hom_mod(p, m) == ar.dims[m][v - 1]
    for m in range(len(ar)):
        assert ar.hom_mod(m, m) == 1


@pytest.mark.parametrize("name", ["A3", "D5", "E6"])
def test_euler_characteristic(name):
    ar = ar_of(name)
    for m in range(len(ar)):
        for n in range(len(ar)):
            assert ar.hom_mod(m, n) - ar.ext_mod(m, n) == ar.euler_form(ar.dims[m], ar.dims[n])
        assert ar.ext_mod(m, m) == 0  # indecomposables are rigid


def test_a2_small_homs():
    ar = ar_of("A2")
    p1, s1, s2 = ar.module((1, 1)), ar.module((1, 0)), ar.module((0, 1))
    assert ar.hom_mod(p1, s1) == 1
    assert ar.hom_mod(s1, p1) == 0
    assert ar.ext_mod(s1, s2) == 1


@pytest.mark.parametrize("name", ["A2", "A3", "D4"])
def test_hom_matches_representation_oracle(name):
    rng = random.Random(name)
    for q in all_orientations(dyn(name)):
        ar = knit(q)
        reps = brick_representations(q, rng)
        assert set(reps) == set(ar.dims)
        for i, x in enumerate(ar.dims):
            for j, y in enumerate(ar.dims):
                assert hom_dim(reps[x], reps[y]) == ar.hom_mod(i, j)


# --- derived category -----------------------------------------------------


def test_tau_rules():
    ar = ar_of("A3")
    for v, p in ar.projective.items():
        assert ar.tau_d(DObj(p, 0)) == DObj(ar.injective[v], -1)
        assert ar.tau_inv_d(DObj(ar.injective[v], -1)) == DObj(p, 0)
    for m in range(len(ar)):
        if m not in ar.proj_vertex:
            assert ar.tau_d(DObj(m, 3)) == DObj(ar.tau[m], 3)


@pytest.mark.parametrize("name", TYPES)
def test_tau_power_coxeter_number(name):
    ar = ar_of(name)
    m = coxeter_number(dyn(name))
    for i in range(len(ar)):
        assert ar.tau_power(DObj(i, 0), m) == DObj(i, -2)
        assert ar.tau_power(ar.tau_power(DObj(i, 1), 5), -5) == DObj(i, 1)


@pytest.mark.parametrize("name, m", [("A4", 5), ("D6", 10), ("E7", 18), ("A3", 4), ("A5", 6), ("D5", 8), ("E8", 30)])
def test_coxeter_numbers(name, m):
    assert coxeter_number(dyn(name)) == m


def test_hom_derived_shift_rules():
    ar = ar_of("A3")
    for m in range(len(ar)):
        for n in range(len(ar)):
            assert ar.hom_derived(DObj(m, 0), DObj(n, 2)) == 0
            assert ar.hom_derived(DObj(m, 0), DObj(n, -1)) == 0
            assert ar.hom_derived(DObj(m, 4), DObj(n, 5)) == ar.ext_mod(m, n)


# --- cluster category -----------------------------------------------------


@pytest.mark.parametrize("name", ["A2", "A3", "D4", "D5", "E6"])
def test_cluster_hom_window_and_invariance(name):
    ar = ar_of(name)
    objs = ar.cluster_objects()
    assert len(objs) == len(ar) + ar.quiver.n
    for x in objs:
        assert ar.normalize(x) == x
        assert ar.normalize(ar.F(x, 3)) == x
        assert ar.hom_cluster(x, x) >= 1
        for y in objs:
            h = ar.hom_cluster(x, y)
            assert h == ar.hom_cluster(x, y, window=5)
            assert h == ar.hom_cluster(ar.tau_d(x), ar.tau_d(y))
            assert h == ar.hom_cluster(ar.F(x, -2), ar.F(y, 1))


def test_a2_cluster_category_is_a_pentagon():
    # derived AR quiver of 1 -> 2 is the line P2 -> P1 -> S1 -> Sigma P2 -> ...
    # and F moves five steps along it
    ar = ar_of("A2")
    p2, p1, s1 = (DObj(ar.module(d), 0) for d in [(0, 1), (1, 1), (1, 0)])
    line = [p2, p1, s1, DObj(p2.module, 1), DObj(p1.module, 1)]
    assert ar.F(p2) == DObj(s1.module, 1)
    for i, x in enumerate(line):
        assert ar.tau_c(x, -1) == ar.normalize(line[(i + 2) % 5])
        for j, y in enumerate(line):
            assert ar.hom_cluster(x, y) == int((j - i) % 5 in (0, 1))


def test_a2_cluster_hom_simples():
    ar = ar_of("A2")
    s1, s2 = DObj(ar.module((1, 0)), 0), DObj(ar.module((0, 1)), 0)
    assert ar.hom_derived(s1, s2) == 0
    # tau^{-1} S2 = S1 and Ext^1(S1, S1) = 0, so the F-twist adds nothing
    assert ar.hom_cluster(s1, s2) == 0
    # Ext^1 in the cluster category is Hom_C(S1, tau S2) and contains Ext^1(S1, S2)
    assert ar.hom_cluster(s1, ar.tau_d(s2)) == 1


# --- lambda ---------------------------------------------------------------


def test_lambda_q1_is_cluster_hom():
    ar = ar_of("D4")
    objs = ar.cluster_objects()
    for u in objs[:4]:
        for y in objs:
            assert lambda_(ar, u, 1, y) == ar.hom_cluster(u, y)
    with pytest.raises(ValueError):
        ar.lambda_value(objs[0], 0, objs[0])


@pytest.mark.parametrize("name, value", [("A3", 2), ("A5", 2), ("A7", 2), ("E7", 6)])
def test_lambda_single_orbit(name, value):
    table = dynkin_lambda_table(dyn(name))
    assert table.values == [[value]]


@pytest.mark.parametrize("n", [4, 5, 6, 7, 8, 9])
def test_lambda_dn_matrix(n):
    table = dynkin_lambda_table(DynkinType("D", n))
    if n % 2 == 0:
        assert table.values == [[n, -(n - 2)], [-(n - 2), n]]
    else:
        assert table.values == [[n - 1, -(n - 1)], [-(n - 1), n - 1]]


def test_mu_partial_sums_single_orbit():
    a = dynkin_lambda_table(DynkinType("A", 5))
    assert [a.mu[(0, 0, j)] for j in range(-2, 5)] == [0, 0, 1, 1, 0, 0, 0]
    e = dynkin_lambda_table(DynkinType("E", 7))
    assert [e.mu[(0, 0, j)] for j in range(-2, 5)] == [0, 0, 1, 3, 2, 0, 0]


@pytest.mark.parametrize("n", [4, 5, 6, 7, 8])
def test_mu_partial_sums_dn(n):
    t = dynkin_lambda_table(DynkinType("D", n))
    mu = t.mu
    assert mu[(0, 0, 0)] == 1 and mu[(0, 1, 0)] == 0
    if n % 2 == 0:
        expect = (n // 2, -(n - 2) // 2, (n - 2) // 2, -(n - 2) // 2)
    else:
        expect = ((n - 1) // 2, -(n - 1) // 2, (n - 3) // 2, -(n - 1) // 2)
    assert (mu[(0, 0, 1)], mu[(0, 1, 1)], mu[(0, 0, 2)], mu[(0, 1, 2)]) == expect
    for j in (-2, -1, 3, 4):
        assert mu[(0, 0, j)] == mu[(0, 1, j)] == 0


@pytest.mark.parametrize("n", [4, 5, 6, 7, 8])
def test_dn_hom_pattern(n):
    ar = knit(dynkin_quiver(DynkinType("D", n)))
    m1, m2 = marked_objects(ar)
    same = [i for i in range(-3 * n, 3 * n) if ar.hom_derived(m1, ar.tau_power(m1, i))]
    assert same == [i for i in range(-(n - 2), 1) if i % 2 == 0]
    # tau^{-(n-1)} M is Sigma M for n even and Sigma M' for n odd
    shifted = ar.normalize(ar.tau_power(m1, -(n - 1)))
    target = m1 if n % 2 == 0 else m2
    assert shifted == ar.normalize(DObj(target.module, target.shift + 1))
    # the cross pattern is supported on odd i with -(n-2) <= i <= -1
    cross = [i for i in range(-3 * n, 3 * n) if ar.hom_derived(m1, ar.tau_power(m2, i))]
    assert cross == [i for i in range(-(n - 2), 0) if i % 2]


def test_unsupported_lambda_types():
    for name in ["A4", "E6", "E8"]:
        with pytest.raises(ValueError):
            dynkin_lambda_table(dyn(name))


# --- additivity -----------------------------------------------------------


@pytest.mark.parametrize("name", ["A3", "A5", "D4", "D5", "D6", "E7"])
def test_marked_lambda_additive(name):
    ar = ar_of(name)
    for u in marked_objects(ar):
        assert ar_triangle_additivity_check(LambdaForm(ar, u, ar.coxeter_number + 2))


@pytest.mark.parametrize("name", ["A3", "D4", "E6"])
def test_every_module_gives_additive_lambda(name):
    ar = ar_of(name)
    for i in range(len(ar)):
        assert ar_triangle_additivity_check(LambdaForm(ar, DObj(i, 0), ar.coxeter_number + 2))


def test_odd_q_checked_mod_2():
    ar = ar_of("A2")
    form = LambdaForm(ar, DObj(ar.projective[1], 0), 5)
    assert form.modulus == 2
    assert ar_triangle_additivity_check(form)


def test_hypothesis_violation_reported():
    ar = ar_of("A3")
    with pytest.raises(ValueError, match="F-orbit"):
        ar_triangle_additivity_check(LambdaForm(ar, DObj(0, 0), 3))


def test_non_additive_form_detected():
    # q = 1 with the tau^q hypothesis satisfied is impossible here, so probe the
    # mesh sums directly: Hom_C(U, -) alone is not additive
    ar = ar_of("A3")
    u = DObj(ar.projective[1], 0)
    bad = 0
    for v in ar.quiver.vertices:
        for k in range(-3, 4):
            start, middle, end = ar.mesh(v, k)
            s = ar.hom_cluster(u, start) - sum(ar.hom_cluster(u, e) for e in middle) + ar.hom_cluster(u, end)
            bad += s != 0
    assert bad > 0
