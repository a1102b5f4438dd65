"""Acceptance checks, grouped into scopes for ``clusterk0 verify``.

Each check returns a :class:`CheckResult`; exceptions inside a check are
reported as failures rather than propagated.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .meshhom import (
    DObj,
    LambdaForm,
    ar_triangle_additivity_check,
    coxeter_number,
    dynkin_lambda_table,
    knit,
    marked_objects,
)
from .oracle import brick_representations, hom_dim
from .quiver import (
    DynkinType,
    Quiver,
    build_example_family,
    dynkin_quiver,
    kbar_hereditary,
    reduction_step,
)
from .sheafk0 import (
    K0Lattice,
    WeightSequence,
    closed_form_kbar,
    dual_basis,
    kbar_canonical,
    kbar_canonical_algebra,
    riemann_roch_exact,
)
from .tube import (
    kbar_tube,
    lambda_even_tube,
    lambda_odd_tube,
    lambda_odd_tube_k0,
    simple,
    tube_additive,
    TubeObj,
)
from .zlinalg import AbelianGroup, cokernel, groups_isomorphic

DEFAULT_SEED = 20240607


@dataclass(frozen=True)
class CheckResult:
    criterion: str
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.criterion:>9}  {self.name}: {self.detail}"


def _group(rank: int, *torsion: int) -> AbelianGroup:
    return AbelianGroup(rank, tuple(torsion))


def _dynkin(spec: str) -> DynkinType:
    return DynkinType(spec[0], int(spec[1:]))


# --------------------------------------------------------------------------
# random quivers


def random_acyclic_quiver(rng: random.Random, n_max: int = 8, max_mult: int = 2, density: float = 0.35) -> Quiver:
    n = rng.randint(1, n_max)
    perm = list(range(1, n + 1))
    rng.shuffle(perm)
    arrows = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < density:
                arrows.extend([(perm[i], perm[j])] * rng.randint(1, max_mult))
    rng.shuffle(arrows)
    return Quiver(n, tuple(arrows))


def random_reducible_quiver(rng: random.Random, n_max: int = 8) -> Quiver:
    """Random acyclic quiver with a pendant source- or sink-arrow attached."""
    base = random_acyclic_quiver(rng, n_max - 1)
    v = rng.randint(1, base.n)
    new = base.n + 1
    arrow = (new, v) if rng.random() < 0.5 else (v, new)
    arrows = list(base.arrows)
    arrows.insert(rng.randint(0, len(arrows)), arrow)
    return Quiver(new, tuple(arrows))


def weight_sequences(max_excess: int = 12) -> list[WeightSequence]:
    """All weight sequences with sum(p_i - 1) <= max_excess."""
    out = []

    def parts(remaining, largest, acc):
        out.append(WeightSequence(tuple(x + 1 for x in acc)))
        for k in range(min(remaining, largest), 0, -1):
            parts(remaining - k, k, acc + [k])

    parts(max_excess, max_excess, [])
    return out


# --------------------------------------------------------------------------
# criteria


def c1_dynkin_table(rng) -> CheckResult:
    expected = {
        "A2": _group(0), "A4": _group(0), "E6": _group(0), "E8": _group(0),
        "A3": _group(1), "A5": _group(1), "D5": _group(1), "E7": _group(1),
        "D4": _group(2), "D6": _group(2),
    }
    bad = []
    for name, g in expected.items():
        got = kbar_hereditary(dynkin_quiver(_dynkin(name)))
        if got != g:
            bad.append(f"{name}: {got} != {g}")
    return CheckResult("1", "Dynkin K-groups", not bad, "; ".join(bad) or f"{len(expected)} types exact")


def c2_witness_family(rng) -> CheckResult:
    cases = [(1, []), (0, [2]), (2, [2, 4]), (1, [3, 3])]
    bad = []
    for r, m in cases:
        expect = AbelianGroup(r, tuple(sorted(m + m)))
        got = kbar_hereditary(build_example_family(r, m))
        if got != expect:
            bad.append(f"{(r, m)}: {got} != {expect}")
    return CheckResult("2", "witness family", not bad, "; ".join(bad) or f"{len(cases)} cases exact")


def c3_adjacency(rng, trials: int = 500) -> CheckResult:
    failures = 0
    for _ in range(trials):
        q = random_acyclic_quiver(rng)
        try:
            g = kbar_hereditary(q)  # raises on route mismatch
        except AssertionError:
            failures += 1
            continue
        tors = list(g.torsion)
        if any(tors.count(d) % 2 for d in set(tors)):
            failures += 1
    return CheckResult("3", "coker(1+Phi) = coker(B-B^T), paired torsion", failures == 0,
                       f"{trials} random quivers, {failures} failures")


def c4_reduction(rng, trials: int = 200) -> CheckResult:
    failures = 0
    for _ in range(trials):
        q = random_reducible_quiver(rng)
        step = reduction_step(q)
        if step is None or not groups_isomorphic(kbar_hereditary(q), kbar_hereditary(step[0])):
            failures += 1
    return CheckResult("4", "source/sink reduction invariance", failures == 0,
                       f"{trials} random quivers, {failures} failures")


CANONICAL_GROUPS = {
    (2, 3, 5): _group(1), (2, 3, 7): _group(1),
    (3, 3, 3): _group(0, 2, 2), (3, 5, 7): _group(0, 2, 2),
    (2, 2, 2, 2): _group(4), (2, 4, 4): _group(3), (2, 3, 6): _group(2),
}


def c5_canonical_groups(rng) -> CheckResult:
    bad = []
    for w, g in CANONICAL_GROUPS.items():
        res = kbar_canonical(w)
        if res.group != g:
            bad.append(f"{w}: {res.group} != {g}")
        if not res.relations_hold:
            bad.append(f"{w}: presentation relations fail")
    return CheckResult("5", "canonical K-groups and relations", not bad, "; ".join(bad) or f"{len(CANONICAL_GROUPS)} sequences exact")


def c6_master_consistency(rng) -> CheckResult:
    seqs = weight_sequences(12)
    bad = []
    for w in seqs:
        lat = K0Lattice(w)
        if abs(lat.euler.det()) != 1:
            bad.append(f"{w}: det C = {lat.euler.det()}")
        elif not lat.serre_consistent():
            bad.append(f"{w}: Phi != -C^-1 C^T")
        elif not lat.coxeter_power_check():
            bad.append(f"{w}: Phi^p != I + delta s0 rk^T")
    return CheckResult("6", "Euler/Coxeter identities", not bad, "; ".join(bad[:5]) or f"{len(seqs)} weight sequences")


def c7_cross_route(rng) -> CheckResult:
    seqs = weight_sequences(12)
    bad = []
    for w in seqs:
        g1 = cokernel(K0Lattice(w).one_plus_phi)
        g2 = kbar_canonical_algebra(w)
        if not groups_isomorphic(g1, g2) or not groups_isomorphic(g1, closed_form_kbar(w)):
            bad.append(f"{w}: {g1} vs {g2}")
    return CheckResult("7", "sheaf basis vs canonical algebra", not bad, "; ".join(bad[:5]) or f"{len(seqs)} weight sequences")


def c8_dual_bases(rng) -> CheckResult:
    bad = []
    for w in [(2, 2, 3), (2, 4, 4), (2, 2, 2, 2)]:
        ws = WeightSequence(w)
        lat = K0Lattice(ws)
        forms = dual_basis(ws)
        wt = forms[0]
        if wt(lat.a) != 1:
            bad.append(f"{w}: <w~s1, a> = {wt(lat.a)}")
        for h in range(2, ws.r + 1):
            if wt(lat.s(h)) != 0:
                bad.append(f"{w}: <w~s1, s{h}> = {wt(lat.s(h))}")
            for j, f in enumerate(forms[1:], 2):
                if f(lat.s(h)) != int(j == h):
                    bad.append(f"{w}: <{f.name}, s{h}> = {f(lat.s(h))}")
    for w in [(3, 3, 3), (3, 5, 7)]:
        lat = K0Lattice(w)
        rk2, deg2 = dual_basis(w)
        got = (rk2(lat.a), deg2(lat.s0), deg2(lat.a), rk2(lat.s0))
        if got != (1, 1, 0, 0):
            bad.append(f"{w}: (rk2(a), deg2(s0), deg2(a), rk2(s0)) = {got}")
    return CheckResult("8", "dual bases", not bad, "; ".join(bad) or "5 sequences exact")


def c9_dynkin_lambda(rng) -> CheckResult:
    expected = {"A3": [[2]], "A5": [[2]], "E7": [[6]], "D6": [[6, -4], [-4, 6]], "D5": [[4, -4], [-4, 4]]}
    coxeter = {"A3": 4, "A5": 6, "E7": 18, "D6": 10, "D5": 8}
    bad = []
    for name, vals in expected.items():
        t = _dynkin(name)
        table = dynkin_lambda_table(t)
        if table.values != vals:
            bad.append(f"{name}: {table.values} != {vals}")
        if coxeter_number(t) != coxeter[name]:
            bad.append(f"{name}: Coxeter number")
    return CheckResult("9", "Dynkin lambda values", not bad, "; ".join(bad) or "A3 A5 E7 D6 D5 exact")


def c10_derived(rng) -> CheckResult:
    bad = []
    for name in ["A3", "D4", "D5", "E6"]:
        t = _dynkin(name)
        ar = knit(dynkin_quiver(t))
        m = coxeter_number(t)
        for i in range(len(ar)):
            if ar.tau_power(DObj(i, 0), m) != DObj(i, -2):
                bad.append(f"{name}: tau^m of module {i}")
    mismatches = 0
    for name in ["A2", "A3", "D4"]:
        q = dynkin_quiver(_dynkin(name))
        ar = knit(q)
        reps = brick_representations(q, rng)
        if set(reps) != set(ar.dims):
            bad.append(f"{name}: knitted dimension vectors differ from positive roots")
            continue
        for i, x in enumerate(ar.dims):
            for j, y in enumerate(ar.dims):
                if hom_dim(reps[x], reps[y]) != ar.hom_mod(i, j):
                    mismatches += 1
    if mismatches:
        bad.append(f"{mismatches} hom mismatches")
    return CheckResult("10", "tau^m = Sigma^-2 and hom oracle", not bad, "; ".join(bad) or "0 mismatches")


def c11_dynkin_additivity(rng) -> CheckResult:
    bad = []
    for name in ["A3", "A5", "E7", "D6", "D5"]:
        t = _dynkin(name)
        ar = knit(dynkin_quiver(t))
        for u in marked_objects(ar):
            if not ar_triangle_additivity_check(LambdaForm(ar, u, t.coxeter_number + 2)):
                bad.append(f"{name} marked {u}")
    # an odd q: tau^5 = F^-2 on A2, additive mod 2
    ar = knit(dynkin_quiver(_dynkin("A2")))
    if not ar_triangle_additivity_check(LambdaForm(ar, DObj(ar.projective[1], 0), 5)):
        bad.append("A2 q=5 mod 2")
    return CheckResult("11-dynkin", "Dynkin lambda additive on meshes", not bad, "; ".join(bad) or "all meshes pass")


def c11_tube_additivity(rng) -> CheckResult:
    bad = []
    for q in (2, 4, 6):
        if not tube_additive(q, lambda x, q=q: lambda_even_tube(q, x)):
            bad.append(f"even q={q}")
    for q in (1, 3, 5, 7):
        if not tube_additive(q, lambda x, q=q: lambda_odd_tube(q, x), modulus=2):
            bad.append(f"odd q={q}")
    return CheckResult("11-tube", "tube lambda additive on meshes", not bad, "; ".join(bad) or "lengths <= 2q pass")


def c12_tubes(rng) -> CheckResult:
    bad = []
    for q in range(1, 9):
        g = kbar_tube(q)
        expect = _group(1) if q % 2 == 0 else _group(0, 2)
        if g != expect:
            bad.append(f"q={q}: {g}")
    for q in (2, 4, 6):
        v = lambda_even_tube(q, simple(q))
        if v != 2:
            bad.append(f"q={q}: lambda(S) = {v}")
    for q in (3, 5):
        vals = (lambda_odd_tube(q, simple(q)), lambda_odd_tube(q, TubeObj(q, 0, 2)))
        k0 = (lambda_odd_tube_k0(q, simple(q)), lambda_odd_tube_k0(q, TubeObj(q, 0, 2)))
        if vals != (1, 0) or k0 != vals:
            bad.append(f"q={q}: lambda = {vals}, K-theoretic {k0}")
    return CheckResult("12", "cluster tubes", not bad, "; ".join(bad) or "q = 1..8 exact")


def c13_riemann_roch(rng, pairs: int = 100) -> CheckResult:
    failures = 0
    for w in [(2, 3, 5), (2, 2, 2, 2), (3, 3, 3), (2, 3, 7)]:
        lat = K0Lattice(w)
        for _ in range(pairs):
            e = [rng.randint(-5, 5) for _ in range(lat.n)]
            x = [rng.randint(-5, 5) for _ in range(lat.n)]
            total, cur = 0, tuple(e)
            for _ in range(lat.p):
                total += lat.pair(cur, x)
                cur = lat.coxeter.apply(cur)
            if 2 * Fraction(total) != 2 * riemann_roch_exact(lat, e, x):
                failures += 1
    return CheckResult("13", "Riemann-Roch", failures == 0, f"{4 * pairs} pairs, {failures} failures")


CHECKS: dict[str, Callable[[random.Random], CheckResult]] = {
    "1": c1_dynkin_table,
    "2": c2_witness_family,
    "3": c3_adjacency,
    "4": c4_reduction,
    "5": c5_canonical_groups,
    "6": c6_master_consistency,
    "7": c7_cross_route,
    "8": c8_dual_bases,
    "9": c9_dynkin_lambda,
    "10": c10_derived,
    "11-dynkin": c11_dynkin_additivity,
    "11-tube": c11_tube_additivity,
    "12": c12_tubes,
    "13": c13_riemann_roch,
}

SCOPES = {
    "hereditary": ["1", "2", "3", "4"],
    "dynkin": ["1", "9", "10", "11-dynkin"],
    "canonical": ["5", "6", "7", "8", "13"],
    "tube": ["11-tube", "12"],
}
SCOPES["all"] = list(CHECKS)


def run_check(key: str, seed: int = DEFAULT_SEED) -> CheckResult:
    rng = random.Random(f"{seed}:{key}")
    try:
        return CHECKS[key](rng)
    except Exception as exc:  # a crash is a failed check, not an abort
        return CheckResult(key, CHECKS[key].__name__, False, f"{type(exc).__name__}: {exc}")


def run_scope(scope: str, seed: int = DEFAULT_SEED) -> list[CheckResult]:
    if scope not in SCOPES:
        raise KeyError(f"unknown scope {scope!r}; choose from {sorted(SCOPES)}")
    return [run_check(k, seed) for k in SCOPES[scope]]
