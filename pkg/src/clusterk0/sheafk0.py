"""The Grothendieck lattice K_0(coh X) of a weighted projective line.

Basis order: ``a`` (structure sheaf), ``s0`` (simple in a homogeneous tube),
then ``s_i(j)`` for each arm i = 1..t and j = 0..p_i - 2.  The last simple of
each exceptional tube is eliminated through

    s_i(0) + s_i(1) + ... + s_i(p_i - 1) = s0.

The Euler form is ``<x, y> = x^T C y`` and the Coxeter matrix acts on columns.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, reduce
from math import lcm
from typing import Sequence

from .zlinalg import (
    AbelianGroup,
    CokernelMap,
    GF2Matrix,
    IntMatrix,
    cokernel,
    gf2_nullspace,
    groups_isomorphic,
    kernel_basis,
    solve,
)


@dataclass(frozen=True)
class WeightSequence:
    """Weights with 1s dropped, even weights first, each part descending.

    ``t`` counts arms after padding with weight 1 up to length two.
    """

    weights: tuple[int, ...]

    def __post_init__(self):
        w = [int(p) for p in self.weights]
        if any(p < 1 for p in w):
            raise ValueError(f"weights must be positive, got {w}")
        w = [p for p in w if p > 1]
        evens = sorted((p for p in w if p % 2 == 0), reverse=True)
        odds = sorted((p for p in w if p % 2 == 1), reverse=True)
        object.__setattr__(self, "weights", tuple(evens + odds))

    @classmethod
    def parse(cls, text: str) -> WeightSequence:
        text = text.strip()
        if not text:
            return cls(())
        try:
            return cls(tuple(int(x) for x in text.split(",")))
        except ValueError:
            raise ValueError(f"bad weight sequence {text!r}") from None

    @property
    def padded(self) -> tuple[int, ...]:
        return self.weights + (1,) * max(0, 2 - len(self.weights))

    @property
    def t(self) -> int:
        return len(self.padded)

    @property
    def p(self) -> int:
        return reduce(lcm, self.padded, 1)

    @property
    def r(self) -> int:
        """Number of even weights."""
        return sum(1 for p in self.weights if p % 2 == 0)

    def __str__(self):
        return "(" + ",".join(map(str, self.weights)) + ")"


def discriminant(w: WeightSequence) -> int:
    d = w.p * (Fraction(w.t - 2) - sum(Fraction(1, p) for p in w.padded))
    assert d.denominator == 1
    return int(d)


class K0Lattice:
    def __init__(self, weights: WeightSequence | Sequence[int]):
        if not isinstance(weights, WeightSequence):
            weights = WeightSequence(tuple(weights))
        self.weights = weights
        self.p = weights.p
        self.delta = discriminant(weights)
        self.labels = ["a", "s0"]
        self._index = {"a": 0, "s0": 1}
        for i, pi in enumerate(weights.weights, 1):
            for j in range(pi - 1):
                self._index[("s", i, j)] = len(self.labels)
                self.labels.append(f"s{i}({j})")
        self.n = len(self.labels)
        self.euler = self._assemble_euler()
        self.coxeter = self._coxeter_from_rules()

    # basis vectors ---------------------------------------------------------

    def unit(self, k: int) -> tuple[int, ...]:
        return tuple(int(i == k) for i in range(self.n))

    @property
    def a(self) -> tuple[int, ...]:
        return self.unit(0)

    @property
    def s0(self) -> tuple[int, ...]:
        return self.unit(1)

    def s(self, i: int, j: int = 0) -> tuple[int, ...]:
        """Class of tau^j S_i, i = 1..t (arms of weight 1 give s0)."""
        pi = self.weights.padded[i - 1]
        j %= pi
        if pi == 1:
            return self.s0
        if j < pi - 1:
            return self.unit(self._index[("s", i, j)])
        v = [0] * self.n
        v[1] = 1
        for jj in range(pi - 1):
            v[self._index[("s", i, jj)]] = -1
        return tuple(v)

    # assembly --------------------------------------------------------------

    def _generator_pairing(self, x, y) -> int:
        """Euler form on generator symbols 'a', 's0', ('s', i, j)."""
        if x == "a" and y == "a":
            # Serre duality with Phi a = a - sum s_i + (t-2) s0 forces 1
            return 1
        if x == "a" and y == "s0":
            return 1
        if x == "s0" and y == "a":
            return -1
        if x == "s0" or y == "s0":
            return 0
        if x == "a":
            return int(y[2] == 0)
        if y == "a":
            # <s_i(j), a> = -<a, s_i(j+1)>
            return -int(x[2] == self.weights.padded[x[1] - 1] - 1)
        _, i, m = x
        _, k, nn = y
        if i != k:
            return 0
        pi = self.weights.padded[i - 1]
        if (nn - m) % pi == 0:
            return 1
        if (nn - m - 1) % pi == 0:
            return -1
        return 0

    def _symbols(self):
        out = ["a", "s0"]
        for i, pi in enumerate(self.weights.weights, 1):
            out.extend(("s", i, j) for j in range(pi - 1))
        return out

    def _assemble_euler(self) -> IntMatrix:
        syms = self._symbols()
        return IntMatrix.from_rows([[self._generator_pairing(x, y) for y in syms] for x in syms], self.n)

    def _coxeter_from_rules(self) -> IntMatrix:
        """Phi s0 = s0, Phi s_i(j) = s_i(j+1), Phi a = a - sum s_i + (t-2) s0."""
        cols = []
        phi_a = list(self.a)
        for i in range(1, self.weights.t + 1):
            phi_a = [x - y for x, y in zip(phi_a, self.s(i, 0))]
        phi_a[1] += self.weights.t - 2
        cols.append(phi_a)
        cols.append(self.s0)
        for i, pi in enumerate(self.weights.weights, 1):
            for j in range(pi - 1):
                cols.append(self.s(i, j + 1))
        return IntMatrix.from_columns(cols, self.n)

    # forms -----------------------------------------------------------------

    def pair(self, x: Sequence[int], y: Sequence[int]) -> int:
        return sum(xi * c for xi, c in zip(x, self.euler.apply(y)))

    def phi(self, x: Sequence[int], power: int = 1) -> tuple[int, ...]:
        return (self.coxeter ** power).apply(x)

    @cached_property
    def coxeter_inverse(self) -> IntMatrix:
        return self.coxeter.inverse()

    def rank(self, x: Sequence[int]) -> int:
        return self.pair(x, self.s0)

    def degree(self, x: Sequence[int]) -> int:
        rk = self.rank(x)
        y = [xi - rk * ai for xi, ai in zip(x, self.a)]
        total, cur = 0, self.a
        for _ in range(self.p):
            total += self.pair(cur, y)
            cur = self.coxeter.apply(cur)
        return total

    def slope(self, x: Sequence[int]) -> Fraction:
        rk = self.rank(x)
        if rk == 0:
            raise ValueError("slope undefined for rank zero")
        return Fraction(self.degree(x), rk)

    def averaged_euler(self, e: Sequence[int], x: Sequence[int]) -> int:
        """sum_{j<p} <Phi^j e, x>, asserted equal to the Riemann-Roch closed form."""
        total, cur = 0, tuple(e)
        for _ in range(self.p):
            total += self.pair(cur, x)
            cur = self.coxeter.apply(cur)
        closed = riemann_roch(self, e, x)
        if total != closed:
            raise AssertionError(f"averaged Euler form {total} != Riemann-Roch {closed}")
        return total

    # checks ----------------------------------------------------------------

    def serre_consistent(self) -> bool:
        """Phi from the rules equals -C^{-1} C^T."""
        return self.coxeter == -(self.euler.inverse() @ self.euler.T)

    def coxeter_power_check(self) -> bool:
        """Phi^p = I + delta * s0 * rk^T."""
        rk_row = self.euler.apply(self.s0)  # rk(x) = x . (C s0)
        corr = IntMatrix.from_rows([[self.delta * s * r for r in rk_row] for s in self.s0], self.n)
        return self.coxeter ** self.p == IntMatrix.identity(self.n) + corr

    @cached_property
    def one_plus_phi(self) -> IntMatrix:
        return IntMatrix.identity(self.n) + self.coxeter


def build_k0(weights) -> K0Lattice:
    return K0Lattice(weights)


def riemann_roch_exact(lat: K0Lattice, e: Sequence[int], x: Sequence[int]) -> Fraction:
    """-(p/2) delta rk(e) rk(x) + rk(e) deg(x) - rk(x) deg(e)."""
    re, rx = lat.rank(e), lat.rank(x)
    return -Fraction(lat.p, 2) * lat.delta * re * rx + re * lat.degree(x) - rx * lat.degree(e)


def riemann_roch(lat: K0Lattice, e: Sequence[int], x: Sequence[int]) -> int:
    val = riemann_roch_exact(lat, e, x)
    if val.denominator != 1:
        # p odd forces delta even, so this is unreachable for valid weights
        raise ArithmeticError(f"non-integral Riemann-Roch value {val}")
    return int(val)


def coxeter_power_check(lat: K0Lattice) -> bool:
    return lat.coxeter_power_check()


# --------------------------------------------------------------------------
# cluster K-group


@dataclass(frozen=True)
class CanonicalKbar:
    """K-group of the cluster category with generator images.

    ``basis`` names the closed-form generators (a, s2..sr when some weight is
    even; a, s0 otherwise).  ``images`` maps 'a', 's0', 's1'.. to coordinates
    in that basis (mod 2 in the all-odd case).
    """

    weights: WeightSequence
    group: AbelianGroup
    basis: tuple[str, ...]
    images: dict
    relations_hold: bool


def closed_form_kbar(w: WeightSequence) -> AbelianGroup:
    return AbelianGroup(w.r) if w.r >= 1 else AbelianGroup(0, (2, 2))


def kbar_canonical(w: WeightSequence | Sequence[int]) -> CanonicalKbar:
    if not isinstance(w, WeightSequence):
        w = WeightSequence(tuple(w))
    lat = K0Lattice(w)
    qmap = CokernelMap(lat.one_plus_phi)
    group = qmap.group
    expected = closed_form_kbar(w)
    if not groups_isomorphic(group, expected):
        raise AssertionError(f"route mismatch for {w}: coker(1+Phi)={group}, closed form={expected}")

    gens = {"a": lat.a, "s0": lat.s0}
    for i in range(1, w.t + 1):
        gens[f"s{i}"] = lat.s(i, 0)

    if w.r >= 1:
        basis = ("a",) + tuple(f"s{i}" for i in range(2, w.r + 1))
        g = IntMatrix.from_columns([qmap.image(gens[b]) for b in basis], group.free_rank)
        images = {}
        for name, vec in gens.items():
            coords = solve(g, qmap.image(vec))
            if coords is None:
                raise AssertionError(f"{name} not in the span of the closed-form basis")
            images[name] = coords
    else:
        basis = ("a", "s0")
        # torsion coordinates are all mod 2; invert the 2x2 change of basis over GF(2)
        g = [qmap.image(gens[b]) for b in basis]
        det = (g[0][0] * g[1][1] - g[0][1] * g[1][0]) % 2
        if det != 1:
            raise AssertionError("a, s0 do not form a basis mod 2")
        images = {}
        for name, vec in gens.items():
            y = qmap.image(vec)
            c0 = (y[0] * g[1][1] - y[1] * g[1][0]) % 2
            c1 = (g[0][0] * y[1] - g[0][1] * y[0]) % 2
            images[name] = (c0, c1)

    return CanonicalKbar(w, group, basis, images, presentation_relations_hold(lat, qmap))


def presentation_relations_hold(lat: K0Lattice, qmap: CokernelMap | None = None) -> bool:
    """2 s0 = 0, 2a = sum (s_i - s0), s0 = ((1 - (-1)^p_i)/2) s_i in the quotient."""
    qmap = qmap or CokernelMap(lat.one_plus_phi)
    w = lat.weights
    rels = [tuple(2 * x for x in lat.s0)]
    rhs = [0] * lat.n
    for i in range(1, w.t + 1):
        rhs = [r + si - z for r, si, z in zip(rhs, lat.s(i, 0), lat.s0)]
    rels.append(tuple(2 * x - y for x, y in zip(lat.a, rhs)))
    for i, pi in enumerate(w.padded, 1):
        c = (1 - (-1) ** pi) // 2
        rels.append(tuple(z - c * si for z, si in zip(lat.s0, lat.s(i, 0))))
    return all(qmap.is_zero(r) for r in rels)


def minus_fixed_space(lat: K0Lattice) -> list[tuple[int, ...]]:
    """Saturated Z-basis of {y : Phi y = -y}."""
    basis = kernel_basis(lat.one_plus_phi)
    for y in basis:
        if lat.rank(y) != 0 or lat.degree(y) != 0:
            raise AssertionError(f"-1 eigenvector {y} has nonzero rank or degree")
    return basis


# --------------------------------------------------------------------------
# dual groups


@dataclass(frozen=True)
class LinearForm:
    """Coefficient vector c with value sum c_k x_k; ``modulus`` 0 means over Z."""

    name: str
    coeffs: tuple[int, ...]
    modulus: int = 0

    def __call__(self, x: Sequence[int]) -> int:
        v = sum(c * xi for c, xi in zip(self.coeffs, x))
        return v % self.modulus if self.modulus else v


def alternating_orbit_sum(lat: K0Lattice, x: Sequence[int], period: int) -> tuple[int, ...]:
    """sum_{j<period} (-1)^j Phi^j x."""
    out = [0] * lat.n
    cur = tuple(x)
    for j in range(period):
        out = [o + (-1) ** j * c for o, c in zip(out, cur)]
        cur = lat.coxeter.apply(cur)
    return tuple(out)


def half_orbit_sum(lat: K0Lattice, x: Sequence[int], period: int) -> tuple[int, ...]:
    """sum_{j<period/2} Phi^{2j} x."""
    if period % 2:
        raise ValueError("half-orbit sum needs an even period")
    out = [0] * lat.n
    phi2 = lat.coxeter @ lat.coxeter
    cur = tuple(x)
    for _ in range(period // 2):
        out = [o + c for o, c in zip(out, cur)]
        cur = phi2.apply(cur)
    return tuple(out)


def euler_form_of(lat: K0Lattice, y: Sequence[int], name: str) -> LinearForm:
    """The form <y, ->."""
    return LinearForm(name, lat.euler.T.apply(y))


def dual_basis(w: WeightSequence | Sequence[int]) -> list[LinearForm]:
    if not isinstance(w, WeightSequence):
        w = WeightSequence(tuple(w))
    lat = K0Lattice(w)
    one_phi = lat.one_plus_phi
    if w.r >= 1:
        p = w.weights
        wt = alternating_orbit_sum(lat, lat.s(1), p[0])
        if any(one_phi.apply(wt)):
            raise AssertionError("(1+Phi) w~s1 != 0")
        halves = {}
        for i in range(1, w.r + 1):
            halves[i] = half_orbit_sum(lat, lat.s(i), p[i - 1])
            if one_phi.apply(halves[i]) != lat.s0:
                raise AssertionError(f"(1+Phi) h~s{i} != s0")
        forms = [euler_form_of(lat, wt, "w~s1")]
        for i in range(2, w.r + 1):
            y = tuple(x - z for x, z in zip(halves[i], halves[1]))
            forms.append(euler_form_of(lat, y, f"h~s{i}-h~s1"))
    else:
        rk2 = tuple(c % 2 for c in lat.euler.apply(lat.s0))
        # deg mod 2 itself; <a, x> + rk(x) mod 2 only matches it on a and s0
        deg2 = tuple(lat.degree(lat.unit(k)) % 2 for k in range(lat.n))
        forms = [LinearForm("rk2", rk2, 2), LinearForm("deg2", deg2, 2)]
    for f in forms:
        if not kills_image(lat, f):
            raise AssertionError(f"form {f.name} does not vanish on Im(1+Phi)")
    return forms


def kills_image(lat: K0Lattice, form: LinearForm) -> bool:
    row = IntMatrix(1, lat.n, form.coeffs) @ lat.one_plus_phi
    if form.modulus:
        return all(c % form.modulus == 0 for c in row.entries)
    return row.is_zero()


def gf2_dual_space(lat: K0Lattice) -> list[tuple[int, ...]]:
    """All GF(2)-forms killing (1+Phi) mod 2, as a basis of the left kernel."""
    return gf2_nullspace(GF2Matrix.reduce(lat.one_plus_phi.T))


# --------------------------------------------------------------------------
# canonical algebra


def canonical_cartan(w: WeightSequence | Sequence[int]) -> IntMatrix:
    """Cartan matrix (path dimensions u -> v) of the canonical algebra.

    Vertex order: source, inner vertices of arm 1, arm 2, ..., sink.
    """
    if not isinstance(w, WeightSequence):
        w = WeightSequence(tuple(w))
    arms = []
    idx = 1
    for pi in w.padded:
        arms.append(list(range(idx, idx + pi - 1)))
        idx += pi - 1
    n = idx + 1
    source, sink = 0, n - 1
    rows = [[int(i == j) for j in range(n)] for i in range(n)]
    for arm in arms:
        for k, u in enumerate(arm):
            rows[source][u] = 1
            rows[u][sink] = 1
            for v in arm[k + 1:]:
                rows[u][v] = 1
    # t monomials from source to sink modulo t - 2 relations
    rows[source][sink] = 2
    return IntMatrix.from_rows(rows, n)


def kbar_canonical_algebra(w: WeightSequence | Sequence[int]) -> AbelianGroup:
    c = canonical_cartan(w)
    phi = -(c.inverse() @ c.T)
    return cokernel(IntMatrix.identity(c.rows) + phi)
