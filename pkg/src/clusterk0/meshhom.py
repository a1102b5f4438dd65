"""Hom dimensions in the derived and cluster categories of a Dynkin quiver.

Modules are found by knitting the preprojective component from the
projectives.  Representations are covariant: ``P(v)`` has dimension vector
"number of paths v -> w" and ``I(v)`` "number of paths w -> v".  On dimension
vectors the AR translate acts by ``Phi_dim = -E^{-1} E^T`` with the Euler
matrix ``E = I - B``; this is the transpose of :func:`quiver.coxeter`.

Indecomposables of the derived category are pairs ``(module, shift)``
standing for ``Sigma^shift M``.  The cluster category is the orbit category
under ``F = tau^{-1} Sigma``; in it the suspension is ``tau``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

from .quiver import DynkinType, Quiver, adjacency, cartan, coxeter, dynkin_quiver, dynkin_type
from .zlinalg import IntMatrix


class DObj(NamedTuple):
    module: int
    shift: int


class NotDynkinError(ValueError):
    pass


@dataclass
class ARData:
    quiver: Quiver
    dynkin: DynkinType
    dims: list[tuple[int, ...]]
    orbit: list[tuple[int, int]]  # module index -> (v, k) meaning tau^{-k} P(v)
    projective: dict[int, int]  # vertex -> module index
    injective: dict[int, int]
    tau: list[int | None]
    tau_inv: list[int | None]
    euler: IntMatrix
    _hom: dict = field(default_factory=dict, repr=False)
    _zq: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.index = {d: i for i, d in enumerate(self.dims)}
        self.proj_vertex = {i: v for v, i in self.projective.items()}
        self.inj_vertex = {i: v for v, i in self.injective.items()}
        self.coxeter_dim = coxeter(self.quiver).T

    def __len__(self):
        return len(self.dims)

    @property
    def coxeter_number(self) -> int:
        return self.dynkin.coxeter_number

    def module(self, dim: Sequence[int]) -> int:
        return self.index[tuple(dim)]

    def euler_form(self, x: Sequence[int], y: Sequence[int]) -> int:
        return sum(a * b for a, b in zip(x, self.euler.apply(y)))

    # module category ---------------------------------------------------------

    def hom_mod(self, m: int, n: int) -> int:
        """dim Hom(M, N) = <M, N> + dim Hom(N, tau M); tau of a projective is 0."""
        key = (m, n)
        if key not in self._hom:
            val = self.euler_form(self.dims[m], self.dims[n])
            tm = self.tau[m]
            if tm is not None:
                val += self.hom_mod(n, tm)
            self._hom[key] = val
        return self._hom[key]

    def ext_mod(self, m: int, n: int) -> int:
        """dim Ext^1(M, N) = dim Hom(N, tau M)."""
        tm = self.tau[m]
        return 0 if tm is None else self.hom_mod(n, tm)

    # derived category -----------------------------------------------------

    def tau_d(self, x: DObj) -> DObj:
        if x.module in self.proj_vertex:
            return DObj(self.injective[self.proj_vertex[x.module]], x.shift - 1)
        return DObj(self.tau[x.module], x.shift)

    def tau_inv_d(self, x: DObj) -> DObj:
        if x.module in self.inj_vertex:
            return DObj(self.projective[self.inj_vertex[x.module]], x.shift + 1)
        return DObj(self.tau_inv[x.module], x.shift)

    def tau_power(self, x: DObj, k: int) -> DObj:
        step = self.tau_d if k >= 0 else self.tau_inv_d
        for _ in range(abs(k)):
            x = step(x)
        return x

    def F(self, x: DObj, k: int = 1) -> DObj:
        """F^k with F = tau^{-1} Sigma."""
        return self.tau_power(DObj(x.module, x.shift + k), -k)

    def hom_derived(self, x: DObj, y: DObj) -> int:
        d = y.shift - x.shift
        if d == 0:
            return self.hom_mod(x.module, y.module)
        if d == 1:
            return self.ext_mod(x.module, y.module)
        return 0

    def zq(self, v: int, k: int) -> DObj:
        """Object at mesh coordinate (v, k) = tau^{-k} P(v) in the derived category."""
        key = (v, k)
        if key not in self._zq:
            self._zq[key] = self.tau_power(DObj(self.projective[v], 0), -k)
        return self._zq[key]

    def mesh(self, v: int, k: int) -> tuple[DObj, list[DObj], DObj]:
        """AR triangle ending at (v, k+1): start (v, k), middle terms, end."""
        middle = [self.zq(w, k + 1) for s, w in self.quiver.arrows if s == v]
        middle += [self.zq(u, k) for u, t in self.quiver.arrows if t == v]
        return self.zq(v, k), middle, self.zq(v, k + 1)

    # cluster category -----------------------------------------------------

    def normalize(self, x: DObj) -> DObj:
        """Representative in mod H plus the shifted projectives Sigma P(v)."""
        while True:
            if x.shift == 0 or (x.shift == 1 and x.module in self.proj_vertex):
                return x
            x = self.F(x, -1) if x.shift >= 1 else self.F(x, 1)

    def cluster_objects(self) -> list[DObj]:
        return [DObj(i, 0) for i in range(len(self))] + [DObj(self.projective[v], 1) for v in self.quiver.vertices]

    def hom_cluster(self, x: DObj, y: DObj, window: int = 2) -> int:
        """sum_i dim Hom_D(X, F^i Y); after normalizing, i in [-2, 2] is enough."""
        x, y = self.normalize(x), self.normalize(y)
        return sum(self.hom_derived(x, self.F(y, i)) for i in range(-window, window + 1))

    def tau_c(self, x: DObj, k: int = 1) -> DObj:
        return self.normalize(self.tau_power(x, k))

    def lambda_value(self, u: DObj, q: int, y: DObj) -> int:
        """sum_{i<q} (-1)^i dim Hom_C(U, tau^i Y)."""
        if q < 1:
            raise ValueError("q must be positive")
        total = 0
        cur = self.normalize(y)
        for i in range(q):
            total += (-1) ** i * self.hom_cluster(u, cur)
            cur = self.tau_c(cur)
        return total

    def mu(self, m: DObj, n: DObj, j: int, q: int) -> int:
        """sum_{i<q} (-1)^i dim Hom_D(M, tau^{i-j} Sigma^j N)."""
        return sum((-1) ** i * self.hom_derived(m, self.tau_power(DObj(n.module, n.shift + j), i - j))
                   for i in range(q))


def knit(q: Quiver) -> ARData:
    """Indecomposable modules of a Dynkin quiver by knitting from projectives.

    dim tau^{-1}M = (sum of middle terms of the mesh) - dim M, stopping each
    tau-orbit at an injective.
    """
    t = dynkin_type(q)
    if t is None:
        raise NotDynkinError("underlying graph is not a connected Dynkin diagram")
    c = cartan(q)
    n = q.n
    proj_dims = {v: c.row(v - 1) for v in q.vertices}
    inj_dims = {v: c.col(v - 1) for v in q.vertices}
    inj_lookup = {d: v for v, d in inj_dims.items()}
    order = list(reversed(q.topological_order()))  # sinks first

    table: dict[tuple[int, int], tuple[int, ...]] = {(v, 0): proj_dims[v] for v in q.vertices}
    alive = {v for v in q.vertices if proj_dims[v] not in inj_lookup}
    k = 0
    while alive:
        for v in order:
            if v not in alive:
                continue
            acc = [-x for x in table[(v, k)]]
            for s, w in q.arrows:
                if s == v and (w, k + 1) in table:
                    acc = [a + b for a, b in zip(acc, table[(w, k + 1)])]
            for u, tt in q.arrows:
                if tt == v and (u, k) in table:
                    acc = [a + b for a, b in zip(acc, table[(u, k)])]
            dim = tuple(acc)
            if any(x < 0 for x in dim) or not any(dim):
                raise NotDynkinError(f"knitting produced invalid dimension vector {dim}")
            table[(v, k + 1)] = dim
        alive = {v for v in alive if (v, k + 1) in table and table[(v, k + 1)] not in inj_lookup}
        k += 1
        if len(table) > t.positive_roots:
            raise NotDynkinError("knitting did not terminate at the expected number of modules")

    labels = sorted(table, key=lambda vk: (vk[1], order.index(vk[0])))
    dims = [table[vk] for vk in labels]
    pos = {vk: i for i, vk in enumerate(labels)}
    tau = [pos.get((v, kk - 1)) if kk > 0 else None for v, kk in labels]
    tau_inv = [pos.get((v, kk + 1)) for v, kk in labels]
    index = {d: i for i, d in enumerate(dims)}
    projective = {v: pos[(v, 0)] for v in q.vertices}
    injective = {v: index[inj_dims[v]] for v in q.vertices}
    euler = IntMatrix.identity(n) - adjacency(q)
    ar = ARData(q, t, dims, labels, projective, injective, tau, tau_inv, euler)
    _check_ar(ar)
    return ar


def _check_ar(ar: ARData):
    if len(ar) != ar.dynkin.positive_roots:
        raise AssertionError(f"{len(ar)} modules, expected {ar.dynkin.positive_roots}")
    if len(set(ar.dims)) != len(ar):
        raise AssertionError("repeated dimension vector")
    for i, d in enumerate(ar.dims):
        if (ar.tau[i] is None) != (i in ar.proj_vertex):
            raise AssertionError("tau undefined off the projectives")
        if (ar.tau_inv[i] is None) != (i in ar.inj_vertex):
            raise AssertionError("tau^-1 undefined off the injectives")
        if ar.tau[i] is not None and ar.dims[ar.tau[i]] != ar.coxeter_dim.apply(d):
            raise AssertionError("dim tau M != Phi dim M")


def coxeter_number(t: DynkinType, q: Quiver | None = None) -> int:
    """Table value, verified as the exact order of the Coxeter matrix."""
    m = t.coxeter_number
    phi = coxeter(q or dynkin_quiver(t))
    ident = IntMatrix.identity(t.n)
    power = ident
    for k in range(1, m):
        power = power @ phi
        if power == ident:
            raise AssertionError(f"Phi has order {k} < {m}")
    if power @ phi != ident:
        raise AssertionError(f"Phi^{m} != I")
    return m


# --------------------------------------------------------------------------
# additive functions


def marked_vertices(t: DynkinType) -> list[int]:
    """Vertices of the marked tau-orbits: chain end (A_n), long-arm end (E_7), forks (D_n)."""
    if t.family == "A":
        return [t.n]
    if t.family == "D":
        return [1, 2]
    if t.family == "E" and t.n == 7:
        return [t.n - 1]
    raise ValueError(f"no marked orbit for {t}")


def marked_objects(ar: ARData) -> list[DObj]:
    """Injectives on the marked orbits: in the injective slice the D_n forks are sources."""
    return [DObj(ar.injective[v], 0) for v in marked_vertices(ar.dynkin)]


@dataclass(frozen=True)
class LambdaForm:
    ar: ARData
    u: DObj
    q: int

    @property
    def modulus(self) -> int:
        return 2 if self.q % 2 else 0

    def __call__(self, y: DObj) -> int:
        v = self.ar.lambda_value(self.u, self.q, y)
        return v % 2 if self.modulus else v

    def hypothesis_holds(self) -> bool:
        """tau^q U is isomorphic to F^j U for some j."""
        ar = self.ar
        return ar.normalize(ar.tau_power(self.u, self.q)) == ar.normalize(self.u)


def lambda_(ar: ARData, u: DObj, q: int, y: DObj) -> int:
    return ar.lambda_value(u, q, y)


def ar_triangle_additivity_check(form: LambdaForm) -> bool:
    """lambda(tau Z) - lambda(E) + lambda(Z) = 0 on every mesh (mod 2 for odd q)."""
    if not form.hypothesis_holds():
        raise ValueError(f"tau^{form.q} U is not in the F-orbit of U")
    ar = form.ar
    span = ar.coxeter_number + 2
    for v in ar.quiver.vertices:
        for k in range(-span, span + 1):
            start, middle, end = ar.mesh(v, k)
            val = form(start) - sum(form(e) for e in middle) + form(end)
            if (val % 2 if form.modulus else val) != 0:
                return False
    return True


@dataclass
class LambdaTable:
    dynkin: DynkinType
    coxeter_number: int
    marked: list[DObj]
    values: list[list[int]]  # values[i][j] = lambda_{M_i}(M_j)
    mu: dict  # (i, j, jshift) -> mu value


def dynkin_lambda_table(t: DynkinType, ar: ARData | None = None) -> LambdaTable:
    if not (t.family == "D" or (t.family == "A" and t.n % 2 == 1) or (t.family == "E" and t.n == 7)):
        raise ValueError(f"unsupported type {t}: need A_n with n odd, D_n or E_7")
    ar = ar or knit(dynkin_quiver(t))
    m = coxeter_number(t, ar.quiver)
    q = m + 2
    marked = marked_objects(ar)
    values = [[ar.lambda_value(a, q, b) for b in marked] for a in marked]
    mu = {}
    for i, a in enumerate(marked):
        for j, b in enumerate(marked):
            for js in range(-2, 5):
                mu[(i, j, js)] = ar.mu(a, b, js, q)
            if sum(mu[(i, j, js)] for js in range(-2, 5)) != values[i][j]:
                raise AssertionError("mu partial sums do not add up to lambda")
    return LambdaTable(t, m, marked, values, mu)
