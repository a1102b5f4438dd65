"""Finite quivers, their Cartan/Coxeter matrices and the cluster K-group.

Vertices are numbered 1..n.  Parallel arrows are encoded by repeating the
pair ``(s, t)``.  The adjacency matrix has ``B[i][j]`` = number of arrows
i -> j, the Cartan matrix is ``C = I + B + B^2 + ...`` and the Coxeter matrix
is ``-C^{-1} C^T``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

from .zlinalg import AbelianGroup, IntMatrix, cokernel, groups_isomorphic


class QuiverError(ValueError):
    pass


class CycleError(QuiverError):
    pass


@dataclass(frozen=True)
class Quiver:
    n: int
    arrows: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        arrows = tuple((int(s), int(t)) for s, t in self.arrows)
        object.__setattr__(self, "arrows", arrows)
        if self.n < 0:
            raise QuiverError("negative vertex count")
        for s, t in arrows:
            if not (1 <= s <= self.n and 1 <= t <= self.n):
                raise QuiverError(f"arrow {s}->{t} out of range 1..{self.n}")
            if s == t:
                raise QuiverError(f"loop at vertex {s}")

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def out_degree(self, v: int) -> int:
        return sum(1 for s, _ in self.arrows if s == v)

    def in_degree(self, v: int) -> int:
        return sum(1 for _, t in self.arrows if t == v)

    def topological_order(self) -> list[int]:
        """Vertices ordered so every arrow goes forward; CycleError if impossible."""
        indeg = {v: 0 for v in self.vertices}
        for _, t in self.arrows:
            indeg[t] += 1
        ready = sorted(v for v, d in indeg.items() if d == 0)
        order = []
        while ready:
            v = ready.pop(0)
            order.append(v)
            for s, t in self.arrows:
                if s == v:
                    indeg[t] -= 1
                    if indeg[t] == 0:
                        ready.append(t)
            ready.sort()
        if len(order) != self.n:
            raise CycleError("quiver contains an oriented cycle")
        return order

    def is_acyclic(self) -> bool:
        try:
            self.topological_order()
        except CycleError:
            return False
        return True

    def to_text(self) -> str:
        return "\n".join([str(self.n)] + [f"{s} {t}" for s, t in self.arrows]) + "\n"


def parse_quiver(text: str) -> Quiver:
    """Parse the line format: vertex count, then one ``s t`` line per arrow.

    ``#`` starts a comment; blank lines are ignored; LF or CRLF.
    """
    lines = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append((lineno, line))
    if not lines:
        raise QuiverError("missing vertex count")
    lineno, first = lines[0]
    try:
        n = int(first)
    except ValueError:
        raise QuiverError(f"line {lineno}: expected vertex count, got {first!r}") from None
    arrows = []
    for lineno, line in lines[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise QuiverError(f"line {lineno}: expected 's t', got {line!r}")
        try:
            s, t = int(parts[0]), int(parts[1])
        except ValueError:
            raise QuiverError(f"line {lineno}: non-integer vertex in {line!r}") from None
        if not (1 <= s <= n and 1 <= t <= n):
            raise QuiverError(f"line {lineno}: vertex out of range 1..{n}")
        if s == t:
            raise QuiverError(f"line {lineno}: loop at vertex {s}")
        arrows.append((s, t))
    return Quiver(n, tuple(arrows))


def adjacency(q: Quiver) -> IntMatrix:
    rows = [[0] * q.n for _ in range(q.n)]
    for s, t in q.arrows:
        rows[s - 1][t - 1] += 1
    return IntMatrix.from_rows(rows, q.n)


def cartan(q: Quiver) -> IntMatrix:
    """Path-count matrix sum_k B^k; B is nilpotent for acyclic quivers."""
    q.topological_order()
    b = adjacency(q)
    c = IntMatrix.identity(q.n)
    power = b
    while not power.is_zero():
        c = c + power
        power = power @ b
    return c


def coxeter(q: Quiver) -> IntMatrix:
    c = cartan(q)
    return -(c.inverse() @ c.T)


def kbar_hereditary(q: Quiver) -> AbelianGroup:
    """Cluster K-group coker(B - B^T), cross-checked against coker(1 + Phi)."""
    b = adjacency(q)
    phi = coxeter(q)
    g = cokernel(b - b.T)
    g2 = cokernel(IntMatrix.identity(q.n) + phi)
    if not groups_isomorphic(g, g2):
        raise AssertionError(f"route mismatch: coker(B-B^T)={g}, coker(1+Phi)={g2}")
    return g


def _eligible_arrow(q: Quiver) -> int | None:
    """Index of the first source- or sink-arrow, or None."""
    for k, (s, t) in enumerate(q.arrows):
        if q.in_degree(s) == 0 and q.out_degree(s) == 1:
            return k
        if q.out_degree(t) == 0 and q.in_degree(t) == 1:
            return k
    return None


def remove_vertices(q: Quiver, drop: Iterable[int]) -> tuple[Quiver, dict[int, int]]:
    """Delete vertices and incident arrows; returns new quiver and old->new labels."""
    drop = set(drop)
    keep = [v for v in q.vertices if v not in drop]
    relabel = {v: i + 1 for i, v in enumerate(keep)}
    arrows = tuple((relabel[s], relabel[t]) for s, t in q.arrows if s in relabel and t in relabel)
    return Quiver(len(keep), arrows), relabel


def reduction_step(q: Quiver) -> tuple[Quiver, tuple[int, int], dict[int, int]] | None:
    """Remove the lowest-indexed source-/sink-arrow and both its endpoints."""
    k = _eligible_arrow(q)
    if k is None:
        return None
    s, t = q.arrows[k]
    smaller, relabel = remove_vertices(q, (s, t))
    return smaller, (s, t), relabel


def reduce_source_sink(q: Quiver) -> tuple[Quiver, list[tuple[int, int]]]:
    """Repeatedly cut off source-/sink-arrows together with both endpoints.

    The lowest-indexed eligible arrow is taken at each step.  The trace lists
    removed arrows in the labels of the input quiver.
    """
    labels = list(q.vertices)  # labels[new-1] = original vertex
    trace = []
    while (step := reduction_step(q)) is not None:
        q, (s, t), relabel = step
        trace.append((labels[s - 1], labels[t - 1]))
        labels = [labels[old - 1] for old in sorted(relabel, key=relabel.get)]
    return q, trace


def build_example_family(r: int, m: Sequence[int]) -> Quiver:
    """Quiver whose cluster K-group is Z^r + sum (Z/m_i)^2.

    Vertex 1 -> 2 is the source-arrow; vertex 2 feeds r extra vertices and
    the left vertex a_i of each multiple Kronecker a_i => b_i (m_i arrows).
    """
    m = [int(x) for x in m]
    if r < 0 or any(x < 1 for x in m):
        raise ValueError("r must be >= 0 and multiplicities >= 1")
    if any(b % a for a, b in zip(m, m[1:])):
        raise ValueError(f"multiplicities {m} do not form a divisibility chain")
    arrows = [(1, 2)]
    nxt = 3
    for _ in range(r):
        arrows.append((2, nxt))
        nxt += 1
    for mi in m:
        a, b = nxt, nxt + 1
        nxt += 2
        arrows.append((2, a))
        arrows.extend([(a, b)] * mi)
    return Quiver(nxt - 1, tuple(arrows))


# --------------------------------------------------------------------------
# Dynkin quivers


@dataclass(frozen=True)
class DynkinType:
    family: str
    n: int

    def __post_init__(self):
        fam = self.family.upper()
        object.__setattr__(self, "family", fam)
        ok = (fam == "A" and self.n >= 1) or (fam == "D" and self.n >= 4) or (fam == "E" and self.n in (6, 7, 8))
        if not ok:
            raise ValueError(f"invalid Dynkin type {fam}_{self.n}")

    def __str__(self):
        return f"{self.family}{self.n}"

    @property
    def positive_roots(self) -> int:
        if self.family == "A":
            return self.n * (self.n + 1) // 2
        if self.family == "D":
            return self.n * (self.n - 1)
        return {6: 36, 7: 63, 8: 120}[self.n]

    @property
    def coxeter_number(self) -> int:
        if self.family == "A":
            return self.n + 1
        if self.family == "D":
            return 2 * (self.n - 1)
        return {6: 12, 7: 18, 8: 30}[self.n]


def dynkin_edges(t: DynkinType) -> list[tuple[int, int]]:
    """Edges (i, j) with i < j of the documented vertex numbering.

    A_n: chain 1-2-...-n.  D_n: fork vertices 1 and 2 attached to 3, then the
    chain 3-4-...-n.  E_n: chain 1-...-(n-1) with vertex n attached to 3.
    """
    n = t.n
    if t.family == "A":
        return [(i, i + 1) for i in range(1, n)]
    if t.family == "D":
        return [(1, 3), (2, 3)] + [(i, i + 1) for i in range(3, n)]
    return [(i, i + 1) for i in range(1, n - 1)] + [(3, n)]


def dynkin_quiver(t: DynkinType, orientation: Sequence[bool] | None = None) -> Quiver:
    """Dynkin quiver; by default every arrow points to the higher index.

    ``orientation[k]`` True reverses the k-th edge of :func:`dynkin_edges`.
    """
    edges = dynkin_edges(t)
    if orientation is None:
        orientation = [False] * len(edges)
    if len(orientation) != len(edges):
        raise ValueError("orientation length mismatch")
    arrows = tuple((j, i) if flip else (i, j) for (i, j), flip in zip(edges, orientation))
    return Quiver(t.n, arrows)


def all_orientations(t: DynkinType):
    for flips in product((False, True), repeat=len(dynkin_edges(t))):
        yield dynkin_quiver(t, flips)


def dynkin_type(q: Quiver) -> DynkinType | None:
    """Recognize the underlying graph as a connected simply-laced Dynkin diagram."""
    if q.n == 0:
        return None
    edges = {tuple(sorted(a)) for a in q.arrows}
    if len(edges) != len(q.arrows) or len(edges) != q.n - 1:
        return None
    nbrs = {v: set() for v in q.vertices}
    for i, j in edges:
        nbrs[i].add(j)
        nbrs[j].add(i)
    seen, stack = {1}, [1]
    while stack:
        for w in nbrs[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    if len(seen) != q.n:
        return None
    branch = [v for v in q.vertices if len(nbrs[v]) >= 3]
    if not branch:
        return DynkinType("A", q.n)
    if len(branch) > 1 or len(nbrs[branch[0]]) > 3:
        return None
    c = branch[0]
    arms = []
    for start in nbrs[c]:
        length, prev, cur = 1, c, start
        while True:
            nxt = [w for w in nbrs[cur] if w != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    arms.sort()
    if arms[0] == 1 and arms[1] == 1:
        return DynkinType("D", q.n)
    if arms[0] == 1 and arms[1] == 2 and arms[2] in (2, 3, 4):
        return DynkinType("E", q.n)
    return None
