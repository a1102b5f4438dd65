"""Brute-force Hom dimensions from explicit quiver representations.

Independent of knitting: indecomposables come from positive roots of the
Tits form realized by random integer matrices, kept only if End = k.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product

from .quiver import Quiver
from .zlinalg import IntMatrix


@dataclass(frozen=True)
class Representation:
    quiver: Quiver
    dims: tuple[int, ...]
    maps: tuple[IntMatrix, ...]  # one (dim t) x (dim s) matrix per arrow s -> t


def tits_form(q: Quiver, x) -> int:
    return sum(v * v for v in x) - sum(x[s - 1] * x[t - 1] for s, t in q.arrows)


def positive_roots(q: Quiver, bound: int = 3) -> list[tuple[int, ...]]:
    return [x for x in product(range(bound + 1), repeat=q.n) if any(x) and tits_form(q, x) == 1]


def random_representation(q: Quiver, dims, rng: random.Random, spread: int = 3) -> Representation:
    maps = []
    for s, t in q.arrows:
        rows = [[rng.randint(-spread, spread) for _ in range(dims[s - 1])] for _ in range(dims[t - 1])]
        maps.append(IntMatrix.from_rows(rows, dims[s - 1]))
    return Representation(q, tuple(dims), tuple(maps))


def hom_dim(m: Representation, n: Representation) -> int:
    """Nullity of the linear system N_a f_s = f_t M_a over all arrows a: s -> t."""
    q = m.quiver
    offset = {}
    nvar = 0
    for v in q.vertices:
        offset[v] = nvar
        nvar += n.dims[v - 1] * m.dims[v - 1]
    if nvar == 0:
        return 0

    def var(v, i, j):  # entry (i, j) of f_v : M_v -> N_v
        return offset[v] + i * m.dims[v - 1] + j

    rows = []
    for k, (s, t) in enumerate(q.arrows):
        ma, na = m.maps[k], n.maps[k]
        for i in range(n.dims[t - 1]):
            for j in range(m.dims[s - 1]):
                row = [0] * nvar
                for l in range(n.dims[s - 1]):
                    row[var(s, l, j)] += na[i, l]
                for l in range(m.dims[t - 1]):
                    row[var(t, i, l)] -= ma[l, j]
                if any(row):
                    rows.append(row)
    if not rows:
        return nvar
    return nvar - IntMatrix.from_rows(rows, nvar).rank()


def brick_representations(q: Quiver, rng: random.Random, bound: int = 3, tries: int = 50) -> dict:
    """One representation with End = k for every positive root."""
    reps = {}
    for x in positive_roots(q, bound):
        for _ in range(tries):
            rep = random_representation(q, x, rng)
            if hom_dim(rep, rep) == 1:
                reps[x] = rep
                break
        else:
            raise RuntimeError(f"no brick found with dimension vector {x}")
    return reps
