"""Integer linear algebra for finite abelian groups given by tables.

Only what the linear cochain solver needs: a presentation Z^k/R of an abelian
table group, and an integer kernel basis by unimodular column reduction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .groups import FiniteGroup


@dataclass(frozen=True)
class Presentation:
    """A = Z^k / R with generators ``gens``; ``coords[a]`` is one preimage of a."""

    group: FiniteGroup
    gens: tuple[int, ...]
    coords: tuple[tuple[int, ...], ...]
    relations: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.gens)

    def evaluate(self, vec: Sequence[int]) -> int:
        g = self.group
        acc = 0
        for s, c in zip(self.gens, vec):
            p = s if c >= 0 else g.inv[s]
            for _ in range(abs(c) % g.element_orders[s]):
                acc = g.mul[acc][p]
        return acc

    def matrix_of(self, endo: Sequence[int]) -> list[list[int]]:
        """Integer lift of an endomorphism: column i is coords[endo(gen_i)]."""
        k = self.rank
        cols = [self.coords[endo[s]] for s in self.gens]
        return [[cols[j][i] for j in range(k)] for i in range(k)]


def present(g: FiniteGroup) -> Presentation:
    gens = g.generators
    k = len(gens)
    coords: list = [None] * g.order
    coords[0] = (0,) * k
    frontier = [0]
    while frontier:
        nxt = []
        for a in frontier:
            for i, s in enumerate(gens):
                c = g.mul[a][s]
                if coords[c] is None:
                    v = list(coords[a])
                    v[i] += 1
                    coords[c] = tuple(v)
                    nxt.append(c)
        frontier = nxt
    rels = set()
    for a in g.elements:
        for i, s in enumerate(gens):
            v = list(coords[a])
            v[i] += 1
            r = tuple(x - y for x, y in zip(v, coords[g.mul[a][s]]))
            if any(r):
                rels.add(r)
    return Presentation(g, gens, tuple(coords), tuple(sorted(rels)))


def integer_kernel(rows: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """Basis of {v ∈ Z^ncols : A v = 0} by column reduction with a tracked transform."""
    a = [list(r) for r in rows]
    u = [[int(i == j) for j in range(ncols)] for i in range(ncols)]  # columns of u are tracked
    nrows = len(a)

    def col_op(dst: int, src: int, k: int) -> None:
        # column dst -= k * column src
        if k == 0:
            return
        for r in a:
            r[dst] -= k * r[src]
        for r in u:
            r[dst] -= k * r[src]

    def swap(i: int, j: int) -> None:
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in u:
            r[i], r[j] = r[j], r[i]

    pivot_col = 0
    for row in range(nrows):
        if pivot_col >= ncols:
            break
        while True:
            nz = [c for c in range(pivot_col, ncols) if a[row][c] != 0]
            if not nz:
                break
            best = min(nz, key=lambda c: abs(a[row][c]))
            if best != pivot_col:
                swap(best, pivot_col)
            p = a[row][pivot_col]
            done = True
            for c in range(pivot_col + 1, ncols):
                if a[row][c]:
                    col_op(c, pivot_col, a[row][c] // p)
                    if a[row][c]:
                        done = False
            if done:
                break
        if any(a[row][c] for c in range(pivot_col, ncols)):
            pivot_col += 1
    return [[u[i][c] for i in range(ncols)] for c in range(pivot_col, ncols)]
