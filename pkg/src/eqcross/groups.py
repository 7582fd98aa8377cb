"""Finite groups given by multiplication tables, Γ-actions and the usual
subgroup/quotient/automorphism machinery.

Elements are dense indices ``0..n-1`` and the identity is always index 0.
Every map between groups is a plain tuple of indices.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Iterator, Optional, Sequence

from .errors import PreconditionError, Report, SearchLimitError, StructuralError

Table = tuple[tuple[int, ...], ...]

AUT_BOUND = 24


def _freeze(table: Iterable[Iterable[int]]) -> Table:
    return tuple(tuple(int(v) for v in row) for row in table)


@dataclass(frozen=True)
class FiniteGroup:
    mul: Table
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "mul", _freeze(self.mul))
        n = len(self.mul)
        if n == 0:
            raise StructuralError("group must have at least one element")
        for row in self.mul:
            if len(row) != n:
                raise StructuralError(f"multiplication table is not {n}x{n}")
            for v in row:
                if not 0 <= v < n:
                    raise StructuralError(f"table entry {v} out of range 0..{n - 1}")

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name or '?'}, order={self.order})"

    @property
    def order(self) -> int:
        return len(self.mul)

    @property
    def identity(self) -> int:
        return 0

    @property
    def elements(self) -> range:
        return range(len(self.mul))

    @cached_property
    def inv(self) -> tuple[int, ...]:
        out = []
        for x, row in enumerate(self.mul):
            try:
                out.append(row.index(0))
            except ValueError:
                raise StructuralError(f"element {x} has no right inverse") from None
        return tuple(out)

    def m(self, x: int, y: int) -> int:
        return self.mul[x][y]

    def prod(self, *xs: int) -> int:
        acc = 0
        for x in xs:
            acc = self.mul[acc][x]
        return acc

    def conj(self, x: int, y: int) -> int:
        """x y x⁻¹"""
        return self.mul[self.mul[x][y]][self.inv[x]]

    @cached_property
    def element_orders(self) -> tuple[int, ...]:
        out = []
        for x in self.elements:
            k, acc = 1, x
            while acc != 0:
                acc = self.mul[acc][x]
                k += 1
            out.append(k)
        return tuple(out)

    @cached_property
    def is_abelian(self) -> bool:
        return all(self.mul[x][y] == self.mul[y][x] for x in self.elements for y in range(x))

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """Greedy generating set: scan indices, keep those outside the span so far."""
        gens: list[int] = []
        span = {0}
        for x in self.elements:
            if x not in span:
                gens.append(x)
                span = set(closure(self, gens))
        return tuple(gens)


def closure(g: FiniteGroup, elems: Iterable[int]) -> tuple[int, ...]:
    """Sorted subgroup generated by ``elems``."""
    gens = [e for e in set(elems) if e != 0]
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for a in frontier:
            for s in gens:
                c = g.mul[a][s]
                if c not in seen:
                    seen.add(c)
                    nxt.append(c)
        frontier = nxt
    return tuple(sorted(seen))


def validate_group(g: FiniteGroup) -> Report:
    """Check identity, invertibility and associativity, in that order."""
    n = g.order
    mul = g.mul
    for x in range(n):
        if mul[0][x] != x or mul[x][0] != x:
            return Report.failed("identity", (x,), "0 is not a two-sided identity")
    full = set(range(n))
    for x in range(n):
        row = mul[x]
        col = {mul[y][x] for y in range(n)}
        has_inv = any(row[y] == 0 and mul[y][x] == 0 for y in range(n))
        if not has_inv or set(row) != full or col != full:
            return Report.failed("inverse", (x,), "no unique two-sided inverse")
    for x in range(n):
        mx = mul[x]
        for y in range(n):
            xy = mx[y]
            my = mul[y]
            mxy = mul[xy]
            for z in range(n):
                if mxy[z] != mx[my[z]]:
                    return Report.failed("associativity", (x, y, z))
    return Report.passed()


# ---------------------------------------------------------------------------
# homomorphisms


@dataclass(frozen=True)
class GroupHom:
    src: FiniteGroup
    dst: FiniteGroup
    map: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "map", tuple(int(v) for v in self.map))
        if len(self.map) != self.src.order:
            raise StructuralError(f"map has length {len(self.map)}, source has order {self.src.order}")
        if any(not 0 <= v < self.dst.order for v in self.map):
            raise StructuralError("map value out of range of target group")

    def __call__(self, x: int) -> int:
        return self.map[x]

    def __repr__(self) -> str:
        return f"GroupHom({self.src.name or self.src.order}->{self.dst.name or self.dst.order}, {list(self.map)})"

    def then(self, other: "GroupHom") -> "GroupHom":
        """``other ∘ self``"""
        if other.src != self.dst:
            raise StructuralError("homomorphisms are not composable")
        return GroupHom(self.src, other.dst, tuple(other.map[v] for v in self.map))

    @classmethod
    def identity(cls, g: FiniteGroup) -> "GroupHom":
        return cls(g, g, tuple(g.elements))

    @classmethod
    def trivial(cls, src: FiniteGroup, dst: FiniteGroup) -> "GroupHom":
        return cls(src, dst, (0,) * src.order)

    @property
    def is_injective(self) -> bool:
        return len(set(self.map)) == len(self.map)

    @property
    def is_surjective(self) -> bool:
        return len(set(self.map)) == self.dst.order


def check_hom(f: GroupHom) -> Report:
    s, t, m = f.src, f.dst, f.map
    for x in s.elements:
        for y in s.elements:
            if m[s.mul[x][y]] != t.mul[m[x]][m[y]]:
                return Report.failed("homomorphism", (x, y))
    return Report.passed()


# ---------------------------------------------------------------------------
# Γ-actions


@dataclass(frozen=True)
class GammaAction:
    gamma: FiniteGroup
    target: FiniteGroup
    act: Table

    def __post_init__(self):
        object.__setattr__(self, "act", _freeze(self.act))
        if len(self.act) != self.gamma.order:
            raise StructuralError(f"action needs {self.gamma.order} rows, got {len(self.act)}")
        n = self.target.order
        for row in self.act:
            if len(row) != n or any(not 0 <= v < n for v in row):
                raise StructuralError("action row is not a map of the target group")

    def __call__(self, s: int, x: int) -> int:
        return self.act[s][x]

    @classmethod
    def trivial(cls, gamma: FiniteGroup, target: FiniteGroup) -> "GammaAction":
        row = tuple(target.elements)
        return cls(gamma, target, (row,) * gamma.order)

    @cached_property
    def is_trivial(self) -> bool:
        return all(row == tuple(range(self.target.order)) for row in self.act)


def validate_action(a: GammaAction) -> Report:
    g, t, act = a.gamma, a.target, a.act
    if act[0] != tuple(t.elements):
        x = next(x for x in t.elements if act[0][x] != x)
        return Report.failed("action-unit", (0, x))
    for s in g.elements:
        row = act[s]
        if len(set(row)) != t.order:
            return Report.failed("action-bijective", (s,))
        for x in t.elements:
            for y in t.elements:
                if row[t.mul[x][y]] != t.mul[row[x]][row[y]]:
                    return Report.failed("action-automorphism", (s, x, y))
    for s in g.elements:
        for u in g.elements:
            su = g.mul[s][u]
            for x in t.elements:
                if act[su][x] != act[s][act[u][x]]:
                    return Report.failed("action-composition", (s, u, x))
    return Report.passed()


@dataclass(frozen=True)
class GammaGroup:
    group: FiniteGroup
    action: GammaAction

    def __post_init__(self):
        if self.action.target != self.group:
            raise StructuralError("action target differs from the group")

    @property
    def gamma(self) -> FiniteGroup:
        return self.action.gamma

    @property
    def order(self) -> int:
        return self.group.order

    @property
    def name(self) -> str:
        return self.group.name

    def __repr__(self) -> str:
        kind = "trivial" if self.action.is_trivial else "nontrivial"
        return f"GammaGroup({self.group.name or self.order}, |Γ|={self.gamma.order}, {kind})"

    def act(self, s: int, x: int) -> int:
        return self.action.act[s][x]

    @classmethod
    def trivial(cls, g: FiniteGroup, gamma: Optional[FiniteGroup] = None) -> "GammaGroup":
        gamma = gamma if gamma is not None else cyclic(1)
        return cls(g, GammaAction.trivial(gamma, g))

    @classmethod
    def from_automorphisms(cls, g: FiniteGroup, gamma: FiniteGroup,
                           image: Callable[[int], Sequence[int]]) -> "GammaGroup":
        """Build the action from a function σ ↦ permutation of g."""
        return cls(g, GammaAction(gamma, g, tuple(tuple(image(s)) for s in gamma.elements)))


def validate_gamma_group(g: GammaGroup) -> Report:
    r = validate_group(g.group)
    return r if not r else validate_action(g.action)


def validate_gamma_hom(f: GroupHom, act_src: GammaAction, act_dst: GammaAction) -> Report:
    """f is a homomorphism and f(σx) = σf(x)."""
    if act_src.gamma != act_dst.gamma:
        raise StructuralError("actions are over different Γ")
    if f.src != act_src.target or f.dst != act_dst.target:
        raise StructuralError("homomorphism does not match the acted-on groups")
    r = check_hom(f)
    if not r:
        return r
    for s in act_src.gamma.elements:
        for x in f.src.elements:
            if f.map[act_src.act[s][x]] != act_dst.act[s][f.map[x]]:
                return Report.failed("gamma-equivariance", (s, x))
    return Report.passed()


def is_gamma_hom(f: GroupHom, src: GammaGroup, dst: GammaGroup) -> Report:
    return validate_gamma_hom(f, src.action, dst.action)


# ---------------------------------------------------------------------------
# standard constructions


def cyclic(n: int) -> FiniteGroup:
    return FiniteGroup(tuple(tuple((a + b) % n for b in range(n)) for a in range(n)), name=f"Z{n}")


def direct_product(g: FiniteGroup, h: FiniteGroup, name: str = "") -> FiniteGroup:
    """Element (a, b) has index a*|h| + b."""
    m = h.order
    tab = []
    for x in range(g.order * m):
        a, b = divmod(x, m)
        tab.append(tuple(g.mul[a][c] * m + h.mul[b][d] for c in range(g.order) for d in range(m)))
    return FiniteGroup(tab, name=name or f"{g.name}x{h.name}")


def from_permutations(perms: Sequence[Sequence[int]], name: str = "") -> tuple[FiniteGroup, tuple[tuple[int, ...], ...]]:
    """Group generated by the given permutations, elements sorted lexicographically.

    Product is composition ``(pq)(i) = p(q(i))``.
    """
    perms = [tuple(p) for p in perms]
    deg = len(perms[0]) if perms else 1
    ident = tuple(range(deg))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for q in perms:
                r = tuple(p[i] for i in q)
                if r not in seen:
                    seen.add(r)
                    nxt.append(r)
        frontier = nxt
    elems = sorted(seen)
    index = {p: i for i, p in enumerate(elems)}
    tab = tuple(tuple(index[tuple(p[i] for i in q)] for q in elems) for p in elems)
    return FiniteGroup(tab, name=name), tuple(elems)


def symmetric(n: int) -> FiniteGroup:
    g, _ = from_permutations(list(itertools.permutations(range(n))) or [()], name=f"S{n}")
    return g


def dihedral(n: int) -> FiniteGroup:
    """Dihedral group of order 2n as symmetries of an n-gon."""
    if n == 1:
        return FiniteGroup(cyclic(2).mul, name="D1")
    if n == 2:
        return FiniteGroup(direct_product(cyclic(2), cyclic(2)).mul, name="D2")
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((-i) % n for i in range(n))
    g, _ = from_permutations([rot, ref], name=f"D{2 * n}")
    return g


def quaternion() -> FiniteGroup:
    # regular representation of Q8 on {±1, ±i, ±j, ±k}
    names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    base = {("1", u): u for u in "1ijk"}
    base.update({(u, "1"): u for u in "1ijk"})
    base.update({("i", "i"): "-1", ("j", "j"): "-1", ("k", "k"): "-1",
                 ("i", "j"): "k", ("j", "k"): "i", ("k", "i"): "j",
                 ("j", "i"): "-k", ("k", "j"): "-i", ("i", "k"): "-j"})

    def mult(a: str, b: str) -> str:
        sa, ua = (a[0] == "-"), a.lstrip("-")
        sb, ub = (b[0] == "-"), b.lstrip("-")
        r = base[(ua, ub)]
        neg = sa ^ sb ^ (r[0] == "-")
        return ("-" if neg else "") + r.lstrip("-")

    idx = {s: i for i, s in enumerate(names)}
    return FiniteGroup(tuple(tuple(idx[mult(a, b)] for b in names) for a in names), name="Q8")


# ---------------------------------------------------------------------------
# subgroups and quotients


def kernel(f: GroupHom) -> tuple[int, ...]:
    return tuple(x for x in f.src.elements if f.map[x] == 0)


def image(f: GroupHom) -> tuple[int, ...]:
    return tuple(sorted(set(f.map)))


def center(g: FiniteGroup) -> tuple[int, ...]:
    return tuple(x for x in g.elements if all(g.mul[x][y] == g.mul[y][x] for y in g.elements))


def is_subgroup(g: FiniteGroup, elems: Iterable[int]) -> bool:
    s = set(elems)
    return 0 in s and all(g.mul[a][g.inv[b]] in s for a in s for b in s)


def normality_witness(g: FiniteGroup, elems: Iterable[int]) -> Optional[tuple[int, int]]:
    """(x, n) with x n x⁻¹ outside the subgroup, or None if normal."""
    s = set(elems)
    for x in g.elements:
        for n in sorted(s):
            if g.conj(x, n) not in s:
                return (x, n)
    return None


def subgroup(g: FiniteGroup, elems: Iterable[int], name: str = "") -> tuple[FiniteGroup, GroupHom]:
    """Relabel a subgroup on 0..k-1 in increasing index order, with its inclusion."""
    elems = tuple(sorted(set(elems)))
    if not is_subgroup(g, elems):
        raise PreconditionError("not a subgroup", elems)
    pos = {e: i for i, e in enumerate(elems)}
    tab = tuple(tuple(pos[g.mul[a][b]] for b in elems) for a in elems)
    h = FiniteGroup(tab, name=name)
    return h, GroupHom(h, g, elems)


@dataclass(frozen=True)
class Quotient:
    group: FiniteGroup
    projection: GroupHom
    reps: tuple[int, ...]


def quotient(g: FiniteGroup, normal: Iterable[int], name: str = "") -> Quotient:
    """g/N on cosets ordered by their minimal element, which is the representative."""
    n_set = tuple(sorted(set(normal)))
    if not is_subgroup(g, n_set):
        raise PreconditionError("not a subgroup", n_set)
    w = normality_witness(g, n_set)
    if w is not None:
        raise PreconditionError("subgroup is not normal", w)
    coset_of = [-1] * g.order
    reps: list[int] = []
    for x in g.elements:
        if coset_of[x] < 0:
            k = len(reps)
            reps.append(x)
            for nn in n_set:
                coset_of[g.mul[x][nn]] = k
    tab = tuple(tuple(coset_of[g.mul[a][b]] for b in reps) for a in reps)
    q = FiniteGroup(tab, name=name)
    return Quotient(q, GroupHom(g, q, tuple(coset_of)), tuple(reps))


# ---------------------------------------------------------------------------
# homomorphism search


def _extend_from_generators(g: FiniteGroup, h: FiniteGroup, gens: Sequence[int],
                            imgs: Sequence[int]) -> Optional[tuple[int, ...]]:
    """The homomorphism sending gens to imgs, or None if none exists."""
    m = [-1] * g.order
    m[0] = 0
    frontier = [0]
    while frontier:
        nxt = []
        for a in frontier:
            for s, t in zip(gens, imgs):
                c = g.mul[a][s]
                v = h.mul[m[a]][t]
                if m[c] < 0:
                    m[c] = v
                    nxt.append(c)
                elif m[c] != v:
                    return None
        frontier = nxt
    if any(v < 0 for v in m):
        raise StructuralError("generators do not generate the group")
    return tuple(m)


def homomorphisms(g: FiniteGroup, h: FiniteGroup, injective: bool = False,
                  surjective: bool = False) -> Iterator[GroupHom]:
    """All homomorphisms g → h, in lexicographic order of generator images."""
    gens = g.generators
    ords_g = g.element_orders
    ords_h = h.element_orders
    cands = []
    for s in gens:
        if injective:
            cands.append([t for t in h.elements if ords_h[t] == ords_g[s]])
        else:
            cands.append([t for t in h.elements if ords_g[s] % ords_h[t] == 0])
    found = []
    for imgs in itertools.product(*cands):
        m = _extend_from_generators(g, h, gens, imgs)
        if m is None:
            continue
        if injective and len(set(m)) != g.order:
            continue
        if surjective and len(set(m)) != h.order:
            continue
        found.append(m)
    for m in sorted(found):
        yield GroupHom(g, h, m)


def isomorphisms(g: FiniteGroup, h: FiniteGroup) -> Iterator[GroupHom]:
    if g.order != h.order or sorted(g.element_orders) != sorted(h.element_orders):
        return iter(())
    return homomorphisms(g, h, injective=True)


def is_isomorphic(g: FiniteGroup, h: FiniteGroup) -> bool:
    return next(iter(isomorphisms(g, h)), None) is not None


def compose_perms(f: Sequence[int], h: Sequence[int]) -> tuple[int, ...]:
    """(f∘h)(x) = f(h(x))"""
    return tuple(f[v] for v in h)


@dataclass(frozen=True)
class AutomorphismGroup:
    group: FiniteGroup
    perms: tuple[tuple[int, ...], ...]
    of: FiniteGroup

    @cached_property
    def index(self) -> dict[tuple[int, ...], int]:
        return {p: i for i, p in enumerate(self.perms)}


def automorphism_group(g: FiniteGroup, bound: int = AUT_BOUND) -> AutomorphismGroup:
    """Aut(g) with product (fh)(x) = f(h(x)); automorphisms sorted lexicographically."""
    if g.order > bound:
        raise SearchLimitError("automorphism group", g.order, bound)
    perms = sorted(f.map for f in isomorphisms(g, g))
    idx = {p: i for i, p in enumerate(perms)}
    tab = tuple(tuple(idx[compose_perms(p, q)] for q in perms) for p in perms)
    return AutomorphismGroup(FiniteGroup(tab, name=f"Aut({g.name})" if g.name else ""), tuple(perms), g)


def gamma_action_on_aut(b: GammaGroup, aut: Optional[AutomorphismGroup] = None) -> GammaAction:
    """(σf)(x) = σ·f(σ⁻¹·x) on Aut(b)."""
    aut = aut or automorphism_group(b.group)
    gam = b.gamma
    rows = []
    for s in gam.elements:
        s_inv = gam.inv[s]
        act_s, act_si = b.action.act[s], b.action.act[s_inv]
        row = []
        for f in aut.perms:
            p = tuple(act_s[f[act_si[x]]] for x in b.group.elements)
            row.append(aut.index[p])
        rows.append(tuple(row))
    return GammaAction(gam, aut.group, tuple(rows))


def aut_gamma_group(b: GammaGroup, aut: Optional[AutomorphismGroup] = None) -> tuple[GammaGroup, AutomorphismGroup]:
    aut = aut or automorphism_group(b.group)
    return GammaGroup(aut.group, gamma_action_on_aut(b, aut)), aut


def inner_hom(b: GammaGroup, aut: Optional[AutomorphismGroup] = None) -> GroupHom:
    """μ: B → Aut B, b ↦ conjugation by b."""
    aut = aut or automorphism_group(b.group)
    g = b.group
    m = tuple(aut.index[tuple(g.conj(x, y) for y in g.elements)] for x in g.elements)
    return GroupHom(g, aut.group, m)
