"""Normalized equivariant 2-cochains over a Γ-equivariant Π-module, and H²_Γ.

A 2-cochain is a pair of tables ``fQQ: Π×Π → A`` and ``fQG: Π×Γ → A``.
The coefficient group A is abelian but stored as an ordinary table, so
"+" below means ``A.mul`` and "−" means ``A.inv``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Sequence

from .errors import PreconditionError, Report, SearchLimitError, StructuralError
from .groups import GammaGroup, GroupHom, Table, _freeze, validate_action, validate_gamma_group
from .lattice import integer_kernel, present

BRUTE_LIMIT = 10 ** 6
Z2_LIMIT = 10 ** 6


@dataclass(frozen=True)
class EquivariantModule:
    """Abelian Γ-group A with a compatible left action of the Γ-group Π."""

    A: GammaGroup
    Pi: GammaGroup
    paction: Table

    def __post_init__(self):
        object.__setattr__(self, "paction", _freeze(self.paction))
        if self.A.gamma != self.Pi.gamma:
            raise StructuralError("A and Π are over different Γ")
        if len(self.paction) != self.Pi.order or any(len(r) != self.A.order for r in self.paction):
            raise StructuralError("Π-action table has wrong shape")

    @property
    def gamma(self):
        return self.A.gamma

    def add(self, a: int, b: int) -> int:
        return self.A.group.mul[a][b]

    def neg(self, a: int) -> int:
        return self.A.group.inv[a]

    def sub(self, a: int, b: int) -> int:
        return self.A.group.mul[a][self.A.group.inv[b]]

    def gact(self, s: int, a: int) -> int:
        return self.A.action.act[s][a]

    def pact(self, x: int, a: int) -> int:
        return self.paction[x][a]


def validate_module(mod: EquivariantModule) -> Report:
    r = validate_gamma_group(mod.A)
    if not r:
        return r
    r = validate_gamma_group(mod.Pi)
    if not r:
        return r
    a = mod.A.group
    for x in a.elements:
        for y in range(x):
            if a.mul[x][y] != a.mul[y][x]:
                return Report.failed("abelian", (x, y))
    from .groups import GammaAction
    r = validate_action(GammaAction(mod.Pi.group, a, mod.paction))
    if not r:
        return Report.failed("module-" + r.law, r.witness)
    for s in mod.gamma.elements:
        for x in mod.Pi.group.elements:
            sx = mod.Pi.act(s, x)
            for v in a.elements:
                if mod.gact(s, mod.pact(x, v)) != mod.pact(sx, mod.gact(s, v)):
                    return Report.failed("module-compatibility", (s, x, v))
    return Report.passed()


def pullback_module(mod: EquivariantModule, hom: GroupHom, src: GammaGroup) -> EquivariantModule:
    """Restrict the Π-action along a Γ-homomorphism src → Π."""
    if hom.dst != mod.Pi.group or hom.src != src.group:
        raise StructuralError("homomorphism does not land in the module's Π")
    return EquivariantModule(mod.A, src, tuple(mod.paction[hom.map[x]] for x in src.group.elements))


# ---------------------------------------------------------------------------
# cochains


@dataclass(frozen=True)
class Cochain2:
    mod: EquivariantModule = field(compare=False, repr=False)
    fQQ: Table
    fQG: Table

    def __post_init__(self):
        object.__setattr__(self, "fQQ", _freeze(self.fQQ))
        object.__setattr__(self, "fQG", _freeze(self.fQG))
        n, g = self.mod.Pi.order, self.mod.gamma.order
        if len(self.fQQ) != n or any(len(r) != n for r in self.fQQ):
            raise StructuralError("fQQ must be |Π|x|Π|")
        if len(self.fQG) != n or any(len(r) != g for r in self.fQG):
            raise StructuralError("fQG must be |Π|x|Γ|")

    @property
    def key(self) -> tuple[int, ...]:
        return tuple(itertools.chain(*self.fQQ, *self.fQG))

    @classmethod
    def zero(cls, mod: EquivariantModule) -> "Cochain2":
        n, g = mod.Pi.order, mod.gamma.order
        return cls(mod, ((0,) * n,) * n, ((0,) * g,) * n)

    def __add__(self, other: "Cochain2") -> "Cochain2":
        add = self.mod.add
        return Cochain2(self.mod,
                        tuple(tuple(add(a, b) for a, b in zip(r, s)) for r, s in zip(self.fQQ, other.fQQ)),
                        tuple(tuple(add(a, b) for a, b in zip(r, s)) for r, s in zip(self.fQG, other.fQG)))

    def __neg__(self) -> "Cochain2":
        neg = self.mod.neg
        return Cochain2(self.mod, tuple(tuple(neg(a) for a in r) for r in self.fQQ),
                        tuple(tuple(neg(a) for a in r) for r in self.fQG))

    def __sub__(self, other: "Cochain2") -> "Cochain2":
        return self + (-other)

    def map_values(self, f: Sequence[int], mod: EquivariantModule) -> "Cochain2":
        """Push forward along a coefficient map given as a table."""
        return Cochain2(mod, tuple(tuple(f[a] for a in r) for r in self.fQQ),
                        tuple(tuple(f[a] for a in r) for r in self.fQG))

    def pull_back(self, along: Sequence[int], mod: EquivariantModule) -> "Cochain2":
        """Precompose the Π-arguments with ``along``: (r, s) ↦ f(along r, along s)."""
        n = len(along)
        return Cochain2(mod, tuple(tuple(self.fQQ[along[r]][along[s]] for s in range(n)) for r in range(n)),
                        tuple(self.fQG[along[r]] for r in range(n)))


@dataclass(frozen=True)
class Cochain1:
    mod: EquivariantModule = field(compare=False, repr=False)
    g: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "g", tuple(self.g))
        if len(self.g) != self.mod.Pi.order:
            raise StructuralError("1-cochain must have |Π| entries")
        if self.g[0] != 0:
            raise PreconditionError("1-cochain is not normalized", (0,))


def is_normalized(f: Cochain2) -> Report:
    for x in range(len(f.fQQ)):
        if f.fQQ[x][0] != 0:
            return Report.failed("normalization", ("QQ", x, 0))
        if f.fQQ[0][x] != 0:
            return Report.failed("normalization", ("QQ", 0, x))
        if f.fQG[x][0] != 0:
            return Report.failed("normalization", ("QG", x, 0))
    return Report.passed()


def is_cocycle2(f: Cochain2) -> Report:
    """Normalization, then Γ-composition, Γ-naturality and associativity identities.

    Γ-composition:  τ·f(x,σ) + f(σx,τ) = f(x,τσ)
    Γ-naturality:   f(x,σ) + (σx)·f(y,σ) + f(σx,σy) = σ·f(x,y) + f(xy,σ)
    associativity:  x·f(y,z) + f(x,yz) = f(x,y) + f(xy,z)
    """
    r = is_normalized(f)
    if not r:
        return r
    mod = f.mod
    P, G = mod.Pi.group, mod.gamma
    add, QQ, QG = mod.add, f.fQQ, f.fQG
    for x in P.elements:
        for s in G.elements:
            sx = mod.Pi.act(s, x)
            for t in G.elements:
                lhs = add(mod.gact(t, QG[x][s]), QG[sx][t])
                if lhs != QG[x][G.mul[t][s]]:
                    return Report.failed("gamma-composition", (x, s, t))
    for s in G.elements:
        for x in P.elements:
            sx = mod.Pi.act(s, x)
            for y in P.elements:
                sy = mod.Pi.act(s, y)
                lhs = add(add(QG[x][s], mod.pact(sx, QG[y][s])), QQ[sx][sy])
                rhs = add(mod.gact(s, QQ[x][y]), QG[P.mul[x][y]][s])
                if lhs != rhs:
                    return Report.failed("gamma-naturality", (x, y, s))
    for x in P.elements:
        for y in P.elements:
            xy = P.mul[x][y]
            for z in P.elements:
                lhs = add(mod.pact(x, QQ[y][z]), QQ[x][P.mul[y][z]])
                rhs = add(QQ[x][y], QQ[xy][z])
                if lhs != rhs:
                    return Report.failed("associativity", (x, y, z))
    return Report.passed()


def coboundary(c: Cochain1) -> Cochain2:
    """δg(x,y) = g(x) + x·g(y) − g(xy);  δg(x,σ) = σ·g(x) − g(σx)."""
    mod, g = c.mod, c.g
    P, G = mod.Pi.group, mod.gamma
    qq = tuple(tuple(mod.sub(mod.add(g[x], mod.pact(x, g[y])), g[P.mul[x][y]]) for y in P.elements)
               for x in P.elements)
    qg = tuple(tuple(mod.sub(mod.gact(s, g[x]), g[mod.Pi.act(s, x)]) for s in G.elements)
               for x in P.elements)
    return Cochain2(mod, qq, qg)


# ---------------------------------------------------------------------------
# the linear system


@dataclass(frozen=True)
class _System:
    """Free normalized slots and the cocycle identities as signed terms.

    Each term is (negate, op, slot) meaning ±ops[op](value[slot]).
    Constraints are grouped by the position of their last slot.
    """

    mod: EquivariantModule
    slots: tuple[tuple, ...]
    ops: tuple[tuple[int, ...], ...]
    constraints: tuple[tuple[tuple[bool, int, int], ...], ...]

    @cached_property
    def by_last(self) -> tuple[tuple[tuple[tuple[bool, int, int], ...], ...], ...]:
        buckets: list[list] = [[] for _ in self.slots]
        for c in self.constraints:
            buckets[max(t[2] for t in c)].append(c)
        return tuple(tuple(b) for b in buckets)

    def to_cochain(self, values: Sequence[int]) -> Cochain2:
        n, g = self.mod.Pi.order, self.mod.gamma.order
        qq = [[0] * n for _ in range(n)]
        qg = [[0] * g for _ in range(n)]
        for (kind, a, b), v in zip(self.slots, values):
            (qq if kind == "QQ" else qg)[a][b] = v
        return Cochain2(self.mod, qq, qg)

    def from_cochain(self, f: Cochain2) -> tuple[int, ...]:
        return tuple((f.fQQ if k == "QQ" else f.fQG)[a][b] for k, a, b in self.slots)


def _build_system(mod: EquivariantModule) -> _System:
    P, G = mod.Pi.group, mod.gamma
    slots = [("QQ", x, y) for x in P.elements if x for y in P.elements if y]
    slots += [("QG", x, s) for x in P.elements for s in G.elements if s]
    pos = {s: i for i, s in enumerate(slots)}
    ops = [mod.A.action.act[s] for s in G.elements] + [mod.paction[x] for x in P.elements]
    ident, gop, pop = 0, (lambda s: s), (lambda x: G.order + x)

    def qq(x, y):
        return pos.get(("QQ", x, y))

    def qg(x, s):
        return pos.get(("QG", x, s))

    seen = set()
    cons = []

    def emit(terms):
        terms = tuple(sorted((neg, op, sl) for neg, op, sl in terms if sl is not None))
        if terms and terms not in seen:
            seen.add(terms)
            cons.append(terms)

    for x in P.elements:
        for y in P.elements:
            for z in P.elements:
                emit([(False, pop(x), qq(y, z)), (False, ident, qq(x, P.mul[y][z])),
                      (True, ident, qq(x, y)), (True, ident, qq(P.mul[x][y], z))])
    for x in P.elements:
        for s in G.elements:
            for t in G.elements:
                emit([(False, gop(t), qg(x, s)), (False, ident, qg(mod.Pi.act(s, x), t)),
                      (True, ident, qg(x, G.mul[t][s]))])
    for s in G.elements:
        for x in P.elements:
            sx = mod.Pi.act(s, x)
            for y in P.elements:
                emit([(False, ident, qg(x, s)), (False, pop(sx), qg(y, s)),
                      (False, ident, qq(sx, mod.Pi.act(s, y))),
                      (True, gop(s), qq(x, y)), (True, ident, qg(P.mul[x][y], s))])
    return _System(mod, tuple(slots), tuple(ops), tuple(cons))


def _holds(sys_: _System, c, vals) -> bool:
    a = sys_.mod.A.group
    mul, inv, ops = a.mul, a.inv, sys_.ops
    acc = 0
    for neg, op, sl in c:
        v = ops[op][vals[sl]]
        acc = mul[acc][inv[v] if neg else v]
    return acc == 0


def _z2_brute(sys_: _System, limit: int) -> list[tuple[int, ...]]:
    n_a = sys_.mod.A.order
    k = len(sys_.slots)
    size = n_a ** k
    if size > limit:
        raise SearchLimitError("2-cochain enumeration", size, limit)
    if k == 0:
        return [()]
    out = []
    vals = [0] * k
    by_last = sys_.by_last

    def rec(i: int) -> None:
        for v in range(n_a):
            vals[i] = v
            if all(_holds(sys_, c, vals) for c in by_last[i]):
                if i + 1 == k:
                    out.append(tuple(vals))
                else:
                    rec(i + 1)
        vals[i] = 0

    rec(0)
    return out


def _span(gens: Sequence[tuple[int, ...]], add, length: int, limit: int) -> list[tuple[int, ...]]:
    zero = (0,) * length
    seen = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for v in frontier:
            for g in gens:
                w = tuple(add(a, b) for a, b in zip(v, g))
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
                    if len(seen) > limit:
                        raise SearchLimitError("cocycle group", len(seen), limit)
        frontier = nxt
    return sorted(seen)


def _z2_linear(sys_: _System, limit: int) -> list[tuple[int, ...]]:
    a = sys_.mod.A.group
    pres = present(a)
    k = pres.rank
    ns, nc = len(sys_.slots), len(sys_.constraints)
    if k == 0 or ns == 0:
        return [(0,) * ns]
    mats = [pres.matrix_of(op) for op in sys_.ops]
    rels = pres.relations
    ncols = ns * k + nc * len(rels)
    rows = []
    for ci, c in enumerate(sys_.constraints):
        block = [[0] * ncols for _ in range(k)]
        for neg, op, sl in c:
            sign = -1 if neg else 1
            mt = mats[op]
            for i in range(k):
                for j in range(k):
                    block[i][sl * k + j] += sign * mt[i][j]
        base = ns * k + ci * len(rels)
        for ri, r in enumerate(rels):
            for i in range(k):
                block[i][base + ri] -= r[i]
        rows.extend(block)
    basis = integer_kernel(rows, ncols)
    gens = []
    for v in basis:
        g = tuple(pres.evaluate(v[sl * k:(sl + 1) * k]) for sl in range(ns))
        if any(g):
            gens.append(g)
    gens = sorted(set(gens))
    return _span(gens, lambda x, y: a.mul[x][y], ns, limit)


@dataclass(frozen=True)
class H2:
    """Z², B², lexicographically minimal class representatives and a lookup."""

    mod: EquivariantModule
    z2: tuple[Cochain2, ...]
    b2: tuple[Cochain2, ...]
    reps: tuple[Cochain2, ...]
    method: str

    @property
    def order(self) -> int:
        return len(self.reps)

    @cached_property
    def _rep_index(self) -> dict[tuple[int, ...], int]:
        return {r.key: i for i, r in enumerate(self.reps)}

    def class_of(self, f: Cochain2) -> int:
        """Index into ``reps`` of the class containing the cocycle f."""
        best = min((f + b).key for b in self.b2)
        try:
            return self._rep_index[best]
        except KeyError:
            raise PreconditionError("not a cocycle of this module") from None

    def representative(self, f: Cochain2) -> Cochain2:
        return self.reps[self.class_of(f)]


def enumerate_z2(mod: EquivariantModule, method: str = "auto", limit: int = BRUTE_LIMIT) -> list[Cochain2]:
    sys_ = _build_system(mod)
    return [sys_.to_cochain(v) for v in _z2_values(sys_, method, limit)]


def _z2_values(sys_: _System, method: str, limit: int) -> list[tuple[int, ...]]:
    if method == "brute":
        return _z2_brute(sys_, limit)
    if method == "linear":
        return _z2_linear(sys_, Z2_LIMIT)
    if method != "auto":
        raise ValueError(f"unknown method {method!r}")
    if sys_.mod.A.order ** len(sys_.slots) <= limit:
        return _z2_brute(sys_, limit)
    return _z2_linear(sys_, Z2_LIMIT)


def enumerate_b2(mod: EquivariantModule, method: str = "auto", limit: int = BRUTE_LIMIT) -> list[Cochain2]:
    n, na = mod.Pi.order, mod.A.order
    if method == "brute" or (method == "auto" and na ** (n - 1) <= limit):
        if na ** (n - 1) > limit:
            raise SearchLimitError("1-cochain enumeration", na ** (n - 1), limit)
        out = {}
        for tail in itertools.product(range(na), repeat=n - 1):
            f = coboundary(Cochain1(mod, (0,) + tail))
            out[f.key] = f
        return [out[k] for k in sorted(out)]
    sys_ = _build_system(mod)
    gens = set()
    for x in range(1, n):
        for s in present(mod.A.group).gens:
            g = [0] * n
            g[x] = s
            gens.add(sys_.from_cochain(coboundary(Cochain1(mod, g))))
    vals = _span(sorted(gens), lambda x, y: mod.A.group.mul[x][y], len(sys_.slots), Z2_LIMIT)
    return [sys_.to_cochain(v) for v in vals]


def h2(mod: EquivariantModule, method: str = "auto", limit: int = BRUTE_LIMIT) -> H2:
    sys_ = _build_system(mod)
    z_vals = _z2_values(sys_, method, limit)
    used = "brute" if method == "brute" or (method == "auto" and mod.A.order ** len(sys_.slots) <= limit) else "linear"
    z2 = [sys_.to_cochain(v) for v in sorted(z_vals)]
    b2 = enumerate_b2(mod, "brute" if used == "brute" else "linear", limit)
    b_keys = [sys_.from_cochain(b) for b in b2]
    add = mod.A.group.mul
    assigned: set[tuple[int, ...]] = set()
    reps = []
    for v in sorted(z_vals):
        if v in assigned:
            continue
        reps.append(sys_.to_cochain(v))
        for b in b_keys:
            assigned.add(tuple(add[x][y] for x, y in zip(v, b)))
    return H2(mod, tuple(z2), tuple(b2), tuple(reps), used)


def slot_count(mod: EquivariantModule) -> int:
    return len(_build_system(mod).slots)


def iter_cochains(mod: EquivariantModule) -> Iterator[Cochain2]:
    """Every normalized 2-cochain (no identity checks), for oracles on tiny modules."""
    sys_ = _build_system(mod)
    for vals in itertools.product(range(mod.A.order), repeat=len(sys_.slots)):
        yield sys_.to_cochain(vals)
