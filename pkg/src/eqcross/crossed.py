"""Γ-crossed modules (B, D, d, ϑ), their homotopy invariants and morphisms.

B is written additively in the usual notation but stored as a plain table;
``theta[x]`` is the automorphism ϑ_x of B as a permutation of B's indices.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Optional, Sequence

from .cohomology import Cochain2, EquivariantModule, is_cocycle2, pullback_module
from .errors import InvariantViolation, PreconditionError, Report, StructuralError
from .groups import (
    AutomorphismGroup,
    FiniteGroup,
    GammaAction,
    GammaGroup,
    GroupHom,
    Quotient,
    Table,
    _freeze,
    aut_gamma_group,
    center,
    homomorphisms,
    inner_hom,
    is_gamma_hom,
    kernel,
    normality_witness,
    quotient,
    subgroup,
    validate_gamma_group,
)


@dataclass(frozen=True)
class GammaCrossedModule:
    B: GammaGroup
    D: GammaGroup
    d: GroupHom
    theta: Table

    def __post_init__(self):
        object.__setattr__(self, "theta", _freeze(self.theta))
        if self.B.gamma != self.D.gamma:
            raise StructuralError("B and D are over different Γ")
        if self.d.src != self.B.group or self.d.dst != self.D.group:
            raise StructuralError("d must map B to D")
        nb = self.B.order
        if len(self.theta) != self.D.order:
            raise StructuralError(f"theta needs {self.D.order} rows")
        for row in self.theta:
            if len(row) != nb or sorted(row) != list(range(nb)):
                raise StructuralError("every theta row must be a permutation of B")

    def __repr__(self) -> str:
        return (f"GammaCrossedModule({self.B.name or self.B.order} -> {self.D.name or self.D.order}, "
                f"|Γ|={self.gamma.order})")

    @property
    def gamma(self) -> FiniteGroup:
        return self.B.gamma

    def act_theta(self, x: int, b: int) -> int:
        return self.theta[x][b]

    # -- π₁ = Ker d ---------------------------------------------------------

    @cached_property
    def kernel(self) -> tuple[int, ...]:
        return kernel(self.d)

    @cached_property
    def _pi1(self) -> tuple[GammaGroup, GroupHom]:
        grp, incl = subgroup(self.B.group, self.kernel, name="Ker d")
        pos = {b: i for i, b in enumerate(incl.map)}
        rows = []
        for s in self.gamma.elements:
            row = []
            for b in incl.map:
                sb = self.B.act(s, b)
                if sb not in pos:
                    raise InvariantViolation("Ker d is not Γ-stable", (s, b))
                row.append(pos[sb])
            rows.append(tuple(row))
        return GammaGroup(grp, GammaAction(self.gamma, grp, tuple(rows))), incl

    @property
    def pi1(self) -> GammaGroup:
        return self._pi1[0]

    @property
    def pi1_inclusion(self) -> GroupHom:
        return self._pi1[1]

    # -- π₀ = Coker d -------------------------------------------------------

    @cached_property
    def coker(self) -> Quotient:
        im = sorted(set(self.d.map))
        return quotient(self.D.group, im, name="Coker d")

    @cached_property
    def pi0(self) -> GammaGroup:
        q = self.coker
        rows = []
        for s in self.gamma.elements:
            rows.append(tuple(q.projection.map[self.D.act(s, x)] for x in q.reps))
        act = GammaAction(self.gamma, q.group, tuple(rows))
        for s in self.gamma.elements:
            for x in self.D.group.elements:
                if q.projection.map[self.D.act(s, x)] != rows[s][q.projection.map[x]]:
                    raise InvariantViolation("Γ-action on Coker d is not well defined", (s, x))
        return GammaGroup(q.group, act)

    @cached_property
    def pi_module(self) -> EquivariantModule:
        """Ker d as a Γ-equivariant Coker d-module, s·a = ϑ_x(a) for x in s."""
        g1, incl = self._pi1
        pos = {b: i for i, b in enumerate(incl.map)}
        q = self.coker
        rows: list[Optional[tuple[int, ...]]] = [None] * q.group.order
        for x in self.D.group.elements:
            s = q.projection.map[x]
            row = []
            for b in incl.map:
                v = self.theta[x][b]
                if v not in pos:
                    raise InvariantViolation("ϑ does not preserve Ker d", (x, b))
                row.append(pos[v])
            row = tuple(row)
            if rows[s] is None:
                rows[s] = row
            elif rows[s] != row:
                a = next(i for i in range(len(row)) if row[i] != rows[s][i])
                raise InvariantViolation("Coker d-action on Ker d is not well defined",
                                         (q.reps[s], x, incl.map[a]))
        return EquivariantModule(g1, self.pi0, tuple(rows))


def _mu(g: FiniteGroup, x: int) -> tuple[int, ...]:
    return tuple(g.conj(x, y) for y in g.elements)


def validate_crossed_module(m: GammaCrossedModule) -> Report:
    """First failure among the Γ-groups, Γ-hom d, ϑ (hom and Γ-hom), C1, C2, C3.

    Witnesses: Γ-hom d (σ, b); ϑ-hom (x, y, b); ϑ Γ-hom (σ, x, b); C1 (b, a);
    C2 (x, b); C3 (σ, x, b).
    """
    for part in (m.B, m.D):
        r = validate_gamma_group(part)
        if not r:
            return r
    r = is_gamma_hom(m.d, m.B, m.D)
    if not r:
        return Report.failed("d-" + r.law, r.witness)
    B, D, G = m.B.group, m.D.group, m.gamma
    th = m.theta
    for x in D.elements:
        t = th[x]
        for a in B.elements:
            for b in B.elements:
                if t[B.mul[a][b]] != B.mul[t[a]][t[b]]:
                    return Report.failed("theta-automorphism", (x, a, b))
    for x in D.elements:
        for y in D.elements:
            xy = th[D.mul[x][y]]
            tx, ty = th[x], th[y]
            for b in B.elements:
                if xy[b] != tx[ty[b]]:
                    return Report.failed("theta-homomorphism", (x, y, b))
    for s in G.elements:
        s_inv = G.inv[s]
        for x in D.elements:
            sx = m.D.act(s, x)
            for b in B.elements:
                # (σϑ_x)(b) = σ ϑ_x(σ⁻¹ b)
                if th[sx][b] != m.B.act(s, th[x][m.B.act(s_inv, b)]):
                    return Report.failed("theta-gamma-equivariance", (s, x, b))
    for b in B.elements:
        t = th[m.d.map[b]]
        for a in B.elements:
            if t[a] != B.conj(b, a):
                return Report.failed("C1", (b, a), "ϑ_d(b) differs from conjugation by b")
    for x in D.elements:
        for b in B.elements:
            if m.d.map[th[x][b]] != D.conj(x, m.d.map[b]):
                return Report.failed("C2", (x, b), "d(ϑ_x b) differs from x d(b) x⁻¹")
    for s in G.elements:
        for x in D.elements:
            sx = m.D.act(s, x)
            for b in B.elements:
                if m.B.act(s, th[x][b]) != th[sx][m.B.act(s, b)]:
                    return Report.failed("C3", (s, x, b), "σϑ_x(b) differs from ϑ_σx(σb)")
    return Report.passed()


def validate_or_raise(m: GammaCrossedModule) -> GammaCrossedModule:
    r = validate_crossed_module(m)
    if not r:
        raise PreconditionError(f"invalid crossed module: {r.law}", r.witness)
    return m


# ---------------------------------------------------------------------------
# standard examples


def _restrict_action(g: GammaGroup, elems: Sequence[int], sub: FiniteGroup) -> GammaGroup:
    pos = {e: i for i, e in enumerate(elems)}
    rows = []
    for s in g.gamma.elements:
        row = []
        for e in elems:
            se = g.act(s, e)
            if se not in pos:
                raise PreconditionError("subgroup is not Γ-invariant", (s, e))
            row.append(pos[se])
        rows.append(tuple(row))
    return GammaGroup(sub, GammaAction(g.gamma, sub, tuple(rows)))


def from_inclusion(D: GammaGroup, normal: Sequence[int], name: str = "") -> GammaCrossedModule:
    """(N, D, inclusion, conjugation) for a normal Γ-invariant subgroup N of D."""
    normal = tuple(sorted(set(normal)))
    sub, incl = subgroup(D.group, normal, name=name or f"N{len(normal)}")
    w = normality_witness(D.group, normal)
    if w is not None:
        raise PreconditionError("subgroup is not normal", w)
    B = _restrict_action(D, normal, sub)
    pos = {e: i for i, e in enumerate(normal)}
    theta = tuple(tuple(pos[D.group.conj(x, e)] for e in normal) for x in D.group.elements)
    return validate_or_raise(GammaCrossedModule(B, D, incl, theta))


def from_module(B: GammaGroup, D: GammaGroup, action: Sequence[Sequence[int]]) -> GammaCrossedModule:
    """(B, D, 0, ϑ) for an abelian B carrying a D-action ϑ."""
    if not B.group.is_abelian:
        a, b = next((a, b) for a in B.group.elements for b in B.group.elements
                    if B.group.mul[a][b] != B.group.mul[b][a])
        raise PreconditionError("module must be abelian", (a, b))
    act = GammaAction(D.group, B.group, _freeze(action))
    from .groups import validate_action
    r = validate_action(act)
    if not r:
        raise PreconditionError(f"not a D-action: {r.law}", r.witness)
    return validate_or_raise(GammaCrossedModule(B, D, GroupHom.trivial(B.group, D.group), act.act))


@dataclass(frozen=True)
class ConjugationData:
    module: GammaCrossedModule
    aut: AutomorphismGroup


def from_conjugation(B: GammaGroup, aut: Optional[AutomorphismGroup] = None) -> GammaCrossedModule:
    """(B, Aut B, μ, identity action), the holomorph crossed module."""
    return conjugation_data(B, aut).module


def conjugation_data(B: GammaGroup, aut: Optional[AutomorphismGroup] = None) -> ConjugationData:
    autg, aut = aut_gamma_group(B, aut)
    mu = inner_hom(B, aut)
    m = GammaCrossedModule(B, autg, mu, aut.perms)
    return ConjugationData(validate_or_raise(m), aut)


def from_central_surjection(B: GammaGroup, D: GammaGroup, p: GroupHom) -> GammaCrossedModule:
    """(B, D, p, ϑ) with ϑ_x conjugation by any preimage of x; needs Ker p central."""
    r = is_gamma_hom(p, B, D)
    if not r:
        raise PreconditionError(f"p is not a Γ-homomorphism: {r.law}", r.witness)
    if not p.is_surjective:
        missing = next(x for x in D.group.elements if x not in set(p.map))
        raise PreconditionError("p is not surjective", (missing,))
    z = set(center(B.group))
    for k in kernel(p):
        if k not in z:
            b = next(b for b in B.group.elements if B.group.mul[k][b] != B.group.mul[b][k])
            raise PreconditionError("Ker p is not central", (k, b))
    pre = {}
    for b in B.group.elements:
        pre.setdefault(p.map[b], b)
    theta = tuple(_mu(B.group, pre[x]) for x in D.group.elements)
    return validate_or_raise(GammaCrossedModule(B, D, p, theta))


def trivial_crossed_module(Q: GammaGroup) -> GammaCrossedModule:
    """(0, Q, 0, 0)."""
    from .groups import cyclic
    zero = GammaGroup.trivial(cyclic(1), Q.gamma)
    return GammaCrossedModule(zero, Q, GroupHom.trivial(zero.group, Q.group), ((0,),) * Q.order)


# ---------------------------------------------------------------------------
# homomorphisms and the morphisms (f1, f0, φ)


@dataclass(frozen=True)
class CrossedModuleHom:
    src: GammaCrossedModule
    dst: GammaCrossedModule
    f1: GroupHom
    f0: GroupHom

    def __post_init__(self):
        if self.f1.src != self.src.B.group or self.f1.dst != self.dst.B.group:
            raise StructuralError("f1 must map B to B'")
        if self.f0.src != self.src.D.group or self.f0.dst != self.dst.D.group:
            raise StructuralError("f0 must map D to D'")
        if self.src.gamma != self.dst.gamma:
            raise StructuralError("crossed modules over different Γ")

    @cached_property
    def induced_pi0(self) -> tuple[int, ...]:
        """The map Coker d → Coker d' induced by f0."""
        q, q2 = self.src.coker, self.dst.coker
        return tuple(q2.projection.map[self.f0.map[r]] for r in q.reps)

    @cached_property
    def target_module(self) -> EquivariantModule:
        """π₁(dst) as a π₀(src)-module through f0."""
        mod = self.dst.pi_module
        along = GroupHom(self.src.pi0.group, self.dst.pi0.group, self.induced_pi0)
        return pullback_module(mod, along, self.src.pi0)


def validate_crossed_hom(h: CrossedModuleHom) -> Report:
    r = is_gamma_hom(h.f1, h.src.B, h.dst.B)
    if not r:
        return Report.failed("f1-" + r.law, r.witness)
    r = is_gamma_hom(h.f0, h.src.D, h.dst.D)
    if not r:
        return Report.failed("f0-" + r.law, r.witness)
    m, n = h.src, h.dst
    for b in m.B.group.elements:
        if h.f0.map[m.d.map[b]] != n.d.map[h.f1.map[b]]:
            return Report.failed("H1", (b,), "f0 d ≠ d' f1")
    for x in m.D.group.elements:
        t2 = n.theta[h.f0.map[x]]
        for b in m.B.group.elements:
            if h.f1.map[m.theta[x][b]] != t2[h.f1.map[b]]:
                return Report.failed("H2", (x, b), "f1(ϑ_x b) ≠ ϑ'_{f0 x} f1(b)")
    return Report.passed()


def crossed_homs(src: GammaCrossedModule, dst: GammaCrossedModule) -> Iterator[CrossedModuleHom]:
    """Every homomorphism of Γ-crossed modules src → dst, deterministic order."""
    f0s = [f for f in homomorphisms(src.D.group, dst.D.group) if is_gamma_hom(f, src.D, dst.D)]
    f1s = [f for f in homomorphisms(src.B.group, dst.B.group) if is_gamma_hom(f, src.B, dst.B)]
    for f1 in f1s:
        for f0 in f0s:
            h = CrossedModuleHom(src, dst, f1, f0)
            if validate_crossed_hom(h):
                yield h


def crossed_isomorphism(m: GammaCrossedModule, n: GammaCrossedModule) -> Optional[CrossedModuleHom]:
    """An isomorphism of Γ-crossed modules, or None."""
    if m.B.order != n.B.order or m.D.order != n.D.order:
        return None
    for h in crossed_homs(m, n):
        if h.f1.is_injective and h.f0.is_injective:
            return h
    return None


@dataclass(frozen=True)
class CrossedMorphism:
    """A morphism (f1, f0, φ) with φ a 2-cocycle of π₀(src) in π₁(dst)."""

    hom: CrossedModuleHom
    phi: Cochain2

    @property
    def src(self) -> GammaCrossedModule:
        return self.hom.src

    @property
    def dst(self) -> GammaCrossedModule:
        return self.hom.dst

    @property
    def f1(self) -> GroupHom:
        return self.hom.f1

    @property
    def f0(self) -> GroupHom:
        return self.hom.f0


def validate_crossed_morphism(t: CrossedMorphism) -> Report:
    r = validate_crossed_hom(t.hom)
    if not r:
        return r
    mod = t.hom.target_module
    if t.phi.mod.Pi.group != mod.Pi.group or t.phi.mod.A.group != mod.A.group:
        return Report.failed("phi-module", (), "φ is not over π₀(src) with values in π₁(dst)")
    r = is_cocycle2(Cochain2(mod, t.phi.fQQ, t.phi.fQG))
    if not r:
        return Report.failed("phi-" + r.law, r.witness)
    return Report.passed()


def identity_morphism(m: GammaCrossedModule) -> CrossedMorphism:
    h = CrossedModuleHom(m, m, GroupHom.identity(m.B.group), GroupHom.identity(m.D.group))
    return CrossedMorphism(h, Cochain2.zero(h.target_module))


def compose_morphisms(t2: CrossedMorphism, t1: CrossedMorphism) -> CrossedMorphism:
    """t2 ∘ t1 = (f1' f1, f0' f0, f1'_*(φ) + f0^*(φ'))."""
    if t1.dst != t2.src:
        raise StructuralError("morphisms are not composable")
    hom = CrossedModuleHom(t1.src, t2.dst, t1.f1.then(t2.f1), t1.f0.then(t2.f0))
    mod = hom.target_module
    # φ takes values in Ker d'; push through f1' restricted to kernels
    mid, last = t1.dst, t2.dst
    pos_last = {b: i for i, b in enumerate(last.pi1_inclusion.map)}
    push = tuple(pos_last[t2.f1.map[b]] for b in mid.pi1_inclusion.map)
    pushed = t1.phi.map_values(push, mod)
    pulled = t2.phi.pull_back(t1.hom.induced_pi0, mod)
    return CrossedMorphism(hom, pushed + pulled)


def morphisms_between(src: GammaCrossedModule, dst: GammaCrossedModule, cocycles: bool = True,
                      limit: Optional[int] = None) -> Iterator[CrossedMorphism]:
    """Morphisms (f1, f0, φ) for every hom and every cocycle φ (or φ = 0)."""
    from .cohomology import enumerate_z2
    count = 0
    for h in crossed_homs(src, dst):
        phis = enumerate_z2(h.target_module) if cocycles else [Cochain2.zero(h.target_module)]
        for phi in phis:
            yield CrossedMorphism(h, phi)
            count += 1
            if limit is not None and count >= limit:
                return
