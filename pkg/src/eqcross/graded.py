"""The strict Γ-graded categorical group of a Γ-crossed module, and functors into it.

A σ-morphism x → y of P is a label (b, σ) with σx = d(b)·y; objects are the
elements of D. P is kept intensional: hom-sets are enumerated on demand.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

import numpy as np

from .cohomology import Cochain2
from .crossed import (
    CrossedModuleHom,
    CrossedMorphism,
    GammaCrossedModule,
    crossed_isomorphism,
    trivial_crossed_module,
    validate_crossed_module,
    validate_crossed_morphism,
)
from .errors import PreconditionError, Report, SearchLimitError, StructuralError
from .groups import FiniteGroup, GammaAction, GammaGroup, GroupHom, is_gamma_hom

FUNCTOR_LIMIT = 10 ** 7


@dataclass(frozen=True, order=True)
class GCGMorphism:
    src: int
    b: int
    sigma: int
    tgt: int

    @property
    def grade(self) -> int:
        return self.sigma


@dataclass(frozen=True)
class GradedCatGroup:
    base: GammaCrossedModule

    @property
    def B(self) -> FiniteGroup:
        return self.base.B.group

    @property
    def D(self) -> FiniteGroup:
        return self.base.D.group

    @property
    def gamma(self) -> FiniteGroup:
        return self.base.gamma

    @property
    def objects(self) -> range:
        return self.D.elements

    def target(self, x: int, b: int, sigma: int) -> int:
        """y with σx = d(b)·y."""
        m = self.base
        return self.D.mul[self.D.inv[m.d.map[b]]][m.D.act(sigma, x)]

    def morphism(self, x: int, b: int, sigma: int) -> GCGMorphism:
        return GCGMorphism(x, b, sigma, self.target(x, b, sigma))

    def identity(self, x: int) -> GCGMorphism:
        return GCGMorphism(x, 0, 0, x)

    def is_morphism(self, m: GCGMorphism) -> bool:
        return self.target(m.src, m.b, m.sigma) == m.tgt

    def hom_set(self, x: int, y: int, sigma: int) -> list[GCGMorphism]:
        need = self.D.mul[self.base.D.act(sigma, x)][self.D.inv[y]]
        return [GCGMorphism(x, b, sigma, y) for b in self.B.elements if self.base.d.map[b] == need]

    def morphisms(self, sigma: Optional[int] = None) -> Iterator[GCGMorphism]:
        sigmas = self.gamma.elements if sigma is None else (sigma,)
        for x in self.objects:
            for s in sigmas:
                for b in self.B.elements:
                    yield self.morphism(x, b, s)

    def morphisms_from(self, x: int) -> Iterator[GCGMorphism]:
        for s in self.gamma.elements:
            for b in self.B.elements:
                yield self.morphism(x, b, s)

    def compose(self, m2: GCGMorphism, m1: GCGMorphism) -> GCGMorphism:
        """m2 ∘ m1 for m1 = (b, σ): x → y and m2 = (c, τ): y → z is (τb + c, τσ)."""
        if m1.tgt != m2.src:
            raise StructuralError(f"cannot compose {m2} after {m1}")
        B = self.B
        b = B.mul[self.base.B.act(m2.sigma, m1.b)][m2.b]
        out = GCGMorphism(m1.src, b, self.gamma.mul[m2.sigma][m1.sigma], m2.tgt)
        if not self.is_morphism(out):
            raise StructuralError(f"composite {out} violates the target law")
        return out

    def inverse(self, m: GCGMorphism) -> GCGMorphism:
        """(b, σ)⁻¹ = (−σ⁻¹b, σ⁻¹)."""
        si = self.gamma.inv[m.sigma]
        return GCGMorphism(m.tgt, self.B.inv[self.base.B.act(si, m.b)], si, m.src)

    def tensor(self, m1: GCGMorphism, m2: GCGMorphism) -> GCGMorphism:
        """(x →(b,σ) y) ⊗ (x' →(c,σ) y') = (xx' →(b + ϑ_y c, σ) yy')."""
        if m1.sigma != m2.sigma:
            raise PreconditionError("tensor needs morphisms of equal grade", (m1.sigma, m2.sigma))
        D, B = self.D, self.B
        b = B.mul[m1.b][self.base.theta[m1.tgt][m2.b]]
        return GCGMorphism(D.mul[m1.src][m2.src], b, m1.sigma, D.mul[m1.tgt][m2.tgt])

    def unit(self, sigma: int) -> GCGMorphism:
        """I(σ) = (1 →(0,σ) 1)."""
        return GCGMorphism(0, 0, sigma, 0)


def build_P(m: GammaCrossedModule) -> GradedCatGroup:
    r = validate_crossed_module(m)
    if not r:
        raise PreconditionError(f"invalid crossed module: {r.law}", r.witness)
    return GradedCatGroup(m)


def dis_gamma(q: GammaGroup) -> GradedCatGroup:
    """ΓDis Q: objects Q, morphisms σ: x → σx only."""
    return GradedCatGroup(trivial_crossed_module(q))


# ---------------------------------------------------------------------------
# law checks on P


def check_groupoid_literal(P: GradedCatGroup) -> Report:
    try:
        return _check_groupoid_literal(P)
    except StructuralError as exc:
        return Report.failed("composition-target", (), str(exc))


def _check_groupoid_literal(P: GradedCatGroup) -> Report:
    """Associativity and units of composition over all composable triples; inverses."""
    for m1 in P.morphisms():
        if P.compose(P.identity(m1.tgt), m1) != m1 or P.compose(m1, P.identity(m1.src)) != m1:
            return Report.failed("unit", (m1.src, m1.b, m1.sigma))
        inv = P.inverse(m1)
        if not P.is_morphism(inv):
            return Report.failed("inverse-target", (m1.src, m1.b, m1.sigma))
        if P.compose(inv, m1) != P.identity(m1.src) or P.compose(m1, inv) != P.identity(m1.tgt):
            return Report.failed("inverse", (m1.src, m1.b, m1.sigma))
        for m2 in P.morphisms_from(m1.tgt):
            c21 = P.compose(m2, m1)
            if c21.sigma != P.gamma.mul[m2.sigma][m1.sigma]:
                return Report.failed("grade", (m1, m2))
            for m3 in P.morphisms_from(m2.tgt):
                if P.compose(m3, c21) != P.compose(P.compose(m3, m2), m1):
                    return Report.failed("associativity", (m1, m2, m3))
    return Report.passed()


def check_tensor_literal(P: GradedCatGroup) -> Report:
    try:
        return _check_tensor_literal(P)
    except StructuralError as exc:
        return Report.failed("composition-target", (), str(exc))


def _check_tensor_literal(P: GradedCatGroup) -> Report:
    """Interchange over all admissible quadruples, plus strict associativity and units."""
    G = P.gamma
    for x in P.objects:
        for s in G.elements:
            for b in P.B.elements:
                m = P.morphism(x, b, s)
                for t in G.elements:
                    for c in P.B.elements:
                        n = P.morphism(m.tgt, c, t)
                        nm = P.compose(n, m)
                        for x2 in P.objects:
                            for b2 in P.B.elements:
                                m2 = P.morphism(x2, b2, s)
                                for c2 in P.B.elements:
                                    n2 = P.morphism(m2.tgt, c2, t)
                                    lhs = P.tensor(nm, P.compose(n2, m2))
                                    rhs = P.compose(P.tensor(n, n2), P.tensor(m, m2))
                                    if lhs != rhs:
                                        return Report.failed("interchange", (m, n, m2, n2))
    for s in G.elements:
        ms = list(P.morphisms(s))
        for m1 in ms:
            if P.tensor(m1, P.unit(s)) != m1 or P.tensor(P.unit(s), m1) != m1:
                return Report.failed("tensor-unit", (m1,))
            for m2 in ms:
                t12 = P.tensor(m1, m2)
                if not P.is_morphism(t12):
                    return Report.failed("tensor-target", (m1, m2))
                for m3 in ms:
                    if P.tensor(t12, m3) != P.tensor(m1, P.tensor(m2, m3)):
                        return Report.failed("tensor-associativity", (m1, m2, m3))
    return Report.passed()


@dataclass(frozen=True)
class _Arrays:
    bmul: np.ndarray
    binv: np.ndarray
    bact: np.ndarray
    dmul: np.ndarray
    dinv: np.ndarray
    dact: np.ndarray
    gmul: np.ndarray
    ginv: np.ndarray
    d: np.ndarray
    theta: np.ndarray

    def tgt(self, x, b, s):
        return self.dmul[self.dinv[self.d[b]], self.dact[s, x]]


def _arrays(P: GradedCatGroup) -> _Arrays:
    m = P.base
    a = lambda t: np.asarray(t, dtype=np.int64)
    return _Arrays(a(P.B.mul), a(P.B.inv), a(m.B.action.act), a(P.D.mul), a(P.D.inv),
                   a(m.D.action.act), a(P.gamma.mul), a(P.gamma.inv), a(m.d.map), a(m.theta))


def _first(mask: np.ndarray) -> tuple[int, ...]:
    return tuple(int(i) for i in np.argwhere(mask)[0])


def check_groupoid(P: GradedCatGroup) -> Report:
    """Same laws as check_groupoid_literal, vectorized over the last two morphisms of a triple.

    Witnesses: unit/inverse (x, b, σ); grade (x, b, σ, c, τ); associativity
    (x, b, σ, c, τ, e, υ) for the triple (b,σ): x → y, (c,τ), (e,υ).
    """
    A = _arrays(P)
    nb, ng = P.B.order, P.gamma.order
    bs = np.arange(nb)
    # axes: (b, c, τ, e, υ)
    b = bs[:, None, None, None, None]
    c = bs[None, :, None, None, None]
    t = np.arange(ng)[None, None, :, None, None]
    e = bs[None, None, None, :, None]
    u = np.arange(ng)[None, None, None, None, :]
    for x in P.objects:
        for s in P.gamma.elements:
            y = A.tgt(x, bs, s)
            si = int(A.ginv[s])
            ib = A.binv[A.bact[si, bs]]
            bad = A.tgt(y, ib, si) != x
            if bad.any():
                return Report.failed("inverse-target", (x, int(np.argmax(bad)), s))
            # inverse on both sides, and identities (0, 1) either side
            bad = (A.bmul[A.bact[s, ib], bs] != 0) | (A.bmul[A.bact[si, bs], ib] != 0)
            if bad.any():
                return Report.failed("inverse", (x, int(np.argmax(bad)), s))
            bad = (A.bmul[A.bact[0, bs], 0] != bs) | (A.bmul[A.bact[s, 0], bs] != bs)
            if bad.any():
                return Report.failed("unit", (x, int(np.argmax(bad)), s))
            # second morphism (c, τ): y → z
            yb = y[:, None, None, None, None]
            z = A.tgt(yb, c, t)
            l21 = A.bmul[A.bact[t, b], c]
            g21 = A.gmul[t, s]
            bad = np.broadcast_to(A.tgt(x, l21, g21) != z, (nb, nb, ng, 1, 1))
            if bad.any():
                bi, ci, ti, _, _ = _first(bad)
                return Report.failed("grade", (x, bi, s, ci, ti))
            # third morphism (e, υ): z → w
            lhs_l = A.bmul[A.bact[u, l21], e]
            lhs_g = A.gmul[u, g21]
            l32 = A.bmul[A.bact[u, c], e]
            g32 = A.gmul[u, t]
            rhs_l = A.bmul[A.bact[g32, b], l32]
            rhs_g = A.gmul[g32, s]
            bad = np.broadcast_to((lhs_l != rhs_l) | (lhs_g != rhs_g), (nb, nb, ng, nb, ng))
            if bad.any():
                bi, *rest = _first(bad)
                return Report.failed("associativity", (x, bi, s) + tuple(rest))
    return Report.passed()


def check_tensor(P: GradedCatGroup) -> Report:
    """Same laws as check_tensor_literal, vectorized over the second pair (x', b', c').

    Interchange compares (n∘m) ⊗ (n'∘m') with (n⊗n') ∘ (m⊗m') for m = (b,σ): x → y,
    n = (c,τ): y → z, m' = (b',σ): x' → y', n' = (c',τ): y' → z'; witness
    (x, b, σ, c, τ, x', b', c').
    """
    A = _arrays(P)
    nb, nd, ng = P.B.order, P.D.order, P.gamma.order
    # axes: (b, τ, c, x', b', c')
    b = np.arange(nb)[:, None, None, None, None, None]
    t = np.arange(ng)[None, :, None, None, None, None]
    c = np.arange(nb)[None, None, :, None, None, None]
    x2 = np.arange(nd)[None, None, None, :, None, None]
    b2 = np.arange(nb)[None, None, None, None, :, None]
    c2 = np.arange(nb)[None, None, None, None, None, :]
    shape = (nb, ng, nb, nd, nb, nb)
    for x in P.objects:
        for s in P.gamma.elements:
            y = A.tgt(x, b, s)
            y2 = A.tgt(x2, b2, s)
            # m ⊗ m' must be a morphism xx' → yy'
            lab_mm = A.bmul[b, A.theta[y, b2]]
            bad = A.tgt(A.dmul[x, x2], lab_mm, s) != A.dmul[y, y2]
            if bad.any():
                i = _first(np.broadcast_to(bad, shape))
                return Report.failed("tensor-target", (x, i[0], s) + i[3:5])
            z = A.tgt(y, c, t)
            z2 = A.tgt(y2, c2, t)
            l_nm = A.bmul[A.bact[t, b], c]
            l_n2m2 = A.bmul[A.bact[t, b2], c2]
            lhs = A.bmul[l_nm, A.theta[z, l_n2m2]]
            l_nn = A.bmul[c, A.theta[z, c2]]
            rhs = A.bmul[A.bact[t, lab_mm], l_nn]
            ok_tgt = A.tgt(A.dmul[x, x2], rhs, A.gmul[t, s]) == A.dmul[z, z2]
            bad = (lhs != rhs) | ~ok_tgt
            if bad.any():
                bi, ti, ci, xi, bj, cj = _first(np.broadcast_to(bad, shape))
                return Report.failed("interchange", (x, bi, s, ci, ti, xi, bj, cj))
    # strict associativity and units of ⊗ on each grade, over labels and sources
    for s in P.gamma.elements:
        xs = np.arange(nd)
        bs = np.arange(nb)
        X, Bl = np.meshgrid(xs, bs, indexing="ij")
        Y = A.tgt(X, Bl, s)
        Xf, Bf, Yf = X.ravel(), Bl.ravel(), Y.ravel()
        # unit I(σ) on either side
        if (A.bmul[Bf, A.theta[Yf, 0]] != Bf).any() or (A.bmul[0, A.theta[0, Bf]] != Bf).any():
            return Report.failed("tensor-unit", (s,))
        # (m1 ⊗ m2) ⊗ m3 versus m1 ⊗ (m2 ⊗ m3) on axes (m1, m2, m3)
        l1, y1 = Bf[:, None, None], Yf[:, None, None]
        l2, y2 = Bf[None, :, None], Yf[None, :, None]
        l3 = Bf[None, None, :]
        lhs = A.bmul[A.bmul[l1, A.theta[y1, l2]], A.theta[A.dmul[y1, y2], l3]]
        rhs = A.bmul[l1, A.theta[y1, A.bmul[l2, A.theta[y2, l3]]]]
        bad = lhs != rhs
        if bad.any():
            i, j, k = _first(bad)
            return Report.failed("tensor-associativity",
                                 (int(Xf[i]), int(Bf[i]), s, int(Xf[j]), int(Bf[j]), int(Xf[k]), int(Bf[k])))
    return Report.passed()


def check_ker_strict(P: GradedCatGroup) -> Report:
    """Objects of Ker P have strict inverses and grade-1 morphisms compose to grade 1."""
    D = P.D
    for x in P.objects:
        if D.mul[x][D.inv[x]] != 0 or D.mul[D.inv[x]][x] != 0:
            return Report.failed("object-inverse", (x,))
    for m in P.morphisms(0):
        for n in P.morphisms_from(m.tgt):
            if n.sigma == 0 and P.compose(n, m).sigma != 0:
                return Report.failed("kernel-closed", (m, n))
    return Report.passed()


# ---------------------------------------------------------------------------
# factor set


@dataclass(frozen=True)
class FactorSet:
    """F^σ on objects and grade-1 morphisms, θ^{σ,τ} components and F̃^σ components."""

    P: GradedCatGroup
    obj: tuple[tuple[int, ...], ...]
    mor: tuple[dict, ...]
    theta: tuple[tuple[tuple[GCGMorphism, ...], ...], ...]
    tilde: tuple[tuple[tuple[GCGMorphism, ...], ...], ...]

    def apply(self, s: int, m: GCGMorphism) -> GCGMorphism:
        return self.mor[s][(m.src, m.b)]


def _upsilon(P: GradedCatGroup, s: int, x: int) -> GCGMorphism:
    return P.morphism(x, 0, s)


def factor_set_of(P: GradedCatGroup) -> FactorSet:
    """Stable grading Υ^σ_x = (0, σ): x → σx; F^σ(f) = Υ_y ∘ f ∘ Υ_x⁻¹."""
    G = P.gamma
    obj = tuple(tuple(P.base.D.act(s, x) for x in P.objects) for s in G.elements)
    mors = []
    for s in G.elements:
        table = {}
        for m in P.morphisms(0):
            ux, uy = _upsilon(P, s, m.src), _upsilon(P, s, m.tgt)
            table[(m.src, m.b)] = P.compose(uy, P.compose(m, P.inverse(ux)))
        mors.append(table)
    thetas = []
    for s in G.elements:
        row = []
        for t in G.elements:
            st = G.mul[s][t]
            comps = []
            for x in P.objects:
                # F^σ F^τ x → F^{στ} x
                a = P.compose(_upsilon(P, s, obj[t][x]), _upsilon(P, t, x))
                comps.append(P.compose(_upsilon(P, st, x), P.inverse(a)))
            row.append(tuple(comps))
        thetas.append(tuple(row))
    tildes = []
    for s in G.elements:
        rows = []
        for x in P.objects:
            comps = []
            for y in P.objects:
                xy = P.D.mul[x][y]
                # F^σx ⊗ F^σy → F^σ(xy)
                t = P.tensor(_upsilon(P, s, x), _upsilon(P, s, y))
                comps.append(P.compose(_upsilon(P, s, xy), P.inverse(t)))
            rows.append(tuple(comps))
        tildes.append(tuple(rows))
    return FactorSet(P, obj, tuple(mors), tuple(thetas), tuple(tildes))


def check_factor_set(F: FactorSet) -> Report:
    """Items i–iii of the factor-set definition, and regularity."""
    P, G = F.P, F.P.gamma
    for x in P.objects:
        if F.obj[0][x] != x:
            return Report.failed("F1-identity", (x,))
    for m in P.morphisms(0):
        if F.apply(0, m) != m:
            return Report.failed("F1-identity", (m,))
    for s in G.elements:
        for x in P.objects:
            if F.theta[0][s][x] != P.identity(F.obj[s][x]) or F.theta[s][0][x] != P.identity(F.obj[s][x]):
                return Report.failed("theta-unit", (s, x))
    for s in G.elements:
        for t in G.elements:
            for u in G.elements:
                st, tu = G.mul[s][t], G.mul[t][u]
                for x in P.objects:
                    lhs = P.compose(F.theta[st][u][x], F.theta[s][t][F.obj[u][x]])
                    rhs = P.compose(F.theta[s][tu][x], F.apply(s, F.theta[t][u][x]))
                    if lhs != rhs:
                        return Report.failed("theta-cocycle", (s, t, u, x))
    # regularity: θ = id, F̃ = id, F^σ strict monoidal on objects and morphisms
    for s in G.elements:
        for t in G.elements:
            for x in P.objects:
                if F.theta[s][t][x] != P.identity(F.theta[s][t][x].src):
                    return Report.failed("theta-identity", (s, t, x))
        for x in P.objects:
            for y in P.objects:
                if F.tilde[s][x][y] != P.identity(F.tilde[s][x][y].src):
                    return Report.failed("tilde-identity", (s, x, y))
                if F.obj[s][P.D.mul[x][y]] != P.D.mul[F.obj[s][x]][F.obj[s][y]]:
                    return Report.failed("regular-objects", (s, x, y))
        for m in P.morphisms(0):
            fm = F.apply(s, m)
            if fm.sigma != 0 or fm.b != P.base.B.act(s, m.b) or fm.src != F.obj[s][m.src] \
                    or fm.tgt != F.obj[s][m.tgt]:
                return Report.failed("F-on-morphisms", (s, m.src, m.b))
    return _check_factor_set_pairs(F)


def _check_factor_set_pairs(F: FactorSet) -> Report:
    """F^σ preserves ⊗ and ∘ of grade-1 morphisms, vectorized over the second morphism.

    Source and target objects are already known to be F^σ of the originals, so
    only labels are compared.
    """
    P = F.P
    A = _arrays(P)
    nb, nd = P.B.order, P.D.order
    x2 = np.arange(nd)[:, None]
    c = np.arange(nb)[None, :]
    cb = np.arange(nb)
    for s in P.gamma.elements:
        lab = np.zeros((nd, nb), dtype=np.int64)
        for (x, b), fm in F.mor[s].items():
            lab[x, b] = fm.b
        fobj = np.asarray(F.obj[s], dtype=np.int64)
        for x in P.objects:
            for b in P.B.elements:
                y = int(A.tgt(x, b, 0))
                # F(m ⊗ n) = F m ⊗ F n for n = (c, 1) out of x'
                lhs = lab[A.dmul[x, x2], A.bmul[b, A.theta[y, c]]]
                rhs = A.bmul[lab[x, b], A.theta[fobj[y], lab[x2, c]]]
                bad = lhs != rhs
                if bad.any():
                    return Report.failed("regular-morphisms", (s, x, b) + _first(bad))
                # F(n ∘ m) = F n ∘ F m for n = (c, 1) out of y
                bad = lab[x, A.bmul[b, cb]] != A.bmul[lab[x, b], lab[y, cb]]
                if bad.any():
                    return Report.failed("F-functor", (s, x, b) + _first(bad))
    return Report.passed()


# ---------------------------------------------------------------------------
# reverse construction


@dataclass(frozen=True)
class ReverseConstruction:
    module: GammaCrossedModule
    b_elements: tuple[GCGMorphism, ...]


def crossed_module_of(P: GradedCatGroup) -> ReverseConstruction:
    """D = Ob P, B = grade-1 morphisms x → 1 with + = ⊗, d = source, ϑ_y = id_y ⊗ − ⊗ id_{y⁻¹}."""
    D = P.D
    Fs = factor_set_of(P)
    elems = sorted((m for m in P.morphisms(0) if m.tgt == 0), key=lambda m: (m.src, m.b))
    pos = {m: i for i, m in enumerate(elems)}
    bmul = tuple(tuple(pos[P.tensor(a, c)] for c in elems) for a in elems)
    Bg = FiniteGroup(bmul, name=f"Mor({P.base.B.name})" if P.base.B.name else "")
    Dg = FiniteGroup(D.mul, name=D.name)
    G = P.gamma
    bact = tuple(tuple(pos[Fs.apply(s, m)] for m in elems) for s in G.elements)
    dact = tuple(tuple(Fs.obj[s][x] for x in P.objects) for s in G.elements)
    Bgg = GammaGroup(Bg, GammaAction(G, Bg, bact))
    Dgg = GammaGroup(Dg, GammaAction(G, Dg, dact))
    d = GroupHom(Bg, Dg, tuple(m.src for m in elems))
    theta = []
    for y in P.objects:
        yi = D.inv[y]
        row = []
        for m in elems:
            c = P.tensor(P.tensor(P.identity(y), m), P.identity(yi))
            row.append(pos[c])
        theta.append(tuple(row))
    return ReverseConstruction(GammaCrossedModule(Bgg, Dgg, d, tuple(theta)), tuple(elems))


def round_trip_isomorphism(P: GradedCatGroup) -> Optional[CrossedModuleHom]:
    return crossed_isomorphism(crossed_module_of(P).module, P.base)


# ---------------------------------------------------------------------------
# graded monoidal functors between strict graded categorical groups


@dataclass(frozen=True)
class GradedFunctor:
    """Functor data P → P'.

    ``obj[x]``, ``mor1[x][b]`` (label of F on the grade-1 morphism (b,1) out of x),
    ``fG[x][σ]`` (label of F(x →(0,σ) σx)), ``fT[x][y]`` (label of F̃_{x,y}).
    """

    src: GradedCatGroup
    dst: GradedCatGroup
    obj: tuple[int, ...]
    mor1: tuple[tuple[int, ...], ...]
    fG: tuple[tuple[int, ...], ...]
    fT: tuple[tuple[int, ...], ...]

    def apply_obj(self, x: int) -> int:
        return self.obj[x]

    def apply(self, m: GCGMorphism) -> GCGMorphism:
        sx = self.src.base.D.act(m.sigma, m.src)
        b = self.dst.B.mul[self.fG[m.src][m.sigma]][self.mor1[sx][m.b]]
        return GCGMorphism(self.obj[m.src], b, m.sigma, self.obj[m.tgt])

    def tilde(self, x: int, y: int) -> GCGMorphism:
        D = self.src.D
        return GCGMorphism(self.dst.D.mul[self.obj[x]][self.obj[y]], self.fT[x][y], 0, self.obj[D.mul[x][y]])


def check_graded_functor(F: GradedFunctor) -> Report:
    """Graded functor, natural F̃ of grade 1, associativity and unit coherence."""
    P, P2 = F.src, F.dst
    if F.obj[0] != 0:
        return Report.failed("unit-object", (0,))
    for m in P.morphisms():
        fm = F.apply(m)
        if not P2.is_morphism(fm):
            return Report.failed("morphism-target", (m,))
    for x in P.objects:
        if F.apply(P.identity(x)) != P2.identity(F.obj[x]):
            return Report.failed("identity", (x,))
    for m1 in P.morphisms():
        f1 = F.apply(m1)
        for m2 in P.morphisms_from(m1.tgt):
            if F.apply(P.compose(m2, m1)) != P2.compose(F.apply(m2), f1):
                return Report.failed("functor-composition", (m1, m2))
    for x in P.objects:
        for y in P.objects:
            if not P2.is_morphism(F.tilde(x, y)):
                return Report.failed("tilde-target", (x, y))
    for x in P.objects:
        if F.tilde(0, x) != P2.identity(F.obj[x]) or F.tilde(x, 0) != P2.identity(F.obj[x]):
            return Report.failed("unit-coherence", (x,))
    for s in P.gamma.elements:
        ms = list(P.morphisms(s))
        for m in ms:
            fm = F.apply(m)
            for n in ms:
                lhs = P2.compose(F.tilde(m.tgt, n.tgt), P2.tensor(fm, F.apply(n)))
                rhs = P2.compose(F.apply(P.tensor(m, n)), F.tilde(m.src, n.src))
                if lhs != rhs:
                    return Report.failed("tilde-naturality", (m, n))
    D = P.D
    for x in P.objects:
        for y in P.objects:
            for z in P.objects:
                lhs = P2.compose(F.tilde(x, D.mul[y][z]),
                                 P2.tensor(P2.identity(F.obj[x]), F.tilde(y, z)))
                rhs = P2.compose(F.tilde(D.mul[x][y], z),
                                 P2.tensor(F.tilde(x, y), P2.identity(F.obj[z])))
                if lhs != rhs:
                    return Report.failed("associativity-coherence", (x, y, z))
    return Report.passed()


def check_regular(F: GradedFunctor) -> Report:
    """S1 objects strictly monoidal, S2/S3 Γ-equivariant, S4 strict on grade-1 morphisms."""
    P, P2 = F.src, F.dst
    D, D2 = P.D, P2.D
    for x in P.objects:
        for y in P.objects:
            if F.obj[D.mul[x][y]] != D2.mul[F.obj[x]][F.obj[y]]:
                return Report.failed("S1", (x, y))
    for s in P.gamma.elements:
        for x in P.objects:
            if F.obj[P.base.D.act(s, x)] != P2.base.D.act(s, F.obj[x]):
                return Report.failed("S2", (s, x))
    ms = list(P.morphisms(0))
    for s in P.gamma.elements:
        for m in ms:
            sm = P.morphism(P.base.D.act(s, m.src), P.base.B.act(s, m.b), 0)
            fm = F.apply(m)
            sfm = P2.morphism(P2.base.D.act(s, fm.src), P2.base.B.act(s, fm.b), 0)
            if F.apply(sm) != sfm:
                return Report.failed("S3", (s, m))
    for m in ms:
        fm = F.apply(m)
        for n in ms:
            if F.apply(P.tensor(m, n)) != P2.tensor(fm, F.apply(n)):
                return Report.failed("S4", (m, n))
    return Report.passed()


def identity_functor(P: GradedCatGroup) -> GradedFunctor:
    nb, nd, ng = P.B.order, P.D.order, P.gamma.order
    return GradedFunctor(P, P, tuple(range(nd)), (tuple(range(nb)),) * nd,
                         ((0,) * ng,) * nd, ((0,) * nd,) * nd)


def compose_functors(G: GradedFunctor, F: GradedFunctor) -> GradedFunctor:
    """G ∘ F, with (GF)~_{x,y} = G(F̃_{x,y}) ∘ G̃_{Fx,Fy}."""
    if F.dst != G.src:
        raise StructuralError("functors are not composable")
    P, P3 = F.src, G.dst
    obj = tuple(G.obj[F.obj[x]] for x in P.objects)
    mor1 = tuple(tuple(G.apply(F.apply(P.morphism(x, b, 0))).b for b in P.B.elements) for x in P.objects)
    fG = tuple(tuple(G.apply(F.apply(P.morphism(x, 0, s))).b for s in P.gamma.elements) for x in P.objects)
    fT = tuple(tuple(P3.compose(G.apply(F.tilde(x, y)), G.tilde(F.obj[x], F.obj[y])).b
                     for y in P.objects) for x in P.objects)
    return GradedFunctor(P, P3, obj, mor1, fG, fT)


def functor_from_triple(t: CrossedMorphism) -> GradedFunctor:
    """F(x) = f0(x), F(b,1) = (f1 b, 1), F(0,σ)_x = (φ(px,σ), σ), F̃_{x,y} = (φ(px,py), 1)."""
    r = validate_crossed_morphism(t)
    if not r:
        raise PreconditionError(f"invalid morphism: {r.law}", r.witness)
    P, P2 = GradedCatGroup(t.src), GradedCatGroup(t.dst)
    incl = t.dst.pi1_inclusion.map
    p = t.src.coker.projection.map
    obj = t.f0.map
    mor1 = (t.f1.map,) * P.D.order
    fG = tuple(tuple(incl[t.phi.fQG[p[x]][s]] for s in P.gamma.elements) for x in P.objects)
    fT = tuple(tuple(incl[t.phi.fQQ[p[x]][p[y]]] for y in P.objects) for x in P.objects)
    return GradedFunctor(P, P2, obj, mor1, fG, fT)


def triple_of_functor(F: GradedFunctor) -> CrossedMorphism:
    """Read (f1, f0, φ) off a regular functor; φ is checked constant on cosets of Im d."""
    r = check_regular(F)
    if not r:
        raise PreconditionError(f"functor is not regular: {r.law} fails", r.witness)
    r = check_graded_functor(F)
    if not r:
        raise PreconditionError(f"not a graded monoidal functor: {r.law} fails", r.witness)
    M, M2 = F.src.base, F.dst.base
    f0 = GroupHom(M.D.group, M2.D.group, F.obj)
    f1 = GroupHom(M.B.group, M2.B.group, tuple(F.mor1[M.d.map[b]][b] for b in M.B.group.elements))
    hom = CrossedModuleHom(M, M2, f1, f0)
    mod = hom.target_module
    pos = {b: i for i, b in enumerate(M2.pi1_inclusion.map)}
    q = M.coker
    p = q.projection.map
    nq, ng = q.group.order, M.gamma.order
    qq: list[list[Optional[int]]] = [[None] * nq for _ in range(nq)]
    qg: list[list[Optional[int]]] = [[None] * ng for _ in range(nq)]
    for x in F.src.objects:
        for y in F.src.objects:
            v = F.fT[x][y]
            if v not in pos:
                raise PreconditionError("F̃ takes a value outside Ker d'", (x, y))
            r_, s_ = p[x], p[y]
            if qq[r_][s_] is None:
                qq[r_][s_] = pos[v]
            elif qq[r_][s_] != pos[v]:
                raise PreconditionError("F̃ is not constant on cosets of Im d", (x, y))
        for s in M.gamma.elements:
            v = F.fG[x][s]
            if v not in pos:
                raise PreconditionError("F(0,σ) takes a value outside Ker d'", (x, s))
            if qg[p[x]][s] is None:
                qg[p[x]][s] = pos[v]
            elif qg[p[x]][s] != pos[v]:
                raise PreconditionError("F(0,σ) is not constant on cosets of Im d", (x, s))
    t = CrossedMorphism(hom, Cochain2(mod, qq, qg))
    r = validate_crossed_morphism(t)
    if not r:
        raise PreconditionError(f"recovered triple is invalid: {r.law}", r.witness)
    return t


# ---------------------------------------------------------------------------
# functors ΓDis Q → P


@dataclass(frozen=True)
class GradedMonoidalFunctor:
    """Functor ΓDis Q → P given by F0: Q → D and f: Q×Q ∪ Q×Γ → B."""

    Q: GammaGroup
    P: GradedCatGroup = field(repr=False)
    F0: tuple[int, ...]
    fQQ: tuple[tuple[int, ...], ...]
    fQG: tuple[tuple[int, ...], ...]

    @property
    def key(self) -> tuple[int, ...]:
        return tuple(itertools.chain(self.F0, *self.fQG, *self.fQQ))

    def as_graded_functor(self) -> GradedFunctor:
        src = dis_gamma(self.Q)
        return GradedFunctor(src, self.P, self.F0, ((0,),) * self.Q.order, self.fQG, self.fQQ)

    def induced_psi(self) -> tuple[int, ...]:
        proj = self.P.base.coker.projection.map
        return tuple(proj[v] for v in self.F0)


def check_dis_functor(F: GradedMonoidalFunctor) -> Report:
    """Normalization, target laws σF(x) = d f(x,σ) F(σx) and F(x)F(y) = d f(x,y) F(xy),
    then Γ-composition, Γ-naturality and associativity of f with ϑ_{F(·)}."""
    Q, G = F.Q.group, F.Q.gamma
    M = F.P.base
    B, D = M.B.group, M.D.group
    d, th = M.d.map, M.theta
    QQ, QG, F0 = F.fQQ, F.fQG, F.F0
    if F0[0] != 0:
        return Report.failed("unit-object", (0,))
    for x in Q.elements:
        if QQ[x][0] or QQ[0][x] or QG[x][0]:
            return Report.failed("normalization", (x,))
    for x in Q.elements:
        for s in G.elements:
            if M.D.act(s, F0[x]) != D.mul[d[QG[x][s]]][F0[F.Q.act(s, x)]]:
                return Report.failed("gamma-target", (x, s))
        for y in Q.elements:
            if D.mul[F0[x]][F0[y]] != D.mul[d[QQ[x][y]]][F0[Q.mul[x][y]]]:
                return Report.failed("tensor-target", (x, y))
    for x in Q.elements:
        for s in G.elements:
            sx = F.Q.act(s, x)
            for t in G.elements:
                if B.mul[M.B.act(t, QG[x][s])][QG[sx][t]] != QG[x][G.mul[t][s]]:
                    return Report.failed("gamma-composition", (x, s, t))
    for s in G.elements:
        for x in Q.elements:
            sx = F.Q.act(s, x)
            for y in Q.elements:
                sy = F.Q.act(s, y)
                lhs = B.mul[B.mul[QG[x][s]][th[F0[sx]][QG[y][s]]]][QQ[sx][sy]]
                rhs = B.mul[M.B.act(s, QQ[x][y])][QG[Q.mul[x][y]][s]]
                if lhs != rhs:
                    return Report.failed("gamma-naturality", (x, y, s))
    for x in Q.elements:
        tx = th[F0[x]]
        for y in Q.elements:
            xy = Q.mul[x][y]
            for z in Q.elements:
                lhs = B.mul[tx[QQ[y][z]]][QQ[x][Q.mul[y][z]]]
                rhs = B.mul[QQ[x][y]][QQ[xy][z]]
                if lhs != rhs:
                    return Report.failed("associativity", (x, y, z))
    return Report.passed()


def trivial_functor(Q: GammaGroup, P: GradedCatGroup) -> GradedMonoidalFunctor:
    n, g = Q.order, Q.gamma.order
    return GradedMonoidalFunctor(Q, P, (0,) * n, ((0,) * n,) * n, ((0,) * g,) * n)


def homotopic(F: GradedMonoidalFunctor, F2: GradedMonoidalFunctor) -> Optional[tuple[int, ...]]:
    """g: Q → B with g(1) = 0, F(x) = d g(x) F'(x), and the naturality/coherence identities
    f(x,σ) + g(σx) = σg(x) + f'(x,σ),  f(x,y) + g(xy) = g(x) + ϑ_{F'x} g(y) + f'(x,y)."""
    if F.Q != F2.Q or F.P != F2.P:
        raise StructuralError("functors have different source or target")
    Q, G = F.Q.group, F.Q.gamma
    M = F.P.base
    B, D = M.B.group, M.D.group
    n = Q.order
    cands = []
    for x in Q.elements:
        need = D.mul[F.F0[x]][D.inv[F2.F0[x]]]
        c = [b for b in B.elements if M.d.map[b] == need]
        if x == 0:
            c = [0] if 0 in c else []
        if not c:
            return None
        cands.append(c)
    # check each identity once all its g-arguments are assigned
    checks: list[list] = [[] for _ in range(n)]
    for x in Q.elements:
        for s in G.elements:
            checks[max(x, F.Q.act(s, x))].append(("G", x, s))
        for y in Q.elements:
            checks[max(x, y, Q.mul[x][y])].append(("T", x, y))
    g = [0] * n

    def ok(c) -> bool:
        if c[0] == "G":
            _, x, s = c
            lhs = B.mul[F.fQG[x][s]][g[F.Q.act(s, x)]]
            rhs = B.mul[M.B.act(s, g[x])][F2.fQG[x][s]]
            return lhs == rhs
        _, x, y = c
        lhs = B.mul[F.fQQ[x][y]][g[Q.mul[x][y]]]
        rhs = B.prod(g[x], M.theta[F2.F0[x]][g[y]], F2.fQQ[x][y])
        return lhs == rhs

    def rec(i: int) -> bool:
        if i == n:
            return True
        for v in cands[i]:
            g[i] = v
            if all(ok(c) for c in checks[i]) and rec(i + 1):
                return True
        g[i] = 0
        return False

    return tuple(g) if rec(0) else None


def transport(F2: GradedMonoidalFunctor, g: Sequence[int]) -> GradedMonoidalFunctor:
    """The functor F homotopic to F' through g, solving the homotopy identities for F."""
    Q, G = F2.Q.group, F2.Q.gamma
    M = F2.P.base
    B, D = M.B.group, M.D.group
    if len(g) != Q.order or g[0] != 0:
        raise PreconditionError("g must be a normalized map Q → B", tuple(g))
    F0 = tuple(D.mul[M.d.map[g[x]]][F2.F0[x]] for x in Q.elements)
    qg = tuple(tuple(B.prod(M.B.act(s, g[x]), F2.fQG[x][s], B.inv[g[F2.Q.act(s, x)]])
                     for s in G.elements) for x in Q.elements)
    qq = tuple(tuple(B.prod(g[x], M.theta[F2.F0[x]][g[y]], F2.fQQ[x][y], B.inv[g[Q.mul[x][y]]])
                     for y in Q.elements) for x in Q.elements)
    return GradedMonoidalFunctor(F2.Q, F2.P, F0, qq, qg)


@dataclass(frozen=True)
class FunctorEnumeration:
    functors: tuple[GradedMonoidalFunctor, ...]
    classes: tuple[tuple[int, ...], ...]

    @property
    def representatives(self) -> tuple[GradedMonoidalFunctor, ...]:
        return tuple(self.functors[c[0]] for c in self.classes)


def functor_search_size(Q: GammaGroup, P: GradedCatGroup) -> int:
    M = P.base
    ker, im = len(M.kernel), len(set(M.d.map))
    n, g = Q.order, Q.gamma.order
    return im ** (n - 1) * ker ** ((n - 1) ** 2 + n * (g - 1))


def check_psi(Q: GammaGroup, psi: GroupHom, P: GradedCatGroup) -> None:
    pi0 = P.base.pi0
    if psi.src != Q.group or psi.dst != pi0.group:
        raise StructuralError("psi must map Q to Coker d")
    r = is_gamma_hom(psi, Q, pi0)
    if not r:
        raise PreconditionError(f"psi is not a Γ-homomorphism: {r.law}", r.witness)


def iter_functors(Q: GammaGroup, psi: GroupHom, P: GradedCatGroup,
                  limit: int = FUNCTOR_LIMIT) -> Iterator[GradedMonoidalFunctor]:
    """All functors ΓDis Q → P with F(1) = 1 inducing psi, lexicographic in slot order:
    F0 on Q∖1, then f(x,σ) row by row, then f(x,y) row by row."""
    check_psi(Q, psi, P)
    size = functor_search_size(Q, P)
    if size > limit:
        raise SearchLimitError("functor enumeration", size, limit)
    M = P.base
    Qg, G = Q.group, Q.gamma
    B, D = M.B.group, M.D.group
    d, th = M.d.map, M.theta
    proj = M.coker.projection.map
    n, ng = Qg.order, G.order
    fiber_d: dict[int, list[int]] = {}
    for b in B.elements:
        fiber_d.setdefault(d[b], []).append(b)
    cosets: dict[int, list[int]] = {}
    for x in D.elements:
        cosets.setdefault(proj[x], []).append(x)

    slots: list[tuple] = [("F", x) for x in range(1, n)]
    slots += [("G", x, s) for x in range(n) for s in range(1, ng)]
    slots += [("T", x, y) for x in range(1, n) for y in range(1, n)]
    order = {s: i for i, s in enumerate(slots)}

    def pos_of(kind, *args) -> int:
        return order.get((kind,) + args, -1)

    F0 = [0] * n
    QG = [[0] * ng for _ in range(n)]
    QQ = [[0] * n for _ in range(n)]
    checks: list[list] = [[] for _ in slots]

    def add_check(c, deps):
        last = max(deps)
        if last >= 0:
            checks[last].append(c)

    for x in Qg.elements:
        for s in G.elements:
            sx = Q.act(s, x)
            for t in G.elements:
                add_check(("comp", x, s, t), [pos_of("G", x, s), pos_of("G", sx, t), pos_of("G", x, G.mul[t][s])])
    for s in G.elements:
        for x in Qg.elements:
            sx = Q.act(s, x)
            for y in Qg.elements:
                sy = Q.act(s, y)
                add_check(("nat", x, y, s), [pos_of("G", x, s), pos_of("G", y, s), pos_of("F", sx),
                                             pos_of("T", sx, sy), pos_of("T", x, y), pos_of("G", Qg.mul[x][y], s)])
    for x in Qg.elements:
        for y in Qg.elements:
            for z in Qg.elements:
                add_check(("assoc", x, y, z), [pos_of("F", x), pos_of("T", y, z), pos_of("T", x, Qg.mul[y][z]),
                                               pos_of("T", x, y), pos_of("T", Qg.mul[x][y], z)])

    def ok(c) -> bool:
        if c[0] == "comp":
            _, x, s, t = c
            return B.mul[M.B.act(t, QG[x][s])][QG[Q.act(s, x)][t]] == QG[x][G.mul[t][s]]
        if c[0] == "nat":
            _, x, y, s = c
            sx, sy = Q.act(s, x), Q.act(s, y)
            lhs = B.mul[B.mul[QG[x][s]][th[F0[sx]][QG[y][s]]]][QQ[sx][sy]]
            return lhs == B.mul[M.B.act(s, QQ[x][y])][QG[Qg.mul[x][y]][s]]
        _, x, y, z = c
        lhs = B.mul[th[F0[x]][QQ[y][z]]][QQ[x][Qg.mul[y][z]]]
        return lhs == B.mul[QQ[x][y]][QQ[Qg.mul[x][y]][z]]

    def domain(slot) -> list[int]:
        if slot[0] == "F":
            return cosets.get(psi.map[slot[1]], [])
        if slot[0] == "G":
            _, x, s = slot
            need = D.mul[M.D.act(s, F0[x])][D.inv[F0[Q.act(s, x)]]]
            return fiber_d.get(need, [])
        _, x, y = slot
        need = D.mul[D.mul[F0[x]][F0[y]]][D.inv[F0[Qg.mul[x][y]]]]
        return fiber_d.get(need, [])

    def assign(slot, v):
        if slot[0] == "F":
            F0[slot[1]] = v
        elif slot[0] == "G":
            QG[slot[1]][slot[2]] = v
        else:
            QQ[slot[1]][slot[2]] = v

    k = len(slots)

    def freeze() -> GradedMonoidalFunctor:
        return GradedMonoidalFunctor(Q, P, tuple(F0), tuple(map(tuple, QQ)), tuple(map(tuple, QG)))

    if psi.map[0] != 0:
        return

    def rec(i: int) -> Iterator[GradedMonoidalFunctor]:
        if i == k:
            yield freeze()
            return
        slot = slots[i]
        for v in domain(slot):
            assign(slot, v)
            if all(ok(c) for c in checks[i]):
                yield from rec(i + 1)
        assign(slot, 0)

    if k == 0:
        # Q trivial and Γ trivial: one candidate, still subject to the identities
        F = freeze()
        if check_dis_functor(F):
            yield F
        return
    yield from rec(0)


def enumerate_functors(Q: GammaGroup, psi: GroupHom, P: GradedCatGroup,
                       limit: int = FUNCTOR_LIMIT) -> FunctorEnumeration:
    """All functors inducing psi, partitioned into homotopy classes (first member is the rep)."""
    functors = list(iter_functors(Q, psi, P, limit))
    classes: list[list[int]] = []
    for i, F in enumerate(functors):
        for c in classes:
            if homotopic(F, functors[c[0]]) is not None:
                c.append(i)
                break
        else:
            classes.append([i])
    return FunctorEnumeration(tuple(functors), tuple(tuple(c) for c in classes))


def psi_hom(Q: GammaGroup, P: GradedCatGroup, spec) -> GroupHom:
    """Resolve 'trivial', 'id' or an explicit index list into a homomorphism Q → Coker d."""
    pi0 = P.base.pi0.group
    if isinstance(spec, GroupHom):
        return spec
    if spec == "trivial":
        return GroupHom.trivial(Q.group, pi0)
    if spec in ("id", "identity"):
        if Q.order != pi0.order:
            raise PreconditionError("psi=id needs |Q| = |Coker d|", (Q.order, pi0.order))
        return GroupHom(Q.group, pi0, tuple(Q.group.elements))
    return GroupHom(Q.group, pi0, tuple(spec))
