"""Equivariant extensions of B by Q of type B → D, and their classification."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Optional, Sequence

from .cohomology import EquivariantModule, h2, pullback_module
from .crossed import GammaCrossedModule, from_conjugation, validate_crossed_module
from .errors import InvariantViolation, PreconditionError, Report, SearchLimitError, StructuralError
from .graded import (
    FUNCTOR_LIMIT,
    FunctorEnumeration,
    GradedCatGroup,
    GradedMonoidalFunctor,
    build_P,
    check_dis_functor,
    check_psi,
    enumerate_functors,
    iter_functors,
)
from .groups import (
    FiniteGroup,
    GammaAction,
    GammaGroup,
    GroupHom,
    check_hom,
    homomorphisms,
    is_gamma_hom,
    kernel,
    validate_gamma_group,
    validate_group,
)
from .naming import label

RAW_ORDER_CAP = 8


@dataclass(frozen=True)
class Extension:
    M: GammaCrossedModule
    Q: GammaGroup
    E: GammaGroup
    j: GroupHom
    p: GroupHom
    eps: GroupHom

    def __repr__(self) -> str:
        return f"Extension(|E|={self.E.order}, |Q|={self.Q.order}, |Γ|={self.Q.gamma.order})"

    @cached_property
    def j_inverse(self) -> dict[int, int]:
        return {e: b for b, e in enumerate(self.j.map)}

    def conj_theta(self, e: int, b: int) -> int:
        """ϑ⁰_e(b) = j⁻¹(e·j(b)·e⁻¹)."""
        E = self.E.group
        return self.j_inverse[E.conj(e, self.j.map[b])]

    @cached_property
    def label(self) -> str:
        return label(self.E.group)


def validate_extension(e: Extension) -> Report:
    """Group and Γ-group laws of E, exactness, Γ-equivariance of j, p, ε, and (id, ε) a crossed hom."""
    M = e.M
    if e.j.src != M.B.group or e.j.dst != e.E.group or e.p.src != e.E.group or e.p.dst != e.Q.group:
        raise StructuralError("j: B → E and p: E → Q required")
    if e.eps.src != e.E.group or e.eps.dst != M.D.group:
        raise StructuralError("ε: E → D required")
    for r, tag in ((validate_group(e.E.group), "E-"), (validate_gamma_group(e.E), "E-")):
        if not r:
            return Report.failed(tag + r.law, r.witness)
    for name, f, src, dst in (("j", e.j, M.B, e.E), ("p", e.p, e.E, e.Q), ("eps", e.eps, e.E, M.D)):
        r = is_gamma_hom(f, src, dst)
        if not r:
            return Report.failed(f"{name}-{r.law}", r.witness)
    if not e.j.is_injective:
        b = next(b for b in M.B.group.elements if b and e.j.map[b] == 0)
        return Report.failed("j-injective", (b,))
    if not e.p.is_surjective:
        x = next(x for x in e.Q.group.elements if x not in set(e.p.map))
        return Report.failed("p-surjective", (x,))
    im_j, ker_p = set(e.j.map), set(kernel(e.p))
    if im_j != ker_p:
        w = min(im_j ^ ker_p)
        return Report.failed("exactness", (w,))
    for b in M.B.group.elements:
        if e.eps.map[e.j.map[b]] != M.d.map[b]:
            return Report.failed("eps-j", (b,), "ε∘j ≠ d")
    for x in e.E.group.elements:
        tx = M.theta[e.eps.map[x]]
        for b in M.B.group.elements:
            if e.conj_theta(x, b) != tx[b]:
                return Report.failed("eps-conjugation", (x, b), "ϑ⁰ ≠ ϑ∘ε")
    theta0 = tuple(tuple(e.conj_theta(x, b) for b in M.B.group.elements) for x in e.E.group.elements)
    r = validate_crossed_module(GammaCrossedModule(M.B, e.E, e.j, theta0))
    if not r:
        return Report.failed("conjugation-" + r.law, r.witness)
    return Report.passed()


def induced_psi(e: Extension) -> GroupHom:
    """ψ(x) = q(ε(e₀)) for any e₀ over x; checked independent of e₀ and Γ-equivariant."""
    M = e.M
    proj = M.coker.projection.map
    out: list[Optional[int]] = [None] * e.Q.order
    for x in e.E.group.elements:
        v = proj[e.eps.map[x]]
        k = e.p.map[x]
        if out[k] is None:
            out[k] = v
        elif out[k] != v:
            raise InvariantViolation("induced ψ is not well defined", (x,))
    psi = GroupHom(e.Q.group, M.pi0.group, tuple(out))
    r = is_gamma_hom(psi, e.Q, M.pi0)
    if not r:
        raise InvariantViolation(f"induced ψ is not a Γ-homomorphism: {r.law}", r.witness)
    return psi


# ---------------------------------------------------------------------------
# crossed products


def crossed_product(F: GradedMonoidalFunctor) -> Extension:
    """E = B × Q, index b + |B|·x, with (b,x)(c,y) = (b + ϑ_{Fx}c + f(x,y), xy),
    σ(b,x) = (σb + f(x,σ), σx) and ε(b,x) = d(b)F(x)."""
    r = check_dis_functor(F)
    if not r:
        raise PreconditionError(f"invalid functor: {r.law} fails", r.witness)
    M = F.P.base
    B, Qg = M.B.group, F.Q.group
    D = M.D.group
    nb, nq = B.order, Qg.order

    def idx(b: int, x: int) -> int:
        return b + nb * x

    mul = [[0] * (nb * nq) for _ in range(nb * nq)]
    for x in Qg.elements:
        tx = M.theta[F.F0[x]]
        for b in B.elements:
            for y in Qg.elements:
                fxy = F.fQQ[x][y]
                xy = Qg.mul[x][y]
                for c in B.elements:
                    mul[idx(b, x)][idx(c, y)] = idx(B.prod(b, tx[c], fxy), xy)
    E = FiniteGroup(mul, name="")
    G = F.Q.gamma
    act = tuple(tuple(idx(B.mul[M.B.act(s, b)][F.fQG[x][s]], F.Q.act(s, x))
                      for x in Qg.elements for b in B.elements) for s in G.elements)
    Eg = GammaGroup(E, GammaAction(G, E, act))
    j = GroupHom(B, E, tuple(idx(b, 0) for b in B.elements))
    p = GroupHom(E, Qg, tuple(x for x in Qg.elements for _ in B.elements))
    eps = GroupHom(E, D, tuple(D.mul[M.d.map[b]][F.F0[x]] for x in Qg.elements for b in B.elements))
    return Extension(M, F.Q, Eg, j, p, eps)


def section(e: Extension) -> tuple[int, ...]:
    """u_x: the minimal-index preimage of x under p (u_1 is the identity)."""
    u: list[Optional[int]] = [None] * e.Q.order
    for v in e.E.group.elements:
        k = e.p.map[v]
        if u[k] is None:
            u[k] = v
    return tuple(u)


def functor_of_extension(e: Extension) -> GradedMonoidalFunctor:
    """Read F off a section: u_x u_y = j(f(x,y)) u_{xy}, σu_x = j(f(x,σ)) u_{σx}, F(x) = ε(u_x)."""
    E, Qg, G = e.E.group, e.Q.group, e.Q.gamma
    u = section(e)
    jinv = e.j_inverse
    fQQ = tuple(tuple(jinv[E.mul[E.mul[u[x]][u[y]]][E.inv[u[Qg.mul[x][y]]]]] for y in Qg.elements)
                for x in Qg.elements)
    fQG = tuple(tuple(jinv[E.mul[e.E.act(s, u[x])][E.inv[u[e.Q.act(s, x)]]]] for s in G.elements)
                for x in Qg.elements)
    F0 = tuple(e.eps.map[u[x]] for x in Qg.elements)
    F = GradedMonoidalFunctor(e.Q, GradedCatGroup(e.M), F0, fQQ, fQG)
    r = check_dis_functor(F)
    if not r:
        raise InvariantViolation(f"extension yields an invalid functor: {r.law}", r.witness)
    return F


# ---------------------------------------------------------------------------
# equivalence


@dataclass(frozen=True)
class ExtEquivalence:
    alpha: GroupHom


def check_equivalence(e: Extension, e2: Extension, alpha: GroupHom) -> Report:
    r = check_hom(alpha)
    if not r:
        return Report.failed("alpha-" + r.law, r.witness)
    if not alpha.is_injective:
        return Report.failed("alpha-bijective", ())
    r = is_gamma_hom(alpha, e.E, e2.E)
    if not r:
        return Report.failed("alpha-" + r.law, r.witness)
    for b in e.M.B.group.elements:
        if alpha.map[e.j.map[b]] != e2.j.map[b]:
            return Report.failed("alpha-j", (b,))
    for v in e.E.group.elements:
        if e2.p.map[alpha.map[v]] != e.p.map[v]:
            return Report.failed("alpha-p", (v,))
        if e2.eps.map[alpha.map[v]] != e.eps.map[v]:
            return Report.failed("alpha-eps", (v,))
    return Report.passed()


def equivalent(e: Extension, e2: Extension) -> Optional[ExtEquivalence]:
    """Search α(j(b)u_x) = j'(b)v_x with v_x over x in p', pruned by ε and the products u_x u_y.

    Every candidate is verified in full, Γ-equivariance included.
    """
    if e.M != e2.M or e.Q != e2.Q:
        raise StructuralError("extensions over different data")
    if e.E.order != e2.E.order:
        return None
    E, E2, Qg = e.E.group, e2.E.group, e.Q.group
    u = section(e)
    jinv = e.j_inverse
    # u_x u_y = j(c(x,y)) u_{xy}
    c = [[jinv[E.mul[E.mul[u[x]][u[y]]][E.inv[u[Qg.mul[x][y]]]]] for y in Qg.elements] for x in Qg.elements]
    fibers: list[list[int]] = [[] for _ in Qg.elements]
    for v in E2.elements:
        fibers[e2.p.map[v]].append(v)
    cands = [[v for v in fibers[x] if e2.eps.map[v] == e.eps.map[u[x]]] for x in Qg.elements]
    cands[0] = [0]
    n = Qg.order
    vals = [0] * n
    # decompose each element of E once: v = j(b) u_x
    decomp = {}
    for x in Qg.elements:
        for b in e.M.B.group.elements:
            decomp[E.mul[e.j.map[b]][u[x]]] = (b, x)

    def consistent(k: int) -> bool:
        for x in range(k + 1):
            for y in range(k + 1):
                xy = Qg.mul[x][y]
                if xy <= k and max(x, y, xy) == k:
                    if E2.mul[vals[x]][vals[y]] != E2.mul[e2.j.map[c[x][y]]][vals[xy]]:
                        return False
        return True

    def build() -> GroupHom:
        m = [0] * E.order
        for v in E.elements:
            b, x = decomp[v]
            m[v] = E2.mul[e2.j.map[b]][vals[x]]
        return GroupHom(E, E2, tuple(m))

    def rec(k: int) -> Optional[GroupHom]:
        if k == n:
            a = build()
            return a if check_equivalence(e, e2, a) else None
        for v in cands[k]:
            vals[k] = v
            if consistent(k):
                got = rec(k + 1)
                if got is not None:
                    return got
        return None

    a = rec(0)
    return ExtEquivalence(a) if a is not None else None


# ---------------------------------------------------------------------------
# classification


@dataclass(frozen=True)
class Classification:
    Q: GammaGroup
    M: GammaCrossedModule
    psi: GroupHom
    functors: FunctorEnumeration
    extensions: tuple[Extension, ...]

    @property
    def count(self) -> int:
        return len(self.extensions)


def classify(q: GammaGroup, psi: GroupHom, m: GammaCrossedModule,
             limit: int = FUNCTOR_LIMIT) -> Classification:
    """One crossed product per homotopy class of functors ΓDis Q → P inducing ψ."""
    P = build_P(m)
    en = enumerate_functors(q, psi, P, limit)
    exts = tuple(crossed_product(F) for F in en.representatives)
    for i, a in enumerate(exts):
        r = validate_extension(a)
        if not r:
            raise InvariantViolation(f"crossed product fails {r.law}", r.witness)
        for b in exts[:i]:
            if equivalent(a, b) is not None:
                raise InvariantViolation("two homotopy classes gave equivalent extensions", (i,))
    return Classification(q, m, psi, en, exts)


def obstruction_vanishes(q: GammaGroup, psi: GroupHom, m: GammaCrossedModule,
                         limit: int = FUNCTOR_LIMIT) -> bool:
    """True iff some functor ΓDis Q → P induces ψ, equivalently some extension realizes ψ."""
    P = build_P(m)
    return next(iter_functors(q, psi, P, limit), None) is not None


def kernel_module(q: GammaGroup, psi: GroupHom, m: GammaCrossedModule) -> EquivariantModule:
    """Ker d as a Γ-equivariant Q-module through ψ."""
    check_psi(q, psi, GradedCatGroup(m))
    return pullback_module(m.pi_module, psi, q)


@dataclass(frozen=True)
class TorsorReport:
    classes: int
    h2: int

    @property
    def ok(self) -> bool:
        return self.classes == self.h2

    def __str__(self) -> str:
        return f"classes={self.classes} h2={self.h2} {'PASS' if self.ok else 'FAIL'}"


def torsor_count_check(q: GammaGroup, psi: GroupHom, m: GammaCrossedModule,
                       limit: int = FUNCTOR_LIMIT) -> TorsorReport:
    if not obstruction_vanishes(q, psi, m, limit):
        raise PreconditionError("no extension realizes ψ", tuple(psi.map))
    n = classify(q, psi, m, limit).count
    return TorsorReport(n, h2(kernel_module(q, psi, m)).order)


def gamma_homs(src: GammaGroup, dst: GammaGroup) -> list[GroupHom]:
    return [f for f in homomorphisms(src.group, dst.group) if is_gamma_hom(f, src, dst)]


@dataclass(frozen=True)
class ExtGammaEntry:
    psi: GroupHom
    realizable: bool
    classification: Optional[Classification]
    h2: Optional[int]


@dataclass(frozen=True)
class ExtGammaResult:
    B: GammaGroup
    Q: GammaGroup
    M: GammaCrossedModule
    entries: tuple[ExtGammaEntry, ...]

    @property
    def total(self) -> int:
        return sum(en.classification.count for en in self.entries if en.classification)

    @property
    def labels(self) -> list[str]:
        return [x.label for en in self.entries if en.classification for x in en.classification.extensions]


def ext_gamma(q: GammaGroup, b: GammaGroup, limit: int = FUNCTOR_LIMIT) -> ExtGammaResult:
    """Plain equivariant extensions of B by Q: classify over B → Aut B for every Γ-hom Q → Out B."""
    m = from_conjugation(b)
    entries = []
    for psi in gamma_homs(q, m.pi0):
        if obstruction_vanishes(q, psi, m, limit):
            c = classify(q, psi, m, limit)
            entries.append(ExtGammaEntry(psi, True, c, h2(kernel_module(q, psi, m)).order))
        else:
            entries.append(ExtGammaEntry(psi, False, None, None))
    return ExtGammaResult(b, q, m, tuple(entries))


# ---------------------------------------------------------------------------
# raw-table oracle


def _fiber_bijections(src: Sequence[int], dst: Sequence[int]) -> list[tuple[int, ...]]:
    return [tuple(p) for p in itertools.permutations(dst)] if len(src) == len(dst) else []


def _raw_tables(nb: int, Qg: FiniteGroup, B: FiniteGroup) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Group tables on B×Q (index b + |B|x) with j(b) = b a homomorphism, p(v) = v // |B| a
    homomorphism, and j(b)·(0,x) = (b,x). Searched row by row over u_x = (0,x)."""
    nq = Qg.order
    n = nb * nq
    fiber = [list(range(nb * x, nb * (x + 1))) for x in range(nq)]

    def left_j(b: int, v: int) -> int:
        c, y = v % nb, v // nb
        return B.mul[b][c] + nb * y

    rows: list[Optional[tuple[int, ...]]] = [None] * nq
    rows[0] = tuple(range(n))

    def full_row(v: int) -> Optional[tuple[int, ...]]:
        b, x = v % nb, v // nb
        r = rows[x]
        if r is None:
            return None
        return tuple(left_j(b, r[k]) for k in range(n))

    def assoc_ok() -> bool:
        known = {}
        for v in range(n):
            r = full_row(v)
            if r is not None:
                known[v] = r
        for a, ra in known.items():
            for b_, rb in known.items():
                ab = ra[b_]
                rab = known.get(ab)
                if rab is None:
                    continue
                for c in range(n):
                    bc = rb[c]
                    if rab[c] != ra[bc]:
                        return False
        return True

    def row_choices(x: int) -> Iterator[tuple[int, ...]]:
        parts = [_fiber_bijections(fiber[y], fiber[Qg.mul[x][y]]) for y in range(nq)]
        for combo in itertools.product(*parts):
            row = tuple(itertools.chain(*combo))
            if row[0] != nb * x:
                continue
            yield row

    def rec(x: int) -> Iterator[tuple[tuple[int, ...], ...]]:
        if x == nq:
            yield tuple(full_row(v) for v in range(n))
            return
        for row in row_choices(x):
            rows[x] = row
            if assoc_ok():
                yield from rec(x + 1)
        rows[x] = None

    yield from rec(1)


def _gamma_actions(E: FiniteGroup, nb: int, M: GammaCrossedModule, Q: GammaGroup) -> list[tuple]:
    """Γ-actions on E by automorphisms with σj(b) = j(σb) and p(σv) = σp(v)."""
    G = Q.gamma
    B, Qg = M.B, Q.group
    nq = Qg.order
    per_sigma = []
    for s in G.elements:
        opts = []
        choices = [[0]] + [list(range(nb * Q.act(s, x), nb * (Q.act(s, x) + 1))) for x in range(1, nq)]
        for imgs in itertools.product(*choices):
            m = [0] * E.order
            for x in range(nq):
                for b in range(nb):
                    m[b + nb * x] = E.mul[B.act(s, b)][imgs[x]]
            if check_hom(GroupHom(E, E, tuple(m))) and len(set(m)) == E.order:
                opts.append(tuple(m))
        per_sigma.append(opts)
    ident = tuple(range(E.order))
    if ident not in per_sigma[0]:
        return []
    out = []
    ng = G.order
    chosen: list[Optional[tuple[int, ...]]] = [None] * ng
    chosen[0] = ident

    def ok(k: int) -> bool:
        for s in range(k + 1):
            for t in range(k + 1):
                st = G.mul[s][t]
                if st <= k and max(s, t, st) == k:
                    if tuple(chosen[s][chosen[t][v]] for v in range(E.order)) != chosen[st]:
                        return False
        return True

    def rec(k: int) -> None:
        if k == ng:
            out.append(tuple(chosen))
            return
        for a in per_sigma[k]:
            chosen[k] = a
            if ok(k):
                rec(k + 1)
        chosen[k] = None

    rec(1)
    return out


def raw_extensions(q: GammaGroup, m: GammaCrossedModule, psi: Optional[GroupHom] = None,
                   cap: int = RAW_ORDER_CAP) -> list[Extension]:
    """Every extension structure on the set B×Q, found by table search alone, filtered by ψ."""
    B = m.B.group
    nb, nq = B.order, q.order
    if nb * nq > cap:
        raise SearchLimitError("raw extension search (|E|)", nb * nq, cap)
    D = m.D.group
    out = []
    for table in _raw_tables(nb, q.group, B):
        E = FiniteGroup(table)
        if not validate_group(E):
            continue
        j = GroupHom(B, E, tuple(range(nb)))
        p = GroupHom(E, q.group, tuple(v // nb for v in range(E.order)))
        for acts in _gamma_actions(E, nb, m, q):
            Eg = GammaGroup(E, GammaAction(q.gamma, E, acts))
            choices = [[d for d in D.elements]] * (nq - 1)
            for imgs in itertools.product(*choices):
                full = (0,) + imgs
                eps_map = tuple(D.mul[m.d.map[v % nb]][full[v // nb]] for v in range(E.order))
                eps = GroupHom(E, D, eps_map)
                if not check_hom(eps):
                    continue
                e = Extension(m, q, Eg, j, p, eps)
                if not validate_extension(e):
                    continue
                if psi is not None and induced_psi(e).map != psi.map:
                    continue
                out.append(e)
    return out


def equivalence_classes(exts: Sequence[Extension]) -> list[list[int]]:
    classes: list[list[int]] = []
    for i, e in enumerate(exts):
        for c in classes:
            if equivalent(e, exts[c[0]]) is not None:
                c.append(i)
                break
        else:
            classes.append([i])
    return classes


@dataclass(frozen=True)
class OracleReport:
    raw_structures: int
    raw_classes: int
    classified: int

    @property
    def ok(self) -> bool:
        return self.raw_classes == self.classified

    def __str__(self) -> str:
        return (f"raw-structures={self.raw_structures} raw-classes={self.raw_classes} "
                f"classes={self.classified} {'PASS' if self.ok else 'FAIL'}")


def oracle_check(q: GammaGroup, psi: GroupHom, m: GammaCrossedModule,
                 cap: int = RAW_ORDER_CAP, limit: int = FUNCTOR_LIMIT) -> OracleReport:
    raw = raw_extensions(q, m, psi, cap)
    n = len(equivalence_classes(raw))
    return OracleReport(len(raw), n, classify(q, psi, m, limit).count)
