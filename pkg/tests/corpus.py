"""Small Γ-groups and crossed modules used across the test suite.

Γ ranges over 1, Z/2, Z/3, Z/4 and Z/2×Z/2; base groups have order at most 8.
Γ-actions are the trivial one plus up to two nontrivial Γ → Aut(g).
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from eqcross.crossed import (
    from_central_surjection,
    from_conjugation,
    from_inclusion,
    crossed_isomorphism,
    from_module,
)
from eqcross.extensions import gamma_homs
from eqcross.groups import (
    GammaAction,
    GammaGroup,
    GroupHom,
    automorphism_group,
    center,
    closure,
    cyclic,
    dihedral,
    direct_product,
    homomorphisms,
    is_gamma_hom,
    is_subgroup,
    normality_witness,
    quaternion,
    quotient,
    symmetric,
)
from eqcross.naming import fingerprint

Z1, Z2, Z3, Z4 = cyclic(1), cyclic(2), cyclic(3), cyclic(4)
V4 = direct_product(Z2, Z2, name="Z2xZ2")
GAMMAS = (Z1, Z2, Z3, Z4, V4)


def base_groups():
    return (Z1, Z2, Z3, Z4, V4, cyclic(5), symmetric(3), cyclic(6), dihedral(4), quaternion(),
            cyclic(8), direct_product(Z2, Z4, name="Z2xZ4"))


def gamma_structures(g, gamma, extra: int = 2):
    """The trivial Γ-action on g, then the first ``extra`` nontrivial ones."""
    out = [GammaGroup.trivial(g, gamma)]
    if gamma.order == 1:
        return out
    aut = automorphism_group(g)
    for h in homomorphisms(gamma, aut.group):
        if len(out) > extra:
            break
        if all(v == 0 for v in h.map):
            continue
        out.append(GammaGroup(g, GammaAction(gamma, g, tuple(aut.perms[v] for v in h.map))))
    return out


@lru_cache(maxsize=None)
def gamma_groups():
    out = []
    for g in base_groups():
        for gamma in GAMMAS:
            out.extend(gamma_structures(g, gamma))
    return tuple(out)


def normal_gamma_subgroups(D: GammaGroup):
    """Γ-stable normal subgroups generated by at most two elements, plus D itself."""
    g = D.group
    seen = set()
    for a, b in itertools.combinations_with_replacement(g.elements, 2):
        seen.add(closure(g, (a, b)))
    seen.add(tuple(g.elements))
    for n in sorted(seen, key=lambda s: (len(s), s)):
        if normality_witness(g, n) is not None:
            continue
        if all(D.act(s, x) in n for s in D.gamma.elements for x in n):
            yield n


def central_gamma_quotients(B: GammaGroup):
    """(B, B/N, projection) for Γ-stable subgroups N of the center."""
    g = B.group
    z = center(g)
    seen = set()
    for a in z:
        seen.add(closure(g, (a,)))
    seen.add(tuple(z))
    for n in sorted(seen, key=lambda s: (len(s), s)):
        if not is_subgroup(g, n) or not all(B.act(s, x) in n for s in B.gamma.elements for x in n):
            continue
        q = quotient(g, n)
        proj = q.projection.map
        rows = tuple(tuple(proj[B.act(s, r)] for r in q.reps) for s in B.gamma.elements)
        D = GammaGroup(q.group, GammaAction(B.gamma, q.group, rows))
        yield D, GroupHom(g, q.group, proj)


def module_instances():
    """Abelian B with a D-action compatible with Γ, built by hand."""
    out = []
    inv3 = ((0, 1, 2), (0, 2, 1))
    for gamma in (Z1, Z2):
        B = GammaGroup.trivial(Z3, gamma)
        D = GammaGroup.trivial(Z2, gamma)
        out.append((B, D, inv3))
    # Γ = Z/2 inverting B = Z/3 and D = Z/2 acting by inversion too
    B = GammaGroup(Z3, GammaAction(Z2, Z3, inv3))
    out.append((B, GammaGroup.trivial(Z2, Z2), inv3))
    # Z/3 rotating the nonzero elements of Z/2×Z/2
    rot = ((0, 1, 2, 3), (0, 2, 3, 1), (0, 3, 1, 2))
    out.append((GammaGroup.trivial(V4), GammaGroup.trivial(Z3), rot))
    # trivial action on Z/2 by Z/4, with Γ = Z/2 acting on D by negation
    D = GammaGroup(Z4, GammaAction(Z2, Z4, ((0, 1, 2, 3), (0, 3, 2, 1))))
    out.append((GammaGroup.trivial(Z2, Z2), D, ((0, 1),) * 4))
    return out


@lru_cache(maxsize=None)
def crossed_modules(max_order: int = 8):
    """(tag, module) pairs from the four standard constructors, |B|, |D| ≤ max_order."""
    out = []
    for D in gamma_groups():
        if D.order > max_order:
            continue
        for n in normal_gamma_subgroups(D):
            out.append((f"inclusion {D.name}>{len(n)} |Γ|={D.gamma.order}", from_inclusion(D, n)))
    for B, D, act in module_instances():
        out.append((f"module {B.name}<-{D.name} |Γ|={B.gamma.order}", from_module(B, D, act)))
    for B in gamma_groups():
        if B.order == 8 and B.group.name != "D8" or B.order > max_order:
            continue
        m = from_conjugation(B)
        if m.D.order <= max_order:
            out.append((f"conjugation {B.name} |Γ|={B.gamma.order}", m))
    for B in gamma_groups():
        if B.order > max_order:
            continue
        for D, p in central_gamma_quotients(B):
            out.append((f"central {B.name}->{D.order} |Γ|={B.gamma.order}", from_central_surjection(B, D, p)))
    return tuple(out)


def small_crossed_modules(max_b: int = 4, max_d: int = 6, max_gamma: int = 2):
    return tuple((t, m) for t, m in crossed_modules()
                 if m.B.order <= max_b and m.D.order <= max_d and m.gamma.order <= max_gamma)


# --- named instances used by several test modules


def triv(g, gamma=Z1):
    return GammaGroup.trivial(g, gamma)


def inversion_z3(gamma=Z2):
    return GammaGroup(Z3, GammaAction(gamma, Z3, ((0, 1, 2), (0, 2, 1))))


def swap_v4():
    return GammaGroup(V4, GammaAction(Z2, V4, ((0, 1, 2, 3), (0, 2, 1, 3))))


def conj_z3(gamma=Z1):
    return from_conjugation(triv(Z3, gamma))


def central_z2(gamma=Z1):
    return from_central_surjection(triv(Z2, gamma), triv(Z1, gamma), GroupHom.trivial(Z2, Z1))


# --- isomorphism-reduced views, for the expensive sweeps


def _gamma_iso(a: GammaGroup, b: GammaGroup) -> bool:
    if a.gamma != b.gamma or a.order != b.order:
        return False
    return any(f.is_injective and is_gamma_hom(f, a, b) for f in homomorphisms(a.group, b.group))


def _reduce(items, key, same):
    buckets: dict = {}
    out = []
    for it in items:
        bucket = buckets.setdefault(key(it), [])
        if not any(same(it, other) for other in bucket):
            bucket.append(it)
            out.append(it)
    return tuple(out)


@lru_cache(maxsize=None)
def distinct_gamma_groups():
    """gamma_groups() up to Γ-isomorphism."""
    return _reduce(gamma_groups(), lambda g: (g.gamma.mul, fingerprint(g.group)), _gamma_iso)


@lru_cache(maxsize=None)
def distinct_crossed_modules(max_b: int = 4):
    """crossed_modules() with |B| ≤ max_b, up to isomorphism of Γ-crossed modules."""
    ms = [(t, m) for t, m in crossed_modules() if m.B.order <= max_b]
    return _reduce(ms, lambda tm: (tm[1].gamma.mul, fingerprint(tm[1].B.group), fingerprint(tm[1].D.group)),
                   lambda a, b: crossed_isomorphism(a[1], b[1]) is not None)


def extension_problems(max_e: int = 8):
    """(tag, Q, ψ, M) over distinct M and Q with |B|·|Q| ≤ max_e and |Q| ≥ 2, every Γ-hom ψ."""
    out = []
    for tag, m in distinct_crossed_modules():
        for q in distinct_gamma_groups():
            if q.gamma != m.gamma or q.order < 2 or m.B.order * q.order > max_e:
                continue
            for psi in gamma_homs(q, m.pi0):
                out.append((f"{tag} Q={q.name} psi={list(psi.map)}", q, psi, m))
    return out
