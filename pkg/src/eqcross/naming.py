"""Human-readable isomorphism-type labels for small groups."""

from __future__ import annotations

from collections import Counter
from functools import lru_cache

from .groups import FiniteGroup, center, cyclic, dihedral, direct_product, is_isomorphic, quaternion, symmetric


def fingerprint(g: FiniteGroup) -> tuple:
    """Order profile, abelianness and center size."""
    profile = tuple(sorted(Counter(g.element_orders).items()))
    return (g.order, profile, g.is_abelian, len(center(g)))


def _alternating4() -> FiniteGroup:
    s4 = symmetric(4)
    # even permutations generate the unique subgroup of order 12 in S4
    from .groups import closure, subgroup
    threes = [x for x in s4.elements if s4.element_orders[x] == 3]
    sub, _ = subgroup(s4, closure(s4, threes))
    return sub


def _dicyclic12() -> FiniteGroup:
    # Z/3 ⋊ Z/4 with the generator of Z/4 inverting Z/3; index a + 3*k
    def idx(a: int, k: int) -> int:
        return a % 3 + 3 * (k % 4)

    mul = [[0] * 12 for _ in range(12)]
    for a in range(3):
        for k in range(4):
            for b in range(3):
                for m in range(4):
                    bb = b if k % 2 == 0 else -b
                    mul[idx(a, k)][idx(b, m)] = idx(a + bb, k + m)
    return FiniteGroup(mul)


@lru_cache(maxsize=None)
def catalog() -> tuple[tuple[str, FiniteGroup], ...]:
    z = {n: cyclic(n) for n in range(1, 13)}
    entries = [(f"Z/{n}", z[n]) for n in range(1, 13)]
    entries += [
        ("Z/2xZ/2", direct_product(z[2], z[2])),
        ("Z/2xZ/4", direct_product(z[2], z[4])),
        ("Z/2xZ/2xZ/2", direct_product(direct_product(z[2], z[2]), z[2])),
        ("Z/3xZ/3", direct_product(z[3], z[3])),
        ("Z/2xZ/6", direct_product(z[2], z[6])),
        ("S3", symmetric(3)),
        ("D8", dihedral(4)),
        ("Q8", quaternion()),
        ("D10", dihedral(5)),
        ("D12", dihedral(6)),
        ("A4", _alternating4()),
        ("Dic12", _dicyclic12()),
    ]
    return tuple(entries)


@lru_cache(maxsize=None)
def _catalog_by_print() -> dict:
    out: dict = {}
    for name, g in catalog():
        out.setdefault(fingerprint(g), []).append((name, g))
    return out


def label(g: FiniteGroup) -> str:
    """Catalog name, confirmed by an isomorphism search; otherwise a fingerprint description."""
    fp = fingerprint(g)
    for name, h in _catalog_by_print().get(fp, []):
        if is_isomorphic(g, h):
            return name
    kind = "abelian" if fp[2] else "nonabelian"
    return f"order-{g.order} {kind} group"
