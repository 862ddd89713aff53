"""Substructure constructions and predicates for finite (almost) groupoids.

All operations are pure and read-only over verified structures; results are
ElementSubset values sorted by element index.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .core import (
    AlmostGroupoid,
    BrandtGroupoid,
    ElementSubset,
    Structure,
)


class EmptyIntersectionError(Exception):
    """Intersection of a subgroupoid family is empty."""


@dataclass(frozen=True)
class SubgroupoidReport:
    """Closure verdicts for a candidate subgroupoid.

    is_normal implies is_wide implies is_subgroupoid; units holds the image
    of the candidate under the units map(s); witness names the first
    violating element or pair when a check fails.
    """

    is_subgroupoid: bool
    is_wide: bool
    is_normal: bool
    units: ElementSubset
    witness: Optional[tuple[int, ...]] = None

    def __post_init__(self):
        if self.is_normal and not self.is_wide:
            raise ValueError("normal requires wide")
        if self.is_wide and not self.is_subgroupoid:
            raise ValueError("wide requires subgroupoid")


def _require_owned(G: Structure, H: ElementSubset) -> None:
    if H.owner is not G:
        raise ValueError("subset belongs to a different structure")
    if not H.members:
        raise ValueError("subset must be non-empty")


def is_almost_subgroupoid(G: AlmostGroupoid, H: ElementSubset) -> SubgroupoidReport:
    """Check closure of H under multiplication and inversion, wideness, normality.

    The unit set of H is computed as the theta image of H. Normality is
    checked fiber by fiber: a conjugate g*h*inv(g) is defined exactly when
    theta(g) = theta(h).
    """
    _require_owned(G, H)
    mem = set(H.members)
    T = G.table.cells
    theta, iota = G.theta, G.iota

    witness: Optional[tuple[int, ...]] = None
    closed = True
    for x in H.members:
        for y in H.members:
            if theta[x] == theta[y] and int(T[x, y]) not in mem:
                closed = False
                witness = (x, y)
                break
        if not closed:
            break
    if closed:
        for x in H.members:
            if iota[x] not in mem:
                closed = False
                witness = (x,)
                break

    units_h = ElementSubset.from_ids(G, (theta[x] for x in H.members))
    wide = closed and set(units_h.members) == set(G.units)

    normal = wide
    if wide:
        for h in H.members:
            for g in G.fibers[theta[h]]:
                conj = int(T[int(T[g, h]), iota[g]])
                if conj not in mem:
                    normal = False
                    witness = (g, h)
                    break
            if not normal:
                break

    return SubgroupoidReport(closed, wide, normal, units_h, witness)


def is_brandt_subgroupoid(B: BrandtGroupoid, H: ElementSubset) -> SubgroupoidReport:
    """Check closure of H under defined products and inversion; wide iff
    alpha(H) = beta(H) = units. Normality uses the defined conjugates
    g*h*inv(g), which requires alpha(h) = beta(h) = beta(g)."""
    _require_owned(B, H)
    mem = set(H.members)
    T = B.table.cells
    alpha, beta, iota = B.alpha, B.beta, B.iota

    witness: Optional[tuple[int, ...]] = None
    closed = True
    for x in H.members:
        for y in H.members:
            if beta[x] == alpha[y] and int(T[x, y]) not in mem:
                closed = False
                witness = (x, y)
                break
        if not closed:
            break
    if closed:
        for x in H.members:
            if iota[x] not in mem:
                closed = False
                witness = (x,)
                break

    units_h = ElementSubset.from_ids(
        B, [alpha[x] for x in H.members] + [beta[x] for x in H.members]
    )
    unit_set = set(B.units)
    wide = (
        closed
        and {alpha[x] for x in H.members} == unit_set
        and {beta[x] for x in H.members} == unit_set
    )

    normal = wide
    if wide:
        for h in H.members:
            if alpha[h] != beta[h]:
                continue
            for g in range(B.order):
                if beta[g] != alpha[h]:
                    continue
                conj = int(T[int(T[g, h]), iota[g]])
                if conj not in mem:
                    normal = False
                    witness = (g, h)
                    break
            if not normal:
                break

    return SubgroupoidReport(closed, wide, normal, units_h, witness)


def isotropy_subgroupoid(G: AlmostGroupoid) -> ElementSubset:
    """Union of all isotropy groups; for an almost groupoid this is the carrier."""
    out: set[int] = set()
    for fib in G.fibers.values():
        out.update(fib)
    return ElementSubset.from_ids(G, out)


def brandt_isotropy_subgroupoid(B: BrandtGroupoid) -> ElementSubset:
    """Elements with equal source and target; proper in general."""
    return ElementSubset.from_ids(
        B, (x for x in range(B.order) if B.alpha[x] == B.beta[x])
    )


def disjoint_union_subgroupoids(G: AlmostGroupoid, *subgroupoids: ElementSubset) -> ElementSubset:
    """Union of a pairwise-disjoint family of subgroupoids of G.

    Raises ValueError when members overlap or fail the subgroupoid check;
    the result is re-checked and is a subgroupoid with the union of the
    members' unit sets.
    """
    if not subgroupoids:
        raise ValueError("at least one subgroupoid required")
    seen: set[int] = set()
    for H in subgroupoids:
        rep = is_almost_subgroupoid(G, H)
        if not rep.is_subgroupoid:
            raise ValueError(f"input {H!r} is not a subgroupoid (witness {rep.witness})")
        overlap = seen & set(H.members)
        if overlap:
            raise ValueError(f"inputs are not disjoint; shared element {G.names[min(overlap)]}")
        seen.update(H.members)
    out = ElementSubset.from_ids(G, seen)
    if not is_almost_subgroupoid(G, out).is_subgroupoid:
        raise RuntimeError("disjoint union failed the subgroupoid check")
    return out


def centralizer(G: AlmostGroupoid, a: int) -> ElementSubset:
    """Elements of the isotropy group of theta(a) commuting with a."""
    if not 0 <= a < G.order:
        raise IndexError(f"element index out of range: {a}")
    T = G.table.cells
    fib = G.fibers[G.theta[a]]
    return ElementSubset.from_ids(G, (g for g in fib if T[g, a] == T[a, g]))


def center(G: AlmostGroupoid) -> ElementSubset:
    """Elements commuting with every member of their fiber."""
    T = G.table.cells
    out = []
    for fib in G.fibers.values():
        for a in fib:
            if all(T[x, a] == T[a, x] for x in fib):
                out.append(a)
    return ElementSubset.from_ids(G, out)


def set_product(G: AlmostGroupoid, H: ElementSubset, K: ElementSubset) -> ElementSubset:
    """All defined products h*k with h in H and k in K, deduplicated and sorted."""
    _require_owned(G, H)
    _require_owned(G, K)
    T = G.table.cells
    theta = G.theta
    out = {
        int(T[h, k])
        for h in H.members
        for k in K.members
        if theta[h] == theta[k]
    }
    return ElementSubset.from_ids(G, out)


def hk_commutes(G: AlmostGroupoid, H: ElementSubset, K: ElementSubset) -> bool:
    """True iff the set products HK and KH coincide."""
    return set_product(G, H, K).members == set_product(G, K, H).members


def intersect_subgroupoids(G: AlmostGroupoid, family: Sequence[ElementSubset]) -> ElementSubset:
    """Intersection of a family of subgroupoids; empty intersections are an error."""
    if not family:
        raise ValueError("at least one subgroupoid required")
    for H in family:
        rep = is_almost_subgroupoid(G, H)
        if not rep.is_subgroupoid:
            raise ValueError(f"input {H!r} is not a subgroupoid (witness {rep.witness})")
    common = set(family[0].members)
    for H in family[1:]:
        common &= set(H.members)
    if not common:
        raise EmptyIntersectionError("subgroupoids have empty intersection")
    return ElementSubset.from_ids(G, common)


def generated_subgroupoid(G: AlmostGroupoid, S: ElementSubset) -> ElementSubset:
    """Smallest subgroupoid containing S, by worklist closure under
    multiplication and inversion."""
    _require_owned(G, S)
    T = G.table.cells
    theta, iota = G.theta, G.iota
    members = set(S.members)
    queue = list(S.members)
    while queue:
        x = queue.pop()
        ix = iota[x]
        if ix not in members:
            members.add(ix)
            queue.append(ix)
        for y in tuple(members):
            if theta[x] == theta[y]:
                for p in (int(T[x, y]), int(T[y, x])):
                    if p not in members:
                        members.add(p)
                        queue.append(p)
    return ElementSubset.from_ids(G, members)


def cyclic_subgroupoid(G: AlmostGroupoid, a: int) -> ElementSubset:
    """All powers of a; a cyclic subgroup of the isotropy group at theta(a)."""
    if not 0 <= a < G.order:
        raise IndexError(f"element index out of range: {a}")
    e = G.theta[a]
    out = {e}
    cur = a
    while cur != e:
        out.add(cur)
        cur = G.mul(cur, a)
    return ElementSubset.from_ids(G, out)


def fiber_group(S: Structure, u: int) -> AlmostGroupoid:
    """The isotropy group at u packaged as a one-unit almost groupoid.

    Element names are inherited from S; the single unit is u itself.
    """
    fib = S.isotropy_group(u).members
    pos = {x: i for i, x in enumerate(fib)}
    names = tuple(S.names[x] for x in fib)
    e = pos[u]
    theta = tuple(e for _ in fib)
    iota = tuple(pos[S.iota[x]] for x in fib)
    rows = [[pos[S.mul(x, y)] for y in fib] for x in fib]
    return AlmostGroupoid(names, (e,), theta, iota, rows)
