"""Morphism checking and isomorphism search between finite structures.

A morphism is the pair (f, f0): f maps the source carrier into the target
carrier, f0 maps source units to target units. f0 is stored explicitly so
the compatibility condition is a checkable equation rather than a
definition.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .core import AlmostGroupoid, BrandtGroupoid, Structure

ISO_SEARCH_BOUND = 64


@dataclass
class MorphismPair:
    """Carrier map f (target ids, indexed by source id) and units map f0."""

    f: tuple[int, ...]
    f0: dict[int, int] = field(default_factory=dict)

    @classmethod
    def identity(cls, G: Structure) -> "MorphismPair":
        return cls(tuple(range(G.order)), {u: u for u in G.units})


def _check_dims(Gs: Structure, Gt: Structure, m: MorphismPair) -> None:
    if len(m.f) != Gs.order:
        raise ValueError(f"map has {len(m.f)} entries, source order is {Gs.order}")
    for v in m.f:
        if not 0 <= v < Gt.order:
            raise ValueError(f"map value {v} out of range for the target")
    if set(m.f0) != set(Gs.units):
        raise ValueError("unit map must cover exactly the source units")
    for v in m.f0.values():
        if not 0 <= v < Gt.order:
            raise ValueError(f"unit map value {v} out of range for the target")


def is_almost_morphism(
    Gs: AlmostGroupoid, Gt: AlmostGroupoid, m: MorphismPair
) -> tuple[bool, Optional[tuple[int, ...]]]:
    """Check f(x*y) = f(x)*f(y) on composable pairs and theta' o f = f0 o theta.

    The unit condition is checked first (witness (x,)), then products over
    composable pairs in index order (witness (x, y)); an undefined target
    product counts as a product violation.
    """
    _check_dims(Gs, Gt, m)
    f, f0 = m.f, m.f0
    for x in range(Gs.order):
        if Gt.theta[f[x]] != f0[Gs.theta[x]]:
            return False, (x,)
    Ts, Tt = Gs.table.cells, Gt.table.cells
    for x in range(Gs.order):
        for y in range(Gs.order):
            p = int(Ts[x, y])
            if p < 0:
                continue
            q = int(Tt[f[x], f[y]])
            if q < 0 or q != f[p]:
                return False, (x, y)
    return True, None


def is_brandt_morphism(
    Bs: BrandtGroupoid, Bt: BrandtGroupoid, m: MorphismPair
) -> tuple[bool, Optional[tuple[int, ...]]]:
    """Check the product condition and both anchor conditions
    alpha' o f = f0 o alpha and beta' o f = f0 o beta."""
    _check_dims(Bs, Bt, m)
    f, f0 = m.f, m.f0
    for x in range(Bs.order):
        if Bt.alpha[f[x]] != f0[Bs.alpha[x]] or Bt.beta[f[x]] != f0[Bs.beta[x]]:
            return False, (x,)
    Ts, Tt = Bs.table.cells, Bt.table.cells
    for x in range(Bs.order):
        for y in range(Bs.order):
            p = int(Ts[x, y])
            if p < 0:
                continue
            q = int(Tt[f[x], f[y]])
            if q < 0 or q != f[p]:
                return False, (x, y)
    return True, None


def is_morphism(Gs: Structure, Gt: Structure, m: MorphismPair) -> tuple[bool, Optional[tuple[int, ...]]]:
    if isinstance(Gs, AlmostGroupoid) and isinstance(Gt, AlmostGroupoid):
        return is_almost_morphism(Gs, Gt, m)
    if isinstance(Gs, BrandtGroupoid) and isinstance(Gt, BrandtGroupoid):
        return is_brandt_morphism(Gs, Gt, m)
    raise TypeError("source and target must be structures of the same kind")


def is_isomorphism(Gs: Structure, Gt: Structure, m: MorphismPair) -> bool:
    """True iff m is a morphism and both f and f0 are bijections."""
    ok, _ = is_morphism(Gs, Gt, m)
    if not ok:
        return False
    if Gs.order != Gt.order or len(set(m.f)) != Gt.order:
        return False
    if len(Gs.units) != len(Gt.units):
        return False
    return set(m.f0.values()) == set(Gt.units)


def _fiber_signature(G: Structure, u: int) -> tuple:
    if isinstance(G, AlmostGroupoid):
        fib = G.fibers[u]
        return (len(fib), tuple(sorted(G.element_order(x) for x in fib)))
    iso = G.isotropy_group(u).members
    out_deg = sum(1 for x in range(G.order) if G.alpha[x] == u)
    in_deg = sum(1 for x in range(G.order) if G.beta[x] == u)
    return (len(iso), out_deg, in_deg)


def find_isomorphism(Gs: Structure, Gt: Structure) -> Optional[MorphismPair]:
    """Backtracking search for an isomorphism; None when there is none.

    Units are matched first against units with equal fiber signatures
    (fiber sizes and element orders for almost groupoids, isotropy and
    degree counts for Brandt groupoids); remaining elements are matched in
    ascending index order with candidates tried in ascending order, so the
    search is deterministic and returns the identity for G against itself.
    """
    if type(Gs) is not type(Gt):
        raise TypeError("source and target must be structures of the same kind")
    if Gs.order > ISO_SEARCH_BOUND or Gt.order > ISO_SEARCH_BOUND:
        raise ValueError(f"isomorphism search is bounded at order {ISO_SEARCH_BOUND}")
    if Gs.order != Gt.order or len(Gs.units) != len(Gt.units):
        return None

    sig_s = {u: _fiber_signature(Gs, u) for u in Gs.units}
    sig_t = {u: _fiber_signature(Gt, u) for u in Gt.units}
    if sorted(sig_s.values()) != sorted(sig_t.values()):
        return None

    almost = isinstance(Gs, AlmostGroupoid)
    n = Gs.order
    Ts, Tt = Gs.table.cells, Gt.table.cells
    unit_vars = list(Gs.units)
    other_vars = [x for x in range(n) if x not in set(Gs.units)]
    variables = unit_vars + other_vars
    order_s = {x: Gs.element_order(x) for x in range(n)} if almost else {}
    order_t = {x: Gt.element_order(x) for x in range(n)} if almost else {}

    f = [-1] * n
    used = [False] * n
    assigned: list[int] = []

    def candidates(x: int) -> list[int]:
        if x in sig_s:
            return [t for t in Gt.units if sig_t[t] == sig_s[x]]
        if almost:
            tu = f[Gs.theta[x]]
            return [t for t in range(n) if Gt.theta[t] == tu and order_t[t] == order_s[x]]
        ta, tb = f[Gs.alpha[x]], f[Gs.beta[x]]
        return [t for t in range(n) if Gt.alpha[t] == ta and Gt.beta[t] == tb]

    def consistent(x: int, t: int) -> bool:
        ix = Gs.iota[x]
        if ix == x:
            if Gt.iota[t] != t:
                return False
        elif f[ix] != -1 and Gt.iota[t] != f[ix]:
            return False
        for a in assigned + [x]:
            fa = t if a == x else f[a]
            for (p, q), (fp, fq) in (((a, x), (fa, t)), ((x, a), (t, fa))):
                ps = int(Ts[p, q])
                pt = int(Tt[fp, fq])
                if (ps >= 0) != (pt >= 0):
                    return False
                if ps >= 0:
                    fr = t if ps == x else f[ps]
                    if fr != -1 and fr != pt:
                        return False
        for a in assigned:
            for b in assigned:
                if int(Ts[a, b]) == x and int(Tt[f[a], f[b]]) != t:
                    return False
        return True

    def extend(k: int) -> bool:
        if k == n:
            return True
        x = variables[k]
        for t in candidates(x):
            if used[t] or not consistent(x, t):
                continue
            f[x] = t
            used[t] = True
            assigned.append(x)
            if extend(k + 1):
                return True
            assigned.pop()
            f[x] = -1
            used[t] = False
        return False

    if not extend(0):
        return None
    pair = MorphismPair(tuple(f), {u: f[u] for u in Gs.units})
    if not is_isomorphism(Gs, Gt, pair):
        raise RuntimeError("search produced a non-isomorphism")
    return pair
