"""Morphism checking, isomorphism predicates, and the bounded search."""

import itertools

import pytest

import amg


def projection(n):
    """The bundle projection z_bundle(2, n) -> Z_n as a group."""
    src = amg.z_bundle(2, n)
    dst = amg.cyclic_group(n)
    f = tuple(c for a in range(2) for c in range(n))
    return src, dst, amg.MorphismPair(f, {u: 0 for u in src.units})


def test_projection_is_a_morphism():
    for n in range(2, 9):
        src, dst, m = projection(n)
        ok, witness = amg.is_almost_morphism(src, dst, m)
        assert ok and witness is None
        assert not amg.is_isomorphism(src, dst, m)


def test_identity_is_a_morphism(z6):
    ident = amg.MorphismPair.identity(z6)
    ok, _ = amg.is_almost_morphism(z6, z6, ident)
    assert ok
    assert amg.is_isomorphism(z6, z6, ident)


def test_constant_map_to_non_unit_fails(z6):
    p1 = z6.index_of("p1")
    m = amg.MorphismPair(tuple(p1 for _ in range(18)), {u: p1 for u in z6.units})
    ok, witness = amg.is_almost_morphism(z6, z6, m)
    assert not ok and witness is not None
    assert len(witness) == 1  # unit-compatibility condition


def test_mutated_identity_fails_with_witness(z6):
    f = list(range(18))
    f[z6.index_of("p3")] = z6.index_of("p5")
    m = amg.MorphismPair(tuple(f), {u: u for u in z6.units})
    ok, witness = amg.is_almost_morphism(z6, z6, m)
    assert not ok and witness is not None


def test_dimension_errors(z6):
    with pytest.raises(ValueError):
        amg.is_almost_morphism(z6, z6, amg.MorphismPair((0,), {u: u for u in z6.units}))
    with pytest.raises(ValueError):
        amg.is_almost_morphism(z6, z6, amg.MorphismPair(tuple(range(18)), {}))


def test_brandt_morphisms():
    b3 = amg.pair_groupoid(3)
    ident = amg.MorphismPair.identity(b3)
    ok, _ = amg.is_brandt_morphism(b3, b3, ident)
    assert ok and amg.is_isomorphism(b3, b3, ident)

    # injection of point sets {1,2} -> {1,2,3} induces a groupoid morphism
    b2 = amg.pair_groupoid(2)
    f = tuple(b3.index_of(b2.names[x]) for x in range(b2.order))
    f0 = {u: b3.index_of(b2.names[u]) for u in b2.units}
    ok, _ = amg.is_brandt_morphism(b2, b3, amg.MorphismPair(f, f0))
    assert ok

    # swapping two units while keeping arrows fixed breaks the anchors
    swap = {
        b3.index_of("(1,1)"): b3.index_of("(2,2)"),
        b3.index_of("(2,2)"): b3.index_of("(1,1)"),
        b3.index_of("(3,3)"): b3.index_of("(3,3)"),
    }
    f_swap = tuple(swap.get(x, x) for x in range(b3.order))
    ok, witness = amg.is_brandt_morphism(b3, b3, amg.MorphismPair(f_swap, {u: swap[u] for u in b3.units}))
    assert not ok and witness is not None


def test_morphism_composition_and_identity(z6):
    src, dst, m = projection(6)
    ident_src = amg.MorphismPair.identity(src)
    ok, _ = amg.is_almost_morphism(src, src, ident_src)
    assert ok
    # compose the projection with an automorphism of Z6 (negation)
    neg = amg.MorphismPair(tuple((-c) % 6 for c in range(6)), {0: 0})
    ok, _ = amg.is_almost_morphism(dst, dst, neg)
    assert ok
    comp = amg.MorphismPair(
        tuple(neg.f[m.f[x]] for x in range(src.order)),
        {u: neg.f0[m.f0[u]] for u in src.units},
    )
    ok, _ = amg.is_almost_morphism(src, dst, comp)
    assert ok


def test_almost_and_brandt_morphism_agree(z6):
    # a map between almost groupoids is a morphism iff it is one between
    # the brandt presentations
    src, dst, m = projection(4)
    bs, bt = amg.almost_to_brandt(src), amg.almost_to_brandt(dst)
    assert amg.is_almost_morphism(src, dst, m)[0] == amg.is_brandt_morphism(bs, bt, m)[0]
    bad = amg.MorphismPair(tuple(0 for _ in range(src.order)), {u: 0 for u in src.units})
    assert amg.is_almost_morphism(src, dst, bad)[0] == amg.is_brandt_morphism(bs, bt, bad)[0]


def test_is_isomorphism_on_relabeled_structure(z6):
    # conjugating by a permutation produces an isomorphic structure
    n = z6.order
    perm = list(range(n))
    perm[6], perm[7] = perm[7], perm[6]  # swap p1, p2
    inv = [0] * n
    for i, p in enumerate(perm):
        inv[p] = i
    names = tuple(f"x{i}" for i in range(n))
    units = tuple(sorted(perm[u] for u in z6.units))
    theta = [0] * n
    iota = [0] * n
    rows = [[None] * n for _ in range(n)]
    for x in range(n):
        theta[perm[x]] = perm[z6.theta[x]]
        iota[perm[x]] = perm[z6.iota[x]]
        for y in range(n):
            v = z6.table.get(x, y)
            if v is not None:
                rows[perm[x]][perm[y]] = perm[v]
    relabeled = amg.AlmostGroupoid(names, units, theta, iota, rows)
    m = amg.MorphismPair(tuple(perm), {u: perm[u] for u in z6.units})
    assert amg.is_isomorphism(z6, relabeled, m)
    found = amg.find_isomorphism(z6, relabeled)
    assert found is not None


def test_find_isomorphism_identity_first(z6):
    for G in (z6, amg.symmetric_group_3(), amg.pair_groupoid(3)):
        m = amg.find_isomorphism(G, G)
        assert m is not None and m.f == tuple(range(G.order))


def test_find_isomorphism_positive_cases():
    assert amg.find_isomorphism(amg.z_bundle(1, 6), amg.cyclic_group(6)) is not None
    assert amg.find_isomorphism(amg.pair_groupoid(2), amg.rstar_groupoid(3, 1)) is not None


def test_find_isomorphism_negative_cases():
    assert amg.find_isomorphism(amg.z_bundle(1, 4), amg.klein_four_group()) is None
    assert amg.find_isomorphism(amg.null_almost_groupoid(4), amg.z_bundle(2, 2)) is None
    assert amg.find_isomorphism(amg.cyclic_group(6), amg.symmetric_group_3()) is None
    assert amg.find_isomorphism(amg.cyclic_group(3), amg.cyclic_group(4)) is None


def test_find_isomorphism_bounds_and_kinds():
    with pytest.raises(ValueError):
        amg.find_isomorphism(amg.pair_groupoid(9), amg.pair_groupoid(9))
    with pytest.raises(TypeError):
        amg.find_isomorphism(amg.cyclic_group(2), amg.pair_groupoid(1))


def oracle_isomorphic(Gs, Gt):
    """All-bijections isomorphism decision for carriers of size <= 6."""
    n = Gs.order
    if n != Gt.order:
        return False
    for f in itertools.permutations(range(n)):
        f0 = {u: Gt.theta[f[u]] for u in Gs.units}
        if set(f0.values()) != set(Gt.units):
            continue
        m = amg.MorphismPair(tuple(f), f0)
        if amg.is_isomorphism(Gs, Gt, m):
            return True
    return False


def test_find_isomorphism_against_all_bijections_oracle():
    candidates = [
        amg.cyclic_group(4),
        amg.klein_four_group(),
        amg.z_bundle(1, 4),
        amg.z_bundle(2, 2),
        amg.null_almost_groupoid(4),
        amg.cyclic_group(6),
        amg.symmetric_group_3(),
        amg.z_bundle(2, 3),
        amg.z_bundle(3, 2),
        amg.null_almost_groupoid(6),
    ]
    for Gs in candidates:
        for Gt in candidates:
            got = amg.find_isomorphism(Gs, Gt) is not None
            assert got == oracle_isomorphic(Gs, Gt), (Gs, Gt)


def test_isotropy_groups_of_transitive_groupoids_are_isomorphic():
    # holds for every transitive brandt groupoid of small order
    for B in (amg.pair_groupoid(2), amg.pair_groupoid(3), amg.pair_groupoid(4), amg.rstar_groupoid(5, 2)):
        assert B.is_transitive()
        groups = [amg.fiber_group(B, u) for u in B.units]
        for a in groups:
            for b in groups:
                assert amg.find_isomorphism(a, b) is not None
