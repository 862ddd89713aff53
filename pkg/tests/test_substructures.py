"""Substructure constructions checked against brute-force oracles."""

import pytest

import amg
from conftest import oracle_closed_subsets, oracle_group_center


def members_by_name(G, *names):
    return G.subset(G.index_of(s) for s in names)


def test_units_are_wide_and_normal(z6):
    rep = amg.is_almost_subgroupoid(z6, z6.subset(z6.units))
    assert rep.is_subgroupoid and rep.is_wide and rep.is_normal
    assert rep.units.members == z6.units


def test_whole_carrier_is_normal(z6):
    rep = amg.is_almost_subgroupoid(z6, z6.carrier())
    assert rep.is_subgroupoid and rep.is_wide and rep.is_normal


def test_non_subgroupoid_with_witness(z6):
    rep = amg.is_almost_subgroupoid(z6, members_by_name(z6, "u1", "p3"))
    assert not rep.is_subgroupoid and not rep.is_wide and not rep.is_normal
    p3 = z6.index_of("p3")
    assert rep.witness == (p3, p3)  # p3*p3 = p11 is outside


def test_subgroupoid_report_invariant(z6):
    with pytest.raises(ValueError):
        amg.SubgroupoidReport(False, True, True, z6.subset([0]))
    with pytest.raises(ValueError):
        amg.SubgroupoidReport(True, False, True, z6.subset([0]))


def test_subgroupoid_errors(z6):
    with pytest.raises(ValueError):
        amg.is_almost_subgroupoid(z6, z6.subset([]))
    other = amg.null_almost_groupoid(2)
    with pytest.raises(ValueError):
        amg.is_almost_subgroupoid(z6, other.subset([0]))


def test_predicate_matches_oracle_enumeration():
    # library subgroupoid verdicts agree with raw subset enumeration
    for G in (amg.z_bundle(2, 3), amg.symmetric_group_3(), amg.null_almost_groupoid(3)):
        closed = set(oracle_closed_subsets(G))
        n = G.order
        for mask in range(1, 1 << n):
            S = frozenset(i for i in range(n) if (mask >> i) & 1)
            rep = amg.is_almost_subgroupoid(G, G.subset(S))
            assert rep.is_subgroupoid == (S in closed), S


def test_isotropy_subgroupoid_is_carrier(builtins):
    for label, G in builtins:
        if G.order > 20:
            continue
        assert amg.isotropy_subgroupoid(G).members == tuple(range(G.order)), label
        rep = amg.is_almost_subgroupoid(G, amg.isotropy_subgroupoid(G))
        assert rep.is_wide and rep.is_normal


def test_brandt_isotropy_subgroupoid_is_proper():
    b = amg.pair_groupoid(2)
    iso = amg.brandt_isotropy_subgroupoid(b)
    assert iso.names() == ("(1,1)", "(2,2)")


def test_disjoint_union(z6):
    g1 = z6.isotropy_group(z6.index_of("u1"))
    g3 = z6.isotropy_group(z6.index_of("u3"))
    du = amg.disjoint_union_subgroupoids(z6, g1, g3)
    assert du.names() == ("u1", "u3", "p3", "p5", "p7", "p11")
    rep = amg.is_almost_subgroupoid(z6, du)
    assert rep.is_subgroupoid and not rep.is_wide
    assert rep.units.names() == ("u1", "u3")
    # the full fiber family unions to the carrier and is wide
    family = [z6.isotropy_group(u) for u in z6.units]
    full = amg.disjoint_union_subgroupoids(z6, *family)
    assert full.members == tuple(range(18))
    assert amg.is_almost_subgroupoid(z6, full).is_wide


def test_disjoint_union_errors(z6):
    g1 = z6.isotropy_group(0)
    with pytest.raises(ValueError):
        amg.disjoint_union_subgroupoids(z6, g1, g1)
    overlap = members_by_name(z6, "u1", "u2")  # shares u1 with g1, and is a subgroupoid
    with pytest.raises(ValueError):
        amg.disjoint_union_subgroupoids(z6, g1, overlap)
    bad = members_by_name(z6, "u2", "p3")
    with pytest.raises(ValueError):
        amg.disjoint_union_subgroupoids(z6, bad)


def test_centralizer_examples(z6):
    ix = z6.index_of
    assert amg.centralizer(z6, ix("p1")).names() == ("u5", "p1", "p9")
    assert amg.centralizer(z6, ix("p1")) == z6.isotropy_group(ix("u5"))
    assert amg.centralizer(z6, ix("u1")) == z6.isotropy_group(ix("u1"))
    s3 = amg.symmetric_group_3()
    c = amg.centralizer(s3, s3.index_of("(12)"))
    assert c.names() == ("e", "(12)")


def test_centralizer_is_subgroupoid_containing_theta(builtins):
    for label, G in builtins:
        if G.order > 20:
            continue
        for a in range(G.order):
            c = amg.centralizer(G, a)
            assert G.theta[a] in set(c.members)
            assert set(c.members) <= set(G.fibers[G.theta[a]])
            assert amg.is_almost_subgroupoid(G, c).is_subgroupoid


def test_center_examples(z6):
    assert amg.center(z6).members == tuple(range(18))
    s3 = amg.symmetric_group_3()
    assert amg.center(s3).names() == ("e",)
    null = amg.null_almost_groupoid(3)
    assert amg.center(null).members == (0, 1, 2)


def test_center_matches_fiberwise_oracle(builtins):
    for label, G in builtins:
        if G.order > 20:
            continue
        expected: set[int] = set()
        for u in G.units:
            fib = list(G.fibers[u])
            pos = {x: i for i, x in enumerate(fib)}
            table = [[pos[G.mul(x, y)] for y in fib] for x in fib]
            expected |= {fib[i] for i in oracle_group_center(table)}
        assert set(amg.center(G).members) == expected, label


def test_center_is_normal_and_sandwiched(builtins):
    for label, G in builtins:
        if G.order > 20:
            continue
        z = amg.center(G)
        rep = amg.is_almost_subgroupoid(G, z)
        assert rep.is_subgroupoid and rep.is_wide and rep.is_normal, label
        assert set(G.units) <= set(z.members)
        assert set(z.members) <= set(amg.isotropy_subgroupoid(G).members)


def test_set_product(z6):
    units = z6.subset(z6.units)
    assert amg.set_product(z6, units, units) == units
    g1 = z6.isotropy_group(0)
    assert amg.set_product(z6, g1, g1) == g1
    z = amg.center(z6)
    assert amg.set_product(z6, z, units) == z
    assert amg.hk_commutes(z6, g1, units)
    other = amg.null_almost_groupoid(2)
    with pytest.raises(ValueError):
        amg.set_product(z6, units, other.subset([0]))


def test_hk_product_wide(z6):
    # wide H, K with HK = KH produce a wide subgroupoid
    H = z6.subset(z6.units)
    K = amg.center(z6)
    assert amg.hk_commutes(z6, H, K)
    hk = amg.set_product(z6, H, K)
    assert amg.is_almost_subgroupoid(z6, hk).is_wide


def test_intersections(z6):
    g1 = z6.isotropy_group(0)
    g3 = z6.isotropy_group(2)
    du = amg.disjoint_union_subgroupoids(z6, g1, g3)
    assert amg.intersect_subgroupoids(z6, [g1, du]) == g1
    units = z6.subset(z6.units)
    assert amg.intersect_subgroupoids(z6, [amg.center(z6), units]) == units
    with pytest.raises(amg.EmptyIntersectionError):
        amg.intersect_subgroupoids(z6, [g1, g3])
    with pytest.raises(ValueError):
        amg.intersect_subgroupoids(z6, [members_by_name(z6, "u1", "p3")])
    # wide (and normal) inputs give a wide (and normal) intersection
    rep = amg.is_almost_subgroupoid(
        z6, amg.intersect_subgroupoids(z6, [amg.center(z6), z6.carrier()])
    )
    assert rep.is_wide and rep.is_normal


def test_generated_subgroupoid_examples(z6):
    ix = z6.index_of
    for u in z6.units:
        assert amg.generated_subgroupoid(z6, z6.subset([u])).members == (u,)
    assert amg.generated_subgroupoid(z6, z6.subset([ix("p3")])).names() == ("u1", "p3", "p11")
    got = amg.generated_subgroupoid(z6, z6.subset([ix("p3"), ix("p5")]))
    assert got.names() == ("u1", "u3", "p3", "p5", "p7", "p11")
    with pytest.raises(ValueError):
        amg.generated_subgroupoid(z6, z6.subset([]))


def test_generated_matches_intersection_oracle():
    import itertools

    for G in (amg.z_bundle(2, 3), amg.symmetric_group_3(), amg.matrix_bundle(3)):
        closed = oracle_closed_subsets(G)
        singles = [(a,) for a in range(G.order)]
        pairs = list(itertools.combinations(range(G.order), 2))
        for seed in singles + pairs:
            got = set(amg.generated_subgroupoid(G, G.subset(seed)).members)
            containing = [
                C for C in closed if set(seed) <= C
            ]
            expected = set.intersection(*(set(C) for C in containing))
            assert got == expected, (G, seed)


def test_cyclic_subgroupoid(z6):
    ix = z6.index_of
    for u in z6.units:
        assert amg.cyclic_subgroupoid(z6, u).members == (u,)
    assert amg.cyclic_subgroupoid(z6, ix("p4")).names() == ("u2", "p4", "p12")
    zn = amg.cyclic_group(6)
    assert len(amg.cyclic_subgroupoid(zn, 1)) == 6
    zb = amg.z_bundle(2, 4)
    got = amg.cyclic_subgroupoid(zb, zb.index_of("(0,1)"))
    assert got.names() == ("(0,0)", "(0,1)", "(0,2)", "(0,3)")


def test_cyclic_equals_generated_singleton(builtins):
    for label, G in builtins:
        if G.order > 20:
            continue
        for a in range(G.order):
            assert amg.cyclic_subgroupoid(G, a) == amg.generated_subgroupoid(G, G.subset([a])), label


def test_cyclic_lagrange(builtins):
    for label, G in builtins:
        if G.order > 20:
            continue
        for a in range(G.order):
            orbit = amg.cyclic_subgroupoid(G, a)
            fib = G.fibers[G.theta[a]]
            assert set(orbit.members) <= set(fib)
            assert len(fib) % len(orbit) == 0


def test_cyclic_orbit_shape(z6):
    # when a^n = theta(a) minimally, the orbit is theta(a), a, ..., a^(n-1)
    ix = z6.index_of
    a = ix("p4")
    n = z6.element_order(a)
    assert n == 3
    expected = {z6.power(a, k) for k in range(n)}
    assert set(amg.cyclic_subgroupoid(z6, a).members) == expected


def test_is_brandt_subgroupoid():
    b = amg.pair_groupoid(3)
    H = b.subset(b.index_of(s) for s in ("(1,1)", "(2,2)", "(1,2)", "(2,1)"))
    rep = amg.is_brandt_subgroupoid(b, H)
    assert rep.is_subgroupoid and not rep.is_wide
    units = b.subset(b.units)
    rep_u = amg.is_brandt_subgroupoid(b, units)
    assert rep_u.is_subgroupoid and rep_u.is_wide
    lone = b.subset([b.index_of("(1,2)")])
    rep_l = amg.is_brandt_subgroupoid(b, lone)
    assert not rep_l.is_subgroupoid
    assert rep_l.witness is not None


def test_fiber_group(z6):
    fg = amg.fiber_group(z6, z6.index_of("u3"))
    assert fg.names == ("u3", "p5", "p7")
    assert len(fg.units) == 1
    assert amg.find_isomorphism(fg, amg.cyclic_group(3)) is not None
    b = amg.pair_groupoid(3)
    bg = amg.fiber_group(b, b.index_of("(2,2)"))
    assert bg.order == 1


def test_element_subset_api(z6):
    s = z6.subset([3, 1, 1, 2])
    assert s.members == (1, 2, 3)
    assert 2 in s and 5 not in s
    assert len(s) == 3
    with pytest.raises(ValueError):
        amg.ElementSubset(z6, (2, 1))
    with pytest.raises(ValueError):
        amg.ElementSubset(z6, (99,))
    by_name = amg.ElementSubset.from_names(z6, ["p3", "u1"])
    assert by_name.names() == ("u1", "p3")
