import pytest

from framebundles import (
    EquivariantMap,
    NoQuotient,
    NotFree,
    check_equivariant,
    compose_equivariant,
    divide,
    equivariant_map,
    group_hom,
    identity_hom,
    identity_map,
    induced_orbit_map,
    is_free,
    is_orbit_bijection,
    is_semitorsor,
    is_transitive,
    make_cyclic,
    make_direct_product,
    make_gset,
    orbits,
    standard_semitorsor,
    trivial_gset,
)
from framebundles.gsets import division_table, semitorsor_coords, semitorsor_point


def left_translation_gset(G):
    return make_gset(G, [[G.mul[g][h] for h in range(G.order)] for g in range(G.order)])


def brute_orbits(F):
    # oracle: repeated unions until stable, no BFS machinery shared with the library
    classes = []
    remaining = set(range(F.size))
    while remaining:
        seed = min(remaining)
        orbit = {seed}
        changed = True
        while changed:
            changed = False
            for g in range(F.group.order):
                for p in list(orbit):
                    q = F.act[g][p]
                    if q not in orbit:
                        orbit.add(q)
                        changed = True
        classes.append(frozenset(orbit))
        remaining -= orbit
    return classes


def test_orbits_trivial_group():
    F = trivial_gset(4)
    part = orbits(F)
    assert part.orbit_count == 4
    assert part.orbit_of == (0, 1, 2, 3)


def test_orbits_left_translation_single_orbit():
    F = left_translation_gset(make_cyclic(3))
    assert orbits(F).orbit_count == 1
    assert is_transitive(F)


def test_orbits_standard_semitorsor_against_oracle():
    F = standard_semitorsor(make_cyclic(2), 3)
    part = orbits(F)
    assert part.orbit_count == 3
    oracle = brute_orbits(F)
    assert len(oracle) == 3
    assert all(len(c) == 2 for c in oracle)
    for c in oracle:
        assert len({part.orbit_of[p] for p in c}) == 1


def test_orbit_indices_follow_smallest_representative():
    F = standard_semitorsor(make_cyclic(3), 2)
    part = orbits(F)
    assert part.representatives == (0, 1)
    assert part.orbit_of[semitorsor_point(2, 1, 2)] == 1


def test_free_transitive_semitorsor_flags():
    G = make_cyclic(4)
    torsor = left_translation_gset(G)
    assert is_free(torsor) and is_transitive(torsor) and is_semitorsor(torsor)

    one_point = make_gset(make_cyclic(2), [[0], [0]])
    assert not is_free(one_point)
    assert is_transitive(one_point)

    F = standard_semitorsor(make_cyclic(3), 2)
    assert is_free(F) and not is_transitive(F) and is_semitorsor(F)


def test_semitorsor_iff_free_on_fixtures():
    fixtures = [
        trivial_gset(3),
        standard_semitorsor(make_cyclic(2), 2),
        make_gset(make_cyclic(2), [[0, 1], [0, 1]]),  # trivial action, not free
        left_translation_gset(make_cyclic(5)),
    ]
    for F in fixtures:
        assert is_semitorsor(F) == is_free(F)


def test_standard_semitorsor_shapes():
    z2 = make_cyclic(2)
    assert standard_semitorsor(z2, 1).size == 2
    F = standard_semitorsor(z2, 3)
    assert F.size == 6
    assert orbits(F).orbit_count == 3
    fixed = standard_semitorsor(make_cyclic(1), 4)
    assert all(fixed.act[0][p] == p for p in range(4))


def test_divide_examples():
    G = make_cyclic(4)
    F = left_translation_gset(G)
    assert divide(F, 2, 2) == 0
    assert divide(F, 3, 1) == 2  # oracle: 2 + 1 = 3 in Z4

    split = standard_semitorsor(make_cyclic(2), 2)
    with pytest.raises(NoQuotient):
        divide(split, semitorsor_point(0, 0, 2), semitorsor_point(0, 1, 2))


def test_divide_rejects_non_free():
    F = make_gset(make_cyclic(2), [[0, 1], [0, 1]])
    with pytest.raises(NotFree):
        divide(F, 0, 0)


def test_division_table_agrees_with_divide():
    F = standard_semitorsor(make_cyclic(3), 2)
    table = division_table(F)
    for (fp, f), g in table.items():
        assert divide(F, fp, f) == g
        assert F.act[g][f] == fp


def test_division_rules_exhaustive_small():
    G = make_direct_product(make_cyclic(2), make_cyclic(2))
    F = standard_semitorsor(G, 2)
    part = orbits(F)
    members = [[p for p in range(F.size) if part.orbit_of[p] == k] for k in range(2)]
    for orbit in members:
        for f1 in orbit:
            for f2 in orbit:
                d = divide(F, f2, f1)
                assert d == G.inv[divide(F, f1, f2)]
                for f in orbit:
                    assert d == G.mul[divide(F, f2, f)][divide(F, f, f1)]
                for g1 in range(G.order):
                    for g2 in range(G.order):
                        assert divide(F, F.act[g2][f2], F.act[g1][f1]) == G.mul[
                            G.mul[g2][d]
                        ][G.inv[g1]]


def test_check_equivariant_identity():
    F = standard_semitorsor(make_cyclic(3), 2)
    assert check_equivariant(identity_map(F))


def test_right_translation_equivariant_when_abelian():
    G = make_cyclic(4)
    F = standard_semitorsor(G, 2)
    c = 3
    value = [
        semitorsor_point(G.mul[g][c], x, 2)
        for g in range(G.order)
        for x in range(2)
    ]
    a = equivariant_map(F, F, identity_hom(G), value)
    assert check_equivariant(a)


def test_broken_map_detected():
    F = standard_semitorsor(make_cyclic(2), 2)
    value = list(range(F.size))
    value[0], value[1] = value[1], value[0]  # swaps two points in different orbits
    a = EquivariantMap(F, F, identity_hom(F.group), tuple(value))
    assert not check_equivariant(a)
    with pytest.raises(ValueError):
        equivariant_map(F, F, identity_hom(F.group), value)


def fold_map(G):
    """G + G -> G, identity on each copy."""
    source = standard_semitorsor(G, 2)
    target = standard_semitorsor(G, 1)
    value = [
        semitorsor_point(g, 0, 1) for g in range(G.order) for _ in range(2)
    ]
    return equivariant_map(source, target, identity_hom(G), value)


def test_induced_orbit_map_identity():
    F = standard_semitorsor(make_cyclic(2), 3)
    assert induced_orbit_map(identity_map(F)) == (0, 1, 2)


def test_induced_orbit_map_fold_is_two_to_one():
    a = fold_map(make_cyclic(3))
    assert induced_orbit_map(a) == (0, 0)
    assert not is_orbit_bijection(a)


def test_induced_orbit_map_orbit_swap():
    G = make_cyclic(2)
    F = standard_semitorsor(G, 2)
    value = [semitorsor_point(g, 1 - x, 2) for g in range(G.order) for x in range(2)]
    a = equivariant_map(F, F, identity_hom(G), value)
    assert induced_orbit_map(a) == (1, 0)
    assert is_orbit_bijection(a)


def test_orbit_square_commutes_for_every_map():
    # q . a = a/ . q as full tables
    G = make_cyclic(3)
    a = fold_map(G)
    q1, q2 = orbits(a.source), orbits(a.target)
    table = induced_orbit_map(a)
    for f in range(a.source.size):
        assert q2.orbit_of[a.value[f]] == table[q1.orbit_of[f]]


def test_compose_equivariant_and_xi_composition():
    z4, z2 = make_cyclic(4), make_cyclic(2)
    F4 = standard_semitorsor(z4, 2)
    F2 = standard_semitorsor(z2, 2)
    xi = group_hom(z4, z2, [a % 2 for a in range(4)])
    reduction = equivariant_map(
        F4,
        F2,
        xi,
        [semitorsor_point(g % 2, x, 2) for g in range(4) for x in range(2)],
    )
    composed = compose_equivariant(reduction, identity_map(F4))
    assert composed.value == reduction.value
    assert composed.xi.image == xi.image
    with pytest.raises(ValueError):
        compose_equivariant(reduction, reduction)


def test_bijectivity_of_orbit_maps_for_automorphisms():
    F = standard_semitorsor(make_cyclic(2), 2)
    assert is_orbit_bijection(identity_map(F))


def test_semitorsor_coords_round_trip():
    for g in range(3):
        for x in range(4):
            p = semitorsor_point(g, x, 4)
            assert semitorsor_coords(p, 4) == (g, x)
