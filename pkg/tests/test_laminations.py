import itertools

import pytest

from scab.errors import DimensionError, DomainError, TransportError
from scab.exchange import (ExchangeMatrix, enumerate_exchange_graph,
                           mutate_extended)
from scab.laminations import (Lamination, MultiLamination, assemble_extended,
                              elementary_lamination, lamination_from_shear,
                              multi_lamination_seed, principal_seed,
                              shear_coords, tagged_arc_census, transport,
                              universal_multilamination)
from scab.surface import (boundary_extended_matrix, change_tags, fan_diagonals,
                          flip, flip_graph, once_punctured_hexagon_triangulation,
                          polygon_triangulation, punctured_digon_triangulation,
                          punctured_polygon_triangulation, signed_adjacency)

HEXAGON_ROW = (2, 0, -2, -2, 1, -3)


def digon_stops():
    t = punctured_digon_triangulation()
    t1 = flip(t, 0).new_triangulation
    t2 = flip(t, 1).new_triangulation
    t12 = flip(t1, 1).new_triangulation
    return t, t1, t2, t12


def test_digon_table_l1():
    t, t1, t2, t12 = digon_stops()
    lam = lamination_from_shear(t, (-1, 0))
    assert shear_coords(lam, t1, [0]) == (1, 0)
    assert shear_coords(lam, t2, [1]) == (-1, 0)
    assert shear_coords(lam, t12, [0, 1]) == (1, 0)


def test_digon_table_l3():
    t, t1, t2, t12 = digon_stops()
    lam = lamination_from_shear(t, (0, 1))
    assert shear_coords(lam, t1, [0]) == (0, 1)
    assert shear_coords(lam, t2, [1]) == (0, -1)
    assert shear_coords(lam, t12, [0, 1]) == (0, -1)


def test_empty_path_identity():
    t = punctured_digon_triangulation()
    lam = lamination_from_shear(t, (5, -7))
    assert shear_coords(lam, t, []) == (5, -7)


def test_wrong_path_rejected():
    t, t1, _, _ = digon_stops()
    lam = lamination_from_shear(t, (1, 1))
    with pytest.raises(TransportError):
        shear_coords(lam, t1, [1])


def test_shear_vector_length_checked():
    t = punctured_digon_triangulation()
    with pytest.raises(DimensionError):
        lamination_from_shear(t, (1, 2, 3))


def test_assemble_digon_and_hexagon():
    t = punctured_digon_triangulation()
    ml = MultiLamination((lamination_from_shear(t, (-1, 0)),))
    assert assemble_extended(t, ml).rows == ((0, 0), (0, 0), (-1, 0))

    hexa = once_punctured_hexagon_triangulation()
    ml2 = MultiLamination((lamination_from_shear(hexa, HEXAGON_ROW),))
    bt = assemble_extended(hexa, ml2)
    assert bt.rows[6] == HEXAGON_ROW
    assert bt.rows[:6] == signed_adjacency(hexa).rows


def test_assemble_empty_multilamination():
    t = punctured_digon_triangulation()
    bt = assemble_extended(t, MultiLamination(()))
    assert bt.rows == signed_adjacency(t).rows


def test_multilamination_shared_reference_required():
    t, t1, _, _ = digon_stops()
    with pytest.raises(DomainError):
        MultiLamination((lamination_from_shear(t, (1, 0)),
                         lamination_from_shear(t1, (0, 1))))


def test_assemble_commutes_with_flips():
    hexa = once_punctured_hexagon_triangulation()
    ml = MultiLamination((lamination_from_shear(hexa, HEXAGON_ROW),))
    bt = assemble_extended(hexa, ml)
    for k in range(hexa.n):
        flipped = flip(hexa, k).new_triangulation
        assert assemble_extended(flipped, ml).rows == mutate_extended(bt, k).rows


def test_elementary_lamination_unit_vector():
    t = punctured_digon_triangulation()
    lam = elementary_lamination(t, 0)
    assert lam.shear == (1, 0)
    assert elementary_lamination(t, "2").shear == (0, 1)


def test_elementary_transport_matches_principal_mutation():
    # transporting the unit rows equals mutating the principal block
    t = once_punctured_hexagon_triangulation()
    ml = MultiLamination(tuple(elementary_lamination(t, i) for i in range(t.n)))
    bt = assemble_extended(t, ml)
    assert tuple(r[i] for i, r in enumerate(bt.rows[t.n:])) == (1,) * t.n
    for k in range(t.n):
        flipped = flip(t, k).new_triangulation
        assert assemble_extended(flipped, ml).rows == mutate_extended(bt, k).rows


def test_principal_seed_shapes():
    b = signed_adjacency(once_punctured_hexagon_triangulation())
    seed = principal_seed(b)
    assert seed.ext.m == 12 and seed.ext.n == 6
    assert tuple(seed.ext.rows[6 + i][i] for i in range(6)) == (1,) * 6
    zero = principal_seed(ExchangeMatrix([[0, 0], [0, 0]]))
    graph = enumerate_exchange_graph(zero)
    assert graph.n_seeds == 4


def test_universal_digon():
    uml = universal_multilamination(punctured_digon_triangulation())
    assert sorted(l.shear for l in uml) == [(-1, 0), (0, -1), (0, 1), (1, 0)]


def test_universal_hexagon_and_square():
    assert len(universal_multilamination(
        polygon_triangulation(6, fan_diagonals(6)))) == 9
    assert len(universal_multilamination(
        punctured_polygon_triangulation(4))) == 16


def test_tagged_arc_census_counts():
    vertices, classes = tagged_arc_census(punctured_polygon_triangulation(4))
    assert len(vertices) == 50
    assert len(classes) == 16


def test_path_independence_digon_exhaustive():
    # all flip paths of length <= 8 between digon triangulations transport
    # coordinates identically (compared through the canonical arc matching)
    t = punctured_digon_triangulation()
    lam = lamination_from_shear(t, (-1, 2))
    by_key = {}
    for length in range(0, 9):
        for path in itertools.product((0, 1), repeat=length):
            current = t
            for k in path:
                current = flip(current, k).new_triangulation
            key = current.structure_key()
            vec = shear_coords(lam, current, list(path))
            canon = tuple(vec[i] for i in _canonical_positions(current))
            if key in by_key:
                assert by_key[key] == canon, f"paths disagree at {path}"
            else:
                by_key[key] = canon
    assert len(by_key) == 4


def test_path_independence_hexagon_sampled():
    t = once_punctured_hexagon_triangulation()
    lam = lamination_from_shear(t, HEXAGON_ROW)
    by_key = {}
    for path in itertools.product(range(6), repeat=3):
        current = t
        for k in path:
            current = flip(current, k).new_triangulation
        key = current.structure_key()
        vec = shear_coords(lam, current, list(path))
        canon = tuple(vec[i] for i in _canonical_positions(current))
        if key in by_key:
            assert by_key[key] == canon
        else:
            by_key[key] = canon


def _canonical_positions(t):
    order = sorted(range(t.n), key=lambda i: t.arcs[i])
    return order


def test_change_tags_involution_on_shear():
    t = punctured_digon_triangulation()
    lam = lamination_from_shear(t, (3, -4))
    t12 = change_tags(t, "p")
    once = shear_coords(lam, t12, [("tags", "p")])
    assert once == (3, -4)
    back = shear_coords(lam, t, [("tags", "p"), ("tags", "p")])
    assert back == (3, -4)


def test_thurston_round_trip_desk_scale():
    t = punctured_digon_triangulation()
    for v0 in range(-2, 3):
        for v1 in range(-2, 3):
            lam = lamination_from_shear(t, (v0, v1))
            assert shear_coords(lam, t, []) == (v0, v1)


def test_transport_finds_path():
    t, _, _, t12 = digon_stops()
    lam = lamination_from_shear(t, (-1, 0))
    assert transport(lam, t12) == (1, 0)


def test_multi_lamination_seed_matches_boundary_pattern():
    t = polygon_triangulation(6, fan_diagonals(6))
    bt = boundary_extended_matrix(t)
    ml = MultiLamination(tuple(lamination_from_shear(t, r) for r in bt.rows[3:]))
    seed = multi_lamination_seed(t, ml)
    assert seed.ext.rows == bt.rows
