import json

import pytest

from scab.errors import DomainError, ExcludedSurfaceError, UnknownArcError
from scab.exchange import mutate_extended, mutate_matrix
from scab.surface import (MarkedSurface, Triangulation, boundary_extended_matrix,
                          change_tags, fan_diagonals, find_flip_path, flip,
                          flip_graph, four_punctured_sphere_triangulation,
                          once_punctured_hexagon_triangulation,
                          polygon_triangulation, punctured_digon_triangulation,
                          punctured_polygon_triangulation, signed_adjacency,
                          validate_surface)

HEXAGON_B = (
    (0, -1, 0, 0, 1, -1),
    (1, 0, -1, 0, 0, 0),
    (0, 1, 0, -1, 0, 0),
    (0, 0, 1, 0, -1, 0),
    (-1, 0, 0, 1, 0, 1),
    (1, 0, 0, 0, -1, 0),
)


# -- surface validation -------------------------------------------------------


def test_arc_count_formula():
    assert validate_surface(MarkedSurface(1, (3,), 2)) == 12
    assert validate_surface(MarkedSurface(0, (2,), 1)) == 2
    assert validate_surface(MarkedSurface(0, (), 4)) == 6
    assert validate_surface(MarkedSurface(0, (4,), 0)) == 1


@pytest.mark.parametrize("surface,rule", [
    (MarkedSurface(0, (3,), 0), "triangle"),
    (MarkedSurface(0, (2,), 0), "digon"),
    (MarkedSurface(0, (1,), 0), "monogon"),
    (MarkedSurface(0, (1,), 1), "monogon"),
    (MarkedSurface(0, (), 1), "sphere"),
    (MarkedSurface(0, (), 2), "sphere"),
    (MarkedSurface(0, (), 3), "sphere"),
    (MarkedSurface(0, (), 0), "non-empty"),
])
def test_excluded_surfaces(surface, rule):
    with pytest.raises(ExcludedSurfaceError) as err:
        validate_surface(surface)
    assert rule in str(err.value)


# -- adjacency matrices -------------------------------------------------------


def test_hexagon_signed_adjacency_matches_figure():
    t = once_punctured_hexagon_triangulation()
    assert signed_adjacency(t).rows == HEXAGON_B


def test_digon_signed_adjacency_zero():
    t = punctured_digon_triangulation()
    assert signed_adjacency(t).rows == ((0, 0), (0, 0))


def test_entries_bounded_and_skew():
    for t in (once_punctured_hexagon_triangulation(),
              four_punctured_sphere_triangulation(),
              punctured_polygon_triangulation(4)):
        b = signed_adjacency(t)
        for i in range(t.n):
            for j in range(t.n):
                assert b.rows[i][j] in (0, 1, -1, 2, -2)
                assert b.rows[i][j] == -b.rows[j][i]


def test_selffolded_adjacency_via_radius_loop_substitution():
    t = punctured_digon_triangulation()
    t1 = flip(t, 0).new_triangulation  # contains a self-folded triangle
    assert t1.selffolded_triangles()
    assert signed_adjacency(t1).rows == ((0, 0), (0, 0))


def test_square_boundary_rows_alternate():
    t = polygon_triangulation(4, [(1, 3)])
    bt = boundary_extended_matrix(t)
    assert bt.rows[0] == (0,)
    assert sorted(row[0] for row in bt.rows[1:]) == [-1, -1, 1, 1]
    # alternating around the quadrilateral in cyclic side order
    by_name = dict(zip(t.boundary_segments(), [r[0] for r in bt.rows[1:]]))
    cyclic = [by_name[s] for s in ("b1-2", "b2-3", "b3-4", "b1-4")]
    assert cyclic in ([1, -1, 1, -1], [-1, 1, -1, 1])


def test_closed_surface_has_empty_boundary_block():
    t = four_punctured_sphere_triangulation()
    bt = boundary_extended_matrix(t)
    assert bt.m == bt.n == 6


def test_boundary_matrix_commutes_with_flips():
    t = polygon_triangulation(6, fan_diagonals(6))
    bt = boundary_extended_matrix(t)
    for k in range(t.n):
        flipped = flip(t, k).new_triangulation
        assert boundary_extended_matrix(flipped).rows == mutate_extended(bt, k).rows


# -- flips --------------------------------------------------------------------


def test_digon_flip_is_type_d():
    t = punctured_digon_triangulation()
    result = flip(t, 0)
    assert result.flip_kind == "D"
    assert result.replaced_arc == "1"
    assert result.new_arc != result.replaced_arc
    assert result.new_triangulation.selffolded_triangles()


def test_flip_involution():
    for t in (punctured_digon_triangulation(),
              once_punctured_hexagon_triangulation(),
              punctured_polygon_triangulation(4)):
        for k in range(t.n):
            once = flip(t, k)
            twice = flip(once.new_triangulation, k)
            assert twice.new_triangulation == t


def test_sphere_flip_type_q():
    t = four_punctured_sphere_triangulation()
    result = flip(t, t.position_of("f"))
    assert result.flip_kind == "Q"
    assert flip(result.new_triangulation, t.position_of("f")).new_triangulation \
        .same_triangulation(t)


def test_flip_by_arc_id_and_errors():
    t = punctured_digon_triangulation()
    assert flip(t, "1").new_triangulation == flip(t, 0).new_triangulation
    with pytest.raises(UnknownArcError):
        flip(t, "zz")
    with pytest.raises(UnknownArcError):
        flip(t, 5)


def test_flip_mutation_compatibility_everywhere():
    # B(flip(T)) = mu_k(B(T)) across whole finite flip graphs, including
    # all tagged/self-folded configurations
    for t0 in (punctured_digon_triangulation(),
               punctured_polygon_triangulation(4)):
        graph = flip_graph(t0)
        for tri in graph.vertices:
            b = signed_adjacency(tri)
            for k in range(tri.n):
                flipped = flip(tri, k).new_triangulation
                assert signed_adjacency(flipped).rows == mutate_matrix(b, k).rows


# -- tag changes ---------------------------------------------------------------


def test_change_tags_digon():
    t = punctured_digon_triangulation()
    t12 = change_tags(t, "p")
    assert t12.notched == frozenset({"p"})
    assert change_tags(t12, "p") == t


def test_change_tags_inside_selffolded_swaps_radius_and_loop():
    t1 = flip(punctured_digon_triangulation(), 0).new_triangulation
    swapped = change_tags(t1, "p")
    assert swapped.same_triangulation(t1)
    assert swapped.arcs == (t1.arcs[1], t1.arcs[0])
    assert change_tags(swapped, "p") == t1


def test_change_tags_requires_puncture():
    t = punctured_digon_triangulation()
    with pytest.raises(DomainError):
        change_tags(t, "a")


def test_change_tags_commutes_with_distant_flips():
    # two punctures: flips at one pod commute with tag changes at the other
    t = four_punctured_sphere_triangulation()
    pos = t.position_of("e")
    a = change_tags(flip(t, pos).new_triangulation, "P2")
    b = flip(change_tags(t, "P2"), pos).new_triangulation
    assert a.same_triangulation(b)


# -- flip graphs ----------------------------------------------------------------


def test_digon_flip_graph_four_cycle():
    graph = flip_graph(punctured_digon_triangulation())
    assert graph.n_vertices == 4
    assert graph.n_edges == 4
    degrees = {}
    for (v, _k), w in graph.adjacency.items():
        degrees[v] = degrees.get(v, 0) + 1
    assert set(degrees.values()) == {2}


def test_hexagon_flip_graph_catalan():
    graph = flip_graph(polygon_triangulation(6, fan_diagonals(6)))
    assert graph.n_vertices == 14


def test_flip_graph_n_regular():
    graph = flip_graph(punctured_polygon_triangulation(4))
    assert graph.n_vertices == 50
    for v in range(graph.n_vertices):
        for k in range(4):
            assert (v, k) in graph.adjacency


def test_flip_graph_truncation():
    graph = flip_graph(punctured_polygon_triangulation(4), max_vertices=7)
    assert graph.truncated
    assert graph.n_vertices == 7


def test_find_flip_path():
    t = punctured_digon_triangulation()
    target = change_tags(t, "p")
    path = find_flip_path(t, target)
    assert len(path) == 2
    current = t
    for k in path:
        current = flip(current, k).new_triangulation
    assert current.same_triangulation(target)


# -- structural invariants -------------------------------------------------------


def test_euler_characteristic_consistency():
    for t in (punctured_digon_triangulation(),
              once_punctured_hexagon_triangulation(),
              four_punctured_sphere_triangulation(),
              polygon_triangulation(6, fan_diagonals(6))):
        surf = t.surface()
        n = validate_surface(surf)
        assert n == t.n
        assert 3 * t.ntri == 2 * t.n + sum(surf.boundary)


def test_canonicalization_idempotent():
    t = once_punctured_hexagon_triangulation()
    again = Triangulation(t.corners, t.glue, t.boundary, t.arcs,
                          arc_ids=t.arc_ids, notched=t.notched)
    assert again == t


def test_structural_equality_ignores_construction_order():
    a = punctured_polygon_triangulation(4)
    # rebuild with triangles listed in a different order
    perm = [2, 0, 3, 1]
    corners = [a.corners[i] for i in perm]
    where = {old: new for new, old in enumerate(perm)}
    remap = lambda slot: (where[slot[0]], slot[1])
    glue = {remap(x): remap(y) for x, y in a.glue.items()}
    boundary = {remap(x): name for x, name in a.boundary.items()}
    arcs = [tuple(sorted((remap(x), remap(y)))) for x, y in a.arcs]
    b = Triangulation(corners, glue, boundary, arcs, arc_ids=a.arc_ids)
    assert b.same_triangulation(a)
    assert b.position_match(a) == tuple(range(4))


def test_canonical_form_forbids_notch_inside_selffolded():
    t1 = flip(punctured_digon_triangulation(), 0).new_triangulation
    with pytest.raises(DomainError):
        Triangulation(t1.corners, t1.glue, t1.boundary, t1.arcs,
                      arc_ids=t1.arc_ids, notched={"p"})


def test_json_round_trip():
    for t in (punctured_digon_triangulation(),
              change_tags(punctured_digon_triangulation(), "p"),
              once_punctured_hexagon_triangulation()):
        data = json.loads(json.dumps(t.to_json()))
        back = Triangulation.from_json(data)
        assert back == t


def test_json_without_corner_labels():
    t = polygon_triangulation(4, [(1, 3)])
    data = t.to_json()
    del data["corners"]
    back = Triangulation.from_json(data)
    assert back.n == 1 and back.surface().boundary == (4,)
