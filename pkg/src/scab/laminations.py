"""Integral laminations in shear coordinates and coefficient constructions.

A lamination is stored as its shear-coordinate vector with respect to a
reference tagged triangulation; any integer vector is admissible (the
coordinatization is a bijection onto Z^n).  Transport to other
triangulations appends the vector as a coefficient row of the extended
exchange matrix and mutates along a flip path; across a simultaneous tag
change the pair (re-tagged triangulation, spiral-reversed lamination) is a
pure relabeling, so coordinates are carried unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DimensionError, DomainError, FiniteTypeError, TransportError
from .exchange import (ExchangeMatrix, ExtendedExchangeMatrix, GeometricSeed,
                       _mutate_rows)
from .surface import (Triangulation, change_tags, find_flip_path, flip,
                      signed_adjacency)


@dataclass(frozen=True)
class Lamination:
    reference: Triangulation
    shear: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "shear", tuple(int(v) for v in self.shear))
        if len(self.shear) != self.reference.n:
            raise DimensionError("shear vector length must equal the arc count")

    def to_json(self) -> dict:
        return {"reference": self.reference.structure_id(),
                "shear": list(self.shear)}


@dataclass(frozen=True)
class MultiLamination:
    laminations: tuple[Lamination, ...]

    def __post_init__(self):
        lams = tuple(self.laminations)
        object.__setattr__(self, "laminations", lams)
        if lams:
            ref = lams[0].reference
            for lam in lams[1:]:
                if not lam.reference.same_triangulation(ref):
                    raise DomainError("laminations must share one reference")

    def __len__(self) -> int:
        return len(self.laminations)

    def __iter__(self):
        return iter(self.laminations)

    @property
    def reference(self) -> Triangulation:
        return self.laminations[0].reference


def lamination_from_shear(t: Triangulation, shear) -> Lamination:
    return Lamination(t, tuple(shear))


def _transport_vector(tri: Triangulation, vector, moves):
    """Apply flip / tag-change moves, mutating the appended coefficient row."""
    vec = list(vector)
    current = tri
    for move in moves:
        if isinstance(move, tuple) and move[0] == "tags":
            current = change_tags(current, move[1])
            # rule (i): relabeling with spiral reversal, coordinates unchanged
            continue
        k = move if isinstance(move, int) else current.position_of(move)
        rows = [list(r) for r in signed_adjacency(current).rows] + [vec]
        mutated = _mutate_rows(tuple(tuple(r) for r in rows), k, current.n)
        vec = list(mutated[-1])
        current = flip(current, k).new_triangulation
    return current, vec


def shear_coords(lam: Lamination, target: Triangulation, path=()) -> tuple[int, ...]:
    """Transport the shear vector along the given flip/tag-change path.

    The endpoint of the path must be the target triangulation; coordinates
    are returned in the target's arc positions.
    """
    current, vec = _transport_vector(lam.reference, lam.shear, path)
    if not current.same_triangulation(target):
        raise TransportError("path does not lead to the target triangulation")
    match = current.position_match(target)
    out = [0] * target.n
    for pos, value in enumerate(vec):
        out[match[pos]] = value
    return tuple(out)


def transport(lam: Lamination, target: Triangulation,
              max_vertices: int = 100000) -> tuple[int, ...]:
    """Shear coordinates at the target, finding a flip path automatically."""
    path = find_flip_path(lam.reference, target, max_vertices)
    return shear_coords(lam, target, path)


def assemble_extended(t: Triangulation, ml: MultiLamination) -> ExtendedExchangeMatrix:
    """Top block B(T); bottom rows are the laminations' shear coordinates."""
    rows = [list(r) for r in signed_adjacency(t).rows]
    for lam in ml:
        rows.append(list(transport(lam, t)))
    return ExtendedExchangeMatrix(rows, t.n)


def elementary_lamination(t: Triangulation, arc) -> Lamination:
    """The lamination whose shear vector at t is the unit vector at `arc`."""
    pos = arc if isinstance(arc, int) else t.position_of(arc)
    if not 0 <= pos < t.n:
        raise DomainError(f"arc position {pos} out of range")
    shear = [0] * t.n
    shear[pos] = 1
    return Lamination(t, tuple(shear))


def principal_seed(b: ExchangeMatrix, labels=None) -> GeometricSeed:
    """Seed with principal coefficients: identity bottom block."""
    rows = [list(r) for r in b.rows]
    for i in range(b.n):
        rows.append([1 if j == i else 0 for j in range(b.n)])
    return GeometricSeed.initial(ExtendedExchangeMatrix(rows, b.n), labels)


def multi_lamination_seed(t: Triangulation, ml: MultiLamination,
                          labels=None) -> GeometricSeed:
    return GeometricSeed.initial(assemble_extended(t, ml),
                                 labels if labels is not None else t.arc_ids)


def tagged_arc_census(t0: Triangulation, max_vertices: int = 100000):
    """Flip closure with tagged-arc identity tracked across triangulations.

    Returns (vertices, arc classes) where each class is a list of
    (vertex index, position) naming one tagged arc of the surface.  Arcs in
    adjacent triangulations are identified positionally through the flip
    (the n-1 untouched arcs persist), and identifications are merged with a
    union-find when two flip paths meet.
    """
    vertices = [t0]
    index = {t0.structure_key(): 0}
    parent: dict = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    for pos in range(t0.n):
        parent[(0, pos)] = (0, pos)
    head = 0
    while head < len(vertices):
        current = vertices[head]
        for k in range(current.n):
            result = flip(current, k)
            new_t = result.new_triangulation
            key = new_t.structure_key()
            if key not in index:
                if len(vertices) >= max_vertices:
                    raise FiniteTypeError(
                        "flip closure exceeded the bound; surface is not of "
                        "finite cluster type at this scale")
                index[key] = len(vertices)
                vertices.append(new_t)
                for pos in range(new_t.n):
                    parent[(index[key], pos)] = (index[key], pos)
            v = index[key]
            match = new_t.position_match(vertices[v])
            for pos in range(current.n):
                if pos != k:
                    union((head, pos), (v, match[pos]))
        head += 1
    classes: dict = {}
    for node in parent:
        classes.setdefault(find(node), []).append(node)
    ordered = [sorted(members) for members in classes.values()]
    ordered.sort()
    return vertices, ordered


def universal_multilamination(t: Triangulation,
                              max_vertices: int = 100000) -> MultiLamination:
    """One elementary lamination per tagged arc, transported to t.

    Requires the flip closure to be finite (types A and D at our scale).
    """
    vertices, classes = tagged_arc_census(t, max_vertices)
    lams = []
    for members in classes:
        v, pos = members[0]
        unit = elementary_lamination(vertices[v], pos)
        lams.append(Lamination(t, transport(unit, t, max_vertices)))
    return MultiLamination(tuple(lams))
