"""Bordered surfaces, tagged triangulations, flips, and adjacency matrices.

A tagged triangulation is stored as an ideal gluing complex (oriented
triangles, a slot-pairing for interior arcs, labeled boundary slots) plus a
set of fully notched punctures.  Every tagged triangulation is represented
this way: a notched arc at a puncture enclosed by a self-folded triangle is
encoded through the loop/radius pair of the self-folded configuration, and
the canonical-form invariant forbids notching such punctures directly.

Triangle sides run counterclockwise: side ``s`` of a triangle goes from
corner ``s`` to corner ``s+1``.  Complexes are renumbered into a canonical
form on construction, so structural equality of tagged triangulations is
plain equality of the stored data (ignoring arc positions and ids).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (DimensionError, DomainError, ExcludedSurfaceError,
                     FiniteTypeError, TransportError, UnknownArcError)
from .exchange import ExchangeMatrix, ExtendedExchangeMatrix, _toggle_label

Slot = tuple[int, int]


@dataclass(frozen=True)
class MarkedSurface:
    genus: int
    boundary: tuple[int, ...]  # marked points per boundary component
    punctures: int

    def __post_init__(self):
        object.__setattr__(self, "boundary", tuple(self.boundary))


def validate_surface(s: MarkedSurface) -> int:
    """Arc count n = 6g + 3b + 3p + c - 6, rejecting the excluded cases."""
    g, b, p = s.genus, len(s.boundary), s.punctures
    c = sum(s.boundary)
    if g < 0 or p < 0 or any(ci < 1 for ci in s.boundary):
        raise ExcludedSurfaceError("negative parameters or empty boundary component")
    if b == 0 and p == 0:
        raise ExcludedSurfaceError("marked point set must be non-empty")
    if g == 0 and b == 0 and p <= 3:
        raise ExcludedSurfaceError(f"sphere with {p} puncture(s) is not allowed")
    if g == 0 and b == 1 and c == 1 and p == 0:
        raise ExcludedSurfaceError("unpunctured monogon is not allowed")
    if g == 0 and b == 1 and c == 1 and p == 1:
        raise ExcludedSurfaceError("once-punctured monogon is not allowed")
    if g == 0 and b == 1 and c == 2 and p == 0:
        raise ExcludedSurfaceError("unpunctured digon is not allowed")
    if g == 0 and b == 1 and c == 3 and p == 0:
        raise ExcludedSurfaceError("unpunctured triangle is not allowed")
    n = 6 * g + 3 * b + 3 * p + c - 6
    if n < 1:
        raise ExcludedSurfaceError(f"surface admits no triangulation (n = {n})")
    return n


def _canonical_complex(corners, glue, boundary):
    """Canonical renumbering of an oriented gluing complex.

    Minimizes a breadth-first encoding over all starting flags; the result
    depends only on the isomorphism class of the labeled complex.  Returns
    (corners, glue, boundary, slot_map) in the canonical numbering.
    """
    ntri = len(corners)
    best_enc = None
    best_assigned = None
    for t0 in range(ntri):
        for r0 in range(3):
            assigned = {t0: (0, r0)}
            order = [t0]
            i = 0
            while i < len(order):
                t = order[i]
                rot = assigned[t][1]
                for s_new in range(3):
                    slot = (t, (s_new + rot) % 3)
                    if slot in boundary:
                        continue
                    pt, ps = glue[slot]
                    if pt not in assigned:
                        assigned[pt] = (len(order), ps)
                        order.append(pt)
                i += 1
            if len(order) != ntri:
                raise DomainError("gluing complex is not connected")
            enc = []
            for t in order:
                rot = assigned[t][1]
                corner_t = tuple(corners[t][(rot + j) % 3] for j in range(3))
                sides = []
                for s_new in range(3):
                    slot = (t, (s_new + rot) % 3)
                    if slot in boundary:
                        sides.append(("B", boundary[slot], 0))
                    else:
                        pt, ps = glue[slot]
                        pi, prot = assigned[pt]
                        sides.append(("G", str(pi), (ps - prot) % 3))
                enc.append((corner_t, tuple(sides)))
            enc = tuple(enc)
            if best_enc is None or enc < best_enc:
                best_enc, best_assigned = enc, assigned
    new_corners = tuple(entry[0] for entry in best_enc)
    new_glue: dict[Slot, Slot] = {}
    new_boundary: dict[Slot, str] = {}
    for i, (_, sides) in enumerate(best_enc):
        for s, item in enumerate(sides):
            if item[0] == "B":
                new_boundary[(i, s)] = item[1]
            else:
                new_glue[(i, s)] = (int(item[1]), item[2])
    slot_map = {}
    for t, (new_i, rot) in best_assigned.items():
        for s_old in range(3):
            slot_map[(t, s_old)] = (new_i, (s_old - rot) % 3)
    return new_corners, new_glue, new_boundary, slot_map


class Triangulation:
    """Tagged triangulation as a canonical gluing complex plus notches."""

    __slots__ = ("corners", "glue", "boundary", "arcs", "arc_ids", "notched",
                 "_punctures", "_selffolded")

    def __init__(self, corners, glue, boundary, arcs, arc_ids=None,
                 notched: Iterable[str] = (), _canonical: bool = False):
        corners = tuple(tuple(str(v) for v in tri) for tri in corners)
        glue = {tuple(k): tuple(v) for k, v in glue.items()}
        boundary = {tuple(k): str(v) for k, v in boundary.items()}
        if not _canonical:
            corners, glue, boundary, slot_map = _canonical_complex(corners, glue, boundary)
            arcs = [tuple(sorted((slot_map[tuple(a)], slot_map[tuple(b)])))
                    for a, b in arcs]
        else:
            arcs = [tuple(sorted((tuple(a), tuple(b)))) for a, b in arcs]
        self.corners = corners
        self.glue = glue
        self.boundary = boundary
        self.arcs = tuple(arcs)
        self.arc_ids = (tuple(arc_ids) if arc_ids is not None
                        else tuple(f"g{i + 1}" for i in range(len(arcs))))
        self.notched = frozenset(str(v) for v in notched)
        self._punctures = None
        self._selffolded = None
        self._validate()

    # -- structure queries ----------------------------------------------

    @property
    def n(self) -> int:
        return len(self.arcs)

    @property
    def ntri(self) -> int:
        return len(self.corners)

    def side_endpoints(self, slot: Slot) -> tuple[str, str]:
        t, s = slot
        return self.corners[t][s], self.corners[t][(s + 1) % 3]

    def vertices(self) -> frozenset:
        return frozenset(v for tri in self.corners for v in tri)

    def punctures(self) -> frozenset:
        if self._punctures is None:
            on_boundary = set()
            for slot in self.boundary:
                on_boundary.update(self.side_endpoints(slot))
            self._punctures = self.vertices() - on_boundary
        return self._punctures

    def selffolded_triangles(self) -> dict[int, dict]:
        """triangle index -> {radius: slot pair, loop: slot, puncture: vertex}."""
        if self._selffolded is None:
            found = {}
            for (t, s), (t2, s2) in self.glue.items():
                if t == t2 and (t, s) < (t2, s2):
                    loop_side = ({0, 1, 2} - {s, s2}).pop()
                    if (s + 1) % 3 == s2:
                        punct = self.corners[t][s2]
                    else:
                        punct = self.corners[t][s]
                    found[t] = {"radius": ((t, s), (t, s2)),
                                "loop": (t, loop_side),
                                "puncture": punct}
            self._selffolded = found
        return self._selffolded

    def position_of(self, arc_id: str) -> int:
        try:
            return self.arc_ids.index(arc_id)
        except ValueError:
            raise UnknownArcError(f"no arc with id {arc_id!r}") from None

    def position_of_pair(self, pair) -> int:
        try:
            return self.arcs.index(pair)
        except ValueError:
            raise UnknownArcError(f"no arc with slots {pair!r}") from None

    def structure_key(self):
        """Hashable identity of the tagged triangulation (positions/ids ignored)."""
        return (self.corners,
                tuple(sorted(self.glue.items())),
                tuple(sorted(self.boundary.items())),
                self.notched)

    def structure_id(self) -> str:
        import hashlib
        digest = hashlib.sha1(repr(self.structure_key()).encode()).hexdigest()
        return digest[:12]

    def boundary_segments(self) -> list[str]:
        return sorted(self.boundary.values())

    def surface(self) -> MarkedSurface:
        """Derive (genus, boundary sizes, punctures) from the complex."""
        n_vert = len(self.vertices())
        n_edges = self.n + len(self.boundary)
        n_faces = self.ntri
        comps = []
        seen = set()
        for slot in self.boundary:
            if slot in seen:
                continue
            size = 0
            cur = slot
            while cur not in seen:
                seen.add(cur)
                size += 1
                t, s = cur
                nxt = (t, (s + 1) % 3)
                while nxt in self.glue:
                    t2, s2 = self.glue[nxt]
                    nxt = (t2, (s2 + 1) % 3)
                cur = nxt
            comps.append(size)
        euler = n_vert - n_edges + n_faces
        b = len(comps)
        genus2 = 2 - b - euler
        if genus2 % 2:
            raise DomainError("complex has inconsistent Euler characteristic")
        return MarkedSurface(genus2 // 2, tuple(sorted(comps)),
                             len(self.punctures()))

    # -- validation ------------------------------------------------------

    def _validate(self):
        all_slots = {(t, s) for t in range(self.ntri) for s in range(3)}
        glued = set(self.glue)
        if glued & set(self.boundary) or glued | set(self.boundary) != all_slots:
            raise DomainError("slots must split into glued pairs and boundary")
        for a, b in self.glue.items():
            if self.glue.get(b) != a or a == b:
                raise DomainError("gluing must be a fixed-point-free involution")
            ea, eb = self.side_endpoints(a), self.side_endpoints(b)
            if ea != (eb[1], eb[0]):
                raise DomainError(f"glued sides {a}/{b} disagree on endpoints")
        pairs = {tuple(sorted((a, b))) for a, b in self.glue.items()}
        if set(self.arcs) != pairs or len(self.arcs) != len(pairs):
            raise DomainError("arc list must enumerate the glued pairs exactly")
        if len(set(self.arc_ids)) != len(self.arc_ids):
            raise DomainError("arc ids must be distinct")
        if len(set(self.boundary.values())) != len(self.boundary):
            raise DomainError("boundary segment labels must be distinct")
        if not self.notched <= self.punctures():
            raise DomainError("notched set must consist of punctures")
        for info in self.selffolded_triangles().values():
            if info["puncture"] in self.notched:
                raise DomainError(
                    "canonical form: puncture enclosed by a self-folded "
                    "triangle cannot carry a notch")
        surf = self.surface()
        n_expected = validate_surface(surf)
        if n_expected != self.n:
            raise DomainError(f"arc count {self.n} does not match surface ({n_expected})")

    # -- equality ---------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (isinstance(other, Triangulation)
                and self.structure_key() == other.structure_key()
                and self.arcs == other.arcs and self.arc_ids == other.arc_ids)

    def __hash__(self) -> int:
        return hash((self.structure_key(), self.arcs, self.arc_ids))

    def same_triangulation(self, other: "Triangulation") -> bool:
        return self.structure_key() == other.structure_key()

    def position_match(self, other: "Triangulation") -> tuple[int, ...]:
        """Map positions of self onto positions of other (equal structures)."""
        if not self.same_triangulation(other):
            raise TransportError("triangulations differ")
        return tuple(other.position_of_pair(pair) for pair in self.arcs)

    # -- serialization ----------------------------------------------------

    def to_json(self) -> dict:
        slot_name = {}
        triangles = []
        for t in range(self.ntri):
            row = []
            for s in range(3):
                name = self.boundary.get((t, s), f"t{t}.{s}")
                slot_name[(t, s)] = name
                row.append(name)
            triangles.append(row)
        return {
            "triangles": triangles,
            "gluing": [[slot_name[a], slot_name[b]] for a, b in self.arcs],
            "arc_ids": list(self.arc_ids),
            "notched": sorted(self.notched),
            "corners": [list(tri) for tri in self.corners],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Triangulation":
        triangles = data["triangles"]
        slot_of = {}
        for t, row in enumerate(triangles):
            if len(row) != 3:
                raise DomainError("each triangle needs exactly three slots")
            for s, name in enumerate(row):
                if name in slot_of:
                    raise DomainError(f"slot name {name!r} repeated")
                slot_of[name] = (t, s)
        glue = {}
        arcs = []
        for a, b in data["gluing"]:
            sa, sb = slot_of[a], slot_of[b]
            glue[sa] = sb
            glue[sb] = sa
            arcs.append((sa, sb))
        boundary = {slot_of[name]: name
                    for name in slot_of if slot_of[name] not in glue}
        corners = data.get("corners")
        if corners is None:
            corners = _derive_corners(len(triangles), glue, boundary)
        return cls(corners, glue, boundary, arcs,
                   arc_ids=data.get("arc_ids"), notched=data.get("notched", ()))

    def __repr__(self) -> str:
        return (f"Triangulation({self.ntri} triangles, n={self.n}, "
                f"notched={sorted(self.notched)})")


def _derive_corners(ntri, glue, boundary):
    """Assign vertex labels from corner orbits when none are supplied."""
    parent = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    for t in range(ntri):
        for s in range(3):
            parent[(t, s)] = (t, s)
    # corner s of triangle t = start of side s; crossing the gluing at side s
    # identifies its start with the end of the partner side
    for (t, s), (t2, s2) in glue.items():
        union((t, s), (t2, (s2 + 1) % 3))
    labels = {}
    for t in range(ntri):
        for s in range(3):
            root = find((t, s))
            if root not in labels:
                labels[root] = f"v{len(labels)}"
    return [tuple(labels[find((t, s))] for s in range(3)) for t in range(ntri)]


# ---------------------------------------------------------------------------
# flips


@dataclass
class FlipResult:
    new_triangulation: Triangulation
    replaced_arc: str
    new_arc: str
    flip_kind: str  # "Q" or "D"


def flip(t: Triangulation, arc) -> FlipResult:
    """Tagged flip of the arc given by position or id."""
    k = arc if isinstance(arc, int) else t.position_of(arc)
    if not 0 <= k < t.n:
        raise UnknownArcError(f"arc position {k} out of range")
    u, v = t.arcs[k]
    if u[0] == v[0]:
        return _flip_digon(t, k, radius_tri=u[0], flipping_radius=True)
    sf = t.selffolded_triangles()
    if u[0] in sf or v[0] in sf:
        tri = u[0] if u[0] in sf else v[0]
        return _flip_digon(t, k, radius_tri=tri, flipping_radius=False)
    return _flip_quadrilateral(t, k)


def _remap(mapping, slot):
    return mapping.get(slot, slot)


def _rebuild(t: Triangulation, new_corner_entries, moved, removed_slots,
             new_glo, arcs_override, new_notched, new_ids):
    """Assemble a flipped triangulation from a local surgery description."""
    corners = list(t.corners)
    for idx, trip in new_corner_entries.items():
        corners[idx] = trip
    glue = {}
    for a, b in t.glue.items():
        if a in removed_slots or b in removed_slots:
            continue
        glue[_remap(moved, a)] = _remap(moved, b)
    for a, b in new_glo:
        glue[a] = b
        glue[b] = a
    boundary = {_remap(moved, s): name for s, name in t.boundary.items()}
    arcs = []
    for pos, (a, b) in enumerate(t.arcs):
        if pos in arcs_override:
            arcs.append(arcs_override[pos])
        else:
            arcs.append((_remap(moved, a), _remap(moved, b)))
    return Triangulation(corners, glue, boundary, arcs,
                         arc_ids=new_ids, notched=new_notched)


def _flip_quadrilateral(t: Triangulation, k: int) -> FlipResult:
    u, v = t.arcs[k]
    i, si = u
    j, sj = v
    a = (i, (si + 1) % 3)
    b = (i, (si + 2) % 3)
    c = (j, (sj + 1) % 3)
    d = (j, (sj + 2) % 3)
    P = t.corners[i][si]
    Q = t.corners[i][(si + 1) % 3]
    R = t.corners[i][(si + 2) % 3]
    Z = t.corners[j][(sj + 2) % 3]

    moved = {a: (i, 2), d: (i, 1), b: (j, 1), c: (j, 2)}
    corners = {i: (R, Z, Q), j: (Z, R, P)}
    new_pair = ((i, 0), (j, 0))
    arcs_override = {k: tuple(sorted(new_pair))}
    ids = list(t.arc_ids)
    replaced = ids[k]
    ids[k] = _toggle_label(replaced)
    notched = set(t.notched)

    kind = "Q"
    if t.glue.get(d) == a:  # new triangle i is self-folded around Q
        kind = "D"
        if Q in notched:
            p_beta = t.position_of_pair(tuple(sorted((a, d))))
            arcs_override[p_beta] = arcs_override[k]
            arcs_override[k] = tuple(sorted(((i, 1), (i, 2))))
            notched.discard(Q)
    if t.glue.get(b) == c:  # new triangle j is self-folded around P
        kind = "D"
        if P in notched:
            p_beta = t.position_of_pair(tuple(sorted((b, c))))
            arcs_override[p_beta] = arcs_override[k]
            arcs_override[k] = tuple(sorted(((j, 1), (j, 2))))
            notched.discard(P)

    new_t = _rebuild(t, corners, moved, {u, v}, [new_pair],
                     arcs_override, notched, ids)
    return FlipResult(new_t, replaced, ids[k], kind)


def _flip_digon(t: Triangulation, k: int, radius_tri: int,
                flipping_radius: bool) -> FlipResult:
    """Type-D flip through a self-folded configuration.

    The self-folded triangle (radius glued to itself, loop on the outside)
    and its neighbor form a once-punctured digon; the flip retriangulates
    that digon in the standard two-triangle shape and toggles the notch.
    """
    info = t.selffolded_triangles()[radius_tri]
    radius_pair = tuple(sorted(info["radius"]))
    loop_slot = info["loop"]
    p = info["puncture"]
    i = radius_tri
    jslot = t.glue[loop_slot]
    j, sj = jslot
    if j in t.selffolded_triangles() and j != i:
        raise DomainError("loop shared by two self-folded triangles")
    e1 = (j, (sj + 1) % 3)
    e2 = (j, (sj + 2) % 3)
    m = t.corners[j][sj]
    w = t.corners[j][(sj + 2) % 3]

    # digon (m, w) with sides e1: m->w and e2: w->m, puncture p inside;
    # retriangulate with gamma_mp and gamma_wp
    corners = {i: (m, w, p), j: (w, m, p)}
    moved = {e1: (i, 0), e2: (j, 0)}
    gamma_wp = ((i, 1), (j, 2))
    gamma_mp = ((i, 2), (j, 1))
    removed = set(radius_pair) | {loop_slot, jslot}

    loop_pair = tuple(sorted((loop_slot, jslot)))
    pos_loop = t.position_of_pair(loop_pair)
    pos_radius = t.position_of_pair(radius_pair)
    other = pos_loop if flipping_radius else pos_radius
    arcs_override = {k: tuple(sorted(gamma_wp)), other: tuple(sorted(gamma_mp))}

    ids = list(t.arc_ids)
    replaced = ids[k]
    ids[k] = _toggle_label(replaced)
    notched = set(t.notched)
    if flipping_radius:
        notched.add(p)

    new_t = _rebuild(t, corners, moved, removed, [gamma_wp, gamma_mp],
                     arcs_override, notched, ids)
    return FlipResult(new_t, replaced, ids[k], "D")


def change_tags(t: Triangulation, p: str) -> Triangulation:
    """Simultaneously flip all tags at puncture p (an involution)."""
    if p not in t.punctures():
        raise DomainError(f"{p!r} is not a puncture")
    for info in t.selffolded_triangles().values():
        if info["puncture"] == p:
            # the two tagged arcs at p swap their radius/loop representations
            pos_r = t.position_of_pair(tuple(sorted(info["radius"])))
            loop_pair = tuple(sorted((info["loop"], t.glue[info["loop"]])))
            pos_l = t.position_of_pair(loop_pair)
            arcs = list(t.arcs)
            arcs[pos_r], arcs[pos_l] = arcs[pos_l], arcs[pos_r]
            return Triangulation(t.corners, t.glue, t.boundary, arcs,
                                 arc_ids=t.arc_ids, notched=t.notched,
                                 _canonical=True)
    notched = set(t.notched)
    if p in notched:
        notched.discard(p)
    else:
        notched.add(p)
    return Triangulation(t.corners, t.glue, t.boundary, t.arcs,
                         arc_ids=t.arc_ids, notched=notched, _canonical=True)


# ---------------------------------------------------------------------------
# adjacency matrices


def _pi_positions(t: Triangulation) -> list[int]:
    """Radius positions are represented by their enclosing loop."""
    pi = list(range(t.n))
    for info in t.selffolded_triangles().values():
        pos_r = t.position_of_pair(tuple(sorted(info["radius"])))
        loop_pair = tuple(sorted((info["loop"], t.glue[info["loop"]])))
        pi[pos_r] = t.position_of_pair(loop_pair)
    return pi


def _triangle_contributions(t: Triangulation, row_index) -> dict:
    """Sum the +-1 triangle rule over non-self-folded triangles.

    row_index maps a slot to a row key (arc position or boundary label);
    columns are arc positions.  Radius substitution is applied afterwards.
    """
    sf = set(t.selffolded_triangles())
    pos_of_slot = {}
    for pos, (a, b) in enumerate(t.arcs):
        pos_of_slot[a] = pos
        pos_of_slot[b] = pos
    entries: dict = {}
    for tri in range(t.ntri):
        if tri in sf:
            continue
        for s in range(3):
            s_next = (s + 1) % 3
            lo, hi = (tri, s), (tri, s_next)
            c_lo = pos_of_slot.get(lo)
            c_hi = pos_of_slot.get(hi)
            # ccw-consecutive sides (lo, hi): hi follows lo counterclockwise,
            # so lo follows hi in the clockwise order
            if c_hi is not None:
                r = row_index(lo)
                if r is not None:
                    entries[(r, c_hi)] = entries.get((r, c_hi), 0) - 1
            if c_lo is not None:
                r = row_index(hi)
                if r is not None:
                    entries[(r, c_lo)] = entries.get((r, c_lo), 0) + 1
    return entries


def signed_adjacency(t: Triangulation) -> ExchangeMatrix:
    """Signed adjacency matrix B(T); notches never enter."""
    pi = _pi_positions(t)
    pos_of_slot = {}
    for pos, (a, b) in enumerate(t.arcs):
        pos_of_slot[a] = pos
        pos_of_slot[b] = pos

    def row_index(slot):
        return pos_of_slot.get(slot)

    raw = _triangle_contributions(t, row_index)
    m = [[0] * t.n for _ in range(t.n)]
    for i in range(t.n):
        for j in range(t.n):
            m[i][j] = raw.get((pi[i], pi[j]), 0)
    return ExchangeMatrix(m)


def boundary_extended_matrix(t: Triangulation) -> ExtendedExchangeMatrix:
    """B extended by one coefficient row per boundary segment (sorted)."""
    top = signed_adjacency(t)
    segs = t.boundary_segments()
    pi = _pi_positions(t)

    def row_index(slot):
        return t.boundary.get(slot)

    raw = _triangle_contributions(t, row_index)
    rows = [list(r) for r in top.rows]
    for name in segs:
        rows.append([raw.get((name, pi[j]), 0) for j in range(t.n)])
    return ExtendedExchangeMatrix(rows, t.n)


# ---------------------------------------------------------------------------
# flip graph


@dataclass
class FlipGraph:
    vertices: list  # representative Triangulation per structure class
    adjacency: dict  # (vertex, position in representative) -> vertex
    truncated: bool

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_edges(self) -> int:
        return len(self.adjacency) // 2


def flip_graph(t0: Triangulation, max_vertices: int = 100000) -> FlipGraph:
    """Closure of t0 under tagged flips, deduplicated structurally."""
    if max_vertices < 1:
        raise DomainError("max_vertices must be at least 1")
    vertices = [t0]
    index = {t0.structure_key(): 0}
    adjacency = {}
    truncated = False
    head = 0
    while head < len(vertices):
        current = vertices[head]
        for k in range(current.n):
            result = flip(current, k)
            key = result.new_triangulation.structure_key()
            if key not in index:
                if len(vertices) >= max_vertices:
                    truncated = True
                    continue
                index[key] = len(vertices)
                vertices.append(result.new_triangulation)
            adjacency[(head, k)] = index[key]
        head += 1
    return FlipGraph(vertices, adjacency, truncated)


def find_flip_path(src: Triangulation, dst: Triangulation,
                   max_vertices: int = 100000) -> list[int]:
    """Positions to flip (applied successively) leading from src to dst."""
    target = dst.structure_key()
    if src.structure_key() == target:
        return []
    frontier = [(src, [])]
    seen = {src.structure_key()}
    while frontier:
        nxt = []
        for tri, path in frontier:
            for k in range(tri.n):
                result = flip(tri, k)
                key = result.new_triangulation.structure_key()
                if key == target:
                    return path + [k]
                if key not in seen:
                    if len(seen) >= max_vertices:
                        raise FiniteTypeError("flip closure exceeded the bound")
                    seen.add(key)
                    nxt.append((result.new_triangulation, path + [k]))
        frontier = nxt
    raise TransportError("triangulations are not connected by flips")


# ---------------------------------------------------------------------------
# standard constructions


def polygon_triangulation(k: int, diagonals: Sequence[tuple[int, int]],
                          vertex_prefix: str = "v") -> Triangulation:
    """Unpunctured k-gon (vertices 1..k counterclockwise) with the given
    maximal set of non-crossing diagonals; arc positions follow the input
    order of `diagonals`."""
    if k < 4:
        raise ExcludedSurfaceError("need at least a quadrilateral")
    if len(diagonals) != k - 3:
        raise DomainError(f"a {k}-gon triangulation needs {k - 3} diagonals")
    sides = {tuple(sorted((i, i % k + 1))) for i in range(1, k + 1)}
    diag = [tuple(sorted(d)) for d in diagonals]
    edges = sides | set(diag)

    faces = []
    verts = list(range(1, k + 1))
    for a_i in range(len(verts)):
        for b_i in range(a_i + 1, len(verts)):
            for c_i in range(b_i + 1, len(verts)):
                a, b, c = verts[a_i], verts[b_i], verts[c_i]
                if (tuple(sorted((a, b))) in edges and tuple(sorted((b, c))) in edges
                        and tuple(sorted((a, c))) in edges):
                    faces.append((a, b, c))
    if len(faces) != k - 2:
        raise DomainError("diagonals do not triangulate the polygon")

    corners = []
    slot_users: dict = {}
    for t, (a, b, c) in enumerate(faces):
        corners.append((f"{vertex_prefix}{a}", f"{vertex_prefix}{b}", f"{vertex_prefix}{c}"))
        for s, edge in enumerate(((a, b), (b, c), (c, a))):
            slot_users.setdefault(tuple(sorted(edge)), []).append((t, s))
    glue = {}
    boundary = {}
    for edge, slots in slot_users.items():
        if len(slots) == 2:
            glue[slots[0]] = slots[1]
            glue[slots[1]] = slots[0]
        else:
            boundary[slots[0]] = f"b{edge[0]}-{edge[1]}"
    arcs = [tuple(sorted(slot_users[d])) for d in diag]
    ids = [f"d{a}-{b}" for a, b in diag]
    return Triangulation(corners, glue, boundary, arcs, arc_ids=ids)


def fan_diagonals(k: int, apex: int = 1) -> list[tuple[int, int]]:
    """Diagonals of the fan triangulation of a k-gon at the given vertex."""
    others = [(apex - 1 + step) % k + 1 for step in range(2, k - 1)]
    return [tuple(sorted((apex, j))) for j in others]


def punctured_polygon_triangulation(k: int, puncture: str = "p",
                                    vertex_prefix: str = "v") -> Triangulation:
    """Once-punctured k-gon with the radial triangulation; position i is the
    radius at vertex i+1."""
    if k < 1:
        raise DomainError("need at least one boundary vertex")
    corners = []
    glue = {}
    boundary = {}
    for t in range(k):
        a = f"{vertex_prefix}{t + 1}"
        b = f"{vertex_prefix}{(t + 1) % k + 1}"
        corners.append((a, b, puncture))
        boundary[(t, 0)] = f"b{t + 1}-{(t + 1) % k + 1}"
    for t in range(k):
        # side 1 of triangle t is the radius at vertex t+2; it glues to side 2
        # of the next triangle (the same radius seen from the other side)
        glue[(t, 1)] = ((t + 1) % k, 2)
        glue[((t + 1) % k, 2)] = (t, 1)
    arcs = []
    ids = []
    for i in range(k):
        prev = (i - 1) % k
        arcs.append(tuple(sorted(((prev, 1), (i, 2)))))
        ids.append(f"r{i + 1}")
    return Triangulation(corners, glue, boundary, arcs, arc_ids=ids)


def punctured_digon_triangulation() -> Triangulation:
    """The once-punctured digon {gamma_ap, gamma_bp}; positions (1, 2)."""
    corners = [("a", "b", "p"), ("b", "a", "p")]
    glue = {(0, 1): (1, 2), (1, 2): (0, 1), (0, 2): (1, 1), (1, 1): (0, 2)}
    boundary = {(0, 0): "top", (1, 0): "bottom"}
    arcs = [((0, 2), (1, 1)), ((0, 1), (1, 2))]  # gamma_ap, gamma_bp
    return Triangulation(corners, glue, boundary, arcs, arc_ids=("1", "2"))


def once_punctured_hexagon_triangulation() -> Triangulation:
    """The catalog triangulation of a once-punctured hexagon.

    Boundary vertices A..F counterclockwise, puncture P; arcs labeled 1..6:
    1 = P-D, 2 = P-C, 3 = B-P, 4 = A-P, 5 = F-P, 6 = F-D.
    """
    corners = [
        ("B", "C", "P"),  # t0: sides BC(bdry), arc2, arc3
        ("A", "B", "P"),  # t1: AB(bdry), arc3, arc4
        ("A", "P", "F"),  # t2: arc4, arc5, FA(bdry)
        ("F", "P", "D"),  # t3: arc5, arc1, arc6
        ("P", "C", "D"),  # t4: arc2, CD(bdry), arc1
        ("F", "D", "E"),  # t5: arc6, DE(bdry), EF(bdry)
    ]
    pairs = {
        "1": ((3, 1), (4, 2)),
        "2": ((0, 1), (4, 0)),
        "3": ((0, 2), (1, 1)),
        "4": ((1, 2), (2, 0)),
        "5": ((2, 1), (3, 0)),
        "6": ((3, 2), (5, 0)),
    }
    glue = {}
    for a, b in pairs.values():
        glue[a] = b
        glue[b] = a
    boundary = {(0, 0): "BC", (1, 0): "AB", (2, 2): "FA",
                (4, 1): "CD", (5, 1): "DE", (5, 2): "EF"}
    arcs = [tuple(sorted(pairs[str(i)])) for i in range(1, 7)]
    return Triangulation(corners, glue, boundary, arcs,
                         arc_ids=tuple(str(i) for i in range(1, 7)))


def four_punctured_sphere_triangulation() -> Triangulation:
    """The catalog triangulation of the 4-punctured sphere: two self-folded
    pods (loops at P1 around P2, at P3 around P4) joined by arcs e and f."""
    corners = [
        ("P1", "P2", "P1"),  # t0 self-folded: radius r1 twice, loop l1
        ("P3", "P4", "P3"),  # t1 self-folded: radius r2 twice, loop l2
        ("P1", "P1", "P3"),  # t2: loop l1, e: P1->P3, f: P3->P1
        ("P3", "P3", "P1"),  # t3: loop l2, f: P3->P1... e: P1->P3
    ]
    pairs = {
        "r1": ((0, 0), (0, 1)),
        "r2": ((1, 0), (1, 1)),
        "l1": ((0, 2), (2, 0)),
        "l2": ((1, 2), (3, 0)),
        "e": ((2, 1), (3, 1)),
        "f": ((2, 2), (3, 2)),
    }
    glue = {}
    for a, b in pairs.values():
        glue[a] = b
        glue[b] = a
    order = ["r1", "l1", "r2", "l2", "e", "f"]
    arcs = [tuple(sorted(pairs[name])) for name in order]
    return Triangulation(corners, glue, {}, arcs, arc_ids=tuple(order))
