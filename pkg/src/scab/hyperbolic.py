"""Decorated ideal polygons in the upper half-plane: the numeric oracle.

Ideal points sit on R u {inf} (at most one at infinity).  The decoration at
a finite point x is the Euclidean diameter of the horocycle tangent at x;
at infinity it is the Euclidean height of the horizontal horocycle.

lambda(i,j) = |x_i - x_j| / sqrt(d_i d_j) for finite points and
sqrt(h / d) against the horocycle at infinity; both are exp(l/2) for the
signed hyperbolic distance l between the horocycles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import DomainError

INF = math.inf


@dataclass(frozen=True)
class DecoratedIdealPolygon:
    ideal_points: tuple[float, ...]
    horocycle_sizes: tuple[float, ...]

    def __post_init__(self):
        pts = tuple(float(p) for p in self.ideal_points)
        sizes = tuple(float(s) for s in self.horocycle_sizes)
        object.__setattr__(self, "ideal_points", pts)
        object.__setattr__(self, "horocycle_sizes", sizes)
        if len(pts) != len(sizes):
            raise DomainError("need one horocycle size per ideal point")
        if sum(1 for p in pts if math.isinf(p)) > 1:
            raise DomainError("at most one ideal point at infinity")
        if len(set(pts)) != len(pts):
            raise DomainError("ideal points must be distinct")
        if any(s <= 0 for s in sizes):
            raise DomainError("horocycle sizes must be positive")

    def __len__(self) -> int:
        return len(self.ideal_points)


def lambda_length(poly: DecoratedIdealPolygon, i: int, j: int) -> float:
    if i == j:
        raise DomainError("lambda length needs two distinct ideal points")
    xi, xj = poly.ideal_points[i], poly.ideal_points[j]
    di, dj = poly.horocycle_sizes[i], poly.horocycle_sizes[j]
    if math.isinf(xi):
        return math.sqrt(di / dj)
    if math.isinf(xj):
        return math.sqrt(dj / di)
    return abs(xi - xj) / math.sqrt(di * dj)


def _cyclic_order_ok(poly: DecoratedIdealPolygon, quad: Sequence[int]) -> bool:
    """True iff the four indices are cyclically ordered on R u {inf}."""
    pts = [poly.ideal_points[i] for i in quad]
    # map inf to the far right; the boundary circle order is the real order
    keyed = sorted(range(4), key=lambda a: (math.isinf(pts[a]), pts[a]))
    pos = [keyed.index(a) for a in range(4)]
    diffs = {(pos[(a + 1) % 4] - pos[a]) % 4 for a in range(4)}
    return diffs == {1} or diffs == {3}


def verify_ptolemy(poly: DecoratedIdealPolygon, quad: Sequence[int]) -> float:
    """Relative residual of lambda(eta)lambda(theta) = lambda(alpha)lambda(gamma)
    + lambda(beta)lambda(delta) on a cyclically ordered ideal quadrilateral."""
    if len(set(quad)) != 4:
        raise DomainError("quadrilateral needs four distinct vertices")
    if not _cyclic_order_ok(poly, quad):
        raise DomainError("vertices are not in convex (cyclic) position")
    a, b, c, d = quad
    eta = lambda_length(poly, a, c)
    theta = lambda_length(poly, b, d)
    side = (lambda_length(poly, a, b) * lambda_length(poly, c, d)
            + lambda_length(poly, b, c) * lambda_length(poly, d, a))
    return abs(eta * theta - side) / (eta * theta)


def _horocycle_angle(x_r: float, rho: float, other: float) -> float:
    """Angle on the horocycle circle at the crossing with the geodesic to
    `other`, measured from the tangency point, in (0, 2*pi).

    Solved as a genuine circle/circle (or circle/line) intersection in the
    upper half-plane; the independent length check downstream relies on this
    not being a rewrite of the lambda-length formula.
    """
    if math.isinf(other):
        # vertical geodesic: meets the horocycle at its top point
        return math.pi
    # geodesic = half-circle centered ((x_r+other)/2, 0); horocycle = circle
    # centered (x_r, rho) with radius rho; intersect the two circles.
    cx = (x_r + other) / 2.0
    r2 = abs(other - x_r) / 2.0
    dx = x_r - cx
    dist2 = dx * dx + rho * rho
    dist = math.sqrt(dist2)
    # radical line offset from geodesic center toward horocycle center
    a = (dist2 + r2 * r2 - rho * rho) / (2.0 * dist)
    h2 = r2 * r2 - a * a
    if h2 < 0:
        raise DomainError("degenerate triangle: geodesic misses the horocycle")
    h = math.sqrt(max(h2, 0.0))
    ux, uy = dx / dist, rho / dist
    px1 = cx + a * ux - h * uy
    py1 = a * uy + h * ux
    px2 = cx + a * ux + h * uy
    py2 = a * uy - h * ux
    px, py = (px1, py1) if py1 > py2 else (px2, py2)
    phi = math.atan2(px - x_r, rho - py)
    if phi <= 0:
        phi += 2.0 * math.pi
    return phi


def horocyclic_segment(poly: DecoratedIdealPolygon, triangle: Sequence[int],
                       vertex: int) -> tuple[float, float]:
    """Length of the horocyclic segment cut out at `vertex`, computed
    geometrically, together with the relative deviation from the
    lambda-length prediction lambda_pq / (lambda_pr lambda_qr)."""
    if vertex not in triangle or len(set(triangle)) != 3:
        raise DomainError("vertex must be one of three distinct triangle corners")
    p, q = [v for v in triangle if v != vertex]
    x_r = poly.ideal_points[vertex]
    d_r = poly.horocycle_sizes[vertex]
    xp, xq = poly.ideal_points[p], poly.ideal_points[q]
    if math.isinf(x_r):
        length = abs(xp - xq) / d_r
    else:
        rho = d_r / 2.0
        phi_p = _horocycle_angle(x_r, rho, xp)
        phi_q = _horocycle_angle(x_r, rho, xq)
        length = abs(1.0 / math.tan(phi_p / 2.0) - 1.0 / math.tan(phi_q / 2.0))
    predicted = (lambda_length(poly, p, q)
                 / (lambda_length(poly, p, vertex) * lambda_length(poly, q, vertex)))
    return length, abs(length - predicted) / predicted


def grassmann_lambda(v1: Sequence[float], v2: Sequence[float]) -> tuple[float, float]:
    """Hyperboloid-model lambda length of two plane vectors, with check.

    Each v = (p, q) maps to the rank-1 symmetric matrix w = v v^T; with the
    polarized negated determinant <.,.> the value is sqrt(-2 <w1, w2>).
    Returns (lambda, relative deviation from |det[v1 v2]|).
    """
    p1, q1 = v1
    p2, q2 = v2
    det = p1 * q2 - p2 * q1
    if det == 0:
        raise DomainError("vectors are linearly dependent")
    w1 = (p1 * p1, p1 * q1, q1 * q1)
    w2 = (p2 * p2, p2 * q2, q2 * q2)
    # Q(M) = -det(M); <A,B> = (Q(A+B) - Q(A) - Q(B)) / 2 with Q(w_i) = 0
    s = (w1[0] + w2[0], w1[1] + w2[1], w1[2] + w2[2])
    inner = (-(s[0] * s[2] - s[1] * s[1])) / 2.0
    lam = math.sqrt(-2.0 * inner)
    return lam, abs(lam - abs(det)) / abs(det)


def reconstruct_polygon(side_lambdas: Sequence[float],
                        fan_lambdas: Sequence[float]) -> DecoratedIdealPolygon:
    """Decorated ideal polygon realizing given fan-triangulation lambda lengths.

    ``side_lambdas`` lists lambda for the sides (1,2), (2,3), ..., (N,1) and
    ``fan_lambdas`` for the diagonals (1,3), (1,4), ..., (1,N-1) of an N-gon
    with apex 1.  Vertex 1 is placed at infinity, vertex 2 at 0, and the
    remaining vertices increase along the real line.
    """
    n_sides = len(side_lambdas)
    if n_sides < 3 or len(fan_lambdas) != n_sides - 3:
        raise DomainError("need N sides and N-3 fan diagonals")
    if any(v <= 0 for v in side_lambdas) or any(v <= 0 for v in fan_lambdas):
        raise DomainError("lambda lengths must be positive")
    # lam_1[j-2] = lambda(vertex 1, vertex j) for j = 2..N
    lam_1 = [side_lambdas[0]] + list(fan_lambdas) + [side_lambdas[-1]]
    lam12, lam23, lam13 = side_lambdas[0], side_lambdas[1], lam_1[1]
    h1 = lam12 * lam13 / lam23
    points = [INF, 0.0, 1.0]
    sizes = [h1, h1 / lam12 ** 2, h1 / lam13 ** 2]
    for k in range(3, n_sides):
        d_k = h1 / lam_1[k - 1] ** 2
        step = side_lambdas[k - 1] * math.sqrt(sizes[-1] * d_k)
        points.append(points[-1] + step)
        sizes.append(d_k)
    poly = DecoratedIdealPolygon(tuple(points), tuple(sizes))
    # verify the construction reproduces the inputs
    worst = 0.0
    for i in range(n_sides):
        j = (i + 1) % n_sides
        worst = max(worst, abs(lambda_length(poly, i, j) - side_lambdas[i])
                    / side_lambdas[i])
    for k, lam in enumerate(fan_lambdas):
        worst = max(worst, abs(lambda_length(poly, 0, k + 2) - lam) / lam)
    if worst > 1e-9:
        raise DomainError(f"reconstruction residual {worst:.2e} above tolerance")
    return poly
