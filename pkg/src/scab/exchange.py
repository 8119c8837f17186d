"""Seeds, mutation, ŷ-dynamics, rescaling, and exchange-graph enumeration.

All cluster variables are kept as exact Laurent polynomials in the initial
cluster with unit-monomial coefficients (see :mod:`scab.poly`); mutation
divides by the outgoing variable with an exact Laurent division, so a
division failure is a loud correctness signal, never a fallback path.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from .errors import DimensionError, DomainError, SkewSymmetrizabilityError
from .poly import LaurentPoly, RationalFunction
from .semifields import TropicalElement


def _pos(b: int) -> int:
    return b if b > 0 else 0


# ---------------------------------------------------------------------------
# matrices


def skew_symmetrizer(rows: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Positive integers d with d_i b_ij = -d_j b_ji, or raise."""
    n = len(rows)
    for i in range(n):
        for j in range(n):
            if (rows[i][j] == 0) != (rows[j][i] == 0):
                raise SkewSymmetrizabilityError(f"zero pattern broken at ({i},{j})")
            if rows[i][j] * rows[j][i] > 0:
                raise SkewSymmetrizabilityError(f"sign condition broken at ({i},{j})")
    d = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if rows[i][j] == 0:
                    continue
                ratio = Fraction(abs(rows[i][j]), abs(rows[j][i]))
                if d[j] is None:
                    d[j] = d[i] * ratio
                    stack.append(j)
                elif d[j] != d[i] * ratio:
                    raise SkewSymmetrizabilityError(f"inconsistent symmetrizer at ({i},{j})")
    lcm = 1
    for x in d:
        lcm = lcm * x.denominator // _gcd(lcm, x.denominator)
    return tuple(int(x * lcm) for x in d)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _mutate_rows(rows: tuple[tuple[int, ...], ...], k: int, n: int):
    if not 0 <= k < n:
        raise IndexError(f"mutation index {k} out of range for rank {n}")
    out = []
    for x, row in enumerate(rows):
        new_row = []
        for y in range(n):
            if x == k or y == k:
                new_row.append(-row[y])
            else:
                bky = rows[k][y]
                bxk = row[k]
                new_row.append(row[y] + _pos(bky) * bxk + bky * _pos(-bxk))
        out.append(tuple(new_row))
    return tuple(out)


class ExchangeMatrix:
    """Skew-symmetrizable n x n integer matrix."""

    __slots__ = ("n", "rows", "symmetrizer")

    def __init__(self, rows: Sequence[Sequence[int]]):
        self.rows = tuple(tuple(int(v) for v in row) for row in rows)
        self.n = len(self.rows)
        if any(len(row) != self.n for row in self.rows):
            raise DimensionError("exchange matrix must be square")
        self.symmetrizer = skew_symmetrizer(self.rows)

    def __getitem__(self, i: int):
        return self.rows[i]

    def mutate(self, k: int) -> "ExchangeMatrix":
        return ExchangeMatrix(_mutate_rows(self.rows, k, self.n))

    def __eq__(self, other) -> bool:
        return isinstance(other, ExchangeMatrix) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        return f"ExchangeMatrix({list(map(list, self.rows))})"


class ExtendedExchangeMatrix:
    """m x n integer matrix whose top n x n block is an exchange matrix."""

    __slots__ = ("n", "m", "rows")

    def __init__(self, rows: Sequence[Sequence[int]], n: int | None = None):
        self.rows = tuple(tuple(int(v) for v in row) for row in rows)
        self.m = len(self.rows)
        if self.m == 0:
            raise DimensionError("extended matrix needs at least the top block")
        width = len(self.rows[0])
        if any(len(row) != width for row in self.rows):
            raise DimensionError("ragged extended matrix")
        self.n = width if n is None else n
        if self.n != width or self.m < self.n:
            raise DimensionError(f"need m >= n = {width}, got m={self.m}, n={self.n}")
        skew_symmetrizer([row[: self.n] for row in self.rows[: self.n]])

    @property
    def top(self) -> ExchangeMatrix:
        return ExchangeMatrix([row for row in self.rows[: self.n]])

    def __getitem__(self, i: int):
        return self.rows[i]

    def mutate(self, k: int) -> "ExtendedExchangeMatrix":
        return ExtendedExchangeMatrix(_mutate_rows(self.rows, k, self.n), self.n)

    def __eq__(self, other) -> bool:
        return isinstance(other, ExtendedExchangeMatrix) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        return f"ExtendedExchangeMatrix({list(map(list, self.rows))})"


def mutate_matrix(b: ExchangeMatrix, k: int) -> ExchangeMatrix:
    return b.mutate(k)


def mutate_extended(bt: ExtendedExchangeMatrix, k: int) -> ExtendedExchangeMatrix:
    return bt.mutate(k)


def random_skew_symmetrizable(n: int, rng, bound: int = 3) -> ExchangeMatrix:
    """Random skew-symmetrizable matrix with entries in [-bound, bound]."""
    d = [rng.choice((1, 1, 2, 3)) for _ in range(n)]
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            for _ in range(30):
                bij = rng.randint(-bound, bound)
                num = -d[i] * bij
                if num % d[j] == 0 and abs(num // d[j]) <= bound:
                    rows[i][j] = bij
                    rows[j][i] = num // d[j]
                    break
    return ExchangeMatrix(rows)


# ---------------------------------------------------------------------------
# labels: mutation replaces the arc at slot k; applying the same flip twice
# must restore the label, so derived labels toggle a prime marker.


def _toggle_label(label: str) -> str:
    return label[:-1] if label.endswith("'") else label + "'"


def default_labels(n: int) -> tuple[str, ...]:
    return tuple(f"a{i + 1}" for i in range(n))


# ---------------------------------------------------------------------------
# geometric seeds


def _column_coeffs(ext: ExtendedExchangeMatrix, k: int) -> tuple[TropicalElement, TropicalElement]:
    ngens = ext.m - ext.n
    plus = {}
    minus = {}
    for i in range(ext.n, ext.m):
        b = ext.rows[i][k]
        if b > 0:
            plus[i - ext.n] = Fraction(b)
        elif b < 0:
            minus[i - ext.n] = Fraction(-b)
    return TropicalElement(ngens, plus), TropicalElement(ngens, minus)


class GeometricSeed:
    """Cluster of Laurent polynomials plus an extended exchange matrix."""

    __slots__ = ("ext", "cluster", "labels")

    def __init__(self, ext: ExtendedExchangeMatrix, cluster: Sequence[LaurentPoly],
                 labels: Sequence[str] | None = None):
        self.ext = ext
        self.cluster = tuple(cluster)
        if len(self.cluster) != ext.n:
            raise DimensionError("cluster size must match the matrix rank")
        nq = ext.m - ext.n
        for x in self.cluster:
            if x.nvars != ext.n or x.nq != nq:
                raise DimensionError("cluster variable context mismatch")
        if len(set(self.cluster)) != ext.n:
            raise DomainError("cluster entries must be pairwise distinct")
        self.labels = tuple(labels) if labels is not None else default_labels(ext.n)
        if len(set(self.labels)) != ext.n:
            raise DomainError("labels must be pairwise distinct")
        p_plus, p_minus = self.coefficient_pair(0) if ext.n else (None, None)
        if p_plus is not None:
            assert p_plus.oplus(p_minus).is_one(), "geometric coefficients not normalized"

    @property
    def n(self) -> int:
        return self.ext.n

    @property
    def ngens(self) -> int:
        return self.ext.m - self.ext.n

    @classmethod
    def initial(cls, ext: ExtendedExchangeMatrix,
                labels: Sequence[str] | None = None) -> "GeometricSeed":
        nq = ext.m - ext.n
        cluster = [LaurentPoly.variable(ext.n, nq, i) for i in range(ext.n)]
        return cls(ext, cluster, labels)

    def coefficient_pair(self, k: int) -> tuple[TropicalElement, TropicalElement]:
        return _column_coeffs(self.ext, k)

    def exchange_terms(self, k: int) -> tuple[LaurentPoly, LaurentPoly]:
        """The two monomial terms of the exchange relation in direction k."""
        n, nq = self.n, self.ngens
        p_plus, p_minus = self.coefficient_pair(k)
        t_plus = p_plus.to_laurent(n, nq)
        t_minus = p_minus.to_laurent(n, nq)
        for i in range(n):
            b = self.ext.rows[i][k]
            if b > 0:
                t_plus = t_plus * self.cluster[i] ** b
            elif b < 0:
                t_minus = t_minus * self.cluster[i] ** (-b)
        return t_plus, t_minus

    def mutate(self, k: int) -> "GeometricSeed":
        t_plus, t_minus = self.exchange_terms(k)
        new_var = (t_plus + t_minus).exact_div(self.cluster[k])
        cluster = list(self.cluster)
        cluster[k] = new_var
        labels = list(self.labels)
        labels[k] = _toggle_label(labels[k])
        return GeometricSeed(self.ext.mutate(k), cluster, labels)

    def __eq__(self, other) -> bool:
        return (isinstance(other, GeometricSeed) and self.ext == other.ext
                and self.cluster == other.cluster and self.labels == other.labels)

    def __hash__(self) -> int:
        return hash((self.ext, self.cluster))

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "labels": list(self.labels),
            "ext": [list(row) for row in self.ext.rows],
            "cluster": [str(x) for x in self.cluster],
        }

    def __repr__(self) -> str:
        return f"GeometricSeed(cluster={[str(x) for x in self.cluster]})"


def mutate_seed_geometric(s: GeometricSeed, k: int) -> GeometricSeed:
    return s.mutate(k)


# ---------------------------------------------------------------------------
# non-normalized seeds over a tropical coefficient group

SplitPolicy = str  # "keep" or "normalized"


class Seed:
    """Non-normalized seed: cluster, coefficient pairs, exchange matrix."""

    __slots__ = ("matrix", "cluster", "coeffs", "labels")

    def __init__(self, matrix: ExchangeMatrix, cluster: Sequence[LaurentPoly],
                 coeffs: Sequence[tuple[TropicalElement, TropicalElement]],
                 labels: Sequence[str] | None = None):
        self.matrix = matrix
        self.cluster = tuple(cluster)
        self.coeffs = tuple((p, m) for p, m in coeffs)
        if len(self.cluster) != matrix.n or len(self.coeffs) != matrix.n:
            raise DimensionError("seed components must all have length n")
        if len(set(self.cluster)) != matrix.n:
            raise DomainError("cluster entries must be pairwise distinct")
        self.labels = tuple(labels) if labels is not None else default_labels(matrix.n)

    @property
    def n(self) -> int:
        return self.matrix.n

    @property
    def ngens(self) -> int:
        return self.coeffs[0][0].ngens if self.coeffs else 0

    @classmethod
    def initial(cls, matrix: ExchangeMatrix,
                coeffs: Sequence[tuple[TropicalElement, TropicalElement]],
                labels: Sequence[str] | None = None) -> "Seed":
        ngens = coeffs[0][0].ngens if coeffs else 0
        cluster = [LaurentPoly.variable(matrix.n, ngens, i) for i in range(matrix.n)]
        return cls(matrix, cluster, coeffs, labels)

    def exchange_terms(self, k: int) -> tuple[LaurentPoly, LaurentPoly]:
        n, nq = self.n, self.ngens
        p_plus, p_minus = self.coeffs[k]
        t_plus = p_plus.to_laurent(n, nq)
        t_minus = p_minus.to_laurent(n, nq)
        for i in range(n):
            b = self.matrix.rows[i][k]
            if b > 0:
                t_plus = t_plus * self.cluster[i] ** b
            elif b < 0:
                t_minus = t_minus * self.cluster[i] ** (-b)
        return t_plus, t_minus

    def mutate(self, k: int, policy: SplitPolicy = "keep") -> "Seed":
        if policy not in ("keep", "normalized"):
            raise DomainError(f"unknown coefficient-splitting policy {policy!r}")
        t_plus, t_minus = self.exchange_terms(k)
        new_var = (t_plus + t_minus).exact_div(self.cluster[k])
        cluster = list(self.cluster)
        cluster[k] = new_var

        pk_plus, pk_minus = self.coeffs[k]
        coeffs = list(self.coeffs)
        coeffs[k] = (pk_minus, pk_plus)
        for y in range(self.n):
            if y == k:
                continue
            b_ky = self.matrix.rows[k][y]
            p_plus, p_minus = self.coeffs[y]
            ratio = p_plus / p_minus
            if b_ky >= 0:
                ratio = ratio * pk_plus ** b_ky
            else:
                ratio = ratio * pk_minus ** b_ky
            if policy == "keep":
                coeffs[y] = (ratio * p_minus, p_minus)
            else:
                s = ratio.oplus(TropicalElement.one(ratio.ngens))
                coeffs[y] = (ratio / s, s.inv())
        labels = list(self.labels)
        labels[k] = _toggle_label(labels[k])
        return Seed(self.matrix.mutate(k), cluster, coeffs, labels)

    def is_normalized(self) -> bool:
        return all(p.oplus(m).is_one() for p, m in self.coeffs)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Seed) and self.matrix == other.matrix
                and self.cluster == other.cluster and self.coeffs == other.coeffs
                and self.labels == other.labels)

    def __hash__(self) -> int:
        return hash((self.matrix, self.cluster, self.coeffs))

    def __repr__(self) -> str:
        return f"Seed(cluster={[str(x) for x in self.cluster]})"


def mutate_seed_nonnormalized(s: Seed, k: int, split: SplitPolicy = "keep") -> Seed:
    return s.mutate(k, split)


def seed_from_geometric(g: GeometricSeed, labels=None) -> Seed:
    coeffs = [g.coefficient_pair(k) for k in range(g.n)]
    return Seed(g.ext.top, g.cluster, coeffs, labels or g.labels)


# ---------------------------------------------------------------------------
# y-hat dynamics


@dataclass(frozen=True)
class YTuple:
    values: tuple[RationalFunction, ...]

    def __getitem__(self, i: int) -> RationalFunction:
        return self.values[i]

    def __len__(self) -> int:
        return len(self.values)


def yhat(s) -> YTuple:
    """Componentwise ratio of the two exchange-relation terms."""
    vals = []
    for k in range(s.n):
        t_plus, t_minus = s.exchange_terms(k)
        vals.append(RationalFunction(t_plus, t_minus))
    return YTuple(tuple(vals))


@dataclass
class YhatReport:
    ok: bool
    failures: list = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def check_yhat_mutation(s, k: int) -> YhatReport:
    """Verify the mutation law for the exchange-term ratios, symbolically."""
    matrix = s.matrix if isinstance(s, Seed) else s.ext.top
    y_old = yhat(s)
    y_new = yhat(s.mutate(k))
    one = RationalFunction(LaurentPoly.one(s.cluster[0].nvars, s.cluster[0].nq))
    failures = []
    for f in range(s.n):
        if f == k:
            lhs, rhs = y_new[k], y_old[k] ** -1
        else:
            b = matrix.rows[k][f]
            rhs = y_old[f] * y_old[k] ** _pos(b) * (y_old[k] + one) ** (-b)
            lhs = y_new[f]
        if lhs != rhs:
            failures.append((f, str(lhs), str(rhs)))
    return YhatReport(ok=not failures, failures=failures)


def check_yhat_numeric(s, k: int, xvals, qvals, tol: float = 1e-9) -> YhatReport:
    """Same law checked at a positive numeric assignment."""
    matrix = s.matrix if isinstance(s, Seed) else s.ext.top
    y_old = [v.evaluate(xvals, qvals) for v in yhat(s).values]
    # the mutated cluster is Laurent in the initial one, so the initial
    # assignment evaluates the new seed's exchange terms directly
    new_seed = s.mutate(k)
    y_new = []
    for f in range(s.n):
        t_plus, t_minus = new_seed.exchange_terms(f)
        y_new.append(t_plus.evaluate(xvals, qvals) / t_minus.evaluate(xvals, qvals))
    failures = []
    for f in range(s.n):
        if f == k:
            expected = 1.0 / y_old[k]
        else:
            b = matrix.rows[k][f]
            expected = y_old[f] * y_old[k] ** _pos(b) * (y_old[k] + 1.0) ** (-b)
        if abs(y_new[f] - expected) > tol * max(abs(expected), 1.0):
            failures.append((f, y_new[f], expected))
    return YhatReport(ok=not failures, failures=failures)


# ---------------------------------------------------------------------------
# Laurent phenomenon check


def laurent_check(x) -> bool:
    """True iff the canonical denominator is a unit times a cluster monomial."""
    if isinstance(x, LaurentPoly):
        return True
    if isinstance(x, RationalFunction):
        return x.den.is_one()
    raise TypeError(f"laurent_check expects a rational function, got {type(x)!r}")


# ---------------------------------------------------------------------------
# exchange-graph enumeration


@dataclass
class ExchangeGraph:
    seeds: list
    adjacency: dict  # (vertex, direction k) -> (vertex, position permutation)
    truncated: bool
    variables: frozenset

    @property
    def n_seeds(self) -> int:
        return len(self.seeds)

    @property
    def n_edges(self) -> int:
        return len(self.adjacency) // 2

    def neighbor(self, v: int, k: int) -> tuple[int, tuple[int, ...]]:
        return self.adjacency[(v, k)]

    def sorted_variable_strings(self) -> list[str]:
        return sorted(str(v) for v in self.variables)


def enumerate_exchange_graph(start, max_seeds: int = 100000,
                             mutate: Callable | None = None) -> ExchangeGraph:
    """Breadth-first mutation closure, deduplicated by unordered cluster.

    Works for GeometricSeed and Seed alike; Seed mutation uses the involutive
    default splitting policy.
    """
    if max_seeds < 1:
        raise DomainError("max_seeds must be at least 1")
    mutate = mutate or (lambda s, k: s.mutate(k))
    seeds = [start]
    index = {frozenset(start.cluster): 0}
    adjacency: dict = {}
    truncated = False
    head = 0
    while head < len(seeds):
        current = seeds[head]
        for k in range(current.n):
            if (head, k) in adjacency:
                continue
            neighbor = mutate(current, k)
            key = frozenset(neighbor.cluster)
            if key in index:
                v = index[key]
                rep = seeds[v]
                # matrices are determined by clusters (dedup soundness check)
                perm = tuple(rep.cluster.index(x) for x in neighbor.cluster)
                _assert_same_seed(rep, neighbor, perm)
            else:
                if len(seeds) >= max_seeds:
                    truncated = True
                    continue
                index[key] = v = len(seeds)
                seeds.append(neighbor)
                perm = tuple(range(current.n))
            adjacency[(head, k)] = (v, perm)
        head += 1
    variables = frozenset(x for s in seeds for x in s.cluster)
    return ExchangeGraph(seeds, adjacency, truncated, variables)


def _assert_same_seed(rep, other, perm) -> None:
    """Seeds with equal unordered clusters must agree up to the permutation."""
    mat_rep = rep.matrix.rows if isinstance(rep, Seed) else rep.ext.rows
    mat_other = other.matrix.rows if isinstance(other, Seed) else other.ext.rows
    n = rep.n
    for i in range(n):
        for j in range(n):
            if mat_rep[perm[i]][perm[j]] != mat_other[i][j]:
                raise AssertionError(
                    "cluster dedup produced inconsistent exchange matrices; "
                    "this contradicts seed-determined-by-cluster")
    for i in range(n, len(mat_other)):
        for j in range(n):
            if mat_rep[i][perm[j]] != mat_other[i][j]:
                raise AssertionError("coefficient rows differ across dedup")


# ---------------------------------------------------------------------------
# patterns: rescaling and tropical propagation over an enumerated graph


@dataclass
class SeedPattern:
    """An exchange pattern presented on an enumerated finite graph.

    Seeds are non-normalized; the discrete connection between adjacent
    clusters is recoverable from variable identity, so rescaling families
    are simply maps from cluster variables to coefficient-group elements.
    """

    seeds: list
    adjacency: dict
    ngens: int

    @classmethod
    def from_graph(cls, graph: ExchangeGraph) -> "SeedPattern":
        first = graph.seeds[0]
        if isinstance(first, Seed):
            seeds = list(graph.seeds)
            ngens = first.ngens
        else:
            seeds = [seed_from_geometric(g) for g in graph.seeds]
            ngens = first.ngens
        return cls(seeds, graph.adjacency, ngens)

    def neighbor_variable(self, v: int, e: int) -> LaurentPoly:
        w, perm = self.adjacency[(v, e)]
        return self.seeds[w].cluster[perm[e]]

    def is_normalized(self) -> bool:
        return all(s.is_normalized() for s in self.seeds)

    def check_exchange_relations(self) -> bool:
        for (v, e), (w, perm) in self.adjacency.items():
            s = self.seeds[v]
            t_plus, t_minus = s.exchange_terms(e)
            if s.cluster[e] * self.seeds[w].cluster[perm[e]] != t_plus + t_minus:
                return False
        return True


def rescale_pattern(pattern: SeedPattern,
                    c: Mapping[LaurentPoly, TropicalElement]) -> SeedPattern:
    """Divide every cluster variable by its scalar and transform coefficients.

    The family ``c`` is indexed by cluster variables, which makes it
    automatically compatible with the discrete connection.  Missing entries
    raise ``DomainError``.
    """
    new_seeds = []
    for v, s in enumerate(pattern.seeds):
        n, nq = s.n, pattern.ngens
        try:
            scalars = [c[x] for x in s.cluster]
        except KeyError as exc:
            raise DomainError(f"rescaling family misses variable {exc}") from exc
        cluster = [x.exact_div(ci.to_laurent(n, nq))
                   for x, ci in zip(s.cluster, scalars)]
        coeffs = []
        for e in range(n):
            p_plus, p_minus = s.coeffs[e]
            c_far = c[pattern.neighbor_variable(v, e)]
            denom = scalars[e] * c_far
            for i in range(n):
                b = s.matrix.rows[i][e]
                if b > 0:
                    p_plus = p_plus * scalars[i] ** b
                elif b < 0:
                    p_minus = p_minus * scalars[i] ** (-b)
            coeffs.append((p_plus / denom, p_minus / denom))
        new_seeds.append(Seed(s.matrix, cluster, coeffs, s.labels))
    return SeedPattern(new_seeds, pattern.adjacency, pattern.ngens)


def tropical_propagate(pattern: SeedPattern,
                       initial: Mapping[LaurentPoly, TropicalElement],
                       start: int = 0) -> dict:
    """Propagate scalars along flips by the auxiliary-addition relation.

    Starting from values on the cluster at ``start``, each edge determines
    the scalar of the new variable via

        c_e(t) c_e(t') = p+ prod c^[b]+  (+)  p- prod c^[-b]+ .

    Cycle consistency is asserted: if a variable is reached twice with
    different values the input data was not a rescalable pattern.
    """
    c: dict = {}
    for x in pattern.seeds[start].cluster:
        if x not in initial:
            raise DomainError("initial values must cover the starting cluster")
        c[x] = initial[x]
    seen = {start}
    queue = [start]
    while queue:
        v = queue.pop(0)
        s = pattern.seeds[v]
        for e in range(s.n):
            w, perm = pattern.adjacency[(v, e)]
            far = pattern.seeds[w].cluster[perm[e]]
            p_plus, p_minus = s.coeffs[e]
            for i in range(s.n):
                b = s.matrix.rows[i][e]
                if b > 0:
                    p_plus = p_plus * c[s.cluster[i]] ** b
                elif b < 0:
                    p_minus = p_minus * c[s.cluster[i]] ** (-b)
            value = p_plus.oplus(p_minus) / c[s.cluster[e]]
            if far in c:
                if c[far] != value:
                    raise DomainError("tropical propagation inconsistent on a cycle")
            else:
                c[far] = value
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return c
