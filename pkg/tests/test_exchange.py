import random
from fractions import Fraction

import pytest

from scab.errors import DomainError, SkewSymmetrizabilityError
from scab.exchange import (ExchangeMatrix, ExtendedExchangeMatrix, GeometricSeed,
                           Seed, SeedPattern, check_yhat_mutation,
                           check_yhat_numeric, enumerate_exchange_graph,
                           laurent_check, mutate_extended, mutate_matrix,
                           mutate_seed_geometric, mutate_seed_nonnormalized,
                           random_skew_symmetrizable, rescale_pattern,
                           seed_from_geometric, tropical_propagate, yhat)
from scab.laminations import principal_seed
from scab.poly import LaurentPoly, RationalFunction
from scab.semifields import TropicalElement

HEXAGON_B = ExchangeMatrix([
    [0, -1, 0, 0, 1, -1],
    [1, 0, -1, 0, 0, 0],
    [0, 1, 0, -1, 0, 0],
    [0, 0, 1, 0, -1, 0],
    [-1, 0, 0, 1, 0, 1],
    [1, 0, 0, 0, -1, 0],
])


def one(ngens=0):
    return TropicalElement.one(ngens)


# -- matrices ---------------------------------------------------------------


def test_rank2_matrix_mutation():
    b = ExchangeMatrix([[0, -1], [1, 0]])
    assert mutate_matrix(b, 0).rows == ((0, 1), (-1, 0))


def test_hexagon_involutivity():
    for k in range(6):
        assert mutate_matrix(mutate_matrix(HEXAGON_B, k), k) == HEXAGON_B


def test_zero_matrix_fixed():
    z = ExchangeMatrix([[0, 0], [0, 0]])
    assert mutate_matrix(z, 0) == z and mutate_matrix(z, 1) == z


def test_mutate_extended_digon():
    bt = ExtendedExchangeMatrix([[0, 0], [0, 0], [-1, 0]], 2)
    assert mutate_extended(bt, 0).rows == ((0, 0), (0, 0), (1, 0))


def test_mutate_extended_sl2():
    bt = ExtendedExchangeMatrix([[0], [1], [1]], 1)
    assert mutate_extended(bt, 0).rows == ((0,), (-1,), (-1,))


def test_extended_involutivity_hexagon_lamination():
    rows = [list(r) for r in HEXAGON_B.rows] + [[2, 0, -2, -2, 1, -3]]
    bt = ExtendedExchangeMatrix(rows, 6)
    for k in range(6):
        assert mutate_extended(mutate_extended(bt, k), k) == bt


def test_index_out_of_range():
    with pytest.raises(IndexError):
        mutate_matrix(HEXAGON_B, 6)


def test_skew_symmetrizability_rejected():
    with pytest.raises(SkewSymmetrizabilityError):
        ExchangeMatrix([[0, 1], [1, 0]])
    with pytest.raises(SkewSymmetrizabilityError):
        ExchangeMatrix([[0, 1], [0, 0]])


def test_skew_symmetrizable_non_symmetric():
    b = ExchangeMatrix([[0, 1], [-2, 0]])  # B2 type, d = (2, 1)
    assert b.symmetrizer in ((2, 1), (1, 2)) or b.symmetrizer[0] != b.symmetrizer[1]
    mutated = b.mutate(0)
    assert mutated.mutate(0) == b


def test_mutation_preserves_symmetrizer():
    rng = random.Random(11)
    for _ in range(50):
        b = random_skew_symmetrizable(rng.randint(2, 5), rng)
        for k in range(b.n):
            assert b.mutate(k).symmetrizer == b.symmetrizer


# -- geometric seeds --------------------------------------------------------


def test_sl2_geometric_mutation():
    seed = GeometricSeed.initial(ExtendedExchangeMatrix([[0], [1], [1]], 1))
    mutated = mutate_seed_geometric(seed, 0)
    assert str(mutated.cluster[0]) == "(q1*q2 + 1)/x1"
    assert mutated.ext.rows == ((0,), (-1,), (-1,))
    assert mutate_seed_geometric(mutated, 0) == seed


def test_geometric_normalization_after_every_mutation():
    seed = principal_seed(HEXAGON_B)
    rng = random.Random(2)
    for _ in range(12):
        k = rng.randrange(seed.n)
        seed = seed.mutate(k)
        for e in range(seed.n):
            p_plus, p_minus = seed.coefficient_pair(e)
            assert p_plus.oplus(p_minus).is_one()


def test_principal_exchange_relation_shape():
    seed = principal_seed(ExchangeMatrix([[0, -1], [1, 0]]))
    t_plus, t_minus = seed.exchange_terms(0)
    assert str(t_plus) == "x2*q1"
    assert str(t_minus) == "1"


# -- non-normalized seeds ---------------------------------------------------


def test_rank2_nonnormalized_exchange():
    s = Seed.initial(ExchangeMatrix([[0, -1], [1, 0]]),
                     [(one(), one()), (one(), one())])
    mutated = mutate_seed_nonnormalized(s, 0)
    assert str(mutated.cluster[0]) == "(x2 + 1)/x1"
    assert mutate_seed_nonnormalized(mutated, 0) == s


def test_rank2_coefficient_ratio_rule():
    # p'+_x / p'-_x = (p-_z)^(-b) p+_x / p-_x  for B = [[0,-b],[c,0]]
    b_exp = 2
    matrix = ExchangeMatrix([[0, -b_exp], [1, 0]])
    gens = 4
    pz = (TropicalElement.generator(gens, 0), TropicalElement.generator(gens, 1))
    px = (TropicalElement.generator(gens, 2), TropicalElement.generator(gens, 3))
    s = Seed.initial(matrix, [pz, px])
    mutated = s.mutate(0)
    got_plus, got_minus = mutated.coeffs[1]
    expected_ratio = (pz[1] ** -b_exp) * px[0] / px[1]
    assert got_plus / got_minus == expected_ratio
    # the involutive default policy keeps p-_x
    assert got_minus == px[1]
    assert mutated.coeffs[0] == (pz[1], pz[0])


def test_normalized_policy_produces_normalized_pairs():
    gens = 2
    matrix = ExchangeMatrix([[0, -1], [1, 0]])
    pz = (TropicalElement.generator(gens, 0), one(gens))
    px = (TropicalElement.generator(gens, 1), one(gens))
    s = Seed.initial(matrix, [pz, px])
    mutated = s.mutate(0, policy="normalized")
    for p_plus, p_minus in mutated.coeffs:
        assert p_plus.oplus(p_minus).is_one()
    with pytest.raises(DomainError):
        s.mutate(0, policy="bogus")


# -- yhat -------------------------------------------------------------------


def test_yhat_rank2_formula():
    seed = principal_seed(ExchangeMatrix([[0, -1], [1, 0]]))
    y = yhat(seed)
    # yhat_e = (p+/p-) x_f^c with c = 1
    assert y[0] == RationalFunction(
        LaurentPoly.variable(2, 2, 1) * LaurentPoly.coeff_gen(2, 2, 0))


def test_yhat_trivial_for_zero_matrix():
    seed = GeometricSeed.initial(ExtendedExchangeMatrix([[0, 0], [0, 0]], 2))
    for v in yhat(seed).values:
        assert v == RationalFunction(LaurentPoly.one(2, 0))


def test_yhat_inverts_at_mutated_direction():
    seed = principal_seed(HEXAGON_B)
    y = yhat(seed)
    y2 = yhat(seed.mutate(3))
    assert y2[3] == y[3] ** -1


@pytest.mark.parametrize("k", range(2))
def test_yhat_mutation_rank2(k):
    assert check_yhat_mutation(principal_seed(ExchangeMatrix([[0, -1], [1, 0]])), k).ok


def test_yhat_mutation_hexagon_numeric():
    seed = principal_seed(HEXAGON_B)
    rng = random.Random(99)
    for _ in range(10):
        xv = [rng.uniform(0.5, 2) for _ in range(6)]
        qv = [rng.uniform(0.5, 2) for _ in range(6)]
        for k in range(6):
            assert check_yhat_numeric(seed, k, xv, qv, tol=1e-9).ok


# -- laurent check ----------------------------------------------------------


def test_laurent_check_examples():
    x1 = LaurentPoly.variable(2, 0, 0)
    x2 = LaurentPoly.variable(2, 0, 1)
    onep = LaurentPoly.one(2, 0)
    assert laurent_check(RationalFunction(x2 + onep, x1))
    assert not laurent_check(RationalFunction(x2 + onep, x1 + onep))
    assert laurent_check(x1 + x2)


# -- enumeration ------------------------------------------------------------


def test_digon_pattern_counts():
    seed = GeometricSeed.initial(
        ExtendedExchangeMatrix([[0, 0], [0, 0], [1, 0], [0, 1]], 2))
    graph = enumerate_exchange_graph(seed)
    assert graph.n_seeds == 4
    assert graph.n_edges == 4
    assert len(graph.variables) == 4


def test_a3_pattern_counts():
    b = ExchangeMatrix([[0, 1, 0], [-1, 0, 1], [0, -1, 0]])
    graph = enumerate_exchange_graph(principal_seed(b))
    assert graph.n_seeds == 14
    assert len(graph.variables) == 9
    assert not graph.truncated
    assert all(laurent_check(v) for v in graph.variables)


def test_enumeration_truncates_at_bound():
    b = ExchangeMatrix([[0, 1, 0], [-1, 0, 1], [0, -1, 0]])
    graph = enumerate_exchange_graph(principal_seed(b), max_seeds=5)
    assert graph.truncated
    assert graph.n_seeds == 5
    with pytest.raises(DomainError):
        enumerate_exchange_graph(principal_seed(b), max_seeds=0)


def test_enumeration_deterministic():
    b = ExchangeMatrix([[0, 1, 0], [-1, 0, 1], [0, -1, 0]])
    g1 = enumerate_exchange_graph(principal_seed(b))
    g2 = enumerate_exchange_graph(principal_seed(b))
    assert [s.cluster for s in g1.seeds] == [s.cluster for s in g2.seeds]
    assert g1.adjacency == g2.adjacency


# -- rescaling and tropical propagation --------------------------------------


def _digon_pattern():
    seed = GeometricSeed.initial(
        ExtendedExchangeMatrix([[0, 0], [0, 0], [-1, 0]], 2))
    graph = enumerate_exchange_graph(seed)
    return graph, SeedPattern.from_graph(graph)


def test_rescale_identity():
    graph, pattern = _digon_pattern()
    ones = {v: TropicalElement.one(pattern.ngens) for v in graph.variables}
    back = rescale_pattern(pattern, ones)
    for a, b in zip(pattern.seeds, back.seeds):
        assert a.cluster == b.cluster and a.coeffs == b.coeffs


def test_rescale_single_variable_formula():
    # scaling one cluster variable by gamma divides p+- at its star by
    # gamma * c_e(t-bar) exactly
    graph, pattern = _digon_pattern()
    gamma = TropicalElement.generator(1, 0, 2)
    target = pattern.seeds[0].cluster[0]
    family = {v: (gamma if v == target else TropicalElement.one(1))
              for v in graph.variables}
    rescaled = rescale_pattern(pattern, family)
    base = pattern.seeds[0].coeffs[0]
    got = rescaled.seeds[0].coeffs[0]
    assert got == (base[0] / gamma, base[1] / gamma)
    assert rescaled.check_exchange_relations()


def test_rescale_missing_variable_rejected():
    graph, pattern = _digon_pattern()
    with pytest.raises(DomainError):
        rescale_pattern(pattern, {})


def test_tropical_propagate_trivial():
    graph, pattern = _digon_pattern()
    initial = {v: TropicalElement.one(1) for v in pattern.seeds[0].cluster}
    c = tropical_propagate(pattern, initial)
    # normalized coefficients: the auxiliary relation gives c = 1 everywhere
    assert all(val.is_one() for val in c.values())


def test_tropical_propagate_rank2_min():
    # c_z c_zbar = p+ c_x (+) p- evaluates by componentwise min
    graph, pattern = _digon_pattern()
    g = TropicalElement.generator(1, 0)
    initial = {pattern.seeds[0].cluster[0]: g ** 2,
               pattern.seeds[0].cluster[1]: g ** -1}
    c = tropical_propagate(pattern, initial)
    w, perm = pattern.adjacency[(0, 0)]
    far = pattern.seeds[w].cluster[perm[0]]
    p_plus, p_minus = pattern.seeds[0].coeffs[0]
    assert c[far] == p_plus.oplus(p_minus) / (g ** 2)


def test_denormalize_propagate_renormalize():
    graph, pattern = _digon_pattern()
    m = pattern.ngens
    variables = sorted(graph.variables, key=str)
    gamma = {v: TropicalElement(m, {0: Fraction(i % 3 - 1, 2)})
             for i, v in enumerate(variables)}
    denorm = rescale_pattern(pattern, gamma)
    assert not denorm.is_normalized()
    initial = {new: gamma[old].inv() for old, new in
               zip(pattern.seeds[0].cluster, denorm.seeds[0].cluster)}
    c = tropical_propagate(denorm, initial)
    renorm = rescale_pattern(denorm, c)
    assert renorm.is_normalized()
    assert renorm.check_exchange_relations()


def test_seed_from_geometric_round_trip():
    g = principal_seed(ExchangeMatrix([[0, -1], [1, 0]]))
    s = seed_from_geometric(g)
    assert s.is_normalized()
    assert s.mutate(0, "normalized").cluster == g.mutate(0).cluster
