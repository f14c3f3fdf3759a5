"""Transitive factorization counts in the symmetric group."""

from fractions import Fraction

import pytest

from llstrata.permoracle import (FactorizationQuery, OracleCache,
                                 canonical_of_type, compose,
                                 conjugacy_class_size, count_factorizations,
                                 cycle_type, cycles, identity, inverse,
                                 oracle_for_stratum)
from llstrata.unfolding import FamilySpec, MultisingularityType


def test_permutation_basics():
    p = (1, 2, 0, 4, 3)  # (0 1 2)(3 4)
    assert cycle_type(p) == (3, 2)
    assert compose(p, inverse(p)) == identity(5)
    assert sorted(len(c) for c in cycles(p)) == [2, 3]


def test_compose_order():
    # q acts first: (p o q)(0) = p(q(0))
    q = (1, 0, 2)
    p = (0, 2, 1)
    assert compose(p, q) == (2, 0, 1)


def test_canonical_of_type():
    assert cycle_type(canonical_of_type((3, 2), 5)) == (3, 2)
    assert canonical_of_type((2, 1), 3) == (1, 0, 2)


def test_class_sizes():
    assert conjugacy_class_size((3,)) == 2
    assert conjugacy_class_size((2, 1)) == 3
    assert conjugacy_class_size((2, 2)) == 3
    assert conjugacy_class_size((1, 1, 1)) == 1


def test_balance_enforced():
    with pytest.raises(ValueError):
        FactorizationQuery(n=3, alpha_type=(3,), beta_type=(3,), s=1)
    FactorizationQuery(n=3, alpha_type=(3,), beta_type=(3,), s=0)


def test_type_must_sum_to_n():
    with pytest.raises(ValueError):
        FactorizationQuery(n=4, alpha_type=(3,), beta_type=(2, 2), s=1)


def test_spot_counts():
    # a 3-cycle written as a product of two transpositions, 3 ways
    q = FactorizationQuery(n=3, alpha_type=(3,), beta_type=(1, 1, 1), s=2)
    assert count_factorizations(q) == 1
    # degree-2 cover with two simple branch points
    q = FactorizationQuery(n=2, alpha_type=(1, 1), beta_type=(1, 1), s=2)
    assert count_factorizations(q) == Fraction(1, 2)
    # full cycle over both ends, no extra branching
    q = FactorizationQuery(n=2, alpha_type=(2,), beta_type=(2,), s=0)
    assert count_factorizations(q) == Fraction(1, 2)


def test_transitivity_filter_strict():
    # with alpha = beta^(-1) supported on one edge, repeated transpositions
    # on that edge leave the third sheet disconnected
    q = FactorizationQuery(n=3, alpha_type=(2, 1), beta_type=(2, 1), s=2)
    loose = count_factorizations(q, require_transitive=False)
    strict = count_factorizations(q)
    assert strict < loose


def test_oracle_matches_pipeline_spot():
    fam = FamilySpec.laurent(2, 1)
    _, count = oracle_for_stratum(fam, MultisingularityType.of(2))
    assert count == 1
    fam = FamilySpec.laurent(2, 2)
    _, count = oracle_for_stratum(fam, MultisingularityType.of(2))
    assert count == 3
    _, count = oracle_for_stratum(fam, MultisingularityType.of(1, 1))
    assert count == 1


def test_oracle_rejects_overfull_profile():
    with pytest.raises(ValueError):
        oracle_for_stratum(FamilySpec.laurent(1, 1), MultisingularityType.of(2))


def _brute_force(query):
    """Average over all alpha of the given type (no canonical shortcut)."""
    from itertools import permutations
    from math import factorial
    n = query.n
    alphas = [p for p in permutations(range(n)) if cycle_type(p) == query.alpha_type]
    transpositions = []
    for i in range(n):
        for j in range(i + 1, n):
            img = list(range(n))
            img[i], img[j] = j, i
            transpositions.append(tuple(img))

    def transitive(perms):
        reach = {0}
        frontier = [0]
        while frontier:
            x = frontier.pop()
            for p in perms:
                y = p[x]
                if y not in reach:
                    reach.add(y)
                    frontier.append(y)
        return len(reach) == n

    raw = 0
    from itertools import product
    betas = [p for p in permutations(range(n)) if cycle_type(p) == query.beta_type]
    for alpha in alphas:
        for beta in betas:
            for taus in product(transpositions, repeat=query.s):
                total = compose(beta, alpha)
                for t in taus:
                    total = compose(t, total)
                if total != identity(n) or not transitive((alpha, beta) + taus):
                    continue
                raw += 1
    return Fraction(raw, factorial(n) * len(alphas)) * conjugacy_class_size(query.alpha_type)


@pytest.mark.parametrize("n,alpha,beta,s", [
    (3, (3,), (3,), 0), (3, (3,), (1, 1, 1), 2), (3, (2, 1), (2, 1), 2),
    (4, (4,), (2, 1, 1), 2), (4, (2, 2), (3, 1), 2)])
def test_against_brute_force(n, alpha, beta, s):
    q = FactorizationQuery(n=n, alpha_type=alpha, beta_type=beta, s=s)
    assert count_factorizations(q) == _brute_force(q)


def test_cache_roundtrip(tmp_path):
    path = tmp_path / "oracle.jsonl"
    cache = OracleCache(str(path))
    q = FactorizationQuery(n=3, alpha_type=(3,), beta_type=(2, 1), s=1)
    first = count_factorizations(q, cache=cache)
    reloaded = OracleCache(str(path))
    assert reloaded.get(q) == first
    assert count_factorizations(q, cache=reloaded) == first


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_cycle_factorization_count(n):
    # an n-cycle is a product of n-1 transpositions in n^(n-2) ways
    q = FactorizationQuery(n=n, alpha_type=(n,),
                           beta_type=tuple([1] * n), s=n - 1)
    assert count_factorizations(q) == Fraction(n ** (n - 2), n)
