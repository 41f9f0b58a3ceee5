import math
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from flatpoly.families import (
    RNG_ALGORITHM,
    FamilySpec,
    canonical_codes,
    enumerate_signs,
    fekete,
    is_prime,
    newman_from_signs,
    orbit_codes,
    random_binary,
    random_littlewood,
    rudin_shapiro,
    signs_to_code,
)
from flatpoly.norms import NormQuery, exact_even_norm, flatness_deviation, grid_norm
from flatpoly.polycore import SignSequence, evaluate_on_grid, from_signs


def test_random_littlewood_determinism():
    assert random_littlewood(50, 7) == random_littlewood(50, 7)
    assert random_littlewood(50, 7) != random_littlewood(50, 8)
    assert len(random_littlewood(1, 3)) == 1
    assert "PCG64" in RNG_ALGORITHM


def test_random_littlewood_frozen_values():
    # frozen output of the versioned generator; a change here breaks reproducibility
    assert str(random_littlewood(16, 0)) == "+-----+-+-----++"
    assert str(random_littlewood(16, 12345)) == "------++----++++"
    q = 10**5
    for seed in (0, 1, 2):
        assert abs(random_littlewood(q, seed).entries.mean()) < 4 / math.sqrt(q)


@pytest.mark.parametrize("k, text", [(0, "+"), (1, "++"), (2, "+++-"), (3, "+++-++-+")])
def test_rudin_shapiro_examples(k, text):
    assert str(rudin_shapiro(k)) == text


def test_rudin_shapiro_guard():
    with pytest.raises(ValueError):
        rudin_shapiro(25)
    with pytest.raises(ValueError):
        rudin_shapiro(-1)


@pytest.mark.parametrize("k", range(0, 13))
def test_rudin_shapiro_sup_norm(k):
    P = from_signs(rudin_shapiro(k))
    m = max(4096, 16 * len(P.coeffs))
    peak = np.abs(evaluate_on_grid(P, m).values).max()
    assert peak / 2 ** (k / 2) <= math.sqrt(2) + 1e-9


@pytest.mark.parametrize("p, text", [(3, "++-"), (5, "++--+"), (7, "+++-+--")])
def test_fekete_examples(p, text):
    assert str(fekete(p)) == text


def test_fekete_legendre_oracle():
    p = 101
    residues = {(j * j) % p for j in range(1, p)}
    expected = [1] + [1 if j in residues else -1 for j in range(1, p)]
    assert fekete(p).entries.tolist() == expected


@pytest.mark.parametrize("bad", [1, 2, 9, 15, 561])
def test_fekete_rejects(bad):
    with pytest.raises(ValueError):
        fekete(bad)


def test_is_prime_oracle():
    sieve = [True] * 5000
    sieve[0] = sieve[1] = False
    for i in range(2, 71):
        if sieve[i]:
            for j in range(i * i, 5000, i):
                sieve[j] = False
    assert [n for n in range(5000) if is_prime(n)] == [n for n in range(5000) if sieve[n]]
    assert is_prime(2**61 - 1) and not is_prime(2**61 + 1)


def test_newman_from_signs():
    s = SignSequence.parse("+-+")
    assert newman_from_signs(s, "plus").entries.tolist() == [1, 0, 1]
    assert newman_from_signs(s, "minus").entries.tolist() == [0, 1, 0]
    with pytest.raises(ValueError):
        newman_from_signs(s, "other")


@given(st.lists(st.sampled_from([-1, 1]), min_size=1, max_size=50))
def test_newman_variants_partition(signs):
    s = SignSequence(np.array(signs))
    total = newman_from_signs(s, "plus").entries + newman_from_signs(s, "minus").entries
    assert total.tolist() == [1] * len(signs)


def test_random_binary():
    q = 40000
    b = random_binary(q, 0.5, 3)
    assert abs(b.density - 0.5) < 4 / math.sqrt(q)
    assert random_binary(100, 0.3, 9) == random_binary(100, 0.3, 9)
    for d in (0.0, 1.0, -0.1, 1.5):
        with pytest.raises(ValueError):
            random_binary(10, d, 0)
    assert random_binary(3, 1e-9, 0).weight == 0


def test_enumeration_small():
    assert [str(s) for s in enumerate_signs(1)] == ["+"]
    e2 = enumerate_signs(2)
    assert e2.total == 4
    reps = [str(s) for s in e2]
    assert reps == [str(s) for s in enumerate_signs(2)]
    covered = set()
    for r in reps:
        code = signs_to_code(SignSequence.parse(r))
        covered.update(int(c) for c in orbit_codes(np.array([code]), 2)[:, 0])
    assert covered == set(range(4))
    with pytest.raises(ValueError):
        enumerate_signs(29)
    with pytest.raises(ValueError):
        enumerate_signs(0)


def _orbit_oracle(signs):
    """Independent orbit computation on tuples of +/-1."""
    q = len(signs)
    out = set()
    for seq in (tuple(signs), tuple(reversed(signs))):
        for alt in (False, True):
            t = tuple(e * (-1) ** j if alt else e for j, e in enumerate(seq))
            out.add(t)
            out.add(tuple(-e for e in t))
    return out


@pytest.mark.parametrize("q", [3, 6, 12])
def test_enumeration_partition_oracle(q):
    reps = [tuple(int(e) for e in s.entries) for s in enumerate_signs(q)]
    reached = {}
    for r in reps:
        orbit = _orbit_oracle(r)
        # representative is the lexicographic minimum with '+' < '-'
        assert r == max(orbit)
        assert r[0] == 1
        for member in orbit:
            assert member not in reached
            reached[member] = r
    assert len(reached) == 2**q
    assert set(reached) == set(product((1, -1), repeat=q))


def test_class_counts():
    # oracle: number of distinct orbits found by brute force over all 2^q sequences
    for q in range(1, 13):
        brute = len({max(_orbit_oracle(s)) for s in product((1, -1), repeat=q)})
        assert enumerate_signs(q).class_count == brute
    assert [enumerate_signs(q).class_count for q in (13, 14)] == [1056, 2080]


def test_canonical_codes_idempotent():
    x = np.arange(1 << 10, dtype=np.uint64)
    c = canonical_codes(x, 10)
    assert np.array_equal(canonical_codes(c, 10), c)


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 40), st.integers(0, 2**32), st.floats(1.0, 7.0))
def test_symmetry_invariance(q, seed, alpha):
    s = random_littlewood(q, seed)
    e = s.entries.astype(int)
    images = [-e, e[::-1], e * (-1) ** np.arange(q)]
    query = NormQuery(alpha, 1 / math.sqrt(q), 4096)
    base_dev = flatness_deviation(from_signs(s), 1, query).value
    base_norm = grid_norm(from_signs(s), query).value
    base_l4 = exact_even_norm(from_signs(s), 2).value
    for img in images:
        t = from_signs(SignSequence(img))
        assert flatness_deviation(t, 1, query).value == pytest.approx(base_dev, abs=1e-9)
        assert grid_norm(t, query).value == pytest.approx(base_norm, abs=1e-9)
        assert exact_even_norm(t, 2).value == base_l4


def test_family_spec():
    spec = FamilySpec("random_sign", q=8, seed=1)
    assert FamilySpec.from_dict(spec.to_dict()) == spec
    assert spec.build() == random_littlewood(8, 1)
    assert FamilySpec("rudin_shapiro", k=3).build() == rudin_shapiro(3)
    assert FamilySpec("from_string", text="0110").build().weight == 2
    with pytest.raises(ValueError):
        FamilySpec("random_sign", q=8)
    with pytest.raises(ValueError):
        FamilySpec("fekete", p=7, seed=3)
    with pytest.raises(ValueError):
        FamilySpec("gauss", q=3)
