"""Min-balanced systems: detection, normalization, enumeration, symmetry."""

from fractions import Fraction as F
from itertools import combinations, permutations
from math import gcd

import pytest

from minbal.balance import (
    SetSystem,
    canonical_type,
    complement_system,
    enumerate_min_balanced,
    is_min_balanced,
    normalize,
    permute_coalition,
    system_of,
)
from minbal.cones import conjugate
from minbal.games import letters
from minbal.linalg import conic_feasible, solve_unique


class TestIsMinBalanced:
    def test_worked_example(self, p5):
        mbs = is_min_balanced(system_of(p5, "ab", "ac", "ad", "bcd"))
        assert mbs is not None
        assert mbs.carrier == p5.coalition_of("abcd")
        assert mbs.weights == (F(1, 3), F(1, 3), F(1, 3), F(2, 3))

    def test_forced_zero_weight(self, p3):
        assert is_min_balanced(system_of(p3, "a", "b", "bc")) is None

    def test_partition(self, p3):
        mbs = is_min_balanced(system_of(p3, "a", "b", "c"))
        assert mbs is not None and mbs.weights == (1, 1, 1)

    def test_dependent_members(self, p4):
        assert is_min_balanced(system_of(p4, "a", "b", "ab", "cd")) is None

    def test_trivial_single_member(self, p3):
        mbs = is_min_balanced(system_of(p3, "ab"))
        assert mbs is not None and mbs.trivial
        assert mbs.k is None and mbs.alpha is None

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            is_min_balanced(SetSystem(()))


class TestNormalize:
    def test_worked_example(self, p5):
        weights = {
            p5.coalition_of("ab"): F(1, 3),
            p5.coalition_of("ac"): F(1, 3),
            p5.coalition_of("ad"): F(1, 3),
            p5.coalition_of("bcd"): F(2, 3),
        }
        k, alpha = normalize(weights)
        assert k == 3
        assert alpha.coefficient(p5.coalition_of("abcd")) == 3
        assert alpha.coefficient(p5.coalition_of("ab")) == -1
        assert alpha.coefficient(p5.coalition_of("ac")) == -1
        assert alpha.coefficient(p5.coalition_of("ad")) == -1
        assert alpha.coefficient(p5.coalition_of("bcd")) == -2
        assert alpha.coefficient(0) == 2

    def test_two_player_partition(self, p2):
        k, alpha = normalize({1: F(1), 2: F(1)})
        assert k == 1
        assert alpha.as_dict() == {0b11: 1, 0b01: -1, 0b10: -1, 0: 1}

    def test_three_pairs(self, p3):
        weights = {p3.coalition_of(k): F(1, 2) for k in ("ab", "ac", "bc")}
        k, alpha = normalize(weights)
        assert k == 2
        assert alpha.coefficient(p3.full_mask) == 2
        assert all(alpha.coefficient(p3.coalition_of(x)) == -1 for x in ("ab", "ac", "bc"))
        assert alpha.coefficient(0) == 1

    def test_trivial_rejected(self):
        with pytest.raises(ValueError):
            normalize({0b11: F(1)})

    def test_unbalanced_rejected(self):
        with pytest.raises(ValueError):
            normalize({0b01: F(1, 2), 0b10: F(1)})


class TestComplement:
    def test_three_blocks(self, p4):
        c = complement_system(system_of(p4, "a", "b", "cd"), p4)
        assert c == system_of(p4, "bcd", "acd", "ab")

    def test_self_complementary(self, p3):
        c = complement_system(system_of(p3, "a", "bc"), p3)
        assert c == system_of(p3, "bc", "a")

    def test_triples_to_singletons(self, p4):
        c = complement_system(system_of(p4, "abc", "abd", "acd", "bcd"), p4)
        assert c == system_of(p4, "d", "c", "b", "a")

    def test_full_set_rejected(self, p3):
        with pytest.raises(ValueError):
            complement_system(system_of(p3, "abc", "a"), p3)

    def test_complement_of_full_carrier_system_is_min_balanced(self, p4):
        # and its normalized vector is the reflection of the original
        for n in (2, 3, 4):
            p = letters(n)
            for mbs in enumerate_min_balanced(p, p.full_mask):
                comp = complement_system(mbs.system, p)
                comp_mbs = is_min_balanced(comp)
                assert comp_mbs is not None
                assert comp_mbs.carrier == p.full_mask
                assert comp_mbs.alpha == conjugate(mbs.alpha, p)


class TestEnumerate:
    @pytest.mark.parametrize("n, count, types", [(2, 1, 1), (3, 5, 3), (4, 41, 9)])
    def test_full_carrier_counts(self, n, count, types):
        p = letters(n)
        systems = enumerate_min_balanced(p, p.full_mask)
        assert len(systems) == count
        canon = {canonical_type(m.system, p)[0].members for m in systems}
        assert len(canon) == types

    def test_trivial_included_on_request(self, p3):
        with_trivial = enumerate_min_balanced(p3, p3.full_mask, non_trivial_only=False)
        assert len(with_trivial) == 6
        assert any(m.trivial for m in with_trivial)

    def test_canonical_order(self, p4):
        systems = enumerate_min_balanced(p4, p4.full_mask)
        members = [m.system.members for m in systems]
        assert members == sorted(members)

    def test_carrier_exactness(self, p4):
        for carrier in (0b0111, 0b1011):
            for mbs in enumerate_min_balanced(p4, carrier):
                assert mbs.carrier == carrier

    def test_empty_carrier_rejected(self, p3):
        with pytest.raises(ValueError):
            enumerate_min_balanced(p3, 0)

    def test_player_cap(self):
        p7 = letters(7)
        with pytest.raises(ValueError):
            enumerate_min_balanced(p7, p7.full_mask)

    def test_jobs_do_not_change_output(self, p4):
        base = enumerate_min_balanced(p4, p4.full_mask)
        assert enumerate_min_balanced(p4, p4.full_mask, jobs=3) == base

    def test_permutation_invariant_counts(self, p5):
        by_size = {}
        for size in (2, 3, 4):
            counts = {
                carrier: len(enumerate_min_balanced(p5, carrier))
                for carrier in range(32)
                if carrier.bit_count() == size
            }
            assert len(set(counts.values())) == 1
            by_size[size] = next(iter(counts.values()))
        assert by_size == {2: 1, 3: 5, 4: 41}


class TestEnumeratedInvariants:
    def test_weights_balance_and_minimality(self):
        # weights sum to one at each carrier player; dropping any member
        # pushes the carrier's incidence vector out of the conic hull
        for n in (2, 3, 4):
            p = letters(n)
            for mbs in enumerate_min_balanced(p, p.full_mask):
                members = mbs.system.members
                for i in range(n):
                    total = sum(
                        w for m, w in zip(members, mbs.weights) if m >> i & 1
                    )
                    assert total == 1
                chi = [tuple(m >> i & 1 for i in range(n)) for m in members]
                ones = (1,) * n
                for drop in range(len(members)):
                    rest = chi[:drop] + chi[drop + 1:]
                    assert conic_feasible(rest, ones) is None

    def test_alpha_shape(self):
        for n in (2, 3, 4):
            p = letters(n)
            for mbs in enumerate_min_balanced(p, p.full_mask):
                alpha = mbs.alpha
                assert alpha.is_o_standardized()
                assert alpha.coefficient(mbs.carrier) == mbs.k > 0
                assert alpha.coefficient(0) >= 1
                ints = [mbs.k * w for w in mbs.weights]
                assert all(v.denominator == 1 for v in ints)
                assert gcd(*(int(v) for v in ints)) == 1
                for m, w in zip(mbs.system.members, mbs.weights):
                    assert alpha.coefficient(m) == -mbs.k * w < 0
                support = {s for s, _ in alpha.items}
                assert support <= set(mbs.system.members) | {0, mbs.carrier}

    def test_unanimity_pairing(self):
        # every unanimity function satisfies every catalogue inequality,
        # with equality whenever its support reaches outside the carrier
        for n in (2, 3, 4):
            p = letters(n)
            for mbs in enumerate_min_balanced(p, p.full_mask):
                for r in p.coalitions():
                    value = sum(c for s, c in mbs.alpha.items if r & s == r)
                    assert value >= 0
                    if r and r & ~mbs.carrier:
                        assert value == 0


class TestCanonicalType:
    def test_orbit_sizes(self, p4):
        assert canonical_type(system_of(p4, "ad", "bd", "cd"), p4)[1] == 4
        assert canonical_type(system_of(p4, "a", "bd", "cd", "abc"), p4)[1] == 12
        assert canonical_type(system_of(p4, "abc", "abd", "acd", "bcd"), p4)[1] == 1

    def test_orbit_members_share_canonical_form(self, p4):
        system = system_of(p4, "a", "bd", "cd", "abc")
        base = canonical_type(system, p4)[0]
        for perm in permutations(range(4)):
            image = SetSystem(tuple(sorted(permute_coalition(m, perm) for m in system.members)))
            assert canonical_type(image, p4)[0] == base

    def test_canonical_is_in_orbit(self, p4):
        system = system_of(p4, "ab", "acd", "bcd")
        canon, orbit = canonical_type(system, p4)
        images = {
            tuple(sorted(permute_coalition(m, perm) for m in system.members))
            for perm in permutations(range(4))
        }
        assert canon.members in images
        assert orbit == len(images)


# -- brute-force cross-check of the enumeration --------------------------

def _int_balanced(combo, c):
    """Test-local oracle: strict positivity of the unique weights, via
    integer Gauss-Jordan written straight from the definition."""
    k = len(combo)
    rows = [[(s >> i) & 1 for s in combo] + [1] for i in range(c)]
    for col in range(k):
        pr = next((i for i in range(col, c) if rows[i][col]), None)
        if pr is None:
            return False
        rows[col], rows[pr] = rows[pr], rows[col]
        prow = rows[col]
        lead = prow[col]
        for i in range(c):
            if i != col and rows[i][col]:
                f = rows[i][col]
                new = [lead * a - f * b for a, b in zip(rows[i], prow)]
                g = 0
                for a in new:
                    g = gcd(g, a)
                if g > 1:
                    new = [a // g for a in new]
                rows[i] = new
    for i in range(k, c):
        if rows[i][k] != 0:
            return False
    return all(rows[j][k] != 0 and (rows[j][k] > 0) == (rows[j][j] > 0) for j in range(k))


def _brute_systems(c):
    full = (1 << c) - 1
    found = []
    for size in range(2, c + 1):
        for combo in combinations(range(1, full), size):
            union = 0
            for s in combo:
                union |= s
            if union == full and _int_balanced(combo, c):
                found.append(combo)
    return found


@pytest.mark.parametrize("n", [2, 3, 4])
def test_enumeration_matches_subset_oracle(n):
    p = letters(n)
    enumerated = {m.system.members for m in enumerate_min_balanced(p, p.full_mask)}
    brute = set(_brute_systems(n))
    assert enumerated == brute
    # at this scale, double-check the oracle itself against solve_unique
    ones = (1,) * n
    for combo in brute:
        cols = [tuple(s >> i & 1 for i in range(n)) for s in combo]
        sol = solve_unique(cols, ones)
        assert sol is not None and all(w > 0 for w in sol)


def test_five_player_count_matches_subset_oracle(p5):
    # the count on five players is not published; the subset-enumeration
    # oracle is the only cross-check
    enumerated = enumerate_min_balanced(p5, p5.full_mask)
    assert len(enumerated) == len(_brute_systems(5)) == 1291
