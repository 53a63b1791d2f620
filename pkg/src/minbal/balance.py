"""Min-balanced coalition systems.

A set system is balanced on its carrier when strictly positive weights on
the members make the incidence vectors sum to the carrier's incidence
vector; it is min-balanced when no proper subsystem does the same, which
happens exactly when the incidence vectors are linearly independent and
the unique weight vector is strictly positive.

This module detects min-balancedness, normalizes the weights into the
integer coefficient vector of the induced facet inequality, complements
systems, enumerates all min-balanced systems on a carrier, and classifies
systems into permutational types.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import gcd, lcm
from typing import Iterator, Mapping, Optional

from .games import Players, SetFunction
from .linalg import solve_unique

#: Enumeration and catalogue generation search all subsets of the carrier,
#: so they are capped harder than the membership oracles.
ENUM_PLAYER_CAP = 6


@dataclass(frozen=True)
class SetSystem:
    """A strictly increasing list of distinct nonempty coalitions."""

    members: tuple[int, ...]

    def __post_init__(self) -> None:
        members = tuple(self.members)
        object.__setattr__(self, "members", members)
        if any(m <= 0 for m in members):
            raise ValueError("members must be nonempty coalitions")
        if any(a >= b for a, b in zip(members, members[1:])):
            raise ValueError("members must be strictly increasing bitmasks")

    @property
    def carrier(self) -> int:
        bits = 0
        for m in self.members:
            bits |= m
        return bits

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, coalition: int) -> bool:
        return coalition in self.members


def system_of(players: Players, *keys: str) -> SetSystem:
    """Build a set system from coalition key strings, e.g. ("ab", "ac")."""
    return SetSystem(tuple(sorted(players.coalition_of(k) for k in keys)))


@dataclass(frozen=True)
class InequalityVector:
    """A sparse integer coefficient vector over coalitions.

    Represents the inequality  sum over S of coeff(S) * m(S) >= 0.
    Unlisted coalitions have coefficient zero; zero entries are never
    stored, so equality of vectors is equality of ``items``.
    """

    items: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        items = tuple((int(s), int(c)) for s, c in self.items)
        object.__setattr__(self, "items", items)
        if any(c == 0 for _, c in items):
            raise ValueError("zero coefficients must be omitted")
        if any(a[0] >= b[0] for a, b in zip(items, items[1:])):
            raise ValueError("items must be sorted by coalition bitmask")

    def coefficient(self, coalition: int) -> int:
        for s, c in self.items:
            if s == coalition:
                return c
        return 0

    def as_dict(self) -> dict[int, int]:
        return dict(self.items)

    @property
    def negative_support(self) -> tuple[int, ...]:
        return tuple(s for s, c in self.items if c < 0)

    def evaluate(self, f: SetFunction) -> Fraction:
        """The pairing sum over S of coeff(S) * f(S)."""
        full = f.players.full_mask
        total = Fraction(0)
        for s, c in self.items:
            if s > full:
                raise ValueError("coefficient vector does not fit the player set")
            total += c * f.values[s]
        return total

    def is_o_standardized(self) -> bool:
        """Zero total sum and zero sum over the coalitions at each player."""
        if sum(c for _, c in self.items) != 0:
            return False
        support = 0
        for s, _ in self.items:
            support |= s
        i = 0
        while support >> i:
            bit = 1 << i
            if support & bit and sum(c for s, c in self.items if s & bit) != 0:
                return False
            i += 1
        return True



@dataclass(frozen=True)
class MinBalancedSystem:
    """A min-balanced system with its unique weights and, when
    non-trivial, the normalization constant and induced inequality."""

    system: SetSystem
    weights: tuple[Fraction, ...]
    k: Optional[int]
    alpha: Optional[InequalityVector]

    @property
    def carrier(self) -> int:
        return self.system.carrier

    @property
    def trivial(self) -> bool:
        return len(self.system) == 1

    def weight_map(self) -> dict[int, Fraction]:
        """Weights keyed by member coalition."""
        return dict(zip(self.system.members, self.weights))


def _bit_positions(mask: int) -> list[int]:
    return [i for i in range(mask.bit_length()) if mask >> i & 1]


def _incidence(coalition: int, positions: list[int]) -> tuple[int, ...]:
    return tuple(1 if coalition >> p & 1 else 0 for p in positions)


def is_min_balanced(system: SetSystem) -> Optional[MinBalancedSystem]:
    """Detect min-balancedness, returning weights and normalization.

    Present iff the members' incidence vectors are linearly independent
    and the unique solution of  sum of lam_S * chi_S = chi_carrier  is
    strictly positive.
    """
    if len(system) == 0:
        raise ValueError("the empty system is not a set system")
    positions = _bit_positions(system.carrier)
    columns = [_incidence(m, positions) for m in system.members]
    ones = (1,) * len(positions)
    try:
        weights = solve_unique(columns, ones)
    except ValueError:
        return None  # dependent incidence vectors
    if weights is None or any(w <= 0 for w in weights):
        return None
    if len(system) == 1:
        return MinBalancedSystem(system, weights, None, None)
    k, alpha = normalize(dict(zip(system.members, weights)))
    return MinBalancedSystem(system, weights, k, alpha)


def normalize(weights: Mapping[int, Fraction]) -> tuple[int, InequalityVector]:
    """Integer normalization of balanced weights into a facet inequality.

    ``k`` is the minimal positive scaling making every ``k * lam_S`` an
    integer with overall gcd 1.  That this scaling is itself an integer
    is asserted at runtime rather than assumed.  The returned vector has
    coefficient ``k`` on the carrier, ``-k * lam_S`` on the members, the
    o-standardizing remainder on the empty coalition and zero elsewhere.
    """
    members = sorted(weights)
    if len(members) < 2:
        raise ValueError("normalization is defined for non-trivial systems only")
    carrier = 0
    for m in members:
        carrier |= m
    if 0 in weights or carrier in weights:
        raise ValueError("weights must be indexed by proper nonempty members")
    lams = [Fraction(weights[m]) for m in members]
    if any(l <= 0 for l in lams):
        raise ValueError("balanced weights must be strictly positive")
    for p in _bit_positions(carrier):
        if sum(l for m, l in zip(members, lams) if m >> p & 1) != 1:
            raise ValueError("weights are not balanced on the carrier")
    scale = lcm(*(l.denominator for l in lams))
    ints = [int(l * scale) for l in lams]
    g = gcd(*ints)
    if scale % g != 0:
        raise ArithmeticError(
            "minimal normalization constant is not an integer; "
            f"weights {dict(zip(members, lams))} scale to k = {scale}/{g}"
        )
    k = scale // g
    coeffs = {carrier: k}
    for m, i in zip(members, ints):
        coeffs[m] = -(i // g)
    coeffs[0] = -sum(coeffs.values())
    if coeffs[0] == 0:
        del coeffs[0]
    alpha = InequalityVector(tuple(sorted(coeffs.items())))
    if not alpha.is_o_standardized():
        raise ArithmeticError("normalized coefficient vector is not o-standardized")
    if alpha.coefficient(0) < 1:
        raise ArithmeticError("normalized coefficient vector has |empty| coefficient < 1")
    return k, alpha


def complement_system(system: SetSystem, players: Players) -> SetSystem:
    """The member-wise complement {N minus S} of a set system."""
    full = players.full_mask
    if full in system:
        raise ValueError("complement of a system containing the full player set has an empty member")
    if any(m > full for m in system.members):
        raise ValueError("system does not fit the player set")
    return SetSystem(tuple(sorted(full ^ m for m in system.members)))


# -- enumeration -------------------------------------------------------

def _reduce_mod_rows(rows: list[tuple[list[int], int]], vec: list[int]):
    """Reduce an integer vector against echelon rows; None when it vanishes.

    Fraction-free: each elimination step cross-multiplies and the result
    is divided by its gcd, so entries stay small.
    """
    v = vec
    for row, piv in rows:
        c = v[piv]
        if c:
            lead = row[piv]
            v = [lead * a - c * b for a, b in zip(v, row)]
    g = 0
    piv = -1
    for i, a in enumerate(v):
        if a:
            g = gcd(g, a)
            if piv < 0:
                piv = i
    if piv < 0:
        return None
    if v[piv] < 0:
        g = -g
    return [a // g for a in v], piv


def _positive_weights(chosen: list[int], c: int) -> Optional[tuple[Fraction, ...]]:
    """Unique strictly positive weights with sum of chi_S = all-ones.

    ``chosen`` holds independent member bitmasks over ``c`` coordinates.
    Fraction-free integer Gauss-Jordan; ``None`` when the all-ones vector
    is outside the span or some weight is not strictly positive.
    """
    k = len(chosen)
    rows = [[(s >> i) & 1 for s in chosen] + [1] for i in range(c)]
    for col in range(k):
        pr = next((i for i in range(col, c) if rows[i][col]), None)
        if pr is None:
            raise RuntimeError("dependent members reached the weight solve")
        rows[col], rows[pr] = rows[pr], rows[col]
        prow = rows[col]
        lead = prow[col]
        for i in range(c):
            row = rows[i]
            if i != col and row[col]:
                f = row[col]
                new = [lead * a - f * b for a, b in zip(row, prow)]
                g = 0
                for a in new:
                    g = gcd(g, a)
                if g > 1:
                    new = [a // g for a in new]
                rows[i] = new
    for i in range(k, c):
        if rows[i][k] != 0:
            return None
    out = []
    for j in range(k):
        lead, rhs = rows[j][j], rows[j][k]
        if (rhs > 0) != (lead > 0) or rhs == 0:
            return None
        out.append(Fraction(rhs, lead))
    return tuple(out)


def _enumerate_carrier(carrier: int, first_index: Optional[int] = None) -> list[MinBalancedSystem]:
    """DFS over candidate members in increasing bitmask order.

    Candidates are the nonempty proper subsets of the carrier.  A branch
    dies when a candidate is linearly dependent on the chosen members,
    when the remaining candidates cannot cover the carrier, or when the
    carrier's incidence vector already lies in the chosen span (then no
    proper superset can be min-balanced either, so the node is a leaf:
    the unique weights are tested for strict positivity and the system is
    recorded on success).
    """
    positions = _bit_positions(carrier)
    c = len(positions)
    full = (1 << c) - 1
    candidates = list(range(1, full))
    ncand = len(candidates)
    suffix_cover = [0] * (ncand + 1)
    for i in range(ncand - 1, -1, -1):
        suffix_cover[i] = suffix_cover[i + 1] | candidates[i]
    ones = [1] * c
    embed = {s: sum(1 << positions[j] for j in range(c) if s >> j & 1) for s in range(full + 1)}
    found: list[MinBalancedSystem] = []

    def record(chosen: list[int], weights: tuple[Fraction, ...]) -> None:
        members = tuple(embed[s] for s in chosen)
        k, alpha = normalize(dict(zip(members, weights)))
        found.append(MinBalancedSystem(SetSystem(members), weights, k, alpha))

    def visit(start: int, chosen: list[int], union: int, rows: list) -> None:
        if union == full:
            if _reduce_mod_rows(rows, list(ones)) is None:
                weights = _positive_weights(chosen, c)
                if weights is not None:
                    record(chosen, weights)
                return
        if len(chosen) == c:
            return
        for i in range(start, ncand):
            if union | suffix_cover[i] != full:
                break
            s = candidates[i]
            reduced = _reduce_mod_rows(rows, [s >> j & 1 for j in range(c)])
            if reduced is None:
                continue
            chosen.append(s)
            rows.append(reduced)
            visit(i + 1, chosen, union | s, rows)
            chosen.pop()
            rows.pop()

    if first_index is None:
        visit(0, [], 0, [])
    else:
        s = candidates[first_index]
        reduced = _reduce_mod_rows([], [s >> j & 1 for j in range(c)])
        visit(first_index + 1, [s], s, [reduced])
    return found


_enum_cache: dict[tuple[int, bool], tuple[MinBalancedSystem, ...]] = {}


def enumerate_min_balanced(
    players: Players,
    carrier: int,
    non_trivial_only: bool = True,
    jobs: int = 1,
) -> tuple[MinBalancedSystem, ...]:
    """All min-balanced systems with exactly the given carrier.

    Output is in canonical order (lexicographic by member bitmask list)
    and is deterministic for every job count; with ``jobs > 1`` the
    search is split across first-member choices and merged canonically.
    """
    players._check(carrier)
    if carrier == 0:
        raise ValueError("the carrier must be nonempty")
    if players.n > ENUM_PLAYER_CAP:
        raise ValueError(f"enumeration is capped at {ENUM_PLAYER_CAP} players")
    key = (carrier, non_trivial_only)
    if jobs <= 1 and key in _enum_cache:
        return _enum_cache[key]

    if carrier.bit_count() == 1:
        systems: list[MinBalancedSystem] = []
    elif jobs <= 1:
        systems = _enumerate_carrier(carrier)
    else:
        ncand = (1 << carrier.bit_count()) - 2
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            parts = pool.map(lambda i: _enumerate_carrier(carrier, i), range(ncand))
            systems = [mbs for part in parts for mbs in part]
    if not non_trivial_only:
        trivial = MinBalancedSystem(SetSystem((carrier,)), (Fraction(1),), None, None)
        systems = systems + [trivial]
    result = tuple(sorted(systems, key=lambda m: m.system.members))
    if jobs <= 1:
        _enum_cache[key] = result
    return result


# -- permutational types -----------------------------------------------

@lru_cache(maxsize=None)
def _perm_tables(n: int) -> tuple[tuple[int, ...], ...]:
    """For each permutation of n players, the induced map on bitmasks."""
    tables = []
    for perm in permutations(range(n)):
        table = [0] * (1 << n)
        for s in range(1 << n):
            t = 0
            for i in range(n):
                if s >> i & 1:
                    t |= 1 << perm[i]
            table[s] = t
        tables.append(tuple(table))
    return tuple(tables)


def permute_coalition(coalition: int, perm: tuple[int, ...]) -> int:
    bits = 0
    for i in range(len(perm)):
        if coalition >> i & 1:
            bits |= 1 << perm[i]
    return bits


@lru_cache(maxsize=None)
def _canonical_cached(members: tuple[int, ...], n: int) -> tuple[tuple[int, ...], int]:
    images = {tuple(sorted(table[m] for m in members)) for table in _perm_tables(n)}
    return min(images), len(images)


def canonical_type(system: SetSystem, players: Players) -> tuple[SetSystem, int]:
    """Canonical representative and orbit size under player permutations.

    The canonical form is the lexicographically smallest sorted bitmask
    list among the images of the system under all n! permutations; the
    orbit size counts the distinct images.
    """
    if players.n > ENUM_PLAYER_CAP:
        raise ValueError(f"classification is capped at {ENUM_PLAYER_CAP} players")
    if system.carrier > players.full_mask:
        raise ValueError("system does not fit the player set")
    canonical, orbit = _canonical_cached(system.members, players.n)
    return SetSystem(canonical), orbit
