"""Reducibility of min-balanced systems.

A min-balanced system is reducible when some proper subset A of its
carrier and some member B inside A witness that the system's inequality
is a conic combination of inequalities on smaller carriers: the
incidence vector of A must lie in the conic hull of the members below A,
and the carrier's incidence vector in the conic hull of {A} plus the
remaining members with B removed.  Irreducible systems are exactly the
ones indexing facets of the totally balanced cone.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .balance import InequalityVector, MinBalancedSystem, SetSystem, _bit_positions, _incidence, is_min_balanced
from .linalg import conic_feasible


@dataclass(frozen=True)
class ReductionWitness:
    """Constructive evidence that a system is reducible.

    ``mu`` expresses chi_A over the members strictly inside A; ``beta``
    expresses the carrier's incidence vector over {A} and the members
    without ``pivot_member``.  Both are exact nonnegative combinations.
    """

    reduced_set: int                          # A
    pivot_member: int                         # B, a member strictly inside A
    mu: tuple[tuple[int, Fraction], ...]
    beta: tuple[tuple[int, Fraction], ...]

    def mu_map(self) -> dict[int, Fraction]:
        return dict(self.mu)

    def beta_map(self) -> dict[int, Fraction]:
        return dict(self.beta)


def _subsets_below(mbs: MinBalancedSystem, a: int) -> list[int]:
    return [s for s in mbs.system.members if s & a == s and s != a]


def _candidate_sets(mbs: MinBalancedSystem) -> list[int]:
    """Admissible reduced sets A, in increasing bitmask order.

    Without loss of generality A has at least two players, is not a
    member, is a proper subset of the carrier and equals the union of
    the members strictly inside it.
    """
    carrier = mbs.carrier
    out = []
    subs = []
    s = carrier
    while True:  # all proper submasks of the carrier
        s = (s - 1) & carrier
        subs.append(s)
        if s == 0:
            break
    for a in sorted(subs):
        if a.bit_count() < 2 or a in mbs.system:
            continue
        below = _subsets_below(mbs, a)
        union = 0
        for m in below:
            union |= m
        if union == a:
            out.append(a)
    return out


def is_reducible(mbs: MinBalancedSystem) -> ReductionWitness | None:
    """First reduction witness in lexicographic (A, pivot member) order.

    ``None`` means the system is irreducible: the exhaustive search over
    admissible pairs found no witness.
    """
    if mbs.trivial:
        raise ValueError("reducibility is defined for non-trivial systems")
    positions = _bit_positions(mbs.carrier)
    chi = {s: _incidence(s, positions) for s in mbs.system.members}
    chi_carrier = (1,) * len(positions)
    for a in _candidate_sets(mbs):
        below = _subsets_below(mbs, a)
        chi_a = _incidence(a, positions)
        mu = conic_feasible([chi[s] for s in below], chi_a)
        if mu is None:
            continue
        for pivot in below:
            others = [a] + [t for t in mbs.system.members if t != pivot]
            beta = conic_feasible([chi_a if t == a else chi[t] for t in others], chi_carrier)
            if beta is None:
                continue
            witness = ReductionWitness(
                reduced_set=a,
                pivot_member=pivot,
                mu=tuple(zip(below, mu)),
                beta=tuple(zip(others, beta)),
            )
            # Unique-weight bookkeeping (lambda_B = beta_A * mu_B) forces
            # both of these to be strictly positive; a failure here would
            # mean the solver returned an invalid combination.
            if witness.mu_map()[pivot] <= 0 or witness.beta_map()[a] <= 0:
                raise RuntimeError("reduction witness violates the positivity bookkeeping")
            return witness
    return None


@dataclass(frozen=True)
class Decomposition:
    """A reducible system's inequality as a conic combination of two."""

    inner: MinBalancedSystem          # min-balanced on the reduced set A
    outer: MinBalancedSystem          # min-balanced on the carrier, with A a member
    combination: tuple[Fraction, Fraction]


def decompose(mbs: MinBalancedSystem, witness: ReductionWitness) -> Decomposition:
    """Split a reducible system along a witness and verify the identity.

    The inner system collects the positive-weight members below A, the
    outer one the positive-weight sets among {A} and the members without
    the pivot; the original inequality equals the returned positive
    combination of the two induced inequalities, checked exactly on
    every coalition.
    """
    if mbs.trivial:
        raise ValueError("only non-trivial systems decompose")
    _validate_witness(mbs, witness)
    mu, beta = witness.mu_map(), witness.beta_map()
    inner_sys = SetSystem(tuple(sorted(s for s, w in mu.items() if w > 0)))
    outer_sys = SetSystem(tuple(sorted(t for t, w in beta.items() if w > 0)))
    inner = is_min_balanced(inner_sys)
    outer = is_min_balanced(outer_sys)
    if inner is None or inner.carrier != witness.reduced_set:
        raise RuntimeError("inner part of the decomposition is not min-balanced on A")
    if outer is None or outer.carrier != mbs.carrier:
        raise RuntimeError("outer part of the decomposition is not min-balanced on the carrier")
    if inner.weights != tuple(mu[s] for s in inner_sys.members):
        raise RuntimeError("inner weights disagree with the witness combination")
    if outer.weights != tuple(beta[t] for t in outer_sys.members):
        raise RuntimeError("outer weights disagree with the witness combination")
    combo = (
        Fraction(mbs.k) * beta[witness.reduced_set] / inner.k,
        Fraction(mbs.k, outer.k),
    )
    if combo[0] <= 0 or combo[1] <= 0:
        raise RuntimeError("combination coefficients must be positive")
    _verify_combination(mbs.alpha, inner.alpha, outer.alpha, combo)
    return Decomposition(inner, outer, combo)


def _validate_witness(mbs: MinBalancedSystem, witness: ReductionWitness) -> None:
    a = witness.reduced_set
    carrier = mbs.carrier
    below = _subsets_below(mbs, a)
    if not (a & carrier == a and a != carrier and a.bit_count() >= 2 and a not in mbs.system):
        raise ValueError("witness reduced set is not admissible")
    if witness.pivot_member not in below:
        raise ValueError("witness pivot is not a member strictly inside the reduced set")
    mu, beta = witness.mu_map(), witness.beta_map()
    if set(mu) != set(below) or any(w < 0 for w in mu.values()):
        raise ValueError("witness mu is not a combination over the members below A")
    expected = set(mbs.system.members) - {witness.pivot_member} | {a}
    if set(beta) != expected or any(w < 0 for w in beta.values()):
        raise ValueError("witness beta is not a combination over {A} and the remaining members")
    for target, combo in ((a, mu), (carrier, beta)):
        sums = [Fraction(0)] * carrier.bit_length()
        for s, w in combo.items():
            for i in range(carrier.bit_length()):
                if s >> i & 1:
                    sums[i] += w
        for i in range(carrier.bit_length()):
            if sums[i] != (1 if target >> i & 1 else 0):
                raise ValueError("witness combination does not re-substitute exactly")


def _verify_combination(
    alpha: InequalityVector,
    inner_alpha: InequalityVector,
    outer_alpha: InequalityVector,
    combo: tuple[Fraction, Fraction],
) -> None:
    total: dict[int, Fraction] = {}
    for vec, c in ((inner_alpha, combo[0]), (outer_alpha, combo[1])):
        for s, coeff in vec.items:
            total[s] = total.get(s, Fraction(0)) + c * coeff
    expected = {s: Fraction(c) for s, c in alpha.items}
    total = {s: v for s, v in total.items() if v != 0}
    if total != expected:
        raise RuntimeError("decomposition does not recombine into the original inequality")
