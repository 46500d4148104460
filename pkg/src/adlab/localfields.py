"""Completions of abelian fields and local realizability of p-groups.

Verdicts are tri-state: the decided cases are the free pro-p bound (no
p-power roots of unity), abelian quotients of the local unit structure,
the Demushkin generator bound, and the tame metacyclic obstruction.
Everything else is reported Unknown rather than guessed.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from sympy import isprime

from . import groups as G_
from .errors import BadParametersError, NotPGroupError, NotPrimeError
from .numberfields import AbelianNumberField, parse_field, relative_splitting, splitting


@dataclass(frozen=True)
class LocalFieldDatum:
    """(residue prime, absolute degree, ramification, residue degree,
    p-power roots of unity exponent)."""
    residue_prime: int
    degree: int
    e: int
    f: int
    s: int

    def __post_init__(self):
        if not isprime(self.residue_prime):
            raise NotPrimeError(f"{self.residue_prime} is not prime")
        if self.e * self.f != self.degree:
            raise BadParametersError(
                f"e*f = {self.e * self.f} must equal the degree {self.degree}")
        if self.s < 0:
            raise BadParametersError("s must be nonnegative")
        p = self.residue_prime
        if p > 2 and self.s > 0 and self.degree < p - 1:
            raise BadParametersError(
                f"mu_{p} needs degree at least {p - 1} over Q_{p}, got {self.degree}")

    def to_json(self) -> dict:
        return {"residue_prime": self.residue_prime, "degree": self.degree,
                "e": self.e, "f": self.f, "s": self.s}

    @staticmethod
    def from_json(doc: dict) -> "LocalFieldDatum":
        return LocalFieldDatum(int(doc["residue_prime"]), int(doc["degree"]),
                               int(doc["e"]), int(doc["f"]), int(doc["s"]))


def completion(K: AbelianNumberField, q: int) -> LocalFieldDatum:
    """Local datum of K at (any) prime above q.

    s is found by testing for k = 1, 2, ... whether q splits completely in
    the compositum with the q^k-th cyclotomic field; k is capped by the
    ramification bound log_q(conductor) + 2.
    """
    datum = splitting(K, q)
    d = datum.e * datum.f
    cap = 2
    n = K.conductor
    while n % q == 0:
        cap += 1
        n //= q
    s = 0
    for k in range(1, cap + 1):
        level = q**k
        M = K.compose(parse_field(f"Q(zeta:{level})"))
        if M == K:
            s = k
            continue
        rel = relative_splitting(K, M, [q])
        if rel.records[0].local_degree == 1:
            s = k
        else:
            break
    return LocalFieldDatum(q, d, datum.e, datum.f, s)


def max_abelian_p_rank(datum: LocalFieldDatum) -> int:
    """Rank of the maximal abelian pro-p quotient of the absolute Galois
    group: degree + 1, plus one more when p-power roots of unity are
    present."""
    return datum.degree + 1 + (1 if datum.s >= 1 else 0)


@dataclass(frozen=True)
class RealizabilityVerdict:
    verdict: str  # "yes" | "no" | "unknown"
    criterion: str
    detail: str

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "criterion": self.criterion, "detail": self.detail}


def realizable(G: G_.FiniteGroup, datum: LocalFieldDatum) -> RealizabilityVerdict:
    """Whether G occurs as a local Galois group over the field described by
    the datum, in the cases the criteria decide.

    q = p, s = 0: the maximal pro-p quotient is free of rank degree+1, so
    the answer is the generator-count comparison.  q = p, s >= 1: decided
    for abelian G against Z_p^(degree+1) x Z/p^s, and refuted for any G
    needing more than degree+2 generators; otherwise unknown (Demushkin
    sufficiency is not implemented).  q != p: every G-extension is tame,
    hence metacyclic or nothing; non-metacyclic G is refuted, the rest is
    unknown.
    """
    if G.order == 1:
        return RealizabilityVerdict("yes", "trivial", "the trivial group is always realizable")
    q = G.prime()
    if q is None:
        raise NotPGroupError(f"{G.spec}: not a prime-power group")
    p = datum.residue_prime
    if q != p:
        if not G_.metacyclic_presentations(G):
            return RealizabilityVerdict(
                "no", "tame-metacyclic",
                f"residue prime {p} != {q}: only metacyclic {q}-groups occur tamely")
        return RealizabilityVerdict(
            "unknown", "tame-sufficiency",
            "metacyclic tame groups need the cyclotomic fixing condition; not decided here")
    rank = G_.frattini_quotient_rank(G)
    if datum.s == 0:
        free_rank = datum.degree + 1
        if rank <= free_rank:
            return RealizabilityVerdict(
                "yes", "free-pro-p",
                f"minimal generators {rank} <= {free_rank} = free pro-p rank")
        return RealizabilityVerdict(
            "no", "free-pro-p",
            f"minimal generators {rank} > {free_rank} = free pro-p rank")
    if G.is_abelian():
        invariants = G_.abelian_invariants(G)
        bound = datum.degree + 2
        if len(invariants) > bound:
            return RealizabilityVerdict(
                "no", "abelian-local-units",
                f"rank {len(invariants)} exceeds {bound} = local unit rank")
        if len(invariants) == bound and invariants[-1] > p**datum.s:
            return RealizabilityVerdict(
                "no", "abelian-local-units",
                f"smallest invariant {invariants[-1]} exceeds the torsion bound p^{datum.s}")
        return RealizabilityVerdict(
            "yes", "abelian-local-units",
            f"quotient of Z_p^{datum.degree + 1} x Z/p^{datum.s}")
    if rank > datum.degree + 2:
        return RealizabilityVerdict(
            "no", "demushkin-rank",
            f"minimal generators {rank} exceed {datum.degree + 2} = Demushkin rank")
    return RealizabilityVerdict(
        "unknown", "demushkin-sufficiency",
        "nonabelian with p-power roots of unity present; sufficiency not implemented")
