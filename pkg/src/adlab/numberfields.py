"""Abelian number fields as subfields of cyclotomic fields.

A field is stored as a minimal conductor n together with the subgroup of
(Z/n)^* acting trivially on it (the fixing subgroup).  All splitting
statistics come from subgroup arithmetic in (Z/n)^*; no ideal arithmetic
is performed.  Residues are taken in range(n), so the unit group of the
trivial modulus n = 1 is {0}.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from math import gcd, lcm
from typing import Optional, Sequence

from sympy import divisors, factorint, isprime, kronecker_symbol, totient

from .errors import BadResidueError, FieldParseError, NotPrimeError, NotSubfieldError


@lru_cache(maxsize=512)
def unit_residues(n: int) -> tuple[int, ...]:
    return tuple(a for a in range(n) if gcd(a, n) == 1)


def _canonicalize(n: int, fixing: frozenset[int]) -> tuple[int, frozenset[int]]:
    """Minimal-conductor form: the smallest m | n with the restriction
    kernel inside the fixing subgroup, with the subgroup pushed down."""
    units = unit_residues(n)
    for m in sorted(divisors(n)):
        kernel_ok = all(a in fixing for a in units if a % m == 1 % m)
        if kernel_ok:
            image = frozenset(a % m for a in fixing)
            return m, image
    raise AssertionError("unreachable: m = n always works")


@dataclass(frozen=True)
class AbelianNumberField:
    """Subfield of Q(mu_n) cut out by a fixing subgroup of (Z/n)^*."""

    conductor: int
    fixing: frozenset[int]

    def __post_init__(self):
        n = self.conductor
        units = set(unit_residues(n))
        if not self.fixing <= units:
            raise FieldParseError(f"fixing subgroup has non-units mod {n}")
        if (1 % n) not in self.fixing:
            raise FieldParseError("fixing subgroup misses the identity residue")
        for a in self.fixing:
            for b in self.fixing:
                if (a * b) % n not in self.fixing:
                    raise FieldParseError("fixing set is not closed under multiplication")

    @staticmethod
    def make(n: int, fixing) -> "AbelianNumberField":
        m, image = _canonicalize(n, frozenset(fixing))
        return AbelianNumberField(m, image)

    @property
    def degree(self) -> int:
        return int(totient(self.conductor)) // len(self.fixing)

    def contains(self, other: "AbelianNumberField") -> bool:
        """Whether `other` is a subfield of this field."""
        n = lcm(self.conductor, other.conductor)
        for a in unit_residues(n):
            if a % self.conductor in self.fixing and a % other.conductor not in other.fixing:
                return False
        return True

    def compose(self, other: "AbelianNumberField") -> "AbelianNumberField":
        n = lcm(self.conductor, other.conductor)
        fixing = frozenset(a for a in unit_residues(n)
                           if a % self.conductor in self.fixing
                           and a % other.conductor in other.fixing)
        return AbelianNumberField.make(n, fixing)

    def intersect_cyclotomic(self, m: int) -> "AbelianNumberField":
        """The subfield cut out inside Q(mu_m): fixing subgroup generated by
        this field's subgroup together with the kernel of restriction to m."""
        if m < 1:
            raise FieldParseError(f"cyclotomic level must be positive, got {m}")
        n = lcm(self.conductor, m)
        seeds = {a for a in unit_residues(n) if a % self.conductor in self.fixing}
        seeds |= {a for a in unit_residues(n) if a % m == 1 % m}
        subgroup = set(seeds)
        frontier = list(seeds)
        while frontier:
            x = frontier.pop()
            for y in seeds:
                z = x * y % n
                if z not in subgroup:
                    subgroup.add(z)
                    frontier.append(z)
        return AbelianNumberField.make(n, frozenset(subgroup))

    def to_json(self) -> dict:
        return {"conductor": self.conductor,
                "fixing_subgroup": sorted(self.fixing),
                "degree": self.degree}

    def __str__(self) -> str:
        return f"NF(cond={self.conductor}, |H|={len(self.fixing)}, deg={self.degree})"


RATIONALS = AbelianNumberField(1, frozenset({0}))


# parsing -------------------------------------------------------------------

_ZETA_RE = re.compile(r"^Q\(\s*zeta\s*:\s*(\d+)\s*\)$")
_SQRT_RE = re.compile(r"^Q\(\s*sqrt\s*:\s*(-?\d+)\s*\)$")


def _quadratic_field(d: int) -> AbelianNumberField:
    if d == 0:
        raise FieldParseError("sqrt argument must be nonzero")
    if any(e > 1 for e in factorint(abs(d)).values()):
        raise FieldParseError(f"sqrt argument {d} is not squarefree")
    if d == 1:
        return RATIONALS
    disc = d if d % 4 == 1 else 4 * d
    n = abs(disc)
    fixing = frozenset(a for a in unit_residues(n) if kronecker_symbol(disc, a) == 1)
    if 2 * len(fixing) != len(unit_residues(n)):
        raise AssertionError(f"quadratic character mod {disc} did not split the units in half")
    return AbelianNumberField.make(n, fixing)


def _parse_atom(text: str) -> AbelianNumberField:
    text = text.strip()
    if text == "Q":
        return RATIONALS
    if text == "Q(i)":
        return AbelianNumberField.make(4, frozenset({1}))
    m = _ZETA_RE.match(text)
    if m:
        n = int(m.group(1))
        if n < 1:
            raise FieldParseError(f"zeta level must be positive in {text!r}")
        return AbelianNumberField.make(n, frozenset({1 % n}))
    m = _SQRT_RE.match(text)
    if m:
        return _quadratic_field(int(m.group(1)))
    raise FieldParseError(f"cannot parse field atom {text!r}")


def parse_field(expr: str) -> AbelianNumberField:
    """Parse `Q | Q(i) | Q(zeta:n) | Q(sqrt:d)` and `*`-composita thereof."""
    parts = expr.split("*")
    if not parts or not expr.strip():
        raise FieldParseError("empty field expression")
    field = _parse_atom(parts[0])
    for part in parts[1:]:
        field = field.compose(_parse_atom(part))
    return field


# splitting -----------------------------------------------------------------


@dataclass(frozen=True)
class SplittingDatum:
    """Ramification index, residue degree and number of primes above a
    rational prime; e*f*g equals the field degree."""
    e: int
    f: int
    g: int

    def to_json(self) -> dict:
        return {"e": self.e, "f": self.f, "g": self.g}


def _crt_pair(r1: int, m1: int, r2: int, m2: int) -> int:
    """x with x = r1 mod m1 and x = r2 mod m2 for coprime moduli."""
    if m1 == 1:
        return r2 % m2 if m2 > 1 else 0
    if m2 == 1:
        return r1 % m1
    inv1 = pow(m1, -1, m2)
    inv2 = pow(m2, -1, m1)
    return (r1 * m2 * inv2 + r2 * m1 * inv1) % (m1 * m2)


def splitting(K: AbelianNumberField, q: int) -> SplittingDatum:
    """Decomposition of the rational prime q in K.

    Inside (Z/n)^* the inertia at q is the factor of residues congruent to
    1 away from q; the decomposition group adds the Frobenius class (the
    lift of q along the prime-to-q part).  e and f are the sizes of their
    images modulo the fixing subgroup.
    """
    if not isprime(q):
        raise NotPrimeError(f"{q} is not prime")
    n = K.conductor
    qa = 1
    m = n
    while m % q == 0:
        qa *= q
        m //= q
    units = unit_residues(n)
    H = K.fixing
    inertia = [a for a in units if a % m == 1 % m]
    frob = _crt_pair(1, qa, q % m if m > 1 else 0, m)
    HI = set()
    for a in inertia:
        for h in H:
            HI.add(a * h % n)
    e = len(HI) // len(H)
    HD = set(HI)
    frontier = [frob % n if n > 1 else 0]
    while frontier:
        x = frontier.pop()
        fresh = {x * y % n for y in HD} | {x}
        new = fresh - HD
        if new:
            HD |= new
            frontier.extend(new)
    f = len(HD) // len(HI)
    degree = K.degree
    if degree % (e * f):
        raise AssertionError(f"e*f = {e * f} does not divide the degree {degree}")
    return SplittingDatum(e, f, degree // (e * f))


def sigma_fixes(t: int, n: int, K: AbelianNumberField) -> bool:
    """Whether the cyclotomic automorphism zeta -> zeta^t at level n acts
    trivially on the intersection of K with Q(mu_n)."""
    if n < 1:
        raise BadResidueError(f"level must be positive, got {n}")
    if gcd(t, n) != 1:
        raise BadResidueError(f"gcd({t}, {n}) != 1: not an automorphism")
    F = K.intersect_cyclotomic(n)
    c = F.conductor
    return (t % c) in F.fixing


# relative splitting ---------------------------------------------------------


@dataclass(frozen=True)
class RelativeRecord:
    """Fiber data over one prime slot of the base field."""
    slot: str
    prime: Optional[int]
    fiber_count: int
    local_degree: int
    e: Optional[int] = None
    f: Optional[int] = None

    def to_json(self) -> dict:
        out = {"slot": self.slot, "fiber_count": self.fiber_count,
               "local_degree": self.local_degree}
        if self.prime is not None:
            out["prime"] = self.prime
        if self.e is not None:
            out["e"] = self.e
        if self.f is not None:
            out["f"] = self.f
        return out


@dataclass(frozen=True)
class RelativeExtensionData:
    """Per-slot splitting of an extension M/K, model-backed or asserted."""
    galois: bool
    records: tuple[RelativeRecord, ...]

    def __post_init__(self):
        if self.galois and self.records:
            products = {r.fiber_count * r.local_degree for r in self.records}
            if len(products) != 1:
                raise NotSubfieldError(
                    "Galois relative data must have constant fiber_count*local_degree, "
                    f"got {sorted(products)}")

    def record_for(self, slot: str) -> Optional[RelativeRecord]:
        for r in self.records:
            if r.slot == slot:
                return r
        return None

    def to_json(self) -> dict:
        return {"galois": self.galois, "records": [r.to_json() for r in self.records]}

    @staticmethod
    def from_json(doc: dict) -> "RelativeExtensionData":
        records = tuple(
            RelativeRecord(slot=str(r["slot"]), prime=r.get("prime"),
                           fiber_count=int(r["fiber_count"]),
                           local_degree=int(r["local_degree"]),
                           e=r.get("e"), f=r.get("f"))
            for r in doc.get("records", []))
        return RelativeExtensionData(galois=bool(doc.get("galois", True)), records=records)


def relative_splitting(K: AbelianNumberField, M: AbelianNumberField,
                       primes: Sequence[int]) -> RelativeExtensionData:
    """Fiberwise splitting data of M/K at the listed rational primes."""
    if not M.contains(K):
        raise NotSubfieldError("first field is not contained in the second")
    records = []
    for q in primes:
        sK = splitting(K, q)
        sM = splitting(M, q)
        if sM.g % sK.g or (sM.e * sM.f) % (sK.e * sK.f):
            raise AssertionError(f"tower multiplicativity failed at {q}")
        g_rel = sM.g // sK.g
        n_rel = (sM.e * sM.f) // (sK.e * sK.f)
        for j in range(sK.g):
            records.append(RelativeRecord(
                slot=f"{q}#{j}", prime=q, fiber_count=g_rel, local_degree=n_rel,
                e=sM.e // sK.e, f=sM.f // sK.f))
    return RelativeExtensionData(galois=True, records=tuple(records))
