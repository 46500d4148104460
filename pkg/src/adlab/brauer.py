"""Hasse-invariant calculus over number fields.

A Brauer class is a finite map from prime slots to Q/Z summing to zero.
Slots are either model-backed (rational prime q plus a fiber index j,
written "q#j") or symbolic labels for primes of fields that are not
modeled; local behavior at symbolic slots comes from user-supplied
relative data.  All arithmetic is exact (`fractions.Fraction`).
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Optional, Sequence

from sympy import isprime

from . import groups as G_
from .errors import (BadParametersError, BadSlotError, MissingRelativeDataError,
                     NonZeroSumError, NotPrimeError)
from .numberfields import RelativeExtensionData

_SLOT_RE = re.compile(r"^(\d+)#(\d+)$")


@dataclass(frozen=True, order=True)
class PrimeSlot:
    """One prime of the base field: "q#j" when model-backed (j indexes the
    fibers above q), any other label when symbolic."""
    sort_key: tuple = field(init=False, repr=False)
    label: str

    def __post_init__(self):
        if not self.label or "#" in self.label and not _SLOT_RE.match(self.label):
            raise BadSlotError(f"bad slot label {self.label!r}")
        m = _SLOT_RE.match(self.label)
        key = (0, int(m.group(1)), int(m.group(2)), "") if m else (1, 0, 0, self.label)
        object.__setattr__(self, "sort_key", key)

    @property
    def prime(self) -> Optional[int]:
        m = _SLOT_RE.match(self.label)
        return int(m.group(1)) if m else None

    def __str__(self) -> str:
        return self.label


def slot(label: str) -> PrimeSlot:
    return PrimeSlot(label=str(label))


def _reduce_mod_1(x: Fraction) -> Fraction:
    return x - (x.numerator // x.denominator)


def invariant_order(x: Fraction) -> int:
    return x.denominator


@dataclass(frozen=True)
class BrauerClass:
    """Finite sum-zero invariant vector over a named base field."""
    base_field: str
    invariants: tuple[tuple[PrimeSlot, Fraction], ...]

    def mapping(self) -> dict[PrimeSlot, Fraction]:
        return dict(self.invariants)

    @property
    def support(self) -> tuple[PrimeSlot, ...]:
        return tuple(s for s, _ in self.invariants)

    def to_json(self) -> dict:
        return {"base_field": self.base_field,
                "invariants": [{"slot": s.label, "num": v.numerator, "den": v.denominator}
                               for s, v in self.invariants]}


def make_class(assignments: Mapping[PrimeSlot, Fraction] | Iterable[tuple[PrimeSlot, Fraction]],
               base_field: str = "K") -> BrauerClass:
    """Build a class from slot -> Q/Z assignments; negatives are entered as
    complements mod 1 and zero entries are dropped.  A nonzero total is a
    vector that is not a global class and is rejected."""
    items = assignments.items() if isinstance(assignments, Mapping) else assignments
    reduced: dict[PrimeSlot, Fraction] = {}
    for s, v in items:
        if not isinstance(s, PrimeSlot):
            s = slot(s)
        v = _reduce_mod_1(Fraction(v))
        if v:
            if s in reduced:
                raise BadSlotError(f"slot {s} assigned twice")
            reduced[s] = v
    total = _reduce_mod_1(sum(reduced.values(), Fraction(0)))
    if total:
        raise NonZeroSumError(f"invariants sum to {total}, not 0, in Q/Z")
    ordered = tuple(sorted(reduced.items(), key=lambda kv: kv[0].sort_key))
    return BrauerClass(base_field=base_field, invariants=ordered)


def class_from_json(doc: dict) -> BrauerClass:
    return make_class(
        {slot(item["slot"]): Fraction(int(item["num"]), int(item["den"]))
         for item in doc.get("invariants", [])},
        base_field=str(doc.get("base_field", "K")))


def index(D: BrauerClass) -> int:
    """Index = exponent: lcm of the local invariant orders."""
    out = 1
    for _, v in D.invariants:
        out = lcm(out, invariant_order(v))
    return out


def _fiber_slots(base: PrimeSlot, g_rel: int) -> list[PrimeSlot]:
    if g_rel == 1:
        return [base]
    m = _SLOT_RE.match(base.label)
    if m:
        q, j = int(m.group(1)), int(m.group(2))
        return [slot(f"{q}#{j * g_rel + k}") for k in range(g_rel)]
    return [slot(f"{base.label}.{k}") for k in range(g_rel)]


def restrict(D: BrauerClass, rel: RelativeExtensionData,
             target_field: str = "M") -> BrauerClass:
    """Scalar extension along M/K: each base slot with fiber data
    (g_rel, n_rel) spreads into g_rel slots carrying n_rel times the
    invariant."""
    out: dict[PrimeSlot, Fraction] = {}
    for s, v in D.invariants:
        record = rel.record_for(s.label)
        if record is None:
            raise MissingRelativeDataError(f"no relative data for supported slot {s}")
        value = _reduce_mod_1(v * record.local_degree)
        for target in _fiber_slots(s, record.fiber_count):
            if value:
                out[target] = value
    return make_class(out, base_field=target_field)


def splits(D: BrauerClass, local_degrees: Mapping[str, int]) -> bool:
    """Whether a field with the given local degrees splits D: every local
    invariant order must divide the local degree."""
    for s, v in D.invariants:
        deg = local_degrees.get(s.label)
        if deg is None:
            raise MissingRelativeDataError(f"no local degree for supported slot {s}")
        if deg % invariant_order(v):
            return False
    return True


def tame_splits(D: BrauerClass, local_data: Mapping[str, tuple[int, int, int]]) -> bool:
    """Splitting by the maximal tame subextensions: the invariant order must
    divide f times the prime-to-p part of e at each slot, p the residue
    prime there."""
    for s, v in D.invariants:
        data = local_data.get(s.label)
        if data is None:
            raise MissingRelativeDataError(f"no local data for supported slot {s}")
        e, f, p = data
        if not isprime(p):
            raise NotPrimeError(f"{p} is not prime")
        e_tame = e
        while e_tame % p == 0:
            e_tame //= p
        if (f * e_tame) % invariant_order(v):
            return False
    return True


def adequacy(local_degrees: Mapping[str, int], target_order: int) -> bool:
    """Existence of a sum-zero class of exact order N with local orders
    dividing the given degrees: every prime power exactly dividing N must
    divide the degree at two or more slots (a lone maximal component
    cannot cancel)."""
    from sympy import factorint
    if target_order < 1:
        raise BadParametersError("target order must be positive")
    for q, a in factorint(target_order).items():
        qa = q**a
        carriers = sum(1 for deg in local_degrees.values() if deg % qa == 0)
        if carriers < 2:
            return False
    return True


def schacher_check(G: G_.FiniteGroup,
                   decomposition: Sequence[tuple[str, frozenset]]) -> dict:
    """Schacher's two-primes criterion on asserted decomposition subgroups:
    for each prime dividing |G|, at least two listed slots must carry a
    subgroup containing a Sylow."""
    from sympy import factorint
    per_prime = {}
    for p in factorint(G.order):
        slots_ok = [label for label, members in decomposition
                    if G_.contains_p_sylow(G, members, p)]
        per_prime[p] = slots_ok
    satisfied = all(len(v) >= 2 for v in per_prime.values()) if per_prime else True
    return {"satisfied": satisfied,
            "per_prime": {str(p): v for p, v in per_prime.items()}}


def constant_on_fibers(D: BrauerClass, rel: RelativeExtensionData) -> bool:
    """Necessary condition for D to come from the base field: the invariants
    must agree across each fiber (absent slots count as zero), and the
    support must lie over the described base slots."""
    if not rel.galois:
        raise BadParametersError("fiber constancy needs Galois relative data")
    mapping = D.mapping()
    covered: set[PrimeSlot] = set()
    for record in rel.records:
        targets = _fiber_slots(slot(record.slot), record.fiber_count)
        values = {mapping.get(t, Fraction(0)) for t in targets}
        covered.update(targets)
        if len(values) > 1:
            return False
    return all(s in covered for s in D.support)


# feasibility solver ---------------------------------------------------------


@dataclass(frozen=True)
class SlotConstraint:
    slot: str
    max_order: int = 1
    exact_order: Optional[int] = None

    def __post_init__(self):
        if self.max_order < 1 or (self.exact_order is not None and self.exact_order < 1):
            raise BadParametersError("order bounds must be positive")


@dataclass(frozen=True)
class FeasibilitySpec:
    """Search space for an invariant vector: per-slot order bounds, groups
    of slots forced equal, and the sum-zero constraint."""
    slots: tuple[SlotConstraint, ...]
    equal_groups: tuple[tuple[str, ...], ...] = ()
    sum_zero: bool = True

    def __post_init__(self):
        labels = [c.slot for c in self.slots]
        if len(set(labels)) != len(labels):
            raise BadParametersError("duplicate slot in feasibility spec")
        known = set(labels)
        for group in self.equal_groups:
            for s in group:
                if s not in known:
                    raise BadParametersError(f"equality group references unknown slot {s!r}")

    @staticmethod
    def from_json(doc: dict) -> "FeasibilitySpec":
        slots = tuple(SlotConstraint(slot=str(c["slot"]),
                                     max_order=int(c.get("max_order", c.get("exact_order", 1))),
                                     exact_order=(int(c["exact_order"])
                                                  if c.get("exact_order") is not None else None))
                      for c in doc.get("slots", []))
        groups = tuple(tuple(str(s) for s in grp) for grp in doc.get("equal", []))
        return FeasibilitySpec(slots=slots, equal_groups=groups,
                               sum_zero=bool(doc.get("sum_zero", True)))

    def to_json(self) -> dict:
        return {"slots": [{"slot": c.slot, "max_order": c.max_order,
                           **({"exact_order": c.exact_order} if c.exact_order else {})}
                          for c in self.slots],
                "equal": [list(g) for g in self.equal_groups],
                "sum_zero": self.sum_zero}


def _union_find_groups(spec: FeasibilitySpec) -> dict[str, str]:
    parent = {c.slot: c.slot for c in spec.slots}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for group in spec.equal_groups:
        for a, b in zip(group, group[1:]):
            parent[find(a)] = find(b)
    return {c.slot: find(c.slot) for c in spec.slots}


def _candidate_values(max_order: int, exact_order: Optional[int], L: int) -> list[Fraction]:
    out = []
    for a in range(L):
        v = Fraction(a, L)
        order = v.denominator
        if order > max_order or max_order % order:
            continue
        if exact_order is not None and order != exact_order:
            continue
        out.append(v)
    return out


def feasibility_solve(spec: FeasibilitySpec, base_field: str = "K") -> Optional[BrauerClass]:
    """Exhaustive search for an invariant vector meeting the spec.

    Denominators range over divisors of the lcm of all bounds.  Slots in an
    equality group share one variable carrying the conjunction of their
    constraints.  Assignments are enumerated in slot-list order with values
    ascending, and under sum-zero the final variable is solved rather than
    enumerated, so the returned witness is the lexicographically least one.
    Returns None when the space is exhausted.
    """
    if not spec.slots:
        return make_class({}, base_field=base_field)
    L = 1
    for c in spec.slots:
        L = lcm(L, c.exact_order if c.exact_order is not None else c.max_order)
    rep_of = _union_find_groups(spec)
    variables: list[str] = []
    members: dict[str, list[SlotConstraint]] = {}
    for c in spec.slots:
        r = rep_of[c.slot]
        if r not in members:
            members[r] = []
            variables.append(r)
        members[r].append(c)

    def candidates(rep: str) -> list[Fraction]:
        # the shared value's order must divide every member's bound
        bound = L
        exact: Optional[int] = None
        for c in members[rep]:
            bound = gcd(bound, c.exact_order if c.exact_order is not None else c.max_order)
            if c.exact_order is not None:
                if exact is not None and exact != c.exact_order:
                    return []
                exact = c.exact_order
        return _candidate_values(bound, exact, L)

    cand = {r: candidates(r) for r in variables}
    weight = {r: len(members[r]) for r in variables}

    def assemble(assign: dict[str, Fraction]) -> BrauerClass:
        return make_class({slot(c.slot): assign[rep_of[c.slot]] for c in spec.slots},
                          base_field=base_field)

    if not spec.sum_zero:
        # no sum constraint: the least candidate choice wins outright, but the
        # result is only a formal invariant vector, not necessarily global
        if any(not cand[r] for r in variables):
            return None
        assign = {r: cand[r][0] for r in variables}
        entries = {slot(c.slot): assign[rep_of[c.slot]] for c in spec.slots}
        ordered = tuple(sorted(((s, v) for s, v in entries.items() if v),
                               key=lambda kv: kv[0].sort_key))
        return BrauerClass(base_field=base_field, invariants=ordered)
    head, last = variables[:-1], variables[-1]
    for choice in itertools.product(*(cand[r] for r in head)):
        partial = sum((v * weight[r] for r, v in zip(head, choice)), Fraction(0))
        needed = _reduce_mod_1(-partial)
        w = weight[last]
        for x in cand[last]:
            if _reduce_mod_1(x * w) == needed:
                assign = dict(zip(head, choice))
                assign[last] = x
                return assemble(assign)
    return None
