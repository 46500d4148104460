"""Finite group engine for small p-groups.

Groups are immutable objects with an enumerated element domain (tuples or
ints), multiplication/inverse oracles and a distinguished generating
sequence.  Each preset family carries its own element representation behind
the one `FiniteGroup` interface; there is no generic word-problem machinery.

Spec strings (see `build_group`):

    cyclic:n | elab:p:k | abelian:a1,a2,... | heis:p | wreath:p
    | meta:m:n:i:t | double:p
"""

from __future__ import annotations

import itertools
import os
import random
from dataclasses import dataclass
from functools import lru_cache
from math import gcd, prod
from typing import Iterable, Optional, Sequence

from sympy import factorint, isprime

from .errors import GroupSpecError, NotPGroupError, NotPrimeError, OrderBoundError

DEFAULT_MAX_ORDER = 2**20
_ASSOC_SAMPLES = 300
_EXHAUSTIVE_AXIOM_BOUND = 10**4


def max_order_bound() -> int:
    """Enumeration bound; overridable via the ADLAB_MAX_ORDER env variable."""
    raw = os.environ.get("ADLAB_MAX_ORDER")
    if raw is None:
        return DEFAULT_MAX_ORDER
    try:
        value = int(raw)
    except ValueError as exc:
        raise OrderBoundError(f"ADLAB_MAX_ORDER must be an integer, got {raw!r}") from exc
    if value <= 0:
        raise OrderBoundError(f"ADLAB_MAX_ORDER must be positive, got {value}")
    return value


class FiniteGroup:
    """Enumerable finite group with oracles for multiplication and inverse.

    Subclasses fill in `_elements`, `op`, `inv`, `identity` and
    `generators`.  Construction validates that the distinguished generators
    close to the whole element list; identity and inverses are checked
    exhaustively up to order 10^4 and associativity on a seeded triple
    sample.
    """

    def __init__(self, spec: str, elements: Sequence, identity, generators: Sequence,
                 validate: bool = True):
        self.spec = spec
        self.elements = tuple(elements)
        self.identity = identity
        self.generators = tuple(generators)
        self.index = {g: i for i, g in enumerate(self.elements)}
        if len(self.index) != len(self.elements):
            raise GroupSpecError(f"{spec}: duplicate elements in domain")
        self._order_cache: dict = {}
        if validate:
            self._validate()

    # oracles -------------------------------------------------------------

    def op(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    # basic queries -------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.elements)

    def element_order(self, g) -> int:
        cached = self._order_cache.get(g)
        if cached is not None:
            return cached
        n = 1
        x = g
        while x != self.identity:
            x = self.op(x, g)
            n += 1
        self._order_cache[g] = n
        return n

    def power(self, g, k: int):
        if k < 0:
            return self.power(self.inv(g), -k)
        acc = self.identity
        base = g
        while k:
            if k & 1:
                acc = self.op(acc, base)
            base = self.op(base, base)
            k >>= 1
        return acc

    def conjugate(self, g, h):
        """h^-1 g h."""
        return self.op(self.op(self.inv(h), g), h)

    def commutator(self, g, h):
        """g^-1 h^-1 g h."""
        return self.op(self.op(self.inv(g), self.inv(h)), self.op(g, h))

    def is_abelian(self) -> bool:
        return all(self.op(a, b) == self.op(b, a)
                   for a in self.generators for b in self.generators)

    def prime(self) -> Optional[int]:
        """The prime p if this is a nontrivial p-group, else None."""
        if self.order == 1:
            return None
        fac = factorint(self.order)
        if len(fac) == 1:
            return next(iter(fac))
        return None

    def is_p_group(self) -> bool:
        return self.order == 1 or self.prime() is not None

    def repr_element(self, g) -> str:
        return repr(g)

    # validation ----------------------------------------------------------

    def _validate(self) -> None:
        closure, _ = subgroup_closure(self, self.generators)
        if len(closure) != self.order:
            raise GroupSpecError(
                f"{self.spec}: generators close to {len(closure)} of {self.order} elements")
        if self.order <= _EXHAUSTIVE_AXIOM_BOUND:
            for g in self.elements:
                if self.op(g, self.identity) != g or self.op(self.identity, g) != g:
                    raise GroupSpecError(f"{self.spec}: identity fails at {g!r}")
                h = self.inv(g)
                if self.op(g, h) != self.identity or self.op(h, g) != self.identity:
                    raise GroupSpecError(f"{self.spec}: inverse fails at {g!r}")
        rng = random.Random(11)
        n = self.order
        for _ in range(min(_ASSOC_SAMPLES, n * n)):
            a = self.elements[rng.randrange(n)]
            b = self.elements[rng.randrange(n)]
            c = self.elements[rng.randrange(n)]
            if self.op(self.op(a, b), c) != self.op(a, self.op(b, c)):
                raise GroupSpecError(f"{self.spec}: associativity fails on sample")


# preset families ---------------------------------------------------------


class CyclicGroup(FiniteGroup):
    def __init__(self, n: int, spec: Optional[str] = None):
        self.n = n
        gens = [1] if n > 1 else []
        super().__init__(spec or f"cyclic:{n}", range(n), 0, gens)

    def op(self, a, b):
        return (a + b) % self.n

    def inv(self, a):
        return (-a) % self.n

    def repr_element(self, g) -> str:
        return str(g)


class AbelianGroup(FiniteGroup):
    """Direct product of cyclic groups Z/a1 x ... x Z/ak, componentwise."""

    def __init__(self, factors: Sequence[int], spec: Optional[str] = None):
        self.factors = tuple(factors)
        elements = itertools.product(*(range(a) for a in self.factors))
        k = len(self.factors)
        gens = [tuple(1 if j == i else 0 for j in range(k))
                for i in range(k) if self.factors[i] > 1]
        ident = (0,) * k
        name = spec or "abelian:" + ",".join(str(a) for a in self.factors)
        super().__init__(name, list(elements), ident, gens)

    def op(self, a, b):
        return tuple((x + y) % m for x, y, m in zip(a, b, self.factors))

    def inv(self, a):
        return tuple((-x) % m for x, m in zip(a, self.factors))

    def repr_element(self, g) -> str:
        return "(" + ",".join(map(str, g)) + ")"


class HeisenbergGroup(FiniteGroup):
    """Unitriangular 3x3 matrices over F_p, stored as (a, b, c) for
    [[1,a,c],[0,1,b],[0,0,1]]."""

    def __init__(self, p: int):
        self.p = p
        elements = itertools.product(range(p), repeat=3)
        # generators as printed: x has a=1, y has b=1, u has c=1
        gens = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
        super().__init__(f"heis:{p}", list(elements), (0, 0, 0), gens)

    def op(self, g, h):
        a, b, c = g
        a2, b2, c2 = h
        p = self.p
        return ((a + a2) % p, (b + b2) % p, (c + c2 + a * b2) % p)

    def inv(self, g):
        a, b, c = g
        p = self.p
        return ((-a) % p, (-b) % p, (a * b - c) % p)

    def repr_element(self, g) -> str:
        return "(" + ",".join(map(str, g)) + ")"


class WreathGroup(FiniteGroup):
    """F_p wr (Z/p): base vectors of length p with a cyclic shift on top.

    Elements are flat tuples (v_0, ..., v_{p-1}, s); the shift s acts by
    rotating coordinates.  Order p^(p+1); generated by one base vector and
    the shift.
    """

    def __init__(self, p: int):
        self.p = p
        elements = [v + (s,) for v in itertools.product(range(p), repeat=p)
                    for s in range(p)]
        e_vec = tuple(1 if i == 0 else 0 for i in range(p))
        gens = [e_vec + (0,), (0,) * p + (1,)]
        super().__init__(f"wreath:{p}", elements, (0,) * (p + 1), gens)

    def op(self, g, h):
        p = self.p
        s = g[p]
        new_v = tuple((g[i] + h[(i - s) % p]) % p for i in range(p))
        return new_v + ((s + h[p]) % p,)

    def inv(self, g):
        p = self.p
        s = g[p]
        new_v = tuple((-g[(i + s) % p]) % p for i in range(p))
        return new_v + ((-s) % p,)

    def repr_element(self, g) -> str:
        p = self.p
        return "(" + ",".join(map(str, g[:p])) + "|" + str(g[p]) + ")"


class MetacyclicGroup(FiniteGroup):
    """Group on pairs (a, b) = x^a y^b with y^n = 1, x^m = y^i and
    x^-1 y x = y^t.

    Consistency (t^m = 1 and i(t-1) = 0 mod n, t a unit mod n) is required
    for the normal form to yield a group of order m*n; otherwise the
    relations collapse to a smaller group and construction is refused.
    """

    def __init__(self, m: int, n: int, i: int, t: int):
        if m < 1 or n < 1:
            raise GroupSpecError(f"meta:{m}:{n}:{i}:{t}: m, n must be positive")
        i %= n
        t %= n
        if gcd(t, n) != 1:
            raise GroupSpecError(
                f"meta:{m}:{n}:{i}:{t}: t must be a unit mod n (relations force a smaller group)")
        if pow(t, m, n) != 1 % n:
            raise GroupSpecError(
                f"meta:{m}:{n}:{i}:{t}: t^m != 1 mod n (relations force a smaller group)")
        if (i * (t - 1)) % n != 0:
            raise GroupSpecError(
                f"meta:{m}:{n}:{i}:{t}: i(t-1) != 0 mod n (relations force a smaller group)")
        self.m, self.n, self.i, self.t = m, n, i, t
        self.tpow = [1 % n]
        for _ in range(m):
            self.tpow.append(self.tpow[-1] * t % n)
        elements = itertools.product(range(m), range(n))
        gens = [(1 % m, 0), (0, 1 % n)]
        gens = [g for g in gens if g != (0, 0)] or []
        super().__init__(f"meta:{m}:{n}:{i}:{t}", list(elements), (0, 0), gens)

    def op(self, g, h):
        a, b = g
        c, d = h
        e = (b * self.tpow[c] + d) % self.n
        s = a + c
        if s >= self.m:
            return (s - self.m, (e + self.i) % self.n)
        return (s, e)

    def inv(self, g):
        # order of x-part in G/<y> is m, so a few steps of search are fine
        a, b = g
        if g == (0, 0):
            return g
        acc = g
        prev = g
        while acc != (0, 0):
            prev = acc
            acc = self.op(acc, g)
        return prev

    def repr_element(self, g) -> str:
        return f"x^{g[0]}*y^{g[1]}"


def _semidirect_action_matrix(p: int, g: Sequence[int]) -> tuple:
    # phi(g) = I + g0*E12 + g2*E13 on column vectors over F_p
    return ((1, g[0] % p, g[2] % p), (0, 1, 0), (0, 0, 1))


class SemidirectSquareGroup(FiniteGroup):
    """(Z/p)^3 acting on (Z/p)^3 through the unitriangular group.

    The action sends the first standard generator to the printed shear
    fixing the last two coordinates and the third to the one adding the
    last coordinate to the first; the middle generator acts trivially
    (the two printed shears that fail to commute cannot both occur in the
    image of an abelian group).  Elements are pairs (g, v).
    """

    def __init__(self, p: int):
        self.p = p
        vecs = list(itertools.product(range(p), repeat=3))
        elements = [(g, v) for g in vecs for v in vecs]
        zero = (0, 0, 0)
        gens = [((1, 0, 0), zero), ((0, 1, 0), zero), ((0, 0, 1), zero),
                (zero, (1, 0, 0)), (zero, (0, 1, 0)), (zero, (0, 0, 1))]
        super().__init__(f"double:{p}", elements, (zero, zero), gens)

    def _act(self, g, v):
        p = self.p
        return ((v[0] + g[0] * v[1] + g[2] * v[2]) % p, v[1], v[2])

    def op(self, x, y):
        g, v = x
        h, w = y
        p = self.p
        hw = self._act(g, w)
        return (tuple((g[i] + h[i]) % p for i in range(3)),
                tuple((v[i] + hw[i]) % p for i in range(3)))

    def inv(self, x):
        g, v = x
        p = self.p
        ginv = tuple((-g[i]) % p for i in range(3))
        w = self._act(ginv, v)
        return (ginv, tuple((-w[i]) % p for i in range(3)))

    def repr_element(self, g) -> str:
        return "(" + ",".join(map(str, g[0])) + "|" + ",".join(map(str, g[1])) + ")"


# spec parsing ------------------------------------------------------------


def _parse_int(text: str, what: str, spec: str) -> int:
    try:
        return int(text)
    except ValueError as exc:
        raise GroupSpecError(f"{spec}: {what} must be an integer, got {text!r}") from exc


def _require_prime(p: int, spec: str) -> None:
    if not isprime(p):
        raise GroupSpecError(f"{spec}: {p} is not prime")


def predicted_order(spec: str) -> int:
    """Order of the group a spec string describes, from the family formula."""
    head, _, rest = spec.partition(":")
    parts = rest.split(":") if rest else []
    if head == "cyclic" and len(parts) == 1:
        n = _parse_int(parts[0], "n", spec)
        if n < 1:
            raise GroupSpecError(f"{spec}: n must be positive")
        return n
    if head == "elab" and len(parts) == 2:
        p = _parse_int(parts[0], "p", spec)
        k = _parse_int(parts[1], "k", spec)
        _require_prime(p, spec)
        if k < 0:
            raise GroupSpecError(f"{spec}: k must be nonnegative")
        return p**k
    if head == "abelian" and len(parts) == 1:
        factors = [_parse_int(a, "factor", spec) for a in parts[0].split(",") if a]
        if not factors or any(a < 1 for a in factors):
            raise GroupSpecError(f"{spec}: factors must be positive integers")
        return prod(factors)
    if head == "heis" and len(parts) == 1:
        p = _parse_int(parts[0], "p", spec)
        _require_prime(p, spec)
        return p**3
    if head == "wreath" and len(parts) == 1:
        p = _parse_int(parts[0], "p", spec)
        _require_prime(p, spec)
        return p**(p + 1)
    if head == "meta" and len(parts) == 4:
        m = _parse_int(parts[0], "m", spec)
        n = _parse_int(parts[1], "n", spec)
        if m < 1 or n < 1:
            raise GroupSpecError(f"{spec}: m, n must be positive")
        return m * n
    if head == "double" and len(parts) == 1:
        p = _parse_int(parts[0], "p", spec)
        _require_prime(p, spec)
        return p**6
    raise GroupSpecError(f"unrecognized group spec {spec!r}")


@lru_cache(maxsize=64)
def _build_cached(spec: str, bound: int) -> FiniteGroup:
    order = predicted_order(spec)
    if order > bound:
        raise OrderBoundError(f"{spec}: order {order} exceeds enumeration bound {bound}")
    head, _, rest = spec.partition(":")
    parts = rest.split(":") if rest else []
    if head == "cyclic":
        return CyclicGroup(int(parts[0]), spec)
    if head == "elab":
        p, k = int(parts[0]), int(parts[1])
        return AbelianGroup([p] * k, spec)
    if head == "abelian":
        return AbelianGroup([int(a) for a in parts[0].split(",") if a], spec)
    if head == "heis":
        return HeisenbergGroup(int(parts[0]))
    if head == "wreath":
        return WreathGroup(int(parts[0]))
    if head == "meta":
        return MetacyclicGroup(*(int(a) for a in parts))
    if head == "double":
        return SemidirectSquareGroup(int(parts[0]))
    raise GroupSpecError(f"unrecognized group spec {spec!r}")


def build_group(spec: str, max_order: Optional[int] = None) -> FiniteGroup:
    """Construct a preset group from its spec string.

    Raises GroupSpecError on malformed or inconsistent specs and
    OrderBoundError when the formulaic order exceeds the enumeration bound.
    """
    spec = spec.strip()
    bound = max_order if max_order is not None else max_order_bound()
    return _build_cached(spec, bound)


# subgroup machinery ------------------------------------------------------


def subgroup_closure(G: FiniteGroup, seeds: Iterable) -> tuple[frozenset, list]:
    """Subgroup generated by `seeds`, with the reduced generator list used.

    Incremental: a seed already inside the current closure is skipped, so
    the closure is re-run at most log_p|G| times.
    """
    members = {G.identity}
    gens_used: list = []
    for s in seeds:
        if s in members:
            continue
        gens_used.append(s)
        members = {G.identity}
        frontier = [G.identity]
        while frontier:
            x = frontier.pop()
            for t in gens_used:
                y = G.op(x, t)
                if y not in members:
                    members.add(y)
                    frontier.append(y)
    return frozenset(members), gens_used


def normal_closure(G: FiniteGroup, seeds: Iterable) -> tuple[frozenset, list]:
    """Smallest normal subgroup containing `seeds`."""
    seeds = list(seeds)
    members, gens_used = subgroup_closure(G, seeds)
    changed = True
    while changed:
        changed = False
        for h in list(members):
            for g in G.generators:
                c = G.conjugate(h, g)
                if c not in members:
                    seeds.append(c)
                    members, gens_used = subgroup_closure(G, seeds)
                    changed = True
    return members, gens_used


def commutator_subgroup(G: FiniteGroup) -> tuple[frozenset, list]:
    seeds = [G.commutator(a, b) for a in G.generators for b in G.generators]
    return normal_closure(G, seeds)


def conjugacy_classes(G: FiniteGroup) -> list[frozenset]:
    seen: set = set()
    classes = []
    for g in G.elements:
        if g in seen:
            continue
        orbit = {g}
        frontier = [g]
        while frontier:
            x = frontier.pop()
            for s in G.generators:
                y = G.conjugate(x, s)
                if y not in orbit:
                    orbit.add(y)
                    frontier.append(y)
        seen |= orbit
        classes.append(frozenset(orbit))
    return classes


def normal_subgroups(G: FiniteGroup) -> list[frozenset]:
    """All normal subgroups, by closing unions of conjugacy classes."""
    classes = conjugacy_classes(G)
    trivial = frozenset({G.identity})
    found = {trivial}
    queue = [(trivial, [])]
    while queue:
        current, gens = queue.pop()
        for cls in classes:
            if cls <= current:
                continue
            new_members, new_gens = subgroup_closure(G, gens + sorted(cls, key=G.index.get))
            if new_members not in found:
                found.add(new_members)
                queue.append((new_members, new_gens))
    return sorted(found, key=lambda s: (len(s), sorted(G.index[g] for g in s)))


class SubgroupGroup(FiniteGroup):
    """A subgroup of a parent group, re-exposed through the group interface."""

    def __init__(self, parent: FiniteGroup, members: frozenset, spec: Optional[str] = None):
        self.parent = parent
        ordered = sorted(members, key=parent.index.get)
        gens: list = []
        closure = {parent.identity}
        for g in ordered:
            if g in closure:
                continue
            gens.append(g)
            closure, _ = subgroup_closure(parent, gens)
        super().__init__(spec or f"{parent.spec}[sub:{len(ordered)}]",
                         ordered, parent.identity, gens, validate=False)

    def op(self, a, b):
        return self.parent.op(a, b)

    def inv(self, a):
        return self.parent.inv(a)

    def repr_element(self, g) -> str:
        return self.parent.repr_element(g)


class QuotientGroup(FiniteGroup):
    """Quotient by a normal subgroup, on minimum-index coset representatives."""

    def __init__(self, parent: FiniteGroup, normal: frozenset):
        self.parent = parent
        rep_of: dict = {}
        reps: list = []
        for g in parent.elements:
            if g in rep_of:
                continue
            coset = [parent.op(g, d) for d in normal]
            rep = min(coset, key=parent.index.get)
            for x in coset:
                rep_of[x] = rep
            reps.append(rep)
        self.rep_of = rep_of
        gens = []
        for s in parent.generators:
            r = rep_of[s]
            if r != rep_of[parent.identity] and r not in gens:
                gens.append(r)
        super().__init__(f"{parent.spec}/N{len(normal)}", reps,
                         rep_of[parent.identity], gens, validate=False)

    def op(self, a, b):
        return self.rep_of[self.parent.op(a, b)]

    def inv(self, a):
        return self.rep_of[self.parent.inv(a)]


# word parsing (CLI subgroup input) ---------------------------------------


def parse_word(G: FiniteGroup, text: str):
    """Evaluate a word like "g0^2*g1^-1" (or "e") in the canonical generators."""
    text = text.strip()
    acc = G.identity
    if text in ("", "e", "1"):
        return acc
    for token in text.split("*"):
        token = token.strip()
        base, _, exp = token.partition("^")
        k = 1
        if exp:
            try:
                k = int(exp)
            except ValueError as exc:
                raise GroupSpecError(f"bad exponent in word token {token!r}") from exc
        if base in ("e", "1"):
            g = G.identity
        elif base.startswith("g"):
            try:
                idx = int(base[1:])
            except ValueError as exc:
                raise GroupSpecError(f"bad generator token {token!r}") from exc
            if not 0 <= idx < len(G.generators):
                raise GroupSpecError(
                    f"generator index {idx} out of range (group has {len(G.generators)})")
            g = G.generators[idx]
        else:
            raise GroupSpecError(f"bad word token {token!r}")
        acc = G.op(acc, G.power(g, k))
    return acc


# Frattini rank -----------------------------------------------------------


def _rowreduce_mod_p(rows: list[list[int]], p: int) -> list[list[int]]:
    """Row echelon basis of the span of `rows` over F_p."""
    basis: list[list[int]] = []
    pivots: list[int] = []
    for row in rows:
        row = [x % p for x in row]
        for b, j in zip(basis, pivots):
            if row[j]:
                c = row[j]
                row = [(x - c * y) % p for x, y in zip(row, b)]
        j = next((i for i, x in enumerate(row) if x), None)
        if j is None:
            continue
        c = pow(row[j], -1, p)
        row = [x * c % p for x in row]
        basis.append(row)
        pivots.append(j)
    return basis


def _in_rowspace(vec: Sequence[int], basis: list[list[int]], p: int) -> bool:
    row = [x % p for x in vec]
    for b in basis:
        j = next(i for i, x in enumerate(b) if x)
        if row[j]:
            c = row[j]
            row = [(x - c * y) % p for x, y in zip(row, b)]
    return not any(row)


def _frattini_by_hyperplanes(G: FiniteGroup, p: int) -> tuple[frozenset, int]:
    """Route (a): intersect the maximal subgroups.

    Maximal subgroups of a p-group are the kernels of surjections onto
    Z/p.  Such a surjection is a linear functional on generator exponent
    vectors that kills every Cayley-edge relation, so the intersection of
    all kernels is the set of elements whose exponent vector lies in the
    relation row space.
    """
    k = len(G.generators)
    wc = {G.identity: (0,) * k}
    frontier = [G.identity]
    unit = [tuple(1 if j == i else 0 for j in range(k)) for i in range(k)]
    while frontier:
        g = frontier.pop()
        for i, s in enumerate(G.generators):
            h = G.op(g, s)
            if h not in wc:
                wc[h] = tuple((a + b) % p for a, b in zip(wc[g], unit[i]))
                frontier.append(h)
    if len(wc) != G.order:
        raise GroupSpecError(f"{G.spec}: generators do not reach every element")
    rows = []
    for g in G.elements:
        vg = wc[g]
        for i, s in enumerate(G.generators):
            vh = wc[G.op(g, s)]
            rows.append([(a + b - c) % p for a, b, c in zip(vg, unit[i], vh)])
    basis = _rowreduce_mod_p(rows, p)
    rank_rel = len(basis)
    d = k - rank_rel
    members = frozenset(g for g in G.elements if _in_rowspace(wc[g], basis, p))
    if len(members) * p**d != G.order:
        raise GroupSpecError(f"{G.spec}: hyperplane kernel count is inconsistent")
    return members, d


def _frattini_by_powers_commutators(G: FiniteGroup, p: int) -> frozenset:
    """Route (b): the subgroup G^p [G,G]."""
    _, der_gens = commutator_subgroup(G)
    power_seeds = sorted({G.power(g, p) for g in G.elements}, key=G.index.get)
    members, _ = subgroup_closure(G, der_gens + power_seeds)
    return members


def frattini_subgroup(G: FiniteGroup) -> frozenset:
    """Frattini subgroup of a p-group, computed along both routes.

    The maximal-subgroup intersection and G^p[G,G] must agree; a mismatch
    means one of the computations is wrong and is raised loudly.
    """
    p = G.prime()
    if G.order == 1:
        return frozenset({G.identity})
    if p is None:
        raise NotPGroupError(f"{G.spec}: order {G.order} is not a prime power")
    members_a, _ = _frattini_by_hyperplanes(G, p)
    members_b = _frattini_by_powers_commutators(G, p)
    if members_a != members_b:
        raise GroupSpecError(
            f"{G.spec}: Frattini routes disagree ({len(members_a)} vs {len(members_b)})")
    return members_a


def frattini_quotient_rank(G: FiniteGroup) -> int:
    """Minimal number of generators d(G) = dim_{F_p} G/Phi(G) of a p-group."""
    if G.order == 1:
        return 0
    p = G.prime()
    if p is None:
        raise NotPGroupError(f"{G.spec}: order {G.order} is not a prime power")
    phi = frattini_subgroup(G)
    quotient = G.order // len(phi)
    d = 0
    while quotient > 1:
        if quotient % p:
            raise GroupSpecError(f"{G.spec}: Frattini index {G.order // len(phi)} not a p-power")
        quotient //= p
        d += 1
    return d


# metacyclic presentations -------------------------------------------------


@dataclass(frozen=True)
class MetacyclicPresentation:
    """Parameters (m, n, i, t) of x^m = y^i, y^n = 1, x^-1 y x = y^t, with a
    witness pair realizing them."""
    m: int
    n: int
    i: int
    t: int
    witness_x: object
    witness_y: object

    @property
    def params(self) -> tuple[int, int, int, int]:
        return (self.m, self.n, self.i, self.t)


def _cyclic_dlog(G: FiniteGroup, y, n: int) -> dict:
    table = {}
    acc = G.identity
    for k in range(n):
        table[acc] = k
        acc = G.op(acc, y)
    return table


def metacyclic_presentations(G: FiniteGroup) -> list[MetacyclicPresentation]:
    """Exhaustive list of metacyclic presentations realized by element pairs.

    Candidate y runs over every element whose cyclic subgroup is normal; x
    over all elements generating G together with y.  Parameter tuples are
    deduplicated keeping the first witness; the list is ordered by n
    descending and then by discovery (element enumeration) order.  Empty
    exactly when G is not metacyclic.
    """
    order = G.order
    seen: dict[tuple, MetacyclicPresentation] = {}
    results: list[MetacyclicPresentation] = []
    for y in G.elements:
        n = G.element_order(y)
        cyc, _ = subgroup_closure(G, [y])
        if any(G.conjugate(y, s) not in cyc for s in G.generators):
            continue
        m = order // n
        dlog = _cyclic_dlog(G, y, n)
        for x in G.elements:
            if order > 1 and x in cyc and n != order:
                continue
            members, _ = subgroup_closure(G, [x, y])
            if len(members) != order:
                continue
            conj = G.conjugate(y, x)
            if conj not in dlog:
                continue
            t = dlog[conj] % n
            xm = G.power(x, m)
            if xm not in dlog:
                continue
            i = dlog[xm] % n
            key = (m, n, i, t)
            if key not in seen:
                pres = MetacyclicPresentation(m, n, i, t, x, y)
                seen[key] = pres
                results.append(pres)
    results.sort(key=lambda pr: -pr.n)
    return results


def presentation_holds(G: FiniteGroup, pres: MetacyclicPresentation) -> bool:
    """Replay the relations and the generation claim of a presentation."""
    x, y = pres.witness_x, pres.witness_y
    if G.element_order(y) != pres.n:
        return False
    if G.power(x, pres.m) != G.power(y, pres.i):
        return False
    if G.conjugate(y, x) != G.power(y, pres.t):
        return False
    cyc, _ = subgroup_closure(G, [y])
    if len(cyc) != pres.n or any(G.conjugate(y, s) not in cyc for s in G.generators):
        return False
    members, _ = subgroup_closure(G, [x, y])
    return len(members) == G.order and pres.m * pres.n == G.order


# remaining operations -----------------------------------------------------


def proper_quotients_abelian(G: FiniteGroup) -> bool:
    """True iff G/N is abelian for every nontrivial normal subgroup N."""
    der, _ = commutator_subgroup(G)
    if len(der) == 1:
        return True
    for N in normal_subgroups(G):
        if len(N) == 1:
            continue
        if not der <= N:
            return False
    return True


def contains_p_sylow(G: FiniteGroup, members: frozenset, p: int) -> bool:
    """Whether a subgroup contains a p-Sylow of G (p-parts of the orders agree)."""
    if not isprime(p):
        raise NotPrimeError(f"{p} is not prime")

    def p_part(n: int) -> int:
        out = 1
        while n % p == 0:
            out *= p
            n //= p
        return out

    return p_part(len(members)) == p_part(G.order)


def abelian_invariants(G: FiniteGroup) -> list[int]:
    """Invariant factors of G/[G,G], largest first."""
    der, _ = commutator_subgroup(G)
    Q: FiniteGroup = QuotientGroup(G, der) if len(der) > 1 else G
    invariants: list[int] = []
    while Q.order > 1:
        x = max(Q.elements, key=Q.element_order)
        d = Q.element_order(x)
        invariants.append(d)
        cyc, _ = subgroup_closure(Q, [x])
        Q = QuotientGroup(Q, cyc)
    return invariants


def sylow_decomposition(G: FiniteGroup) -> Optional[dict[int, SubgroupGroup]]:
    """Sylow subgroups of a nilpotent group, or None if the p-elements fail
    to form subgroups (the group is not a direct product of its Sylows)."""
    if G.order == 1:
        return {}
    out: dict[int, SubgroupGroup] = {}
    for p in factorint(G.order):
        p_elements = [g for g in G.elements if _is_p_power(G.element_order(g), p)]
        members, _ = subgroup_closure(G, p_elements)
        expected = 1
        n = G.order
        while n % p == 0:
            expected *= p
            n //= p
        if len(members) != expected or any(m not in p_elements for m in members):
            return None
        out[p] = SubgroupGroup(G, members, spec=f"{G.spec}[sylow:{p}]")
    return out


def _is_p_power(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


# semidirect-square rank over all unitriangular actions --------------------


def _mat_mul(A, B, p):
    return tuple(tuple(sum(A[i][k] * B[k][j] for k in range(3)) % p for j in range(3))
                 for i in range(3))


def _mat_identity():
    return ((1, 0, 0), (0, 1, 0), (0, 0, 1))


def unitriangular_group_matrices(p: int) -> list[tuple]:
    """All p^3 upper unitriangular 3x3 matrices over F_p."""
    return [((1, a, c), (0, 1, b), (0, 0, 1))
            for a in range(p) for b in range(p) for c in range(p)]


def printed_action_triple(p: int) -> tuple:
    """The action triple used by the double:p preset (shear, identity, shear)."""
    Mx = ((1, 1, 0), (0, 1, 0), (0, 0, 1))
    Mu = ((1, 0, 1), (0, 1, 0), (0, 0, 1))
    return (Mx, _mat_identity(), Mu)


def commuting_action_triples(p: int):
    """All homomorphisms (Z/p)^3 -> unitriangular group, as commuting
    generator-image triples."""
    mats = unitriangular_group_matrices(p)
    commute = {}
    for A in mats:
        commute[A] = [B for B in mats if _mat_mul(A, B, p) == _mat_mul(B, A, p)]
    for A in mats:
        for B in commute[A]:
            for C in commute[A]:
                if _mat_mul(B, C, p) == _mat_mul(C, B, p):
                    yield (A, B, C)


def semidirect_square_rank(p: int, triple: tuple) -> int:
    """Minimal generator count of (Z/p)^3 x| (Z/p)^3 for the action sending
    the standard generators to the given commuting matrix triple.

    Both factors are elementary abelian with commuting action images, so
    the Frattini subgroup sits inside the acted-on factor as the span of
    the images of (phi(g) - 1) together with the p-th power contributions
    sum_k phi(g)^k, and the rank is 6 minus that span's dimension.
    """
    rows = []
    images = []
    for exps in itertools.product(range(p), repeat=3):
        M = _mat_identity()
        for mat, e in zip(triple, exps):
            for _ in range(e):
                M = _mat_mul(M, mat, p)
        images.append(M)
    for M in images:
        for j in range(3):
            col = tuple((M[i][j] - (1 if i == j else 0)) % p for i in range(3))
            rows.append(col)
        S = ((0, 0, 0), (0, 0, 0), (0, 0, 0))
        acc = _mat_identity()
        for _ in range(p):
            S = tuple(tuple((S[i][j] + acc[i][j]) % p for j in range(3)) for i in range(3))
            acc = _mat_mul(acc, M, p)
        for j in range(3):
            rows.append(tuple(S[i][j] % p for i in range(3)))
    basis = _rowreduce_mod_p([list(r) for r in rows], p)
    return 6 - len(basis)


# info summary -------------------------------------------------------------


def group_info(G: FiniteGroup) -> dict:
    return {
        "spec": G.spec,
        "order": G.order,
        "prime": G.prime(),
        "is_p_group": G.is_p_group(),
        "is_abelian": G.is_abelian(),
        "generators": [G.repr_element(g) for g in G.generators],
        "exponent": max((G.element_order(g) for g in G.elements), default=1),
        "abelian_invariants": abelian_invariants(G),
    }
