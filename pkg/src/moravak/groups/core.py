"""Finite groups as materialized Cayley tables.

Elements are the integers ``0..n-1`` with ``0`` the identity.  Every
algorithm downstream of construction reads the table only, so the way a group
was presented never matters after it is built.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from ..errors import BudgetExceeded, InconsistentPresentation, InputError, SizeLimit

log = logging.getLogger(__name__)

MAX_ORDER = 2**13
EXHAUSTIVE_ASSOCIATIVITY = 512
TUPLE_BUDGET = 10**8
# auto mode enumerates tuples directly below this many candidates
NAIVE_TUPLE_LIMIT = 2 * 10**5


class Group:
    """A finite group given by its multiplication table.

    ``element_names[i]`` is the normal-form exponent vector of element ``i``
    (exponents in declaration order); ``generator_indices``
    maps a generator name to its element index.  Labels print later
    generators first, e.g. ``a*b`` for ``(1, 1, 0)`` over ``b, a, c``.
    """

    def __init__(self, table, element_names: Sequence[tuple] | None = None,
                 generator_indices: dict[str, int] | None = None, name: str = ""):
        table = np.asarray(table, dtype=np.int32)
        n = table.shape[0]
        if table.shape != (n, n) or n == 0:
            raise InputError("table must be a non-empty square array")
        if n > MAX_ORDER:
            raise SizeLimit(f"group order {n} exceeds the cap {MAX_ORDER}")
        ar = np.arange(n)
        if not (np.array_equal(table[0], ar) and np.array_equal(table[:, 0], ar)):
            raise InconsistentPresentation("element 0 is not a two-sided identity")
        self.table = table
        self.table.setflags(write=False)
        self.order = n
        self.element_names = list(element_names) if element_names is not None else [(i,) for i in range(n)]
        self.generator_indices = dict(generator_indices or {})
        self.name = name

    def __repr__(self):
        label = self.name or "Group"
        return f"<{label} of order {self.order}>"

    def __len__(self):
        return self.order

    # -- elementary operations -------------------------------------------
    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    @cached_property
    def inverses(self) -> np.ndarray:
        inv = np.argmax(self.table == 0, axis=1)
        if not np.all(self.table[np.arange(self.order), inv] == 0):
            raise InconsistentPresentation("some element has no inverse")
        if not np.all(self.table[inv, np.arange(self.order)] == 0):
            raise InconsistentPresentation("some element has no two-sided inverse")
        return inv

    def inv(self, a: int) -> int:
        return int(self.inverses[a])

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        out = 0
        for _ in range(k % self.element_orders[a]):
            out = self.mul(out, a)
        return out

    def power_map(self, k: int) -> np.ndarray:
        """Array ``x -> x^k`` for ``k >= 0``."""
        ar = np.arange(self.order)
        out = np.zeros(self.order, dtype=np.int64)
        base = ar.copy()
        while k:
            if k & 1:
                out = self.table[out, base]
            k >>= 1
            if k:
                base = self.table[base, base]
        return out

    @cached_property
    def element_orders(self) -> np.ndarray:
        n = self.order
        ar = np.arange(n)
        orders = np.zeros(n, dtype=np.int64)
        cur = ar.copy()
        k = 1
        while True:
            hit = (cur == 0) & (orders == 0)
            orders[hit] = k
            if np.all(orders):
                return orders
            cur = self.table[cur, ar]
            k += 1

    @cached_property
    def exponent(self) -> int:
        return int(np.lcm.reduce(self.element_orders))

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def generator(self, name: str) -> int:
        try:
            return self.generator_indices[name]
        except KeyError:
            raise InputError(f"unknown generator {name!r}") from None

    def element(self, word: str) -> int:
        """Evaluate a word such as ``"a^2*c"`` using the named generators."""
        from .build import parse_word
        out = 0
        for name, e in parse_word(word):
            out = self.mul(out, self.power(self.generator(name), e))
        return out

    def element_label(self, i: int) -> str:
        names = list(self.generator_indices)
        vec = self.element_names[i]
        if len(vec) != len(names):
            return str(i)
        # normal form lists the last generator first
        parts = [f"{g}^{e}" if e != 1 else g for g, e in zip(reversed(names), reversed(vec)) if e]
        return "*".join(parts) or "1"

    # -- verification ----------------------------------------------------
    def check_associativity(self, exhaustive_limit: int = EXHAUSTIVE_ASSOCIATIVITY,
                            samples: int = 10**6, seed: int = 0) -> None:
        """Raise ``InconsistentPresentation`` on any failure of (ab)c = a(bc)."""
        t = self.table
        n = self.order
        if n <= exhaustive_limit:
            for a in range(n):
                # (a b) c  vs  a (b c) for all b, c
                if not np.array_equal(t[t[a]], t[a][t]):
                    raise InconsistentPresentation(f"associativity fails for a={a}")
            return
        rng = np.random.default_rng(seed)
        a, b, c = rng.integers(0, n, size=(3, samples))
        if not np.array_equal(t[t[a, b], c], t[a, t[b, c]]):
            raise InconsistentPresentation("associativity fails on a random triple")

    def check_axioms(self, **kw) -> None:
        self.inverses  # noqa: B018 -- raises when an inverse is missing
        self.check_associativity(**kw)

    # -- structure -------------------------------------------------------
    def conjugation_maps(self) -> np.ndarray:
        """Row ``g`` is the permutation ``x -> g^-1 x g``."""
        t = self.table
        left = t[self.inverses, :]
        return t[left, np.arange(self.order)[:, None]]

    @cached_property
    def _conj(self) -> np.ndarray:
        return self.conjugation_maps()

    def conjugate(self, x: int, g: int) -> int:
        return int(self._conj[g, x])

    @cached_property
    def center(self) -> list[int]:
        return [int(i) for i in np.nonzero(np.all(self.table == self.table.T, axis=1))[0]]

    def centralizer(self, elems: int | Iterable[int]) -> "Subgroup":
        elems = [elems] if isinstance(elems, (int, np.integer)) else list(elems)
        t = self.table
        mask = np.ones(self.order, dtype=bool)
        for x in elems:
            mask &= t[:, x] == t[x, :]
        return Subgroup.from_elements(self, np.nonzero(mask)[0])

    @cached_property
    def derived_subgroup(self) -> "Subgroup":
        t = self.table
        inv = self.inverses
        # [x, y] = x^-1 y^-1 x y
        comm = t[t[inv[:, None], inv[None, :]], t]
        return subgroup_generated(self, np.unique(comm))


def conjugacy_classes(g: Group) -> list[list[int]]:
    """Conjugacy classes, each sorted, listed by smallest element."""
    conj = g._conj
    seen = np.zeros(g.order, dtype=bool)
    classes = []
    for x in range(g.order):
        if seen[x]:
            continue
        cls = np.unique(conj[:, x])
        seen[cls] = True
        classes.append([int(c) for c in cls])
    return classes


@dataclass(frozen=True)
class Subgroup:
    parent: Group = field(repr=False, compare=False)
    element_indices: tuple[int, ...]
    coset_reps: tuple[int, ...]

    @classmethod
    def from_elements(cls, parent: Group, elems: Iterable[int]) -> "Subgroup":
        elems = tuple(sorted({int(e) for e in elems}))
        if not elems or elems[0] != 0:
            raise InputError("a subgroup must contain the identity")
        members = np.zeros(parent.order, dtype=bool)
        members[list(elems)] = True
        sub = np.array(elems)
        if not members[parent.table[sub[:, None], sub[None, :]]].all():
            raise InputError("element set is not closed under multiplication")
        reps = []
        covered = np.zeros(parent.order, dtype=bool)
        for x in range(parent.order):
            if not covered[x]:
                reps.append(x)
                covered[parent.table[x, sub]] = True
        return cls(parent, elems, tuple(reps))

    @property
    def order(self) -> int:
        return len(self.element_indices)

    @property
    def index(self) -> int:
        return len(self.coset_reps)

    def __contains__(self, x):
        return int(x) in self._members

    @cached_property
    def _members(self) -> frozenset:
        return frozenset(self.element_indices)

    def is_normal(self) -> bool:
        conj = self.parent._conj
        sub = list(self.element_indices)
        return all(int(y) in self._members for y in np.unique(conj[:, sub]))

    def as_group(self, name: str = "") -> Group:
        """Standalone group on ``0..|H|-1`` in the order of ``element_indices``."""
        elems = np.array(self.element_indices)
        relabel = np.full(self.parent.order, -1, dtype=np.int64)
        relabel[elems] = np.arange(len(elems))
        table = relabel[self.parent.table[elems[:, None], elems[None, :]]]
        names = [self.parent.element_names[e] for e in self.element_indices]
        gens = {k: int(relabel[v]) for k, v in self.parent.generator_indices.items()
                if relabel[v] >= 0}
        return Group(table, names, gens, name=name)


def subgroup_generated(g: Group, elems: Iterable[int]) -> Subgroup:
    """Smallest subgroup containing ``elems``."""
    gens = sorted({int(e) for e in elems} - {0})
    for e in gens:
        if not 0 <= e < g.order:
            raise InputError(f"element index {e} out of range")
    members = np.zeros(g.order, dtype=bool)
    members[0] = True
    frontier = np.array([0])
    t = g.table
    while frontier.size:
        cand = np.unique(t[frontier[:, None], np.array(gens, dtype=np.int64)[None, :]]) \
            if gens else np.array([], dtype=np.int64)
        new = cand[~members[cand]]
        members[new] = True
        frontier = new
    return Subgroup.from_elements(g, np.nonzero(members)[0])


def quotient(g: Group, normal: Subgroup, name: str = "") -> Group:
    """Quotient by a normal subgroup; cosets numbered by smallest element."""
    if not normal.is_normal():
        raise InputError("quotient requires a normal subgroup")
    label = np.full(g.order, -1, dtype=np.int64)
    sub = np.array(normal.element_indices)
    for k, rep in enumerate(normal.coset_reps):
        label[g.table[rep, sub]] = k
    reps = np.array(normal.coset_reps)
    table = label[g.table[reps[:, None], reps[None, :]]]
    return Group(table, [(int(r),) for r in reps], name=name)


def direct_product(g1: Group, g2: Group, max_order: int = MAX_ORDER) -> Group:
    """``g1 x g2`` with element ``(i, j)`` stored at ``i * |g2| + j``."""
    n1, n2 = g1.order, g2.order
    if n1 * n2 > max_order:
        raise SizeLimit(f"product order {n1 * n2} exceeds the cap {max_order}")
    t = (g1.table.astype(np.int64)[:, None, :, None] * n2
         + g2.table.astype(np.int64)[None, :, None, :])
    table = t.reshape(n1 * n2, n1 * n2)
    names = [a + b for a in g1.element_names for b in g2.element_names]
    clash = set(g1.generator_indices) & set(g2.generator_indices)
    gens = {}
    for name, idx in g1.generator_indices.items():
        gens[f"{name}_1" if name in clash else name] = idx * n2
    for name, idx in g2.generator_indices.items():
        gens[f"{name}_2" if name in clash else name] = idx
    label = f"{g1.name or 'G'} x {g2.name or 'G'}"
    return Group(table, names, gens, name=label)


def cyclic_group(m: int, generator: str = "g") -> Group:
    if m < 1:
        raise InputError(f"cyclic group order must be positive, got {m}")
    if m > MAX_ORDER:
        raise SizeLimit(f"order {m} exceeds the cap {MAX_ORDER}")
    ar = np.arange(m)
    gens = {generator: 1} if m > 1 else {}
    return Group((ar[:, None] + ar[None, :]) % m, [(i,) for i in range(m)], gens, name=f"C{m}")


def commuting_tuple_class_count(g: Group, s: int, budget: int = TUPLE_BUDGET,
                                method: str = "auto") -> int:
    """Number of orbits of pairwise-commuting ``s``-tuples under conjugation.

    ``method`` is ``"naive"`` (enumerate the tuples and label each orbit by its
    smallest member), ``"chain"`` (sum over class representatives ``x`` of the
    count for the centralizer of ``x`` with ``s - 1``), or ``"auto"``.
    """
    if s < 0:
        raise InputError("s must be non-negative")
    attempted = g.order ** s
    if attempted > budget:
        raise BudgetExceeded(f"{attempted} tuples exceed the budget {budget}", attempted=attempted)
    if method == "auto":
        method = "naive" if attempted <= NAIVE_TUPLE_LIMIT else "chain"
    if method == "naive":
        return _count_naive(g, s)
    if method == "chain":
        return _count_chain(g, s)
    raise InputError(f"unknown method {method!r}")


def _count_naive(g: Group, s: int) -> int:
    if s == 0:
        return 1
    n = g.order
    commute = g.table == g.table.T
    tuples = [(x,) for x in range(n)]
    for _ in range(s - 1):
        tuples = [t + (y,) for t in tuples
                  for y in np.nonzero(np.all(commute[list(t)], axis=0))[0]]
    arr = np.array(tuples, dtype=np.int64)
    weights = n ** np.arange(s, dtype=np.int64)
    conj = g._conj
    canon = None
    for h in range(n):
        codes = conj[h][arr] @ weights
        canon = codes if canon is None else np.minimum(canon, codes)
    return int(np.unique(canon).size)


def _count_chain(g: Group, s: int) -> int:
    if s == 0:
        return 1
    classes = conjugacy_classes(g)
    if s == 1:
        return len(classes)
    if g.is_abelian:
        return g.order ** s
    total = 0
    for cls in classes:
        cent = g.centralizer(cls[0]).as_group()
        total += _count_chain(cent, s - 1)
    return total


def abelian_invariants(g: Group) -> tuple[int, ...]:
    """Elementary divisors (prime-power cyclic orders, ascending) of an abelian group."""
    if not g.is_abelian:
        raise InputError("abelian_invariants needs an abelian group")
    n = g.order
    out = []
    m = n
    p = 2
    primes = []
    while m > 1:
        if m % p == 0:
            primes.append(p)
            while m % p == 0:
                m //= p
        p += 1
    for p in primes:
        # rank_k = log_p #{x : x^(p^k) = 1}
        ranks = [0]
        k = 1
        pk = p
        while True:
            count = int(np.count_nonzero(g.power_map(pk) == 0))
            r = round(np.log(count) / np.log(p))
            sylow = n
            while sylow % p == 0:
                sylow //= p
            ranks.append(r)
            if p ** r == n // sylow:
                break
            k += 1
            pk *= p
        at_least = [ranks[j] - ranks[j - 1] for j in range(1, len(ranks))] + [0]
        for j in range(1, len(at_least)):
            out.extend([p ** j] * (at_least[j - 1] - at_least[j]))
    return tuple(sorted(out))


def group_type(g: Group) -> tuple:
    """Abelian invariants when abelian, otherwise a coarse descriptor."""
    if g.is_abelian:
        return abelian_invariants(g)
    return ("nonabelian", g.order, len(conjugacy_classes(g)), g.exponent)
