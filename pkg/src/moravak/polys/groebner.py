"""Buchberger's algorithm over F_p with Gebauer-Moeller pair pruning.

The engine works on raw ``{monomial: coeff}`` dicts.  Reduction keeps the
working polynomial in a dict plus a heap of term-order keys (stale entries are
skipped lazily).  Over F_2 every coefficient is 1, so subtracting a basis
multiple degenerates to toggling monomials; that branch is a fast path of the
generic loop and gives identical results.
"""

from __future__ import annotations

import heapq
import logging
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from ..errors import BudgetExceeded, InputError
from .ring import Polynomial, PolyRing

log = logging.getLogger(__name__)

MAX_REDUCTION_STEPS = 10**6
MAX_BASIS_SIZE = 10**4

Infinite = math.inf


def _mask(m):
    bits = 0
    for i, e in enumerate(m):
        if e:
            bits |= 1 << i
    return bits


def _divides(a, b):
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a, b):
    return tuple([x if x > y else y for x, y in zip(a, b)])


def _shift(m, d):
    return tuple([x + y for x, y in zip(m, d)])


def _diff(a, b):
    return tuple([x - y for x, y in zip(a, b)])


class _Reducer:
    """Append-only store of monic polynomials used as reducers."""

    def __init__(self, ring: PolyRing, max_steps: int):
        self.ring = ring
        self.p = ring.p
        self.key = ring.heap_key
        self.lms: list[tuple] = []
        self.masks: list[int] = []
        self.tails: list[list] = []
        self.polys: list[dict] = []
        # monomial -> (divisor index or -1, number of reducers inspected)
        self._divisor_cache: dict = {}
        self.steps = 0
        self.max_steps = max_steps

    def add(self, terms: dict) -> int:
        key = self.key
        lm = min(terms, key=key)
        lc = terms[lm]
        p = self.p
        if lc != 1:
            inv = pow(lc, -1, p)
            terms = {m: (c * inv) % p for m, c in terms.items()}
        self.polys.append(terms)
        self.lms.append(lm)
        self.masks.append(_mask(lm))
        self.tails.append([(m, c) for m, c in terms.items() if m != lm])
        return len(self.lms) - 1

    def divisor(self, m) -> int:
        hit = self._divisor_cache.get(m)
        start = 0
        if hit is not None:
            d, start = hit
            if d >= 0 or start == len(self.lms):
                return d
        mask = _mask(m)
        lms, masks = self.lms, self.masks
        for i in range(start, len(lms)):
            if masks[i] & ~mask == 0 and _divides(lms[i], m):
                self._divisor_cache[m] = (i, 0)
                return i
        self._divisor_cache[m] = (-1, len(lms))
        return -1

    def reduce(self, terms: dict, full: bool = True) -> dict:
        """Remainder of ``terms`` modulo the stored reducers."""
        p, key = self.p, self.key
        f = dict(terms)
        heap = [(key(m), m) for m in f]
        heapq.heapify(heap)
        rem: dict = {}
        lms, tails = self.lms, self.tails
        steps = 0
        while heap:
            _, m = heapq.heappop(heap)
            c = f.pop(m, None)
            if c is None:
                continue
            d = self.divisor(m)
            if d < 0:
                rem[m] = c
                if not full:
                    rem.update(f)
                    break
                continue
            steps += 1
            if self.steps + steps > self.max_steps:
                self.steps += steps
                raise BudgetExceeded(f"reduction step cap {self.max_steps} exceeded",
                                     attempted=self.steps)
            shift = _diff(m, lms[d])
            if p == 2:
                for tm, _ in tails[d]:
                    nm = _shift(tm, shift)
                    if nm in f:
                        del f[nm]
                    else:
                        f[nm] = 1
                        heapq.heappush(heap, (key(nm), nm))
            else:
                for tm, tc in tails[d]:
                    nm = _shift(tm, shift)
                    old = f.get(nm)
                    v = ((old or 0) - c * tc) % p
                    if v:
                        if old is None:
                            heapq.heappush(heap, (key(nm), nm))
                        f[nm] = v
                    elif old is not None:
                        del f[nm]
        self.steps += steps
        return rem

    def s_poly(self, i: int, j: int) -> dict:
        p = self.p
        lcm = _lcm(self.lms[i], self.lms[j])
        si = _diff(lcm, self.lms[i])
        sj = _diff(lcm, self.lms[j])
        out: dict = {}
        for m, c in self.tails[i]:
            out[_shift(m, si)] = c
        for m, c in self.tails[j]:
            nm = _shift(m, sj)
            v = (out.get(nm, 0) - c) % p
            if v:
                out[nm] = v
            else:
                out.pop(nm, None)
        return out


@dataclass
class GroebnerBasis:
    """Reduced, monic Groebner basis of an ideal of ``ring``."""

    ring: PolyRing
    polys: list[Polynomial]
    order: str
    stats: dict = field(default_factory=dict, compare=False)

    def __len__(self):
        return len(self.polys)

    def __iter__(self):
        return iter(self.polys)

    def leading_monomials(self) -> list[tuple]:
        return [g.leading_monomial() for g in self.polys]

    def reduce(self, f: Polynomial) -> Polynomial:
        return normal_form(f, self)

    def contains(self, f: Polynomial) -> bool:
        return normal_form(f, self).is_zero()

    def _reducer(self) -> _Reducer:
        red = getattr(self, "_cached_reducer", None)
        if red is None:
            red = _Reducer(self.ring, max_steps=math.inf)
            for g in self.polys:
                red.add(g.terms)
            self._cached_reducer = red
        return red


def _check_inputs(gens: Sequence[Polynomial]) -> PolyRing:
    if not gens:
        raise InputError("need at least one generator (use [ring.zero()] for the zero ideal)")
    ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise InputError("all generators must live in the same ring")
    return ring


def buchberger(gens: Iterable[Polynomial], order: str | None = None, *,
               max_steps: int = MAX_REDUCTION_STEPS,
               max_basis: int = MAX_BASIS_SIZE) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    S-pairs are processed by ascending total degree of their lcm, ties broken
    by pair index, so the output is deterministic for a fixed input list.
    ``order`` overrides the ring's monomial order.
    """
    gens = list(gens)
    ring = _check_inputs(gens)
    if order is not None and order != ring.order:
        ring = ring.with_order(order)
        gens = [g.to_ring(ring) for g in gens]
    red = _Reducer(ring, max_steps)
    key = ring.heap_key

    inputs = [g.terms for g in gens if g.terms]
    if not inputs:
        return GroebnerBasis(ring, [], ring.order, {"pairs": 0, "steps": 0})
    inputs.sort(key=lambda t: key(min(t, key=key)), reverse=True)

    active: set[int] = set()
    pairs: set[tuple[int, int]] = set()
    queue: list = []

    def push_pairs(new_pairs):
        lms = red.lms
        for i, j in new_pairs:
            if i > j:
                i, j = j, i
            if (i, j) in pairs:
                continue
            pairs.add((i, j))
            heapq.heappush(queue, (sum(_lcm(lms[i], lms[j])), i, j))

    def update(ih):
        # Gebauer-Moeller installation of reducer ih into (active, pairs)
        lms = red.lms
        mh = lms[ih]
        cands = sorted(active)
        crit = []
        for pos, ig in enumerate(cands):
            mg = lms[ig]
            lhg = _lcm(mh, mg)
            coprime = _shift(mh, mg) == lhg
            if coprime:
                crit.append((ig, lhg, True))
                continue
            dominated = False
            for ig2 in cands[pos + 1:]:
                if _divides(_lcm(mh, lms[ig2]), lhg):
                    dominated = True
                    break
            if not dominated:
                for ig2, l2, _ in crit:
                    if _divides(l2, lhg):
                        dominated = True
                        break
            if not dominated:
                crit.append((ig, lhg, False))
        new_pairs = [(ih, ig) for ig, _, coprime in crit if not coprime]
        for pr in list(pairs):
            i, j = pr
            lij = _lcm(lms[i], lms[j])
            if (_divides(mh, lij) and _lcm(lms[i], mh) != lij
                    and _lcm(lms[j], mh) != lij):
                pairs.discard(pr)
        for ig in list(active):
            if _divides(mh, lms[ig]):
                active.discard(ig)
        active.add(ih)
        push_pairs(new_pairs)

    for t in inputs:
        r = red.reduce(t)
        if r:
            update(red.add(r))

    processed = 0
    while queue:
        _, i, j = heapq.heappop(queue)
        if (i, j) not in pairs:
            continue
        pairs.discard((i, j))
        processed += 1
        h = red.reduce(red.s_poly(i, j))
        if h:
            if len(red.lms) >= max_basis:
                raise BudgetExceeded(f"basis size cap {max_basis} exceeded",
                                     attempted=len(red.lms) + 1)
            update(red.add(h))

    basis = _interreduce(ring, [red.polys[i] for i in sorted(active)])
    log.debug("buchberger: %d pairs, %d reduction steps, basis %d",
              processed, red.steps, len(basis))
    return GroebnerBasis(ring, basis, ring.order,
                         {"pairs": processed, "steps": red.steps,
                          "intermediate": len(red.lms)})


def _interreduce(ring: PolyRing, polys: list[dict]) -> list[Polynomial]:
    key = ring.heap_key
    polys = sorted(polys, key=lambda t: key(min(t, key=key)))
    lms = [min(t, key=key) for t in polys]
    keep = []
    for i, m in enumerate(lms):
        if any(j != i and _divides(lms[j], m) and (lms[j] != m or j < i)
               for j in range(len(lms))):
            continue
        keep.append(i)
    out = []
    for i in keep:
        red = _Reducer(ring, max_steps=math.inf)
        for j in keep:
            if j != i:
                red.add(polys[j])
        lm = lms[i]
        tail = {m: c for m, c in polys[i].items() if m != lm}
        reduced = red.reduce(tail)
        reduced[lm] = polys[i][lm]
        out.append(Polynomial(ring, reduced).monic())
    return out


def normal_form(f: Polynomial, gb: GroebnerBasis) -> Polynomial:
    """Fully reduced remainder of ``f``; zero iff ``f`` lies in the ideal."""
    if f.ring != gb.ring:
        if f.ring.names == gb.ring.names and f.ring.p == gb.ring.p:
            f = f.to_ring(gb.ring)
        else:
            raise InputError("polynomial and basis live in different rings")
    if not gb.polys:
        return f
    return Polynomial(gb.ring, gb._reducer().reduce(f.terms))


def reduce_by(f: Polynomial, reducers: Sequence[Polynomial]) -> Polynomial:
    """Normal form of ``f`` against the ideal spanned by ``reducers``."""
    if not reducers:
        return f
    return normal_form(f, buchberger(reducers))


def s_polynomial(f: Polynomial, g: Polynomial) -> Polynomial:
    ring = f.ring
    mf, mg = f.leading_monomial(), g.leading_monomial()
    lcm = _lcm(mf, mg)
    p = ring.p
    cf = pow(f.terms[mf], -1, p)
    cg = pow(g.terms[mg], -1, p)
    left = ring.monomial(_diff(lcm, mf), cf) * f
    right = ring.monomial(_diff(lcm, mg), cg) * g
    return left - right


def audit(gb: GroebnerBasis) -> list[tuple[int, int]]:
    """Pairs whose S-polynomial does not reduce to zero (empty for a valid basis)."""
    bad = []
    polys = gb.polys
    for i in range(len(polys)):
        for j in range(i + 1, len(polys)):
            if not normal_form(s_polynomial(polys[i], polys[j]), gb).is_zero():
                bad.append((i, j))
    return bad


def is_reduced(gb: GroebnerBasis) -> bool:
    """Monic leads, no lead dividing another basis element's monomials."""
    lms = gb.leading_monomials()
    for i, g in enumerate(gb.polys):
        if g.terms[lms[i]] != 1:
            return False
        for j, m in enumerate(lms):
            if j != i and any(_divides(m, t) for t in g.terms):
                return False
    return True


def standard_monomials(gb: GroebnerBasis, limit: int | None = None) -> list[tuple]:
    """Monomials divisible by no leading monomial, in ascending degree order.

    Raises ``BudgetExceeded`` when the quotient is infinite or larger than ``limit``.
    """
    lms = gb.leading_monomials()
    n = gb.ring.nvars
    if quotient_dimension(gb) == Infinite:
        raise BudgetExceeded("quotient is infinite-dimensional")
    start = (0,) * n
    if any(m == start for m in lms):
        return []
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for m in frontier:
            for i in range(n):
                c = m[:i] + (m[i] + 1,) + m[i + 1:]
                if c in seen or any(_divides(l, c) for l in lms):
                    continue
                seen.add(c)
                nxt.append(c)
                if limit is not None and len(seen) > limit:
                    raise BudgetExceeded(f"more than {limit} standard monomials",
                                         attempted=len(seen))
        frontier = nxt
    return sorted(seen, key=lambda m: (sum(m), m))


def quotient_dimension(gb: GroebnerBasis) -> int | float:
    """Number of standard monomials, or ``Infinite``."""
    lms = gb.leading_monomials()
    n = gb.ring.nvars
    if any(sum(m) == 0 for m in lms):
        return 0
    for i in range(n):
        if not any(m[i] > 0 and sum(m) == m[i] for m in lms):
            return Infinite
    return _count_standard(lms, n)


def _count_standard(lms, n):
    # recursive staircase count: split on the exponent of the last variable
    if n == 0:
        return 0 if any(True for _ in lms) else 1
    bound = min(m[-1] for m in lms if sum(m[:-1]) == 0) if lms else None
    total = 0
    for e in range(bound):
        sub = [m[:-1] for m in lms if m[-1] <= e]
        total += _count_standard(_minimalize(sub), n - 1)
    return total


def _minimalize(ms):
    ms = sorted(set(ms), key=sum)
    out = []
    for m in ms:
        if not any(_divides(o, m) for o in out):
            out.append(m)
    return out
