"""Linear characters of subgroups and their induction, with exact values.

A linear character takes values in the ``m``-th roots of unity and is stored
by exponent: ``chi(g) = zeta_m ** values[g]``.  Induced values are sums of
such roots; they are kept as exponent multisets and compared exactly by
reducing modulo the cyclotomic polynomial.
"""

from __future__ import annotations

import cmath
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ..errors import InputError
from .core import Group, Subgroup, subgroup_generated


@lru_cache(maxsize=None)
def cyclotomic(m: int) -> tuple[int, ...]:
    """Integer coefficients of the m-th cyclotomic polynomial, low degree first."""
    num = [-1] + [0] * (m - 1) + [1]  # x^m - 1
    for d in range(1, m):
        if m % d == 0:
            num = _divide_exact(num, list(cyclotomic(d)))
    return tuple(num)


def _divide_exact(num, den):
    num = list(num)
    q = [0] * (len(num) - len(den) + 1)
    for k in range(len(q) - 1, -1, -1):
        c = num[k + len(den) - 1] // den[-1]
        q[k] = c
        for i, d in enumerate(den):
            num[k + i] -= c * d
    if any(num[: len(den) - 1]):
        raise ArithmeticError("inexact cyclotomic division")
    return q


def cyclotomic_normal_form(exponents, m: int) -> tuple[int, ...]:
    """Coordinates of ``sum(zeta_m ** e)`` in the power basis of Q(zeta_m)."""
    phi = cyclotomic(m)
    deg = len(phi) - 1
    poly = [0] * max(m, deg + 1)
    for e in exponents:
        poly[e % m] += 1
    for k in range(len(poly) - 1, deg - 1, -1):
        c = poly[k]
        if c:
            for i, d in enumerate(phi):
                poly[k - deg + i] -= c * d
    return tuple(poly[:deg])


@dataclass(frozen=True)
class Character:
    """Linear character of ``subgroup``: element index -> exponent mod ``value_order``."""

    subgroup: Subgroup
    value_order: int
    values: dict

    def __post_init__(self):
        if set(self.values) != set(self.subgroup.element_indices):
            raise InputError("a character needs a value on every subgroup element")

    def __call__(self, g: int) -> complex:
        return cmath.exp(2j * cmath.pi * self.values[g] / self.value_order)

    @classmethod
    def from_generators(cls, subgroup: Subgroup, value_order: int,
                        generator_values: dict[int, int]) -> "Character":
        """Extend prescribed values on generators multiplicatively."""
        g = subgroup.parent
        m = value_order
        values = {0: 0}
        frontier = [0]
        gens = list(generator_values.items())
        for x, _ in gens:
            if x not in subgroup:
                raise InputError(f"element {x} does not lie in the subgroup")
        while frontier:
            nxt = []
            for x in frontier:
                for y, e in gens:
                    z = g.mul(x, y)
                    v = (values[x] + e) % m
                    if z in values:
                        if values[z] != v:
                            raise InputError("generator values do not define a homomorphism")
                    else:
                        values[z] = v
                        nxt.append(z)
            frontier = nxt
        if len(values) != subgroup.order:
            raise InputError("given elements do not generate the subgroup")
        chi = cls(subgroup, m, values)
        if not chi.is_multiplicative():
            raise InputError("generator values do not define a homomorphism")
        return chi

    @classmethod
    def trivial(cls, subgroup: Subgroup) -> "Character":
        return cls(subgroup, 1, {x: 0 for x in subgroup.element_indices})

    def is_multiplicative(self) -> bool:
        g = self.subgroup.parent
        elems = np.array(self.subgroup.element_indices)
        vals = np.zeros(g.order, dtype=np.int64)
        vals[elems] = [self.values[int(x)] for x in elems]
        prod = g.table[elems[:, None], elems[None, :]]
        return bool(np.all((vals[prod] - vals[elems][:, None] - vals[elems][None, :])
                           % self.value_order == 0))


@dataclass(frozen=True)
class ClassFunction:
    """Induced character: ``terms[g]`` lists the root-of-unity exponents summed at ``g``."""

    group: Group
    value_order: int
    terms: tuple

    def value(self, g: int) -> complex:
        m = self.value_order
        return sum((cmath.exp(2j * cmath.pi * e / m) for e in self.terms[g]), 0j)

    def exact(self, g: int) -> tuple[int, ...]:
        return cyclotomic_normal_form(self.terms[g], self.value_order)

    def is_zero_at(self, g: int) -> bool:
        return not any(self.exact(g))

    def degree(self) -> int:
        return len(self.terms[0])

    def is_class_function(self) -> bool:
        conj = self.group._conj
        for x in range(self.group.order):
            ref = self.exact(x)
            for y in set(int(v) for v in conj[:, x]):
                if self.exact(y) != ref:
                    return False
        return True


def induce_character(chi: Character) -> ClassFunction:
    """``Ind_H^G chi(g) = sum over coset reps t with t^-1 g t in H of chi(t^-1 g t)``."""
    sub = chi.subgroup
    g = sub.parent
    conj = g._conj
    terms = []
    for x in range(g.order):
        hits = []
        for t in sub.coset_reps:
            y = int(conj[t, x])
            if y in sub:
                hits.append(chi.values[y])
        terms.append(tuple(sorted(Counter(hits).elements())))
    return ClassFunction(g, chi.value_order, tuple(terms))


def g36_line_bundles(g: Group) -> dict[str, Character]:
    """The six linear characters used to name the generators of K(s)*(BG_36).

    ``lambda``, ``mu``, ``nu`` live on ``H = <b, a^2, c>`` with values in
    the 4th roots of unity; ``alpha``, ``beta``, ``gamma`` are pulled back
    from the three projections of ``G/Z = C_2^3``.
    """
    a, b, c = (g.generator(x) for x in "abc")
    a2 = g.mul(a, a)
    h = subgroup_generated(g, [b, a2, c])
    whole = Subgroup.from_elements(g, range(g.order))
    on_h = {
        "lambda": {b: 1, a2: 0, c: 0},
        "mu": {b: 0, a2: 0, c: 2},
        "nu": {b: 0, a2: 2, c: 0},
    }
    on_g = {
        "alpha": {a: 0, b: 1, c: 0},
        "beta": {a: 0, b: 0, c: 1},
        "gamma": {a: 1, b: 0, c: 0},
    }
    out = {k: Character.from_generators(h, 4, v) for k, v in on_h.items()}
    out.update({k: Character.from_generators(whole, 2, v) for k, v in on_g.items()})
    return out
