"""Isomorphism invariants and exact isomorphism testing for small groups."""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass

import numpy as np

from ..errors import SizeLimit
from .core import Group, conjugacy_classes, group_type, quotient, subgroup_generated

log = logging.getLogger(__name__)

ISO_MAX_ORDER = 256


@dataclass(frozen=True)
class Fingerprint:
    order: int
    exponent: int
    abelianization: tuple
    center: tuple
    central_quotient: tuple
    class_sizes: tuple
    order_histogram: tuple
    squares: int

    def as_dict(self) -> dict:
        return {
            "order": self.order,
            "exponent": self.exponent,
            "abelianization": list(self.abelianization),
            "center": list(self.center),
            "central_quotient": list(self.central_quotient),
            "class_sizes": list(self.class_sizes),
            "order_histogram": [list(x) for x in self.order_histogram],
            "squares": self.squares,
        }


def fingerprint(g: Group) -> Fingerprint:
    cached = g.__dict__.get("_fingerprint")
    if cached is not None:
        return cached
    derived = g.derived_subgroup
    z = subgroup_generated(g, g.center)
    fp = Fingerprint(
        order=g.order,
        exponent=g.exponent,
        abelianization=group_type(quotient(g, derived)),
        center=group_type(z.as_group()),
        central_quotient=group_type(quotient(g, z)),
        class_sizes=tuple(sorted(len(c) for c in conjugacy_classes(g))),
        order_histogram=tuple(sorted(Counter(int(o) for o in g.element_orders).items())),
        squares=int(np.unique(g.power_map(2)).size),
    )
    g.__dict__["_fingerprint"] = fp
    return fp


def _element_invariants(g: Group) -> list[tuple]:
    """Per-element data preserved by every isomorphism."""
    orders = g.element_orders
    conj = g._conj
    class_size = np.array([np.unique(conj[:, x]).size for x in range(g.order)])
    sq = g.power_map(2)
    roots = np.bincount(sq, minlength=g.order)
    in_derived = np.zeros(g.order, dtype=bool)
    in_derived[list(g.derived_subgroup.element_indices)] = True
    return [(int(orders[x]), int(class_size[x]), int(roots[x]), bool(in_derived[x]),
             int(orders[sq[x]]))
            for x in range(g.order)]


def _generating_sequence(g: Group, inv1, counts2):
    """Greedy generators: rarest invariant first, then largest order."""
    members = np.zeros(g.order, dtype=bool)
    members[0] = True
    gens = []
    while not members.all():
        cands = [x for x in range(g.order) if not members[x]]
        x = min(cands, key=lambda y: (counts2.get(inv1[y], 0), -inv1[y][0], y))
        gens.append(x)
        members[list(subgroup_generated(g, gens).element_indices)] = True
    return gens


def find_isomorphism(g1: Group, g2: Group, max_order: int = ISO_MAX_ORDER) -> dict | None:
    """An isomorphism ``g1 -> g2`` as ``{element: image}``, or ``None``."""
    if g1.order != g2.order:
        return None
    if g1.order > max_order:
        raise SizeLimit(f"isomorphism testing is capped at order {max_order}")
    if fingerprint(g1) != fingerprint(g2):
        return None
    n = g1.order
    inv1 = _element_invariants(g1)
    inv2 = _element_invariants(g2)
    if Counter(inv1) != Counter(inv2):
        return None
    by_inv: dict = {}
    for y, key in enumerate(inv2):
        by_inv.setdefault(key, []).append(y)
    counts2 = {k: len(v) for k, v in by_inv.items()}
    gens = _generating_sequence(g1, inv1, counts2)
    t1, t2 = g1.table, g2.table

    def extend(f, finv, domain, assigned):
        # close the domain under right multiplication by assigned generators
        queue = list(domain)
        dom = list(domain)
        head = 0
        while head < len(queue):
            x = queue[head]
            head += 1
            fx = f[x]
            for gx, gy in assigned:
                y = int(t1[x, gx])
                fy = int(t2[fx, gy])
                if f[y] < 0:
                    if finv[fy] >= 0:
                        return None
                    f[y] = fy
                    finv[fy] = y
                    queue.append(y)
                    dom.append(y)
                elif f[y] != fy:
                    return None
        return dom

    def search(level, f, finv, domain, assigned):
        if len(domain) == n:
            return f
        x = gens[level]
        for y in by_inv[inv1[x]]:
            if finv[y] >= 0:
                continue
            f2, finv2 = f.copy(), finv.copy()
            f2[x], finv2[y] = y, x
            dom = extend(f2, finv2, domain + [x], assigned + [(x, y)])
            if dom is None:
                continue
            found = search(level + 1, f2, finv2, dom, assigned + [(x, y)])
            if found is not None:
                return found
        return None

    f0 = np.full(n, -1, dtype=np.int64)
    finv0 = np.full(n, -1, dtype=np.int64)
    f0[0] = finv0[0] = 0
    f = search(0, f0, finv0, [0], [])
    if f is None:
        return None
    return {x: int(f[x]) for x in range(n)}


def is_isomorphic(g1: Group, g2: Group, max_order: int = ISO_MAX_ORDER) -> bool:
    return find_isomorphism(g1, g2, max_order) is not None
