"""Elimination of implicitly defined classes by reduced fixed-point iteration."""

from __future__ import annotations

import logging
from typing import Sequence

from ..errors import InputError, NoStabilization
from .groebner import buchberger, normal_form
from .ring import Polynomial

log = logging.getLogger(__name__)


def solve_fixed_point(var: str, rhs: Polynomial, reducers: Sequence[Polynomial],
                      max_iter: int = 8) -> Polynomial:
    """Solve ``var = rhs(var)`` modulo the ideal generated by ``reducers``.

    Iterates ``x_{k+1} = NF(rhs(x_k))`` from ``x_0 = NF(rhs(0))``.  The
    recursion only converges when ``var`` enters ``rhs`` through terms that
    are nilpotent modulo the reducers; this is detected by stabilization,
    not assumed.
    """
    ring = rhs.ring
    if var not in ring.index:
        raise InputError(f"{var!r} is not a variable of {ring!r}")
    for r in reducers:
        if var in r.variables():
            raise InputError(f"reducer {r} involves the unknown {var!r}")
    gb = buchberger(reducers) if reducers else None

    def nf(f):
        return normal_form(f, gb) if gb is not None else f

    current = nf(rhs.substitute({var: 0}))
    for k in range(max_iter):
        nxt = nf(rhs.substitute({var: current}))
        if nxt == current:
            log.debug("%s stabilized after %d iterations: %s", var, k + 1, current)
            return current
        current = nxt
    raise NoStabilization(f"{var} did not stabilize within {max_iter} iterations")


def residual(var: str, rhs: Polynomial, solution: Polynomial) -> Polynomial:
    """``solution - rhs(solution)`` before any reduction."""
    return solution - rhs.substitute({var: solution})
