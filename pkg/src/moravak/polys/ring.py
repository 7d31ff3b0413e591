"""Sparse graded polynomials over a prime field.

Monomials are exponent tuples over the ring's variable list; a polynomial is
a dict ``monomial -> coefficient`` with coefficients in ``range(1, p)``.
Every variable carries an integer degree, so homogeneity can be checked even
when a variable (the periodicity generator ``v``) has negative degree.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping

from ..errors import DegreeMismatch, InputError

ORDERS = ("grevlex", "lex")


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


@dataclass(frozen=True)
class CoefficientSpec:
    """Prime ``p``, chromatic height ``s`` and the degree of ``v``."""

    p: int
    s: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise InputError(f"p={self.p} is not prime")
        if self.s < 2:
            raise InputError(f"s={self.s}: height must be at least 2")

    @property
    def v_degree(self) -> int:
        return -2 * (self.p ** self.s - 1)


@lru_cache(maxsize=None)
def _grevlex_heap_key(m):
    # ascending in this key == descending in grevlex
    return (-sum(m),) + m[::-1]


@lru_cache(maxsize=None)
def _lex_heap_key(m):
    return tuple(-e for e in m)


_HEAP_KEYS = {"grevlex": _grevlex_heap_key, "lex": _lex_heap_key}


class PolyRing:
    """Polynomial ring ``F_p[names]`` with per-variable degrees and a term order."""

    def __init__(self, names: Iterable[str], degrees: Iterable[int] | None = None,
                 p: int = 2, order: str = "grevlex"):
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise InputError(f"duplicate variable names in {self.names}")
        self.degrees = tuple(degrees) if degrees is not None else (1,) * len(self.names)
        if len(self.degrees) != len(self.names):
            raise InputError("one degree per variable is required")
        if not is_prime(p):
            raise InputError(f"p={p} is not prime")
        if order not in ORDERS:
            raise InputError(f"unknown monomial order {order!r}; expected one of {ORDERS}")
        self.p = p
        self.order = order
        self.nvars = len(self.names)
        self.index = {name: i for i, name in enumerate(self.names)}
        self.heap_key = _HEAP_KEYS[order]
        self._one = (0,) * self.nvars

    def __eq__(self, other):
        return (isinstance(other, PolyRing) and self.names == other.names
                and self.degrees == other.degrees and self.p == other.p
                and self.order == other.order)

    def __hash__(self):
        return hash((self.names, self.degrees, self.p, self.order))

    def __repr__(self):
        vs = ", ".join(f"{n}:{d}" for n, d in zip(self.names, self.degrees))
        return f"PolyRing(F_{self.p}[{vs}], {self.order})"

    def with_order(self, order: str) -> "PolyRing":
        return PolyRing(self.names, self.degrees, self.p, order)

    def without(self, *names: str) -> "PolyRing":
        keep = [i for i, n in enumerate(self.names) if n not in names]
        return PolyRing([self.names[i] for i in keep], [self.degrees[i] for i in keep],
                        self.p, self.order)

    def degree_of(self, name: str) -> int:
        return self.degrees[self.index[name]]

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return Polynomial(self, {self._one: 1})

    def constant(self, c: int) -> "Polynomial":
        return Polynomial(self, {self._one: c})

    def gen(self, name: str) -> "Polynomial":
        if name not in self.index:
            raise InputError(f"{name!r} is not a variable of {self!r}")
        m = [0] * self.nvars
        m[self.index[name]] = 1
        return Polynomial(self, {tuple(m): 1})

    def gens(self) -> tuple["Polynomial", ...]:
        return tuple(self.gen(n) for n in self.names)

    def monomial(self, exponents: Mapping[str, int] | tuple, coeff: int = 1) -> "Polynomial":
        if isinstance(exponents, Mapping):
            m = [0] * self.nvars
            for name, e in exponents.items():
                m[self.index[name]] = e
            exponents = tuple(m)
        return Polynomial(self, {tuple(exponents): coeff})

    def monomial_degree(self, m) -> int:
        return sum(e * d for e, d in zip(m, self.degrees))

    def monomial_str(self, m) -> str:
        parts = []
        for name, e in zip(self.names, m):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"


def _add_mono(m1, m2):
    return tuple([a + b for a, b in zip(m1, m2)])


class Polynomial:
    """Immutable sparse polynomial; use the ring's constructors to build one."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: Mapping[tuple, int] | None = None):
        p = ring.p
        clean = {}
        if terms:
            for m, c in terms.items():
                c %= p
                if c:
                    clean[tuple(m)] = c
        self.ring = ring
        self.terms = clean

    @classmethod
    def _raw(cls, ring, terms):
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.terms = terms
        return obj

    # -- coercion -------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise InputError(f"ring mismatch: {self.ring!r} vs {other.ring!r}")
            return other
        if isinstance(other, int):
            return self.ring.constant(other)
        return NotImplemented

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.p
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = (out.get(m, 0) + c) % p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.p
        return Polynomial._raw(self.ring, {m: (p - c) % p for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.p
        out: dict = {}
        get = out.get
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _add_mono(m1, m2)
                v = (get(m, 0) + c1 * c2) % p
                if v:
                    out[m] = v
                else:
                    del out[m]
        return Polynomial._raw(self.ring, out)

    __rmul__ = __mul__

    def frobenius(self) -> "Polynomial":
        """``f^p``, computed termwise (coefficients are fixed by Frobenius)."""
        p = self.ring.p
        return Polynomial._raw(self.ring, {tuple(e * p for e in m): c
                                           for m, c in self.terms.items()})

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise InputError(f"exponent must be a non-negative integer, got {e!r}")
        p = self.ring.p
        frob = 0
        while e and e % p == 0:
            e //= p
            frob += 1
        result = self.ring.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        for _ in range(frob):
            result = result.frobenius()
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # -- inspection -----------------------------------------------------
    def monomials(self) -> list[tuple]:
        """Monomials in descending order under the ring's term order."""
        return sorted(self.terms, key=self.ring.heap_key)

    def leading_monomial(self):
        if not self.terms:
            raise InputError("zero polynomial has no leading monomial")
        return min(self.terms, key=self.ring.heap_key)

    def leading_coefficient(self) -> int:
        return self.terms[self.leading_monomial()]

    def degrees(self) -> set[int]:
        """Set of weighted degrees of the monomials present."""
        deg = self.ring.monomial_degree
        return {deg(m) for m in self.terms}

    def degree(self) -> int:
        """Weighted degree; defined for nonzero homogeneous polynomials."""
        ds = self.degrees()
        if len(ds) != 1:
            raise InputError(f"polynomial is not homogeneous (degrees {sorted(ds)})")
        return ds.pop()

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=0)

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def variables(self) -> set[str]:
        used = set()
        for m in self.terms:
            used.update(n for n, e in zip(self.ring.names, m) if e)
        return used

    def monic(self) -> "Polynomial":
        c = self.leading_coefficient()
        return self * pow(c, -1, self.ring.p)

    # -- substitution ---------------------------------------------------
    def substitute(self, bindings: Mapping[str, "Polynomial | int"]) -> "Polynomial":
        """Simultaneously replace variables by polynomials of the same ring."""
        ring = self.ring
        idx = []
        for name, val in bindings.items():
            if name not in ring.index:
                raise InputError(f"cannot bind {name!r}: not a variable of {ring!r}")
            if isinstance(val, int):
                val = ring.constant(val)
            elif val.ring != ring:
                raise InputError(f"binding for {name!r} lives in a different ring")
            if val and val.degrees() != {ring.degree_of(name)}:
                warnings.warn(f"binding {name} -> {val} has degrees {sorted(val.degrees())}, "
                              f"variable has degree {ring.degree_of(name)}",
                              DegreeMismatch, stacklevel=2)
            idx.append((ring.index[name], val))
        if not idx:
            return self
        powers: dict = {}
        out = ring.zero()
        for m, c in self.terms.items():
            rest = list(m)
            term = ring.one()
            for i, val in idx:
                e = m[i]
                if e:
                    key = (i, e)
                    if key not in powers:
                        powers[key] = val ** e
                    term = term * powers[key]
                    rest[i] = 0
            out = out + term * Polynomial._raw(ring, {tuple(rest): c})
        return out

    def specialize(self, name: str, value: int = 1) -> "Polynomial":
        """Set ``name := value`` and drop the variable from the ring."""
        ring = self.ring
        i = ring.index[name]
        target = ring.without(name)
        p = ring.p
        out: dict = {}
        for m, c in self.terms.items():
            nm = m[:i] + m[i + 1:]
            v = (out.get(nm, 0) + c * pow(value, m[i], p)) % p
            if v:
                out[nm] = v
            else:
                out.pop(nm, None)
        return Polynomial._raw(target, out)

    def to_ring(self, target: PolyRing) -> "Polynomial":
        """Re-express in ``target`` by variable name; absent variables must not occur."""
        if target.p != self.ring.p:
            raise InputError("cannot change the characteristic")
        pos = []
        for name in self.ring.names:
            pos.append(target.index.get(name))
        out = {}
        for m, c in self.terms.items():
            nm = [0] * target.nvars
            for e, j, name in zip(m, pos, self.ring.names):
                if e:
                    if j is None:
                        raise InputError(f"variable {name!r} does not exist in {target!r}")
                    nm[j] = e
            out[tuple(nm)] = c
        return Polynomial._raw(target, out)

    # -- printing -------------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        ring = self.ring
        parts = []
        for m in self.monomials():
            c = self.terms[m]
            ms = ring.monomial_str(m)
            if c == 1:
                parts.append(ms)
            elif ms == "1":
                parts.append(str(c))
            else:
                parts.append(f"{c}*{ms}")
        return " + ".join(parts)

    def __repr__(self):
        return f"Polynomial({self})"
