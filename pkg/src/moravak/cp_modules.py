"""Finite-dimensional F_p[C_p]-modules.

A module is a square matrix ``t`` over F_p with ``t^p = 1``.  Since
``t - 1`` is nilpotent, the module is a sum of Jordan blocks of sizes
``1..p``; size ``p`` blocks are free of rank one, size ``1`` blocks are
trivial.  All ranks are exact (row reduction mod p).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import InputError, NotOrderP
from .polys.ring import is_prime


def rank_mod_p(a: np.ndarray, p: int) -> int:
    m = np.array(a, dtype=np.int64) % p
    rows, cols = m.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        m[r] = (m[r] * pow(int(m[r, c]), -1, p)) % p
        others = np.nonzero(m[:, c])[0]
        others = others[others != r]
        if others.size:
            m[others] = (m[others] - np.outer(m[others, c], m[r])) % p
        r += 1
    return r


def matpow_mod(a: np.ndarray, k: int, p: int) -> np.ndarray:
    out = np.eye(a.shape[0], dtype=np.int64)
    base = np.array(a, dtype=np.int64) % p
    while k:
        if k & 1:
            out = (out @ base) % p
        k >>= 1
        if k:
            base = (base @ base) % p
    return out


@dataclass(frozen=True)
class CpModule:
    p: int
    action: np.ndarray

    def __post_init__(self):
        if not is_prime(self.p):
            raise InputError(f"p={self.p} is not prime")
        a = np.array(self.action, dtype=np.int64) % self.p
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise InputError("action must be a square matrix")
        object.__setattr__(self, "action", a)
        if not np.array_equal(matpow_mod(a, self.p, self.p), np.eye(a.shape[0], dtype=np.int64)):
            raise NotOrderP(f"action does not satisfy t^{self.p} = 1")

    @property
    def dim(self) -> int:
        return self.action.shape[0]

    def __eq__(self, other):
        return (isinstance(other, CpModule) and self.p == other.p
                and np.array_equal(self.action, other.action))

    def __hash__(self):
        return hash((self.p, self.action.tobytes()))

    @classmethod
    def trivial(cls, p: int, dim: int) -> "CpModule":
        return cls(p, np.eye(dim, dtype=np.int64))

    @classmethod
    def regular(cls, p: int) -> "CpModule":
        """F_p[C_p] itself: cyclic shift of the basis."""
        return cls(p, np.roll(np.eye(p, dtype=np.int64), 1, axis=0))

    @classmethod
    def jordan_block(cls, p: int, size: int) -> "CpModule":
        if not 1 <= size <= p:
            raise InputError(f"block size must lie in 1..{p}")
        return cls(p, np.eye(size, dtype=np.int64) + np.eye(size, k=1, dtype=np.int64))

    def direct_sum(self, other: "CpModule") -> "CpModule":
        if other.p != self.p:
            raise InputError("modules over different primes")
        a = np.zeros((self.dim + other.dim,) * 2, dtype=np.int64)
        a[:self.dim, :self.dim] = self.action
        a[self.dim:, self.dim:] = other.action
        return CpModule(self.p, a)

    def conjugate(self, basis_change: np.ndarray) -> "CpModule":
        """Same module in another basis: ``P^-1 t P``."""
        p = self.p
        inv = _inverse_mod(basis_change, p)
        return CpModule(p, (inv @ self.action @ np.asarray(basis_change)) % p)

    def nilpotent(self) -> np.ndarray:
        return (self.action - np.eye(self.dim, dtype=np.int64)) % self.p

    def norm(self) -> np.ndarray:
        """The trace operator ``1 + t + ... + t^(p-1)``."""
        p = self.p
        out = np.zeros_like(self.action)
        power = np.eye(self.dim, dtype=np.int64)
        for _ in range(p):
            out = (out + power) % p
            power = (power @ self.action) % p
        return out


def _inverse_mod(a, p):
    a = np.array(a, dtype=np.int64) % p
    n = a.shape[0]
    aug = np.concatenate([a, np.eye(n, dtype=np.int64)], axis=1)
    for c in range(n):
        nz = np.nonzero(aug[c:, c])[0]
        if nz.size == 0:
            raise InputError("basis change is singular mod p")
        piv = c + nz[0]
        aug[[c, piv]] = aug[[piv, c]]
        aug[c] = (aug[c] * pow(int(aug[c, c]), -1, p)) % p
        for r in range(n):
            if r != c and aug[r, c]:
                aug[r] = (aug[r] - aug[r, c] * aug[c]) % p
    return aug[:, n:]


@dataclass(frozen=True)
class Decomposition:
    p: int
    blocks: tuple[int, ...]  # descending Jordan block sizes

    @property
    def free_rank(self) -> int:
        return self.blocks.count(self.p)

    @property
    def trivial_rank(self) -> int:
        # for p = 2 a size-1 block is trivial and size-2 is free
        return self.blocks.count(1)

    @property
    def intermediate(self) -> dict[int, int]:
        return {k: self.blocks.count(k) for k in range(2, self.p) if self.blocks.count(k)}

    @property
    def dim(self) -> int:
        return sum(self.blocks)


def decompose(m: CpModule) -> Decomposition:
    """Jordan type of ``t - 1`` from the ranks of its powers."""
    p = m.p
    nil = m.nilpotent()
    ranks = [m.dim]
    power = np.eye(m.dim, dtype=np.int64)
    for _ in range(p + 1):
        power = (power @ nil) % p
        ranks.append(rank_mod_p(power, p) if m.dim else 0)
    # blocks of size >= k: ranks[k-1] - ranks[k]
    at_least = [ranks[k - 1] - ranks[k] for k in range(1, p + 2)]
    blocks = []
    for k in range(p, 0, -1):
        blocks.extend([k] * (at_least[k - 1] - at_least[k]))
    return Decomposition(p, tuple(blocks))


def cohomology_dims(m: CpModule, max_degree: int) -> list[int]:
    """``dim H^i(C_p; M)`` for ``i = 0..max_degree`` (periodic of period 2 above 0)."""
    p = m.p
    if m.dim == 0:
        return [0] * (max_degree + 1)
    r_nil = rank_mod_p(m.nilpotent(), p)
    r_norm = rank_mod_p(m.norm(), p)
    ker_nil = m.dim - r_nil
    ker_norm = m.dim - r_norm
    out = []
    for i in range(max_degree + 1):
        if i == 0:
            out.append(ker_nil)
        elif i % 2:
            out.append(ker_norm - r_nil)   # ker N / im(t - 1)
        else:
            out.append(ker_nil - r_norm)   # ker(t - 1) / im N
    return out


def tensor_diagonal(m1: CpModule, m2: CpModule) -> CpModule:
    if m1.p != m2.p:
        raise InputError("modules over different primes")
    return CpModule(m1.p, np.kron(m1.action, m2.action) % m1.p)


def is_permutation_module(m: CpModule) -> bool:
    """All Jordan blocks of size 1 or p (mod-p test only)."""
    return all(b in (1, m.p) for b in decompose(m).blocks)


def module_from_json(doc: dict | str | Path) -> CpModule:
    if isinstance(doc, (str, Path)):
        try:
            doc = json.loads(Path(doc).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"cannot read module: {exc}") from exc
    try:
        return CpModule(int(doc["p"]), np.array(doc["matrix"], dtype=np.int64))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed module document: {exc}") from exc


def random_permutation_module(p: int, free: int, trivial: int, rng) -> CpModule:
    """``free`` copies of F_p[C_p] plus ``trivial`` trivial lines, in a random basis."""
    parts = [CpModule.regular(p)] * free + [CpModule.trivial(p, 1)] * trivial
    if not parts:
        return CpModule(p, np.zeros((0, 0), dtype=np.int64))
    m = parts[0]
    for part in parts[1:]:
        m = m.direct_sum(part)
    while True:
        basis = rng.integers(0, p, size=(m.dim, m.dim))
        if rank_mod_p(basis, p) == m.dim:
            return m.conjugate(basis)
