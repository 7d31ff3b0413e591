"""Groups from power-conjugate presentations.

Generators ``g_1, ..., g_k`` are listed bottom-up: ``<g_1..g_{j-1}>`` is
normal in ``<g_1..g_j>``.  A conjugation rule ``(acted, actor, image)``
means ``actor^-1 * acted * actor = image`` and must have ``acted`` declared
before ``actor``; a missing rule means the two generators commute.  A power
rule ``(g, word)`` sets ``g^order(g) = word`` (default: the identity).

Elements are stored as exponent vectors ``(e_1, ..., e_k)`` standing for the
collected word ``g_k^{e_k} ... g_1^{e_1}``: multiplying two such words moves
later generators to the left, conjugating the earlier letters they pass.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from ..errors import InconsistentPresentation, InputError, InvalidAction, SizeLimit, UnsupportedRule
from .core import MAX_ORDER, Group, cyclic_group, direct_product

_LETTER = re.compile(r"\s*([A-Za-z][A-Za-z0-9_]*)\s*(?:\^\s*(-?\d+))?\s*")


def parse_word(word: str) -> list[tuple[str, int]]:
    """``"a^3*b*c^-1"`` -> ``[("a", 3), ("b", 1), ("c", -1)]``; ``"1"`` is empty."""
    word = word.strip()
    if word in ("", "1"):
        return []
    out = []
    for chunk in word.split("*"):
        m = _LETTER.fullmatch(chunk)
        if not m:
            raise UnsupportedRule(f"cannot parse word {word!r} near {chunk!r}")
        out.append((m.group(1), int(m.group(2)) if m.group(2) else 1))
    return out


def _is_prime_power(n: int) -> bool:
    if n < 2:
        return False
    p = 2
    while n % p:
        p += 1
    while n % p == 0:
        n //= p
    return n == 1


@dataclass(frozen=True)
class ConjugationRule:
    acted: str
    actor: str
    image: str


@dataclass(frozen=True)
class GroupSpec:
    generators: tuple[tuple[str, int], ...]
    conjugation_rules: tuple[ConjugationRule, ...] = ()
    power_rules: tuple[tuple[str, str], ...] = ()
    name: str = ""

    def __post_init__(self):
        names = [n for n, _ in self.generators]
        if len(set(names)) != len(names):
            raise InputError(f"duplicate generator names: {names}")
        for n, order in self.generators:
            if not _is_prime_power(order):
                raise InputError(f"generator {n} has order {order}, not a prime power")
        pos = {n: i for i, n in enumerate(names)}
        seen = set()
        for r in self.conjugation_rules:
            for g in (r.acted, r.actor):
                if g not in pos:
                    raise InputError(f"rule {r} mentions undeclared generator {g!r}")
            if pos[r.acted] >= pos[r.actor]:
                raise UnsupportedRule(f"rule conjugates {r.acted} by {r.actor}; "
                                      f"the acting generator must be declared later")
            if (r.acted, r.actor) in seen:
                raise InputError(f"duplicate rule for {r.acted} under {r.actor}")
            seen.add((r.acted, r.actor))
            for g, _ in parse_word(r.image):
                if g not in pos:
                    raise InputError(f"rule {r} mentions undeclared generator {g!r}")
                if pos[g] >= pos[r.actor]:
                    raise UnsupportedRule(f"image {r.image!r} must only use generators "
                                          f"declared before {r.actor}")
        for g, w in self.power_rules:
            if g not in pos:
                raise InputError(f"power rule for undeclared generator {g!r}")
            for h, _ in parse_word(w):
                if h not in pos or pos[h] >= pos[g]:
                    raise UnsupportedRule(f"power of {g} must be a word in earlier generators")

    @property
    def names(self) -> list[str]:
        return [n for n, _ in self.generators]


def _eval_word(table, gen_idx, word_letters, inv):
    out = 0
    for name, e in word_letters:
        x = gen_idx[name]
        if e < 0:
            x, e = inv[x], -e
        for _ in range(e):
            out = table[out, x]
    return int(out)


def build_group(spec: GroupSpec, max_order: int = MAX_ORDER, verify: bool = True) -> Group:
    """Collect the presentation into a Cayley table, then verify every relation."""
    total = 1
    for _, m in spec.generators:
        total *= m
    if total > max_order:
        raise SizeLimit(f"presentation defines order {total} > cap {max_order}")

    rules = {(r.acted, r.actor): parse_word(r.image) for r in spec.conjugation_rules}
    powers = {g: parse_word(w) for g, w in spec.power_rules}

    table = np.zeros((1, 1), dtype=np.int64)
    vectors: list[tuple] = [()]
    gen_idx: dict[str, int] = {}
    for j, (g, m) in enumerate(spec.generators):
        n = table.shape[0]
        inv = np.argmax(table == 0, axis=1)
        # phi(x) = g^-1 x g on the normal subgroup built so far
        images = {}
        for h in spec.names[:j]:
            letters = rules.get((h, g), [(h, 1)])
            images[h] = _eval_word(table, gen_idx, letters, inv)
        phi = np.zeros(n, dtype=np.int64)
        for x, vec in enumerate(vectors):
            acc = 0
            for h, e in zip(reversed(spec.names[:j]), reversed(vec)):
                for _ in range(e):
                    acc = table[acc, images[h]]
            phi[x] = acc
        if not np.array_equal(phi[table], table[phi[:, None], phi[None, :]]):
            raise InconsistentPresentation(f"conjugation by {g} is not a homomorphism")
        if np.unique(phi).size != n:
            raise InconsistentPresentation(f"conjugation by {g} is not bijective")
        w = _eval_word(table, gen_idx, powers.get(g, []), inv) if j else 0
        if phi[w] != w:
            raise InconsistentPresentation(f"{g} does not commute with its power {g}^{m}")
        phik = [np.arange(n)]
        for _ in range(m):
            phik.append(phi[phik[-1]])
        # phi^m must be conjugation by w = g^m
        inner = table[table[inv[w], :], w]
        if not np.array_equal(phik[m], inner):
            raise InconsistentPresentation(f"{g}^{m} acts inconsistently with its power rule")

        new = np.empty((m * n, m * n), dtype=np.int64)
        for e1 in range(m):
            for e2 in range(m):
                left = phik[e2]
                e = e1 + e2
                if e >= m:
                    e -= m
                    left = table[w, left]
                new[e1 * n:(e1 + 1) * n, e2 * n:(e2 + 1) * n] = table[left, :] + e * n
        table = new
        vectors = [vec + (e,) for e in range(m) for vec in vectors]
        # old indices are unchanged (block e=0); g itself is (e=1, identity)
        gen_idx[g] = n

    group = Group(table, vectors, {n: gen_idx[n] for n in spec.names}, name=spec.name)
    if verify:
        group.check_axioms()
        check_relations(group, spec)
    return group


def check_relations(group: Group, spec: GroupSpec) -> None:
    """Every declared power and conjugation relation holds in the table."""
    for g, m in spec.generators:
        lhs = group.power(group.generator(g), m)
        rhs = group.element(spec_power(spec, g))
        if lhs != rhs:
            raise InconsistentPresentation(f"{g}^{m} relation fails")
    names = spec.names
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            image = next((r.image for r in spec.conjugation_rules
                          if r.acted == a and r.actor == b), a)
            x, y = group.generator(a), group.generator(b)
            if group.mul(group.mul(group.inv(y), x), y) != group.element(image):
                raise InconsistentPresentation(f"{b}^-1 {a} {b} = {image} fails")


def spec_power(spec: GroupSpec, g: str) -> str:
    return next((w for h, w in spec.power_rules if h == g), "1")


# -- named constructions -------------------------------------------------------

def g36_spec() -> GroupSpec:
    """Group number 36 of order 32: b ◁ <b, a> ◁ G with a^-1 b a = b^-1, c a c = a^-1, [b, c] = 1."""
    return GroupSpec(
        generators=(("b", 4), ("a", 4), ("c", 2)),
        conjugation_rules=(
            ConjugationRule("b", "a", "b^3"),
            ConjugationRule("a", "c", "a^3"),
            ConjugationRule("b", "c", "b"),
        ),
        name="G36",
    )


def dihedral_spec(m: int = 4) -> GroupSpec:
    return GroupSpec((("a", m), ("c", 2)), (ConjugationRule("a", "c", f"a^{m - 1}"),),
                     name=f"D{2 * m}")


def family_matrix_valid(n: int, matrix: Sequence[int]) -> bool:
    i, j, k, l = (x % 2**n for x in matrix)
    mod = 2**n
    sq = ((i * i + j * k) % mod, (i * j + j * l) % mod, (k * i + l * k) % mod, (k * j + l * l) % mod)
    return sq == (1, 0, 0, 1) and (i * l - j * k) % 2 == 1


def family_spec(n: int, matrix: Sequence[int]) -> GroupSpec:
    """``(C_{2^n} x C_{2^n}) ⋊ C_2`` with ``c^-1 a c = a^i b^j``, ``c^-1 b c = a^k b^l``."""
    if n < 1:
        raise InvalidAction(f"n must be at least 1, got {n}")
    if len(matrix) != 4:
        raise InvalidAction("the action matrix needs four entries i, j, k, l")
    mod = 2**n
    i, j, k, l = (int(x) % mod for x in matrix)
    if (i * l - j * k) % 2 == 0:
        raise InvalidAction(f"matrix {[i, j, k, l]} is not invertible mod {mod}")
    if not family_matrix_valid(n, (i, j, k, l)):
        raise InvalidAction(f"matrix {[i, j, k, l]} does not square to the identity mod {mod}")
    return GroupSpec(
        generators=(("a", mod), ("b", mod), ("c", 2)),
        conjugation_rules=(
            ConjugationRule("a", "c", f"a^{i}*b^{j}"),
            ConjugationRule("b", "c", f"a^{k}*b^{l}"),
        ),
        name=f"F{n}[{i},{j},{k},{l}]",
    )


def build_family_group(n: int, i: int, j: int, k: int, l: int, **kw) -> Group:
    return build_group(family_spec(n, (i, j, k, l)), **kw)


# -- JSON ----------------------------------------------------------------------

def spec_from_json(doc: dict[str, Any]) -> GroupSpec:
    """Polycyclic or family documents as a ``GroupSpec``."""
    kind = doc.get("type")
    if kind == "polycyclic":
        gens = tuple((g["name"], int(g["order"])) for g in doc["generators"])
        rules = tuple(ConjugationRule(r["acted"], r["actor"], r["image"])
                      for r in doc.get("conjugations", []))
        powers = tuple((r["generator"], r["word"]) for r in doc.get("powers", []))
        return GroupSpec(gens, rules, powers, name=doc.get("name", ""))
    if kind == "family":
        return family_spec(int(doc["n"]), doc["matrix"])
    raise InputError(f"document of type {kind!r} has no GroupSpec form")


def group_from_json(doc: dict[str, Any] | str | Path, max_order: int = MAX_ORDER) -> Group:
    if isinstance(doc, (str, Path)):
        try:
            doc = json.loads(Path(doc).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"cannot read group spec: {exc}") from exc
    if not isinstance(doc, dict) or "type" not in doc:
        raise InputError("group spec must be an object with a 'type' field")
    try:
        kind = doc["type"]
        if kind in ("polycyclic", "family"):
            return build_group(spec_from_json(doc), max_order=max_order)
        if kind == "cyclic":
            return cyclic_group(int(doc["order"]), doc.get("generator", "g"))
        if kind == "product":
            factors = [group_from_json(f, max_order) for f in doc["factors"]]
            if not factors:
                raise InputError("product needs at least one factor")
            out = factors[0]
            for f in factors[1:]:
                out = direct_product(out, f, max_order)
            return out
    except KeyError as exc:
        raise InputError(f"group spec is missing field {exc}") from exc
    raise InputError(f"unknown group spec type {kind!r}")


def spec_to_json(spec: GroupSpec) -> dict:
    doc = {"type": "polycyclic",
           "generators": [{"name": n, "order": m} for n, m in spec.generators],
           "conjugations": [{"acted": r.acted, "actor": r.actor, "image": r.image}
                            for r in spec.conjugation_rules]}
    if spec.power_rules:
        doc["powers"] = [{"generator": g, "word": w} for g, w in spec.power_rules]
    if spec.name:
        doc["name"] = spec.name
    return doc
