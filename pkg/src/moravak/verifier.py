"""End-to-end checks of explicit K(s)*(BG) presentations.

A presentation is verified at height ``s`` by

1. instantiating every relation template and solving the implicitly defined
   classes by reduced fixed-point iteration,
2. checking that each relation (and each fixed-point residual) is homogeneous
   with ``deg v = -2(p^s - 1)``,
3. setting ``v = 1`` and computing a Groebner basis, whose number of standard
   monomials is the rank of the quotient,
4. comparing that rank with the number of conjugacy classes of commuting
   ``s``-tuples in the attached group, and
5. reducing any further claimed relations to normal form.
"""

from __future__ import annotations

import itertools
import json
import logging
import math
import time
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any, Sequence

from . import __version__
from .dsl import instantiate, names_used, parse
from .errors import InputError, InvalidAction, SizeLimit
from .groups import (
    Group,
    build_family_group,
    commuting_tuple_class_count,
    family_matrix_valid,
    group_from_json,
)
from .groups.iso import ISO_MAX_ORDER, fingerprint, is_isomorphic
from .polys import (
    CoefficientSpec,
    Infinite,
    Polynomial,
    PolyRing,
    buchberger,
    normal_form,
    quotient_dimension,
    residual,
    solve_fixed_point,
    standard_monomials,
)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class RingPresentation:
    """Graded generators, relation templates and the group they describe.

    ``variables`` lists ``(name, degree)``; names that appear as the ``var``
    of an implicit definition are auxiliary and are eliminated before the
    Groebner basis is computed.  ``v`` is always available with degree
    ``-2(p^s - 1)``.
    """

    name: str
    p: int
    variables: tuple[tuple[str, int], ...]
    relations: tuple[str, ...]
    implicit: tuple[tuple[str, str], ...] = ()
    reducers: tuple[str, ...] | None = None
    extra_relations: tuple[str, ...] = ()
    group: dict | None = None

    def __post_init__(self):
        declared = {n for n, _ in self.variables}
        if "v" in declared:
            raise InputError("'v' is reserved for the periodicity generator")
        allowed = declared | {"v"}
        for text in self.all_templates():
            unknown = names_used(parse(text)) - allowed
            if unknown:
                raise InputError(f"template {text!r} uses undeclared names {sorted(unknown)}")
        for var, _ in self.implicit:
            if var not in declared:
                raise InputError(f"implicit variable {var!r} is not declared")

    def all_templates(self) -> list[str]:
        out = list(self.relations) + [eq for _, eq in self.implicit] + list(self.extra_relations)
        return out + list(self.reducers or ())

    @property
    def auxiliary(self) -> tuple[str, ...]:
        return tuple(v for v, _ in self.implicit)

    @property
    def basis_variables(self) -> tuple[str, ...]:
        aux = set(self.auxiliary)
        return tuple(n for n, _ in self.variables if n not in aux)

    def effective_reducers(self) -> tuple[str, ...]:
        if self.reducers is not None:
            return self.reducers
        aux = set(self.auxiliary)
        return tuple(r for r in self.relations if not names_used(parse(r)) & aux)

    def without_relation(self, template: str) -> "RingPresentation":
        if template not in self.relations:
            raise InputError(f"{template!r} is not a relation of {self.name}")
        rels = tuple(r for r in self.relations if r != template)
        return RingPresentation(self.name + "-minus-relation", self.p, self.variables, rels,
                                self.implicit, self.reducers, self.extra_relations, self.group)

    def ring(self, s: int, order: str = "grevlex") -> PolyRing:
        spec = CoefficientSpec(self.p, s)
        names = [n for n, _ in self.variables] + ["v"]
        degrees = [d for _, d in self.variables] + [spec.v_degree]
        return PolyRing(names, degrees, self.p, order)

    def build_group(self) -> Group:
        if self.group is None:
            raise InputError(f"presentation {self.name} has no attached group")
        return group_from_json(self.group)

    # -- JSON ------------------------------------------------------------
    def to_json(self) -> dict:
        doc = {
            "name": self.name,
            "p": self.p,
            "variables": [{"name": n, "degree": d} for n, d in self.variables],
            "relations": list(self.relations),
            "implicit": [{"var": v, "equation": e} for v, e in self.implicit],
        }
        if self.reducers is not None:
            doc["reducers"] = list(self.reducers)
        if self.extra_relations:
            doc["extra_relations"] = list(self.extra_relations)
        if self.group is not None:
            doc["group"] = self.group
        return doc

    @classmethod
    def from_json(cls, doc: dict | str | Path) -> "RingPresentation":
        if isinstance(doc, (str, Path)):
            try:
                doc = json.loads(Path(doc).read_text())
            except (OSError, json.JSONDecodeError) as exc:
                raise InputError(f"cannot read presentation: {exc}") from exc
        try:
            return cls(
                name=doc.get("name", "presentation"),
                p=int(doc["p"]),
                variables=tuple((v["name"], int(v["degree"])) for v in doc["variables"]),
                relations=tuple(doc["relations"]),
                implicit=tuple((i["var"], i["equation"]) for i in doc.get("implicit", [])),
                reducers=tuple(doc["reducers"]) if "reducers" in doc else None,
                extra_relations=tuple(doc.get("extra_relations", [])),
                group=doc.get("group"),
            )
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed presentation document: {exc}") from exc


def g36_presentation() -> RingPresentation:
    """The ring K(s)*(BG_36) at p = 2 with its group attached."""
    text = resources.files("moravak").joinpath("data/g36.json").read_text()
    return RingPresentation.from_json(json.loads(text))


def abelian_presentation(exponents: Sequence[int], p: int = 2) -> RingPresentation:
    """K(s)* of the product of cyclic groups of orders ``p^n`` for ``n`` in ``exponents``."""
    if not exponents or any(n < 1 for n in exponents):
        raise InputError("need at least one positive exponent")
    names = [f"u{k + 1}" for k in range(len(exponents))]
    rels = tuple(f"{u}^(p^({n}*s))" for u, n in zip(names, exponents))
    group = {"type": "product",
             "factors": [{"type": "cyclic", "order": p ** n, "generator": f"g{k + 1}"}
                         for k, n in enumerate(exponents)]}
    label = "x".join(f"C{p ** n}" for n in exponents)
    return RingPresentation(label, p, tuple((u, 2) for u in names), rels, group=group)


# -- pipeline --------------------------------------------------------------------

@dataclass
class EliminatedIdeal:
    """Output of ``eliminate``: everything before v is specialized."""

    ring: PolyRing
    relations: list[Polynomial]
    solutions: dict[str, Polynomial]
    residuals: dict[str, Polynomial]
    equations: dict[str, Polynomial]


def eliminate(pres: RingPresentation, s: int, reducer_order: Sequence[int] | None = None) -> EliminatedIdeal:
    """Instantiate templates and solve the implicit definitions, keeping ``v``."""
    spec = CoefficientSpec(pres.p, s)
    ring = pres.ring(s)
    reducers = [instantiate(r, spec, ring) for r in pres.effective_reducers()]
    if reducer_order is not None:
        reducers = [reducers[i] for i in reducer_order]
    solutions: dict[str, Polynomial] = {}
    residuals: dict[str, Polynomial] = {}
    equations: dict[str, Polynomial] = {}
    for var, eq in pres.implicit:
        rhs = instantiate(eq, spec, ring)
        if solutions:
            rhs = rhs.substitute(solutions)
        equations[var] = rhs
        sol = solve_fixed_point(var, rhs, reducers, max_iter=4 * s)
        solutions[var] = sol
        residuals[var] = residual(var, rhs, sol)
    rels = [instantiate(r, spec, ring) for r in pres.relations]
    if solutions:
        rels = [r.substitute(solutions) for r in rels]
    return EliminatedIdeal(ring, rels, solutions, residuals, equations)


def specialize_v(f: Polynomial, pres: RingPresentation, order: str = "grevlex") -> Polynomial:
    target = PolyRing(pres.basis_variables,
                      [d for n, d in pres.variables if n in pres.basis_variables],
                      pres.p, order)
    return f.specialize("v", 1).to_ring(target)


def build_ideal(pres: RingPresentation, s: int, order: str = "grevlex",
                reducer_order: Sequence[int] | None = None) -> list[Polynomial]:
    """Concrete generators of R in the basis variables, with ``v = 1``."""
    elim = eliminate(pres, s, reducer_order)
    return [specialize_v(r, pres, order) for r in elim.relations]


def homogeneity(pres: RingPresentation, s: int, elim: EliminatedIdeal | None = None) -> dict[str, bool]:
    """Relation/residual label -> whether it is homogeneous (before v = 1)."""
    elim = elim or eliminate(pres, s)
    spec = CoefficientSpec(pres.p, s)
    out = {}
    for text in pres.relations:
        out[text] = instantiate(text, spec, elim.ring).is_homogeneous()
    for var, res in elim.residuals.items():
        out[f"residual({var})"] = res.is_homogeneous()
    return out


@dataclass
class VerificationReport:
    presentation: str
    p: int
    s: int
    order: str
    fixed_points: dict[str, str]
    homogeneous: dict[str, bool]
    gb_size: int
    quotient_dimension: int | float
    chi: int | None
    match: bool
    extra_relations: list[dict] = field(default_factory=list)
    standard_monomials: list[str] | None = None
    timings: dict[str, float] = field(default_factory=dict)
    config: dict[str, Any] = field(default_factory=dict)

    def to_dict(self, with_timings: bool = True) -> dict:
        dim = self.quotient_dimension
        doc = {
            "tool": "moravak",
            "version": __version__,
            "config": self.config,
            "presentation": self.presentation,
            "p": self.p,
            "s": self.s,
            "order": self.order,
            "fixed_points": self.fixed_points,
            "homogeneous": self.homogeneous,
            "all_homogeneous": all(self.homogeneous.values()),
            "gb_size": self.gb_size,
            "quotient_dimension": "infinite" if dim == Infinite else dim,
            "chi": self.chi,
            "match": self.match,
            "extra_relations": self.extra_relations,
            "standard_monomials": self.standard_monomials,
        }
        if with_timings:
            doc["timings"] = {k: round(v, 3) for k, v in self.timings.items()}
        return doc

    def to_json(self, with_timings: bool = True) -> str:
        return json.dumps(self.to_dict(with_timings), indent=2, sort_keys=True)


def verify_rank(pres: RingPresentation, s: int, order: str = "grevlex",
                chi: int | None = None, extra: bool = True,
                tuple_budget: int | None = None) -> VerificationReport:
    """Compare the quotient rank with the commuting-tuple class count.

    ``chi`` may be supplied to skip the group computation.  A mismatch is
    reported with the full list of standard monomials when the quotient is
    finite.
    """
    timings = {}
    t0 = time.perf_counter()
    elim = eliminate(pres, s)
    timings["eliminate"] = time.perf_counter() - t0
    homog = homogeneity(pres, s, elim)
    ideal = [specialize_v(r, pres, order) for r in elim.relations]
    t0 = time.perf_counter()
    gb = buchberger(ideal)
    timings["groebner"] = time.perf_counter() - t0
    dim = quotient_dimension(gb)
    if chi is None and pres.group is not None:
        t0 = time.perf_counter()
        kw = {} if tuple_budget is None else {"budget": tuple_budget}
        chi = commuting_tuple_class_count(pres.build_group(), s, **kw)
        timings["chi"] = time.perf_counter() - t0
    match = chi is not None and dim != Infinite and dim == chi
    extras = []
    if extra and pres.extra_relations:
        extras = _extra_report(pres, s, elim, gb, order)
    std = None
    if not match and dim != Infinite:
        std = [gb.ring.monomial_str(m) for m in standard_monomials(gb)]
    fixed = {v: str(sol) for v, sol in elim.solutions.items()}
    report = VerificationReport(
        presentation=pres.name, p=pres.p, s=s, order=order, fixed_points=fixed,
        homogeneous=homog, gb_size=len(gb), quotient_dimension=dim, chi=chi,
        match=match, extra_relations=extras, standard_monomials=std, timings=timings,
        config={"s": s, "order": order, "p": pres.p, "presentation": pres.name},
    )
    if not match:
        log.info("%s at s=%d: quotient dimension %s, chi %s", pres.name, s, dim, chi)
    return report


def _extra_report(pres, s, elim, gb, order):
    spec = CoefficientSpec(pres.p, s)
    out = []
    for text in pres.extra_relations:
        f = instantiate(text, spec, elim.ring)
        if elim.solutions:
            f = f.substitute(elim.solutions)
        nf = normal_form(specialize_v(f, pres, order), gb)
        out.append({"relation": text, "normal_form": str(nf), "zero": nf.is_zero()})
    return out


def verify_extra_relations(pres: RingPresentation, s: int, order: str = "grevlex") -> list[bool]:
    """Whether each additional relation lies in the ideal R."""
    elim = eliminate(pres, s)
    gb = buchberger([specialize_v(r, pres, order) for r in elim.relations])
    return [e["zero"] for e in _extra_report(pres, s, elim, gb, order)]


# -- semidirect family ----------------------------------------------------------------

@dataclass
class FamilyClass:
    representative: tuple[int, int, int, int]
    members: list[tuple[int, int, int, int]]
    fingerprint: dict


@dataclass
class FamilyClassification:
    n: int
    valid_actions: int
    candidates: int
    classes: list[FamilyClass]

    @property
    def count(self) -> int:
        return len(self.classes)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "order": 2 ** (2 * self.n + 1),
            "valid_actions": self.valid_actions,
            "candidates": self.candidates,
            "class_count": self.count,
            "classes": [{"representative": list(c.representative),
                         "members": [list(m) for m in c.members],
                         "fingerprint": c.fingerprint} for c in self.classes],
        }


def _mat_mul(a, b, mod):
    return ((a[0] * b[0] + a[1] * b[2]) % mod, (a[0] * b[1] + a[1] * b[3]) % mod,
            (a[2] * b[0] + a[3] * b[2]) % mod, (a[2] * b[1] + a[3] * b[3]) % mod)


def valid_actions(n: int) -> list[tuple[int, int, int, int]]:
    """All ``(i, j, k, l)`` with ``M^2 = I`` and ``det M`` odd over Z/2^n."""
    mod = 2 ** n
    return [m for m in itertools.product(range(mod), repeat=4) if family_matrix_valid(n, m)]


def conjugacy_orbits(n: int, actions: list) -> list[list]:
    """Group actions into GL_2(Z/2^n)-conjugacy orbits (conjugate actions give isomorphic groups)."""
    mod = 2 ** n
    gl = [m for m in itertools.product(range(mod), repeat=4) if (m[0] * m[3] - m[1] * m[2]) % 2]
    ident = (1, 0, 0, 1)
    inverse = {}
    for m in gl:
        if m in inverse:
            continue
        x = m
        while True:
            y = _mat_mul(x, m, mod)
            if y == ident:
                inverse[m] = x
                inverse[x] = m
                break
            x = y
    remaining = set(actions)
    orbits = []
    for m in actions:
        if m not in remaining:
            continue
        orbit = {_mat_mul(_mat_mul(inverse[q], m, mod), q, mod) for q in gl}
        orbits.append(sorted(orbit))
        remaining -= orbit
    return orbits


def classify_family(n: int, use_conjugacy: bool = True,
                    max_order: int = ISO_MAX_ORDER) -> FamilyClassification:
    """Isomorphism classes of ``(C_{2^n} x C_{2^n}) ⋊ C_2`` over all valid actions.

    With ``use_conjugacy`` the actions are first merged along GL_2 conjugacy
    (always an isomorphism); the remaining candidates are bucketed by
    fingerprint and separated by exact isomorphism tests.
    """
    if n < 1:
        raise InvalidAction(f"n must be at least 1, got {n}")
    if 2 ** (2 * n + 1) > max_order:
        raise SizeLimit(f"order 2^{2 * n + 1} exceeds the isomorphism-test cap {max_order}")
    actions = valid_actions(n)
    groups_of = conjugacy_orbits(n, actions) if use_conjugacy else [[m] for m in actions]
    classes: list[FamilyClass] = []
    reps: list[tuple[Group, FamilyClass]] = []
    for members in groups_of:
        rep = members[0]
        g = build_family_group(n, *rep)
        fp = fingerprint(g)
        for h, cls in reps:
            if fingerprint(h) == fp and is_isomorphic(g, h, max_order):
                cls.members.extend(members)
                break
        else:
            cls = FamilyClass(rep, list(members), fp.as_dict())
            classes.append(cls)
            reps.append((g, cls))
    for cls in classes:
        cls.members.sort()
    log.info("n=%d: %d valid actions, %d candidates, %d classes",
             n, len(actions), len(groups_of), len(classes))
    return FamilyClassification(n, len(actions), len(groups_of), classes)
