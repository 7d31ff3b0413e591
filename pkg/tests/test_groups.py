import json
import random

import numpy as np
import pytest

from moravak.errors import (
    BudgetExceeded,
    InconsistentPresentation,
    InputError,
    InvalidAction,
    SizeLimit,
    UnsupportedRule,
)
from moravak.groups import (
    ConjugationRule,
    Group,
    GroupSpec,
    Subgroup,
    build_family_group,
    build_group,
    commuting_tuple_class_count,
    conjugacy_classes,
    cyclic_group,
    direct_product,
    family_spec,
    fingerprint,
    g36_line_bundles,
    group_from_json,
    group_type,
    induce_character,
    is_isomorphic,
    quotient,
    spec_to_json,
    subgroup_generated,
)
from moravak.groups.characters import Character, cyclotomic, cyclotomic_normal_form

import oracles


def relabel(g: Group, rng) -> Group:
    """Same group with element indices shuffled (identity stays at 0)."""
    perm = [0] + rng.sample(range(1, g.order), g.order - 1)
    inv = np.argsort(perm)
    table = inv[g.table[np.ix_(perm, perm)]]
    gens = {k: int(inv[v]) for k, v in g.generator_indices.items()}
    return Group(table, generator_indices=gens)


# -- construction -------------------------------------------------------------------

def test_cyclic_spec_is_addition_mod_4():
    g = build_group(GroupSpec((("g", 4),)))
    assert g.order == 4
    x = g.generator("g")
    assert [g.power(x, k) for k in range(4)] == [0, x, g.mul(x, x), g.inv(x)]
    assert g.is_abelian


def test_dihedral_has_five_classes(d8):
    sizes = sorted(len(c) for c in conjugacy_classes(d8))
    assert sizes == oracles.D8_CLASS_SIZES


def test_g36_matches_hand_written_multiplication(g36):
    t = oracles.g36_table()
    assert sorted(len(c) for c in conjugacy_classes(g36)) == oracles.brute_force_classes(t)
    ours = subgroup_generated(g36, [g36.generator("a"), g36.generator("b")])
    assert ours.order == 16


def test_g36_structure(g36):
    assert g36.order == 32
    z = subgroup_generated(g36, g36.center)
    assert group_type(z.as_group()) == (2, 2)
    assert group_type(quotient(g36, z)) == (2, 2, 2)
    a, b, c = (g36.generator(x) for x in "abc")
    h = subgroup_generated(g36, [b, g36.mul(a, a), c])
    assert h.order == 16 and h.as_group().is_abelian
    assert group_type(h.as_group()) == (2, 2, 4)
    assert subgroup_generated(g36, [a]).order == 4


def test_g36_relations_hold(g36):
    a, b, c = (g36.generator(x) for x in "abc")
    assert g36.power(a, 4) == g36.power(b, 4) == g36.power(c, 2) == 0
    assert g36.mul(b, c) == g36.mul(c, b)
    assert g36.conjugate(b, a) == g36.inv(b)
    assert g36.conjugate(a, c) == g36.inv(a)


def test_axioms_on_corpus(g36, d8):
    corpus = [g36, d8, build_family_group(2, 3, 0, 0, 3), build_family_group(3, 7, 0, 0, 7),
              direct_product(d8, cyclic_group(2)), cyclic_group(8)]
    for g in corpus:
        g.check_axioms()
        sizes = [len(c) for c in conjugacy_classes(g)]
        assert sum(sizes) == g.order
        assert all(g.order % k == 0 for k in sizes)


def test_inconsistent_power_rule_is_rejected():
    # b^a = b^2 is not an automorphism of C_4
    spec = GroupSpec((("b", 4), ("a", 2)), (ConjugationRule("b", "a", "b^2"),))
    with pytest.raises(InconsistentPresentation):
        build_group(spec)


def test_rule_image_must_use_earlier_generators():
    with pytest.raises(UnsupportedRule):
        GroupSpec((("b", 4), ("a", 2)), (ConjugationRule("b", "a", "a*b"),))


def test_orders_must_be_prime_powers():
    with pytest.raises(InputError):
        GroupSpec((("g", 6),))


def test_undeclared_generator_in_rule():
    with pytest.raises(InputError):
        GroupSpec((("b", 4),), (ConjugationRule("b", "q", "b^3"),))


# -- family ---------------------------------------------------------------------------

def test_family_identity_action_is_abelian():
    g = build_family_group(2, 1, 0, 0, 1)
    assert g.order == 32 and g.is_abelian
    assert group_type(g) == (2, 4, 4)


def test_family_minus_identity_is_nonabelian():
    g = build_family_group(3, 7, 0, 0, 7)
    assert g.order == 128 and not g.is_abelian


def test_family_even_determinant_rejected():
    with pytest.raises(InvalidAction):
        build_family_group(2, 2, 0, 0, 1)


def test_family_non_involution_rejected():
    with pytest.raises(InvalidAction):
        family_spec(2, (1, 1, 0, 1))


# -- products, subgroups --------------------------------------------------------------

def test_direct_products():
    c2 = cyclic_group(2)
    assert group_type(direct_product(c2, c2)) == (2, 2)
    h = direct_product(cyclic_group(4), direct_product(c2, c2))
    assert h.order == 16 and group_type(h) == (2, 2, 4)


def test_direct_product_class_count(d8):
    g = direct_product(d8, cyclic_group(2))
    assert g.order == 16 and len(conjugacy_classes(g)) == 10


def test_direct_product_size_limit():
    with pytest.raises(SizeLimit):
        direct_product(cyclic_group(64), cyclic_group(256))


def test_trivial_subgroup(g36):
    sub = subgroup_generated(g36, [0])
    assert sub.order == 1 and sub.index == 32
    assert len(sub.coset_reps) == 32


def test_subgroup_coset_reps_are_minimal(g36):
    h = subgroup_generated(g36, [g36.generator("b")])
    assert len(h.coset_reps) * h.order == g36.order
    members = set(h.element_indices)
    for t in h.coset_reps:
        coset = {g36.mul(t, x) for x in members}
        assert t == min(coset)


# -- commuting tuples -----------------------------------------------------------------

@pytest.mark.parametrize("s", [1, 2, 3])
def test_g36_chi_matches_oracle(g36, s):
    assert commuting_tuple_class_count(g36, s) == oracles.G36_CHI[s]
    assert oracles.brute_force_chi(oracles.g36_table(), s) == oracles.G36_CHI[s]


@pytest.mark.parametrize("method", ["naive", "chain"])
def test_chi_methods_agree(g36, d8, method):
    assert commuting_tuple_class_count(g36, 2, method=method) == 184
    assert commuting_tuple_class_count(d8, 1, method=method) == 5


@pytest.mark.parametrize("s", [1, 2, 3])
def test_chi_of_abelian_is_power(s):
    g = direct_product(cyclic_group(4), cyclic_group(2))
    assert commuting_tuple_class_count(g, s) == 8 ** s


def test_chi_budget_reports_attempted(g36):
    with pytest.raises(BudgetExceeded) as info:
        commuting_tuple_class_count(g36, 3, budget=1000)
    assert info.value.attempted == 32 ** 3


# -- characters ------------------------------------------------------------------------

def test_cyclotomic_polynomials():
    assert cyclotomic(1) == (-1, 1)
    assert cyclotomic(4) == (1, 0, 1)
    assert cyclotomic(8) == (1, 0, 0, 0, 1)
    # i + (-i) = 0 in Q(zeta_4)
    assert cyclotomic_normal_form([1, 3], 4) == (0, 0)


def test_induced_lambda_vanishes_at_b(g36):
    chars = g36_line_bundles(g36)
    ind = induce_character(chars["lambda"])
    b = g36.generator("b")
    assert ind.is_zero_at(b)
    assert ind.degree() == 2
    assert ind.is_class_function()


def test_line_bundle_values(g36):
    chars = g36_line_bundles(g36)
    a, b, c = (g36.generator(x) for x in "abc")
    a2 = g36.mul(a, a)
    assert chars["lambda"](b) == pytest.approx(1j)
    assert chars["nu"](a2) == pytest.approx(-1)
    assert chars["mu"](c) == pytest.approx(-1)
    assert chars["alpha"](b) == pytest.approx(-1) and chars["alpha"](a) == pytest.approx(1)
    assert chars["beta"](c) == pytest.approx(-1)
    assert chars["gamma"](a) == pytest.approx(-1)
    for chi in chars.values():
        assert chi.is_multiplicative()


def test_induced_trivial_is_permutation_character(g36):
    a, b, c = (g36.generator(x) for x in "abc")
    h = subgroup_generated(g36, [b, g36.mul(a, a), c])
    ind = induce_character(Character.trivial(h))
    for x in range(g36.order):
        expected = 2 if x in h else 0
        assert ind.value(x) == pytest.approx(expected)
    assert ind.degree() == h.index


def test_non_homomorphism_rejected(g36):
    b = g36.generator("b")
    h = subgroup_generated(g36, [b])
    with pytest.raises(InputError):
        Character.from_generators(h, 4, {b: 2, g36.mul(b, b): 1})


# -- fingerprints and isomorphism ------------------------------------------------------

def test_fingerprint_separates_c4_and_klein():
    c2 = cyclic_group(2)
    assert fingerprint(cyclic_group(4)) != fingerprint(direct_product(c2, c2))
    assert not is_isomorphic(cyclic_group(4), direct_product(c2, c2))


def test_g36_fingerprint(g36):
    fp = fingerprint(g36)
    assert fp.center == (2, 2) and fp.central_quotient == (2, 2, 2)
    assert fp.order == 32 and len(fp.class_sizes) == 14


def test_fingerprint_survives_relabeling(g36, d8):
    rng = random.Random(7)
    for g in (g36, d8, build_family_group(2, 1, 2, 0, 3)):
        ref = fingerprint(g)
        for _ in range(50):
            assert fingerprint(relabel(g, rng)) == ref


def test_isomorphism_reflexive_and_symmetric(g36, d8):
    rng = random.Random(11)
    corpus = [g36, d8, build_family_group(2, 3, 0, 0, 3), build_family_group(2, 1, 0, 0, 3)]
    for g in corpus:
        h = relabel(g, rng)
        assert is_isomorphic(g, h) and is_isomorphic(h, g)
    for g1 in corpus:
        for g2 in corpus:
            if is_isomorphic(g1, g2):
                assert fingerprint(g1) == fingerprint(g2)
                assert is_isomorphic(g2, g1)


def test_dihedral_two_ways(d8):
    swap = build_family_group(1, 0, 1, 1, 0)
    assert is_isomorphic(d8, swap)


def test_conjugate_actions_have_equal_fingerprints():
    rng = random.Random(3)
    m = (1, 2, 4, 3)
    for _ in range(5):
        while True:
            p = [rng.randrange(8) for _ in range(4)]
            if (p[0] * p[3] - p[1] * p[2]) % 2:
                break
        det_inv = pow((p[0] * p[3] - p[1] * p[2]) % 8, -1, 8)
        pinv = [p[3] * det_inv % 8, -p[1] * det_inv % 8, -p[2] * det_inv % 8, p[0] * det_inv % 8]

        def mul(x, y):
            return [(x[0] * y[0] + x[1] * y[2]) % 8, (x[0] * y[1] + x[1] * y[3]) % 8,
                    (x[2] * y[0] + x[3] * y[2]) % 8, (x[2] * y[1] + x[3] * y[3]) % 8]

        conj = mul(mul(p, m), pinv)
        g1, g2 = build_family_group(3, *m), build_family_group(3, *conj)
        assert fingerprint(g1) == fingerprint(g2)


def test_isomorphism_size_cap():
    big = cyclic_group(512)
    with pytest.raises(SizeLimit):
        is_isomorphic(big, cyclic_group(512))


# -- JSON ------------------------------------------------------------------------------

def test_json_round_trip(g36):
    from moravak.groups import g36_spec
    doc = spec_to_json(g36_spec())
    g = group_from_json(json.loads(json.dumps(doc)))
    assert is_isomorphic(g, g36)


def test_json_kinds():
    assert group_from_json({"type": "cyclic", "order": 8}).order == 8
    g = group_from_json({"type": "family", "n": 2, "matrix": [3, 0, 0, 3]})
    assert g.order == 32
    prod = group_from_json({"type": "product", "factors": [{"type": "cyclic", "order": 2}] * 3})
    assert group_type(prod) == (2, 2, 2)


def test_json_unknown_type():
    with pytest.raises(InputError):
        group_from_json({"type": "sporadic"})


def test_json_missing_file(tmp_path):
    with pytest.raises(InputError):
        group_from_json(tmp_path / "absent.json")


def test_subgroup_from_elements_requires_closure(g36):
    with pytest.raises(InputError):
        Subgroup.from_elements(g36, [0, g36.generator("a")])
