"""Finite p-groups: construction, structure, characters and isomorphism."""

from .build import (
    ConjugationRule,
    GroupSpec,
    build_family_group,
    build_group,
    dihedral_spec,
    family_matrix_valid,
    family_spec,
    g36_spec,
    group_from_json,
    parse_word,
    spec_from_json,
    spec_to_json,
)
from .characters import (
    Character,
    ClassFunction,
    cyclotomic_normal_form,
    g36_line_bundles,
    induce_character,
)
from .core import (
    Group,
    Subgroup,
    abelian_invariants,
    commuting_tuple_class_count,
    conjugacy_classes,
    cyclic_group,
    direct_product,
    group_type,
    quotient,
    subgroup_generated,
)
from .iso import Fingerprint, find_isomorphism, fingerprint, is_isomorphic
