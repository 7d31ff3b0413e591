import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from moravak.dsl import (
    Add,
    BinOp,
    IntConst,
    Mul,
    Param,
    Pow,
    Sum,
    Var,
    instantiate,
    names_used,
    parse,
    to_text,
)
from moravak.errors import NegativeExponent, RelationSyntaxError, UnknownName
from moravak.polys import CoefficientSpec, PolyRing

RING = PolyRing(["a", "b", "c", "x1", "x2", "y1", "y2", "T", "v"],
                [2, 2, 2, 2, 4, 2, 4, 4, -6])


def test_parse_power_of_two_to_s():
    assert parse("a^(2^s)") == Pow(Var("a"), BinOp("^", IntConst(2), Param("s")))


def test_parse_nested_sum():
    t = parse("c*(c + x1 + v*sum(i=1..s-1, c^(2^s-2^i) * x2^(2^(i-1))))")
    assert isinstance(t, Mul)
    inner = t.factors[1]
    assert isinstance(inner, Add)
    sums = [f for f in inner.terms[2].factors if isinstance(f, Sum)]
    assert len(sums) == 1 and sums[0].index == "i"


def test_syntax_error_offset():
    with pytest.raises(RelationSyntaxError) as info:
        parse("a^^2")
    assert info.value.offset == 2
    assert "offset 2" in str(info.value)


@pytest.mark.parametrize("bad", ["", "a +", "(a", "a)", "sum(i=1..2 a)", "a $ b", "a^"])
def test_malformed_inputs(bad):
    with pytest.raises(RelationSyntaxError):
        parse(bad)


def test_unknown_names_surface_at_instantiation():
    t = parse("q^2 + a")
    assert names_used(t) == {"q", "a"}
    with pytest.raises(UnknownName):
        instantiate(t, CoefficientSpec(2, 2), RING)


def test_instantiate_examples():
    spec2, spec3 = CoefficientSpec(2, 2), CoefficientSpec(2, 3)
    a, c, x2, v = (RING.gen(n) for n in ("a", "c", "x2", "v"))
    assert instantiate("a^(2^s)", spec2, RING) == a ** 4
    s_c = "v*sum(i=1..s-1, c^(2^s-2^i)*x2^(2^(i-1)))"
    assert instantiate(s_c, spec2, RING) == v * c ** 2 * x2
    assert instantiate(s_c, spec3, RING) == v * (c ** 6 * x2 + c ** 4 * x2 ** 2)


def test_sum_term_count_is_s_minus_one():
    body = "sum(i=1..s-1, c^(2^s-2^i)*x2^(2^(i-1)))"
    for s in (2, 3, 4, 5):
        assert len(instantiate(body, CoefficientSpec(2, s), RING).monomials()) == s - 1


def test_empty_sum_is_zero():
    assert instantiate("sum(i=1..s-2, a)", CoefficientSpec(2, 2), RING) == 0


def test_negative_exponent():
    with pytest.raises(NegativeExponent):
        instantiate("a^(s-3)", CoefficientSpec(2, 2), RING)


def test_minus_is_folded_mod_p():
    r = PolyRing(["a", "b"], p=3)
    assert instantiate("a - b", CoefficientSpec(3, 2), r) == r.gen("a") + 2 * r.gen("b")
    assert instantiate("a - a", CoefficientSpec(3, 2), r) == 0


def test_index_may_not_shadow_variable():
    with pytest.raises(UnknownName):
        instantiate("sum(a=1..2, a)", CoefficientSpec(2, 2), RING)


def test_c_times_t_is_a_monomial(g36_pres):
    assert "c*T" in g36_pres.relations
    for s in (2, 3, 4):
        f = instantiate("c*T", CoefficientSpec(2, s), RING)
        assert f == RING.gen("c") * RING.gen("T")


def test_canonical_corpus_round_trips(g36_pres):
    for text in g36_pres.all_templates():
        assert to_text(parse(text)) == text
        assert parse(to_text(parse(text))) == parse(text)


def test_whitespace_is_insignificant():
    assert parse("a ^ ( 2 ^ s )") == parse("a^(2^s)")


# random ASTs for the printer
names = st.sampled_from(["a", "b", "x2", "T"])
ints = st.integers(0, 9).map(IntConst)
ariths = st.recursive(
    st.one_of(ints, st.sampled_from(["s", "p", "i"]).map(Param)),
    lambda sub: st.builds(BinOp, st.sampled_from("+-*^"), sub, sub),
    max_leaves=5,
)


def polys(depth_leaves=8):
    leaf = st.one_of(names.map(Var), ints)
    return st.recursive(
        leaf,
        lambda sub: st.one_of(
            st.lists(sub, min_size=2, max_size=3).flatmap(
                lambda ts: st.lists(st.sampled_from("+-"), min_size=len(ts) - 1,
                                    max_size=len(ts) - 1).map(lambda sg: Add(tuple(ts), tuple(sg)))),
            st.lists(sub, min_size=2, max_size=3).map(lambda fs: Mul(tuple(fs))),
            st.builds(Pow, sub, ariths),
            st.builds(Sum, st.just("i"), ariths, ariths, sub),
        ),
        max_leaves=depth_leaves,
    )


@settings(max_examples=200, deadline=None)
@given(polys())
def test_printer_round_trip(tree):
    assert parse(to_text(tree)) == tree
