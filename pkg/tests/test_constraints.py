import pytest
from hypothesis import given, strategies as st

from cuspcount.constraints import (Constraint, Family, Ordering, compare,
                                   derive_constraints, enumerate_splits,
                                   family_dimension, normalize_hyperplanes,
                                   nr_key, parse_key, rr2_key, select_pq,
                                   single_key)
from cuspcount.errors import ValidationError


def constraint_strategy(max_codim=5, with_special=True):
    specials = st.none() | st.integers(0, 4) if with_special else st.none()
    return st.builds(
        Constraint.build,
        st.integers(0, 4),
        st.dictionaries(st.integers(2, max_codim), st.integers(1, 5), max_size=3),
        st.integers(0, 3),
        specials,
    )


# -- text form ----------------------------------------------------------------


@given(constraint_strategy())
def test_render_parse_round_trip(c):
    assert Constraint.parse(c.render()) == c


def test_render_omits_zero_counts():
    c = Constraint.build(0, {2: 0, 4: 1})
    assert c.render() == "t=0;h=0;c4=1;s=none"


def test_parse_accepts_any_field_order():
    assert Constraint.parse("s=1;c2=3;t=0;h=0") == Constraint.build(0, {2: 3}, special=1)


@pytest.mark.parametrize("text", [
    "t=0;h=0",                    # no s field
    "t=0;s=none",                 # no h field
    "h=0;s=none",                 # no t field
    "t=0;t=1;h=0;s=none",         # duplicate
    "t=0;h=0;c2=3;c2=4;s=none",   # duplicate c-field
    "t=-1;h=0;s=none",            # negative
    "t=0;h=0;c2=-2;s=none",
    "t=0;h=0;c2=none;s=none",
    "t=0;h=0;x3=1;s=none",        # unknown field
    "t=0;h=0;c0=1;s=none",        # codim 0 incidence
])
def test_parse_rejects(text):
    with pytest.raises(ValidationError):
        Constraint.parse(text)


def test_build_folds_hyperplane_incidences():
    c = Constraint.build(0, {1: 2, 3: 1}, hyperplanes=1)
    assert c.hyperplanes == 3
    assert c.incidences == ((3, 1),)


# -- weights ------------------------------------------------------------------


def test_condition_weights():
    c = Constraint.build(2, {2: 3, 4: 1}, hyperplanes=5, special=2)
    # tangency 2, points 3*(2-1), codim-4 one at weight 3, special 2
    assert c.cond() == 2 + 3 + 3 + 2
    assert c.non_hyperplane_size() == 4
    assert c.rank() == -(3 * 4 + 16)
    assert c.entry_total() == 6


def test_family_dimensions():
    assert family_dimension(Family.R, 2, 3) == 8
    assert family_dimension(Family.N, 2, 3) == 8
    assert family_dimension(Family.S, 2, 3) == 7
    assert family_dimension(Family.R, 3, 3) == 12
    assert family_dimension(Family.NR, 2, 1, 2) == 7
    assert family_dimension(Family.RR2, 3, 1, 1) == 6


# -- keys ---------------------------------------------------------------------


def test_documented_key_parses():
    family, r, degrees, constraints, joint = parse_key("N;r=3;d=4;t=0;h=0;c2=13;s=1")
    assert family is Family.N
    assert (r, degrees) == (3, (4,))
    assert constraints[0] == Constraint.build(0, {2: 13}, special=1)
    assert joint is None


def test_single_key_round_trip():
    delta = Constraint.build(1, {2: 6}, special=0)
    key = single_key(Family.S, 2, 3, delta)
    assert key == "S;r=2;d=3;t=1;h=0;c2=6;s=0"
    assert parse_key(key)[3] == (delta,)


def test_two_component_keys():
    g1 = Constraint.build(0, {2: 1}, special=0)
    g2 = Constraint.build(1, {2: 5})
    key = nr_key(2, 1, g1, 2, g2, 0)
    assert key == "NR;r=2;d1=1;d2=2;G1=[t=0;h=0;c2=1;s=0];G2=[t=1;h=0;c2=5;s=none];c=0"
    assert parse_key(key)[4] == 0


def test_rr2_key_sorts_components():
    g1 = Constraint.build(1, {2: 5})
    g2 = Constraint.build(0, {2: 1})
    a = rr2_key(2, 2, g1, 1, g2, 0, 1)
    b = rr2_key(2, 1, g2, 2, g1, 0, 1)
    assert a == b
    assert a.startswith("RR2;r=2;d1=1;")


@pytest.mark.parametrize("key", [
    "Q;r=2;d=3;t=0;h=0;s=0",                          # unknown family
    "S;r=2;d=3;t=0;c2=1;h=0;s=0",                     # fields out of canonical order
    "S;r=2;d=3;t=0;h=0;c2=0;s=0",                     # zero count spelled out
    "S;d=3;r=2;t=0;h=0;s=0",                          # r and d swapped
    "NR;r=2;d1=1;d2=2;G1=[t=0;h=0;s=0];c=0",          # missing G2
    "RR2;r=2;d1=2;d2=1;G1=[t=1;h=0;s=none];G2=[t=0;h=0;s=none];k=0;l=0",  # unsorted
])
def test_parse_key_rejects_non_canonical(key):
    with pytest.raises(ValidationError):
        parse_key(key)


# -- splits --------------------------------------------------------------------


@given(constraint_strategy(with_special=False).map(lambda c: c.with_hyperplanes(0)))
def test_split_multiplicities_sum(c):
    splits = list(enumerate_splits(c))
    assert sum(m for _, _, m in splits) == 2 ** c.entry_total()
    # every split conserves the conditions
    for g1, g2, _ in splits:
        assert g1.tangency + g2.tangency == c.tangency
        assert g1.cond() + g2.cond() == c.cond()


@given(constraint_strategy(with_special=False).map(lambda c: c.with_hyperplanes(0)))
def test_splits_are_mirror_symmetric(c):
    splits = list(enumerate_splits(c))
    bag = {}
    for g1, g2, m in splits:
        bag[(g1, g2)] = bag.get((g1, g2), 0) + m
    for (g1, g2), m in bag.items():
        assert bag[(g2, g1)] == m


def test_split_requires_bare_set():
    with pytest.raises(ValidationError):
        list(enumerate_splits(Constraint.build(0, {2: 1}, special=0)))
    with pytest.raises(ValidationError):
        list(enumerate_splits(Constraint.build(0, {2: 1}, hyperplanes=1)))


def test_normalize_hyperplanes():
    scale, bare = normalize_hyperplanes(3, Constraint.build(1, {2: 2}, hyperplanes=2))
    assert scale == 9
    assert bare == Constraint.build(1, {2: 2})


# -- priority rules -------------------------------------------------------------


def test_compare_rules_in_order():
    smaller = Constraint.build(1, {2: 3})
    larger = Constraint.build(1, {2: 4})
    assert compare(smaller, larger) is Ordering.LESS          # same t, fewer entries
    more_tangent = Constraint.build(2, {2: 4})
    assert compare(more_tangent, larger) is Ordering.LESS     # more tangencies first
    low_rank = Constraint.build(0, {2: 2})
    high_rank = Constraint.build(0, {3: 1, 2: 1})
    # equal size and tangency, decided by rank
    assert low_rank.rank() > high_rank.rank()
    assert compare(high_rank, low_rank) is Ordering.LESS
    assert compare(low_rank, low_rank) is Ordering.EQUAL_PRIORITY


@given(constraint_strategy(), constraint_strategy())
def test_compare_antisymmetric(a, b):
    flip = {Ordering.LESS: Ordering.GREATER,
            Ordering.GREATER: Ordering.LESS,
            Ordering.EQUAL_PRIORITY: Ordering.EQUAL_PRIORITY}
    assert compare(b, a) is flip[compare(a, b)]


# -- derived sets ----------------------------------------------------------------


def test_derived_sets_without_pq():
    delta = Constraint.build(2, {2: 5}, special=1)
    derived = derive_constraints(3, delta)
    assert derived.tilde == Constraint.build(2, {2: 5})
    assert derived.prime == Constraint.build(2, {2: 6}, special=1)
    assert derived.double_prime == Constraint.build(2, {2: 5}, special=2)
    assert derived.m == 2
    assert derived.p_variant is None and derived.q_variant is None

    sub = derive_constraints(3, delta, l=2)
    assert sub.l_variant == Constraint.build(0, {2: 5}, special=3)
    with pytest.raises(ValidationError):
        derive_constraints(3, delta, l=3)
    with pytest.raises(ValidationError):
        derive_constraints(3, delta, l=0)


def test_derived_sets_with_pq():
    delta = Constraint.build(0, {2: 2, 3: 1}, special=0)
    derived = derive_constraints(3, delta, p=2, q=2)
    assert derived.tilde == Constraint.build(0, {3: 1})
    # p + q = 4 exceeds the ambient codimension 3: empty condition
    assert derived.prime is None
    assert derived.p_variant == Constraint.build(0, {2: 1, 3: 1}, special=2)
    assert derived.q_variant == derived.p_variant

    derived = derive_constraints(5, delta, p=2, q=3)
    assert derived.prime == Constraint.build(0, {2: 1, 5: 1}, special=0)
    assert derived.q_variant == Constraint.build(0, {2: 2}, special=3)


def test_derived_sets_reject_absent_entries():
    delta = Constraint.build(0, {2: 1}, special=0)
    with pytest.raises(ValidationError):
        derive_constraints(2, delta, p=2, q=2)   # only one codim-2 entry
    with pytest.raises(ValidationError):
        derive_constraints(2, delta, p=3, q=2)


def test_select_pq_lowest_codims():
    delta = Constraint.build(0, {4: 1, 2: 1, 3: 2})
    assert select_pq(delta) == (2, 3)
    with pytest.raises(ValidationError):
        select_pq(Constraint.build(0, {2: 1}))
