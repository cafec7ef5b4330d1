import pytest

from cuspcount import plane
from cuspcount.constraints import Constraint, Family, single_key
from cuspcount.cusp import CuspEngine
from cuspcount.errors import (ConsistencyError, FinitenessError,
                              OracleDataMissingError, ValidationError)
from cuspcount.nodal import NodalOracle, OracleTable

CUSP_ROW = {3: 24, 4: 2304, 5: 435168, 6: 156153600}
CUSP_ON_LINE_ROW = {3: 12, 4: 864, 5: 130896, 6: 39223584}
CUSP_AT_POINT_ROW = {3: 2, 4: 102, 5: 12024, 6: 2953656}

TANGENT_QUERY = Constraint.build(1, {2: 6}, special=0)


def pts(n, **kw):
    return Constraint.build(0, {2: n}, **kw)


@pytest.fixture
def engine():
    return CuspEngine()


def plant_tangency_table(tmp_path, engine, poison=False):
    """Solve the d=3 one-tangency balance for a consistent stored table."""
    try:
        engine.count(2, 3, TANGENT_QUERY)
    except OracleDataMissingError as exc:
        keys = exc.keys
    lines = []
    for key in keys:
        if key == "N;r=2;d=3;t=1;h=0;c2=7;s=0":
            value = 73 if poison else 72
        elif key == "N;r=2;d=3;t=1;h=0;c2=6;s=1":
            value = 100
        elif key == ("RR2;r=2;d1=1;d2=2;G1=[t=0;h=0;c2=1;s=none];"
                     "G2=[t=1;h=0;c2=5;s=none];k=0;l=0"):
            value = 5
        else:
            value = 0
        lines.append(f"{key} = {value}")
    path = tmp_path / "tangency.oracle"
    path.write_text("\n".join(lines) + "\n")
    table = OracleTable()
    table.load(str(path))
    return table


# -- plane rows through the full recursion ----------------------------------------


def test_cusp_row(engine):
    for d in (3, 4, 5):
        assert engine.count(2, d, pts(3 * d - 2)) == plane.cusp(d) == CUSP_ROW[d]


def test_cusp_on_line_row(engine):
    for d, want in CUSP_ON_LINE_ROW.items():
        assert engine.count(2, d, pts(3 * d - 3, special=1)) == want


def test_cusp_at_point_row(engine):
    for d, want in CUSP_AT_POINT_ROW.items():
        assert engine.count(2, d, pts(3 * d - 4, special=2)) == want


def test_direct_elimination_matches_full_recursion(engine):
    for d in (3, 4):
        for k in (0, 1, 2):
            delta = pts(3 * d - 2 - k, special=k)
            assert engine.count_incidence(2, d, delta) == engine.count(2, d, delta)


def test_direct_elimination_rows(engine):
    for d in (3, 4, 5, 6):
        assert engine.count_incidence(2, d, pts(3 * d - 2)) == CUSP_ROW[d]
        assert engine.count_incidence(
            2, d, pts(3 * d - 3, special=1)) == CUSP_ON_LINE_ROW[d]
        assert engine.count_incidence(
            2, d, pts(3 * d - 4, special=2)) == CUSP_AT_POINT_ROW[d]


# -- gates and validation ----------------------------------------------------------


def test_low_degree_zeros(engine):
    assert engine.count(2, 1, pts(1)) == 0
    assert engine.count(2, 2, pts(4)) == 0
    assert engine.count_incidence(2, 2, pts(4)) == 0


def test_finiteness(engine):
    with pytest.raises(FinitenessError):
        engine.count(2, 3, pts(6))
    with pytest.raises(FinitenessError):
        engine.count_incidence(2, 3, pts(8))


def test_cusp_location_off_space(engine):
    # checked before finiteness: such queries are empty, not ill-posed
    assert engine.count(2, 3, pts(3, special=3)) == 0


def test_codim_beyond_ambient(engine):
    with pytest.raises(ValidationError):
        engine.count(2, 3, Constraint.build(0, {3: 1, 2: 5}))


def test_tangency_rejected_by_direct_elimination(engine):
    with pytest.raises(ValidationError):
        engine.count_incidence(2, 3, Constraint.build(1, {2: 6}))


def test_hyperplane_scaling(engine):
    assert engine.count(2, 3, pts(7, hyperplanes=2)) == 9 * CUSP_ROW[3]
    assert engine.count_incidence(2, 3, pts(7, hyperplanes=1)) == 3 * CUSP_ROW[3]


def test_memoized_on_canonical_key(engine):
    engine.count(2, 4, pts(10))
    key = single_key(Family.S, 2, 4, pts(10, special=0))
    assert key in engine._memo
    assert engine.count(2, 4, pts(10)) == engine._memo[key]


# -- theorem expansion structure --------------------------------------------------


def test_expansion_term_shape(engine):
    terms = engine.expansion(2, 3, TANGENT_QUERY)
    by_family = {}
    for term in terms:
        by_family.setdefault(term.family, []).append(term)
    # split sums run over ordered degree pairs (1,2) and (2,1), 14 splits each
    assert len(by_family[Family.NR]) == 28
    assert len(by_family[Family.RR2]) == 28
    assert sum(t.coefficient for t in by_family[Family.NR]) == -640
    assert sum(t.coefficient for t in by_family[Family.RR2]) == 512
    assert [t.coefficient for t in by_family[Family.S]] == [-9]
    assert sorted(t.coefficient for t in by_family[Family.N]) == [-1, 6]
    for term in by_family[Family.NR]:
        d1, d2 = term.degrees
        assert term.coefficient % (d2 * d2) == 0 and term.coefficient < 0
        assert term.constraints[0].special == 0
        assert term.joint == 0
    for term in by_family[Family.RR2]:
        d1, d2 = term.degrees
        assert term.coefficient % (d1 * d2) == 0 and term.coefficient > 0
        assert term.joint == (0, 0)
    n_terms = sorted(by_family[Family.N], key=lambda t: t.coefficient)
    assert n_terms[0].constraints[0] == Constraint.build(1, {2: 7}, special=0)
    assert n_terms[1].constraints[0] == Constraint.build(1, {2: 6}, special=1)
    s_term = by_family[Family.S][0]
    assert s_term.constraints[0] == Constraint.build(0, {2: 6}, special=1)


def test_missing_stored_counts_are_aggregated(engine):
    with pytest.raises(OracleDataMissingError) as err:
        engine.count(2, 3, TANGENT_QUERY)
    keys = err.value.keys
    assert len(keys) == 44
    assert sum(k.startswith("NR;") for k in keys) == 28
    assert sum(k.startswith("RR2;") for k in keys) == 14
    assert sum(k.startswith("N;") for k in keys) == 2
    assert keys == sorted(keys)


def test_tangency_fixture_recovers_stored_row(tmp_path, engine):
    table = plant_tangency_table(tmp_path, engine)
    solved = CuspEngine(NodalOracle(table=table))
    assert solved.count(2, 3, TANGENT_QUERY) == 60


def test_inconsistent_table_fails_division(tmp_path, engine):
    table = plant_tangency_table(tmp_path, engine, poison=True)
    poisoned = CuspEngine(NodalOracle(table=table))
    with pytest.raises(ConsistencyError):
        poisoned.count(2, 3, TANGENT_QUERY)
