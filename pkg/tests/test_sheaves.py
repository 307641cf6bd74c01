import pytest

from g2cubics.cubics import OrbitClass
from g2cubics.sheaves import (
    Cover,
    InconsistentSystem,
    NEvsMismatch,
    SIMPLE_ORDER,
    SimpleObject,
    TABLES,
    default_tables,
    evs,
    evs_zero_pattern_ok,
    fiber_cohomology_rank,
    fourier,
    fourier_primal_map,
    geometric_multiplicity_matrix,
    graded_stalk_totals,
    kl_check,
    nevs,
    nevs_derived,
    pushforward_decomposition,
    recomputed_finite_fiber_counts,
    rep_multiplicity_matrix,
    rhoe_equations_satisfied,
    solve_ic_stalk_ranks,
    table_payload,
)

C0, C1, C2, C3 = OrbitClass.C0, OrbitClass.C1, OrbitClass.C2, OrbitClass.C3


def test_fiber_rank_examples():
    assert fiber_cohomology_rank(Cover.RHO1, C0) == 2
    assert fiber_cohomology_rank(Cover.RHO3PP, C0) == 8
    assert fiber_cohomology_rank(Cover.RHO3, C3) == 3
    assert fiber_cohomology_rank(Cover.RHOE, C1) == 3


def test_finite_fibers_recompute_from_line_combinatorics():
    for (cover, orbit), count in recomputed_finite_fiber_counts().items():
        assert fiber_cohomology_rank(cover, orbit) == count


def test_pushforward_decompositions():
    assert pushforward_decomposition(Cover.RHO1) == {
        (SimpleObject.IC1_C0, 0): 1,
        (SimpleObject.IC1_C1, 0): 1,
    }
    assert pushforward_decomposition(Cover.RHO2) == {(SimpleObject.IC1_C2, 0): 1}
    assert pushforward_decomposition(Cover.RHOE) == {
        (SimpleObject.IC1_C3, 0): 1,
        (SimpleObject.ICE_C3, 0): 1,
        (SimpleObject.IC1_C1, 0): 2,
        (SimpleObject.IC1_C0, 0): 1,
    }
    rho3pp = pushforward_decomposition(Cover.RHO3PP)
    assert rho3pp[(SimpleObject.ICR_C3, 0)] == 2
    assert rho3pp[(SimpleObject.IC1_C0, 2)] == 1
    assert rho3pp[(SimpleObject.IC1_C0, -2)] == 1


def test_stalk_solver_examples():
    ranks = solve_ic_stalk_ranks()
    assert ranks[(SimpleObject.IC1_C2, C0)] == 2
    assert ranks[(SimpleObject.ICE_C3, C2)] == 0
    for orbit in OrbitClass:
        assert ranks[(SimpleObject.IC1_C3, orbit)] == 1
    assert [ranks[(SimpleObject.ICR_C3, o)] for o in OrbitClass] == [1, 0, 1, 2]


def test_stalk_solver_matches_graded_totals():
    assert solve_ic_stalk_ranks() == graded_stalk_totals()


def test_stalk_solver_detects_corruption():
    # rho2 has empty fiber over the open orbit; a nonzero rank there makes
    # the system unsolvable
    bad = default_tables()
    bad.fiber_ranks[Cover.RHO2][C3] = 1
    with pytest.raises(InconsistentSystem):
        solve_ic_stalk_ranks(bad)
    # a negative solved rank is also rejected
    bad2 = default_tables()
    bad2.fiber_ranks[Cover.RHO3][C0] = 0
    with pytest.raises(InconsistentSystem):
        solve_ic_stalk_ranks(bad2)
    # a consistent but wrong rank surfaces through the redundant rhoE rows
    bad3 = default_tables()
    bad3.fiber_ranks[Cover.RHO3PP][C1] = 2
    assert solve_ic_stalk_ranks(bad3)[(SimpleObject.ICE_C3, C1)] == 1
    assert not rhoe_equations_satisfied(bad3)


def test_rhoe_equations_are_redundantly_satisfied():
    assert rhoe_equations_satisfied()


def test_geometric_multiplicity_matrix():
    m = geometric_multiplicity_matrix()
    assert m[2] == [2, 1, 1, 0, 0, 0]
    assert m[4] == [1, 0, 1, 0, 1, 0]
    assert all(m[i][i] == 1 for i in range(6))
    for i in range(6):
        for j in range(i + 1, 6):
            assert m[i][j] == 0


def test_rep_multiplicity_rows():
    rep = rep_multiplicity_matrix()
    assert rep[0] == [1, 1, 2, 1, 1, 0]
    assert rep[2] == [0, 0, 1, 1, 1, 0]
    assert rep[5] == [0, 0, 0, 0, 0, 1]


def test_kl_transpose():
    assert kl_check()
    geo = geometric_multiplicity_matrix()
    rep = rep_multiplicity_matrix()
    assert geo == [[rep[j][i] for j in range(6)] for i in range(6)]


def test_kl_sensitivity():
    import dataclasses

    bad_rep = [list(row) for row in rep_multiplicity_matrix()]
    bad_rep[0][2] = 99
    bad = dataclasses.replace(default_tables(), rep_multiplicity=tuple(tuple(r) for r in bad_rep))
    assert not kl_check(bad)


def test_evs_rows():
    assert evs(SimpleObject.IC1_C0) == {0: "one"}
    assert evs(SimpleObject.IC1_C3) == {3: "one"}
    assert evs(SimpleObject.IC1_C1) == {0: "R", 1: "T"}
    assert evs(SimpleObject.ICE_C3) == {0: "E", 1: "T", 2: "one", 3: "E"}


def test_nevs_rows():
    assert nevs(SimpleObject.IC1_C2) == {1: "T", 2: "one"}
    assert nevs(SimpleObject.ICR_C3) == {2: "T", 3: "R"}
    assert nevs(SimpleObject.IC1_C0) == {0: "one"}


def test_nevs_is_derived_by_stratum_twist():
    for obj in SIMPLE_ORDER:
        assert nevs_derived(obj) == nevs(obj)


def test_nevs_mismatch_on_corrupted_evs():
    bad = TABLES.with_flipped_evs(SimpleObject.IC1_C1, 1)
    with pytest.raises(NEvsMismatch):
        nevs(SimpleObject.IC1_C1, bad)


def test_evs_zero_pattern_respects_closure():
    assert evs_zero_pattern_ok()
    for obj in SIMPLE_ORDER:
        for stratum in evs(obj):
            assert stratum <= obj.support.value


def test_fourier_examples():
    dual, primal = fourier(SimpleObject.IC1_C0)
    assert (dual.dual_orbit_index, dual.local_system) == (0, "triv")
    assert primal is SimpleObject.IC1_C3
    _, primal = fourier(SimpleObject.ICR_C3)
    assert primal is SimpleObject.IC1_C1
    _, primal = fourier(SimpleObject.ICE_C3)
    assert primal is SimpleObject.ICE_C3
    _, primal = fourier(SimpleObject.IC1_C2)
    assert primal is SimpleObject.IC1_C2


def test_fourier_is_an_involution():
    mapping = fourier_primal_map()
    for obj, image in mapping.items():
        assert mapping[image] is obj


def test_table_payload_shapes():
    for which in ("stalks", "geomult", "repmult", "evs", "nevs", "fourier"):
        payload = table_payload(which)
        assert len(payload["rows"]) == 6
        assert all(len(row) == len(payload["cols"]) for row in payload["entries"])
    with pytest.raises(ValueError):
        table_payload("nope")


def test_table_payload_evs_entries():
    payload = table_payload("evs")
    row = payload["entries"][SIMPLE_ORDER.index(SimpleObject.ICE_C3)]
    assert row == ["E", "T", "one", "E"]
