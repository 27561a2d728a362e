"""Building-block table, gluing classifier, explicit equations."""

import pytest

from dpglue.catalog import (GlueScenario, PicardClass, ScenarioError,
                            block_table, building_block, canonical_class,
                            classify_gluing, degree12_catalog,
                            hirzebruch_pairing, mobius_from_pairs,
                            monomial_relation_check, node_matching_check,
                            scenario_report, verify_block,
                            verify_char2_normalization,
                            verify_char3_normalization, verify_degree1,
                            verify_parametrization, DEGREE1_SUBSTITUTIONS)
from dpglue.fields import base_field
from dpglue.glue import glue_data


IDENTITY_IDENT = {"map": [[0, 0], [1, 1], ["inf", "inf"]],
                  "node": 0, "nodeTarget": 0}


# -- lattice -----------------------------------------------------------


def test_fibre_self_intersection_zero():
    A = PicardClass(("F", 2), (1, 0))
    assert hirzebruch_pairing(A, A) == 0


@pytest.mark.parametrize("a", range(0, 6))
def test_case_e_degree(a):
    H = PicardClass(("F", a), (a + 2, 1))
    assert hirzebruch_pairing(H, H) == a + 4


def test_cone_polarization_kills_B():
    a = 3
    H = PicardClass(("F", a), (a, 1))
    B = PicardClass(("F", a), (0, 1))
    assert hirzebruch_pairing(H, B) == 0


def test_canonical_squares():
    assert hirzebruch_pairing(canonical_class(("P2",)),
                              canonical_class(("P2",))) == 9
    for a in range(4):
        K = canonical_class(("F", a))
        assert hirzebruch_pairing(K, K) == 8


# -- blocks ------------------------------------------------------------


def test_case_b_verifies():
    assert verify_block(building_block("b"))


def test_case_d_degree():
    block = building_block("d1", 2)
    assert block.degree == 4 and verify_block(block)


def test_cone_case_resolution_degree():
    block = building_block("c1", 3)
    assert block.degree == 3 and verify_block(block)


def test_degree_table_full_range():
    expected = {"a1": lambda a: 1, "a2": lambda a: 1, "a3": lambda a: 1,
                "b": lambda a: 4, "c0": lambda a: a, "c1": lambda a: a,
                "c2": lambda a: a, "d0": lambda a: a + 2,
                "d1": lambda a: a + 2, "e": lambda a: a + 4}
    for block in block_table(10):
        assert verify_block(block)
        assert block.degree == expected[block.case](block.a)


@pytest.mark.parametrize("bad", [("c0", 3), ("c0", 1), ("c1", 0), ("d0", 2),
                                 ("e", -1), ("a1", 2), ("zz", None)])
def test_illegal_blocks_rejected(bad):
    with pytest.raises(ValueError):
        building_block(*bad)


# -- classification ----------------------------------------------------


def test_single_smooth_conic_is_A():
    scen = GlueScenario(0, [building_block("e", 1)], "A")
    assert classify_gluing(scen) == "A"


def test_two_smooth_conics_is_B():
    scen = GlueScenario(0, [building_block("b"), building_block("e", 0)], "B")
    assert classify_gluing(scen) == "B"


def test_two_planes_degenerate_B():
    scen = GlueScenario(0, [building_block("a1")] * 2, "B")
    assert classify_gluing(scen) == "B-degenerate"


def test_line_pair_cycle_is_C3():
    blocks = [building_block("c1", 2), building_block("c1", 3),
              building_block("d1", 0)]
    scen = GlueScenario(0, blocks, "C", identifications=[IDENTITY_IDENT] * 3)
    assert classify_gluing(scen) == "C3"


def test_two_a2_rejected():
    scen = GlueScenario(0, [building_block("a2")] * 2, "C",
                        identifications=[IDENTITY_IDENT] * 2)
    with pytest.raises(ScenarioError):
        classify_gluing(scen)


def test_two_a3_rejected():
    scen = GlueScenario(0, [building_block("a3")] * 2, "D",
                        derivation=glue_data(0, "1", ["1", "1"]))
    with pytest.raises(ScenarioError):
        classify_gluing(scen)


def test_mixed_natures_rejected():
    scen = GlueScenario(0, [building_block("e", 0), building_block("a3")], "B")
    with pytest.raises(ScenarioError):
        classify_gluing(scen)


def test_case_D_needs_matching_derivation():
    scen = GlueScenario(0, [building_block("c2", 2)], "D",
                        derivation=glue_data(0, "1", ["1", "1"]))
    with pytest.raises(ScenarioError):
        classify_gluing(scen)


# -- node matching -----------------------------------------------------


def test_mobius_determined_by_three_points():
    F = base_field(0)
    mat = mobius_from_pairs(F, [[0, 1], [1, 2], ["inf", "inf"]])  # z -> z+1
    five = (F.from_int(5), F.one)
    img = (mat[0][0] * five[0] + mat[0][1] * five[1],
           mat[1][0] * five[0] + mat[1][1] * five[1])
    assert img[0] / img[1] == F.from_int(6)


def test_matched_nodes_pass():
    scen = GlueScenario(
        0, [building_block("c1", 2)], "C",
        identifications=[{"map": [[0, 1], [1, 2], ["inf", "inf"]],
                          "node": 0, "nodeTarget": 1}],
    )
    ok, problems = node_matching_check(scen)
    assert ok and not problems


def test_translated_node_fails():
    scen = GlueScenario(
        0, [building_block("c1", 2)], "C",
        identifications=[{"map": [[0, 1], [1, 2], ["inf", "inf"]],
                          "node": 0, "nodeTarget": 2}],
    )
    ok, problems = node_matching_check(scen)
    assert not ok and "pole" in problems[0]


def test_self_glued_cone_case():
    scen = GlueScenario(0, [building_block("c1", 2)], "C",
                        identifications=[IDENTITY_IDENT])
    ok, _ = node_matching_check(scen)
    assert ok


# -- reports -----------------------------------------------------------


def test_report_tame_cusp():
    scen = GlueScenario(0, [building_block("c2", 2)], "D",
                        derivation=glue_data(0, "1", ["1"]))
    rep = scenario_report(scen)
    assert rep["gorenstein"] and rep["tame"]
    assert rep["chi"] == 1 and rep["singularity"] == "cusp"


def test_report_wild_char3():
    scen = GlueScenario(3, [building_block("c2", 2)], "D",
                        derivation=glue_data(3, "1/x^3", ["1"]))
    rep = scenario_report(scen)
    assert rep["gorenstein"] and not rep["tame"]
    assert rep["chi"] == -1 and rep["h1"] == 2


def test_report_simple_pole_rejected():
    scen = GlueScenario(0, [building_block("c2", 2)], "D",
                        derivation=glue_data(0, "1/x", ["1"]))
    rep = scenario_report(scen)
    assert not rep["gorenstein"]
    assert rep["singularity"] == "not-gorenstein"


def test_report_records_block_failures_without_throwing():
    scen = GlueScenario(0, [building_block("e", 2), building_block("a3")], "B")
    rep = scenario_report(scen)
    assert rep["case"] is None and not rep["gorenstein"]
    assert rep["errors"]


# -- explicit equations ------------------------------------------------


@pytest.mark.parametrize("p", [0, 2, 3, 5, 7])
@pytest.mark.parametrize("eq", sorted(DEGREE1_SUBSTITUTIONS))
def test_degree1_identities(p, eq):
    assert verify_degree1(p, eq)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_char3_normalization(rng, n):
    h0 = rng.choice([1, 2])
    assert verify_char3_normalization(n, h0)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_char2_normalization(n):
    assert verify_char2_normalization(n)


@pytest.mark.parametrize("p", [3, 5])
def test_monomial_relation(p):
    for n in (1, 2):
        assert monomial_relation_check(p, n)
        assert monomial_relation_check(p, n, h0=p - 1)


def test_parametrization_failure_detected():
    ok = verify_parametrization(
        0, "z^2 - y^3", ("y", "z"),
        {"y": "q", "z": "u2*q + 1", "q": "u2^2"}, ("u2",),
    )
    assert not ok


def test_cyclic_substitution_rejected():
    with pytest.raises(ValueError):
        verify_parametrization(0, "y", ("y",), {"y": "z", "z": "y"}, ())


def test_degree12_catalog_complete():
    entries = degree12_catalog(0)
    assert [e["degree"] for e in entries].count(1) == 3
    assert [e["degree"] for e in entries].count(2) == 6
    for e in entries:
        rep = scenario_report(e["scenario"])
        assert rep["gorenstein"], rep
        if e["verified"] is not None:
            assert e["verified"]
