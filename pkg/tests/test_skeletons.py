import pytest

from sextic.maps import canonical_code, faces, validate_skeleton
from sextic.pipeline import singularity_set
from sextic.skeletons import (DegreeUnsupported, SexticModel, deformation_classes,
                              enumerate_e7_models_by_insertion, enumerate_skeletons, export_models,
                              find_splitting_markings, host_skeletons, inferred_models,
                              insert_bigon, is_irreducible, normalize_model, remove_bigon)

EXPECTED_COUNTS = {
    "E7+2A4+2A2": (1, 0), "E7+A12": (0, 1), "E7+A10+A2": (2, 0), "E7+2A6": (0, 1),
    "E7+A8+A4": (0, 1), "E7+A6+A4+A2": (2, 0), "E7+E6+A6": (0, 1), "E7+E6+A4+A2": (2, 0),
    "E7+E8+2A2": (1, 0), "E7+2E6": (1, 0), "E7+E8+A4": (0, 1),
}


def test_irreducible_degree6_hosts():
    hosts = host_skeletons()
    assert len(hosts["degree6_irreducible"]) == 3
    assert len(hosts["degree3_one_singular"]) == 2


def test_degree3_without_singular_vertices():
    # the theta graph and the dumbbell with two loops
    found = enumerate_skeletons(3)
    assert len(found) == 2
    assert sorted(sorted(r.black_corners for r in faces(m)) for m in found) == [[1, 1, 4], [2, 2, 2]]


def test_degree_guards():
    with pytest.raises(DegreeUnsupported):
        enumerate_skeletons(4)
    with pytest.raises(DegreeUnsupported):
        enumerate_skeletons(12)


def test_vertex_count_identity():
    for deg in (3, 6, 9):
        for m in enumerate_skeletons(deg):
            rep = validate_skeleton(m)
            assert rep.vertex_count_identity == 2 * deg // 3


def test_reducible_degree6_skeletons_have_markings():
    irreducible = {canonical_code(m) for m in host_skeletons()["degree6_irreducible"]}
    for m in enumerate_skeletons(6):
        assert bool(find_splitting_markings(m)) == (canonical_code(m) not in irreducible)


def test_model_count_and_sets(e7_models):
    assert len(e7_models) == 19
    sets = {str(singularity_set(m)) for m in e7_models}
    assert sets == set(EXPECTED_COUNTS)


def test_two_constructions_agree(e7_models):
    assert [m.code for m in enumerate_e7_models_by_insertion()] == [m.code for m in e7_models]


def test_models_by_number_of_triple_points(e7_models):
    by_t: dict = {}
    for m in e7_models:
        by_t.setdefault(m.t, set()).add(str(singularity_set(m)))
    assert by_t[2] == {"E7+2E6"}
    assert sum(1 for m in e7_models if m.t == 2) == 1
    # E6 points come from monovalent singular blacks, so rows 7 and 8 also have t = 1
    assert by_t[1] == {"E7+E6+A6", "E7+E6+A4+A2", "E7+E8+2A2", "E7+E8+A4"}


def test_deformation_classes(e7_models):
    got = {str(singularity_set(rep)): (nr, nc) for rep, nr, nc in deformation_classes(e7_models)}
    assert got == EXPECTED_COUNTS
    assert sum(nr + 2 * nc for nr, nc in got.values()) == 19


def test_insertion_surgery():
    for m in enumerate_skeletons(6):
        for d in range(m.dart_count):
            new, dist = insert_bigon(m, d)
            assert validate_skeleton(new).degree == validate_skeleton(m).degree + 3
            assert new.face_count() == m.face_count() + 1
            back, _ = remove_bigon(new, dist)
            assert canonical_code(back) == canonical_code(m)


def test_insertion_black_count():
    m = host_skeletons()["degree6_irreducible"][0]
    new, _ = insert_bigon(m, 0)
    assert len(validate_skeleton(new).black_valencies) == 6


def test_insertions_on_host_b_give_two_codes():
    by_host = []
    for host in host_skeletons()["degree6_irreducible"]:
        found: dict = {}
        for d in range(host.dart_count):
            new, dist = insert_bigon(host, d)
            label = str(singularity_set(SexticModel(new, dist), check=False))
            found.setdefault(canonical_code(new), set()).add(label)
        by_host.append(found)
    host_b = [f for f in by_host if {"E7+A12"} in f.values()]
    assert len(host_b) == 1
    assert sorted(map(sorted, host_b[0].values())) == [["E7+A10+A2"], ["E7+A12"]]


def test_splitting_is_inherited_by_insertions():
    for m in enumerate_skeletons(6):
        for d in range(m.dart_count):
            new, _ = insert_bigon(m, d)
            assert is_irreducible(new) == is_irreducible(m)


def test_mirror_codes_pair_up(e7_models):
    codes = {m.code for m in e7_models}
    for m in e7_models:
        assert normalize_model(m.mirror()).code in codes


def test_export_records(e7_models):
    recs = export_models(e7_models)
    assert len(recs) == 19
    assert {r["set"]: tuple(r["classes"]) for r in recs} == EXPECTED_COUNTS
    assert all(set(r) >= {"code", "t", "degree", "bigon", "branch_dart"} for r in recs)


def test_inferred_models_belong_to_the_enumeration(e7_models):
    codes = {m.code for m in e7_models}
    for label, model in inferred_models().items():
        assert str(singularity_set(model)) == label
        assert normalize_model(model).code in codes


def test_bigon_has_two_corners(e7_models):
    for m in e7_models:
        assert m.bigon().black_corners == 2
        assert isinstance(m, SexticModel)
        assert sum(r.black_corners for r in faces(m.skeleton)) == m.skeleton.dart_count
