import itertools

import pytest

import mackeykit as mk


def test_groups_and_marks():
    c2 = mk.group("C2")
    assert c2.order == 2
    assert c2.class_labels == ["e", "C2"]
    assert mk.table_of_marks(c2) == [[2, 0], [1, 1]]
    assert set(["trivial", "C2", "S3"]) <= set(mk.named_groups())


def test_burnside_ring_against_marks():
    # the ghost map is a ring homomorphism: marks of a product multiply
    for name in ["C2", "C3", "S3", "C2xC2"]:
        g = mk.group(name)
        marks = mk.table_of_marks(g)
        table = mk.burnside_ring(g)
        n = len(marks)
        for i, j in itertools.product(range(n), repeat=2):
            for k in range(n):
                product = sum(table[c][i * n + j] * marks[c][k] for c in range(n))
                assert product == marks[i][k] * marks[j][k]


def test_hom_rank_and_duality():
    s3 = mk.group("S3")
    assert mk.hom_rank(s3, "pt", "pt") == 4
    for label in s3.class_labels:
        assert mk.triangle_is_identity(s3, label)


def test_mackey_and_box_unit():
    g = mk.group("C2")
    a = mk.mackey({"kind": "burnside", "group": "C2"})
    assert mk.levels(a) == {"e": [0], "C2": [0, 0]}
    fp = mk.mackey({"kind": "fixed_point", "group": "C2", "representation": {"trivial": [2]}})
    assert fp.validation_failure() is None
    assert mk.box_unit_invertible(fp)
    assert mk.levels(mk.box(a, fp)) == mk.levels(fp)
    assert a.group == g


def test_errors():
    with pytest.raises(mk.InputError):
        mk.group("X9")
    with pytest.raises(ValueError):
        mk.mackey("{not json")


def test_green_failure_reports_frobenius():
    bad = {
        "kind": "green",
        "group": "C2",
        "mackey": {"kind": "burnside"},
        "tables": {"e": [[1]], "C2": [[3, 1, 1, 0], [-2, 0, 0, 1]]},
        "units": {"e": [1], "C2": [0, 1]},
    }
    failure = mk.green_failure(bad)
    assert failure is not None and "Frobenius" in failure
    assert mk.green_failure({"kind": "burnside_green", "group": "C2"}) is None


def test_tor_and_rel_box():
    ring = {"kind": "fixed_point_green", "group": "C2"}
    z2 = {"kind": "fixed_point", "group": "C2", "representation": {"trivial": [2]}}
    groups = mk.tor(ring, z2, z2, pmax=2)
    assert groups[0]["e"] == [2] and groups[1]["e"] == [2] and groups[2]["e"] == []
    assert mk.rel_box_levels(ring, z2, z2) == groups[0]


def test_spectral_sequence_and_bpq():
    spec = {
        "kind": "tor_skeletal",
        "group": "C2",
        "ring": {"kind": "fixed_point_green"},
        "left": {"kind": "fixed_point", "representation": {"trivial": [2]}},
        "right": {"kind": "fixed_point", "representation": {"trivial": [2]}},
        "pmax": 2,
    }
    ss = mk.spectral_sequence(spec, rmax=3)
    assert ss["consistent"] and ss["converges"]
    assert mk.bpq("trivial")["k0"] == {"e": [0]}
    assert mk.promonoidal_sweep("C2", 1)["failures"] == 0
