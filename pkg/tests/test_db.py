import json

import pytest

from gsx.analysis import ClassIndex
from gsx.db import IntegrityError, RepresentativeDb, census_db, extended_db, load_db, sidecar_path
from conftest import DATA


def test_census_dbs():
    assert len(census_db(4)) == 2
    assert len(census_db(4, "labeled")) == 4
    assert len(census_db(6)) == 11


def test_save_and_load_roundtrip(tmp_path):
    db = census_db(5)
    db.save(tmp_path / "c5.g6")
    meta = json.loads(sidecar_path(tmp_path / "c5.g6").read_text())
    assert meta["count"] == 4 and meta["n"] == 5 and meta["mode"] == "unlabeled"
    back = load_db(tmp_path / "c5.g6")
    assert back.reps == db.reps
    assert back.provenance["kind"] == "ingested" and back.provenance["sha256"] == db.checksum()


def test_checksum_mismatch(tmp_path):
    path = tmp_path / "c5.g6"
    census_db(5).save(path)
    path.write_text(path.read_text().replace("\n", "\n\n", 1) + "D~{\n")
    with pytest.raises(IntegrityError, match="checksum"):
        load_db(path)


def test_equivalent_pair_is_named(tmp_path):
    path = tmp_path / "bad.g6"
    # star_4 and K_4 are LC-equivalent
    path.write_text("CF\nCR\nC~\n")
    with pytest.raises(IntegrityError, match=r"representatives 1 \(CF\) and 3 \(C~\)"):
        load_db(path)
    path.write_text("CF\nCR\n")
    assert len(load_db(path)) == 2


def test_disconnected_rep_rejected(tmp_path):
    path = tmp_path / "bad.g6"
    path.write_text("CF\nC?\n")
    with pytest.raises(IntegrityError, match="not connected"):
        load_db(path)


def test_labeled_mode_integrity(tmp_path):
    path = tmp_path / "lab.g6"
    # two relabeled stars are distinct labeled orbits only when not LC-related
    path.write_text("CF\nC~\n")
    with pytest.raises(IntegrityError):
        load_db(path, mode="labeled")


def test_extension_matches_census():
    for n in (4, 5, 6):
        ext = extended_db(census_db(n))
        index = ClassIndex(census_db(n + 1))
        assert sorted(index.classify(g) for g in ext.graphs()) == list(range(len(index.reps)))


def test_committed_databases_verify():
    db7 = load_db(DATA / "classes_n7.g6")
    assert db7.reps == census_db(7).reps
    assert len(load_db(DATA / "classes_n8.g6")) == 101


def test_db_mode_validation():
    with pytest.raises(ValueError):
        RepresentativeDb(4, "sideways", [])
