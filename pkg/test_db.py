#!/usr/bin/env python3
"""
Tests for the SQLite report store.
"""

import pytest

import db


@pytest.fixture
def store(monkeypatch, tmp_path):
    monkeypatch.setattr(db, "DB_PATH", str(tmp_path / "reports.db"))
    db.init_db()
    return db


def record(digest, algebra="sl2", command="check"):
    return {
        "command": command,
        "algebra": algebra,
        "dim": 3,
        "theory": None,
        "seed": 1,
        "version": "1.0.0",
        "digest": digest,
        "payload": "{}\n",
    }


def test_insert_is_idempotent(store):
    assert store.insert_report(record("aaa"))
    assert not store.insert_report(record("aaa"))
    assert store.digest_exists("aaa")
    assert not store.digest_exists("bbb")
    assert not store.digest_exists("")
    assert store.count_reports() == 1


def test_batch_insert_counts_new_rows(store):
    store.insert_report(record("a1"))
    added = store.insert_reports([record("a1"), record("a2"), record("a3", algebra="M2")])
    assert added == 2
    assert [r["digest"] for r in store.get_all_reports()] == ["a3", "a2", "a1"]
    assert [r["digest"] for r in store.get_reports_for("sl2")] == ["a1", "a2"]


def test_init_keeps_existing_reports(store):
    """Re-initialising an existing store leaves its rows and columns alone."""
    store.insert_report(record("kept"))
    store.init_db()
    assert store.count_reports() == 1
    row = store.get_all_reports()[0]
    assert (row["theory"], row["seed"]) == (None, 1)
