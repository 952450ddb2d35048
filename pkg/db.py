"""
structconst SQLite report store.
Single module for all database operations; rendered reports are keyed by
their SHA-256 digest so identical analyses are stored once.
"""

import sqlite3
import os

DB_PATH = os.environ.get(
    "STRUCTCONST_DB",
    os.path.join(os.path.dirname(os.path.abspath(__file__)), "reports.db"),
)

_COLUMNS = ["command", "algebra", "dim", "theory", "seed", "version", "digest", "payload"]

_SCHEMA = """
CREATE TABLE IF NOT EXISTS reports (
    id INTEGER PRIMARY KEY AUTOINCREMENT,
    command TEXT NOT NULL,
    algebra TEXT,
    dim INTEGER,
    theory TEXT,
    seed INTEGER,
    version TEXT,
    digest TEXT NOT NULL,
    payload TEXT NOT NULL,
    created_at TIMESTAMP DEFAULT CURRENT_TIMESTAMP
);
CREATE UNIQUE INDEX IF NOT EXISTS idx_digest ON reports(digest);
CREATE INDEX IF NOT EXISTS idx_algebra ON reports(algebra);
"""


def _connect():
    return sqlite3.connect(DB_PATH)


def init_db():
    """Create the reports table if it doesn't exist."""
    with _connect() as conn:
        conn.executescript(_SCHEMA)


def insert_report(fields: dict) -> bool:
    """INSERT OR IGNORE a single report. Returns True if a row was added."""
    values = [fields.get(c) for c in _COLUMNS]
    placeholders = ", ".join("?" for _ in _COLUMNS)
    col_names = ", ".join(_COLUMNS)
    with _connect() as conn:
        cursor = conn.execute(
            f"INSERT OR IGNORE INTO reports ({col_names}) VALUES ({placeholders})",
            values,
        )
        return cursor.rowcount > 0


def insert_reports(records: list[dict]) -> int:
    """Batch insert reports (INSERT OR IGNORE). Returns the number added."""
    placeholders = ", ".join("?" for _ in _COLUMNS)
    col_names = ", ".join(_COLUMNS)
    rows = [[r.get(c) for c in _COLUMNS] for r in records]
    with _connect() as conn:
        before = conn.total_changes
        conn.executemany(
            f"INSERT OR IGNORE INTO reports ({col_names}) VALUES ({placeholders})",
            rows,
        )
        return conn.total_changes - before


def digest_exists(digest: str) -> bool:
    """Check whether a report with this digest is already stored."""
    if not digest:
        return False
    with _connect() as conn:
        row = conn.execute(
            "SELECT 1 FROM reports WHERE digest = ? LIMIT 1", (digest,)
        ).fetchone()
        return row is not None


def get_all_reports() -> list[dict]:
    """Return every report as a list of dicts, newest first."""
    with _connect() as conn:
        conn.row_factory = sqlite3.Row
        rows = conn.execute("SELECT * FROM reports ORDER BY id DESC").fetchall()
        return [dict(r) for r in rows]


def get_reports_for(algebra: str) -> list[dict]:
    """Return the reports stored for one algebra name, oldest first."""
    with _connect() as conn:
        conn.row_factory = sqlite3.Row
        rows = conn.execute(
            "SELECT * FROM reports WHERE algebra = ? ORDER BY id", (algebra,)
        ).fetchall()
        return [dict(r) for r in rows]


def count_reports() -> int:
    with _connect() as conn:
        return conn.execute("SELECT COUNT(*) FROM reports").fetchone()[0]


# Auto-init on import
init_db()
