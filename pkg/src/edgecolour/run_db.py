"""
Run History Database

Keep every benchmark run so algorithms can be compared across sessions.

Schema:
- runs: one row per (algo, stream) run with its headline numbers
- checkpoints: the metrics rows of each run
"""

import json
import os
import sqlite3
from datetime import datetime
from typing import Dict, List, Optional

from .harness import RunMetrics


class RunDatabase:
    """SQLite store for benchmark runs."""

    def __init__(self, db_path: str = None):
        if db_path is None:
            db_path = os.path.join(
                os.path.dirname(__file__),
                '../../data/runs.db'
            )
        directory = os.path.dirname(db_path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        self.db_path = db_path
        self._init_db()

    def _init_db(self):
        """Initialize database schema."""
        conn = sqlite3.connect(self.db_path)
        c = conn.cursor()

        c.execute('''
            CREATE TABLE IF NOT EXISTS runs (
                id INTEGER PRIMARY KEY AUTOINCREMENT,
                run_date TEXT NOT NULL,
                algo TEXT NOT NULL,
                label TEXT,
                capacity INTEGER NOT NULL,
                events INTEGER NOT NULL,
                peak_colour INTEGER,
                recourse INTEGER,
                wall_time REAL,
                ok INTEGER NOT NULL,
                violations INTEGER DEFAULT 0,
                stats TEXT
            )
        ''')

        c.execute('''
            CREATE TABLE IF NOT EXISTS checkpoints (
                id INTEGER PRIMARY KEY AUTOINCREMENT,
                run_id INTEGER NOT NULL,
                step INTEGER NOT NULL,
                live_edges INTEGER,
                current_delta INTEGER,
                alpha_declared INTEGER,
                alpha_measured INTEGER,
                max_colour INTEGER,
                palette_searches INTEGER,
                cascade_recolours INTEGER,
                level_moves INTEGER,
                wall_time REAL,
                FOREIGN KEY (run_id) REFERENCES runs(id),
                UNIQUE(run_id, step)
            )
        ''')

        c.execute('CREATE INDEX IF NOT EXISTS idx_runs_algo ON runs(algo)')
        c.execute('CREATE INDEX IF NOT EXISTS idx_runs_label ON runs(label)')
        c.execute('CREATE INDEX IF NOT EXISTS idx_checkpoints_run ON checkpoints(run_id)')

        conn.commit()
        conn.close()

    def record_run(self, metrics: RunMetrics) -> int:
        """Save a run and its checkpoints. Returns run_id."""
        conn = sqlite3.connect(self.db_path)
        c = conn.cursor()
        c.execute('''
            INSERT INTO runs (run_date, algo, label, capacity, events, peak_colour,
                              recourse, wall_time, ok, violations, stats)
            VALUES (?, ?, ?, ?, ?, ?, ?, ?, ?, ?, ?)
        ''', (
            datetime.now().isoformat(), metrics.algo, metrics.label, metrics.capacity,
            metrics.events, metrics.peak_colour, metrics.recourse, metrics.wall_time,
            int(metrics.ok), len(metrics.report.violations), json.dumps(metrics.stats),
        ))
        run_id = c.lastrowid

        for row in metrics.rows:
            c.execute('''
                INSERT OR REPLACE INTO checkpoints (
                    run_id, step, live_edges, current_delta, alpha_declared, alpha_measured,
                    max_colour, palette_searches, cascade_recolours, level_moves, wall_time
                ) VALUES (?, ?, ?, ?, ?, ?, ?, ?, ?, ?, ?)
            ''', (
                run_id, row.step, row.live_edges, row.current_delta, row.alpha_declared,
                row.alpha_measured, row.max_colour, row.palette_searches,
                row.cascade_recolours, row.level_moves, row.wall_time,
            ))

        conn.commit()
        conn.close()
        return run_id

    def recent_runs(self, limit: int = 20, algo: Optional[str] = None) -> List[Dict]:
        conn = sqlite3.connect(self.db_path)
        conn.row_factory = sqlite3.Row
        c = conn.cursor()
        if algo:
            c.execute('SELECT * FROM runs WHERE algo = ? ORDER BY id DESC LIMIT ?', (algo, limit))
        else:
            c.execute('SELECT * FROM runs ORDER BY id DESC LIMIT ?', (limit,))
        rows = [dict(r) for r in c.fetchall()]
        conn.close()
        return rows

    def checkpoints(self, run_id: int) -> List[Dict]:
        conn = sqlite3.connect(self.db_path)
        conn.row_factory = sqlite3.Row
        c = conn.cursor()
        c.execute('SELECT * FROM checkpoints WHERE run_id = ? ORDER BY step', (run_id,))
        rows = [dict(r) for r in c.fetchall()]
        conn.close()
        return rows

    def best_by_algo(self, label: Optional[str] = None) -> List[Dict]:
        """Lowest peak colour per algorithm among clean runs."""
        conn = sqlite3.connect(self.db_path)
        conn.row_factory = sqlite3.Row
        c = conn.cursor()
        query = '''
            SELECT algo, MIN(peak_colour) AS best_peak, COUNT(*) AS runs,
                   AVG(CAST(recourse AS REAL) / MAX(events, 1)) AS avg_recourse
            FROM runs WHERE ok = 1
        '''
        params = ()
        if label:
            query += ' AND label = ?'
            params = (label,)
        query += ' GROUP BY algo ORDER BY best_peak'
        c.execute(query, params)
        rows = [dict(r) for r in c.fetchall()]
        conn.close()
        return rows

    def format_history(self, limit: int = 20) -> str:
        runs = self.recent_runs(limit)
        if not runs:
            return "No runs recorded yet."
        lines = [
            "═" * 60,
            "📚 RUN HISTORY",
            "═" * 60,
            "",
            f"  {'ID':>4}  {'ALGO':<18} {'PEAK':>5} {'EVENTS':>8}  STREAM",
            "─" * 60,
        ]
        for r in runs:
            mark = "✅" if r['ok'] else "❌"
            lines.append(
                f"{mark} {r['id']:>4}  {r['algo']:<18} {r['peak_colour']:>5} "
                f"{r['events']:>8}  {r['label'] or '-'}"
            )
        return "\n".join(lines)
