"""Deterministic JSON/CSV output and atomic file writes."""

from __future__ import annotations

import csv
import io
import json
import os
import tempfile

__all__ = ["dumps", "zeros_csv", "rows_csv", "write_atomic"]


def dumps(payload) -> str:
    """JSON with insertion-ordered keys and shortest round-trip floats."""
    return json.dumps(payload, indent=2, allow_nan=False) + "\n"


def rows_csv(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([repr(float(v)) if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def zeros_csv(report) -> str:
    rows = [(float(re), float(im), int(inside), float(res))
            for re, im, inside, res in report.rows()]
    return rows_csv(["re", "im", "inside_flag", "residual"], rows)


def write_atomic(path, data, mode="w"):
    """Write to a temporary file in the target directory, then rename over ``path``."""
    path = os.fspath(path)
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, mode) as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
