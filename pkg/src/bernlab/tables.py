"""CSV tables with a versioned ``#schema=`` header line (RFC 4180, CRLF)."""
from __future__ import annotations

import csv
import io

SCHEMA_VERSION = 1


def fmt(v):
    """Cell text: repr for floats so values round-trip exactly, empty for None."""
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


def write_csv(schema, columns, rows):
    """Render dict rows as CSV text, first line ``#schema=bernlab.<schema>.v1;columns=...``."""
    buf = io.StringIO()
    buf.write(f"#schema=bernlab.{schema}.v{SCHEMA_VERSION};columns={','.join(columns)}\r\n")
    wr = csv.writer(buf, lineterminator="\r\n")
    wr.writerow(columns)
    for row in rows:
        wr.writerow([fmt(row.get(c)) for c in columns])
    return buf.getvalue()
