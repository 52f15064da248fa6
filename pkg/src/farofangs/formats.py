"""FAZ v1 text format, CSV import, and JSON result documents.

FAZ v1 holds any number of binary matrices::

    # comment lines start with '#'
    2 2
    1 0
    0 1

    3 0

Each block is a header ``n k`` followed by ``n`` rows of ``k`` tokens (none
when ``k == 0``). Blocks are separated by blank lines and must share ``n``.
"""

from __future__ import annotations

import json
import os
import sys
from pathlib import Path
from typing import IO, Any

import numpy as np

from .matrix import FeatureAllocation, SampleSet, as_allocation, as_sample_set

FORMAT_TAG = "FAZ v1"
RUNTIME_FIELD = "runtime"


class FazError(ValueError):
    """A located parse failure; ``line`` and ``col`` are 1-based."""

    def __init__(self, message: str, line: int, col: int = 1, source: str = "<string>"):
        self.message = message
        self.line = line
        self.col = col
        self.source = source
        super().__init__(f"{source}:{line}:{col}: {message}")


def _tokens(text: str):
    """(1-based column, token) pairs of a whitespace-separated line."""
    out = []
    i = 0
    while i < len(text):
        if text[i].isspace():
            i += 1
            continue
        j = i
        while j < len(text) and not text[j].isspace():
            j += 1
        out.append((i + 1, text[i:j]))
        i = j
    return out


def _header(tokens, lineno: int, source: str) -> tuple[int, int]:
    if len(tokens) != 2:
        col = tokens[0][0] if tokens else 1
        raise FazError(f"expected a header 'n k', got {len(tokens)} token(s)", lineno, col, source)
    dims = []
    for col, tok in tokens:
        if not tok.isdigit() or not tok.isascii():
            raise FazError(f"header value {tok!r} is not a nonnegative integer", lineno, col, source)
        dims.append(int(tok))
    if dims[0] < 1:
        raise FazError("a matrix needs at least one row", lineno, tokens[0][0], source)
    return dims[0], dims[1]


def parse_faz(text: str, source: str = "<string>") -> list[FeatureAllocation]:
    """All matrices in a FAZ v1 document, in file order."""
    lines = text.splitlines()
    mats: list[FeatureAllocation] = []
    first_n = None
    i = 0
    while i < len(lines):
        raw = lines[i]
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            i += 1
            continue
        header_line = i + 1
        n, k = _header(_tokens(raw), header_line, source)
        block = len(mats) + 1
        if first_n is not None and n != first_n:
            raise FazError(
                f"block {block} has n={n} but block 1 has n={first_n}", header_line, 1, source
            )
        i += 1
        data = np.zeros((n, k), dtype=np.uint8)
        if k > 0:
            for r in range(n):
                lineno = i + 1
                if i >= len(lines) or not lines[i].strip():
                    raise FazError(
                        f"block {block} expects {n} rows of {k} entries, found {r}", lineno, 1, source
                    )
                toks = _tokens(lines[i])
                if len(toks) != k:
                    col = toks[min(len(toks), k)][0] if len(toks) > k else len(lines[i]) + 1
                    raise FazError(
                        f"block {block} row {r + 1} has {len(toks)} entries, expected {k}",
                        lineno,
                        col,
                        source,
                    )
                for j, (col, tok) in enumerate(toks):
                    if tok == "1":
                        data[r, j] = 1
                    elif tok != "0":
                        raise FazError(f"entry {tok!r} is not 0 or 1", lineno, col, source)
                i += 1
        if i < len(lines) and lines[i].strip() and not lines[i].strip().startswith("#"):
            raise FazError(
                f"block {block} has more than its declared {n} rows (or no blank separator)",
                i + 1,
                1,
                source,
            )
        first_n = n
        mats.append(FeatureAllocation(data))
    if not mats:
        raise FazError("no matrices found", 1, 1, source)
    return mats


def format_faz(matrices) -> str:
    """Serialize allocations (or one allocation) as FAZ v1 text."""
    if isinstance(matrices, (FeatureAllocation, np.ndarray)):
        matrices = [matrices]
    blocks = []
    for z in matrices:
        z = as_allocation(z)
        rows = [f"{z.n} {z.k}"]
        if z.k:
            rows.extend(" ".join(map(str, row)) for row in z.data.tolist())
        blocks.append("\n".join(rows))
    return "\n\n".join(blocks) + "\n"


def read_samples(path: str | os.PathLike) -> SampleSet:
    path = Path(path)
    mats = parse_faz(path.read_text(encoding="utf-8"), source=str(path))
    return SampleSet(mats)


def write_samples(samples, path: str | os.PathLike) -> None:
    Path(path).write_text(format_faz(list(as_sample_set(samples))), encoding="utf-8")


def read_csv_allocation(path: str | os.PathLike) -> FeatureAllocation:
    """One comma-separated 0/1 matrix per file (rows are items)."""
    path = Path(path)
    rows = []
    for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        row = []
        for col, tok in enumerate(line.split(","), start=1):
            tok = tok.strip()
            if tok not in ("0", "1"):
                raise FazError(f"field {col} is {tok!r}, not 0 or 1", lineno, col, str(path))
            row.append(int(tok))
        if rows and len(row) != len(rows[0]):
            raise FazError(f"row has {len(row)} fields, expected {len(rows[0])}", lineno, 1, str(path))
        rows.append(row)
    if not rows:
        raise FazError("no rows found", 1, 1, str(path))
    return FeatureAllocation(np.array(rows, dtype=np.uint8))


def result_document(
    subcommand: str,
    estimate,
    expected_loss: float,
    config: dict[str, Any],
    runtime: dict[str, Any],
    **extra: Any,
) -> dict[str, Any]:
    """JSON-ready result. Everything machine-dependent (wall time, thread
    count) lives under the single ``runtime`` key so it can be masked."""
    from . import __version__

    estimate = as_allocation(estimate)
    doc = {
        "tool_version": __version__,
        "subcommand": subcommand,
        "config": config,
        "n": estimate.n,
        "k": estimate.k,
        "estimate": estimate.tolist(),
        "estimate_faz": format_faz(estimate),
        "expected_loss": float(expected_loss),
        RUNTIME_FIELD: runtime,
    }
    doc.update({key: value for key, value in extra.items() if value is not None})
    return doc


def dumps_result(doc: dict[str, Any]) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def emit_result(doc: dict[str, Any], out: "str | os.PathLike | IO[str] | None" = None) -> None:
    """Write the canonical JSON document to a path, a stream, or stdout."""
    text = dumps_result(doc)
    if out is None:
        sys.stdout.write(text)
    elif hasattr(out, "write"):
        out.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def estimate_from_document(doc: "dict[str, Any] | str") -> FeatureAllocation:
    if isinstance(doc, str):
        doc = json.loads(doc)
    (z,) = parse_faz(doc["estimate_faz"], source="estimate_faz")
    return z


def mask_runtime(doc: dict[str, Any]) -> dict[str, Any]:
    return {key: value for key, value in doc.items() if key != RUNTIME_FIELD}
