"""Deterministic CSV artifacts with a self-describing metadata header.

Layout::

    # key = value          (one line per metadata entry, in insertion order)
    col_a,col_b,...
    1.0000000000000000,...

Floats use 17 significant digits so values round-trip exactly.
"""

from __future__ import annotations

import csv
import json
import math
from collections.abc import Iterable, Mapping, Sequence
from pathlib import Path
from typing import Any

import numpy as np


def format_value(value: Any) -> str:
    match value:
        case bool() | np.bool_():
            return 'true' if value else 'false'
        case int() | np.integer():
            return str(int(value))
        case float() | np.floating():
            number = float(value)
            return 'nan' if math.isnan(number) else f'{number:.17g}'
        case complex() | np.complexfloating():
            number = complex(value)
            return f'{format_value(number.real)}{"+" if number.imag >= 0 else "-"}{format_value(abs(number.imag))}j'
        case None:
            return ''
        case str():
            return value
        case _:
            return json.dumps(value, sort_keys=True, default=str)


def flatten(mapping: Mapping[str, Any], prefix: str = '') -> dict[str, Any]:
    """Dotted-key view of a nested mapping; lists stay whole."""
    flat: dict[str, Any] = {}
    for key, value in mapping.items():
        path = f'{prefix}.{key}' if prefix else key
        if isinstance(value, Mapping):
            flat.update(flatten(value, path))
        else:
            flat[path] = value
    return flat


def write_csv(
    path: Path,
    metadata: Mapping[str, Any],
    columns: Sequence[str],
    rows: Iterable[Sequence[Any]],
) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open('w', encoding='utf-8', newline='') as handle:
        for key, value in metadata.items():
            handle.write(f'# {key} = {format_value(value)}\n')
        writer = csv.writer(handle, lineterminator='\n')
        writer.writerow(columns)
        for row in rows:
            writer.writerow([format_value(cell) for cell in row])
    return path


def read_csv(path: Path) -> tuple[dict[str, str], list[dict[str, str]]]:
    """Parse a file written by ``write_csv`` into (metadata, rows)."""
    metadata: dict[str, str] = {}
    body: list[str] = []
    for line in path.read_text(encoding='utf-8').splitlines():
        if line.startswith('# '):
            key, _, value = line[2:].partition(' = ')
            metadata[key] = value
        else:
            body.append(line)
    return metadata, list(csv.DictReader(body))
