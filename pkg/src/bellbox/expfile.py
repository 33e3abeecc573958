"""Versioned on-disk format for experiment data.

The carrier is a JSON document with explicit outcome labels so that the
cell assignment (which probability is 11, 12, 21, 22) can never silently
flip, which is where CHSH sign errors come from::

    {
      "version": 1,
      "sides": {"first": ["A", "A'"], "second": ["B", "B'"]},
      "settings": ["AB", "AB'", "A'B", "A'B'"],
      "tables": {
        "AB": {"A1B1": "0.049", "A1B2": "0.630", "A2B1": "0.259", "A2B2": "0.062"},
        ...
      },
      "metadata": {"source": "...", "notes": "..."}
    }

Probabilities are decimal strings; ``repr`` of a float round-trips
exactly, so written files reproduce the in-memory tables bit for bit.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Mapping

from .tables import (
    DEFAULT_NORM_TOL,
    Experiment,
    PAIR_ORDER,
    TableError,
    normalize,
)

FORMAT_VERSION = 1


class ExperimentFileError(ValueError):
    """A file could not be parsed into an experiment; the message names
    the offending location (line/column for syntax, field path otherwise)."""


def _fail(path: str | Path, where: str, problem: str) -> "ExperimentFileError":
    return ExperimentFileError(f"{path}: {where}: {problem}")


def write_experiment(
    path: str | Path,
    experiment: Experiment,
    metadata: Mapping[str, Any] | None = None,
) -> None:
    doc: dict[str, Any] = {
        "version": FORMAT_VERSION,
        "sides": {
            "first": list(experiment.sides[0]),
            "second": list(experiment.sides[1]),
        },
        "settings": [pair.label for pair in PAIR_ORDER],
        "tables": {
            pair.label: {
                label: repr(value)
                for label, value in zip(
                    experiment.table(pair).outcome_labels,
                    experiment.table(pair).values,
                )
            }
            for pair in PAIR_ORDER
        },
        "metadata": dict(metadata) if metadata else {},
    }
    Path(path).write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")


def read_experiment(
    path: str | Path, normalize_tol: float = DEFAULT_NORM_TOL
) -> tuple[Experiment, dict[str, Any]]:
    """Parse an experiment file; returns the experiment and its metadata."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ExperimentFileError(f"{path}: cannot read file: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise _fail(path, f"line {exc.lineno}, column {exc.colno}", exc.msg) from exc

    if not isinstance(doc, dict):
        raise _fail(path, "document", "top level must be a JSON object")
    version = doc.get("version")
    if version != FORMAT_VERSION:
        raise _fail(path, "version", f"expected {FORMAT_VERSION}, got {version!r}")

    sides = doc.get("sides", {"first": ["A", "A'"], "second": ["B", "B'"]})
    if (
        not isinstance(sides, dict)
        or set(sides) != {"first", "second"}
        or any(
            not (isinstance(sides[k], list) and len(sides[k]) == 2) for k in sides
        )
    ):
        raise _fail(path, "sides", "expected {'first': [x, x'], 'second': [y, y']}")

    settings = doc.get("settings")
    expected_settings = [pair.label for pair in PAIR_ORDER]
    if settings != expected_settings:
        raise _fail(path, "settings", f"expected {expected_settings}, got {settings!r}")

    tables_doc = doc.get("tables")
    if not isinstance(tables_doc, dict):
        raise _fail(path, "tables", "missing or not an object")

    tables = {}
    for pair in PAIR_ORDER:
        entry = tables_doc.get(pair.label)
        if not isinstance(entry, dict):
            raise _fail(path, f"tables.{pair.label}", "missing or not an object")
        values = []
        for label in pair.outcome_labels:
            if label not in entry:
                raise _fail(path, f"tables.{pair.label}", f"missing outcome {label!r}")
            raw = entry[label]
            try:
                values.append(float(raw))
            except (TypeError, ValueError):
                raise _fail(
                    path,
                    f"tables.{pair.label}.{label}",
                    f"not a decimal probability: {raw!r}",
                ) from None
        extra = set(entry) - set(pair.outcome_labels)
        if extra:
            raise _fail(
                path, f"tables.{pair.label}", f"unexpected outcome labels {sorted(extra)}"
            )
        try:
            tables[pair] = normalize(values, pair, tol=normalize_tol)
        except TableError as exc:
            raise _fail(path, f"tables.{pair.label}", str(exc)) from exc

    metadata = doc.get("metadata", {})
    if not isinstance(metadata, dict):
        raise _fail(path, "metadata", "must be an object when present")

    experiment = Experiment.from_tables(
        tables,
        sides=(
            (str(sides["first"][0]), str(sides["first"][1])),
            (str(sides["second"][0]), str(sides["second"][1])),
        ),
    )
    return experiment, metadata
