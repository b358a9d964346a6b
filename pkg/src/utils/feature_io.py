"""
File formats: per-view feature CSVs, ground-truth events, label lists and
JSON artifacts.
"""

import csv
import json
import logging
from pathlib import Path
from typing import Any, List, Optional, Union

import numpy as np

from ..models.data_models import FeatureMatrix
from ..models.exceptions import DataError, ParseError, SynchronizationError
from ..models.summary_models import DatasetSpec, GroundTruthEvents, SummaryManifest, ViewSet

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def _is_number(cell: str) -> bool:
    try:
        float(cell)
        return True
    except ValueError:
        return False


def load_feature_csv(path: PathLike) -> np.ndarray:
    """
    Read one view's features: one row per frame, floats, optional header.

    A first row containing any non-numeric cell is treated as a header.
    Rows and columns in error messages are 1-based file positions.
    """
    path = Path(path)
    try:
        with open(path, newline="") as handle:
            rows = [row for row in csv.reader(handle) if any(cell.strip() for cell in row)]
    except OSError as e:
        raise DataError(f"cannot read feature file {path}: {e}")

    if not rows:
        raise ParseError("feature file is empty", path=str(path))

    first_data_row = 1
    if not all(_is_number(cell.strip()) for cell in rows[0]):
        rows = rows[1:]
        first_data_row = 2
    if not rows:
        raise ParseError("feature file has a header but no frames", path=str(path))

    width = len(rows[0])
    data = np.empty((len(rows), width))
    for i, row in enumerate(rows):
        if len(row) != width:
            raise ParseError(f"expected {width} columns, found {len(row)}",
                             path=str(path), row=i + first_data_row)
        for j, cell in enumerate(row):
            try:
                data[i, j] = float(cell.strip())
            except ValueError:
                raise ParseError(f"non-numeric cell '{cell}'", path=str(path),
                                 row=i + first_data_row, column=j + 1)
            if not np.isfinite(data[i, j]):
                raise ParseError(f"non-finite cell '{cell}'", path=str(path),
                                 row=i + first_data_row, column=j + 1)
    if data.shape[0] < 2:
        raise ParseError("a view needs at least two frames", path=str(path))
    return data


def load_views(spec: DatasetSpec) -> ViewSet:
    """Load all views, check they are synchronized, then apply the frame stride"""
    arrays = [load_feature_csv(path) for path in spec.view_paths]

    counts = [a.shape[0] for a in arrays]
    if len(set(counts)) != 1:
        detail = ", ".join(f"{path}: {count}" for path, count in zip(spec.view_paths, counts))
        raise SynchronizationError(f"views have different frame counts ({detail})")

    if spec.frame_stride > 1:
        arrays = [a[::spec.frame_stride] for a in arrays]
        if arrays[0].shape[0] < 2:
            raise ParseError(f"frame stride {spec.frame_stride} leaves fewer than two frames")

    logger.info("loaded %d views of %d frames (%d source frames, stride %d)",
                len(arrays), arrays[0].shape[0], counts[0], spec.frame_stride)
    return ViewSet([FeatureMatrix(a) for a in arrays], source_frames=counts[0], frame_stride=spec.frame_stride)


def read_json(path: PathLike) -> Any:
    path = Path(path)
    try:
        with open(path) as handle:
            return json.load(handle)
    except OSError as e:
        raise DataError(f"cannot read {path}: {e}")
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e.msg}", path=str(path), row=e.lineno, column=e.colno)


def dumps(data: Any) -> str:
    """Canonical JSON text used for every artifact"""
    return json.dumps(data, indent=2) + "\n"


def write_json(data: Any, path: Optional[PathLike]) -> str:
    """Write JSON to a file, or return it for stdout when path is None"""
    text = dumps(data)
    if path is not None:
        try:
            Path(path).write_text(text)
        except OSError as e:
            raise DataError(f"cannot write {path}: {e}")
    return text


def load_ground_truth(path: PathLike) -> GroundTruthEvents:
    """Events file: {"events": [{"start": int, "end": int, "label": str}]}"""
    data = read_json(path)
    if not isinstance(data, dict):
        raise ParseError("ground truth must be a JSON object", path=str(path))
    return GroundTruthEvents.from_dict(data)


def read_manifest(path: PathLike) -> SummaryManifest:
    data = read_json(path)
    if not isinstance(data, dict):
        raise ParseError("manifest must be a JSON object", path=str(path))
    return SummaryManifest.from_dict(data)


def write_manifest(manifest: SummaryManifest, path: Optional[PathLike]) -> str:
    return write_json(manifest.to_dict(), path)


def load_labels(path: PathLike) -> List[int]:
    """Planted labels: a JSON list, or one integer per line"""
    path = Path(path)
    if path.suffix.lower() == ".json":
        data = read_json(path)
        if isinstance(data, dict):
            data = data.get('labels')
        if not isinstance(data, list):
            raise ParseError("labels JSON must be a list or an object with a 'labels' list", path=str(path))
        try:
            return [int(label) for label in data]
        except (TypeError, ValueError) as e:
            raise ParseError(f"non-integer label: {e}", path=str(path))

    try:
        lines = path.read_text().splitlines()
    except OSError as e:
        raise DataError(f"cannot read {path}: {e}")
    labels = []
    for i, line in enumerate(lines):
        if not line.strip():
            continue
        try:
            labels.append(int(line.strip()))
        except ValueError:
            raise ParseError(f"non-integer label '{line.strip()}'", path=str(path), row=i + 1)
    return labels


def write_feature_csv(data: np.ndarray, path: PathLike, header: bool = True):
    """Write a view in the format load_feature_csv reads"""
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        if header:
            writer.writerow([f"f{j}" for j in range(data.shape[1])])
        for row in data:
            writer.writerow([repr(float(v)) for v in row])
