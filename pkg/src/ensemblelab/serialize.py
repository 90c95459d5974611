"""Persistence: versioned JSON model documents and CSV datasets.

Model files carry a format tag and version; trees are stored as nested node
records.  Floats pass through ``json`` at full shortest-round-trip precision,
so a save/load cycle reproduces every threshold and coefficient bit-exactly.

Dataset CSVs have a header row of feature columns ``x0..x{d-1}`` plus a
``label`` column.  The reader validates shape and label domain and reports
the offending line number on malformed input.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .datatypes import BoostModel, DecisionTree, ForestModel, LabeledDataset

FORMAT_TAG = "ensemblelab-model"
FORMAT_VERSION = 1


class DatasetFormatError(ValueError):
    """Malformed dataset CSV; the message carries the 1-based line number."""


def _tree_dict(tree: DecisionTree) -> dict:
    return {"n_features": tree.n_features, "root": tree.to_node_dict()}


def _tree_from(payload: dict) -> DecisionTree:
    return DecisionTree.from_node_dict(payload["root"], int(payload["n_features"]))


def model_to_dict(model) -> dict:
    doc = {"format": FORMAT_TAG, "version": FORMAT_VERSION}
    if isinstance(model, DecisionTree):
        doc["kind"] = "tree"
        doc["tree"] = _tree_dict(model)
    elif isinstance(model, BoostModel):
        doc["kind"] = "boost"
        doc["stages"] = [
            {"alpha": float(alpha), "tree": _tree_dict(tree)}
            for alpha, tree in zip(model.alphas, model.trees)
        ]
    elif isinstance(model, ForestModel):
        doc["kind"] = "forest"
        doc["m_try"] = model.m_try
        doc["tree_seeds"] = list(model.tree_seeds)
        doc["bootstrap_indices"] = model.bootstrap_indices.tolist()
        doc["trees"] = [_tree_dict(tree) for tree in model.trees]
    else:
        raise TypeError(f"cannot serialize {type(model).__name__}")
    return doc


def model_from_dict(doc: dict):
    if doc.get("format") != FORMAT_TAG:
        raise ValueError(f"not a {FORMAT_TAG} document")
    if doc.get("version") != FORMAT_VERSION:
        raise ValueError(f"unsupported model format version {doc.get('version')}")
    kind = doc.get("kind")
    if kind == "tree":
        return _tree_from(doc["tree"])
    if kind == "boost":
        alphas = [stage["alpha"] for stage in doc["stages"]]
        trees = tuple(_tree_from(stage["tree"]) for stage in doc["stages"])
        return BoostModel(np.array(alphas), trees)
    if kind == "forest":
        return ForestModel(
            tuple(_tree_from(t) for t in doc["trees"]),
            np.array(doc["bootstrap_indices"], dtype=np.int64),
            int(doc["m_try"]),
            tuple(doc["tree_seeds"]),
        )
    raise ValueError(f"unknown model kind {kind!r}")


def save_model(model, path) -> Path:
    path = Path(path)
    path.write_text(json.dumps(model_to_dict(model)) + "\n")
    return path


def load_model(path):
    return model_from_dict(json.loads(Path(path).read_text()))


def dataset_to_csv(data: LabeledDataset, path) -> Path:
    path = Path(path)
    header = ",".join([f"x{j}" for j in range(data.n_features)] + ["label"])
    lines = [header]
    for row, label in zip(data.features, data.labels):
        lines.append(",".join([repr(float(v)) for v in row] + [str(int(label))]))
    path.write_text("\n".join(lines) + "\n")
    return path


def dataset_from_csv(path) -> LabeledDataset:
    path = Path(path)
    lines = path.read_text().splitlines()
    if not lines:
        raise DatasetFormatError(f"{path}: empty file")
    header = lines[0].split(",")
    if len(header) < 2 or header[-1] != "label":
        raise DatasetFormatError(
            f"{path}, line 1: expected header 'x0,...,label', got {lines[0]!r}"
        )
    d = len(header) - 1
    features = []
    labels = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split(",")
        if len(parts) != d + 1:
            raise DatasetFormatError(
                f"{path}, line {lineno}: expected {d + 1} columns, got {len(parts)}"
            )
        try:
            row = [float(v) for v in parts[:-1]]
            label = float(parts[-1])
        except ValueError as exc:
            raise DatasetFormatError(f"{path}, line {lineno}: {exc}") from None
        if label not in (-1.0, 1.0):
            raise DatasetFormatError(
                f"{path}, line {lineno}: label must be -1 or +1, got {parts[-1]!r}"
            )
        features.append(row)
        labels.append(int(label))
    if not features:
        raise DatasetFormatError(f"{path}: no data rows")
    return LabeledDataset(np.array(features), np.array(labels))
