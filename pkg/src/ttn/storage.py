"""
TreeTen - Network persistence

A network is stored as a numpy .npz archive: one array per vertex tensor
(canonical index layout, row-major) plus a JSON header naming the tree, the
index ids and the dimensions of each tensor.
"""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Union

import numpy as np

from src.tensor.dense import DenseTensor
from src.topology.spec_io import parse_tree_spec
from src.topology.tree import DigitId
from src.ttn.network import TreeTensorNetwork
from src.utils.errors import ConfigError, DimensionMismatch

logger = logging.getLogger(__name__)

FORMAT_NAME = "treeten-ttn"
FORMAT_VERSION = 1


def save_network(net: TreeTensorNetwork, path: Union[str, Path]) -> Path:
    path = Path(path)
    arrays = {}
    entries = []
    for k, v in enumerate(net.tree.vertices):
        t = net.tensors[v]
        key = f"t{k}"
        arrays[key] = np.ascontiguousarray(t.data)
        entries.append(
            {"vertex": v.label, "key": key, "indices": list(t.indices), "dims": list(t.data.shape), "dtype": str(t.dtype)}
        )
    header = {
        "format": FORMAT_NAME,
        "version": FORMAT_VERSION,
        "tree": net.tree.to_document(),
        "tensors": entries,
    }
    arrays["header"] = np.array(json.dumps(header))
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("wb") as fh:
        np.savez_compressed(fh, **arrays)
    logger.info(f"💾 Saved network ({len(entries)} tensors, chi={net.max_bond}) to {path}")
    return path


def load_network(path: Union[str, Path]) -> TreeTensorNetwork:
    path = Path(path)
    with np.load(path, allow_pickle=False) as archive:
        try:
            header = json.loads(str(archive["header"]))
        except (KeyError, json.JSONDecodeError) as e:
            raise ConfigError(f"{path} is not a network archive: {e}") from e
        if header.get("format") != FORMAT_NAME:
            raise ConfigError(f"{path}: unexpected format {header.get('format')!r}")
        tree = parse_tree_spec(json.dumps(header["tree"]))
        tensors = {}
        for entry in header["tensors"]:
            data = archive[entry["key"]]
            if list(data.shape) != entry["dims"]:
                raise DimensionMismatch(f"{path}: tensor {entry['vertex']} has shape {data.shape}, header says {entry['dims']}")
            tensors[DigitId.parse(entry["vertex"])] = DenseTensor(tuple(entry["indices"]), data)
    return TreeTensorNetwork(tree, tensors)
