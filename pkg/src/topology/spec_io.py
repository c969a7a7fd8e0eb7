"""
TreeTen - Tree spec documents

JSON document: {"vertices": ["1.1", "1.2", ...], "edges": [["1.1", "1.2"], ...]}
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import List, Tuple, Union

from pydantic import BaseModel, Field, ValidationError, field_validator

from src.topology.tree import LabeledTree, build_tree
from src.utils.errors import ConfigError
from src.utils.validation import validate_digit_label


class TreeSpecDocument(BaseModel):
    vertices: List[str] = Field(..., min_length=1, description="digit labels 'i.j'")
    edges: List[Tuple[str, str]] = Field(default_factory=list, description="unordered digit pairs")

    @field_validator("vertices")
    @classmethod
    def _labels(cls, v: List[str]) -> List[str]:
        bad = [s for s in v if not validate_digit_label(s)]
        if bad:
            raise ValueError(f"malformed digit labels: {bad[:5]}")
        return v

    def to_tree(self) -> LabeledTree:
        return build_tree(self.vertices, self.edges)


def parse_tree_spec(text: str) -> LabeledTree:
    try:
        doc = TreeSpecDocument.model_validate_json(text)
    except ValidationError as e:
        raise ConfigError(f"invalid tree spec: {e.errors()[0]['msg']}") from e
    return doc.to_tree()


def load_tree_spec(path: Union[str, Path]) -> LabeledTree:
    return parse_tree_spec(Path(path).read_text(encoding="utf-8"))


def dump_tree_spec(tree: LabeledTree) -> str:
    return json.dumps(tree.to_document(), indent=2)
