"""
TreeTen - Run configuration

A RunConfig is assembled from an optional JSON config document plus CLI flag
overrides. The config hash (SHA-256 of the canonical JSON, output path
excluded) is stamped on every CSV the run writes.
"""

from __future__ import annotations

import hashlib
import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from src.utils.config import get_settings, parse_int_list
from src.utils.errors import ConfigError

logger = logging.getLogger(__name__)

Command = Literal["build", "compress", "tci", "fredholm", "mi"]

# commands that draw random samples and therefore need a seed
RANDOMIZED = ("compress", "tci", "fredholm", "mi")


class FredholmDocument(BaseModel):
    """User-defined Fredholm problem: kernel and source as "direct:<expr>" or "tci:<function id>"."""

    model_config = ConfigDict(extra="forbid")

    n_variables: int = Field(1, ge=1)
    alpha: int = Field(1, ge=1)
    lam: float = Field(1.0, description="prefactor of the integral term")
    kernel: str = Field(..., min_length=1)
    source: str = Field(..., min_length=1)
    reference: Optional[str] = Field(None, description="function id of the exact solution")
    tci_chi: int = Field(10, ge=1)
    tci_tol: float = Field(1e-12, ge=0.0)
    tci_sweeps: int = Field(6, ge=1)

    @field_validator("kernel", "source")
    @classmethod
    def _prefixed(cls, v: str) -> str:
        if not v.startswith(("direct:", "tci:")):
            raise ValueError("expected 'direct:<expression>' or 'tci:<function id>'")
        return v


class RunConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    command: Command
    target: str = Field(..., min_length=1, description="benchmark name, builder expression or tci:<name>")
    tree: Optional[str] = Field(None, description="named tree generator; defaults per target")
    tree_spec: Optional[str] = Field(None, description="path to a JSON tree spec document")
    L: int = Field(16, ge=1, le=62)
    n: Optional[int] = Field(None, ge=1, description="number of variables for builder expressions")
    chi_list: List[int] = Field(default_factory=list)
    tol: float = Field(default_factory=lambda: get_settings().default_tol, ge=0.0)
    sweeps: int = Field(10, ge=1)
    iters: int = Field(20, ge=1)
    seed: Optional[int] = Field(None, ge=0)
    samples: Optional[int] = Field(None, ge=1)
    exact: bool = Field(False, description="enumerate the MI environment instead of sampling")
    out: str = Field("results", min_length=1)
    fredholm: Optional[FredholmDocument] = None

    @field_validator("chi_list", mode="before")
    @classmethod
    def _chi_list(cls, v: Any) -> Any:
        if isinstance(v, str):
            return parse_int_list(v)
        return v

    @field_validator("chi_list")
    @classmethod
    def _positive_chis(cls, v: List[int]) -> List[int]:
        if any(chi < 1 for chi in v):
            raise ValueError("bond dimensions must be >= 1")
        return v

    @model_validator(mode="after")
    def _check(self) -> "RunConfig":
        if self.command in RANDOMIZED and self.seed is None:
            raise ValueError(f"'{self.command}' draws random samples and needs --seed")
        if self.tree is not None and self.tree_spec is not None:
            raise ValueError("give either --tree or --tree-spec, not both")
        if self.target == "custom" and self.fredholm is None:
            raise ValueError("target 'custom' needs a 'fredholm' section in the config document")
        return self

    def config_hash(self) -> str:
        doc = self.model_dump(mode="json", exclude={"out"})
        canonical = json.dumps(doc, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()

    @property
    def out_dir(self) -> Path:
        return Path(self.out)


def _first_error(e: ValidationError) -> str:
    err = e.errors()[0]
    where = ".".join(str(p) for p in err.get("loc", ()))
    return f"{where}: {err['msg']}" if where else err["msg"]


def build_run_config(
    document: Optional[Dict[str, Any]] = None, overrides: Optional[Dict[str, Any]] = None
) -> RunConfig:
    """Merge a config document with non-None overrides and validate."""
    merged: Dict[str, Any] = dict(document or {})
    merged.update({k: v for k, v in (overrides or {}).items() if v is not None})
    try:
        return RunConfig.model_validate(merged)
    except ValidationError as e:
        raise ConfigError(f"invalid run config: {_first_error(e)}") from e


def load_config_document(path: Union[str, Path]) -> Dict[str, Any]:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as e:
        raise ConfigError(f"cannot read config {path}: {e.strerror}") from e
    except json.JSONDecodeError as e:
        raise ConfigError(f"config {path} is not valid JSON: {e.msg}") from e
    if not isinstance(doc, dict):
        raise ConfigError(f"config {path} must hold a JSON object")
    logger.debug(f"loaded config document {path} with keys {sorted(doc)}")
    return doc
