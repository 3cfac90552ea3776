"""Run manifests: one JSON file that pins everything a run depends on.

The run id is a digest of the seed plus the full configuration (endpoints,
thresholds, dataset hashes, command), so a replayed run reproduces the same
id and therefore byte-identical artifacts. Timestamps are informational and
excluded from the digest.
"""

from __future__ import annotations

import hashlib
import json
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .domain import ModelEndpoint, Sampling
from .gateway import PREFIX_MODE
from .guard import DEFAULT_BLOCK_SIZE
from .languages import canonical_language
from .step1 import DEFAULT_QUALITY_THRESHOLD, TRANSLATION_PROMPT_V1

TOOL_VERSION = "0.1.0"


def endpoint_to_json(ep: ModelEndpoint) -> dict[str, Any]:
    return {
        "model_name": ep.model_name,
        "role": ep.role,
        "base_url": ep.base_url,
        "api_key_env": ep.api_key_env,
        "default_think_language": ep.default_think_language.name,
        "sampling": {
            "temperature": ep.sampling.temperature,
            "top_p": ep.sampling.top_p,
            "max_new_tokens": ep.sampling.max_new_tokens,
        },
        "fixture_path": ep.fixture_path,
    }


def endpoint_from_json(data: dict[str, Any]) -> ModelEndpoint:
    sampling = data.get("sampling") or {}
    return ModelEndpoint(
        model_name=data["model_name"],
        role=data["role"],
        base_url=data.get("base_url", ""),
        api_key_env=data.get("api_key_env", ""),
        default_think_language=canonical_language(data.get("default_think_language", "en")),
        sampling=Sampling(
            temperature=float(sampling.get("temperature", 0.6)),
            top_p=float(sampling.get("top_p", 0.95)),
            max_new_tokens=int(sampling.get("max_new_tokens", 32_768)),
        ),
        fixture_path=data.get("fixture_path"),
    )


@dataclass
class RunManifest:
    """Everything needed to replay a run deterministically."""

    seed: int = 0
    endpoints: dict[str, ModelEndpoint] = field(default_factory=dict)
    quality_threshold: float = DEFAULT_QUALITY_THRESHOLD
    guard_block: int = DEFAULT_BLOCK_SIZE
    parallelism: int = 4
    dataset_hashes: dict[str, str] = field(default_factory=dict)
    command: list[str] = field(default_factory=list)
    tool_version: str = TOOL_VERSION
    prefix_mode: str = PREFIX_MODE
    translation_prompt: str = TRANSLATION_PROMPT_V1
    created_at: str = ""

    @property
    def run_id(self) -> str:
        digest = hashlib.sha256(
            json.dumps(self._fingerprint(), ensure_ascii=False, sort_keys=True).encode("utf-8")
        )
        return digest.hexdigest()[:12]

    def _fingerprint(self) -> dict[str, Any]:
        return {
            "seed": self.seed,
            "endpoints": {name: endpoint_to_json(ep) for name, ep in sorted(self.endpoints.items())},
            "thresholds": {"quality": self.quality_threshold, "guard_block": self.guard_block},
            "dataset_hashes": dict(sorted(self.dataset_hashes.items())),
            "command": self.command,
            "tool_version": self.tool_version,
            "prefix_mode": self.prefix_mode,
            "translation_prompt": self.translation_prompt,
        }

    def derived_seed(self, run_index: int) -> int:
        """Seeds for repeated runs come from fixed offsets: +0, +1, +2, ..."""
        return self.seed + run_index

    def to_json(self) -> dict[str, Any]:
        return {
            "run_id": self.run_id,
            **self._fingerprint(),
            "parallelism": self.parallelism,  # informational: order-preserving, so not fingerprinted
            "created_at": self.created_at or time.strftime("%Y-%m-%dT%H:%M:%S%z"),
        }

    def save(self, path: str | Path) -> None:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            json.dump(self.to_json(), fh, ensure_ascii=False, indent=2, sort_keys=True)
            fh.write("\n")

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> "RunManifest":
        thresholds = data.get("thresholds") or {}
        return cls(
            seed=int(data.get("seed", 0)),
            endpoints={
                name: endpoint_from_json(ep)
                for name, ep in (data.get("endpoints") or {}).items()
            },
            quality_threshold=float(thresholds.get("quality", DEFAULT_QUALITY_THRESHOLD)),
            guard_block=int(thresholds.get("guard_block", DEFAULT_BLOCK_SIZE)),
            parallelism=int(data.get("parallelism", 4)),
            dataset_hashes=dict(data.get("dataset_hashes") or {}),
            command=list(data.get("command") or []),
            tool_version=data.get("tool_version", TOOL_VERSION),
            prefix_mode=data.get("prefix_mode", PREFIX_MODE),
            translation_prompt=data.get("translation_prompt", TRANSLATION_PROMPT_V1),
            created_at=data.get("created_at", ""),
        )

    @classmethod
    def load(cls, path: str | Path) -> "RunManifest":
        with open(path, encoding="utf-8") as fh:
            return cls.from_json(json.load(fh))
