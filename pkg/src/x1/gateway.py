"""Uniform client over chat-completion endpoints, live HTTP or recorded mock.

Requests get a deterministic id from their full content, which keys the
fixture store: a run recorded once replays offline byte-for-byte. Forced
think prefixes are sent as a partial assistant message (continuation mode)
and are always preserved verbatim at the start of the outcome text. The
repetition guard runs over the generated region only, never the prefix.
"""

from __future__ import annotations

import hashlib
import json
import os
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable, Iterator

import requests

from .domain import ModelEndpoint
from .errors import EndpointUnavailable, FixtureMiss
from .guard import DEFAULT_BLOCK_SIZE, STOP, GuardState, truncate_text

PREFIX_MODE = "assistant-prefix"  # recorded in the run manifest


@dataclass(frozen=True)
class ChatRequest:
    """One chat call; request_id is a stable digest of everything that matters."""

    endpoint: ModelEndpoint
    user: str
    system: str | None = None
    forced_prefix: str | None = None
    sampling: dict[str, Any] = field(default_factory=dict)
    seed: int = 0

    @property
    def request_id(self) -> str:
        payload = json.dumps(
            {
                "model": self.endpoint.model_name,
                "system": self.system,
                "user": self.user,
                "forced_prefix": self.forced_prefix,
                "sampling": dict(sorted(self.effective_sampling().items())),
                "seed": self.seed,
            },
            ensure_ascii=False,
            sort_keys=True,
        )
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()[:16]

    def effective_sampling(self) -> dict[str, Any]:
        base = {
            "temperature": self.endpoint.sampling.temperature,
            "top_p": self.endpoint.sampling.top_p,
            "max_new_tokens": self.endpoint.sampling.max_new_tokens,
        }
        base.update(self.sampling)
        return base

    def messages(self) -> list[dict[str, str]]:
        msgs = []
        if self.system:
            msgs.append({"role": "system", "content": self.system})
        msgs.append({"role": "user", "content": self.user})
        if self.forced_prefix:
            msgs.append({"role": "assistant", "content": self.forced_prefix})
        return msgs


@dataclass(frozen=True)
class ChatOutcome:
    """Decoded result of one chat call."""

    raw_text: str
    truncated_by_guard: bool = False
    usage: dict[str, int] = field(default_factory=dict)
    latency_ms: float = 0.0
    attempts: int = 1


class FixtureStore:
    """Append-only JSONL of {request_id, raw_text, usage}; last entry wins."""

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self._entries: dict[str, dict[str, Any]] = {}
        if self.path.exists():
            with open(self.path, encoding="utf-8") as fh:
                for line in fh:
                    if line.strip():
                        entry = json.loads(line)
                        self._entries[entry["request_id"]] = entry

    def __contains__(self, request_id: str) -> bool:
        return request_id in self._entries

    def __len__(self) -> int:
        return len(self._entries)

    def get(self, request_id: str) -> dict[str, Any]:
        if request_id not in self._entries:
            raise FixtureMiss(f"no fixture for request_id {request_id}")
        return self._entries[request_id]

    def record(self, req: ChatRequest, outcome: ChatOutcome) -> None:
        entry = {
            "request_id": req.request_id,
            "raw_text": outcome.raw_text,
            "usage": dict(outcome.usage),
        }
        self._entries[req.request_id] = entry
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with open(self.path, "a", encoding="utf-8") as fh:
            fh.write(json.dumps(entry, ensure_ascii=False) + "\n")

    def record_text(self, req: ChatRequest, text: str) -> None:
        """Convenience for scripting fixtures by hand."""
        self.record(req, ChatOutcome(raw_text=text))


def record_fixture(req: ChatRequest, outcome: ChatOutcome, store: str | Path) -> None:
    """Append one replayable fixture entry to `store`."""
    FixtureStore(store).record(req, outcome)


class Gateway:
    """Executes chat requests with retries, guarding, and bounded fan-out."""

    def __init__(
        self,
        guard_block: int = DEFAULT_BLOCK_SIZE,
        max_retries: int = 3,
        backoff_base: float = 0.5,
        timeout: float = 600.0,
        record_to: str | Path | None = None,
    ):
        self.guard_block = guard_block
        self.max_retries = max_retries
        self.backoff_base = backoff_base
        self.timeout = timeout
        self._record_store = FixtureStore(record_to) if record_to else None
        self._record_lock = threading.Lock()
        self._fixture_cache: dict[str, FixtureStore] = {}

    # -- single request ----------------------------------------------------

    def complete(self, req: ChatRequest) -> ChatOutcome:
        """Run one request; mock endpoints replay their fixture store."""
        if req.endpoint.is_mock:
            outcome = self._complete_mock(req)
        else:
            outcome = self._complete_live(req)
        if self._record_store is not None:
            with self._record_lock:
                self._record_store.record(req, outcome)
        return outcome

    def _fixtures_for(self, endpoint: ModelEndpoint) -> FixtureStore:
        assert endpoint.fixture_path is not None
        key = str(endpoint.fixture_path)
        if key not in self._fixture_cache:
            self._fixture_cache[key] = FixtureStore(key)
        return self._fixture_cache[key]

    def _complete_mock(self, req: ChatRequest) -> ChatOutcome:
        entry = self._fixtures_for(req.endpoint).get(req.request_id)
        raw = entry["raw_text"]
        prefix = req.forced_prefix or ""
        generated = raw[len(prefix):] if prefix and raw.startswith(prefix) else raw
        kept, truncated = truncate_text(generated, 0, self.guard_block)
        return ChatOutcome(
            raw_text=prefix + kept,
            truncated_by_guard=truncated,
            usage=dict(entry.get("usage") or {}),
            latency_ms=0.0,
            attempts=1,
        )

    def _complete_live(self, req: ChatRequest) -> ChatOutcome:
        last_error: Exception | None = None
        for attempt in range(1, self.max_retries + 1):
            start = time.monotonic()
            try:
                text, truncated, usage = self._stream_once(req)
                return ChatOutcome(
                    raw_text=(req.forced_prefix or "") + text,
                    truncated_by_guard=truncated,
                    usage=usage,
                    latency_ms=(time.monotonic() - start) * 1000.0,
                    attempts=attempt,
                )
            except (requests.RequestException, TransientHttpError) as exc:
                last_error = exc
                if attempt < self.max_retries:
                    time.sleep(self.backoff_base * 2 ** (attempt - 1))
        raise EndpointUnavailable(f"{req.endpoint.base_url}: {last_error}")

    def _stream_once(self, req: ChatRequest) -> tuple[str, bool, dict[str, int]]:
        sampling = req.effective_sampling()
        payload: dict[str, Any] = {
            "model": req.endpoint.model_name,
            "messages": req.messages(),
            "temperature": sampling["temperature"],
            "top_p": sampling["top_p"],
            "max_tokens": sampling["max_new_tokens"],
            "seed": req.seed,
            "stream": True,
        }
        if req.forced_prefix:
            payload["continue_final_message"] = True
            payload["add_generation_prompt"] = False
        headers = {"Content-Type": "application/json"}
        key = os.environ.get(req.endpoint.api_key_env, "") if req.endpoint.api_key_env else ""
        if key:
            headers["Authorization"] = f"Bearer {key}"

        url = req.endpoint.base_url.rstrip("/")
        if not url.endswith("/chat/completions"):
            url += "/chat/completions"

        guard = GuardState(block_size=self.guard_block)
        truncated = False
        usage: dict[str, int] = {}
        with requests.post(url, json=payload, headers=headers, stream=True, timeout=self.timeout) as resp:
            if resp.status_code >= 500 or resp.status_code == 429:
                raise TransientHttpError(f"HTTP {resp.status_code}")
            resp.raise_for_status()
            for line in resp.iter_lines(decode_unicode=True):
                if not line or not line.startswith("data:"):
                    continue
                data = line[len("data:"):].strip()
                if data == "[DONE]":
                    break
                event = json.loads(data)
                if event.get("usage"):
                    usage = {
                        k: int(v)
                        for k, v in event["usage"].items()
                        if k in ("prompt_tokens", "completion_tokens")
                    }
                for choice in event.get("choices", []):
                    delta = choice.get("delta", {}).get("content") or ""
                    # One guard check per streamed delta.
                    if delta and guard.feed(delta) == STOP:
                        truncated = True
                        break
                if truncated:
                    break
        return guard.seen, truncated, usage

    # -- batching ------------------------------------------------------------

    def iter_complete(
        self, reqs: Iterable[ChatRequest], parallelism: int = 4
    ) -> Iterator[ChatOutcome | Exception]:
        """Yield outcomes in input order; at most `parallelism` in flight.

        Per-item failures come back positionally as exception objects, like
        asyncio.gather(return_exceptions=True), so one bad item never aborts
        the batch.
        """
        if parallelism < 1:
            raise ValueError("parallelism must be >= 1")

        def run(req: ChatRequest) -> ChatOutcome | Exception:
            try:
                return self.complete(req)
            except Exception as exc:  # noqa: BLE001 - reported positionally
                return exc

        with ThreadPoolExecutor(max_workers=parallelism) as pool:
            yield from pool.map(run, reqs)

    def complete_batch(
        self, reqs: list[ChatRequest], parallelism: int = 4
    ) -> list[ChatOutcome | Exception]:
        return list(self.iter_complete(reqs, parallelism))


class TransientHttpError(Exception):
    """Retryable HTTP condition (5xx / 429)."""
