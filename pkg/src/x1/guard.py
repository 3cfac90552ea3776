"""Repetition-detection truncation for decoded generation text.

A generation is stopped as soon as the newest block of B characters already
occurs somewhere earlier in the post-prompt text. Text shorter than 2B is
never stopped (insufficient text length). Units are Unicode scalar values,
so the rule is independent of any tokenizer.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import FedAfterStop

DEFAULT_BLOCK_SIZE = 256

CONTINUE = "continue"
STOP = "stop"


@dataclass
class GuardState:
    """Streaming guard over one generation; prompt characters never trigger stops."""

    block_size: int = DEFAULT_BLOCK_SIZE
    prompt_len: int = 0
    seen: str = ""
    stopped: bool = False
    _prompt_remaining: int = field(init=False)

    def __post_init__(self) -> None:
        if self.block_size < 1:
            raise ValueError("block_size must be >= 1")
        if self.prompt_len < 0:
            raise ValueError("prompt_len must be >= 0")
        self._prompt_remaining = self.prompt_len

    def feed(self, delta: str) -> str:
        """Append a decoded delta; returns "stop" once a repeated block is seen."""
        if self.stopped:
            raise FedAfterStop("guard already stopped")
        if self._prompt_remaining:
            skip = min(self._prompt_remaining, len(delta))
            self._prompt_remaining -= skip
            delta = delta[skip:]
        self.seen += delta
        if self._check(self.seen):
            self.stopped = True
            return STOP
        return CONTINUE

    def _check(self, text: str) -> bool:
        b = self.block_size
        if len(text) < 2 * b:
            return False  # insufficient text length
        return text[-b:] in text[: len(text) - b]


def truncate_text(full: str, prompt_len: int, block_size: int) -> tuple[str, bool]:
    """Batch form: character-wise feed over the post-prompt suffix.

    Returns the text kept up to and including the first stopping position
    (prompt included), or the whole text when no stop fires. Rolling hashes
    keep this linear; hash hits are verified by direct comparison, so the
    result is identical to the naive per-character scan.
    """
    if block_size < 1:
        raise ValueError("block_size must be >= 1")
    if prompt_len > len(full):
        raise ValueError("prompt_len exceeds text length")
    post = full[prompt_len:]
    b = block_size
    n = len(post)
    if n < 2 * b:
        return full, False

    mod = (1 << 61) - 1
    base = 1_000_003
    shift = pow(base, b - 1, mod)

    def window_hash(start: int) -> int:
        h = 0
        for ch in post[start : start + b]:
            h = (h * base + ord(ch)) % mod
        return h

    # Two sliding length-b windows: the newest fully-prefix block (start
    # end-2b) becomes available exactly when the block ending at `end` is
    # checked against it.
    seen: dict[int, list[int]] = {}
    h_avail = window_hash(0)
    h_query = window_hash(b)
    end = 2 * b
    while True:
        s_new = end - 2 * b
        seen.setdefault(h_avail, []).append(s_new)
        hits = seen.get(h_query)
        if hits:
            block = post[end - b : end]
            for s in hits:
                if post[s : s + b] == block:
                    return full[: prompt_len + end], True
        if end == n:
            return full, False
        h_avail = ((h_avail - ord(post[s_new]) * shift) * base + ord(post[s_new + b])) % mod
        h_query = ((h_query - ord(post[end - b]) * shift) * base + ord(post[end])) % mod
        end += 1
