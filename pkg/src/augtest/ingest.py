"""Build empirical distributions from chunked key-count data.

Each chunk is a text file of `key<TAB>count` lines (keys are opaque byte
strings; counts are non-negative integers).  A persistent KeyMap assigns
1-based indices in first-seen order so distributions built from different
time chunks share one domain and stay comparable in TV distance.
"""

from __future__ import annotations

import numpy as np

from .dist import Distribution
from .errors import DomainOverflow, DuplicateKey, EmptyBatch, FormatError, MalformedLine


class KeyMap:
    """Insertion-ordered bijection from opaque string keys to [1..n]."""

    def __init__(self):
        self._index: dict[str, int] = {}

    @property
    def n(self) -> int:
        return len(self._index)

    def index(self, key: str) -> int:
        """Index of key, assigning the next free index on first sight."""
        idx = self._index.get(key)
        if idx is None:
            idx = len(self._index) + 1
            self._index[key] = idx
        return idx

    def get(self, key: str) -> int | None:
        return self._index.get(key)

    def items(self):
        return self._index.items()

    def __len__(self) -> int:
        return len(self._index)

    def __eq__(self, other) -> bool:
        return isinstance(other, KeyMap) and self._index == other._index


def parse_chunk_line(line: str) -> tuple[str, int]:
    fields = line.split("\t")
    if len(fields) != 2:
        raise MalformedLine(f"expected 'key<TAB>count', got {line!r}")
    key, raw = fields
    try:
        count = int(raw)
    except ValueError as exc:
        raise MalformedLine(f"non-integer count in {line!r}") from exc
    if count < 0:
        raise MalformedLine(f"negative count in {line!r}")
    return key, count


def ingest_chunk(lines, keymap: KeyMap, final_n: int | None = None) -> Distribution:
    """Accumulate one chunk into a Distribution over [final_n].

    New keys are appended to the keymap in first-seen order; repeated keys
    within a chunk have their counts summed.  Omitted indices get zero mass.
    """
    totals: dict[int, int] = {}
    for line in lines:
        line = line.rstrip("\n")
        if not line:
            continue
        key, count = parse_chunk_line(line)
        idx = keymap.index(key)
        totals[idx] = totals.get(idx, 0) + count
    if final_n is None:
        final_n = keymap.n
    if keymap.n > final_n:
        raise DomainOverflow(f"keymap grew to {keymap.n} > final_n={final_n}")
    grand_total = sum(totals.values())
    if grand_total == 0:
        raise EmptyBatch("chunk contains no mass")
    probs = np.zeros(final_n)
    for idx, count in totals.items():
        probs[idx - 1] = count / grand_total
    return Distribution(probs)


def save_keymap(keymap: KeyMap, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for key, idx in keymap.items():
            fh.write(f"{key}\t{idx}\n")


def load_keymap(path) -> KeyMap:
    keymap = KeyMap()
    seen: dict[int, str] = {}
    keys_seen: set[str] = set()
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if not line:
                continue
            fields = line.split("\t")
            if len(fields) != 2:
                raise FormatError(f"expected 'key<TAB>index', got {line!r}")
            key, idx = fields[0], int(fields[1])
            if key in keys_seen:
                raise DuplicateKey(f"duplicate key {key!r}")
            if idx in seen:
                raise DuplicateKey(f"index {idx} assigned to both {seen[idx]!r} and {key!r}")
            keys_seen.add(key)
            seen[idx] = key
    # rebuild in index order so first-seen order is restored
    for idx in range(1, len(seen) + 1):
        if idx not in seen:
            raise FormatError(f"indices not contiguous: missing {idx}")
        keymap.index(seen[idx])
    return keymap
