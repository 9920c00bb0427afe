"""Frequent contiguous subsequence mining over a database of plan fragments.

Because every item here is a single action and occurrences must be
contiguous, sequential pattern mining collapses to frequent substring
mining; patterns are grown by occurrence-list joins on adjacent positions.
Support counts database entries containing a pattern, not occurrences.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .strips import GroundAction

ActionSeq = tuple[GroundAction, ...]


@dataclass(frozen=True)
class SequenceDB:
    """Tuples of (sequence id, action sequence); ids must be unique."""

    entries: tuple[tuple[int, ActionSeq], ...]

    def __post_init__(self) -> None:
        sids = [sid for sid, _ in self.entries]
        if len(sids) != len(set(sids)):
            raise ValueError("sequence ids are not unique")

    @classmethod
    def from_sequences(cls, sequences: Sequence[Sequence[GroundAction]]) -> "SequenceDB":
        return cls(tuple((i, tuple(seq)) for i, seq in enumerate(sequences)))

    def __len__(self) -> int:
        return len(self.entries)


def support(db: SequenceDB, pattern: Sequence[GroundAction]) -> int:
    """Number of entries containing the pattern contiguously (each counted once)."""
    pat = tuple(pattern)
    if not pat:
        raise ValueError("pattern must be nonempty")
    k = len(pat)
    count = 0
    for _, seq in db.entries:
        if any(seq[i:i + k] == pat for i in range(len(seq) - k + 1)):
            count += 1
    return count


@dataclass(frozen=True)
class FrequentFragmentSet:
    """Maximal frequent patterns, ordered longest first then lexicographically."""

    patterns: tuple[ActionSeq, ...]
    supports: dict[ActionSeq, int]
    min_support: int

    def __len__(self) -> int:
        return len(self.patterns)


def mine_frequent(db: SequenceDB, min_support: int) -> FrequentFragmentSet:
    """All maximal contiguous patterns whose support is at least ``min_support``.

    Maximal means not contained contiguously in any other frequent pattern;
    every frequent pattern of the database is a contiguous subsequence of
    some returned pattern.
    """
    if min_support < 1:
        raise ValueError("min_support must be >= 1")

    # Occurrence lists for single actions: (sid, position) pairs.
    occ: dict[ActionSeq, list[tuple[int, int]]] = {}
    for sid, seq in db.entries:
        for pos, action in enumerate(seq):
            occ.setdefault((action,), []).append((sid, pos))

    seq_by_sid = dict(db.entries)

    def entry_count(positions: list[tuple[int, int]]) -> int:
        return len({sid for sid, _ in positions})

    frequent: dict[ActionSeq, int] = {}
    level = {p: positions for p, positions in occ.items()
             if entry_count(positions) >= min_support}

    while level:
        for pattern, positions in level.items():
            frequent[pattern] = entry_count(positions)
        grown: dict[ActionSeq, list[tuple[int, int]]] = {}
        for pattern, positions in level.items():
            ext: dict[GroundAction, list[tuple[int, int]]] = {}
            for sid, pos in positions:
                seq = seq_by_sid[sid]
                nxt = pos + 1
                if nxt < len(seq):
                    ext.setdefault(seq[nxt], []).append((sid, nxt))
            for action, next_positions in ext.items():
                if entry_count(next_positions) >= min_support:
                    grown[pattern + (action,)] = next_positions
        level = grown

    # A frequent pattern is non-maximal exactly when some frequent pattern one
    # action longer contains it, i.e. when it is the head or tail of one.
    non_maximal = set()
    for pattern in frequent:
        if len(pattern) > 1:
            non_maximal.add(pattern[:-1])
            non_maximal.add(pattern[1:])
    maximal = sorted((p for p in frequent if p not in non_maximal),
                     key=lambda p: (-len(p), p))
    return FrequentFragmentSet(patterns=tuple(maximal),
                               supports={p: frequent[p] for p in maximal},
                               min_support=min_support)
