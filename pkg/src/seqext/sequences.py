"""Sequences over integer letters, blocked sequences, and their text format.

A letter is a positive integer id. A block is a contiguous group of
pairwise-distinct letters; a blocked sequence is an ordered list of blocks
(empty blocks allowed). All types are immutable values.

Text format: letters are whitespace-separated tokens; `|` separates blocks.
A leading/trailing `|` denotes an empty initial/terminal block, `| |` an
interior empty block. Integer tokens parse by value; any other tokens are
assigned ids 1,2,... by first occurrence.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

__all__ = [
    "Sequence",
    "BlockedSequence",
    "PatternSequence",
    "normalize",
    "flatten",
    "parse_sequence",
    "parse_pattern",
    "render",
]


def _as_letter_tuple(tokens: Iterable[int]) -> tuple[int, ...]:
    out = tuple(tokens)
    for tok in out:
        if not isinstance(tok, int) or isinstance(tok, bool) or tok < 1:
            raise ValueError(f"letter ids must be positive integers, got {tok!r}")
    return out


@dataclass(frozen=True)
class Sequence:
    """Immutable sequence of letters."""

    tokens: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "tokens", _as_letter_tuple(self.tokens))

    @property
    def length(self) -> int:
        return len(self.tokens)

    @property
    def alphabet(self) -> frozenset[int]:
        return frozenset(self.tokens)

    def __len__(self) -> int:
        return len(self.tokens)

    def __iter__(self):
        return iter(self.tokens)

    def __str__(self) -> str:
        return render(self)


@dataclass(frozen=True)
class BlockedSequence:
    """Sequence partitioned into blocks of pairwise-distinct letters."""

    blocks: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self) -> None:
        blocks = tuple(_as_letter_tuple(block) for block in self.blocks)
        for block in blocks:
            if len(set(block)) != len(block):
                raise ValueError(f"repeated letter inside a block: {block}")
        object.__setattr__(self, "blocks", blocks)

    @property
    def length(self) -> int:
        return sum(len(block) for block in self.blocks)

    @property
    def alphabet(self) -> frozenset[int]:
        return frozenset(tok for block in self.blocks for tok in block)

    @property
    def block_count(self) -> int:
        return len(self.blocks)

    def __len__(self) -> int:
        return self.length

    def __str__(self) -> str:
        return render(self)


@dataclass(frozen=True)
class PatternSequence(Sequence):
    """Forbidden pattern: a sequence in normalized form (ids 1..r by first occurrence)."""

    def __post_init__(self) -> None:
        super().__post_init__()
        if self.tokens != normalize(Sequence(self.tokens)).tokens:
            raise ValueError("pattern must be normalized (ids 1..r by first occurrence)")

    @classmethod
    def from_sequence(cls, seq: "Sequence") -> "PatternSequence":
        return cls(normalize(seq).tokens)


def normalize(seq: Sequence) -> Sequence:
    """Relabel letters 1..A by first occurrence. Idempotent; preserves the token-equality pattern."""
    ids: dict[int, int] = {}
    out = []
    for tok in seq.tokens:
        if tok not in ids:
            ids[tok] = len(ids) + 1
        out.append(ids[tok])
    return Sequence(tuple(out))


def flatten(bseq: BlockedSequence) -> Sequence:
    """Concatenate the blocks in order."""
    toks: list[int] = []
    for block in bseq.blocks:
        toks.extend(block)
    return Sequence(tuple(toks))


def _map_tokens(raw: list[str]) -> dict[str, int]:
    if all(tok.isdigit() for tok in raw):
        mapping = {}
        for tok in raw:
            val = int(tok)
            if val < 1:
                raise ValueError(f"letter ids must be positive, got {tok!r}")
            mapping[tok] = val
        return mapping
    mapping = {}
    for tok in raw:
        if tok not in mapping:
            mapping[tok] = len(mapping) + 1
    return mapping


def parse_sequence(text: str) -> Union[Sequence, BlockedSequence]:
    """Parse sequence text; returns a BlockedSequence iff the text contains `|`."""
    if text.strip() == "":
        raise ValueError("empty input where a sequence is required")
    if "|" in text:
        fields = text.split("|")
        raw_blocks = [field.split() for field in fields]
        mapping = _map_tokens([tok for block in raw_blocks for tok in block])
        return BlockedSequence(
            tuple(tuple(mapping[tok] for tok in block) for block in raw_blocks)
        )
    raw = text.split()
    mapping = _map_tokens(raw)
    return Sequence(tuple(mapping[tok] for tok in raw))


def parse_pattern(text: str) -> PatternSequence:
    """Parse text as a forbidden pattern, normalizing the letters."""
    seq = parse_sequence(text)
    if isinstance(seq, BlockedSequence):
        raise ValueError("patterns cannot contain block separators")
    return PatternSequence.from_sequence(seq)


def render(obj: Union[Sequence, BlockedSequence]) -> str:
    """Inverse of parse_sequence for integer-token texts, up to whitespace."""
    if isinstance(obj, BlockedSequence):
        parts: list[str] = []
        for i, block in enumerate(obj.blocks):
            if i:
                parts.append("|")
            parts.extend(str(tok) for tok in block)
        return " ".join(parts)
    return " ".join(str(tok) for tok in obj.tokens)
