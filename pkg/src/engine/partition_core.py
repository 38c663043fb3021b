"""Partitions on finite universes: construction, join, refinement and enumeration.

Blocks keep the order they were given in. Block index ``i`` is what the code
generator turns into alphabet letter ``i``, so order matters downstream, while
equality between partitions ignores it (use ``same_order`` for the strict form).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from config.app_config import MAX_ENUMERATION_UNIVERSE
from engine.errors import (
    EmptyBlock,
    IncompleteCover,
    InvalidUniverse,
    OverlappingBlocks,
    UniverseMismatch,
    UniverseTooLarge,
    UnknownElement,
)


@dataclass(frozen=True)
class Universe:
    """An ordered, non-empty set of distinct element labels."""

    elements: tuple[str, ...]
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        elements = tuple(self.elements)
        if not elements:
            raise InvalidUniverse("universe must contain at least one element")
        for label in elements:
            if not isinstance(label, str) or not label:
                raise InvalidUniverse(f"element labels must be non-empty strings, got {label!r}")
        if len(set(elements)) != len(elements):
            duplicates = sorted({x for x in elements if elements.count(x) > 1})
            raise InvalidUniverse(f"duplicate element labels: {', '.join(duplicates)}", elements=duplicates)
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "_index", {label: i for i, label in enumerate(elements)})

    @classmethod
    def of(cls, labels: Iterable[str]) -> "Universe":
        return cls(tuple(labels))

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, label):
        return label in self._index

    def position(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownElement(f"'{label}' is not an element of the universe", element=label) from None

    def ordered(self, labels: Iterable[str]) -> tuple[str, ...]:
        """Return ``labels`` sorted by universe order."""
        return tuple(sorted(labels, key=self.position))


@dataclass(frozen=True, eq=False)
class Partition:
    """Disjoint, covering, non-empty blocks over a universe.

    Build through ``make_partition`` (or ``indiscrete``/``discrete``), which
    validate the blocks.
    """

    universe: Universe
    blocks: tuple[frozenset, ...]
    _lookup: dict = field(init=False, repr=False)

    def __post_init__(self):
        lookup = {}
        for i, block in enumerate(self.blocks):
            for label in block:
                lookup[label] = i
        object.__setattr__(self, "_lookup", lookup)

    def __len__(self):
        return len(self.blocks)

    def __eq__(self, other):
        if not isinstance(other, Partition):
            return NotImplemented
        return self.universe == other.universe and frozenset(self.blocks) == frozenset(other.blocks)

    def __hash__(self):
        return hash((self.universe, frozenset(self.blocks)))

    def same_order(self, other: "Partition") -> bool:
        """Order-sensitive equality: same blocks in the same positions."""
        return self.universe == other.universe and self.blocks == other.blocks

    def block(self, index: int) -> tuple[str, ...]:
        return self.universe.ordered(self.blocks[index])

    def as_lists(self) -> list[list[str]]:
        return [list(self.block(i)) for i in range(len(self.blocks))]

    def is_discrete(self) -> bool:
        return len(self.blocks) == len(self.universe)

    def __str__(self):
        return "{" + ",".join("{" + ",".join(self.block(i)) + "}" for i in range(len(self.blocks))) + "}"


def make_partition(universe: Universe, blocks: Sequence[Iterable[str]]) -> Partition:
    """Validate ``blocks`` against ``universe`` and build a Partition."""
    seen = {}
    frozen = []
    for i, raw in enumerate(blocks):
        block = frozenset(raw)
        if not block:
            raise EmptyBlock(f"block {i} is empty", block=i)
        unknown = [label for label in block if label not in universe]
        if unknown:
            raise UnknownElement(
                f"block {i} references labels outside the universe: {', '.join(sorted(unknown))}",
                block=i,
                elements=tuple(sorted(unknown)),
            )
        for label in block:
            if label in seen:
                raise OverlappingBlocks(
                    f"'{label}' appears in blocks {seen[label]} and {i}",
                    element=label,
                    blocks=(seen[label], i),
                )
            seen[label] = i
        frozen.append(block)

    missing = [label for label in universe if label not in seen]
    if missing:
        raise IncompleteCover(f"elements in no block: {', '.join(missing)}", elements=tuple(missing))
    return Partition(universe, tuple(frozen))


def indiscrete(universe: Universe) -> Partition:
    """The single-block partition 0_U."""
    return Partition(universe, (frozenset(universe.elements),))


def discrete(universe: Universe) -> Partition:
    """The all-singletons partition 1_U."""
    return Partition(universe, tuple(frozenset((label,)) for label in universe))


def _require_same_universe(p: Partition, q: Partition):
    if p.universe != q.universe:
        raise UniverseMismatch("partitions are on different universes")


def join(p: Partition, q: Partition) -> Partition:
    """Blocks are the non-empty intersections, p-major then q-minor."""
    _require_same_universe(p, q)
    blocks = []
    for b in p.blocks:
        for c in q.blocks:
            meet = b & c
            if meet:
                blocks.append(meet)
    return Partition(p.universe, tuple(blocks))


def refines(p: Partition, q: Partition) -> bool:
    """True when every block of ``p`` lies inside some block of ``q``."""
    _require_same_universe(p, q)
    for block in p.blocks:
        targets = {q._lookup[label] for label in block}
        if len(targets) != 1:
            return False
    return True


def block_of(p: Partition, element: str) -> int:
    try:
        return p._lookup[element]
    except KeyError:
        raise UnknownElement(f"'{element}' is not an element of the universe", element=element) from None


def bell_number(n: int) -> int:
    # Bell triangle
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for value in row:
            nxt.append(nxt[-1] + value)
        row = nxt
    return row[0]


def _restricted_growth_strings(n: int) -> Iterator[tuple[int, ...]]:
    def extend(prefix, top):
        if len(prefix) == n:
            yield prefix
            return
        for value in range(top + 2):
            yield from extend(prefix + (value,), max(top, value))

    yield from extend((0,), 0)


def iter_partitions(universe: Universe) -> Iterator[Partition]:
    """Yield every partition of ``universe`` in restricted-growth-string order."""
    if len(universe) > MAX_ENUMERATION_UNIVERSE:
        raise UniverseTooLarge(
            f"refusing to enumerate {bell_number(len(universe))} partitions of a "
            f"{len(universe)}-element universe (limit {MAX_ENUMERATION_UNIVERSE})",
            size=len(universe),
        )
    elements = universe.elements
    for rgs in _restricted_growth_strings(len(elements)):
        groups = [[] for _ in range(max(rgs) + 1)]
        for label, value in zip(elements, rgs):
            groups[value].append(label)
        yield Partition(universe, tuple(frozenset(g) for g in groups))


def all_partitions(universe: Universe) -> tuple[Partition, ...]:
    return tuple(iter_partitions(universe))
