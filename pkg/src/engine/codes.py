"""Prefix-free codes generated by consecutive partition joins.

A chain P_1..P_n of partitions, each with one block per alphabet letter,
distinguishes the universe step by step: J_t = J_{t-1} v P_t starting from
0_U. An element's code word is the letters of the blocks holding it in
P_1, P_2, ..., cut off at the first join where it is a singleton. The same
walk, read node by node, is the code tree.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Sequence

from engine.errors import (
    BlockCountMismatch,
    InvalidAlphabet,
    NoSuchBranch,
    NonDiscretizingChain,
    TrailingPartialWord,
    UniverseMismatch,
    UnknownElement,
    UnknownLetter,
    UnrealizableCode,
    WordTooLong,
    WordTooShort,
)
from engine.partition_core import (
    Partition,
    Universe,
    block_of,
    indiscrete,
    join,
    make_partition,
)

logger = logging.getLogger(__name__)

CodeWord = tuple  # tuple[str, ...] of alphabet letters


@dataclass(frozen=True)
class Alphabet:
    letters: tuple[str, ...]

    def __post_init__(self):
        letters = tuple(self.letters)
        if not letters:
            raise InvalidAlphabet("alphabet must contain at least one letter")
        for letter in letters:
            if not isinstance(letter, str) or not letter or any(ch.isspace() for ch in letter):
                raise InvalidAlphabet(f"letters must be non-empty tokens without spaces, got {letter!r}")
        if len(set(letters)) != len(letters):
            raise InvalidAlphabet(f"duplicate letters in alphabet {list(letters)}")
        object.__setattr__(self, "letters", letters)

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __contains__(self, letter):
        return letter in self.letters

    def __getitem__(self, index):
        return self.letters[index]

    def index(self, letter: str) -> int:
        try:
            return self.letters.index(letter)
        except ValueError:
            raise UnknownLetter(f"'{letter}' is not in the alphabet {list(self.letters)}", letter=letter) from None

    @property
    def single_char(self) -> bool:
        return all(len(letter) == 1 for letter in self.letters)

    def parse_word(self, text) -> CodeWord:
        """Split text into letters; single-character alphabets need no separators."""
        if not isinstance(text, str):
            return tuple(text)
        if self.single_char:
            return tuple(ch for ch in text if not ch.isspace())
        return tuple(text.split())

    def format_word(self, word: Iterable[str]) -> str:
        return ("" if self.single_char else " ").join(word)


BINARY = Alphabet(("0", "1"))


@dataclass(frozen=True)
class PartitionChain:
    """Ordered partitions over one universe, each with |alphabet| blocks."""

    universe: Universe
    alphabet: Alphabet
    partitions: tuple[Partition, ...]

    def __post_init__(self):
        object.__setattr__(self, "partitions", tuple(self.partitions))
        for t, partition in enumerate(self.partitions, start=1):
            if partition.universe != self.universe:
                raise UniverseMismatch(f"partition {t} is on a different universe", step=t)
            if len(partition) != len(self.alphabet):
                raise BlockCountMismatch(
                    f"partition {t} has {len(partition)} blocks but the alphabet has {len(self.alphabet)} letters",
                    step=t,
                )

    def __len__(self):
        return len(self.partitions)

    def reordered(self, order: Sequence[int]) -> "PartitionChain":
        return PartitionChain(self.universe, self.alphabet, tuple(self.partitions[i] for i in order))


def make_chain(universe: Iterable[str], alphabet: Iterable[str], partitions: Iterable[Sequence[Iterable[str]]]) -> PartitionChain:
    """Build and validate a chain from plain labels and block lists."""
    u = Universe.of(universe)
    return PartitionChain(u, Alphabet(tuple(alphabet)), tuple(make_partition(u, blocks) for blocks in partitions))


@dataclass(frozen=True)
class CodeBook:
    """Total, injective element -> code word mapping in universe order."""

    universe: Universe
    alphabet: Alphabet
    codes: Mapping[str, CodeWord]

    def __post_init__(self):
        missing = [label for label in self.universe if label not in self.codes]
        if missing:
            raise UnknownElement(f"codebook has no word for: {', '.join(missing)}", elements=tuple(missing))
        extra = [label for label in self.codes if label not in self.universe]
        if extra:
            raise UnknownElement(f"codebook words for unknown elements: {', '.join(extra)}", elements=tuple(extra))
        for label, word in self.codes.items():
            for letter in word:
                if letter not in self.alphabet:
                    raise UnknownLetter(f"word for '{label}' uses '{letter}'", letter=letter, element=label)
        ordered = {label: tuple(self.codes[label]) for label in self.universe}
        object.__setattr__(self, "codes", MappingProxyType(ordered))

    @classmethod
    def from_strings(cls, alphabet: Alphabet, words: Mapping[str, str]) -> "CodeBook":
        return cls(Universe.of(words), alphabet, {label: alphabet.parse_word(w) for label, w in words.items()})

    def __getitem__(self, label):
        return self.codes[label]

    def __len__(self):
        return len(self.codes)

    def __eq__(self, other):
        if not isinstance(other, CodeBook):
            return NotImplemented
        return self.alphabet == other.alphabet and dict(self.codes) == dict(other.codes)

    def __hash__(self):
        return hash((self.alphabet, tuple(self.codes.items())))

    def word(self, label: str) -> str:
        return self.alphabet.format_word(self.codes[label])

    def as_strings(self) -> dict[str, str]:
        return {label: self.alphabet.format_word(w) for label, w in self.codes.items()}


@dataclass(frozen=True)
class CodeNode:
    """A node of the code tree; ``block`` lists the still-possible elements."""

    block: tuple[str, ...]
    path: CodeWord
    children: tuple = ()  # ((letter, CodeNode), ...) in alphabet order
    _by_letter: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "_by_letter", dict(self.children))

    @property
    def is_leaf(self) -> bool:
        return not self.children

    @property
    def depth(self) -> int:
        return len(self.path)

    @property
    def element(self) -> str:
        if len(self.block) != 1:
            raise ValueError("only leaves carry a single element")
        return self.block[0]

    def child(self, letter: str):
        return self._by_letter.get(letter)


@dataclass(frozen=True)
class CodeTree:
    universe: Universe
    alphabet: Alphabet
    root: CodeNode

    def iter_nodes(self) -> Iterator[CodeNode]:
        """Pre-order traversal, children in alphabet order."""
        stack = [self.root]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(child for _, child in reversed(node.children))

    def leaves(self) -> tuple[CodeNode, ...]:
        return tuple(node for node in self.iter_nodes() if node.is_leaf)

    def internal_nodes(self) -> tuple[CodeNode, ...]:
        return tuple(node for node in self.iter_nodes() if not node.is_leaf)

    @property
    def node_count(self) -> int:
        return sum(1 for _ in self.iter_nodes())

    def path_spellings(self) -> dict[str, CodeWord]:
        return {leaf.element: leaf.path for leaf in self.leaves()}


def consecutive_joins(chain: PartitionChain) -> list[Partition]:
    """J_0 = 0_U, J_t = J_{t-1} v P_t."""
    joins = [indiscrete(chain.universe)]
    for partition in chain.partitions:
        joins.append(join(joins[-1], partition))
    return joins


def _first_singleton_steps(chain: PartitionChain, joins: Sequence[Partition]) -> dict[str, int]:
    steps = {}
    for t, joined in enumerate(joins):
        for block in joined.blocks:
            if len(block) == 1:
                (label,) = block
                steps.setdefault(label, t)
    stuck = [label for label in chain.universe if label not in steps]
    if stuck:
        raise NonDiscretizingChain(
            f"chain never distinguishes: {', '.join(stuck)}",
            elements=stuck,
        )
    return steps


def validate_chain(chain: PartitionChain) -> list[str]:
    """Return (and log) warnings about steps that add no distinctions."""
    diagnostics = []
    joins = consecutive_joins(chain)
    for t in range(1, len(joins)):
        if joins[t - 1].is_discrete():
            diagnostics.append(f"partition {t} follows full discretization and is ignored")
        elif joins[t] == joins[t - 1]:
            diagnostics.append(f"partition {t} is redundant: its join adds no distinction")
    for message in diagnostics:
        logger.warning(message)
    return diagnostics


def build_code(chain: PartitionChain) -> CodeBook:
    joins = consecutive_joins(chain)
    steps = _first_singleton_steps(chain, joins)
    codes = {}
    for label in chain.universe:
        codes[label] = tuple(
            chain.alphabet[block_of(partition, label)] for partition in chain.partitions[: steps[label]]
        )
    logger.debug(f"built code for {len(codes)} elements from {len(chain)} partitions")
    return CodeBook(chain.universe, chain.alphabet, codes)


def build_tree(chain: PartitionChain) -> CodeTree:
    _first_singleton_steps(chain, consecutive_joins(chain))
    universe = chain.universe

    def grow(block: frozenset, path: tuple) -> CodeNode:
        ordered = universe.ordered(block)
        if len(block) == 1:
            return CodeNode(ordered, path)
        partition = chain.partitions[len(path)]
        children = []
        for letter, part in zip(chain.alphabet, partition.blocks):
            meet = block & part
            if meet:
                children.append((letter, grow(meet, path + (letter,))))
        return CodeNode(ordered, path, tuple(children))

    return CodeTree(universe, chain.alphabet, grow(frozenset(universe.elements), ()))


def encode(book: CodeBook, element: str) -> CodeWord:
    try:
        return book.codes[element]
    except KeyError:
        raise UnknownElement(f"'{element}' is not in the codebook", element=element) from None


def encode_many(book: CodeBook, elements: Iterable[str]) -> CodeWord:
    word = ()
    for element in elements:
        word += encode(book, element)
    return word


def descend(tree: CodeTree, node: CodeNode, letter: str, position: int) -> CodeNode:
    if letter not in tree.alphabet:
        raise UnknownLetter(f"'{letter}' at position {position} is not in the alphabet", letter=letter, position=position)
    child = node.child(letter)
    if child is None:
        prefix = tree.alphabet.format_word(node.path)
        raise NoSuchBranch(
            f"no '{letter}' branch at position {position} below '{prefix}'",
            letter=letter,
            position=position,
        )
    return child


def decode(tree: CodeTree, word) -> str:
    letters = tree.alphabet.parse_word(word)
    node = tree.root
    for position, letter in enumerate(letters):
        if node.is_leaf:
            raise WordTooLong(
                f"reached '{node.element}' with {len(letters) - position} letters left",
                position=position,
            )
        node = descend(tree, node, letter, position)
    if not node.is_leaf:
        raise WordTooShort(
            f"word ends at an internal node holding {len(node.block)} elements",
            position=len(letters),
        )
    return node.element


def decode_stream(tree: CodeTree, letters) -> list[str]:
    """Greedy instantaneous decoding of a concatenation of code words."""
    stream = tree.alphabet.parse_word(letters)
    if tree.root.is_leaf and stream:
        raise WordTooLong("a single-leaf tree decodes only the empty word", position=0)
    out = []
    node = tree.root
    for position, letter in enumerate(stream):
        node = descend(tree, node, letter, position)
        if node.is_leaf:
            out.append(node.element)
            node = tree.root
    if node is not tree.root:
        raise TrailingPartialWord(
            f"stream ends inside a word after '{tree.alphabet.format_word(node.path)}'",
            decoded=tuple(out),
            position=len(stream),
        )
    return out


def is_prefix_free(book: CodeBook) -> bool:
    words = sorted(book.codes.values())
    for shorter, longer in zip(words, words[1:]):
        if longer[: len(shorter)] == shorter:
            return False
    return True


def kraft_sum(book: CodeBook, alphabet_size: int | None = None) -> Fraction:
    k = len(book.alphabet) if alphabet_size is None else alphabet_size
    return sum((Fraction(1, k ** len(word)) for word in book.codes.values()), Fraction(0))


def chain_from_code(book: CodeBook) -> PartitionChain:
    """Recover a chain whose consecutive joins regenerate ``book``.

    Partition t puts each element in the block of its t-th letter. Elements
    whose word has already ended fill otherwise empty blocks first, then go to
    block 0.
    """
    if not is_prefix_free(book):
        raise UnrealizableCode("codebook is not prefix-free")
    universe, alphabet = book.universe, book.alphabet
    depth = max(len(word) for word in book.codes.values())
    partitions = []
    for t in range(depth):
        blocks = [[] for _ in alphabet]
        finished = []
        for label in universe:
            word = book.codes[label]
            if len(word) > t:
                blocks[alphabet.index(word[t])].append(label)
            else:
                finished.append(label)
        for block in blocks:
            if not block:
                if not finished:
                    raise UnrealizableCode(
                        f"no element can fill the empty block at position {t + 1}",
                        position=t + 1,
                    )
                block.append(finished.pop(0))
        blocks[0].extend(finished)
        partitions.append(make_partition(universe, blocks))

    chain = PartitionChain(universe, alphabet, tuple(partitions))
    rebuilt = build_code(chain)
    if rebuilt != book:
        early = [label for label in universe if rebuilt[label] != book[label]]
        raise UnrealizableCode(
            f"words continue after their elements are distinguished: {', '.join(early)}",
            elements=tuple(early),
        )
    return chain
