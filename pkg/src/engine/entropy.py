"""Leaf distributions of code trees and their Shannon and logical entropies.

A marble rolls from the root, picking a branch at each node by the branch
model; a leaf's probability is the product along its path. Probabilities stay
exact (``Fraction``); only Shannon entropy is a float.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from types import MappingProxyType
from typing import Mapping

import numpy as np

from config.app_config import MARBLE_BIT_GENERATOR
from engine.codes import CodeBook, CodeNode, CodeTree, PartitionChain, consecutive_joins, kraft_sum
from engine.errors import (
    IncompleteModel,
    NonNormalizedNode,
    TooFewSamples,
    UniverseMismatch,
    UnknownElement,
    ValidationError,
)
from engine.partition_core import Partition

logger = logging.getLogger(__name__)


class ModelKind(Enum):
    UNIFORM = "uniform"
    EXPLICIT = "explicit"


@dataclass(frozen=True)
class BranchModel:
    """How a marble chooses among the existing children of each node.

    ``UNIFORM`` splits evenly over the children a node actually has, so unary
    nodes pass probability 1 to their only child. ``EXPLICIT`` maps a node's
    path to per-letter probabilities; unary nodes may be omitted.
    """

    kind: ModelKind = ModelKind.UNIFORM
    probabilities: Mapping = field(default_factory=dict)

    def __post_init__(self):
        frozen = {
            tuple(path): MappingProxyType({letter: Fraction(p) for letter, p in spec.items()})
            for path, spec in dict(self.probabilities).items()
        }
        object.__setattr__(self, "probabilities", MappingProxyType(frozen))

    @classmethod
    def uniform(cls) -> "BranchModel":
        return cls(ModelKind.UNIFORM)

    @classmethod
    def explicit(cls, probabilities: Mapping) -> "BranchModel":
        return cls(ModelKind.EXPLICIT, probabilities)

    @classmethod
    def point_mass(cls, tree: CodeTree, label: str) -> "BranchModel":
        """Explicit model sending every marble down the path to ``label``."""
        target = tree.path_spellings().get(label)
        if target is None:
            raise UnknownElement(f"'{label}' is not a leaf of the tree", element=label)
        probabilities = {}
        for node in tree.internal_nodes():
            depth = len(node.path)
            if target[:depth] == node.path:
                chosen = target[depth]
            else:
                # off the path; never reached, but every node needs a distribution
                chosen = node.children[0][0]
            probabilities[node.path] = {
                letter: Fraction(int(letter == chosen)) for letter, _ in node.children
            }
        return cls(ModelKind.EXPLICIT, probabilities)

    def __eq__(self, other):
        if not isinstance(other, BranchModel):
            return NotImplemented
        return self.kind == other.kind and {k: dict(v) for k, v in self.probabilities.items()} == {
            k: dict(v) for k, v in other.probabilities.items()
        }

    def __hash__(self):
        return hash(self.kind)

    def branch_probabilities(self, node: CodeNode) -> tuple[tuple[str, Fraction], ...]:
        """Probabilities for the children of an internal node, in child order."""
        letters = [letter for letter, _ in node.children]
        if self.kind is ModelKind.UNIFORM:
            share = Fraction(1, len(letters))
            return tuple((letter, share) for letter in letters)

        spec = self.probabilities.get(node.path)
        if spec is None:
            if len(letters) == 1:
                return ((letters[0], Fraction(1)),)
            raise IncompleteModel(f"no branch probabilities for node '{''.join(node.path)}'", path=node.path)
        stray = [letter for letter in spec if letter not in letters]
        if any(spec[letter] != 0 for letter in stray):
            raise NonNormalizedNode(
                f"node '{''.join(node.path)}' puts probability on missing branches {stray}",
                path=node.path,
            )
        probs = tuple((letter, spec.get(letter, Fraction(0))) for letter in letters)
        if any(p < 0 for _, p in probs):
            raise NonNormalizedNode(f"negative probability at node '{''.join(node.path)}'", path=node.path)
        total = sum(p for _, p in probs)
        if total != 1:
            raise NonNormalizedNode(f"probabilities at node '{''.join(node.path)}' sum to {total}", path=node.path)
        return probs


@dataclass(frozen=True)
class LeafDistribution:
    probabilities: Mapping[str, Fraction]

    def __post_init__(self):
        probs = {label: Fraction(p) for label, p in dict(self.probabilities).items()}
        if any(p < 0 for p in probs.values()):
            raise ValidationError("probabilities must be non-negative")
        total = sum(probs.values(), Fraction(0))
        if total != 1:
            raise ValidationError(f"probabilities sum to {total}, not 1")
        object.__setattr__(self, "probabilities", MappingProxyType(probs))

    @classmethod
    def uniform(cls, labels) -> "LeafDistribution":
        labels = list(labels)
        return cls({label: Fraction(1, len(labels)) for label in labels})

    def __getitem__(self, label):
        return self.probabilities[label]

    def __len__(self):
        return len(self.probabilities)

    def __eq__(self, other):
        if not isinstance(other, LeafDistribution):
            return NotImplemented
        return dict(self.probabilities) == dict(other.probabilities)

    def __hash__(self):
        return hash(tuple(sorted(self.probabilities.items())))

    def values(self):
        return self.probabilities.values()

    def items(self):
        return self.probabilities.items()


@dataclass(frozen=True)
class SampleCounts:
    counts: Mapping[str, int]
    n: int
    seed: int
    bit_generator: str = MARBLE_BIT_GENERATOR

    def __post_init__(self):
        counts = {label: int(c) for label, c in dict(self.counts).items()}
        if any(c < 0 for c in counts.values()):
            raise ValidationError("counts must be non-negative")
        if sum(counts.values()) != self.n:
            raise ValidationError(f"counts sum to {sum(counts.values())}, expected n={self.n}")
        object.__setattr__(self, "counts", MappingProxyType(counts))

    def __eq__(self, other):
        if not isinstance(other, SampleCounts):
            return NotImplemented
        return (dict(self.counts), self.n, self.seed, self.bit_generator) == (
            dict(other.counts),
            other.n,
            other.seed,
            other.bit_generator,
        )

    def __hash__(self):
        return hash((tuple(self.counts.items()), self.n, self.seed))

    def frequencies(self) -> dict[str, float]:
        return {label: (c / self.n if self.n else 0.0) for label, c in self.counts.items()}


def leaf_distribution(tree: CodeTree, model: BranchModel) -> LeafDistribution:
    probs = {}
    stack = [(tree.root, Fraction(1))]
    while stack:
        node, mass = stack.pop()
        if node.is_leaf:
            probs[node.element] = mass
            continue
        for letter, p in model.branch_probabilities(node):
            stack.append((node.child(letter), mass * p))
    ordered = {label: probs[label] for label in tree.universe}
    return LeafDistribution(ordered)


def _plogp(p: Fraction) -> float:
    # p * log2(1/p) without going through a rounded float of p first
    if p == 0:
        return 0.0
    return float(p) * (math.log2(p.denominator) - math.log2(p.numerator))


def shannon_entropy(dist: LeafDistribution) -> float:
    return math.fsum(_plogp(p) for p in dist.values())


def logical_entropy(dist: LeafDistribution) -> Fraction:
    return 1 - sum((p * p for p in dist.values()), Fraction(0))


def _block_masses(partition: Partition, dist: LeafDistribution) -> list[Fraction]:
    if set(partition.universe) != set(dist.probabilities):
        raise UniverseMismatch("partition and distribution cover different elements")
    return [sum((dist[label] for label in block), Fraction(0)) for block in partition.blocks]


def partition_logical_entropy(partition: Partition, dist: LeafDistribution) -> Fraction:
    """Probability that two independent draws land in different blocks."""
    return 1 - sum((m * m for m in _block_masses(partition, dist)), Fraction(0))


def partition_shannon_entropy(partition: Partition, dist: LeafDistribution) -> float:
    return math.fsum(_plogp(m) for m in _block_masses(partition, dist))


def join_entropy_profile(chain: PartitionChain, dist: LeafDistribution) -> list[tuple[Fraction, float]]:
    """(logical, Shannon) entropy of each consecutive join J_0..J_n."""
    return [
        (partition_logical_entropy(joined, dist), partition_shannon_entropy(joined, dist))
        for joined in consecutive_joins(chain)
    ]


def average_code_length(book: CodeBook, dist: LeafDistribution) -> Fraction:
    if set(book.codes) != set(dist.probabilities):
        raise UniverseMismatch("codebook and distribution cover different elements")
    return sum((dist[label] * len(word) for label, word in book.codes.items()), Fraction(0))


def marble_simulate(tree: CodeTree, model: BranchModel, n: int, seed: int) -> SampleCounts:
    """Roll ``n`` marbles from the root with a PCG64 stream seeded by ``seed``.

    Walks advance one level at a time; every level draws ``n`` uniforms whether
    or not a walk has already stopped, so counts depend only on the inputs.
    """
    if n < 0:
        raise ValidationError(f"sample size must be non-negative, got {n}")
    if not isinstance(seed, (int, np.integer)) or isinstance(seed, bool):
        raise ValidationError(f"seed must be an integer, got {seed!r}")

    nodes = list(tree.iter_nodes())
    index = {node.path: i for i, node in enumerate(nodes)}
    width = max(1, len(tree.alphabet))
    children = np.zeros((len(nodes), width), dtype=np.int64)
    cumulative = np.full((len(nodes), width), np.inf)
    is_leaf = np.array([node.is_leaf for node in nodes])
    for i, node in enumerate(nodes):
        children[i, :] = i
        if node.is_leaf:
            continue
        running = Fraction(0)
        probs = model.branch_probabilities(node)
        for slot, (letter, p) in enumerate(probs):
            children[i, slot] = index[node.child(letter).path]
            running += p
            if slot < len(probs) - 1:
                cumulative[i, slot] = float(running)

    rng = np.random.Generator(getattr(np.random, MARBLE_BIT_GENERATOR)(seed))
    position = np.zeros(n, dtype=np.int64)
    depth = max(node.depth for node in nodes)
    for _ in range(depth):
        draws = rng.random(n)
        slot = (draws[:, None] >= cumulative[position]).sum(axis=1)
        position = np.where(is_leaf[position], position, children[position, slot])

    tally = np.bincount(position, minlength=len(nodes))
    counts = {node.element: int(tally[index[node.path]]) for node in nodes if node.is_leaf}
    ordered = {label: counts[label] for label in tree.universe}
    logger.info(f"rolled {n} marbles over {len(ordered)} leaves (seed={seed})")
    return SampleCounts(ordered, n, int(seed))


def empirical_logical_entropy(counts: SampleCounts) -> Fraction:
    """Unbiased pair estimate: chance two distinct samples sit at different leaves."""
    n = counts.n
    if n < 2:
        raise TooFewSamples(f"need at least 2 samples, got {n}", n=n)
    same = sum(c * (c - 1) for c in counts.counts.values())
    return 1 - Fraction(same, n * (n - 1))


@dataclass(frozen=True)
class CodeReport:
    codebook: CodeBook
    kraft_sum: Fraction
    distribution: LeafDistribution
    shannon_entropy: float
    logical_entropy: Fraction
    average_code_length: Fraction


def code_report(tree: CodeTree, book: CodeBook, model: BranchModel) -> CodeReport:
    dist = leaf_distribution(tree, model)
    return CodeReport(
        codebook=book,
        kraft_sum=kraft_sum(book),
        distribution=dist,
        shannon_entropy=shannon_entropy(dist),
        logical_entropy=logical_entropy(dist),
        average_code_length=average_code_length(book, dist),
    )
