"""Generative versus selectionist determination of an outcome.

A generative run starts with every switch in neutral and sets one switch per
code letter; the candidate outcomes stay potential until the last switch is
set. A selectionist run actualizes every candidate at once and lets repeated
fitness-weighted rounds eliminate all but one.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterator, Mapping, Sequence, Union

import numpy as np

from config.app_config import DEFAULT_MAX_ROUNDS, DEFAULT_THRESHOLD_FACTOR, TRACE_STATE_LIMIT
from engine.codes import CodeTree, descend
from engine.errors import (
    AllZeroFitness,
    AmbiguousOptimum,
    CodeLengthMismatch,
    DidNotConverge,
    EmptyCandidates,
    InvalidPolicy,
    InvalidSwitchSpace,
    OutcomeMismatchPrecondition,
    UnknownPosition,
    ValidationError,
    WordTooLong,
    WordTooShort,
)

logger = logging.getLogger(__name__)

Fitness = Union[Mapping[str, float], Callable[[str], float]]


class MechanismKind(Enum):
    GENERATIVE = "generative"
    GENERATIVE_TREE = "generative_tree"
    SELECTIONIST = "selectionist"


@dataclass(frozen=True)
class SwitchSpace:
    """``n`` switches with ``k`` positions each; outcomes read switch 1 leftmost."""

    n: int
    k: int
    positions: tuple[str, ...] = ()

    def __post_init__(self):
        if self.n < 1:
            raise InvalidSwitchSpace(f"need at least one switch, got n={self.n}")
        if self.k < 2:
            raise InvalidSwitchSpace(f"switches need at least two positions, got k={self.k}")
        positions = tuple(self.positions)
        if not positions:
            if self.k > 10:
                raise InvalidSwitchSpace("spaces with more than 10 positions need explicit position letters")
            positions = tuple(str(i) for i in range(self.k))
        if len(positions) != self.k or len(set(positions)) != self.k:
            raise InvalidSwitchSpace(f"need {self.k} distinct position letters, got {list(positions)}")
        if any(len(p) != 1 for p in positions):
            raise InvalidSwitchSpace("position letters must be single characters")
        object.__setattr__(self, "positions", positions)

    @classmethod
    def from_letters(cls, n: int, letters) -> "SwitchSpace":
        letters = tuple(letters)
        return cls(n, len(letters), letters)

    @property
    def size(self) -> int:
        return self.k**self.n

    def outcomes(self) -> Iterator[str]:
        for combo in itertools.product(self.positions, repeat=self.n):
            yield "".join(combo)

    def outcome(self, index: int) -> str:
        letters = []
        for _ in range(self.n):
            index, digit = divmod(index, self.k)
            letters.append(self.positions[digit])
        return "".join(reversed(letters))

    def parse_code(self, code) -> tuple[str, ...]:
        letters = tuple(code)
        if len(letters) != self.n:
            raise CodeLengthMismatch(f"code has {len(letters)} letters for {self.n} switches", length=len(letters))
        for i, letter in enumerate(letters):
            if letter not in self.positions:
                raise UnknownPosition(f"'{letter}' at switch {i + 1} is not a position of {list(self.positions)}", switch=i + 1)
        return letters


class _Outcomes(Sequence):
    """Lazy, index-addressable view of a switch space's outcome labels."""

    def __init__(self, space: SwitchSpace):
        self.space = space

    def __len__(self):
        return self.space.size

    def __getitem__(self, index):
        if isinstance(index, slice):
            return [self[i] for i in range(*index.indices(len(self)))]
        if not 0 <= index < len(self):
            raise IndexError(index)
        return self.space.outcome(index)

    def __iter__(self):
        return self.space.outcomes()


@dataclass(frozen=True)
class GenerativeState:
    """Switch settings (``None`` for neutral); candidates are enumerated lazily."""

    settings: tuple
    positions: tuple[str, ...]

    @property
    def neutral(self) -> int:
        return sum(1 for s in self.settings if s is None)

    @property
    def size(self) -> int:
        return len(self.positions) ** self.neutral

    def candidates(self) -> tuple[str, ...]:
        options = [self.positions if s is None else (s,) for s in self.settings]
        return tuple("".join(combo) for combo in itertools.product(*options))


@dataclass(frozen=True)
class TreeState:
    path: tuple[str, ...]
    block: tuple[str, ...]

    @property
    def size(self) -> int:
        return len(self.block)

    def candidates(self) -> tuple[str, ...]:
        return self.block


@dataclass(frozen=True)
class SelectionistState:
    survivors: tuple[str, ...]
    weights: tuple[float, ...]

    @property
    def size(self) -> int:
        return len(self.survivors)

    def candidates(self) -> tuple[str, ...]:
        return self.survivors


@dataclass(frozen=True)
class MechanismTrace:
    kind: MechanismKind
    outcome: str
    steps: int
    evaluations: int
    sizes: tuple[int, ...]
    states: tuple = ()  # empty when a large selectionist run skips state recording
    events: tuple[str, ...] = ()

    def __post_init__(self):
        if self.sizes and self.sizes[-1] != 1:
            raise ValidationError(f"a completed trace ends with one candidate, not {self.sizes[-1]}")


@dataclass(frozen=True)
class SelectionPolicy:
    """Multiplicative-weights elimination.

    Each round multiplies weights by fitness, normalizes, drops candidates whose
    weight is below ``threshold`` and renormalizes. ``threshold`` defaults to
    1 / (4 * |candidates|) and must stay below 1 / |candidates|.
    """

    threshold: float | None = None
    max_rounds: int = DEFAULT_MAX_ROUNDS
    strict_ties: bool = False
    keep_states: bool | None = None

    def resolve_threshold(self, m: int) -> float:
        eps = self.threshold if self.threshold is not None else 1.0 / (DEFAULT_THRESHOLD_FACTOR * m)
        if not 0 < eps < 1.0 / m:
            raise InvalidPolicy(f"threshold must lie in (0, 1/{m}), got {eps}", threshold=eps)
        if self.max_rounds < 1:
            raise InvalidPolicy(f"max_rounds must be positive, got {self.max_rounds}")
        return eps


@dataclass(frozen=True)
class MechanismComparison:
    generative: MechanismTrace
    selectionist: MechanismTrace
    space_size: int

    @property
    def outcomes_agree(self) -> bool:
        return self.generative.outcome == self.selectionist.outcome

    @property
    def generative_evaluations(self) -> int:
        return self.generative.evaluations

    @property
    def selectionist_evaluations(self) -> int:
        return self.selectionist.evaluations

    @property
    def selectionist_first_round_evaluations(self) -> int:
        return self.selectionist.sizes[0]

    @property
    def generative_peak_actualized(self) -> int:
        # only the final outcome is ever actual; earlier states are superpositions
        return 1

    @property
    def selectionist_peak_actualized(self) -> int:
        return max(self.selectionist.sizes)


def generative_run(space: SwitchSpace, code) -> MechanismTrace:
    letters = space.parse_code(code)
    settings = [None] * space.n
    states = [GenerativeState(tuple(settings), space.positions)]
    for t, letter in enumerate(letters):
        settings[t] = letter
        states.append(GenerativeState(tuple(settings), space.positions))
    return MechanismTrace(
        kind=MechanismKind.GENERATIVE,
        outcome="".join(letters),
        steps=space.n,
        evaluations=space.n,
        sizes=tuple(state.size for state in states),
        states=tuple(states),
    )


def generative_run_tree(tree: CodeTree, code) -> MechanismTrace:
    """Descend the code tree, recording each node's block as the candidate set."""
    letters = tree.alphabet.parse_word(code)
    node = tree.root
    states = [TreeState(node.path, node.block)]
    for position, letter in enumerate(letters):
        if node.is_leaf:
            raise WordTooLong(f"reached '{node.element}' with {len(letters) - position} letters left", position=position)
        node = descend(tree, node, letter, position)
        states.append(TreeState(node.path, node.block))
    if not node.is_leaf:
        raise WordTooShort(f"word ends at an internal node holding {len(node.block)} elements", position=len(letters))
    return MechanismTrace(
        kind=MechanismKind.GENERATIVE_TREE,
        outcome=node.element,
        steps=len(letters),
        evaluations=len(letters),
        sizes=tuple(state.size for state in states),
        states=tuple(states),
    )


def _fitness_values(labels: Sequence[str], fitness: Fitness) -> np.ndarray:
    if callable(fitness) and not isinstance(fitness, Mapping):
        values = np.fromiter((fitness(label) for label in labels), dtype=float, count=len(labels))
    else:
        missing = [label for label in labels if label not in fitness]
        if missing:
            raise ValidationError(f"no fitness for: {', '.join(missing[:5])}", elements=tuple(missing))
        values = np.array([fitness[label] for label in labels], dtype=float)
    if not np.all(np.isfinite(values)) or np.any(values < 0):
        raise ValidationError("fitness values must be finite non-negative numbers")
    return values


def _select(labels: Sequence[str], values: np.ndarray, policy: SelectionPolicy) -> MechanismTrace:
    m = len(labels)
    if np.all(values == 0):
        raise AllZeroFitness("every candidate has zero fitness")
    eps = policy.resolve_threshold(m)
    keep_states = policy.keep_states if policy.keep_states is not None else m <= TRACE_STATE_LIMIT

    top = values.max()
    tied = np.flatnonzero(values == top)
    if len(tied) > 1 and policy.strict_ties:
        raise AmbiguousOptimum(
            f"{len(tied)} candidates share the maximal fitness {top}",
            candidates=tuple(labels[i] for i in tied[:16]),
        )

    alive = np.arange(m)
    weights = np.full(m, 1.0 / m)
    states = []
    sizes = [m]
    events = []
    rounds = 0
    evaluations = 0

    def record():
        if keep_states:
            states.append(SelectionistState(tuple(labels[i] for i in alive), tuple(float(w) for w in weights)))

    record()
    # the first round always evaluates every candidate
    while rounds == 0 or len(alive) > 1:
        scores = values[alive]
        if rounds and np.all(scores == scores[0]):
            winner = labels[alive[0]]
            events.append(f"tie among {len(alive)} candidates at fitness {scores[0]:g}; kept '{winner}' by label order")
            logger.warning(events[-1])
            alive = alive[:1]
            weights = np.ones(1)
            sizes.append(1)
            record()
            break
        if rounds >= policy.max_rounds:
            raise DidNotConverge(f"{len(alive)} candidates remain after {rounds} rounds", survivors=len(alive))

        rounds += 1
        evaluations += len(alive)
        weights = weights * scores
        weights = weights / weights.sum()
        kept = weights >= eps
        alive, weights = alive[kept], weights[kept]
        weights = weights / weights.sum()
        sizes.append(len(alive))
        record()

    outcome = labels[alive[0]]
    logger.info(f"selection settled on '{outcome}' after {rounds} rounds and {evaluations} evaluations")
    return MechanismTrace(
        kind=MechanismKind.SELECTIONIST,
        outcome=outcome,
        steps=len(sizes) - 1,
        evaluations=evaluations,
        sizes=tuple(sizes),
        states=tuple(states),
        events=tuple(events),
    )


def selectionist_run(candidates, fitness: Fitness, policy: SelectionPolicy | None = None) -> MechanismTrace:
    """Eliminate candidates by fitness-weighted rounds until one survives.

    Candidates are ordered by label; that order breaks fitness ties.
    """
    labels = sorted(set(candidates))
    if not labels:
        raise EmptyCandidates("no candidates to select from")
    return _select(labels, _fitness_values(labels, fitness), policy or SelectionPolicy())


def compare_mechanisms(space: SwitchSpace, code, fitness: Fitness, policy: SelectionPolicy | None = None) -> MechanismComparison:
    """Run both mechanisms toward the outcome spelled by ``code``."""
    generative = generative_run(space, code)
    labels = _Outcomes(space)
    values = _fitness_values(labels, fitness)
    best = np.flatnonzero(values == values.max())
    if len(best) != 1 or labels[int(best[0])] != generative.outcome:
        favourites = [labels[int(i)] for i in best[:4]]
        raise OutcomeMismatchPrecondition(
            f"fitness must peak uniquely at '{generative.outcome}', peaks at {favourites}",
            peaks=tuple(favourites),
        )
    selectionist = _select(labels, values, policy or SelectionPolicy())
    logger.info(
        f"generative: {generative.evaluations} settings; selectionist: {selectionist.evaluations} evaluations "
        f"over {space.size} actualized candidates"
    )
    return MechanismComparison(generative, selectionist, space.size)
