import json

import numpy as np
import pytest

from config.sample_data import SAMPLE_CHAINS
from engine.codes import BINARY, PartitionChain, build_code, build_tree
from engine.partition_core import Universe, make_partition
from utils.documents import chain_from_document


@pytest.fixture
def five_chain():
    return chain_from_document(SAMPLE_CHAINS["five"])


@pytest.fixture
def three_chain():
    return chain_from_document(SAMPLE_CHAINS["three"])


@pytest.fixture
def cube_chain():
    return chain_from_document(SAMPLE_CHAINS["cube"])


@pytest.fixture
def singleton_chain():
    return chain_from_document(SAMPLE_CHAINS["singleton"])


@pytest.fixture
def five_tree(five_chain):
    return build_tree(five_chain)


@pytest.fixture
def three_tree(three_chain):
    return build_tree(three_chain)


@pytest.fixture
def cube_tree(cube_chain):
    return build_tree(cube_chain)


@pytest.fixture
def five_book(five_chain):
    return build_code(five_chain)


@pytest.fixture
def three_book(three_chain):
    return build_code(three_chain)


@pytest.fixture
def write_json(tmp_path):
    def write(name, doc):
        path = tmp_path / name
        path.write_text(json.dumps(doc), encoding="utf-8")
        return str(path)

    return write


def _random_discretizing_chain(rng, size):
    """Random binary partitions appended until every element is a singleton."""
    universe = Universe(tuple(f"e{i}" for i in range(size)))
    partitions = []
    codes = {label: "" for label in universe}
    while len(set(codes.values())) < size:
        bits = rng.integers(0, 2, size)
        if bits.min() == bits.max():
            continue
        blocks = [[label for label, b in zip(universe, bits) if b == letter] for letter in (0, 1)]
        partitions.append(make_partition(universe, blocks))
        codes = {label: code + str(b) for (label, code), b in zip(codes.items(), bits)}
    return PartitionChain(universe, BINARY, tuple(partitions))


@pytest.fixture
def random_chains():
    rng = np.random.default_rng(20240611)
    return [_random_discretizing_chain(rng, int(rng.integers(1, 9))) for _ in range(200)]
