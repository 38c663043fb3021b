"""The genetic code as a built-in partition chain over the 64 codons.

Partition t groups codons by their t-th base, blocks in U, C, A, G order, so
the consecutive joins of the three partitions distinguish every codon after
three steps and each codon is its own code word. Universe elements are codon
instances named by amino acid and redundancy index (``Thr4`` is ACG): codons
of one amino acid are numbered in U < C < A < G order, position by position.
"""
import logging
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

from config.app_config import CODON_TABLE_PATH, RNA_ALPHABET
from engine.codes import Alphabet, PartitionChain, build_code, build_tree, decode
from engine.errors import DocumentError, InvalidCodon, InvalidPermutation, UnknownAminoAcid
from engine.partition_core import Universe, make_partition

logger = logging.getLogger(__name__)

STANDARD_AMINO_ACIDS = (
    "Ala", "Arg", "Asn", "Asp", "Cys", "Gln", "Glu", "Gly", "His", "Ile",
    "Leu", "Lys", "Met", "Phe", "Pro", "Ser", "Thr", "Trp", "Tyr", "Val",
    "Stop",
)


def codon_key(codon):
    return tuple(RNA_ALPHABET.index(base) for base in codon)


def all_codons():
    return sorted(
        (a + b + c for a in RNA_ALPHABET for b in RNA_ALPHABET for c in RNA_ALPHABET),
        key=codon_key,
    )


def check_codon(codon):
    if not isinstance(codon, str) or len(codon) != 3 or any(base not in RNA_ALPHABET for base in codon):
        raise InvalidCodon(f"'{codon}' is not a three-letter word over {''.join(RNA_ALPHABET)}", codon=codon)
    return codon


@dataclass(frozen=True)
class AminoAcidAssignment:
    codon: str
    amino_acid: str
    index: int

    @property
    def label(self):
        return f"{self.amino_acid}{self.index}"


def load_codon_table(path=CODON_TABLE_PATH):
    """Read ``CODON<TAB>AminoAcid`` lines; ``#`` starts a comment."""
    table = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split("\t") if "\t" in line else line.split()
        if len(parts) != 2:
            raise DocumentError("expected CODON<TAB>AminoAcid", field=f"line {lineno}")
        codon, amino_acid = parts[0].strip().upper(), parts[1].strip()
        try:
            check_codon(codon)
        except InvalidCodon as e:
            raise DocumentError(e.message, field=f"line {lineno}") from None
        if codon in table:
            raise DocumentError(f"codon {codon} listed twice", field=f"line {lineno}")
        table[codon] = amino_acid
    logger.debug(f"loaded {len(table)} codons from {path}")
    return table


class GeneticCode:
    """A codon table together with the chain, tree and codebook it generates."""

    def __init__(self, table):
        missing = [codon for codon in all_codons() if codon not in table]
        if missing:
            raise DocumentError(f"codon table lacks {len(missing)} codons, e.g. {', '.join(missing[:4])}")
        unknown = sorted({aa for aa in table.values() if aa not in STANDARD_AMINO_ACIDS})
        if unknown:
            raise UnknownAminoAcid(f"non-standard amino-acid labels: {', '.join(unknown)}", labels=tuple(unknown))

        seen = {}
        self.assignments = {}
        for codon in all_codons():
            amino_acid = table[codon]
            seen[amino_acid] = seen.get(amino_acid, 0) + 1
            self.assignments[codon] = AminoAcidAssignment(codon, amino_acid, seen[amino_acid])
        self._by_label = {a.label: a for a in self.assignments.values()}

        self.alphabet = Alphabet(RNA_ALPHABET)
        self.universe = Universe(tuple(a.label for a in self.assignments.values()))
        self.position_partitions = tuple(
            make_partition(
                self.universe,
                [[a.label for a in self.assignments.values() if a.codon[t] == base] for base in RNA_ALPHABET],
            )
            for t in range(3)
        )
        self.chain = PartitionChain(self.universe, self.alphabet, self.position_partitions)
        self.tree = build_tree(self.chain)
        self.book = build_code(self.chain)

    def translate_instance(self, codon):
        return decode(self.tree, check_codon(codon))

    def translate(self, codon):
        return self._by_label[self.translate_instance(codon)].amino_acid

    def assignment(self, label):
        return self._by_label[label]

    def amino_acids(self):
        return tuple(dict.fromkeys(a.amino_acid for a in self.assignments.values()))

    def codons_for(self, amino_acid):
        codons = frozenset(a.codon for a in self.assignments.values() if a.amino_acid == amino_acid)
        if not codons:
            raise UnknownAminoAcid(f"'{amino_acid}' has no codons in this table", amino_acid=amino_acid)
        return codons

    def reorder_chain(self, order):
        """Chain with the position partitions taken in ``order`` (1-based)."""
        order = tuple(order)
        if sorted(order) != [1, 2, 3]:
            raise InvalidPermutation(f"{order} is not a permutation of (1, 2, 3)", order=order)
        return self.chain.reordered([t - 1 for t in order])


@lru_cache(maxsize=1)
def standard_code():
    return GeneticCode(load_codon_table(CODON_TABLE_PATH))


def standard_chain():
    return standard_code().chain


def translate(codon):
    return standard_code().translate(codon)


def translate_instance(codon):
    return standard_code().translate_instance(codon)


def codons_for(amino_acid):
    return standard_code().codons_for(amino_acid)


def reorder_chain(order):
    return standard_code().reorder_chain(order)
