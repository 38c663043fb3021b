import itertools

import pytest

from config.app_config import CODON_TABLE_PATH
from engine.codes import build_code, build_tree, consecutive_joins, decode, is_prefix_free, kraft_sum
from engine.errors import DocumentError, InvalidCodon, InvalidPermutation, UnknownAminoAcid
from engine.genetic import (
    GeneticCode,
    all_codons,
    codons_for,
    load_codon_table,
    reorder_chain,
    standard_chain,
    standard_code,
    translate,
    translate_instance,
)


@pytest.fixture(scope="module")
def table():
    return load_codon_table(CODON_TABLE_PATH)


def test_bundled_table_is_complete(table):
    assert len(table) == 64
    assert set(table) == set(all_codons())


def test_standard_chain_builds_complete_tree():
    chain = standard_chain()
    tree = build_tree(chain)
    book = build_code(chain)
    assert len(tree.leaves()) == 64
    assert all(len(node.children) == 4 for node in tree.internal_nodes())
    assert {len(word) for word in book.codes.values()} == {3}
    assert is_prefix_free(book)
    assert kraft_sum(book) == 1


def test_first_join_has_four_blocks_of_sixteen():
    joins = consecutive_joins(standard_chain())
    assert sorted(len(block) for block in joins[1].blocks) == [16] * 4


def test_translate_known_codons():
    assert translate("ACG") == "Thr"
    assert translate_instance("ACG") == "Thr4"
    assert translate("AUG") == "Met"
    assert translate("UAA") == "Stop"
    assert translate("UGG") == "Trp"


def test_translation_agrees_with_bundled_table(table):
    for codon, amino_acid in table.items():
        assert translate(codon) == amino_acid


def test_each_codon_is_its_own_code_word():
    code = standard_code()
    for codon, assignment in code.assignments.items():
        assert code.book.word(assignment.label) == codon


@pytest.mark.parametrize("codon", ["AC", "ACGU", "ACT", "xyz", ""])
def test_invalid_codons(codon):
    with pytest.raises(InvalidCodon):
        translate(codon)


def test_codons_for():
    assert codons_for("Thr") == {"ACU", "ACC", "ACA", "ACG"}
    assert codons_for("Met") == {"AUG"}
    with pytest.raises(UnknownAminoAcid):
        codons_for("Xyz")


def test_codon_sets_partition_all_codons():
    code = standard_code()
    groups = [code.codons_for(aa) for aa in code.amino_acids()]
    assert sum(len(g) for g in groups) == 64
    assert set().union(*groups) == set(all_codons())
    for a, b in itertools.combinations(groups, 2):
        assert not a & b


def test_instance_indices_follow_codon_order():
    code = standard_code()
    assert [code.assignments[c].label for c in ("ACU", "ACC", "ACA", "ACG")] == ["Thr1", "Thr2", "Thr3", "Thr4"]
    assert code.assignments["UUA"].label == "Leu1"
    assert code.assignments["CUG"].label == "Leu6"


def test_reorder_chain_permutes_code_words():
    book = build_code(reorder_chain((2, 1, 3)))
    assert book.word("Thr4") == "CAG"
    assert build_code(reorder_chain((1, 2, 3))) == standard_code().book


@pytest.mark.parametrize("order", list(itertools.permutations((1, 2, 3))))
def test_every_order_gives_complete_permuted_code(order):
    chain = reorder_chain(order)
    book = build_code(chain)
    tree = build_tree(chain)
    assert len(tree.leaves()) == 64
    assert kraft_sum(book) == 1
    for codon, assignment in standard_code().assignments.items():
        word = "".join(codon[t - 1] for t in order)
        assert book.word(assignment.label) == word
        assert decode(tree, word) == assignment.label


@pytest.mark.parametrize("order", [(1, 2), (1, 1, 2), (0, 1, 2)])
def test_reorder_rejects_non_permutations(order):
    with pytest.raises(InvalidPermutation):
        reorder_chain(order)


def test_variant_table(table, tmp_path):
    variant = dict(table)
    variant["UGA"] = "Trp"
    path = tmp_path / "mito.tsv"
    path.write_text("# vertebrate mitochondrial excerpt\n" + "".join(f"{c}\t{a}\n" for c, a in variant.items()))
    code = GeneticCode(load_codon_table(path))
    assert code.translate("UGA") == "Trp"
    assert code.translate_instance("UGA") == "Trp1"
    assert code.translate_instance("UGG") == "Trp2"
    assert len(code.codons_for("Stop")) == 2


def test_malformed_table_line(tmp_path):
    path = tmp_path / "bad.tsv"
    path.write_text("UUU\tPhe\nUUC Phe extra\n")
    with pytest.raises(DocumentError) as info:
        load_codon_table(path)
    assert info.value.field == "line 2"


def test_incomplete_table_rejected(table):
    partial = {c: a for c, a in table.items() if c != "GGG"}
    with pytest.raises(DocumentError):
        GeneticCode(partial)
