import logging
from pathlib import Path

from config.app_config import CODON_TABLE_PATH
from config.sample_data import SAMPLE_CHAINS
from engine.codes import build_code, build_tree, consecutive_joins, validate_chain
from engine.entropy import (
    BranchModel,
    code_report,
    empirical_logical_entropy,
    join_entropy_profile,
    leaf_distribution,
    marble_simulate,
)
from engine.genetic import GeneticCode, load_codon_table, standard_code
from engine.errors import UsageError
from engine.mechanisms import (
    SelectionPolicy,
    SwitchSpace,
    compare_mechanisms,
    generative_run,
    generative_run_tree,
    selectionist_run,
)
from utils.documents import chain_from_document, fitness_from_document, model_from_document, read_json
from utils.validators import validate_permutation

logger = logging.getLogger(__name__)


def genetic_code(codon_table=None):
    """The bundled genetic code, or one built from a variant table file."""
    if codon_table is None or Path(codon_table) == CODON_TABLE_PATH:
        return standard_code()
    return GeneticCode(load_codon_table(codon_table))


def load_chain(chain_path=None, sample=None, genetic=False, codon_table=None, order=None):
    """Resolve exactly one chain source: a file, a built-in sample or the genetic code."""
    sources = sum(1 for s in (chain_path, sample, genetic or None) if s)
    if sources != 1:
        raise UsageError("give exactly one of --chain, --sample or --genetic")
    if genetic:
        code = genetic_code(codon_table)
        if order:
            is_valid, error = validate_permutation(order)
            if not is_valid:
                raise UsageError(error)
            return code.reorder_chain(int(x) for x in order.split(","))
        return code.chain
    if sample:
        if sample not in SAMPLE_CHAINS:
            raise UsageError(f"unknown sample '{sample}', choose from {', '.join(SAMPLE_CHAINS)}")
        return chain_from_document(SAMPLE_CHAINS[sample])
    return chain_from_document(read_json(chain_path))


def resolve_model(spec, tree):
    """Parse ``uniform``, ``explicit:<file>`` or ``point:<label>``."""
    spec = spec or "uniform"
    if spec == "uniform":
        return BranchModel.uniform()
    kind, _, arg = spec.partition(":")
    if kind == "explicit" and arg:
        return model_from_document(read_json(arg), tree.alphabet)
    if kind == "point" and arg:
        return BranchModel.point_mass(tree, arg)
    raise UsageError(f"unknown branch model '{spec}' (use uniform, explicit:<file> or point:<label>)")


def generate_code(chain):
    """Build the codebook and collect chain diagnostics."""
    diagnostics = validate_chain(chain)
    book = build_code(chain)
    logger.info(f"generated {len(book)} code words")
    return book, diagnostics


def entropy_report(chain, model_spec=None):
    tree = build_tree(chain)
    book = build_code(chain)
    return code_report(tree, book, resolve_model(model_spec, tree))


def joins_report(chain, model_spec=None):
    """Consecutive joins with the logical and Shannon entropy of each."""
    tree = build_tree(chain)
    dist = leaf_distribution(tree, resolve_model(model_spec, tree))
    rows = []
    for t, (joined, (logical, shannon)) in enumerate(
        zip(consecutive_joins(chain), join_entropy_profile(chain, dist))
    ):
        rows.append({"step": t, "join": joined, "logical_entropy": logical, "shannon_entropy": shannon})
    return rows


def simulate_generative(switches, code, positions=None, chain=None):
    """Switch-space run, or a tree run when a chain is given."""
    if chain is not None:
        return generative_run_tree(build_tree(chain), code)
    letters = tuple(positions) if positions else ()
    space = SwitchSpace(switches, len(letters) or 2, letters)
    return generative_run(space, code)


def selection_policy(threshold=None, max_rounds=None, strict=False):
    kwargs = {"threshold": threshold, "strict_ties": strict}
    if max_rounds is not None:
        kwargs["max_rounds"] = max_rounds
    return SelectionPolicy(**kwargs)


def simulate_selectionist(fitness_path, policy=None):
    fitness = fitness_from_document(read_json(fitness_path))
    return selectionist_run(fitness.keys(), fitness, policy)


def simulate_marble(chain, n, seed, model_spec=None):
    tree = build_tree(chain)
    counts = marble_simulate(tree, resolve_model(model_spec, tree), n, seed)
    estimate = empirical_logical_entropy(counts) if n >= 2 else None
    return counts, estimate


def peaked_fitness(target, peak=2.0, base=1.0):
    """Fitness maximal only at ``target``."""

    def fitness(label):
        return peak if label == target else base

    return fitness


def compare(switches, code, positions=None, fitness_path=None, policy=None):
    letters = tuple(positions) if positions else ()
    space = SwitchSpace(switches, len(letters) or 2, letters)
    if fitness_path:
        fitness = fitness_from_document(read_json(fitness_path))
    else:
        fitness = peaked_fitness("".join(space.parse_code(code)))
    return compare_mechanisms(space, code, fitness, policy)


def codon_rows(code, order=None):
    """Codon table rows with instance labels and code words under ``order``."""
    chain = code.reorder_chain(order) if order else code.chain
    book = build_code(chain)
    rows = []
    for codon, assignment in code.assignments.items():
        rows.append(
            {
                "codon": codon,
                "amino_acid": assignment.amino_acid,
                "instance": assignment.label,
                "code": book.word(assignment.label),
            }
        )
    return rows

