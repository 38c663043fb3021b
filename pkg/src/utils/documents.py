"""JSON documents: chains, codebooks, branch models, reports, traces and counts.

Rationals travel as "p/q" strings and reals as fixed-point strings so nothing
passes through a lossy float on the way to disk.
"""
import json
import logging
import math
from fractions import Fraction
from pathlib import Path

from config.app_config import MARBLE_BIT_GENERATOR, REAL_PLACES
from engine.codes import Alphabet, CodeBook, make_chain
from engine.entropy import BranchModel, CodeReport, LeafDistribution, ModelKind, SampleCounts
from engine.errors import CodingError, DocumentError
from engine.mechanisms import (
    GenerativeState,
    MechanismComparison,
    MechanismKind,
    MechanismTrace,
    SelectionistState,
    TreeState,
)
from utils.validators import validate_chain_document, validate_labels

logger = logging.getLogger(__name__)


def format_rational(value):
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text, field=""):
    if isinstance(text, bool) or not isinstance(text, (str, int)):
        raise DocumentError(f"expected a 'p/q' string, got {text!r}", field=field)
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise DocumentError(f"'{text}' is not a rational number", field=field) from None


def format_real(value):
    return f"{value:.{REAL_PLACES}f}"


def read_json(path):
    """Load a UTF-8 JSON document, reporting the line of a syntax error."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise DocumentError(f"cannot read {path}: {e.strerror}") from None
    except UnicodeDecodeError as e:
        raise DocumentError(f"not UTF-8 text: byte {e.object[e.start]:#04x} at offset {e.start}", field=str(path)) from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError(f"invalid JSON: {e.msg}", field=f"{path}:{e.lineno}:{e.colno}") from None
    logger.debug(f"read {path}")
    return doc


def dump_json(doc):
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


# chains


def chain_to_document(chain):
    return {
        "universe": list(chain.universe.elements),
        "alphabet": list(chain.alphabet.letters),
        "partitions": [p.as_lists() for p in chain.partitions],
    }


def chain_from_document(doc):
    is_valid, error = validate_chain_document(doc)
    if not is_valid:
        raise DocumentError(error)
    try:
        return make_chain(doc["universe"], doc["alphabet"], doc["partitions"])
    except CodingError as e:
        raise DocumentError(e.message) from e


# codebooks


def codebook_to_document(book):
    return {"alphabet": list(book.alphabet.letters), "codes": book.as_strings()}


def codebook_from_document(doc):
    if not isinstance(doc, dict) or "alphabet" not in doc or "codes" not in doc:
        raise DocumentError("codebook needs 'alphabet' and 'codes'")
    is_valid, error = validate_labels(doc["alphabet"], "alphabet")
    if not is_valid:
        raise DocumentError(error)
    if not isinstance(doc["codes"], dict) or not doc["codes"]:
        raise DocumentError("expected a non-empty object of element -> word", field="codes")
    alphabet = Alphabet(tuple(doc["alphabet"]))
    try:
        return CodeBook.from_strings(alphabet, doc["codes"])
    except CodingError as e:
        raise DocumentError(e.message, field="codes") from e


# branch models


def model_to_document(model, alphabet):
    if model.kind is ModelKind.UNIFORM:
        return {"kind": "uniform"}
    return {
        "kind": "explicit",
        "nodes": {
            alphabet.format_word(path): {letter: format_rational(p) for letter, p in spec.items()}
            for path, spec in model.probabilities.items()
        },
    }


def model_from_document(doc, alphabet):
    """Explicit models map node paths ("" for the root) to letter probabilities."""
    if not isinstance(doc, dict):
        raise DocumentError("branch model must be a JSON object")
    kind = doc.get("kind", "explicit")
    if kind == "uniform":
        return BranchModel.uniform()
    if kind != "explicit":
        raise DocumentError(f"unknown model kind '{kind}'", field="kind")
    nodes = doc.get("nodes")
    if not isinstance(nodes, dict):
        raise DocumentError("expected an object of path -> probabilities", field="nodes")
    probabilities = {}
    for path, spec in nodes.items():
        if not isinstance(spec, dict):
            raise DocumentError("expected an object of letter -> 'p/q'", field=f"nodes.{path}")
        probabilities[alphabet.parse_word(path)] = {
            letter: parse_rational(p, field=f"nodes.{path}.{letter}") for letter, p in spec.items()
        }
    return BranchModel.explicit(probabilities)


# reports


def report_to_document(report):
    return {
        "codebook": codebook_to_document(report.codebook),
        "kraft_sum": format_rational(report.kraft_sum),
        "probabilities": {label: format_rational(p) for label, p in report.distribution.items()},
        "shannon_entropy": format_real(report.shannon_entropy),
        "logical_entropy": format_rational(report.logical_entropy),
        "average_code_length": format_rational(report.average_code_length),
    }


def report_from_document(doc):
    try:
        probabilities = {
            label: parse_rational(p, field=f"probabilities.{label}") for label, p in doc["probabilities"].items()
        }
        return CodeReport(
            codebook=codebook_from_document(doc["codebook"]),
            kraft_sum=parse_rational(doc["kraft_sum"], field="kraft_sum"),
            distribution=LeafDistribution(probabilities),
            shannon_entropy=float(doc["shannon_entropy"]),
            logical_entropy=parse_rational(doc["logical_entropy"], field="logical_entropy"),
            average_code_length=parse_rational(doc["average_code_length"], field="average_code_length"),
        )
    except KeyError as e:
        raise DocumentError("missing field", field=str(e.args[0])) from None
    except (TypeError, ValueError) as e:
        raise DocumentError(f"malformed report: {e}") from None


# traces


def _state_to_document(state):
    if isinstance(state, GenerativeState):
        return {"settings": list(state.settings)}
    if isinstance(state, TreeState):
        return {"path": list(state.path), "block": list(state.block)}
    return {"survivors": list(state.survivors), "weights": list(state.weights)}


def trace_to_document(trace, positions=()):
    doc = {
        "kind": trace.kind.value,
        "outcome": trace.outcome,
        "steps": trace.steps,
        "evaluations": trace.evaluations,
        "sizes": list(trace.sizes),
        "events": list(trace.events),
        "states": [_state_to_document(s) for s in trace.states],
    }
    if trace.kind is MechanismKind.GENERATIVE:
        doc["positions"] = list(positions or trace.states[0].positions)
    return doc


def trace_from_document(doc):
    try:
        kind = MechanismKind(doc["kind"])
        if kind is MechanismKind.GENERATIVE:
            positions = tuple(doc["positions"])
            states = tuple(GenerativeState(tuple(s["settings"]), positions) for s in doc["states"])
        elif kind is MechanismKind.GENERATIVE_TREE:
            states = tuple(TreeState(tuple(s["path"]), tuple(s["block"])) for s in doc["states"])
        else:
            states = tuple(
                SelectionistState(tuple(s["survivors"]), tuple(float(w) for w in s["weights"]))
                for s in doc["states"]
            )
        return MechanismTrace(
            kind=kind,
            outcome=doc["outcome"],
            steps=int(doc["steps"]),
            evaluations=int(doc["evaluations"]),
            sizes=tuple(int(s) for s in doc["sizes"]),
            states=states,
            events=tuple(doc.get("events", ())),
        )
    except KeyError as e:
        raise DocumentError("missing field", field=str(e.args[0])) from None
    except (TypeError, ValueError) as e:
        raise DocumentError(f"malformed trace: {e}") from None


def comparison_to_document(comparison: MechanismComparison):
    return {
        "outcomes_agree": comparison.outcomes_agree,
        "outcome": comparison.generative.outcome,
        "space_size": comparison.space_size,
        "generative_evaluations": comparison.generative_evaluations,
        "selectionist_evaluations": comparison.selectionist_evaluations,
        "selectionist_first_round_evaluations": comparison.selectionist_first_round_evaluations,
        "generative_peak_actualized": comparison.generative_peak_actualized,
        "selectionist_peak_actualized": comparison.selectionist_peak_actualized,
        "generative_sizes": list(comparison.generative.sizes),
        "selectionist_sizes": list(comparison.selectionist.sizes),
        "events": list(comparison.selectionist.events),
    }


# marble counts


def counts_to_document(counts):
    return {
        "n": counts.n,
        "seed": counts.seed,
        "bit_generator": counts.bit_generator,
        "counts": dict(counts.counts),
    }


def counts_from_document(doc):
    try:
        return SampleCounts(dict(doc["counts"]), int(doc["n"]), int(doc["seed"]), doc.get("bit_generator", MARBLE_BIT_GENERATOR))
    except KeyError as e:
        raise DocumentError("missing field", field=str(e.args[0])) from None
    except (TypeError, CodingError) as e:
        raise DocumentError(f"malformed counts: {e}") from None


def fitness_from_document(doc):
    """Fitness files map candidate labels to non-negative numbers."""
    if not isinstance(doc, dict) or not doc:
        raise DocumentError("fitness must be a non-empty object of label -> number")
    fitness = {}
    for label, value in doc.items():
        if isinstance(value, bool) or not isinstance(value, (int, float, str)):
            raise DocumentError(f"expected a number, got {value!r}", field=label)
        try:
            fitness[label] = float(Fraction(value)) if isinstance(value, str) else float(value)
        except (ValueError, ZeroDivisionError, OverflowError):
            raise DocumentError(f"'{value}' is not a number", field=label) from None
        if not math.isfinite(fitness[label]):
            raise DocumentError(f"expected a finite number, got {value!r}", field=label)
    return fitness
