import argparse
import logging
import sys

from components.dot_render import render_dot
from components.report import (
    format_codon_rows,
    format_comparison,
    format_counts,
    format_joins,
    format_report,
    format_trace,
)
from config.app_config import (
    APP_DESCRIPTION,
    APP_NAME,
    EXIT_DECODE,
    EXIT_OK,
    EXIT_USAGE,
    EXIT_VALIDATION,
    LOG_FORMAT,
    LOG_LEVEL,
)
from config.sample_data import SAMPLE_CHAINS
from engine.codes import build_tree, decode, decode_stream, encode, encode_many
from engine.errors import CodingError, UsageError, ValidationError
from services import codec_service
from utils.documents import (
    codebook_to_document,
    comparison_to_document,
    counts_to_document,
    dump_json,
    report_to_document,
    trace_to_document,
)
from utils.validators import validate_permutation, validate_sample_size, validate_seed

logger = logging.getLogger(__name__)


class CliParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def emit(text, out=None):
    """Write to --out when given, else to stdout."""
    if out:
        with open(out, "w", encoding="utf-8") as f:
            f.write(text if text.endswith("\n") else text + "\n")
        logger.info(f"wrote {out}")
    else:
        print(text.rstrip("\n"))


def add_chain_source(parser):
    parser.add_argument("--chain", metavar="JSON", help="chain document")
    parser.add_argument("--sample", choices=sorted(SAMPLE_CHAINS), help="built-in sample chain")
    parser.add_argument("--genetic", action="store_true", help="use the built-in genetic code")
    parser.add_argument("--codon-table", metavar="TSV", help="variant codon table for --genetic")
    parser.add_argument("--order", metavar="I,J,K", help="codon position order for --genetic, e.g. 2,1,3")


def chain_of(args):
    return codec_service.load_chain(args.chain, args.sample, args.genetic, args.codon_table, args.order)


def cmd_codegen(args):
    chain = chain_of(args)
    book, _ = codec_service.generate_code(chain)
    emit(dump_json(codebook_to_document(book)), args.out)
    return EXIT_OK


def cmd_decode(args):
    if (args.word is None) == (args.stream is None):
        raise UsageError("give exactly one of --word or --stream")
    if args.genetic and not args.order:
        code = codec_service.genetic_code(args.codon_table)
        tree = code.tree
        name = (lambda label: label) if args.instance else (lambda label: code.assignment(label).amino_acid)
    else:
        tree = build_tree(chain_of(args))
        name = lambda label: label  # noqa: E731
    if args.word is not None:
        emit(name(decode(tree, args.word)), args.out)
    else:
        emit("\n".join(name(label) for label in decode_stream(tree, args.stream)), args.out)
    return EXIT_OK


def cmd_encode(args):
    chain = chain_of(args)
    book, _ = codec_service.generate_code(chain)
    if args.concat:
        emit(book.alphabet.format_word(encode_many(book, args.element)), args.out)
    else:
        words = [book.alphabet.format_word(encode(book, element)) for element in args.element]
        emit("\n".join(f"{element}\t{word}" for element, word in zip(args.element, words)), args.out)
    return EXIT_OK


def cmd_joins(args):
    emit(format_joins(codec_service.joins_report(chain_of(args), args.model)), args.out)
    return EXIT_OK


def cmd_entropy(args):
    report = codec_service.entropy_report(chain_of(args), args.model)
    if args.out:
        emit(dump_json(report_to_document(report)), args.out)
    print(format_report(report))
    return EXIT_OK


def _policy(args):
    return codec_service.selection_policy(args.threshold, args.max_rounds, args.strict)


def cmd_simulate(args):
    if args.mode == "marble":
        is_valid, error = validate_seed(args.seed)
        if not is_valid:
            raise UsageError(error)
        is_valid, error = validate_sample_size(args.n)
        if not is_valid:
            raise UsageError(error)
        counts, estimate = codec_service.simulate_marble(chain_of(args), args.n, args.seed, args.model)
        if args.out:
            emit(dump_json(counts_to_document(counts)), args.out)
        print(format_counts(counts, estimate))
        return EXIT_OK

    if args.mode == "generative":
        if args.code is None:
            raise UsageError("generative mode needs --code")
        if args.switches is not None:
            trace = codec_service.simulate_generative(args.switches, args.code, args.positions)
        else:
            trace = codec_service.simulate_generative(None, args.code, chain=chain_of(args))
    else:
        if not args.fitness:
            raise UsageError("selectionist mode needs --fitness")
        trace = codec_service.simulate_selectionist(args.fitness, _policy(args))

    if args.out:
        emit(dump_json(trace_to_document(trace)), args.out)
    print(format_trace(trace))
    return EXIT_OK


def cmd_compare(args):
    comparison = codec_service.compare(args.switches, args.code, args.positions, args.fitness, _policy(args))
    if args.out:
        emit(dump_json(comparison_to_document(comparison)), args.out)
    print(format_comparison(comparison))
    return EXIT_OK


def cmd_render(args):
    emit(render_dot(build_tree(chain_of(args))), args.out)
    return EXIT_OK


def cmd_genetic(args):
    code = codec_service.genetic_code(args.codon_table)
    if args.codon:
        label = code.translate_instance(args.codon.upper())
        emit(f"{args.codon.upper()}\t{code.assignment(label).amino_acid}\t{label}", args.out)
        return EXIT_OK
    order = None
    if args.order:
        is_valid, error = validate_permutation(args.order)
        if not is_valid:
            raise UsageError(error)
        order = tuple(int(x) for x in args.order.split(","))
    emit(format_codon_rows(codec_service.codon_rows(code, order)), args.out)
    return EXIT_OK


def build_parser():
    parser = CliParser(prog=APP_NAME, description=APP_DESCRIPTION)
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    parser.add_argument("-q", "--quiet", action="store_true", help="errors only")
    verbs = parser.add_subparsers(dest="verb", required=True, parser_class=CliParser)

    p = verbs.add_parser("codegen", help="generate the prefix-free codebook of a chain")
    add_chain_source(p)
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(handler=cmd_codegen)

    p = verbs.add_parser("decode", help="decode a word or a stream of words")
    add_chain_source(p)
    p.add_argument("--word")
    p.add_argument("--stream")
    p.add_argument("--instance", action="store_true", help="with --genetic, print e.g. Thr4 instead of Thr")
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(handler=cmd_decode)

    p = verbs.add_parser("encode", help="print the code words of elements")
    add_chain_source(p)
    p.add_argument("--element", action="append", required=True)
    p.add_argument("--concat", action="store_true", help="print one concatenated stream")
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(handler=cmd_encode)

    p = verbs.add_parser("joins", help="consecutive joins and their entropies")
    add_chain_source(p)
    p.add_argument("--model", default="uniform", help="uniform | explicit:<file> | point:<label>")
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(handler=cmd_joins)

    p = verbs.add_parser("entropy", help="leaf distribution, entropies and average code length")
    add_chain_source(p)
    p.add_argument("--model", default="uniform", help="uniform | explicit:<file> | point:<label>")
    p.add_argument("--out", metavar="FILE", help="write the JSON report")
    p.set_defaults(handler=cmd_entropy)

    p = verbs.add_parser("simulate", help="generative, selectionist or marble runs")
    add_chain_source(p)
    p.add_argument("--mode", choices=("generative", "selectionist", "marble"), required=True)
    p.add_argument("--switches", type=int)
    p.add_argument("--positions", help="switch position letters, default 01")
    p.add_argument("--code")
    p.add_argument("--fitness", metavar="JSON")
    p.add_argument("--threshold", type=float)
    p.add_argument("--max-rounds", type=int)
    p.add_argument("--strict", action="store_true", help="fail on tied optima instead of breaking ties")
    p.add_argument("--model", default="uniform")
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--seed", type=int)
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(handler=cmd_simulate)

    p = verbs.add_parser("compare", help="generative versus selectionist cost on a switch space")
    p.add_argument("--switches", type=int, required=True)
    p.add_argument("--code", required=True)
    p.add_argument("--positions")
    p.add_argument("--fitness", metavar="JSON", help="default: peaked at the code's outcome")
    p.add_argument("--threshold", type=float)
    p.add_argument("--max-rounds", type=int)
    p.add_argument("--strict", action="store_true")
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(handler=cmd_compare)

    p = verbs.add_parser("render", help="DOT rendering of the code tree")
    add_chain_source(p)
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(handler=cmd_render)

    p = verbs.add_parser("genetic", help="the codon table with instance labels and code words")
    p.add_argument("--codon", help="translate a single codon")
    p.add_argument("--order", metavar="I,J,K")
    p.add_argument("--codon-table", metavar="TSV")
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(handler=cmd_genetic)

    return parser


def configure_logging(args):
    level = logging.DEBUG if args.verbose else logging.ERROR if args.quiet else LOG_LEVEL
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr)


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    configure_logging(args)

    try:
        return args.handler(args)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ValidationError as e:
        logger.debug(f"validation failed: {e.context}")
        print(f"error: {e.kind}: {e.message}", file=sys.stderr)
        return EXIT_VALIDATION
    except CodingError as e:
        print(f"error: {e.kind}: {e.message}", file=sys.stderr)
        return EXIT_DECODE


if __name__ == "__main__":
    sys.exit(main())
