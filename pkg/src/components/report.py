"""Plain-text renderings of codebooks, reports, traces and counts for stdout."""
from utils.documents import format_rational, format_real


def format_codebook(book):
    return "\n".join(f"{label}\t{word}" for label, word in book.as_strings().items())


def format_report(report):
    lines = [format_codebook(report.codebook), ""]
    lines.append(f"kraft_sum\t{format_rational(report.kraft_sum)}")
    for label, p in report.distribution.items():
        lines.append(f"Pr({label})\t{format_rational(p)}")
    lines.append(f"H\t{format_real(report.shannon_entropy)}")
    lines.append(f"h\t{format_rational(report.logical_entropy)}")
    lines.append(f"average_code_length\t{format_rational(report.average_code_length)}")
    return "\n".join(lines)


def format_joins(rows):
    lines = []
    for row in rows:
        lines.append(
            f"J{row['step']}\t{row['join']}\th={format_rational(row['logical_entropy'])}"
            f"\tH={format_real(row['shannon_entropy'])}"
        )
    return "\n".join(lines)


def format_trace(trace):
    lines = [
        f"mechanism\t{trace.kind.value}",
        f"outcome\t{trace.outcome}",
        f"steps\t{trace.steps}",
        f"evaluations\t{trace.evaluations}",
        f"sizes\t{','.join(str(s) for s in trace.sizes)}",
    ]
    lines.extend(f"event\t{event}" for event in trace.events)
    return "\n".join(lines)


def format_counts(counts, estimate=None):
    lines = [f"n\t{counts.n}", f"seed\t{counts.seed}"]
    lines.extend(f"{label}\t{c}" for label, c in counts.counts.items())
    if estimate is not None:
        lines.append(f"empirical_h\t{format_real(float(estimate))}")
    return "\n".join(lines)


def format_comparison(comparison):
    return "\n".join(
        [
            f"outcomes_agree\t{comparison.outcomes_agree}",
            f"outcome\t{comparison.generative.outcome}",
            f"generative_evaluations\t{comparison.generative_evaluations}",
            f"selectionist_first_round_evaluations\t{comparison.selectionist_first_round_evaluations}",
            f"selectionist_evaluations\t{comparison.selectionist_evaluations}",
            f"generative_peak_actualized\t{comparison.generative_peak_actualized}",
            f"selectionist_peak_actualized\t{comparison.selectionist_peak_actualized}",
        ]
    )


def format_codon_rows(rows):
    return "\n".join(f"{r['codon']}\t{r['amino_acid']}\t{r['instance']}\t{r['code']}" for r in rows)
