import json

import pytest

from config.app_config import EXIT_DECODE, EXIT_OK, EXIT_USAGE, EXIT_VALIDATION
from config.sample_data import FIVE_CHAIN, THREE_CHAIN
from main import main


@pytest.fixture
def five_file(write_json):
    return write_json("five.json", FIVE_CHAIN)


@pytest.fixture
def three_file(write_json):
    return write_json("three.json", THREE_CHAIN)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_codegen_five(capsys, five_file, tmp_path):
    out_path = tmp_path / "book.json"
    code, _, _ = run(capsys, "codegen", "--chain", five_file, "--out", str(out_path))
    assert code == EXIT_OK
    doc = json.loads(out_path.read_text())
    assert doc["codes"] == {"u1": "0", "u2": "100", "u3": "101", "u4": "1110", "u5": "1111"}


def test_codegen_three_to_stdout(capsys, three_file):
    code, out, _ = run(capsys, "codegen", "--chain", three_file)
    assert code == EXIT_OK
    assert json.loads(out)["codes"] == {"a": "0", "b": "10", "c": "11"}


def test_codegen_non_discretizing_chain(capsys, write_json):
    doc = dict(FIVE_CHAIN, partitions=FIVE_CHAIN["partitions"][:3])
    code, _, err = run(capsys, "codegen", "--chain", write_json("short.json", doc))
    assert code == EXIT_VALIDATION
    assert "NonDiscretizingChain" in err
    assert "u4, u5" in err


def test_codegen_malformed_document(capsys, write_json):
    doc = dict(THREE_CHAIN, partitions=[[["a"], ["b"]]])
    code, _, err = run(capsys, "codegen", "--chain", write_json("bad.json", doc))
    assert code == EXIT_VALIDATION
    assert "partitions[0]: elements in no block: c" in err


def test_codegen_nested_label_is_document_error(capsys, write_json):
    doc = dict(THREE_CHAIN, partitions=[[["a"], [["b"]]]])
    code, _, err = run(capsys, "codegen", "--chain", write_json("nested.json", doc))
    assert code == EXIT_VALIDATION
    assert "partitions[0][1]: expected string labels" in err


def test_codegen_non_utf8_file(capsys, tmp_path):
    path = tmp_path / "latin1.json"
    path.write_bytes(b'{"universe": ["\xff"]}')
    code, _, err = run(capsys, "codegen", "--chain", str(path))
    assert code == EXIT_VALIDATION
    assert "DocumentError" in err
    assert "UTF-8" in err


def test_codegen_reports_redundant_step_once(capsys, caplog, write_json):
    partitions = [THREE_CHAIN["partitions"][0]] * 2 + [THREE_CHAIN["partitions"][1]]
    path = write_json("repeat.json", dict(THREE_CHAIN, partitions=partitions))
    code, out, err = run(capsys, "codegen", "--chain", path)
    assert code == EXIT_OK
    assert json.loads(out)["codes"] == {"a": "0", "b": "110", "c": "111"}
    assert len([r for r in caplog.records if "redundant" in r.getMessage()]) == 1
    assert "redundant" not in err


def test_decode(capsys, five_file, three_file):
    assert run(capsys, "decode", "--chain", three_file, "--word", "10")[:2] == (EXIT_OK, "b\n")
    assert run(capsys, "decode", "--genetic", "--word", "ACG")[:2] == (EXIT_OK, "Thr\n")
    assert run(capsys, "decode", "--genetic", "--instance", "--word", "ACG")[:2] == (EXIT_OK, "Thr4\n")
    code, _, err = run(capsys, "decode", "--chain", five_file, "--word", "110")
    assert code == EXIT_DECODE
    assert "NoSuchBranch" in err


def test_decode_stream(capsys, three_file, five_file):
    assert run(capsys, "decode", "--chain", three_file, "--stream", "01011")[:2] == (EXIT_OK, "a\nb\nc\n")
    code, _, err = run(capsys, "decode", "--chain", five_file, "--stream", "01001")
    assert code == EXIT_DECODE
    assert "TrailingPartialWord" in err


def test_decode_needs_one_input(capsys, three_file):
    assert run(capsys, "decode", "--chain", three_file)[0] == EXIT_USAGE


def test_encode(capsys):
    code, out, _ = run(capsys, "encode", "--sample", "five", "--element", "u2", "--element", "u5")
    assert code == EXIT_OK
    assert out == "u2\t100\nu5\t1111\n"
    assert run(capsys, "encode", "--sample", "three", "--element", "a", "--element", "c", "--concat")[1] == "011\n"


def test_joins(capsys):
    code, out, _ = run(capsys, "joins", "--sample", "three")
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[1].startswith("J1\t{{a},{b,c}}\th=1/2")
    assert lines[2].endswith("H=1.500000000000")


@pytest.mark.parametrize(
    "sample, shannon, logical",
    [("cube", "3.000000000000", "7/8"), ("three", "1.500000000000", "5/8")],
)
def test_entropy(capsys, sample, shannon, logical):
    code, out, _ = run(capsys, "entropy", "--sample", sample, "--model", "uniform")
    assert code == EXIT_OK
    assert f"H\t{shannon}" in out.splitlines()
    assert f"h\t{logical}" in out.splitlines()


def test_entropy_point_mass_and_report_file(capsys, three_file, tmp_path):
    report_path = tmp_path / "report.json"
    code, out, _ = run(capsys, "entropy", "--chain", three_file, "--model", "point:b", "--out", str(report_path))
    assert code == EXIT_OK
    assert "H\t0.000000000000" in out.splitlines()
    doc = json.loads(report_path.read_text())
    assert doc["logical_entropy"] == "0/1"
    assert doc["average_code_length"] == "2/1"


@pytest.mark.parametrize("sample, label", [("five", "u4"), ("cube", "000"), ("three", "a"), ("three", "b")])
def test_entropy_point_mass_any_tree(capsys, sample, label):
    code, out, _ = run(capsys, "entropy", "--sample", sample, "--model", f"point:{label}")
    assert code == EXIT_OK
    assert "H\t0.000000000000" in out.splitlines()
    assert "h\t0/1" in out.splitlines()


def test_entropy_explicit_model(capsys, write_json):
    model = write_json("model.json", {"kind": "explicit", "nodes": {"": {"0": "1/2", "1": "1/2"}, "1": {"0": "1/2", "1": "1/2"}}})
    code, out, _ = run(capsys, "entropy", "--sample", "three", "--model", f"explicit:{model}")
    assert code == EXIT_OK
    assert "h\t5/8" in out.splitlines()


def test_unknown_model_is_usage_error(capsys):
    assert run(capsys, "entropy", "--sample", "three", "--model", "zipf")[0] == EXIT_USAGE


def test_simulate_generative(capsys, tmp_path):
    trace_path = tmp_path / "trace.json"
    code, out, _ = run(capsys, "simulate", "--mode", "generative", "--switches", "3", "--code", "010", "--out", str(trace_path))
    assert code == EXIT_OK
    assert "sizes\t8,4,2,1" in out
    assert json.loads(trace_path.read_text())["sizes"] == [8, 4, 2, 1]


def test_simulate_generative_on_tree(capsys):
    code, out, _ = run(capsys, "simulate", "--mode", "generative", "--sample", "three", "--code", "10")
    assert code == EXIT_OK
    assert "outcome\tb" in out.splitlines()


def test_simulate_marble_is_reproducible(capsys, three_file, tmp_path):
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    for path in (first, second):
        code, _, _ = run(
            capsys, "simulate", "--mode", "marble", "--chain", three_file, "--n", "100000", "--seed", "7", "--out", str(path)
        )
        assert code == EXIT_OK
    assert first.read_bytes() == second.read_bytes()
    assert json.loads(first.read_text())["n"] == 100000


def test_simulate_marble_requires_seed(capsys, three_file):
    code, _, err = run(capsys, "simulate", "--mode", "marble", "--chain", three_file, "--n", "10")
    assert code == EXIT_USAGE
    assert "--seed" in err


def test_simulate_selectionist(capsys, write_json):
    fitness = {label: 1 for label in ("000", "001", "011", "100", "101", "110", "111")}
    fitness["010"] = 4
    code, out, _ = run(capsys, "simulate", "--mode", "selectionist", "--fitness", write_json("f.json", fitness))
    assert code == EXIT_OK
    assert "outcome\t010" in out.splitlines()


def test_simulate_selectionist_strict_tie(capsys, write_json):
    path = write_json("tie.json", {"a": 2, "b": 2})
    assert run(capsys, "simulate", "--mode", "selectionist", "--fitness", path, "--strict")[0] == EXIT_DECODE


def test_simulate_selectionist_infinite_fitness(capsys, write_json):
    path = write_json("inf.json", {"a": float("inf"), "b": 1.0})
    code, _, err = run(capsys, "simulate", "--mode", "selectionist", "--fitness", path)
    assert code == EXIT_VALIDATION
    assert "finite" in err


def test_simulate_selectionist_round_cap(capsys, write_json):
    path = write_json("f.json", {"x": 4, "y": 2, "z": 1})
    code, _, err = run(capsys, "simulate", "--mode", "selectionist", "--fitness", path, "--max-rounds", "1")
    assert code == EXIT_DECODE
    assert "DidNotConverge" in err


def test_compare(capsys, tmp_path):
    report_path = tmp_path / "compare.json"
    code, out, _ = run(capsys, "compare", "--switches", "3", "--code", "010", "--out", str(report_path))
    assert code == EXIT_OK
    assert "outcomes_agree\tTrue" in out.splitlines()
    doc = json.loads(report_path.read_text())
    assert (doc["generative_evaluations"], doc["selectionist_first_round_evaluations"]) == (3, 8)


def test_render(capsys, three_file):
    code, out, _ = run(capsys, "render", "--chain", three_file)
    assert code == EXIT_OK
    assert out.startswith("digraph")
    assert out.count(" -> ") == 4
    assert out.count("[label=") == 9
    assert out.count("shape=box") == 3


def test_render_singleton_and_genetic(capsys):
    out = run(capsys, "render", "--sample", "singleton")[1]
    assert out.count(" -> ") == 0
    assert 'n0 [label="x", shape=box]' in out
    out = run(capsys, "render", "--genetic")[1]
    assert out.count("shape=box") == 64


def test_genetic_table(capsys):
    code, out, _ = run(capsys, "genetic")
    assert code == EXIT_OK
    lines = out.splitlines()
    assert len(lines) == 64
    assert "ACG\tThr\tThr4\tACG" in lines
    assert "ACG\tThr\tThr4\tCAG" in run(capsys, "genetic", "--order", "2,1,3")[1].splitlines()
    assert run(capsys, "genetic", "--codon", "ACG")[1] == "ACG\tThr\tThr4\n"


def test_genetic_bad_order(capsys):
    assert run(capsys, "genetic", "--order", "1,1,2")[0] == EXIT_USAGE


def test_usage_errors(capsys, three_file):
    assert run(capsys)[0] == EXIT_USAGE
    assert run(capsys, "frobnicate")[0] == EXIT_USAGE
    assert run(capsys, "codegen")[0] == EXIT_USAGE
    assert run(capsys, "codegen", "--chain", three_file, "--sample", "three")[0] == EXIT_USAGE


def test_missing_chain_file(capsys, tmp_path):
    code, _, err = run(capsys, "codegen", "--chain", str(tmp_path / "nope.json"))
    assert code == EXIT_VALIDATION
    assert "cannot read" in err
