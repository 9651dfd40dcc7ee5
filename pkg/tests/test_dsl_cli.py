import json
import random

import pytest

from ordcut import cuts as C
from ordcut.cli import run
from ordcut.dsl import (BindError, DslError, ParseError, SortError, format_document,
                        mutate, parse, random_document)
from ordcut.group import Z, OrderedGroup

Z2 = OrderedGroup.of(Z, Z)


def report(argv, stdin=""):
    code, out, err = run(argv, stdin)
    return code, json.loads(out), err


def test_group_declaration():
    (decl,) = parse("group G = Z lex Z;").statements
    assert decl.name == "G" and decl.group == Z2 and decl.group.components == ("Z", "Z")


def test_ball_literal():
    doc = parse("group G = Z lex Z;\nball+ (0,0) @2;")
    assert doc.queries[0].value == C.Ball(Z2.zero(), 2, C.PLUS)


def test_level_error_points_at_level_token():
    with pytest.raises(DslError) as info:
        parse("group G = Z lex Z;\nball+ (0,0) @5;")
    e = info.value
    assert e.name == "InvalidLevel" and (e.line, e.col) == (2, 13)


def test_parse_error_reports_expected_tokens():
    with pytest.raises(ParseError) as info:
        parse("group G = Z lex Z;\nprin+ (0,0) ball;")
    assert info.value.line == 2 and info.value.expected


def test_unknown_name_and_rank_mismatch():
    with pytest.raises(BindError):
        parse("group G = Z;\ncut c = prin+ (0);\nnope;")
    with pytest.raises(SortError):
        parse("group G = Z lex Z;\nprin+ (1, 2, 3);")


def test_print_parse_identity():
    rng = random.Random(21)
    for _ in range(200):
        text = random_document(rng)
        doc = parse(text)
        again = parse(format_document(doc))
        assert [q.value for q in again.queries] == [q.value for q in doc.queries]


def test_mutations_fail_with_positions():
    rng = random.Random(22)
    base = [random_document(rng) for _ in range(20)]
    for i in range(500):
        text = mutate(rng, base[i % len(base)])
        try:
            parse(text)
        except DslError as e:
            assert e.line >= 1 and e.col >= 1


def test_classify_ball_example():
    code, out, _ = report(["classify", "--group", "Z lex Z", "-e", "ball+ (0,0) @2"])
    r = out["reports"][0]
    assert code == 0
    assert (r["signature"], r["invariance_group_level"], r["cofinality"]) == (1, 2, ["aleph0", "aleph0"])
    assert r["is_group_cut"] and r["both_edges"]


def test_classify_prin_cofinality():
    _, out, _ = report(["classify", "--group", "Z", "-e", "prin+ (0)"])
    assert out["reports"][0]["cofinality"] == ["1", "1"]


def test_same_rplace_example():
    _, out, _ = report(["same-rplace", "--group", "Q", "-e", "prin- (1)", "-e", "prin+ (1)"])
    assert out["reports"][0]["same_r_place"] is True


def test_error_exit_code_and_json():
    code, out, err = report(["classify", "--group", "Z lex Z", "-e", "ball+ (0,0) @5"])
    assert code == 2 and out["error"]["name"] == "InvalidLevel"
    assert {"line", "col"} <= out["error"].keys() and err


def test_documents_from_stdin():
    text = "group G = Z lex Z;\ncut a = prin+ (1,0);\ncut b = ball+ (0,0) @2;\na;\nb;\n"
    code, out, _ = report(["classify", "-"], text)
    assert code == 0 and [r["variant"] for r in out["reports"]] == ["prin", "ball"]


def test_add_and_quotient_commands():
    _, out, _ = report(["add", "--group", "Z lex Z", "--mode", "left", "-e", "prin+ (1,2)", "-e", "prin+ (0,1)"])
    assert out["reports"][0]["result"] == "prin+ (1, 3)"
    _, out, _ = report(["quotient", "--group", "Z lex Z", "--at", "@2", "-e", "ball+ (0,0) @2"])
    assert out["reports"][0]["result"] == "prin+ (0)"


def test_corpus_is_deterministic_and_seeded():
    a = run(["corpus", "--count", "5", "--rank", "2", "--seed", "3"])
    b = run(["corpus", "--count", "5", "--rank", "2", "--seed", "3"])
    c = run(["corpus", "--count", "5", "--rank", "2", "--seed", "4"])
    assert a == b and a[1] != c[1]


def test_verify_command_reports_suite():
    code, out, _ = report(["verify", "--suite", "zxz", "--seed", "1", "--samples", "20"])
    assert code == 0 and out["ok"] is True


def test_project_command():
    text = "group K = Z;\nfieldcut f = irrf 0 @(0) root(x^2 - 2, 1, 2);\nf;\n"
    code, out, _ = report(["project", "--ring", "@2", "-"], text)
    r = out["reports"][0]
    assert code == 0 and r["projectable"] and r["residue_real_cut"] == "irr (0) @1 root(x^2 - 2, 1, 2)"
    text = "group K = Z lex Z;\nfieldcut f = ballf+ 0 mod ball+ (0,0) @2;\nf;\n"
    _, out, _ = report(["project", "--ring", "@3", "-"], text)
    assert out["reports"][0]["projectable"] is False


def test_pcs_breadth_command():
    text = "group K = Z lex Z;\nseq s = pcs prefix [0] tail step=(0,1) coeffs=[1];\ns;\n"
    code, out, _ = report(["pcs-breadth", "-"], text)
    r = out["reports"][0]
    assert code == 0 and r["valid"] and r["breadth"] == "ball+ (0, 0) @2"


def test_eval_echo_reparses():
    text = "group G = Q lex Z;\nseries z = 1 - 1 t^(1, 0) + 2/3 t^(0, 1);\nz;\n"
    code, out, _ = report(["eval", "-"], text)
    assert code == 0
    assert parse(out["document"]).queries[0].value == parse(text).queries[0].value
    assert out["reports"][0]["kind"] == "series"
