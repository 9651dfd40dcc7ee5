"""``ordcut`` command line: classify cuts, add them, project field cuts, run suites."""
from __future__ import annotations

import argparse
import io
import json
import os
import random
import sys
from contextlib import redirect_stderr, redirect_stdout
from typing import List, Optional, Sequence, Tuple

from . import cuts as C
from . import fields as F
from . import pcs as P
from .dsl import (DslError, Document, Query, format_document, format_value,
                  mutate, parse, random_document)
from .errors import OrdcutError
from .group import INFINITY
from .sampling import DEFAULT_SEED, random_cut_corpus
from .series import Series

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _level(text) -> int:
    s = str(text).strip()
    if s.startswith("@"):
        s = s[1:]
    try:
        return int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a level like @2, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ordcut", description="Classify cuts in lexicographic groups and series fields.")
    sub = p.add_subparsers(dest="command", required=True)

    def doc_command(name, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("inputs", nargs="*", help="DSL files, '-' for stdin, or inline expressions")
        sp.add_argument("--group", help="group for inline expressions, e.g. 'Z lex Q'")
        sp.add_argument("-e", "--expr", action="append", default=[], help="an extra inline expression")
        sp.add_argument("--format", choices=["json"], default="json")
        return sp

    doc_command("classify", "report signature, invariance group and cofinality of each query")
    doc_command("add", "add two cuts").add_argument("--mode", choices=["left", "right"], default="left")
    doc_command("quotient", "image of a cut in G/G_k").add_argument("--at", type=_level, required=True,
                                                                    help="the tail level k, e.g. @2")
    doc_command("same-rplace", "whether two cuts induce the same R-place")
    doc_command("project", "project a field cut into a residue field").add_argument(
        "--ring", type=_level, required=True, help="valuation ring level, e.g. @2")
    doc_command("pcs-breadth", "validate a pseudo Cauchy sequence and report its breadth")
    doc_command("eval", "parse a document and echo its normalized form")

    v = sub.add_parser("verify", help="run the property suites")
    v.add_argument("--suite", default="all")
    v.add_argument("--seed", type=int, default=DEFAULT_SEED)
    v.add_argument("--samples", type=int, default=None)
    v.add_argument("--format", choices=["json"], default="json")

    c = sub.add_parser("corpus", help="emit a seeded corpus of cuts as a DSL document")
    c.add_argument("--count", type=int, default=20)
    c.add_argument("--rank", type=int, default=2)
    c.add_argument("--seed", type=int, default=DEFAULT_SEED)
    c.add_argument("--format", choices=["json", "dsl"], default="json")
    return p


# -- input assembly ---------------------------------------------------------------

def read_document(args, stdin=None) -> str:
    parts = []
    if args.group:
        parts.append(f"group _G = {args.group};")
    for item in list(args.inputs) + list(args.expr):
        if item == "-":
            parts.append((stdin or sys.stdin).read())
        elif os.path.isfile(item):
            with open(item, encoding="utf-8") as fh:
                parts.append(fh.read())
        else:
            item = item.strip()
            parts.append(item if item.endswith(";") else item + ";")
    return "\n".join(parts) + "\n"


def _engine_error(e: OrdcutError, q: Query) -> DslError:
    return DslError(str(e), q.line, q.col, name=e.name)


def _take(queries: List[Query], kind: str, n: int) -> List[Query]:
    qs = [q for q in queries if q.kind == kind]
    if len(qs) < n:
        raise UsageError(f"expected {n} {kind} expression(s), found {len(qs)}")
    return qs[:n]


# -- reports ----------------------------------------------------------------------

def classify_cut(cut: C.Cut) -> dict:
    canon = C.canonical(cut)
    dedekind = cut.is_dedekind()
    return {
        "variant": canon.variant,
        "canonical_form": str(canon),
        "signature": C.signature(cut) if dedekind else None,
        "both_edges": C.both_edges(cut),
        "invariance_group_level": C.invariance_level(cut),
        "cofinality": C.cofinality(cut).as_list() if dedekind else None,
        "is_group_cut": C.is_group_cut(cut),
        "is_symmetric": C.is_symmetric(cut) if dedekind else None,
        "diagnostics": [] if dedekind else ["not a Dedekind cut: one side is empty"],
    }


def classify_field_cut(cut: F.FieldCut) -> dict:
    canon = F.canonical_field_cut(cut)
    module = F.field_invariance_module(cut)
    ring = F.invariance_valuation_ring(cut)
    return {
        "variant": canon.variant,
        "canonical_form": str(canon),
        "signature": None,
        "both_edges": None,
        "invariance_group_level": C.invariance_level(module.segment),
        "invariance_module": str(module),
        "invariance_ring": str(ring),
        "cofinality": None,
        "is_group_cut": None,
        "is_symmetric": None,
        "diagnostics": ["trivial invariance module; ring reported as the whole field"] if ring.trivial_invariance else [],
    }


def _blank(variant: str, **extra) -> dict:
    rec = {"variant": variant, "canonical_form": None, "signature": None, "both_edges": None,
           "invariance_group_level": None, "cofinality": None, "is_group_cut": None,
           "is_symmetric": None, "diagnostics": []}
    rec.update(extra)
    return rec


def classify_value(q: Query) -> dict:
    v = q.value
    if q.kind == "cut":
        rec = classify_cut(v)
    elif q.kind == "fieldcut":
        rec = classify_field_cut(v)
    elif q.kind == "series":
        if isinstance(v, Series):
            val = v.valuation() if (v.terms or v.is_exact()) else None
            rec = _blank("series", canonical_form=str(v),
                         valuation=None if val is None or val is INFINITY else repr(val),
                         sign=v.sign() if (v.terms or v.is_exact()) else None)
        else:
            rec = _blank("limit", canonical_form=str(v))
    elif q.kind == "seq":
        res = P.validate_pcs(v)
        rec = _blank("pcs", canonical_form=str(v), valid=res.ok,
                     witness=list(res.witness) if res.witness else None)
    else:
        rec = _blank("element", canonical_form=repr(v))
    rec["query"] = format_value(v)
    rec["group"] = str(q.group) if q.group is not None else None
    return rec


def _guard(q: Query, fn):
    try:
        return fn()
    except OrdcutError as e:
        raise _engine_error(e, q) from None


def cmd_classify(doc: Document, args) -> Tuple[dict, int]:
    if not doc.queries:
        raise UsageError("no query expressions in the document")
    return {"command": "classify", "reports": [_guard(q, lambda q=q: classify_value(q)) for q in doc.queries]}, EXIT_OK


def cmd_add(doc: Document, args) -> Tuple[dict, int]:
    a, b = _take(doc.queries, "cut", 2)
    total = _guard(b, lambda: C.add_cut(a.value, b.value, args.mode))
    rec = classify_cut(total)
    rec["query"] = [format_value(a.value), format_value(b.value)]
    rec["mode"] = args.mode
    rec["result"] = str(total)
    return {"command": "add", "reports": [rec]}, EXIT_OK


def cmd_quotient(doc: Document, args) -> Tuple[dict, int]:
    (q,) = _take(doc.queries, "cut", 1)
    qc = _guard(q, lambda: C.quotient_cut(q.value, args.at))
    rec = classify_cut(qc)
    rec.update(query=format_value(q.value), level=args.at, result=str(qc), quotient_group=str(qc.group))
    return {"command": "quotient", "reports": [rec]}, EXIT_OK


def cmd_same_rplace(doc: Document, args) -> Tuple[dict, int]:
    a, b = _take(doc.queries, "cut", 2)
    same = _guard(b, lambda: C.same_r_place(a.value, b.value))
    rec = {"query": [format_value(a.value), format_value(b.value)], "same_r_place": same, "diagnostics": []}
    return {"command": "same-rplace", "reports": [rec]}, EXIT_OK


def cmd_project(doc: Document, args) -> Tuple[dict, int]:
    (q,) = _take(doc.queries, "fieldcut", 1)
    cut = q.value

    def run():
        ring = F.ValuationRingDesc(cut.group, args.ring)
        p = F.project_cut(cut, ring)
        rec = {"query": format_value(cut), "ring": str(ring), "projectable": p.projectable, "diagnostics": []}
        if p.projectable:
            rec.update(c=str(p.c), a=str(p.a), residue_cut=str(p.residue_cut),
                       residue_group=str(ring.residue_group))
            if ring.residue_group.rank == 0:
                rec["residue_real_cut"] = str(F.residue_as_group_cut(p.residue_cut))
        else:
            rec["diagnostics"].append(p.reason)
        return rec
    return {"command": "project", "reports": [_guard(q, run)]}, EXIT_OK


def cmd_pcs_breadth(doc: Document, args) -> Tuple[dict, int]:
    (q,) = _take(doc.queries, "seq", 1)
    s = q.value

    def run():
        res = P.validate_pcs(s)
        rec = {"query": format_value(s), "valid": res.ok, "diagnostics": []}
        if not res.ok:
            rec["witness"] = list(res.witness)
            rec["diagnostics"].append(res.reason)
            return rec
        b = P.breadth(s)
        rec.update(breadth=str(b), breadth_is_zero=b.is_zero(), increasing=P.is_increasing(s))
        if rec["increasing"]:
            rec["cut"] = str(P.cut_of_pcs(s))
        return rec
    return {"command": "pcs-breadth", "reports": [_guard(q, run)]}, EXIT_OK


def cmd_eval(doc: Document, args) -> Tuple[dict, int]:
    reports = [{"query": format_value(q.value), "kind": q.kind, "source": q.text,
                "group": str(q.group) if q.group is not None else None} for q in doc.queries]
    return {"command": "eval", "document": format_document(doc), "reports": reports}, EXIT_OK


def cmd_verify(args) -> Tuple[dict, int]:
    from .verify import SUITES, run_suite
    if args.suite != "all" and args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from all, {', '.join(SUITES)}")
    results = run_suite(args.suite, args.seed, args.samples)
    out = [{"name": r.name, "ok": r.ok, "checked": r.checked, "failures": r.failures} for r in results]
    ok = all(r.ok for r in results)
    return {"command": "verify", "suite": args.suite, "seed": args.seed, "samples": args.samples,
            "ok": ok, "results": out}, EXIT_OK if ok else EXIT_FAIL


def corpus_document(count: int, rank: int, seed: int) -> str:
    cuts = random_cut_corpus(seed, count, rank)
    names = {}
    lines = []
    current = None
    for c in cuts:
        g = c.group
        if g not in names:
            names[g] = f"G{len(names)}"
            lines.append(f"group {names[g]} = {g};")
        elif g != current:
            lines.append(f"use {names[g]};")
        current = g
        lines.append(f"{c};")
    return "\n".join(lines) + "\n"


def cmd_corpus(args) -> Tuple[dict, int]:
    if args.count < 0 or not 1 <= args.rank <= 8:
        raise UsageError("count must be >= 0 and rank in 1..8")
    text = corpus_document(args.count, args.rank, args.seed)
    doc = parse(text)
    return {"command": "corpus", "seed": args.seed, "count": args.count, "rank": args.rank,
            "document": text, "cuts": [format_value(q.value) for q in doc.queries]}, EXIT_OK


DOC_COMMANDS = {
    "classify": cmd_classify, "add": cmd_add, "quotient": cmd_quotient,
    "same-rplace": cmd_same_rplace, "project": cmd_project,
    "pcs-breadth": cmd_pcs_breadth, "eval": cmd_eval,
}


def emit(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False)


def main(argv: Optional[Sequence[str]] = None, stdin=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        if args.command == "verify":
            obj, code = cmd_verify(args)
        elif args.command == "corpus":
            obj, code = cmd_corpus(args)
            if args.format == "dsl":
                sys.stdout.write(obj["document"])
                return code
        else:
            doc = parse(read_document(args, stdin))
            obj, code = DOC_COMMANDS[args.command](doc, args)
    except DslError as e:
        print(f"ordcut: {e.name} at {e.line}:{e.col}: {e.message}", file=sys.stderr)
        print(emit({"command": args.command, "error": e.as_dict()}))
        return EXIT_USAGE
    except UsageError as e:
        print(f"ordcut: {e}", file=sys.stderr)
        print(emit({"command": args.command, "error": {"name": "UsageError", "message": str(e)}}))
        return EXIT_USAGE
    print(emit(obj))
    return code


def run(argv: Sequence[str], stdin_text: str = "") -> Tuple[int, str, str]:
    """Invoke :func:`main` in-process, capturing both streams."""
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(list(argv), io.StringIO(stdin_text))
    return code, out.getvalue(), err.getvalue()


# -- property suite for the front end ---------------------------------------------

def check_cli_properties(seed: int = DEFAULT_SEED, samples: int = 200):
    from .verify import Check
    ch = Check("CLI round trip, determinism and fuzzing")
    rng = random.Random(seed)
    docs = [random_document(rng) for _ in range(samples)]
    for text in docs:
        try:
            d1 = parse(text)
            t1 = format_document(d1)
            d2 = parse(t1)
            ch.expect(d1 == d2 and format_document(d2) == t1, lambda: f"round trip changed:\n{text}")
        except DslError as e:
            ch.expect(False, f"generated document rejected: {e}")
    runs = [
        ["corpus", "--count", "15", "--rank", "2", "--seed", str(seed)],
        ["corpus", "--count", "15", "--rank", "3", "--seed", str(seed + 1)],
        ["verify", "--suite", "zxz", "--seed", str(seed), "--samples", "50"],
        ["classify", "-"],
        ["eval", "-"],
    ]
    for argv in runs:
        first = run(argv, docs[0])
        second = run(argv, docs[0])
        ch.expect(first == second and first[0] == EXIT_OK, lambda: f"{argv}: nondeterministic or failed: {first[2]}")
    # echoed report expressions reparse to the queried objects
    for text in docs[:20]:
        code, out, _ = run(["classify", "-"], text)
        if code != EXIT_OK:
            continue
        originals = parse(text).queries
        for rec, q in zip(json.loads(out)["reports"], originals):
            echoed = parse(f"group _G = {rec['group']};\n{rec['query']};").queries[0].value
            ch.expect(echoed == q.value, lambda: f"echo {rec['query']!r} does not reparse to the query")
    # a different seed gives a different corpus
    ch.expect(run(runs[0])[1] != run(["corpus", "--count", "15", "--rank", "2", "--seed", str(seed + 7)])[1],
              "corpus ignores the seed")
    bases = docs[:50]
    for i in range(1000):
        text = mutate(rng, rng.choice(bases))
        try:
            parse(text)
            ch.expect(True, "")
        except DslError as e:
            n_lines = text.count("\n") + 1
            ch.expect(1 <= e.line <= n_lines and e.col >= 1, lambda: f"bad position {e.line}:{e.col}")
        except Exception as e:  # noqa: BLE001 - any other exception is a crash
            ch.expect(False, lambda: f"crash {type(e).__name__}: {e} on {text!r}")
        if i % 10 == 0:
            try:
                code, out, _ = run(["classify", "-"], text)
                body = json.loads(out)
                ch.expect(code in (EXIT_OK, EXIT_USAGE) and (code == EXIT_OK or "line" in body["error"]
                                                             or body["error"]["name"] == "UsageError"),
                          lambda: f"CLI exit {code} on mutated input")
            except Exception as e:  # noqa: BLE001
                ch.expect(False, lambda: f"CLI crash {type(e).__name__}: {e} on {text!r}")
    return ch


if __name__ == "__main__":
    sys.exit(main())
