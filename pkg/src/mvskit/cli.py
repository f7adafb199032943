"""Command-line front end.

Exit codes: 0 the property holds or the object was produced, 1 the property
fails (a witness follows), 2 input error, 3 a bounded procedure could not
decide.  The first output line is always the conclusion.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import TextIO

from . import formats
from .core import (
    adjoin_infinity,
    antisymmetry_witness,
    check_axioms,
    commutativity_witness,
    order_class,
    OrderClass,
    quotient,
)
from .errors import BudgetExceeded, MvsError, NeutralClassNotTrivial, NotACongruence, NotCommutative
from .morphisms import MvsMap, find_isomorphism, hom_violation, image, is_fine, kernel
from .topology import (
    DEFAULT_SEARCH_BUDGET,
    canonical_quasimetric,
    check_quasimetric,
    induced_topology,
    is_finer,
    quotient_metrize,
    search_metrizable,
)
from .words import (
    DEFAULT_NODE_BUDGET,
    ExactClass,
    SeparatingModel,
    Verdict,
    check_m4,
    format_word,
    parse_word,
    present_mvs,
    verify_representation,
    words_equal,
)

OK, FAILS, INPUT_ERROR, UNKNOWN = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def _names(M, ids) -> str:
    return " ".join(M.names[i] for i in ids)


def cmd_check(args, out):
    raw = formats.to_raw_table(formats.read_document(args.mvs))
    report = check_axioms(raw)
    if report.ok:
        commutative = commutativity_witness(raw.table) is None
        print("MVS: axioms M1-M4 hold", file=out)
        print(f"neutral: {raw.names[report.neutral]}", file=out)
        print(f"commutative: {'yes' if commutative else 'no'}", file=out)
        return OK
    print(f"NOT MVS: {', '.join(report.failed_axioms())} fails", file=out)
    for axiom in report.failed_axioms():
        w = report.witnesses[axiom]
        shown = " ".join(raw.names[i] for i in w) if axiom not in ("card",) else str(w[0])
        print(f"witness {axiom}: {shown}".rstrip(), file=out)
    return FAILS


def cmd_order(args, out):
    M = formats.load_mvs(args.mvs)
    kind = order_class(M)
    print(f"ORDER: {kind.value}", file=out)
    if kind is OrderClass.NOT_ANTISYMMETRIC:
        print(f"witness: {_names(M, antisymmetry_witness(M))}", file=out)
        return FAILS
    return OK


def cmd_quotient(args, out):
    M = formats.load_mvs(args.mvs)
    R = formats.to_relation(formats.read_document(args.relation), M)
    try:
        Q, class_map = quotient(M, R)
    except NotACongruence as exc:
        print(f"NOT A CONGRUENCE: {exc.reason}", file=out)
        print(f"witness: {_names(M, exc.witness)}", file=out)
        return FAILS
    except NeutralClassNotTrivial as exc:
        print(f"NEUTRAL CLASS NOT TRIVIAL: {{{_names(M, sorted(exc.neutral_class))}}}", file=out)
        return FAILS
    print(f"QUOTIENT: {Q.size} classes", file=out)
    for k, name in enumerate(Q.names):
        print(f"class {name}: {_names(M, [m for m in M.elements if class_map[m] == k])}", file=out)
    out.write(formats.serialize(formats.mvs_document(Q)))
    return OK


def _load_hom(path) -> MvsMap:
    return formats.load_map(path)


def cmd_hom_check(args, out):
    dom, cod, mapping = formats.load_map_data(args.map)
    err = hom_violation(dom, cod, mapping)
    if err is None:
        print("HOMOMORPHISM: H1 and H2 hold", file=out)
        return OK
    print(f"NOT A HOMOMORPHISM: {err}", file=out)
    if hasattr(err, "element"):
        print(f"witness: {dom.names[err.element]}", file=out)
    else:
        print(f"witness: {dom.names[err.left]} {dom.names[err.right]}", file=out)
    return FAILS


def cmd_hom_kernel(args, out):
    h = _load_hom(args.map)
    ker = kernel(h)
    print(f"KERNEL: {len(ker.classes())} classes", file=out)
    out.write(formats.serialize(formats.relation_document(ker, h.domain)))
    return OK


def cmd_hom_image(args, out):
    h = _load_hom(args.map)
    img = sorted(image(h))
    print(f"IMAGE: {{{_names(h.codomain, img)}}}", file=out)
    print("sub-MVS: yes", file=out)
    return OK


def cmd_iso(args, out):
    M = formats.load_mvs(args.mvs)
    N = formats.load_mvs(args.other)
    h = find_isomorphism(M, N)
    if h is None:
        print("NOT ISOMORPHIC", file=out)
        return FAILS
    print("ISOMORPHIC", file=out)
    for m, v in enumerate(h.mapping):
        print(f"send {M.names[m]} -> {N.names[v]}", file=out)
    return OK


def cmd_fine(args, out):
    h = _load_hom(args.map)
    fine, witness = is_fine(h)
    if fine:
        print("FINE", file=out)
        return OK
    print(f"NOT FINE: no nonzero element maps below {h.codomain.names[witness]}", file=out)
    return FAILS


def cmd_adjoin_inf(args, out):
    M = formats.load_mvs(args.mvs)
    big, _ = adjoin_infinity(M)
    print(f"ADJOINED: {big.names[-1]}", file=out)
    out.write(formats.serialize(formats.mvs_document(big)))
    return OK


def cmd_qm_check(args, out):
    q = formats.load_quasimetric(args.qm)
    report = check_quasimetric(q)
    pts = q.points
    if not report.is_quasimetric:
        bad = "f1" if not report.f1_holds else "f2"
        print(f"NOT QUASIMETRIC: {bad} fails", file=out)
        for key in ("f1", "f2"):
            if key in report.witnesses:
                print(f"witness {key}: {' '.join(pts[i] for i in report.witnesses[key])}", file=out)
        return FAILS
    if report.f3_holds:
        print("QUASIMETRIC: f1, f2 hold; f3 holds (metric function)", file=out)
    else:
        print("QUASIMETRIC: f1, f2 hold; f3 fails", file=out)
        print(f"witness f3: {' '.join(pts[i] for i in report.witnesses['f3'])}", file=out)
    return OK


def cmd_topology(args, out):
    q = formats.load_quasimetric(args.qm)
    report = check_quasimetric(q)
    if not report.is_quasimetric:
        print(f"NOT QUASIMETRIC: {report.describe()}", file=out)
        return FAILS
    T = induced_topology(q)
    print(f"TOPOLOGY: {len(T.opens)} open sets", file=out)
    out.write(formats.serialize(formats.topology_document(T)))
    return OK


def cmd_finer(args, out):
    q2 = formats.load_quasimetric(args.qm)
    q1 = formats.load_quasimetric(args.other)
    if is_finer(q2, q1):
        print(f"FINER: {args.qm} is finer than {args.other}", file=out)
        return OK
    print(f"NOT FINER: {args.qm} is not finer than {args.other}", file=out)
    return FAILS


def cmd_metrize(args, out):
    T = formats.load_topology(args.topology)
    M = formats.load_mvs(args.mvs)
    budget = args.budget if args.budget is not None else DEFAULT_SEARCH_BUDGET
    try:
        q = search_metrizable(T, M, budget=budget, symmetric=args.symmetric)
    except BudgetExceeded as exc:
        print(f"UNKNOWN: {exc}", file=out)
        return UNKNOWN
    kind = "metric" if args.symmetric else "quasimetric"
    if q is None:
        print(f"NOT METRIZABLE: no {kind} function into {args.mvs} induces the topology", file=out)
        return FAILS
    print(f"METRIZABLE: {kind} function found", file=out)
    out.write(formats.serialize(formats.quasimetric_document(q, args.mvs)))
    return OK


def cmd_canonical_qm(args, out):
    M = formats.load_mvs(args.mvs)
    try:
        q = canonical_quasimetric(M)
    except NotCommutative as exc:
        print(f"NOT COMMUTATIVE: {_names(M, exc.witness)}", file=out)
        return FAILS
    print("CANONICAL QUASIMETRIC", file=out)
    out.write(formats.serialize(formats.quasimetric_document(q, args.mvs)))
    return OK


def cmd_quotient_metrize(args, out):
    q = formats.load_quasimetric(args.qm)
    try:
        r = quotient_metrize(q)
    except NotCommutative as exc:
        print(f"NOT COMMUTATIVE: {_names(q.mvs, exc.witness)}", file=out)
        return FAILS
    mvs_doc = formats.serialize(formats.mvs_document(r.mvs))
    qm_doc = formats.serialize(formats.quasimetric_document(r, "quotient.mvs"))
    print(f"QUOTIENT-METRIZED: topology preserved, {r.mvs.size}-element partially ordered MVS", file=out)
    if args.out_dir:
        d = Path(args.out_dir)
        d.mkdir(parents=True, exist_ok=True)
        (d / "quotient.mvs").write_text(mvs_doc, encoding="utf-8")
        (d / "metrized.qm").write_text(qm_doc, encoding="utf-8")
        print(f"wrote {d / 'quotient.mvs'} and {d / 'metrized.qm'}", file=out)
    else:
        out.write(mvs_doc)
        out.write(qm_doc)
    return OK


def _print_model(model: SeparatingModel, P, out) -> None:
    size = len(model.table)
    print(f"model size: {size}", file=out)
    for i, row in enumerate(model.table):
        print(f"row {i}: " + " ".join(str(v) for v in row), file=out)
    print("assign " + " ".join(f"{x}={model.assignment[x]}" for x in P.letters), file=out)
    print(f"values: {model.left_value} != {model.right_value}", file=out)


def cmd_words_eq(args, out):
    P = formats.load_presentation(args.presentation)
    u = parse_word(args.u, P)
    v = parse_word(args.v, P)
    res = words_equal(P, u, v, args.bound, max_model_size=args.max_model_size or 0,
                      budget=args.budget or DEFAULT_NODE_BUDGET)
    fw = lambda w: format_word(w, P)  # noqa: E731
    if res.verdict is Verdict.PROVED:
        print(f"PROVED: {fw(u)} ~ {fw(v)} ({len(res.certificate)} steps)", file=out)
        for step in res.certificate:
            a, b, c = step.relation
            print(f"{fw(step.source)} → {fw(step.target)} via {a}{b}~{c}"
                  if all(len(x) == 1 for x in P.letters) else
                  f"{fw(step.source)} → {fw(step.target)} via {a},{b}~{c}", file=out)
        return OK
    if res.verdict is Verdict.REFUTED:
        print(f"REFUTED: {res.message}", file=out)
        cert = res.certificate
        if isinstance(cert, ExactClass):
            print("class: {" + " ".join(fw(w) for w in cert.members) + "}", file=out)
        else:
            _print_model(cert, P, out)
        return FAILS
    print(f"UNKNOWN: {res.message}", file=out)
    return UNKNOWN


def cmd_words_m4(args, out):
    P = formats.load_presentation(args.presentation)
    res = check_m4(P, args.bound, budget=args.budget or DEFAULT_NODE_BUDGET)
    print(f"{res.verdict.value}: {res.message}", file=out)
    if res.verdict is Verdict.PROVED:
        for (a, b), w in res.certificate.items():
            print(f"{a} {b}: {w.letter} * {format_word(w.left_rest, P)} ~ {a}, "
                  f"{w.letter} * {format_word(w.right_rest, P)} ~ {b}", file=out)
        return OK
    return FAILS if res.verdict is Verdict.REFUTED else UNKNOWN


def cmd_present(args, out):
    M = formats.load_mvs(args.mvs)
    P = present_mvs(M)
    print(f"PRESENTATION: {len(P.letters)} letters, {len(P.relations)} relations", file=out)
    out.write(formats.serialize(formats.presentation_document(P)))
    return OK


def cmd_verify_rep(args, out):
    M = formats.load_mvs(args.mvs)
    res = verify_representation(M, args.bound, budget=args.budget or DEFAULT_NODE_BUDGET)
    if not res:
        print(f"NOT REPRESENTED: {res.reason}", file=out)
        return FAILS
    print(f"REPRESENTATION: verified at bound {args.bound}", file=out)
    for name, cid in res.classes.items():
        print(f"{name} -> class {cid}", file=out)
    return OK


COMMANDS = {
    "check": (cmd_check, ["mvs"]),
    "order": (cmd_order, ["mvs"]),
    "quotient": (cmd_quotient, ["mvs", "relation"]),
    "hom-check": (cmd_hom_check, ["map"]),
    "hom-kernel": (cmd_hom_kernel, ["map"]),
    "hom-image": (cmd_hom_image, ["map"]),
    "iso": (cmd_iso, ["mvs", "other"]),
    "fine": (cmd_fine, ["map"]),
    "adjoin-inf": (cmd_adjoin_inf, ["mvs"]),
    "qm-check": (cmd_qm_check, ["qm"]),
    "topology": (cmd_topology, ["qm"]),
    "finer": (cmd_finer, ["qm", "other"]),
    "metrize": (cmd_metrize, ["topology", "mvs"]),
    "canonical-qm": (cmd_canonical_qm, ["mvs"]),
    "quotient-metrize": (cmd_quotient_metrize, ["qm"]),
    "words-eq": (cmd_words_eq, ["presentation", "u", "v"]),
    "words-m4": (cmd_words_m4, ["presentation"]),
    "present": (cmd_present, ["mvs"]),
    "verify-rep": (cmd_verify_rep, ["mvs"]),
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--bound", type=int, default=4, help="word length bound (default 4)")
    common.add_argument("--budget", type=int, default=None, help="search / node budget")
    common.add_argument("--symmetric", action="store_true", help="metrize: metric functions only")
    common.add_argument("--max-model-size", type=int, default=0,
                        help="words-eq: try separating monoid models up to this size")
    common.add_argument("--out-dir", default=None, help="quotient-metrize: write files here")
    parser = _Parser(prog="mvskit", description="Finite metric value set toolkit")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, (_, positionals) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common])
        for pos in positionals:
            p.add_argument(pos)
    return parser


def run(argv: list[str] | None = None, out: TextIO | None = None) -> int:
    out = out if out is not None else sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except _UsageError as exc:
        print(f"ERROR: {exc}", file=out)
        return INPUT_ERROR
    func, _ = COMMANDS[args.command]
    try:
        return func(args, out)
    except (MvsError, ValueError, KeyError) as exc:
        print(f"ERROR: {exc}", file=out)
        return INPUT_ERROR


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
