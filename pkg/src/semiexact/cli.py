"""Command-line front end.

Exit codes: 0 verified/success, 1 refuted or counterexample found,
2 hypothesis or input error. The machine report (--report) is one
pipe-separated record per assertion, `id|status|witness|millis`, sorted by
id; millis is pinned to 0 so reports are byte-identical across runs.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .diagrams import (snake, verify_short_five_half, verify_five, verify_five_parts,
                       verify_lemma_diagram, verify_lemma_short, verify_nine,
                       verify_nine_first, verify_nine_third, verify_short_five)
from .enumeration import (Counterexample, UniverseSpec, enumerate_semimodules,
                          search_counterexample)
from .errors import (HypothesisError, ParameterError, SemiexactError, StructureError,
                     WorkspaceError)
from .exactness import analyze
from .fixtures import builtin_semirings
from .morphisms import classify
from .workspace import Workspace, parse_files, serialize


class Report:
    def __init__(self):
        self.records = []

    def add(self, rid, status, witness="-"):
        witness = str(witness).replace("|", "/").replace("\n", " ") or "-"
        self.records.append((rid, status, witness))

    def machine_text(self):
        lines = [f"# semiexact-report {__version__}"]
        for rid, status, witness in sorted(self.records):
            lines.append(f"{rid}|{status}|{witness}|0")
        return "\n".join(lines) + "\n"

    def write(self, path):
        if path:
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(self.machine_text())


def _say(args, *text):
    if not args.quiet:
        print(*text)


LEMMAS = {
    "short.1": lambda d: verify_lemma_short(d, 1),
    "short.2": lambda d: verify_lemma_short(d, 2),
    "short.3": lambda d: verify_lemma_short(d, 3),
    "diagram.1a": lambda d: verify_lemma_diagram(d, "1a"),
    "diagram.1b": lambda d: verify_lemma_diagram(d, "1b"),
    "diagram.2a": lambda d: verify_lemma_diagram(d, "2a"),
    "diagram.2b": lambda d: verify_lemma_diagram(d, "2b"),
    "diagram.3": lambda d: verify_lemma_diagram(d, "3"),
    "short-five-half.1": lambda d: verify_short_five_half(d, 1),
    "short-five-half.2": lambda d: verify_short_five_half(d, 2),
    "short-five": verify_short_five,
    "five-parts.1a": lambda d: verify_five_parts(d, "1a"),
    "five-parts.1b": lambda d: verify_five_parts(d, "1b"),
    "five-parts.2": lambda d: verify_five_parts(d, "2"),
    "five-parts.3": lambda d: verify_five_parts(d, "3"),
    "five.1": lambda d: verify_five(d, 1),
    "five.2": lambda d: verify_five(d, 2),
    "five.3": lambda d: verify_five(d, 3),
    "nine-first.1": lambda d: verify_nine_first(d, 1),
    "nine-first.2": lambda d: verify_nine_first(d, 2),
    "nine-third.1": lambda d: verify_nine_third(d, 1),
    "nine-third.2": lambda d: verify_nine_third(d, 2),
    "nine.first-from-third": lambda d: verify_nine(d, "first-from-third"),
    "nine.third-from-first": lambda d: verify_nine(d, "third-from-first"),
    "nine.iff": lambda d: verify_nine(d, "iff"),
}


def _load(args) -> Workspace:
    if not args.files:
        return Workspace()
    return parse_files(args.files)


def _pick(table, name, what):
    if name not in table:
        raise StructureError(f"no {what} named {name!r} in the workspace "
                             f"(have: {', '.join(sorted(table)) or 'none'})")
    return table[name]


def cmd_validate(args, report):
    ws = _load(args)  # parse_files already rejects invalid structures
    for kind, table in (("semiring", ws.semirings), ("module", ws.modules),
                        ("sub", ws.subs), ("morphism", ws.morphisms),
                        ("sequence", ws.sequences), ("diagram", ws.diagrams)):
        for name in sorted(table):
            report.add(f"validate.{kind}.{name}", "ok")
            _say(args, f"{kind} {name}: ok")
    total = sum(len(t) for t in (ws.semirings, ws.modules, ws.subs,
                                 ws.morphisms, ws.sequences, ws.diagrams))
    _say(args, f"workspace ok: {total} definitions")
    return 0


def cmd_classify(args, report):
    ws = _load(args)
    f = _pick(ws.morphisms, args.name, "morphism")
    c = classify(f)
    witnesses = dict(c.witnesses)
    _say(args, f"classify {f.name}: {f.domain.name} -> {f.codomain.name}")
    for flag, value in c.flags().items():
        wit = witnesses.get(flag, "-")
        if value is None:
            report.add(f"classify.{args.name}.{flag}", "n/a")
            _say(args, f"  {flag:18} n/a (modules not both cancellative)")
        else:
            report.add(f"classify.{args.name}.{flag}", str(value).lower(), wit)
            suffix = f"  witness: {wit}" if not value and wit != "-" else ""
            _say(args, f"  {flag:18} {str(value).lower()}{suffix}")
    return 0


def cmd_exactness(args, report):
    ws = _load(args)
    seq = _pick(ws.sequences, args.name, "sequence")
    v = analyze(seq)
    _say(args, f"sequence {seq.name}: {' -> '.join(o.name for o in seq.objects)}")
    for p in v.positions:
        for flag in ("chain_complex", "semi_exact", "proper_exact", "exact"):
            val = getattr(p, flag)
            report.add(f"exactness.{args.name}.pos{p.position}.{flag}",
                       str(val).lower(), p.witness if not val else "-")
        _say(args, f"  at {p.object_name} (position {p.position}): "
                   f"chain={p.chain_complex} semi={p.semi_exact} "
                   f"proper={p.proper_exact} exact={p.exact}"
                   + (f"  [{p.witness}]" if not p.exact else ""))
    for a in v.arrows:
        for flag in ("k_uniform", "i_uniform", "uniform"):
            report.add(f"exactness.{args.name}.arrow{a.position}.{flag}",
                       str(getattr(a, flag)).lower())
        _say(args, f"  arrow {a.arrow_name}: k-uniform={a.k_uniform} "
                   f"i-uniform={a.i_uniform}")
    return 0


def _emit_certificate(args, report, cert):
    for a in cert.hypotheses:
        report.add(f"lemma.{cert.lemma}.hyp.{a.id}", "ok" if a.ok else "error", a.witness)
    bad = False
    for a in cert.conclusions:
        report.add(f"lemma.{cert.lemma}.conclusion.{a.id}",
                   "ok" if a.ok else "fail", a.witness)
        mark = "ok" if a.ok else f"FAILED ({a.witness})"
        _say(args, f"  {a.id}: {mark}")
        bad = bad or not a.ok
    return bad


def cmd_lemma(args, report):
    ws = _load(args)
    if args.name not in LEMMAS:
        raise ParameterError(f"unknown lemma {args.name!r}; known: "
                             + ", ".join(sorted(LEMMAS)))
    d = _pick(ws.diagrams, args.diagram, "diagram")
    cert = LEMMAS[args.name](d)
    _say(args, f"lemma {args.name} on {d.name}:")
    bad = _emit_certificate(args, report, cert)
    if bad:
        _say(args, "REFUTED: a verified conclusion failed; this indicates a bug")
        return 1
    _say(args, "verified")
    return 0


def cmd_snake(args, report):
    ws = _load(args)
    d = _pick(ws.diagrams, args.diagram, "diagram")
    result = snake(d)
    _say(args, f"snake on {d.name}:")
    _say(args, f"  delta: {','.join(str(v) for v in result.delta.map)} "
               f"({result.delta.domain.name} -> {result.delta.codomain.name})")
    report.add("snake.delta.table", "ok", ",".join(str(v) for v in result.delta.map))
    report.add("snake.columns-exact", str(result.columns_exact).lower())
    bad = False
    for cert in result.certificates:
        bad = _emit_certificate(args, report, cert) or bad
    for label, cert in (("kernel-row", result.cert_kernel_row),
                        ("cokernel-row", result.cert_cokernel_row),
                        ("four-term", result.cert_four_term)):
        if cert is None:
            report.add(f"snake.{label}.applicable", "false")
            _say(args, f"  {label}: hypotheses not applicable, skipped")
    if bad:
        _say(args, "REFUTED: a snake clause failed; this indicates a bug")
        return 1
    _say(args, "verified")
    return 0


def _resolve_semiring(ws, name):
    table = dict(builtin_semirings())
    table.update(ws.semirings)
    if name not in table:
        raise StructureError(f"no semiring named {name!r}; builtins: "
                             + ", ".join(sorted(builtin_semirings())))
    return table[name]


def cmd_search(args, report):
    ws = _load(args)
    semiring = _resolve_semiring(ws, args.semiring)
    spec = UniverseSpec(semiring, args.max_size, seed=args.seed)
    outcome = search_counterexample(args.name, spec)
    if isinstance(outcome, Counterexample):
        report.add(f"search.{args.name}", "fail", outcome.description)
        _say(args, f"counterexample found for {args.name}:")
        _say(args, f"  {outcome.description}")
        for w in outcome.witnesses:
            _say(args, f"  witness: {w!r}")
        return 1
    report.add(f"search.{args.name}", "ok",
               f"exhausted after {outcome.searched} instances")
    _say(args, f"search {args.name}: exhausted after {outcome.searched} instances "
               f"over {semiring.name} (size <= {args.max_size}); no counterexample")
    return 0


def cmd_corpus(args, report):
    ws = _load(args)
    semiring = _resolve_semiring(ws, args.semiring)
    uni = enumerate_semimodules(UniverseSpec(semiring, args.max_size, seed=args.seed))
    out = Workspace()
    out.semirings[semiring.name] = semiring
    for i, m in enumerate(uni.modules):
        out.modules[f"corpus{i}"] = type(m)(f"corpus{i}", m.semiring, m.size,
                                            m.add, m.action, zero=m.zero)
    text = serialize(out)
    if args.corpus:
        with open(args.corpus, "w", encoding="utf-8") as fh:
            fh.write(text)
        _say(args, f"wrote {len(uni.modules)} modules over {semiring.name} "
                   f"to {args.corpus}")
    else:
        sys.stdout.write(text)
    report.add("corpus.modules", "ok", str(len(uni.modules)))
    report.add("corpus.truncated", str(uni.truncated).lower())
    return 0


def build_parser():
    ap = argparse.ArgumentParser(
        prog="semiexact",
        description="Exactness kernel for finite semirings and semimodules")
    ap.add_argument("--version", action="version", version=f"semiexact {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, files=True):
        if files:
            p.add_argument("files", nargs="*", help="workspace definition files")
        p.add_argument("--report", metavar="PATH", help="write machine-readable report")
        p.add_argument("--quiet", action="store_true", help="suppress human output")
        p.add_argument("--max-size", type=int, default=3, metavar="N",
                       help="module size bound for searches/corpora (default 3)")
        p.add_argument("--seed", type=int, default=0, metavar="N")
        p.add_argument("--corpus", metavar="PATH", help="corpus output path")

    p = sub.add_parser("validate", help="parse and validate workspace files")
    common(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("classify", help="classify a morphism")
    p.add_argument("name")
    common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("exactness", help="analyze a sequence")
    p.add_argument("name")
    common(p)
    p.set_defaults(func=cmd_exactness)

    p = sub.add_parser("lemma", help="verify a diagram lemma")
    p.add_argument("name", help="e.g. short.1, diagram.2b, short-five, five.3, nine.iff")
    p.add_argument("diagram")
    common(p)
    p.set_defaults(func=cmd_lemma)

    p = sub.add_parser("snake", help="run the snake construction on a 2x3 diagram")
    p.add_argument("diagram")
    common(p)
    p.set_defaults(func=cmd_snake)

    p = sub.add_parser("search", help="search the counterexample catalog")
    p.add_argument("name", help="property id")
    p.add_argument("semiring", nargs="?", default="nat3",
                   help="builtin or workspace semiring (default nat3)")
    common(p)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("corpus", help="export the enumerated module corpus")
    p.add_argument("semiring", help="builtin or workspace semiring name")
    common(p)
    p.set_defaults(func=cmd_corpus)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    report = Report()
    try:
        code = args.func(args, report)
    except WorkspaceError as exc:
        for prob in exc.problems:
            print(f"error: {prob}", file=sys.stderr)
            report.add(f"parse.{prob.kind}.{prob.file}:{prob.line}", "error", prob.message)
        report.write(args.report)
        return 2
    except HypothesisError as exc:
        print(f"hypothesis error: {exc}", file=sys.stderr)
        report.add("hypothesis", "error", f"{exc.assertion_id}: {exc.witness}")
        report.write(args.report)
        return 2
    except (StructureError, ParameterError, SemiexactError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        report.add("input", "error", str(exc))
        report.write(args.report)
        return 2
    report.write(args.report)
    return code


if __name__ == "__main__":
    sys.exit(main())
