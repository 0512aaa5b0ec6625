"""Command-line entry point: ``python3 -m tworoot <command> ...``."""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from .abelian import AbelianGroup, enumerate_elements
from .chartable import (
    BUNDLED,
    TableSyntaxError,
    TableValidationError,
    is_generalized_character,
    load_bundled,
    parse_table,
    table_spectrum,
    two_root_on_nonidentity,
    validate,
)
from .claims import ANCHORS, CLAIMS, RunConfig
from .cyclotomic import CyclotomicSyntaxError, RootOfUnity, as_root_of_unity, format_cyclotomic, parse_cyclotomic
from .genchar import GeneralizedCharacter, TheoremViolation, classify, two_root_values, type_of
from .prime_graph import (
    check_theorem15,
    check_theorem17,
    components,
    graph_from_spectrum,
    induced,
    pi_partition,
)
from .search import DEFAULT_MAX_ORDER, search_two_root
from .vanishing import RootSum, decompose, enumerate_minimal_vanishing

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# -- output ------------------------------------------------------------------


def _quote(v) -> str:
    s = str(v)
    return f'"{s}"' if (" " in s or not s) else s


class Out:
    """Collects records; prints key=value lines or an aligned table."""

    def __init__(self, fmt: str, stream=None):
        self.fmt = fmt
        self.stream = stream or sys.stdout
        self.rows: list[dict] = []

    def record(self, **fields) -> None:
        if self.fmt == "records":
            print(" ".join(f"{k}={_quote(v)}" for k, v in fields.items()), file=self.stream)
        else:
            self.rows.append(fields)

    def flush(self) -> None:
        if not self.rows:
            return
        # group consecutive rows sharing the same keys into one table
        blocks: list[list[dict]] = []
        for r in self.rows:
            if blocks and list(blocks[-1][0]) == list(r):
                blocks[-1].append(r)
            else:
                blocks.append([r])
        for i, block in enumerate(blocks):
            if i:
                print(file=self.stream)
            keys = list(block[0])
            widths = [max(len(k), *(len(str(r[k])) for r in block)) for k in keys]
            print("  ".join(k.ljust(w) for k, w in zip(keys, widths)).rstrip(), file=self.stream)
            for r in block:
                print("  ".join(str(r[k]).ljust(w) for k, w in zip(keys, widths)).rstrip(), file=self.stream)
        self.rows = []


# -- argument helpers --------------------------------------------------------


def _group(text: str) -> AbelianGroup:
    try:
        return AbelianGroup.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _load_table(ref: str):
    path = Path(ref)
    try:
        if path.exists():
            return parse_table(path.read_text())
        if ref in BUNDLED:
            return load_bundled(ref)
    except TableSyntaxError as exc:
        raise UsageError(f"{ref}: {exc}") from None
    raise UsageError(f"no such table file or bundled table: {ref}")


def _witness_field(wit) -> str:
    return ";".join(str(w).replace(" ", "") for w in wit)


# -- commands ----------------------------------------------------------------


def cmd_search(args, out: Out) -> int:
    G = _group(args.group)
    try:
        rep = search_two_root(G, max_order=args.max_order, jobs=args.jobs, seed=args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    for i, s in enumerate(rep.solutions):
        t = type_of(s.character(G))
        out.record(group=G.name(), index=i, coeffs=",".join(map(str, s.coeffs)),
                   tag=s.classification.tag, type=str(t), negation=s.negation)
    st = rep.stats
    summary = dict(group=G.name(), solutions=len(rep.solutions), candidates=st.candidates,
                   numeric_rejected=st.numeric_rejected, exact_rejected=st.exact_rejected, audited=st.audited)
    if args.timing:
        summary["elapsed"] = f"{rep.elapsed:.2f}s"
    out.record(**summary)
    return EXIT_OK


def cmd_classify(args, out: Out) -> int:
    G = _group(args.group)
    coeffs = _int_list(args.char)
    try:
        chi = GeneralizedCharacter(G, coeffs)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    try:
        c = classify(chi)
    except TheoremViolation as exc:
        out.record(group=G.name(), tag="TheoremViolation", coeffs=",".join(map(str, exc.coeffs)))
        return EXIT_FAIL
    fields = dict(group=G.name(), tag=c.tag)
    if c.is_two_root:
        fields["base"] = c.base
        if c.tag == "Standard":
            fields["deltas"] = ",".join(map(str, c.deltas))
        else:
            fields["sign"] = f"{c.sign:+d}"
        if c.k is not None:
            fields["k"] = c.k
        fields["indices"] = ",".join(map(str, c.indices)) or "-"
        fields["type"] = str(type_of(chi))
        wit = two_root_values(chi)
        fields["witnesses"] = _witness_field(wit.values())
    out.record(**fields)
    return EXIT_OK


def _parse_terms(text: str) -> RootSum:
    terms = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        try:
            r = as_root_of_unity(parse_cyclotomic(tok))
        except CyclotomicSyntaxError as exc:
            raise UsageError(str(exc)) from None
        if r is None:
            raise UsageError(f"{tok!r} is not a root of unity")
        terms.append(r)
    return RootSum(tuple(terms))


def cmd_sumdecomp(args, out: Out) -> int:
    s = _parse_terms(args.terms)
    try:
        d = decompose(s)
    except ValueError:
        out.record(terms=str(s), result="not vanishing")
        return EXIT_OK
    for i, (part, rot) in enumerate(zip(d.parts, d.rotations)):
        fields = dict(part=i, weight=part.weight, terms=str(part).replace(" ", ""))
        fields["cycle"] = rot[1] if rot else "-"
        fields["rotation"] = str(rot[0]) if rot else "-"
        out.record(**fields)
    return EXIT_OK


def cmd_sumenum(args, out: Out) -> int:
    try:
        classes = enumerate_minimal_vanishing(args.weight, args.order_bound)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    for i, s in enumerate(classes):
        out.record(weight=args.weight, order_bound=args.order_bound, index=i, terms=str(s).replace(" ", ""))
    out.record(weight=args.weight, order_bound=args.order_bound, classes=len(classes))
    return EXIT_OK


def _fmt_set(c) -> str:
    return "{" + ",".join(map(str, sorted(c))) + "}"


def cmd_primegraph(args, out: Out) -> int:
    if (args.spectrum is None) == (args.table is None):
        raise UsageError("give exactly one of --spectrum or --table")
    if args.spectrum is not None:
        try:
            g = graph_from_spectrum(_int_list(args.spectrum))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    else:
        t = _load_table(args.table)
        g = graph_from_spectrum(table_spectrum(t))
    if args.remove:
        g = induced(g, _int_list(args.remove))
    out.record(vertices=",".join(map(str, sorted(g.vertices))) or "-",
               edges=" ".join(f"{p}-{q}" for p, q in g.sorted_edges()) or "-",
               components=" ".join(_fmt_set(c) for c in components(g)) or "-")
    if args.degree is not None:
        part = pi_partition(args.degree, [p for p in g.vertices if p >= 5])
        r15 = check_theorem15(g, part)
        r17 = check_theorem17(g, part)
        out.record(degree=args.degree,
                   labels=" ".join(f"{p}:{a:+d}" for p, a in sorted(part.labels.items())) or "-",
                   unlabelled=",".join(map(str, part.unlabelled)) or "-",
                   theorem15=str(r15.holds).lower(),
                   crossing=" ".join(f"{p}-{q}" for p, q in r15.crossing_edges) or "-",
                   theorem17=r17)
        if part.unlabelled or not r15.holds or r17 == "violation":
            return EXIT_FAIL
    return EXIT_OK


def cmd_table(args, out: Out) -> int:
    t = _load_table(args.file)
    if args.action == "check":
        try:
            cert = validate(t)
        except TableValidationError as exc:
            out.record(table=t.name, status="invalid", relation=exc.relation, where=exc.where)
            return EXIT_FAIL
        out.record(table=t.name, status="valid", order=cert.order,
                   degrees=",".join(map(str, cert.degrees)))
        return EXIT_OK
    if not args.fun:
        raise UsageError(f"table {args.action} needs --fun NAME")
    try:
        f = t.function(args.fun)
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from None
    try:
        validate(t)
    except TableValidationError as exc:
        out.record(table=t.name, status="invalid", relation=exc.relation, where=exc.where)
        return EXIT_FAIL
    if args.action == "genchar":
        r = is_generalized_character(f)
        out.record(table=t.name, fun=f.name, generalized=str(bool(r)).lower(),
                   coefficients=",".join(map(str, r.coefficients)) if r else "-",
                   products=",".join(str(p) for p in r.products))
        return EXIT_OK if r else EXIT_FAIL
    wit = two_root_on_nonidentity(f)
    if wit is None:
        out.record(table=t.name, fun=f.name, two_root="false")
        return EXIT_FAIL
    for i, w in wit.items():
        out.record(table=t.name, fun=f.name, cls=i, value=format_cyclotomic(f.values[i]).replace(" ", ""),
                   witness=str(w).replace(" ", ""))
    return EXIT_OK


def cmd_verify_paper(args, out: Out) -> int:
    if args.list:
        for c in CLAIMS:
            out.record(claim=c.id, anchor=c.anchor)
        return EXIT_OK
    cfg = RunConfig(jobs=args.jobs, max_order=args.max_order)
    detail_dir = Path(args.details) if args.details else None
    if detail_dir:
        detail_dir.mkdir(parents=True, exist_ok=True)
    failed = False
    for c in CLAIMS:
        start = time.perf_counter()
        v = c.run(cfg)
        elapsed = time.perf_counter() - start
        failed |= not v.passed
        fields = dict(claim=c.id, anchor=c.anchor, status=v.status)
        if args.timing:
            fields["elapsed"] = f"{elapsed:.2f}s"
        if detail_dir:
            path = detail_dir / f"{c.id}.txt"
            path.write_text("\n".join(v.lines) + "\n")
            fields["detail"] = str(path)
        else:
            fields["detail"] = v.lines[-1] if v.lines else "-"
        out.record(**fields)
    return EXIT_FAIL if failed else EXIT_OK


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("records", "table"), default="table")
    p = argparse.ArgumentParser(prog="tworoot", description="Generalized characters with two-root values.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("search", parents=[common], help="all two-root generalized characters of an abelian group")
    s.add_argument("--group", required=True, help="e.g. 15 or 2x6")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--max-order", type=int, default=DEFAULT_MAX_ORDER)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--timing", action="store_true")
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("classify", parents=[common], help="shape of one generalized character")
    s.add_argument("--group", required=True)
    s.add_argument("--char", required=True, help="coefficients in character enumeration order")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("sumdecomp", parents=[common], help="split a vanishing sum into minimal parts")
    s.add_argument("--terms", required=True, help='e.g. "E(5),E(5)^2,1,-1"')
    s.set_defaults(func=cmd_sumdecomp)

    s = sub.add_parser("sumenum", parents=[common], help="minimal vanishing sums up to rotation")
    s.add_argument("--weight", type=int, required=True)
    s.add_argument("--order-bound", type=int, required=True)
    s.set_defaults(func=cmd_sumenum)

    s = sub.add_parser("primegraph", parents=[common], help="prime graph of a spectrum or table")
    s.add_argument("--spectrum")
    s.add_argument("--table")
    s.add_argument("--remove")
    s.add_argument("--degree", type=int)
    s.set_defaults(func=cmd_primegraph)

    s = sub.add_parser("table", parents=[common], help="character-table checks")
    s.add_argument("action", choices=("check", "genchar", "tworoot"))
    s.add_argument("file", help="table file, or a bundled name: " + ", ".join(BUNDLED))
    s.add_argument("--fun")
    s.set_defaults(func=cmd_table)

    s = sub.add_parser("verify-paper", parents=[common], help="run every claim of the manifest")
    s.add_argument("--list", action="store_true")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--max-order", type=int, default=DEFAULT_MAX_ORDER)
    s.add_argument("--details", help="directory for one detail file per claim")
    s.add_argument("--timing", action="store_true")
    s.set_defaults(func=cmd_verify_paper)
    return p


def run(argv=None, stream=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    out = Out(args.format, stream)
    try:
        code = args.func(args, out)
    except UsageError as exc:
        out.flush()
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    out.flush()
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
