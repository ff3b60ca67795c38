"""Command-line front end.

    factorcrit analyze [FILE] [--k K]
    factorcrit threshold N DELTA K [rho|q]
    factorcrit extremal N DELTA K
    factorcrit verify (--lemma NAME | --theorem rho|q | --sharpness) ...

Exit codes: 0 success, 1 counterexample or violation, 2 usage error,
3 threshold routes disagree.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import extremal, verifier
from .criticality import SearchCapError, is_kfc_matching, is_kfc_tutte
from .extremal import ExtremalParams, ParameterError, ThresholdConsistencyError
from .graph import is_connected, min_degree
from .graph6 import Graph6Error, emit_graph6, parse_graph6
from .spectral import spectral_radius

EXIT_OK = 0
EXIT_FOUND = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 3


def _int_range(text: str) -> tuple:
    """Parse ``"3"``, ``"1..3"`` or ``"1,2,4"`` into a tuple of ints."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return tuple(range(int(lo), int(hi) + 1))
        return tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad integer range {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="factorcrit",
        description="Spectral thresholds and k-factor-criticality checks for graphs of fixed minimum degree.",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    parser.add_argument("--format", choices=("plain", "record"), default="plain", help="output style")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="per-graph invariants for graph6 input",
                       formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    p.add_argument("input", nargs="?", default="-", help="graph6 file, '-' for stdin")
    p.add_argument("--k", type=int, default=None, help="also decide k-factor-criticality")
    p.add_argument("--subset-cap", type=int, default=1 << 20,
                   help="largest subset count the odd-component search may enumerate")

    p = sub.add_parser("threshold", help="rho and q thresholds of H(n, delta, k)",
                       formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    p.add_argument("n", type=int)
    p.add_argument("delta", type=int)
    p.add_argument("k", type=int)
    p.add_argument("which", nargs="?", choices=("rho", "q"), default=None)
    p.add_argument("--tol", type=float, default=extremal.CONSISTENCY_TOL,
                   help="largest accepted disagreement between the three routes")

    p = sub.add_parser("extremal", help="emit H(n, delta, k) as graph6")
    p.add_argument("n", type=int)
    p.add_argument("delta", type=int)
    p.add_argument("k", type=int)

    p = sub.add_parser("verify", help="run a theorem, sharpness or lemma check",
                       formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--lemma", choices=verifier.LEMMAS + ("all",))
    mode.add_argument("--theorem", choices=("rho", "q"))
    mode.add_argument("--sharpness", action="store_true")
    p.add_argument("--n", type=int)
    p.add_argument("--delta", type=_int_range, default=(1, 2, 3), help="value or range like 1..3")
    p.add_argument("--k", type=int)
    p.add_argument("--bound", choices=("theorem", "relaxed", "none"), default="theorem",
                   help="lower bound on n enforced for --theorem")
    p.add_argument("--relaxed", action="store_true", help="shorthand for --bound relaxed; also widens h1/h3 grids")
    p.add_argument("--corpus", choices=("random", "exhaustive", "graph6"), default="random")
    p.add_argument("--input", help="graph6 file for --corpus graph6")
    p.add_argument("--model", choices=("gnp", "planted"), default="planted")
    p.add_argument("--p", type=float, default=0.5, help="edge probability for --model gnp")
    p.add_argument("--count", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--span", type=int, default=8, help="grid extent past the lower bound on n")
    p.add_argument("--trials", type=int, default=500)
    p.add_argument("--hprime-bound", choices=("lemma", "proof"), default="lemma")
    p.add_argument("--slack", type=float, default=verifier.THRESHOLD_SLACK,
                   help="graphs with value >= threshold - slack are tested")
    p.add_argument("--tol", type=float, default=verifier.SHARPNESS_TOL,
                   help="equality tolerance for --sharpness")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for --theorem")
    p.add_argument("--records", action="store_true", help="emit one record per graph (--format record)")
    return parser


def _emit(fmt: str, record: dict, plain: str, out) -> None:
    if fmt == "record":
        out.write(json.dumps(record, sort_keys=True) + "\n")
    else:
        out.write(plain + "\n")


def cmd_analyze(args, out=sys.stdout, err=sys.stderr, stdin=None) -> int:
    if args.input == "-":
        stream = stdin if stdin is not None else sys.stdin.buffer
        data = stream.read()
    else:
        try:
            with open(args.input, "rb") as fh:
                data = fh.read()
        except OSError as exc:
            err.write(f"error: {exc}\n")
            return EXIT_USAGE
    if isinstance(data, str):
        data = data.encode("ascii", errors="replace")
    warnings = 0
    for lineno, line in enumerate(data.splitlines(), 1):
        if not line.strip():
            continue
        try:
            g = parse_graph6(line)
        except Graph6Error as exc:
            warnings += 1
            err.write(f"error: line {lineno}: {type(exc).__name__}: {exc}\n")
            continue
        rec = {
            "line": lineno,
            "graph6": emit_graph6(g).decode("ascii"),
            "order": g.order,
            "size": g.size,
            "min_degree": min_degree(g) if g.order else None,
            "connected": is_connected(g),
            "rho": spectral_radius(g, 0) if g.order else 0.0,
            "q": spectral_radius(g, 1) if g.order else 0.0,
        }
        plain = (
            f"{rec['graph6']} n={rec['order']} m={rec['size']} delta={rec['min_degree']} "
            f"connected={str(rec['connected']).lower()} rho={rec['rho']!r} q={rec['q']!r}"
        )
        if args.k is not None:
            if not 0 <= args.k <= g.order:
                warnings += 1
                err.write(f"error: line {lineno}: k={args.k} outside 0..{g.order}\n")
                continue
            m = is_kfc_matching(g, args.k)
            rec["matching"] = m.to_record()
            plain += f" kfc_matching={str(m.verdict).lower()}"
            try:
                t = is_kfc_tutte(g, args.k, subset_cap=args.subset_cap)
                rec["tutte"] = t.to_record()
                plain += f" kfc_tutte={str(t.verdict).lower()}"
                cert = t if not t.verdict else m
            except SearchCapError:
                rec["tutte"] = None
                plain += " kfc_tutte=skipped"
                cert = m
            if not cert.verdict:
                plain += f" witness={list(cert.witness)} kind={cert.witness_kind}"
        _emit(args.format, rec, plain, out)
    if warnings:
        err.write(f"warnings: {warnings}\n")
    return EXIT_OK


def cmd_threshold(args, out=sys.stdout, err=sys.stderr) -> int:
    p = ExtremalParams(args.n, args.delta, args.k)
    try:
        report = extremal.thresholds(p, tol=args.tol)
    except ParameterError as exc:
        err.write(f"error: {exc}\nusage: factorcrit threshold N DELTA K [rho|q] with delta > k >= 0 and n > 2*delta-k+1\n")
        return EXIT_USAGE
    except ThresholdConsistencyError as exc:
        err.write(f"internal consistency failure: {exc}\n")
        _emit(args.format, exc.report.to_record(), exc.report.format_plain(args.which), out)
        return EXIT_INTERNAL
    _emit(args.format, report.to_record(), report.format_plain(args.which), out)
    return EXIT_OK


def cmd_extremal(args, out=sys.stdout, err=sys.stderr) -> int:
    try:
        g = extremal.build_H(ExtremalParams(args.n, args.delta, args.k))
    except ParameterError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    out.write(emit_graph6(g).decode("ascii") + "\n")
    return EXIT_OK


def _need(args, *names) -> None:
    missing = [f"--{n}" for n in names if getattr(args, n) is None]
    if missing:
        raise ParameterError(f"missing {', '.join(missing)}")


def cmd_verify(args, out=sys.stdout, err=sys.stderr) -> int:
    bound = "relaxed" if args.relaxed and args.bound == "theorem" else args.bound
    try:
        if args.lemma:
            names = verifier.LEMMAS if args.lemma == "all" else (args.lemma,)
            ranges = verifier.GridRanges(
                deltas=args.delta,
                n_span=args.span,
                trials=args.trials,
                seed=args.seed,
                hprime_bound=args.hprime_bound,
                relaxed=args.relaxed,
            )
            failed = False
            for name in names:
                rep = verifier.verify_lemma_grid(name, ranges)
                failed |= not rep.ok
                _emit(args.format, rep.to_record(), rep.format_plain(), out)
            return EXIT_FOUND if failed else EXIT_OK

        _need(args, "n", "k")
        if len(args.delta) != 1:
            raise ParameterError("--delta must be a single value here")
        p = ExtremalParams(args.n, args.delta[0], args.k)

        if args.sharpness:
            res = verifier.sharpness_check(p, tol=args.tol)
            _emit(args.format, res.to_record(), res.format_plain(), out)
            return EXIT_OK if res.ok else EXIT_FOUND

        spec = verifier.CorpusSpec(
            source=args.corpus,
            n=p.n,
            delta=p.delta,
            p=args.p,
            model=args.model,
            count=args.count,
            seed=args.seed,
            path=args.input,
        )
        rep = verifier.verify_theorem(
            spec, p, args.theorem, bound=bound, slack=args.slack, jobs=args.jobs,
            keep_records=args.records,
        )
        if args.format == "record":
            out.write(rep.format_record() + "\n")
        else:
            out.write(rep.format_plain() + "\n")
        return EXIT_OK if rep.ok else EXIT_FOUND
    except ThresholdConsistencyError as exc:
        err.write(f"internal consistency failure: {exc}\n")
        return EXIT_INTERNAL
    except (ParameterError, verifier.CorpusError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE


COMMANDS = {
    "analyze": cmd_analyze,
    "threshold": cmd_threshold,
    "extremal": cmd_extremal,
    "verify": cmd_verify,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return COMMANDS[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
