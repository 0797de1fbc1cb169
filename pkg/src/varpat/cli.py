"""Command line front-end.

Three commands: ``match`` solves or decides one instance, ``gen`` writes
instances (hard-instance constructions or random per-class samples),
``bench`` times a corpus directory and emits CSV plus scaling figures.

Exit codes: 0 solved, 1 decision-mode rejection, 2 parse error,
3 unsupported pattern/algorithm combination, 4 budget exceeded.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import multiprocessing
import os
import random
import sys
import time
from pathlib import Path

from .core import (
    BudgetExceeded,
    ParseError,
    Pattern,
    UnsupportedClass,
    VarpatError,
    is_finite,
    peel_affixes,
)
from .formats import (
    Instance,
    dumps_instance,
    instance_digest,
    loads_instance,
    parse_text_instance,
)
from .hardness import CpInstance, cp_to_1repvar, ov_to_reg, sample_cp, sample_ov
from .klocal import DEFAULT_STATE_LIMIT
from .oracle import DEFAULT_BUDGET
from .regular import RegularPattern, mismatch_reg
from .sampler import CLASS_NAMES, random_instance
from .solve import ALGORITHMS, solve

EXIT_OK = 0
EXIT_REJECTED = 1
EXIT_PARSE = 2
EXIT_UNSUPPORTED = 3
EXIT_BUDGET = 4


def _default_budget() -> int:
    raw = os.environ.get("VARPAT_BUDGET")
    if raw is None:
        return DEFAULT_BUDGET
    try:
        return int(raw)
    except ValueError:
        raise ParseError(f"VARPAT_BUDGET must be an integer, got {raw!r}") from None


def _read_instance(args: argparse.Namespace) -> Instance:
    if args.pattern is not None or args.word is not None:
        if args.pattern is None or args.word is None:
            raise ParseError("--pattern and --word must be given together")
        pattern, word, codec = parse_text_instance(args.pattern, args.word)
        return Instance.build(word=word, pattern=pattern, codec=codec)
    if args.instance is None:
        raise ParseError("give an instance file, '-' for stdin, or --pattern/--word")
    text = sys.stdin.read() if args.instance == "-" else Path(args.instance).read_text()
    return loads_instance(text)


def _witness_json(witness, codec):
    if witness is None:
        return None
    out = {}
    for name, image in sorted(witness.items()):
        entry: dict = {"ids": list(image)}
        if codec is not None:
            entry["text"] = codec.decode_word(image)
        out[name] = entry
    return out


def _print_report(report: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(report, sort_keys=True))
        return
    if fmt == "csv":
        fields = ["digest", "class", "algorithm", "distance", "accepted",
                  "lcs_queries", "time_ms"]
        writer = csv.DictWriter(sys.stdout, fieldnames=fields, extrasaction="ignore")
        writer.writeheader()
        writer.writerow(report)
        return
    width = max(len(k) for k in report)
    for key, value in report.items():
        if key == "witness" and value is not None:
            value = ", ".join(
                f"{name}->{entry.get('text', entry['ids'])!r}"
                for name, entry in value.items()) or "(empty)"
        print(f"{key:<{width}}  {value}")


def _emit_trace(inst: Instance, distance) -> None:
    """Queue trace of the budgeted regular matcher, to stderr."""
    peeled = peel_affixes(inst.pattern, inst.word)
    core = Pattern(peeled.core_pattern) if peeled.core_pattern else None
    if not peeled.feasible or core is None or core.is_terminal_only():
        print("trace: no regular core to trace", file=sys.stderr)
        return
    try:
        rp = RegularPattern.from_symbols(peeled.core_pattern)
    except VarpatError:
        print("trace: pattern is not regular; tracing needs the regular path",
              file=sys.stderr)
        return
    budget = int(distance) if is_finite(distance) else len(inst.word)
    budget = max(0, budget - peeled.affix_mismatches)
    events: list = []
    mismatch_reg(peeled.core_word, rp, budget, trace=events)
    for event in events:
        print(json.dumps(event, sort_keys=True), file=sys.stderr)


def cmd_match(args: argparse.Namespace) -> int:
    inst = _read_instance(args)
    delta = args.delta if args.delta is not None else inst.delta
    started = time.perf_counter()
    result = solve(
        inst.word, inst.pattern, algo=args.algo, delta=delta, r=args.r,
        k=args.k, max_k=args.max_k, budget=args.budget,
        state_limit=args.state_limit, strict_gaps=args.strict_gaps,
        union_approx2=not args.no_union_approx2, sigma=inst.sigma)
    elapsed_ms = (time.perf_counter() - started) * 1000.0
    report = {
        "digest": instance_digest(inst),
        "class": result.pattern_class,
        "algorithm": result.algorithm,
        "distance": result.distance if is_finite(result.distance) else None,
        "witness": _witness_json(result.witness, inst.codec),
        "lcs_queries": result.lcs_queries,
        "accepted": result.accepted,
        "time_ms": round(elapsed_ms, 3),
    }
    _print_report(report, args.format)
    if args.trace:
        _emit_trace(inst, result.distance)
    if result.accepted is False:
        return EXIT_REJECTED
    return EXIT_OK


def cmd_gen(args: argparse.Namespace) -> int:
    rng = random.Random(args.seed)
    if args.kind == "ov":
        ov = sample_ov(args.n, args.d, rng,
                       planted_orthogonal=args.planted_orthogonal)
        inst = ov_to_reg(ov)
    elif args.kind == "cp":
        cp = sample_cp(args.k, args.len, args.m, rng, sigma=args.sigma)
        if args.delta is not None:
            cp = CpInstance(cp.words, cp.m, args.delta)
        inst = cp_to_1repvar(cp)
    else:
        inst = random_instance(
            args.cls, rng, sigma=args.sigma, max_vars=args.max_vars,
            word_len=args.word_len, k=args.k)
    text = dumps_instance(inst)
    if args.output:
        Path(args.output).write_text(text + "\n")
        print(f"{instance_digest(inst)}  {args.output}", file=sys.stderr)
    else:
        print(text)
    return EXIT_OK


def _bench_worker(text: str, algo: str, queue) -> None:
    inst = loads_instance(text)
    started = time.perf_counter()
    try:
        result = solve(inst.word, inst.pattern, algo=algo,
                       sigma=inst.sigma)
        queue.put({
            "status": "ok",
            "distance": result.distance if is_finite(result.distance) else None,
            "algo": result.algorithm,
            "cls": result.pattern_class,
            "lcs_queries": result.lcs_queries,
            "time_ms": (time.perf_counter() - started) * 1000.0,
        })
    except VarpatError as exc:
        queue.put({
            "status": type(exc).__name__,
            "distance": None,
            "algo": algo,
            "cls": "",
            "lcs_queries": 0,
            "time_ms": (time.perf_counter() - started) * 1000.0,
        })


def _run_with_timeout(text: str, algo: str, timeout: float) -> dict:
    ctx = multiprocessing.get_context()
    queue = ctx.Queue()
    proc = ctx.Process(target=_bench_worker, args=(text, algo, queue))
    proc.start()
    proc.join(timeout)
    if proc.is_alive():
        proc.terminate()
        proc.join()
        return {"status": "timeout", "distance": None, "algo": algo,
                "cls": "", "lcs_queries": 0, "time_ms": timeout * 1000.0}
    if not queue.empty():
        return queue.get()
    return {"status": "crashed", "distance": None, "algo": algo,
            "cls": "", "lcs_queries": 0, "time_ms": 0.0}


def _fit_slope(points: list[tuple[float, float]]) -> float | None:
    """Least-squares slope of log2(y) against log2(x)."""
    pts = [(math.log2(x), math.log2(y)) for x, y in points if x > 1 and y > 0]
    if len(pts) < 2:
        return None
    mx = sum(x for x, _ in pts) / len(pts)
    my = sum(y for _, y in pts) / len(pts)
    den = sum((x - mx) ** 2 for x, _ in pts)
    if den == 0:
        return None
    return sum((x - mx) * (y - my) for x, y in pts) / den


def _write_figures(rows: list[dict], out_csv: str) -> list[str]:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    stem = Path(out_csv).with_suffix("")
    written = []
    series: dict[str, list[tuple[int, float, int]]] = {}
    for row in rows:
        if row["status"] != "ok":
            continue
        series.setdefault(row["algo"], []).append(
            (row["n"], row["time_ms"], row["lcs_queries"]))
    for metric, idx, ylabel in (("time", 1, "time [ms]"),
                                ("queries", 2, "LCS queries")):
        fig, ax = plt.subplots(figsize=(6.0, 4.0))
        drew = False
        for algo, pts in sorted(series.items()):
            xs = [p[0] for p in pts if p[idx] > 0]
            ys = [p[idx] for p in pts if p[idx] > 0]
            if not xs:
                continue
            ax.plot(xs, ys, "o", markersize=4, alpha=0.7, label=algo)
            drew = True
        if not drew:
            plt.close(fig)
            continue
        ax.set_xscale("log", base=2)
        ax.set_yscale("log", base=2)
        ax.set_xlabel("word length n")
        ax.set_ylabel(ylabel)
        ax.legend(fontsize=8)
        ax.grid(True, which="both", alpha=0.3)
        fig.tight_layout()
        path = f"{stem}_{metric}.png"
        fig.savefig(path, dpi=120)
        plt.close(fig)
        written.append(path)
    return written


def cmd_bench(args: argparse.Namespace) -> int:
    corpus = sorted(Path(args.corpus).glob("*.json"))
    if not corpus:
        raise ParseError(f"no *.json instances under {args.corpus}")
    rows: list[dict] = []
    for path in corpus:
        text = path.read_text()
        try:
            inst = loads_instance(text)
        except ParseError:
            rows.append({"instance": path.name, "n": 0, "delta": "",
                         "algo": args.algo, "cls": "", "distance": None,
                         "time_ms": 0.0, "lcs_queries": 0, "status": "parse-error"})
            continue
        run = _run_with_timeout(text, args.algo, args.timeout)
        rows.append({
            "instance": path.name,
            "n": len(inst.word),
            "delta": "" if inst.delta is None else inst.delta,
            "algo": run["algo"],
            "cls": run["cls"],
            "distance": run["distance"],
            "time_ms": round(run["time_ms"], 3),
            "lcs_queries": run["lcs_queries"],
            "status": run["status"],
        })
    fields = ["instance", "n", "delta", "algo", "cls", "distance",
              "time_ms", "lcs_queries", "status"]
    out = open(args.output, "w", newline="") if args.output else sys.stdout
    try:
        writer = csv.DictWriter(out, fieldnames=fields)
        writer.writeheader()
        writer.writerows(rows)
    finally:
        if args.output:
            out.close()
    by_algo: dict[str, list[tuple[float, float]]] = {}
    for row in rows:
        if row["status"] == "ok" and row["lcs_queries"] > 0:
            by_algo.setdefault(row["algo"], []).append(
                (row["n"], row["lcs_queries"]))
    for algo, pts in sorted(by_algo.items()):
        slope = _fit_slope(pts)
        if slope is not None:
            print(f"fit: {algo} lcs_queries ~ n^{slope:.2f}", file=sys.stderr)
    if args.output and not args.no_figures:
        for path in _write_figures(rows, args.output):
            print(f"figure: {path}", file=sys.stderr)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="varpat",
        description="Mismatch minimization for patterns with variables.")
    sub = parser.add_subparsers(dest="command", required=True)

    m = sub.add_parser("match", help="solve or decide one instance")
    m.add_argument("instance", nargs="?",
                   help="instance JSON file, or '-' for stdin")
    m.add_argument("--pattern", help="pattern text, variables as {name}")
    m.add_argument("--word", help="word text (with --pattern)")
    m.add_argument("--algo", choices=ALGORITHMS, default="auto")
    m.add_argument("--delta", type=int, default=None,
                   help="decision mode: accept iff distance <= delta")
    m.add_argument("--r", type=int, default=3, help="median sample count (ptas)")
    m.add_argument("--k", type=int, default=None, help="locality bound (klocal)")
    m.add_argument("--max-k", type=int, default=3,
                   help="largest locality auto dispatch may use")
    m.add_argument("--budget", type=int, default=None,
                   help="enumeration budget for the oracle")
    m.add_argument("--state-limit", type=int, default=DEFAULT_STATE_LIMIT,
                   help="state budget for the k-local tables")
    m.add_argument("--strict-gaps", action="store_true",
                   help="regular path: require a nonempty gap between terminal blocks")
    m.add_argument("--no-union-approx2", action="store_true",
                   help="ptas: drop the factor candidates, sampled medians only")
    m.add_argument("--trace", action="store_true",
                   help="dump the regular matcher queue trace to stderr")
    m.add_argument("--format", choices=("json", "table", "csv"), default="table")
    m.set_defaults(func=cmd_match)

    g = sub.add_parser("gen", help="generate an instance")
    gsub = g.add_subparsers(dest="kind", required=True)
    gov = gsub.add_parser("ov", help="orthogonal-vectors hard instance")
    gov.add_argument("--n", type=int, required=True, help="vectors per side")
    gov.add_argument("--d", type=int, required=True, help="dimension")
    gov.add_argument("--planted-orthogonal", action="store_true",
                     help="force one orthogonal pair")
    gcp = gsub.add_parser("cp", help="consensus-patterns hard instance")
    gcp.add_argument("--k", type=int, required=True, help="number of strings")
    gcp.add_argument("--len", type=int, required=True, help="string length")
    gcp.add_argument("--m", type=int, required=True, help="factor length")
    gcp.add_argument("--sigma", type=int, default=2, help="payload alphabet size")
    gcp.add_argument("--delta", type=int, default=None,
                     help="consensus budget (random if omitted)")
    grnd = gsub.add_parser("random", help="random instance of a class")
    grnd.add_argument("--class", dest="cls", choices=CLASS_NAMES, required=True)
    grnd.add_argument("--sigma", type=int, default=3)
    grnd.add_argument("--max-vars", type=int, default=3)
    grnd.add_argument("--word-len", type=int, default=13)
    grnd.add_argument("--k", type=int, default=2, help="locality target (klocal)")
    for sp in (gov, gcp, grnd):
        sp.add_argument("--seed", type=int, default=None)
        sp.add_argument("-o", "--output", default=None)
        sp.set_defaults(func=cmd_gen)

    b = sub.add_parser("bench", help="time a corpus directory, emit CSV")
    b.add_argument("corpus", help="directory of instance *.json files")
    b.add_argument("--algo", choices=ALGORITHMS, default="auto")
    b.add_argument("--timeout", type=float, default=30.0,
                   help="per-instance timeout in seconds")
    b.add_argument("-o", "--output", default=None,
                   help="CSV path; figures are written next to it")
    b.add_argument("--no-figures", action="store_true")
    b.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if getattr(args, "budget", None) is None and args.command == "match":
            args.budget = _default_budget()
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except UnsupportedClass as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except VarpatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


def console_main() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    console_main()
