"""Command-line interface: ``tbl <command> WORD [options]``."""
import argparse
import json
import os
import re
import sys
import time
import warnings
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence

from . import __version__
from .braid import (BraidWord, QuasipositiveCertificate, bm_pair, parse_braid, self_linking)
from .cache import ResultCache
from .cover import (DEFAULT_RULE, LINKING_RULES, chord_presentation, d3, h1, linking_matrix,
                    sigma_x)
from .diagram import close_braid, determinant
from .errors import (BraidParseError, DeterminantMismatch, ResourceCapExceeded,
                     UndefinedInvariant, UnsupportedInput)
from .khovanov import ENGINES, homology_table, psi_chain, psi_nonzero
from .verdict import ContactReport, classify

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_CAP, EXIT_DET = 0, 1, 2, 3, 4
COMMANDS = ("sl", "kh", "psi", "cover", "d3", "verdict", "bm", "report", "batch")


def rational(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _h1_json(g) -> Dict[str, Any]:
    return {"torsion": list(g.torsion), "free_rank": g.free_rank, "order": g.order,
            "text": str(g)}


def _table_json(table) -> List[Dict[str, int]]:
    return [{"i": i, "q": q, "dim": dim} for (i, q), dim in sorted(table.items())]


def cover_json(sp, sl: int, paper_constant: bool) -> Dict[str, Any]:
    cp = sp.chords
    return {
        "strands": cp.word.strands,
        "normalized_word": list(cp.normalized),
        "appended_levels": list(cp.appended_levels),
        "distinguished": {str(k): v for k, v in sorted(cp.distinguished.items())},
        "components": [
            {"position": c.chord.position, "level": c.chord.level, "sign": c.chord.sign,
             "anchor": c.chord.anchor, "contact_coeff": c.contact_coeff,
             "smooth_framing": c.smooth_framing}
            for c in sp.components
        ],
        "endpoint_order": [list(e) for e in cp.endpoint_order],
        "linking_matrix": sp.linking_matrix.tolist(),
        "rule": sp.rule,
        "signs_nonnegative": sp.signs_nonnegative,
        "h1": _h1_json(h1(sp)),
        "sigma_x": sigma_x(sp),
        "d3": rational(d3(sp, sl, paper_constant)),
        "c1_is_zero": True,
    }


def report_json(r: ContactReport) -> Dict[str, Any]:
    return {
        "sl": r.sl,
        "h1": _h1_json(r.h1),
        "d3": rational(r.d3),
        "c1_is_zero": r.c1_is_zero,
        "sigma_x": r.sigma_x,
        "determinant": r.determinant,
        "fillability": r.fillability.value,
        "c_invariant": r.c_invariant.value,
        "psi_nonzero": r.psi_nonzero,
        "rules_fired": [{"id": x.ident, "rule": x.statement} for x in r.rules_fired],
        "conjecture_note": r.conjecture_note,
        "skipped": list(r.skipped),
    }


def _parse_window(text: Optional[str]):
    if text is None:
        return None
    m = re.fullmatch(r"\s*(-?\d+)\s*[:,]\s*(-?\d+)\s*", text)
    if not m:
        raise BraidParseError(f"bad q window {text!r}; expected LO:HI", token=text)
    lo, hi = int(m.group(1)), int(m.group(2))
    if lo > hi:
        raise UnsupportedInput(f"empty q window {text!r}")
    return lo, hi


def _parse_cert(text: Optional[str]) -> Optional[QuasipositiveCertificate]:
    if text is None:
        return None
    try:
        raw = json.loads(text)
        return QuasipositiveCertificate(tuple((tuple(w), int(i)) for w, i in raw))
    except (ValueError, TypeError) as exc:
        raise BraidParseError(f"bad certificate {text!r}: {exc}", token=text) from None


def compute(command: str, word: BraidWord, opts: Dict[str, Any]) -> Any:
    """Results payload of one subcommand for one word."""
    cap = opts.get("max_crossings")
    paper = opts.get("paper_d3_constant", False)
    rule = opts.get("rule", DEFAULT_RULE)
    if command == "sl":
        return {"sl": self_linking(word)}
    if command == "kh":
        window = tuple(opts["q_window"]) if opts.get("q_window") else None
        table = homology_table(close_braid(word), opts.get("reduced", False),
                               opts.get("engine", "tangle"), window, cap)
        return {"reduced": opts.get("reduced", False), "engine": opts.get("engine", "tangle"),
                "q_window": list(window) if window else None, "table": _table_json(table),
                "total": sum(table.values())}
    if command == "psi":
        d = close_braid(word)
        nonzero = psi_nonzero(d, cap)
        p = psi_chain(d)
        return {"i": p.i, "q": p.q, "nonzero": nonzero}
    if command == "cover":
        sp = linking_matrix(chord_presentation(word), rule)
        return cover_json(sp, self_linking(word), paper)
    if command == "d3":
        sp = linking_matrix(chord_presentation(word), rule)
        return {"d3": rational(d3(sp, self_linking(word), paper)),
                "constant": "printed" if paper else "calibrated"}
    if command == "verdict":
        cert = _parse_cert(opts.get("cert"))
        return report_json(classify(word, cert, cap, paper, rule))
    if command == "report":
        out = {}
        for sub in ("sl", "psi", "cover", "d3", "verdict"):
            out[sub] = compute(sub, word, opts)
        kh_opts = dict(opts, reduced=True)
        out["kh"] = compute("kh", word, kh_opts)
        return out
    raise UnsupportedInput(f"unknown command {command!r}")


def bm_payload(p: int, q: int, r: int, opts: Dict[str, Any]) -> Dict[str, Any]:
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        k1, k2 = bm_pair(p, q, r)
    cols = {}
    for name, w in (("K1", k1), ("K2", k2)):
        rep = classify(w, None, opts.get("max_crossings"), opts.get("paper_d3_constant", False),
                       opts.get("rule", DEFAULT_RULE))
        table = homology_table(close_braid(w), True, opts.get("engine", "tangle"), None,
                               opts.get("max_crossings"))
        cols[name] = {
            "sl": rep.sl, "determinant": rep.determinant, "h1": str(rep.h1),
            "d3": rational(rep.d3), "psi_nonzero": rep.psi_nonzero,
            "fillability": rep.fillability.value, "c_invariant": rep.c_invariant.value,
            "kh_reduced": _table_json(table),
        }
    rows = [{"invariant": key, "K1": cols["K1"][key], "K2": cols["K2"][key],
             "equal": cols["K1"][key] == cols["K2"][key]} for key in cols["K1"]]
    return {"p": p, "q": q, "r": r, "hypothesis_ok": not caught,
            "K1": k1.text(), "K2": k2.text(), "table": rows}


def _options(args, command: str) -> Dict[str, Any]:
    opts: Dict[str, Any] = {
        "max_crossings": getattr(args, "max_crossings", None),
        "paper_d3_constant": getattr(args, "paper_d3_constant", False),
    }
    if command in ("cover", "d3", "verdict", "report", "bm", "batch"):
        opts["rule"] = getattr(args, "rule", None) or DEFAULT_RULE
    if command in ("kh", "report", "bm", "batch"):
        opts["engine"] = getattr(args, "engine", None) or "tangle"
    if command == "kh":
        opts["reduced"] = bool(getattr(args, "reduced", False))
        window = _parse_window(getattr(args, "q_window", None))
        opts["q_window"] = list(window) if window else None
    if command in ("verdict", "report"):
        opts["cert"] = getattr(args, "cert", None)
    return opts


def _envelope(word_text: str, opts, results, timings: Optional[float], hit: bool, show: bool):
    env = {"tool_version": __version__, "input_word": word_text, "options": opts,
           "results": results}
    if show:
        env["timings"] = {"seconds": round(timings or 0.0, 6)}
        env["cache_hit"] = hit
    return env


def run_word(command: str, text: str, strands: Optional[int], opts: Dict[str, Any],
             cache_dir: Optional[str], show_timings: bool = False) -> Dict[str, Any]:
    word = parse_braid(text, strands)
    cache = ResultCache(cache_dir, __version__)
    t0 = time.perf_counter()
    results = cache.get(word.text(), command, opts)
    hit = results is not None
    if not hit:
        results = compute(command, word, opts)
        cache.put(word.text(), command, opts, results)
    return _envelope(word.text(), opts, results, time.perf_counter() - t0, hit, show_timings)


def _error_code(exc: BaseException) -> int:
    if isinstance(exc, (BraidParseError, UnsupportedInput, UndefinedInvariant)):
        return EXIT_PARSE
    if isinstance(exc, ResourceCapExceeded):
        return EXIT_CAP
    if isinstance(exc, DeterminantMismatch):
        return EXIT_DET
    return EXIT_FAIL


def _batch_line(job):
    command, text, strands, opts, cache_dir, show = job
    try:
        return run_word(command, text, strands, opts, cache_dir, show), None
    except (BraidParseError, UnsupportedInput, UndefinedInvariant, ResourceCapExceeded,
            DeterminantMismatch) as exc:
        return {"input": text, "error": {"type": type(exc).__name__, "message": str(exc),
                                         "exit_code": _error_code(exc)}}, exc


def run_batch(path: str, command: str, strands, opts, cache_dir, jobs: int, show: bool):
    """Process one word per line; output order follows input order."""
    with open(path) as fh:
        lines = [ln.strip() for ln in fh]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    work = [(command, ln, strands, opts, cache_dir, show) for ln in lines]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_batch_line, work))
    else:
        results = [_batch_line(job) for job in work]
    return results


def _text(obj, indent=0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        lines = []
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and not _flat_list(v):
                lines.append(f"{pad}{k}:")
                lines.append(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
        return "\n".join(lines)
    if isinstance(obj, list):
        return "\n".join(f"{pad}- " + _text(x, indent + 1).lstrip() for x in obj)
    return pad + _scalar(obj)


def _flat_list(v) -> bool:
    return isinstance(v, list) and all(not isinstance(x, dict) for x in v)


def _scalar(v) -> str:
    if isinstance(v, list):
        return json.dumps(v)
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


def _emit(env, fmt: str, out):
    if fmt == "text":
        out.write(_text(env) + "\n")
    else:
        out.write(json.dumps(env, sort_keys=True, indent=2) + "\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--strands", type=int, default=argparse.SUPPRESS,
                        help="strand count (default: largest generator + 1)")
    common.add_argument("--max-crossings", type=int, default=argparse.SUPPRESS,
                        help="override the crossing cap of the chosen engine")
    common.add_argument("--cache-dir", default=argparse.SUPPRESS,
                        help="result cache directory (default: $TBL_CACHE_DIR)")
    common.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS)
    common.add_argument("--paper-d3-constant", action="store_true", default=argparse.SUPPRESS,
                        help="use the printed constant -1/2 in the d3 formula")
    common.add_argument("--timings", action="store_true", default=argparse.SUPPRESS,
                        help="add wall-clock timings and cache_hit to the output")
    common.add_argument("--rule", choices=sorted(LINKING_RULES), default=argparse.SUPPRESS,
                        help="linking-number rule for the surgery presentation")
    common.add_argument("--engine", choices=ENGINES, default=argparse.SUPPRESS,
                        help="Khovanov engine (default: tangle)")

    parser = argparse.ArgumentParser(prog="tbl", parents=[common],
                                     description="Invariants of transverse links given as braids.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "sl": "self-linking number",
        "kh": "Khovanov homology dimension table",
        "psi": "grading and non-vanishing of psi",
        "cover": "surgery presentation of the branched double cover",
        "d3": "d3 invariant of the contact structure",
        "verdict": "rule-based fillability and contact-invariant verdict",
        "report": "everything above",
    }
    for name, text in helps.items():
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("word", help='braid word, e.g. "1 1 -2" or "aaB"')
        if name == "kh":
            p.add_argument("--reduced", action="store_true")
            p.add_argument("--q-window", help="restrict to quantum gradings LO:HI")
        if name in ("verdict", "report"):
            p.add_argument("--cert", help="quasipositive certificate as JSON [[word, i], ...]")
    bm = sub.add_parser("bm", parents=[common], help="compare a Birman-Menasco pair")
    bm.add_argument("--p", type=int, required=True)
    bm.add_argument("--q", type=int, required=True)
    bm.add_argument("--r", type=int, required=True)
    batch = sub.add_parser("batch", parents=[common], help="one JSON line per input word")
    batch.add_argument("--file", required=True)
    batch.add_argument("--command", dest="batch_command", default="report",
                       choices=[c for c in COMMANDS if c not in ("bm", "batch")])
    batch.add_argument("--jobs", type=int, default=1)
    return parser


def _protect_negatives(argv: Sequence[str]) -> List[str]:
    # "-1 -2" or "-3:4" would otherwise be taken for options
    return [(" " + a) if re.match(r"^-\d", a) else a for a in argv]


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_protect_negatives(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    fmt = getattr(args, "format", "json")
    cache_dir = getattr(args, "cache_dir", None) or os.environ.get("TBL_CACHE_DIR") or None
    strands = getattr(args, "strands", None)
    show = getattr(args, "timings", False)
    try:
        if args.command == "bm":
            opts = _options(args, "bm")
            payload = bm_payload(args.p, args.q, args.r, opts)
            env = _envelope(f"bm p={args.p} q={args.q} r={args.r}", opts, payload, None, False,
                            False)
            _emit(env, fmt, stdout)
            return EXIT_OK
        if args.command == "batch":
            command = args.batch_command
            opts = _options(args, command)
            results = run_batch(args.file, command, strands, opts, cache_dir, args.jobs, show)
            failed = False
            for env, exc in results:
                if exc is not None:
                    failed = True
                    stderr.write(f"tbl: {env['input']!r}: {exc}\n")
                if fmt == "text":
                    stdout.write(_text(env) + "\n\n")
                else:
                    stdout.write(json.dumps(env, sort_keys=True) + "\n")
            return EXIT_FAIL if failed else EXIT_OK
        opts = _options(args, args.command)
        env = run_word(args.command, args.word, strands, opts, cache_dir, show)
        _emit(env, fmt, stdout)
        return EXIT_OK
    except OSError as exc:
        stderr.write(f"tbl: {exc}\n")
        return EXIT_PARSE
    except (BraidParseError, UnsupportedInput, UndefinedInvariant, ResourceCapExceeded,
            DeterminantMismatch) as exc:
        stderr.write(f"tbl: {type(exc).__name__}: {exc}\n")
        return _error_code(exc)


def main() -> None:
    sys.exit(run())
