"""Command-line interface.

Exit codes: 0 success, 2 input error, 3 method not applicable or size cap
exceeded, 4 no synchronizing word.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import os
import sys
from fractions import Fraction

from .automaton import Automaton, InvalidWordError, is_strongly_connected, is_synchronizing, mask, members
from .classes import is_eulerian, one_cluster_detect, pseudo_eulerian_witness, verify_uniform_W
from .distributions import uniform_on
from .engine import (
    METHODS,
    AveragingInstance,
    EngineError,
    NotApplicableError,
    NotSynchronizingError,
    synchronize,
    verify_hypotheses,
)
from .harness import (
    FAMILIES,
    ORACLE_MAX_STATES,
    BenchRecord,
    CapExceededError,
    GenerationError,
    bench_run,
    make_family,
    oracle_shortest_sync,
)
from .io import FileFormatError, automaton_to_dict, load_automaton, load_word_set, to_dot

EXIT_OK, EXIT_INPUT, EXIT_INAPPLICABLE, EXIT_NO_SYNC = 0, 2, 3, 4
ORACLE_ENV = "SYNCHROKIT_ORACLE_MAX_STATES"


class UsageError(Exception):
    pass


def frac(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def fmt_set(S: int) -> str:
    return "{" + ",".join(map(str, members(S))) + "}"


def oracle_cap(flag: int | None) -> int:
    if flag is not None:
        return flag
    env = os.environ.get(ORACLE_ENV)
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"{ORACLE_ENV}={env!r} is not an integer") from None
    return ORACLE_MAX_STATES


def parse_n_range(text: str) -> range:
    for sep in ("..", "-", ":"):
        if sep in text:
            lo, hi = text.split(sep, 1)
            try:
                return range(int(lo), int(hi) + 1)
            except ValueError:
                break
    try:
        v = int(text)
    except ValueError:
        raise UsageError(f"bad n-range {text!r}; use e.g. 4..8") from None
    return range(v, v + 1)


def classify(A: Automaton) -> dict:
    weights = pseudo_eulerian_witness(A)
    return {
        "n": A.n,
        "strongly_connected": is_strongly_connected(A),
        "synchronizing": is_synchronizing(A),
        "eulerian": is_eulerian(A),
        "pseudo_eulerian": weights is not None,
        "pseudo_eulerian_witness": None if weights is None else
        {A.alphabet[a]: frac(p) for a, p in enumerate(weights)},
        "one_cluster": [{"letter": A.alphabet[a], "r": len(members(R)), "cycle": members(R)}
                        for a, R in one_cluster_detect(A)],
    }


def cmd_classify(args) -> int:
    A = load_automaton(args.file)
    rep = classify(A)
    if args.json:
        print(json.dumps(rep, indent=2))
        return EXIT_OK
    for key in ("strongly_connected", "synchronizing", "eulerian", "pseudo_eulerian"):
        print(f"{key}: {str(rep[key]).lower()}")
    if rep["pseudo_eulerian_witness"]:
        print("witness: " + ", ".join(f"{a}={p}" for a, p in rep["pseudo_eulerian_witness"].items()))
    oc = rep["one_cluster"]
    print("one_cluster: " + (", ".join(f"{c['letter']}(r={c['r']})" for c in oc) if oc else "none"))
    return EXIT_OK


def _word_set(args, A):
    if not args.w_file:
        return None
    words, k = load_word_set(args.w_file, A)
    ws = verify_uniform_W(A, words, k)
    if ws is None:
        raise NotApplicableError("word set is not uniform (some (state, target) pair is not hit exactly k times)")
    return ws


def cmd_sync(args) -> int:
    A = load_automaton(args.file)
    ws = _word_set(args, A)
    if args.method == "w-set" and ws is None:
        raise UsageError("--method w-set needs --w-file")
    res = synchronize(A, args.method, ws, verify=args.verify, odd_r_improvement=args.odd_r_improvement)
    cert, ver = res if args.verify else (res, None)
    out = {
        "method": cert.method,
        "word": A.render(cert.word),
        "length": cert.length,
        "bound": cert.bound,
        "valid": cert.is_valid(),
    }
    if args.trace:
        inst = cert.instance
        out["R"] = members(inst.R)
        out["c"] = inst.c
        out["initial"] = (None if cert.initial is None else
                          {"state": cert.initial[0], "letter": A.alphabet[cert.initial[1]]})
        out["steps"] = [{"before": members(s.before), "word": A.render(s.word),
                         "after": members(s.after), "prefix_cap": s.cap} for s in cert.steps]
    if ver is not None:
        r = ver.report
        out["verify"] = {
            "ok": r.ok and cert.is_valid(),
            "P2_materialized": ver.P2_materialized,
            "preservation": r.preservation, "preservation_via": r.preservation_via,
            "support_ok": r.support_ok, "reachability": r.reachability, "w0_into_R": r.w0_into_R,
            "c": r.c, "c_bruteforce": r.c_bruteforce, "notes": r.notes,
            "steps_certified": len(ver.step_certificates),
        }
    if args.json:
        print(json.dumps(out, indent=2))
    else:
        print(f"method: {out['method']}")
        print(f"word: {out['word']}")
        print(f"length: {out['length']}")
        print(f"bound: {out['bound']}")
        if args.trace:
            if cert.initial is not None:
                q, a = cert.initial
                print(f"collapse: state {q} by letter {A.alphabet[a]}")
            else:
                print(f"w0: {A.render(cert.instance.w0) or '(empty)'}")
            for i, s in enumerate(cert.steps, 1):
                print(f"step {i}: {fmt_set(s.before)} -> {fmt_set(s.after)} by {A.render(s.word) or '(empty)'}"
                      f" (prefix cap {s.cap})")
        if ver is not None:
            v = out["verify"]
            print(f"verify: {'ok' if v['ok'] else 'FAILED'} (P2 {'materialized' if v['P2_materialized'] else 'not materialized'},"
                  f" c={v['c']}, brute-force c={v['c_bruteforce']})")
            for note in v["notes"]:
                print(f"  {note}")
    ok = cert.is_valid() and (ver is None or out["verify"]["ok"])
    return EXIT_OK if ok else 1


def cmd_oracle(args) -> int:
    A = load_automaton(args.file)
    w = oracle_shortest_sync(A, oracle_cap(args.max_n))
    if w is None:
        print("none")
        return EXIT_NO_SYNC
    print(f"word: {A.render(w)}")
    print(f"length: {len(w)}")
    return EXIT_OK


def cmd_gen(args) -> int:
    if args.n < 1 or args.k < 1:
        raise UsageError("--n and --k must be positive")
    A = make_family(args.family, args.n, args.k, args.seed, synchronizing=args.synchronizing)
    text = to_dot(A) if args.dot else json.dumps(automaton_to_dict(A)) + "\n"
    if args.out:
        with open(args.out, "w") as f:
            f.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_dot(args) -> int:
    sys.stdout.write(to_dot(load_automaton(args.file)))
    return EXIT_OK


def cmd_bench(args) -> int:
    families = [f.strip() for f in args.family.split(",") if f.strip()]
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    for f in families:
        if f not in FAMILIES:
            raise UsageError(f"unknown family {f!r}; choose from {', '.join(FAMILIES)}")
    for m in methods:
        if m not in METHODS:
            raise UsageError(f"unknown method {m!r}; choose from {', '.join(METHODS)}")
    records = bench_run(families, parse_n_range(args.n_range), methods, args.oracle, args.k, args.seed,
                        args.samples, oracle_cap(args.max_n))
    out = open(args.csv, "w", newline="") if args.csv and args.csv != "-" else sys.stdout
    try:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(BenchRecord.CSV_COLUMNS)
        for r in records:
            if r.status == "ok":
                w.writerow(r.csv_row())
            else:
                print(f"{r.family} n={r.n} {r.method}: {r.status}", file=sys.stderr)
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK


def cmd_verify(args) -> int:
    """Check the hypotheses for a user-specified instance."""
    A = load_automaton(args.file)
    words, _ = load_word_set(args.w_file, A) if args.w_file else ([()], 0)
    R = mask(int(x) for x in args.R.split(",")) if args.R else A.all_states
    if R >> A.n:
        raise UsageError("R mentions a state outside the automaton")
    w0 = A.word(args.w0) if args.w0 else ()
    inst = AveragingInstance(A, uniform_on(dict.fromkeys(words)), R, w0, args.c)
    rep = verify_hypotheses(inst)
    print(f"[R] P1 = [R]: {str(rep.preservation).lower()}")
    print(f"R inside q Sigma* for q in R: {str(rep.reachability).lower()}")
    print(f"Q w0 inside R: {str(rep.w0_into_R).lower()}")
    print(f"c: {rep.c} (brute force: {rep.c_bruteforce if rep.c_bruteforce is not None else 'skipped'})")
    if rep.ok:
        print(f"bound: {inst.bound()}")
    return EXIT_OK if rep.ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="synchrokit", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("classify", help="report class membership and witnesses")
    s.add_argument("file")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("sync", help="construct a synchronizing word with its bound")
    s.add_argument("file")
    s.add_argument("--method", choices=("auto",) + METHODS, default="auto")
    s.add_argument("--w-file", help="word-set JSON for --method w-set")
    s.add_argument("--verify", action="store_true", help="check hypotheses and certify each step")
    s.add_argument("--trace", action="store_true", help="print the expansion steps")
    s.add_argument("--odd-r-improvement", action="store_true")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_sync)

    s = sub.add_parser("oracle", help="shortest synchronizing word by exhaustive search")
    s.add_argument("file")
    s.add_argument("--max-n", type=int, default=None)
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("gen", help="write an automaton from a family")
    s.add_argument("--family", choices=FAMILIES, required=True)
    s.add_argument("--n", type=int, default=4)
    s.add_argument("--k", type=int, default=2)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--synchronizing", action="store_true")
    s.add_argument("--dot", action="store_true", help="write Graphviz instead of JSON")
    s.add_argument("--out")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("dot", help="export an automaton file as Graphviz")
    s.add_argument("file")
    s.set_defaults(func=cmd_dot)

    s = sub.add_parser("bench", help="certificate length vs bound vs oracle, as CSV")
    s.add_argument("--family", default="cerny", help="comma-separated families")
    s.add_argument("--n-range", default="4..6")
    s.add_argument("--methods", default="one-cluster")
    s.add_argument("--oracle", action="store_true")
    s.add_argument("--max-n", type=int, default=None, help="oracle state cap")
    s.add_argument("--k", type=int, default=2)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--samples", type=int, default=1)
    s.add_argument("--csv", help="output path (default stdout)")
    s.set_defaults(func=cmd_bench)

    s = sub.add_parser("verify", help="check the averaging hypotheses for a custom instance")
    s.add_argument("file")
    s.add_argument("--w-file", help="support of P1 (uniform weights); default the empty word")
    s.add_argument("--R", help="comma-separated states (default all)")
    s.add_argument("--w0", help="word with Q.w0 inside R")
    s.add_argument("--c", type=int, choices=(1, 2), default=1)
    s.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (FileFormatError, UsageError, InvalidWordError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except (NotApplicableError, CapExceededError, GenerationError) as e:
        print(f"not applicable: {e}", file=sys.stderr)
        return EXIT_INAPPLICABLE
    except NotSynchronizingError as e:
        print(f"no synchronizing word: {e}", file=sys.stderr)
        return EXIT_NO_SYNC
    except EngineError as e:
        print(f"engine error: {e}", file=sys.stderr)
        return 1
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
