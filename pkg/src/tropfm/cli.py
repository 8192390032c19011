"""Command line front end: ``tropfm bundle-info | fm | verify | jacobian``.

Reports go to stdout (or ``--out``) as JSON Lines; a one-line human
summary goes to stderr. Exit status: 0 when everything passes, 1 when a
verification fails, 2 on bad input, 3 when two internal computations of
the same quantity disagree.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from contextlib import contextmanager

from tropfm.exact_linalg import det_exact, format_rational
from tropfm.fourier_mukai import fm_closed, fm_oracle
from tropfm.graphs import (
    GraphError,
    jacobian_instance,
    parse_graph,
    run_jacobian_poincare,
    spanning_tree_weight,
)
from tropfm.line_bundles import (
    AppellHumbertData,
    deg_phi,
    h0,
    is_ample,
    is_nondegenerate,
    kernel_invariants,
)
from tropfm.theorems import GENERATORS, CrossCheckError, run_trials
from tropfm.torus import CohClass, standard_torus

DEFAULT_SEED = 20240601

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3


class InputError(Exception):
    pass


def default_seed() -> int:
    env = os.environ.get("TROPFM_SEED")
    if env is None:
        return DEFAULT_SEED
    try:
        return int(env, 0) & ((1 << 64) - 1)
    except ValueError:
        raise InputError(f"TROPFM_SEED is not an integer: {env!r}")


def _load(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}")
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}")


@contextmanager
def _sink(path):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8") as fh:
            yield fh


def _emit(fh, doc):
    fh.write(json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n")


def cmd_bundle_info(args) -> int:
    try:
        L = AppellHumbertData.from_json(_load(args.bundle))
    except (ValueError, TypeError) as exc:
        raise InputError(f"invalid bundle: {exc}")
    doc = {"g": L.g, "det_E": format_rational(det_exact(L.E)),
           "nondegenerate": is_nondegenerate(L), "ample": is_ample(L)}
    if doc["nondegenerate"]:
        doc["deg_phi"] = deg_phi(L)
        doc["K_invariant_factors"] = list(kernel_invariants(L).invariant_factors)
    if doc["ample"]:
        doc["h0"] = h0(L)
    with _sink(args.out) as fh:
        _emit(fh, doc)
    print(f"bundle g={L.g} det={doc['det_E']} ample={doc['ample']}", file=sys.stderr)
    return EXIT_OK


def cmd_fm(args) -> int:
    doc = _load(args.cls)
    g = args.g if args.g is not None else doc.get("g") if isinstance(doc, dict) else None
    if g is None:
        raise InputError("give the torus rank with --g or a 'g' field in the class JSON")
    try:
        c = CohClass.from_json(doc, standard_torus(int(g)))
    except (ValueError, TypeError) as exc:
        raise InputError(f"invalid class: {exc}")
    closed = fm_closed(c)
    agree = closed == fm_oracle(c)
    with _sink(args.out) as fh:
        _emit(fh, {"input": c.to_json(), "output": closed.to_json(), "oracle_agrees": agree})
    print(f"fm g={g}: {len(c)} terms -> {len(closed)} terms, oracle agrees: {agree}", file=sys.stderr)
    return EXIT_OK if agree else EXIT_INTERNAL


def _check_range(args):
    for name in ("g", "p", "q", "d", "bound"):
        v = getattr(args, name)
        if v is not None and v < 0:
            raise InputError(f"--{name} must be nonnegative")
    if args.bound is not None and args.bound < 1:
        raise InputError("--bound must be at least 1")
    if args.trials < 1:
        raise InputError("--trials must be at least 1")
    if args.g is not None and args.g < 1:
        raise InputError("--g must be at least 1")
    for name in ("p", "q", "d"):
        v = getattr(args, name)
        if v is not None and args.g is not None and v > args.g:
            raise InputError(f"--{name} must not exceed --g")
    if args.identity == "prym" and args.d is not None and args.d < 1:
        raise InputError("--d must be at least 1")


def cmd_verify(args) -> int:
    seed = args.seed if args.seed is not None else default_seed()
    _check_range(args)
    if args.graph is not None:
        if args.identity != "poincare":
            raise InputError("a graph input is only used by 'verify poincare'")
        try:
            batches = [run_jacobian_poincare(parse_graph(_load(args.graph)), seed)]
        except GraphError as exc:
            raise InputError(str(exc))
    else:
        params = {"g": args.g, "p": args.p, "q": args.q, "d": args.d, "bound": args.bound,
                  "exploratory": args.exploratory, "variant": args.variant}
        try:
            batches = run_trials(args.identity, args.trials, seed, params, workers=args.jobs)
        except (ValueError, TypeError) as exc:
            if isinstance(exc, CrossCheckError):
                raise
            raise InputError(str(exc))
    reports = [r for batch in batches for r in batch]
    with _sink(args.out) as fh:
        for r in reports:
            _emit(fh, r.to_json(timing=args.timing))
    failed = sum(not r.passed for r in reports if not r.exploratory)
    explored = [r for r in reports if r.exploratory]
    note = f", exploratory {sum(r.passed for r in explored)}/{len(explored)} agree" if explored else ""
    print(f"verify {args.identity}: {len(batches)} trials, {len(reports)} checks, "
          f"{len(reports) - failed - len(explored)} passed, {failed} failed{note}, seed={seed}",
          file=sys.stderr)
    return EXIT_FAIL if failed else EXIT_OK


def cmd_jacobian(args) -> int:
    try:
        G = parse_graph(_load(args.graph))
    except GraphError as exc:
        raise InputError(str(exc))
    J = jacobian_instance(G)
    reports = run_jacobian_poincare(G)
    doc = {"genus": J.genus, "gram": J.gram.to_json(), "det_gram": format_rational(det_exact(J.gram)),
           "spanning_tree_weight": spanning_tree_weight(G),
           "theta": {"ample": is_ample(J.theta) if J.genus else True,
                     "h0": h0(J.theta) if J.genus else 1},
           "poincare": [{"d": r.instance["d"], "pass": r.passed} for r in reports]}
    ok = all(r.passed for r in reports) and doc["spanning_tree_weight"] == det_exact(J.gram)
    with _sink(args.out) as fh:
        _emit(fh, doc)
    print(f"jacobian: genus {J.genus}, trees {doc['spanning_tree_weight']}, "
          f"Poincare formula {'holds' if ok else 'FAILS'} for all d", file=sys.stderr)
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="tropfm", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    b = sub.add_parser("bundle-info", help="det E, ampleness, h0, deg phi_L and K(L)")
    b.add_argument("bundle", help="bundle JSON file")
    b.add_argument("--out")
    b.set_defaults(func=cmd_bundle_info)

    f = sub.add_parser("fm", help="Fourier-Mukai transform of a cohomology class")
    f.add_argument("cls", metavar="class", help="class JSON file")
    f.add_argument("--g", type=int)
    f.add_argument("--out")
    f.set_defaults(func=cmd_fm)

    v = sub.add_parser("verify", help="run seeded verification trials")
    v.add_argument("identity", choices=sorted(GENERATORS))
    v.add_argument("graph", nargs="?", help="graph JSON (verify poincare on a Jacobian)")
    for name in ("g", "p", "q", "d", "bound"):
        v.add_argument(f"--{name}", type=int)
    v.add_argument("--trials", type=int, default=10)
    v.add_argument("--seed", type=lambda s: int(s, 0))
    v.add_argument("--exploratory", action="store_true",
                   help="allow non-symmetric E with an embedding; outcomes are reported, not asserted")
    v.add_argument("--variant", choices=("h0", "det"), default="h0",
                   help="constant in the Poincare formula: h0 (ample) or det E (nondegenerate)")
    v.add_argument("--jobs", type=int, default=1, help="worker threads")
    v.add_argument("--timing", action="store_true", help="fill the 'ms' field of each report")
    v.add_argument("--out")
    v.set_defaults(func=cmd_verify)

    j = sub.add_parser("jacobian", help="tropical Jacobian of a metric graph")
    j.add_argument("graph", help="graph JSON file")
    j.add_argument("--out")
    j.set_defaults(func=cmd_jacobian)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CrossCheckError as exc:
        print(f"internal cross-check failed: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
