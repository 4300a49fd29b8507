"""``lrcodes`` command line.

Exit status: 0 on success, 1 when the input is well-formed but the request
fails (bad spec, index out of range, field mismatch), 2 on usage errors.
Reports are JSON on stdout; codeword files are plain text::

    # q=13 n=12
    3 ? 1 8 ...
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import bounds as B
from .evalcode import FORMULA, format_word, min_distance_bruteforce, parse_word
from .gf import FieldError
from .recovery import CertificationError
from .registry import TAGS, SpecError, build, parse_assignments, parse_spec


class DomainError(Exception):
    pass


def _emit(obj, out=None):
    out = out or sys.stdout
    out.write(json.dumps(obj, indent=2, sort_keys=True, default=_jsonable) + "\n")


def _jsonable(o):
    if isinstance(o, np.integer):
        return int(o)
    if isinstance(o, np.ndarray):
        return o.tolist()
    raise TypeError(f"cannot serialise {type(o).__name__}")


def _load_spec(args):
    if getattr(args, "spec", None):
        try:
            with open(args.spec) as fh:
                return parse_spec(fh.read())
        except OSError as exc:
            raise DomainError(f"cannot read spec: {exc}") from exc
    if getattr(args, "construction", None):
        return parse_assignments(args.construction, args.params)
    raise DomainError("give a construction tag with key=value parameters, or --spec FILE")


def _build(spec, verify="full"):
    options = {}
    if spec.construction == "gk" and verify == "full":
        options["verify_rank"] = spec.parameters["l"] <= 2
    return build(spec, **options)


def _read_word(path, code):
    try:
        text = sys.stdin.read() if path == "-" else open(path).read()
    except OSError as exc:
        raise DomainError(f"cannot read word file: {exc}") from exc
    body, header = [], {}
    for line in text.splitlines():
        if line.startswith("#"):
            header = dict(tok.split("=", 1) for tok in line[1:].split() if "=" in tok)
            if code is not None and "q" in header and int(header["q"]) != code.field.q:
                raise DomainError(f"word is over GF({header['q']}) but the code is over GF({code.field.q})")
            if code is not None and "n" in header and int(header["n"]) != code.n:
                raise DomainError(f"word has n={header['n']} but the code has n={code.n}")
        else:
            body.append(line)
    word = parse_word(" ".join(body), code.field if code is not None else None)
    if code is not None and len(word) != code.n:
        raise DomainError(f"word length {len(word)} != n = {code.n}")
    return word, header


def _write_word(word, q, path):
    head = f"q={q} " if q else ""
    text = f"# {head}n={len(word)}\n{format_word(word)}\n"
    if path and path != "-":
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _describe(lc, verify):
    code, st = lc.code, lc.structure
    info = {
        "spec": {"construction": lc.construction, "parameters": lc.params},
        "n": code.n,
        "k": code.k,
        "k_source": code.meta.get("k_source", "rank"),
        "field_order": code.field.q,
        "locality": st.locality,
        "localities": st.localities(),
        "design_distance": code.design_distance,
        "distance_provenance": code.distance_provenance,
        "targets": lc.targets,
    }
    if verify == "full":
        cert = lc.certify()
        info["certification"] = cert
        info["availability"] = cert["availability"]
    else:
        info["certification"] = None
        info["availability"] = st.availability
    monos = lc.extra.get("monomials")
    if monos is not None:
        info["good_monomials"] = {"count": len(monos.monomials), "rank": monos.rank,
                                  "baseline": monos.baseline_count, "sporadic": len(monos.sporadic)}
    d = code.design_distance
    if d is not None and code.distance_provenance == FORMULA:
        t = max(1, info["availability"])
        params = B.ParamTuple(code.n, code.k, d, max(1, min(st.locality, code.k)), t, code.field.q)
        info["bounds"] = B.classify(params).to_dict()
    else:
        info["bounds"] = None
    return info


# --- subcommands --------------------------------------------------------------

def cmd_construct(args):
    spec = _load_spec(args)
    lc = _build(spec, args.verify)
    if args.emit_spec:
        with open(args.emit_spec, "w") as fh:
            fh.write(spec.to_json() + "\n")
    _emit(_describe(lc, args.verify))


def cmd_encode(args):
    spec = _load_spec(args)
    lc = _build(spec, "fast")
    code = lc.code
    if args.message is not None:
        msg = [int(t) for t in args.message.replace(",", " ").split()]
        if any(not 0 <= m < code.field.q for m in msg):
            raise DomainError("message symbols must be field element codes")
        if len(msg) != code.k:
            raise DomainError(f"message length {len(msg)} != k = {code.k}")
        word = code.encode(msg)
    else:
        word = code.random_codewords(1, np.random.default_rng(args.seed))[0]
    _write_word([int(w) for w in word], code.field.q, args.out)


def cmd_erase(args):
    word, header = _read_word(args.input, None)
    if args.positions:
        pos = [int(t) for t in args.positions.split(",") if t]
    else:
        rng = np.random.default_rng(args.seed)
        pos = sorted(int(i) for i in rng.choice(len(word), size=args.random, replace=False))
    for i in pos:
        if not 0 <= i < len(word):
            raise DomainError(f"position {i} outside word of length {len(word)}")
        word[i] = None
    _write_word(word, header.get("q"), args.out)


def cmd_recover(args):
    spec = _load_spec(args)
    lc = _build(spec, "fast")
    code = lc.code
    word, _ = _read_word(args.input, code)
    fixed, report = lc.recover(word)
    out = report.to_dict()
    for entry in out["repaired"]:
        entry["point"] = code.point_label(entry["index"])
        entry["support_points"] = [code.point_label(j) for j in entry["support"]]
    out["word"] = format_word(fixed)
    out["is_codeword"] = None if report.residual else bool(code.contains(fixed))
    if args.out:
        _write_word(fixed, code.field.q, args.out)
    _emit(out)


def cmd_bounds(args):
    if args.csv or args.table:
        if args.csv:
            try:
                with open(args.csv) as fh:
                    rows = B.read_rows(fh.read().splitlines())
            except OSError as exc:
                raise DomainError(f"cannot read {args.csv}: {exc}") from exc
        else:
            rows = B.load_table(f"{args.table}.csv")
        _emit([rep.to_dict() for rep in B.classify_rows(rows)])
        return
    missing = [k for k in ("n", "k", "d", "r") if getattr(args, k) is None]
    if missing:
        raise UsageError(f"bounds needs --{' --'.join(missing)} (or --csv/--table)")
    _emit(B.classify(B.ParamTuple(args.n, args.k, args.d, args.r, args.t, args.q)).to_dict())


def cmd_monomials(args):
    from . import lifted as L

    if args.curve == "hermitian":
        curve, delta = L.hermitian_curve(args.q), args.q - 1
    else:
        curve = L.binary_norm_trace_curve(args.r)
        delta = L.nt_delta(args.r, args.convention)
    if args.delta is not None:
        delta = args.delta
    gm = L.good_monomials(curve, delta, args.method)
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write(gm.to_csv())
    _emit({
        "curve": curve.name, "points": len(curve.points), "delta": delta, "method": args.method,
        "count": len(gm.monomials), "distinct": len(gm.distinct), "rank": gm.rank,
        "baseline": gm.baseline_count, "sporadic": [list(m) for m in gm.sporadic],
    })


def cmd_mindist(args):
    spec = _load_spec(args)
    lc = _build(spec, "fast")
    d = min_distance_bruteforce(lc.code, work_budget=args.budget)
    if d is None:
        raise DomainError(f"{lc.code.field.q}^{lc.code.k} codewords exceed the work budget")
    _emit({"n": lc.n, "k": lc.k, "d": d, "provenance": "brute-force",
           "design_distance": lc.code.design_distance})


def cmd_simulate(args):
    from .storesim import ClusterModel, simulate

    spec = _load_spec(args)
    lc = _build(spec, "fast")
    failed = tuple(int(t) for t in args.failed.split(",") if t) if args.failed else None
    model = ClusterModel(p=args.p, failed=failed, seed=args.seed)
    report = simulate(lc.code, lc.structure, model, args.trials)
    _emit(report.to_dict())


class UsageError(Exception):
    pass


def _add_spec_args(sp, positional=True):
    if positional:
        sp.add_argument("construction", nargs="?", choices=TAGS, help="construction tag")
        sp.add_argument("params", nargs="*", help="key=value construction parameters")
    sp.add_argument("--spec", help="JSON spec file {construction, parameters}")


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lrcodes", description="Locally recoverable codes toolkit")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("construct", help="build a code and report its parameters")
    _add_spec_args(sp)
    sp.add_argument("--verify", choices=("full", "fast"), default="full",
                    help="full: certify every repair group; fast: structural counts only")
    sp.add_argument("--emit-spec", metavar="FILE", help="write the canonical spec JSON here")
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("encode", help="encode a message (or a random one)")
    _add_spec_args(sp)
    sp.add_argument("--message", help="k field-element codes, space or comma separated")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out", help="output word file (default stdout)")
    sp.set_defaults(func=cmd_encode)

    sp = sub.add_parser("erase", help="replace symbols by '?'")
    sp.add_argument("--in", dest="input", required=True, help="word file ('-' for stdin)")
    grp = sp.add_mutually_exclusive_group(required=True)
    grp.add_argument("--positions", help="comma-separated indices")
    grp.add_argument("--random", type=int, help="number of random positions")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_erase)

    sp = sub.add_parser("recover", help="peel erasures with local repair groups")
    _add_spec_args(sp)
    sp.add_argument("--in", dest="input", required=True, help="word file ('-' for stdin)")
    sp.add_argument("--out", help="write the repaired word here")
    sp.set_defaults(func=cmd_recover)

    sp = sub.add_parser("bounds", help="distance bounds and optimality verdict")
    for name in ("n", "k", "d", "r", "q"):
        sp.add_argument(f"--{name}", type=int)
    sp.add_argument("--t", type=int, default=1)
    sp.add_argument("--csv", help="batch mode: CSV with columns n,k,d,r[,t,q]")
    sp.add_argument("--table", choices=("table2",), help="classify a shipped fixture table")
    sp.set_defaults(func=cmd_bounds)

    sp = sub.add_parser("monomials", help="good monomials for a lifted code")
    sp.add_argument("--curve", choices=("hermitian", "nt"), required=True)
    sp.add_argument("--q", type=int, default=4)
    sp.add_argument("--r", type=int, default=4)
    sp.add_argument("--convention", choices=("literal", "interpolation-consistent"),
                    default="interpolation-consistent")
    sp.add_argument("--delta", type=int, help="override the degree bound")
    sp.add_argument("--method", choices=("reduce", "points"), default="reduce")
    sp.add_argument("--csv", help="write (a, b, class) rows here")
    sp.set_defaults(func=cmd_monomials)

    sp = sub.add_parser("mindist", help="exact minimum distance by exhaustive search")
    _add_spec_args(sp)
    sp.add_argument("--budget", type=int, default=10**7, help="max codewords (up to scalars)")
    sp.set_defaults(func=cmd_mindist)

    sp = sub.add_parser("simulate", help="storage failure simulation")
    _add_spec_args(sp)
    sp.add_argument("--p", type=float, default=0.01)
    sp.add_argument("--trials", type=int, default=1000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--failed", help="explicit comma-separated failed nodes (overrides --p)")
    sp.set_defaults(func=cmd_simulate)
    return ap


def run(argv=None) -> int:
    ap = make_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.func(args)
    except UsageError as exc:
        ap.print_usage(sys.stderr)
        print(f"lrcodes: error: {exc}", file=sys.stderr)
        return 2
    except (DomainError, SpecError, FieldError, CertificationError, ValueError, IndexError) as exc:
        _emit({"error": type(exc).__name__, "message": str(exc)}, sys.stderr)
        return 1
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
