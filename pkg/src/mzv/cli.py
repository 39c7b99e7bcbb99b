"""Command-line front end: ``mzv eval|shuffle|stuffle|dual|verify|list``.

Exit codes: 0 success, 1 some identity failed, 2 bad input (parse error,
unknown identity, invalid parameters), 3 divergent (non-admissible) input,
4 requested precision unreachable.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Sequence

from . import algebra, identities
from .bigreal import EvalConfig
from .core import Composition, MZVError, NotAdmissible, ParseError, decode_word, dual, encode_word
from .eval import PrecisionUnreachable, zeta_m_checked

EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_DIVERGENT = 3
EXIT_PRECISION = 4

ENV_KEYS = {"MZV_PREC": "prec", "MZV_CUTOFF": "cutoff"}
CONFIG_KEYS = {"prec", "cutoff", "guard", "em_order"}


class UsageError(Exception):
    pass


# --- configuration -------------------------------------------------------------


def read_config_file(path: str) -> dict[str, str]:
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key=value")
            key, value = (s.strip() for s in line.split("=", 1))
            if key not in CONFIG_KEYS:
                raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
            out[key] = value
    return out


def resolve_config(args: argparse.Namespace, environ=os.environ) -> EvalConfig:
    """Merge settings: command-line flags beat environment beat config file."""
    merged: dict[str, str] = {}
    if getattr(args, "config", None):
        merged.update(read_config_file(args.config))
    for env, key in ENV_KEYS.items():
        if environ.get(env):
            merged[key] = environ[env]
    if getattr(args, "prec", None) is not None:
        merged["prec"] = str(args.prec)
    if getattr(args, "N", None) is not None:
        merged["cutoff"] = str(args.N)
    fields = {"prec": "target_digits", "cutoff": "cutoff_N", "guard": "guard_digits", "em_order": "em_order"}
    kwargs = {}
    for key, value in merged.items():
        try:
            kwargs[fields[key]] = int(value)
        except ValueError:
            raise UsageError(f"{key} must be an integer, got {value!r}") from None
    try:
        return EvalConfig(**kwargs)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


# --- parameter ranges ------------------------------------------------------------


def parse_values(text: str) -> list:
    """``"0..4"`` → [0, 1, 2, 3, 4]; ``"1,3"`` → [1, 3]; ``"1/2"`` → [Fraction(1, 2)]."""
    values = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            lo, hi = part.split("..", 1)
            try:
                lo_i, hi_i = int(lo), int(hi)
            except ValueError:
                raise UsageError(f"ranges need integer endpoints, got {part!r}") from None
            if hi_i < lo_i:
                raise UsageError(f"empty range {part!r}")
            values.extend(range(lo_i, hi_i + 1))
            continue
        try:
            v = Fraction(part)
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"bad parameter value {part!r}") from None
        values.append(int(v) if v.denominator == 1 else v)
    return values


def parse_param_flags(tokens: Sequence[str]) -> dict[str, list]:
    out: dict[str, list] = {}
    it = iter(tokens)
    for tok in it:
        if not tok.startswith("--") or len(tok) < 3:
            raise UsageError(f"unexpected argument {tok!r}")
        name, eq, value = tok[2:].partition("=")
        if not eq:
            try:
                value = next(it)
            except StopIteration:
                raise UsageError(f"--{name} needs a value") from None
        out[name] = parse_values(value)
    return out


def expand_grid(fam: identities.Family, given: dict[str, list]) -> list[dict]:
    """Cartesian product of the given values; missing parameters come from the default grid."""
    unknown = [k for k in given if k not in fam.params]
    if unknown:
        raise identities.ParameterError(f"{fam.id} does not take --{', --'.join(unknown)}")
    if not given:
        return [dict(g) for g in fam.grid]
    missing = [p for p in fam.params if p not in given]
    fills = []
    for g in fam.grid:
        proj = {k: g[k] for k in missing}
        if proj not in fills:
            fills.append(proj)
    names = list(given)
    out = []
    for combo in itertools.product(*(given[n] for n in names)):
        for fill in fills:
            out.append({**dict(zip(names, combo)), **fill})
    return out


# --- report formatting --------------------------------------------------------------


def _params_text(params: dict) -> str:
    return " ".join(f"{k}={v}" for k, v in params.items())


def format_reports(reports: list[identities.VerificationReport], fmt: str) -> str:
    if fmt == "json":
        return json.dumps([r.to_dict() for r in reports], indent=2, ensure_ascii=False) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(identities.VerificationReport.FIELDS)
        for r in reports:
            d = r.to_dict()
            d["params"] = json.dumps(d["params"], sort_keys=False)
            d["legs"] = ";".join(d["legs"])
            d["pass"] = "true" if d["pass"] else "false"
            writer.writerow([d[f] for f in identities.VerificationReport.FIELDS])
        return buf.getvalue()
    lines = []
    for r in reports:
        status = "PASS" if r.passed else "FAIL"
        line = f"{status} {r.id} {_params_text(r.params)}".rstrip()
        if r.abs_err:
            line += f"  abs_err={r.abs_err} rel_err={r.rel_err} tol={r.tolerance}"
        line += f"  [{r.elapsed_ms} ms]"
        if r.reason:
            line += f"  ({r.reason})"
        lines.append(line)
    npass = sum(r.passed for r in reports)
    lines.append(f"{npass}/{len(reports)} passed")
    return "\n".join(lines) + "\n"


def shuffle_text(lc: algebra.LinComb) -> str:
    """Shuffle results in word order, printed as compositions."""
    if not len(lc):
        return "0"
    parts = []
    for word, c in lc.sorted_items():
        label = f"({decode_word(word)})"
        mag = abs(c)
        parts.append(("-" if c < 0 else "+", label if mag == 1 else f"{mag}*{label}"))
    text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


# --- commands ------------------------------------------------------------------------


def cmd_eval(args, out) -> int:
    cfg = resolve_config(args)
    c = Composition.parse(args.index)
    value, err = zeta_m_checked(c, args.star, cfg)
    label = "ζ*" if args.star else "ζ"
    out.write(f"{label}({c}) = {value.to_string(cfg.target_digits)}\n")
    out.write(f"error estimate: {float(err.value):.3g}\n")
    return 0


def cmd_shuffle(args, out) -> int:
    a, b = Composition.parse(args.index1), Composition.parse(args.index2)
    out.write(shuffle_text(algebra.shuffle(encode_word(a), encode_word(b))) + "\n")
    return 0


def cmd_stuffle(args, out) -> int:
    a, b = Composition.parse(args.index1), Composition.parse(args.index2)
    out.write(str(algebra.stuffle(a, b)) + "\n")
    return 0


def cmd_dual(args, out) -> int:
    out.write(str(dual(Composition.parse(args.index))) + "\n")
    return 0


def _verify_job(job):
    identity_id, params, cfg, tol = job
    return identities.verify(identities.make(identity_id, **params), cfg, tol)


def run_jobs(jobs: list, n_workers: int) -> list[identities.VerificationReport]:
    if n_workers <= 1 or len(jobs) <= 1:
        reports = [_verify_job(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=n_workers) as pool:
            reports = list(pool.map(_verify_job, jobs))
    return sorted(reports, key=lambda r: r.sort_key)


def cmd_verify(args, extra: Sequence[str], out) -> int:
    cfg = resolve_config(args)
    given = parse_param_flags(extra)
    if args.all:
        if given:
            raise UsageError("--all takes no parameter ranges")
        fams = list(identities.CATALOG.values())
    else:
        fams = [identities.family(args.id)]
    jobs = []
    for fam in fams:
        for params in expand_grid(fam, given):
            fam.make(**params)  # validate before any work starts
            jobs.append((fam.id, params, cfg, args.tol))
    reports = run_jobs(jobs, args.jobs)
    text = format_reports(reports, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)
    return 0 if all(r.passed for r in reports) else EXIT_FAIL


def cmd_list(args, out) -> int:
    for fam in identities.CATALOG.values():
        line = f"{fam.id:<24} ({', '.join(fam.params)})  {fam.description}"
        if fam.note:
            line += f"  [{fam.note}]"
        out.write(line + "\n")
    return 0


# --- entry point ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mzv", description="Multiple zeta values: evaluation and identity checks.",
                                     allow_abbrev=False)
    parser.add_argument("--config", help="key=value file (prec, cutoff, guard, em_order)")
    sub = parser.add_subparsers(dest="command", required=True)
    # family parameters such as --p must not be taken for abbreviations of --prec
    add = lambda name, **kw: sub.add_parser(name, allow_abbrev=False, **kw)  # noqa: E731

    p = add("eval", help="evaluate ζ or ζ* of a composition")
    p.add_argument("--index", required=True, help='composition text, e.g. "1,3" or "2,3~"')
    p.add_argument("--star", action="store_true", help="zeta-star value")
    p.add_argument("--prec", type=int, help="target decimal digits")
    p.add_argument("--N", type=int, help="maximum number of series terms")

    for name in ("shuffle", "stuffle"):
        p = add(name, help=f"{name} product of two compositions")
        p.add_argument("index1")
        p.add_argument("index2")

    p = add("dual", help="dual composition")
    p.add_argument("index")

    p = add("verify", help="check catalog identities",
                       epilog="Family parameters are passed as --NAME VALUES, e.g. --p 0..4 --lambda 1/2,2")
    target = p.add_mutually_exclusive_group(required=True)
    target.add_argument("--id", help="identity family id (see `list`)")
    target.add_argument("--all", action="store_true", help="every family on its default grid")
    p.add_argument("--prec", type=int, help="target decimal digits")
    p.add_argument("--N", type=int, help="maximum number of series terms")
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--tol", type=float, help="override the default tolerance")
    p.add_argument("--jobs", type=int, default=1, help="parallel worker processes")

    add("list", help="list identity families")
    return parser


def main(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args, extra = parser.parse_known_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else 0
    try:
        if extra and args.command != "verify":
            raise UsageError(f"unrecognized arguments: {' '.join(extra)}")
        if args.command == "eval":
            return cmd_eval(args, out)
        if args.command == "shuffle":
            return cmd_shuffle(args, out)
        if args.command == "stuffle":
            return cmd_stuffle(args, out)
        if args.command == "dual":
            return cmd_dual(args, out)
        if args.command == "verify":
            return cmd_verify(args, extra, out)
        return cmd_list(args, out)
    except NotAdmissible as exc:
        err.write(f"error: {exc}\n")
        return EXIT_DIVERGENT
    except PrecisionUnreachable as exc:
        err.write(f"error: {exc}\n")
        return EXIT_PRECISION
    except (UsageError, ParseError, identities.UnknownIdentity, identities.ParameterError) as exc:
        msg = f"unknown identity id {exc.args[0]!r}" if isinstance(exc, identities.UnknownIdentity) else str(exc)
        err.write(f"error: {msg}\n")
        return EXIT_USAGE
    except MZVError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    except OSError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
