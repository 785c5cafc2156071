"""Command-line front end.

Exit status: 0 on success, 1 when an extremal search beats a theorem bound,
2 on usage errors (bad spec strings, unreadable class files).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from importlib import resources
from pathlib import Path

from . import __version__, bounds, report
from .coeffsolver import ClassKind
from .errors import SakaguchiError
from .extremal import SearchConfig
from .phicatalog import PhiSpec, parse_spec, phi_coeffs

THREADS_ENV = "SAKAGUCHI_KIT_THREADS"

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


class _UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


def _spec(text: str) -> PhiSpec:
    try:
        return parse_spec(text)
    except SakaguchiError as exc:
        raise _UsageError(str(exc)) from exc


def _config(args) -> SearchConfig:
    try:
        return SearchConfig(budget=args.budget, seed=args.seed, restarts=min(args.restarts, args.budget))
    except ValueError as exc:
        raise _UsageError(str(exc)) from exc


def worker_count(env: dict | None = None) -> int:
    """Pool size: CPU count, capped by ``SAKAGUCHI_KIT_THREADS`` when set."""
    env = os.environ if env is None else env
    n = os.cpu_count() or 1
    raw = env.get(THREADS_ENV)
    if raw:
        try:
            cap = int(raw)
        except ValueError as exc:
            raise _UsageError(f"{THREADS_ENV} must be an integer, got {raw!r}") from exc
        if cap < 1:
            raise _UsageError(f"{THREADS_ENV} must be positive")
        n = min(n, cap)
    return n


def read_classes(path: str | None) -> list[PhiSpec]:
    """Spec strings, one per line; ``#`` starts a comment.  ``None`` means the bundled catalog."""
    try:
        if path is None:
            text = resources.files("sakaguchi_kit").joinpath("data/catalog.txt").read_text()
        else:
            text = Path(path).read_text()
    except (OSError, UnicodeDecodeError) as exc:
        raise _UsageError(f"cannot read classes file: {exc}") from exc
    specs = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            specs.append(parse_spec(line))
        except SakaguchiError as exc:
            raise _UsageError(f"line {lineno}: {exc}") from exc
    return specs


def _job(job: tuple[PhiSpec, ClassKind, SearchConfig]) -> tuple[dict, bool]:
    return report.build_report(*job)


def run_reports(specs: list[PhiSpec], cfg: SearchConfig, workers: int = 1) -> tuple[list[dict], bool]:
    """Both kinds for every class, in input order."""
    jobs = [(s, k, cfg) for s in specs for k in (ClassKind.STAR, ClassKind.CONVEX)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=min(workers, len(jobs))) as pool:
            results = list(pool.map(_job, jobs))
    else:
        results = [_job(j) for j in jobs]
    return [r for r, _ in results], any(v for _, v in results)


def cmd_check(args) -> int:
    spec = _spec(args.spec)
    out = {"class_spec": spec.label, "phi_coeffs": list(phi_coeffs(spec)),
           "conditions": bounds.check_conditions(phi_coeffs(spec)).to_dict()}
    sys.stdout.write(_dump(out))
    return EXIT_OK


def _fragment(spec: PhiSpec, kind: ClassKind) -> dict:
    return {
        "schema_version": report.SCHEMA_VERSION,
        "class_spec": spec.label,
        "kind": kind.value,
        "phi_coeffs": list(phi_coeffs(spec)),
    }


def _provenance(cfg: SearchConfig) -> dict:
    return {"seed": cfg.seed, "budget": cfg.budget, "restarts": cfg.restarts, "tool_version": __version__}


def cmd_a5(args) -> int:
    spec, kind, cfg = _spec(args.spec), ClassKind(args.kind), _config(args)
    conditions = bounds.check_conditions(phi_coeffs(spec))
    a5, violated = report.a5_section(kind, spec, cfg, conditions)
    out = _fragment(spec, kind)
    out.update(conditions=conditions.to_dict(), a5=a5, provenance=_provenance(cfg))
    sys.stdout.write(_dump(out))
    return EXIT_VIOLATION if violated else EXIT_OK


def cmd_toeplitz(args) -> int:
    spec, kind, cfg = _spec(args.spec), ClassKind(args.kind), _config(args)
    t31, violated, _ = report.t31_section(kind, spec, cfg)
    disc = report.t31_discrepancies(spec, kind, t31)
    out = _fragment(spec, kind)
    out.update(t31=t31, discrepancies=disc, provenance=_provenance(cfg))
    sys.stdout.write(_dump(out))
    return EXIT_VIOLATION if violated else EXIT_OK


def cmd_report(args) -> int:
    specs = read_classes(args.classes)
    cfg = _config(args)
    reports, violated = run_reports(specs, cfg, worker_count())
    text = report.to_json(reports) if args.format == "json" else report.to_csv(reports)
    if args.out:
        try:
            Path(args.out).write_text(text)
        except OSError as exc:
            raise _UsageError(f"cannot write {args.out}: {exc}") from exc
    else:
        sys.stdout.write(text)
    return EXIT_VIOLATION if violated else EXIT_OK


def _search_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--budget", type=int, default=20_000, help="objective evaluations per search")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--restarts", type=int, default=4)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sakaguchi-kit", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="coefficient conditions for one phi")
    p.add_argument("spec")
    p.set_defaults(func=cmd_check)

    for name, func, text in (
        ("a5", cmd_a5, "sharp |a5| bound and extremal search"),
        ("toeplitz", cmd_toeplitz, "T31 bounds and extremal search"),
    ):
        p = sub.add_parser(name, help=text)
        p.add_argument("spec")
        p.add_argument("--kind", choices=[k.value for k in ClassKind], default="star")
        _search_flags(p)
        p.set_defaults(func=func)

    p = sub.add_parser("report", help="full reports for a file of class specs")
    p.add_argument("--classes", default=None, help="spec file; defaults to the bundled catalog")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", default=None, help="output path; standard output if omitted")
    _search_flags(p)
    p.set_defaults(func=cmd_report)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
