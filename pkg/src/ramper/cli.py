"""Command line front end: ``generate``, ``verify``, ``pell`` and ``period``.

Exit codes: 0 success, 1 verification or internal failure, 2 invalid input.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from . import obstruction
from .construct import check_hypotheses, reduce_and_check
from .errors import HypothesisError, RamperError
from .padic import embed, hensel_root
from .pell import solution_at, solutions
from .periods import minimal_period
from .quadfield import QuadElem

logger = logging.getLogger("ramper")

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2
PRECISION_ENV = "RAMPER_PRECISION"


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class Config:
    precision: int = obstruction.DEFAULT_PRECISION
    height_bound: int = obstruction.DEFAULT_HEIGHT_BOUND
    pell_count: int = 5
    out: Optional[str] = None
    verbosity: int = 0

    def __post_init__(self):
        if self.precision < 4:
            raise UsageError(f"precision must be at least 4, got {self.precision}")
        if self.height_bound < 1:
            raise UsageError(f"height bound must be at least 1, got {self.height_bound}")
        if self.pell_count < 1:
            raise UsageError(f"count must be at least 1, got {self.pell_count}")


def default_precision() -> int:
    raw = os.environ.get(PRECISION_ENV)
    if raw is None:
        return obstruction.DEFAULT_PRECISION
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{PRECISION_ENV}={raw!r} is not an integer") from None


@lru_cache(maxsize=128)
def _report_text(p: int, g: int, k: int, precision: int, height: int) -> str:
    return json.dumps(obstruction.build_report(p, g, k, precision, height).to_json())


def report_json(p: int, g: int, k: int, precision: int, height: int) -> dict:
    """Fresh report dict; memoised because verify recomputes the same inputs often."""
    return json.loads(_report_text(p, g, k, precision, height))


# -- generate ----------------------------------------------------------------

def cmd_generate(p: int, g: int, count: int, config: Config) -> str:
    check_hypotheses(p, g)
    reports = [report_json(p, g, k, config.precision, config.height_bound) for k in range(count)]
    if len({json.dumps(r["a"]) for r in reports}) != len(reports):
        raise RamperError("distinct Pell indices produced repeated values of a")
    return obstruction.dumps(reports)


# -- verify ------------------------------------------------------------------

class SchemaError(Exception):
    pass


_INT_FIELDS = ("p", "g", "pell_index", "n", "c", "precision", "d", "schema_version")
_DICT_FIELDS = ("v", "b", "a", "alpha", "minimal_period", "certificate", "witness_refutation")


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def check_schema(report) -> None:
    if not isinstance(report, dict):
        raise SchemaError("report must be a JSON object")
    for key in _INT_FIELDS:
        if key not in report:
            raise SchemaError(f"missing field {key!r}")
        if not _is_int(report[key]):
            raise SchemaError(f"field {key!r} must be an integer")
    for key in _DICT_FIELDS:
        if not isinstance(report.get(key), dict):
            raise SchemaError(f"field {key!r} must be an object")
    if not isinstance(report.get("conclusion"), str):
        raise SchemaError("field 'conclusion' must be a string")
    if not _is_int(report["witness_refutation"].get("height_bound")):
        raise SchemaError("witness_refutation.height_bound must be an integer")


def first_difference(stored, fresh, path: str = "") -> Optional[str]:
    """Path of the first leaf where two JSON values differ, or None."""
    if isinstance(fresh, dict):
        if not isinstance(stored, dict):
            return path
        for key in fresh:
            sub = f"{path}.{key}" if path else key
            if key not in stored:
                return sub
            diff = first_difference(stored[key], fresh[key], sub)
            if diff is not None:
                return diff
        extra = [k for k in stored if k not in fresh]
        return (f"{path}.{extra[0]}" if path else extra[0]) if extra else None
    if isinstance(fresh, list):
        if not isinstance(stored, list):
            return path
        for i, (s, f) in enumerate(zip(stored, fresh)):
            diff = first_difference(s, f, f"{path}[{i}]")
            if diff is not None:
                return diff
        return None if len(stored) == len(fresh) else f"{path}[{min(len(stored), len(fresh))}]"
    if type(stored) is not type(fresh) or stored != fresh:
        return path
    return None


def _blame_inputs(report: dict) -> Optional[str]:
    """Name an input field contradicted by the redundant data stored with it.

    Inputs (p, g, pell_index, precision) drive the recomputation, so a tampered
    input would otherwise surface as a mismatch in some derived field.
    """
    p = report["p"]
    embedded = [report[k].get("p") for k in ("v", "b", "a")]
    embedded.append(report["minimal_period"].get("provenance", {}).get("p"))
    if len(set(embedded)) == 1 and embedded[0] != p:
        return "p"

    g = report["g"]
    prov_g = report["minimal_period"].get("provenance", {}).get("g")
    if _is_int(prov_g) and prov_g != g and prov_g * (prov_g + 1) // 2 == report["d"]:
        return "g"

    n = report["precision"]
    others = {report["alpha"].get("precision"), 2 * report["witness_refutation"].get("precision", -1)}
    if len(others) == 1 and others != {2 * n}:
        return "precision"

    k = report["pell_index"]
    try:
        stored_v = QuadElem.from_json(report["v"])
        if stored_v.p == p and k >= 0:
            j = 0
            while True:
                cand = solution_at(p, j)
                if cand == stored_v:
                    return "pell_index" if j != k else None
                if cand.x > abs(stored_v.x):
                    break
                j += 1
    except (ValueError, TypeError, ZeroDivisionError, RamperError):
        pass
    return None


def verify_report(report: dict) -> Optional[tuple[str, str]]:
    """Recompute a report from (p, g, pell_index); return (field, detail) of the first mismatch."""
    check_schema(report)
    if report["schema_version"] != obstruction.SCHEMA_VERSION:
        return "schema_version", f"unsupported schema version {report['schema_version']}"
    blamed = _blame_inputs(report)
    if blamed is not None:
        return blamed, f"{blamed} is inconsistent with the values stored alongside it"
    p, g, k = report["p"], report["g"], report["pell_index"]
    n, h = report["precision"], report["witness_refutation"]["height_bound"]
    if k < 0:
        return "pell_index", "negative Pell index"
    if n < 1:
        return "precision", "precision must be positive"
    if h < 1:
        return "witness_refutation", "height bound must be positive"
    try:
        fresh = report_json(p, g, k, n, h)
    except HypothesisError as exc:
        name = "g" if all(r.startswith("g") for r in exc.reasons) else "p"
        return name, str(exc)
    except RamperError as exc:
        return "p", f"recomputation failed: {exc}"
    diff = first_difference(report, fresh)
    if diff is None:
        return None
    return diff, "stored value differs from recomputation"


def cmd_verify(path: str, config: Config) -> int:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: cannot read {path}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    reports = data if isinstance(data, list) else [data]
    for i, report in enumerate(reports):
        try:
            result = verify_report(report)
        except SchemaError as exc:
            print(f"error: report {i}: {exc}", file=sys.stderr)
            return EXIT_INPUT
        if result is not None:
            field, detail = result
            top = field.split(".")[0].split("[")[0]
            print(f"MISMATCH report {i}: field {top!r} ({field}): {detail}", file=sys.stderr)
            return EXIT_FAIL
        logger.info("report %d verified", i)
    print(f"OK: {len(reports)} report(s) verified")
    return EXIT_OK


# -- pell / period -------------------------------------------------------------

def cmd_pell(p: int, count: int) -> str:
    lines = [json.dumps(s.to_json()) for s in solutions(p, count)]
    return "\n".join(lines) + "\n"


def cmd_period(p: int, g: int, a_text: str, precision: int) -> str:
    params = check_hypotheses(p, g)
    a = QuadElem.parse(a_text, p)
    c = reduce_and_check(a, g)
    alpha = hensel_root(embed(a / c, precision), 2 * g + 2, precision)
    period = minimal_period(alpha, g)
    out = {
        "p": p,
        "g": g,
        "a": a.to_json(),
        "c": c,
        "precision": precision,
        "alpha": alpha.to_json(),
        "minimal_period": period.to_json({"p": p, "g": g, "a": a.to_json(), "c": c}),
        "d": params.d,
    }
    return json.dumps(out, indent=2) + "\n"


# -- entry point -------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ramper", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, with_height=True):
        sp.add_argument("--precision", type=int, default=None,
                        help=f"p-adic working precision (default 50, or ${PRECISION_ENV})")
        if with_height:
            sp.add_argument("--height-bound", type=int, default=obstruction.DEFAULT_HEIGHT_BOUND)

    gen = sub.add_parser("generate", help="build obstruction reports for Pell indices 0..count-1")
    gen.add_argument("--p", type=int, required=True)
    gen.add_argument("--g", type=int, required=True)
    gen.add_argument("--count", type=int, default=Config.pell_count)
    gen.add_argument("--out", default=None, help="output file (default stdout)")
    common(gen)

    ver = sub.add_parser("verify", help="recompute and check a report file")
    ver.add_argument("file")

    pell = sub.add_parser("pell", help="solutions of x^2 - p y^2 = -1 as JSON lines")
    pell.add_argument("--p", type=int, required=True)
    pell.add_argument("--count", type=int, default=1)

    per = sub.add_parser("period", help="alpha and the minimal period for a given a")
    per.add_argument("--p", type=int, required=True)
    per.add_argument("--g", type=int, required=True)
    per.add_argument("--a", required=True, help='element such as "36+16*sqrt5"')
    common(per, with_height=False)
    return parser


def _emit(text: str, out: Optional[str]):
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2),
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        precision = getattr(args, "precision", None)
        if precision is None:
            precision = default_precision()
        config = Config(precision=precision,
                        height_bound=getattr(args, "height_bound", obstruction.DEFAULT_HEIGHT_BOUND),
                        pell_count=getattr(args, "count", Config.pell_count),
                        out=getattr(args, "out", None),
                        verbosity=args.verbose)
        if args.command == "generate":
            _emit(cmd_generate(args.p, args.g, config.pell_count, config), config.out)
            return EXIT_OK
        if args.command == "verify":
            return cmd_verify(args.file, config)
        if args.command == "pell":
            _emit(cmd_pell(args.p, config.pell_count), None)
            return EXIT_OK
        if args.command == "period":
            _emit(cmd_period(args.p, args.g, args.a, config.precision), None)
            return EXIT_OK
    except (UsageError, HypothesisError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ValueError, RamperError) as exc:
        if args.command in ("pell", "period"):
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_INPUT
        print(f"internal failure: {exc}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
