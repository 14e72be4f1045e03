"""Command-line front end.

Every subcommand prints one report (JSON by default, CSV on request).  All
numbers are exact rationals rendered as "num/den" strings.  Exit status is 0
on success, 1 when a verification suite finds a failing identity and 2 on a
usage error.

Defaults for truncation and resource bounds live in :data:`DEFAULTS`; a
key=value file named by the environment variable ``BKPHURWITZ_CONFIG``
overrides them, and explicit flags override both.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from fractions import Fraction
from itertools import combinations_with_replacement

from . import __version__
from .core import GradedPoly, Ring, as_fraction, format_rational
from .errors import ConsistencyError, DomainError, StructureError
from .partitions import Partition, parse_partition, partitions_of, partitions_up_to

SCHEMA_VERSION = 1
CONFIG_ENV = "BKPHURWITZ_CONFIG"

DEFAULTS = {
    "p_degree": 8,
    "param_degree": 6,
    "z_range": 16,
    "max_iterations": 10 ** 9,
    "hirota_degree": 4,
}


class UsageError(Exception):
    """Bad flags or inputs; reported with exit status 2."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# -- configuration ---------------------------------------------------------------------

def load_config(path: str | None = None) -> dict:
    """DEFAULTS updated from a key=value file (``#`` starts a comment)."""
    cfg = dict(DEFAULTS)
    path = path or os.environ.get(CONFIG_ENV)
    if not path:
        return cfg
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise UsageError(f"cannot read config file {path}: {exc}") from None
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value")
        key, value = (x.strip() for x in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in DEFAULTS:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
        try:
            cfg[key] = int(value)
        except ValueError:
            raise UsageError(f"{path}:{lineno}: {key} must be an integer") from None
    return cfg


# -- parsing helpers ---------------------------------------------------------------------

def _partition(text: str, what: str = "partition") -> Partition:
    try:
        return parse_partition(text)
    except DomainError as exc:
        raise UsageError(f"bad {what} {text!r}: {exc}") from None


def _profiles(text: str, degree: int) -> list[Partition]:
    text = text.strip()
    if not text:
        return []
    out = []
    for i, chunk in enumerate(text.split(";"), start=1):
        p = _partition(chunk, f"profile #{i}")
        if p.weight != degree:
            raise UsageError(f"profile #{i} {list(p)} has weight {p.weight}, expected degree {degree}")
        out.append(p)
    return out


def _rational(text: str, what: str) -> Fraction:
    try:
        return as_fraction(str(text))
    except (ValueError, ZeroDivisionError, TypeError):
        raise UsageError(f"{what} must be an exact rational, got {text!r}") from None


def _rational_list(text: str, what: str) -> list[Fraction]:
    s = text.strip()
    if s.startswith("[") and s.endswith("]"):
        s = s[1:-1]
    return [_rational(x, what) for x in s.split(",") if x.strip()]


def _kv(text: str, what: str) -> dict:
    """'zeta=[1,0,1];h=1' -> {'zeta': '[1,0,1]', 'h': '1'}."""
    out = {}
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        if "=" not in part:
            raise UsageError(f"{what}: expected key=value, got {part!r}")
        k, v = part.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def _rtable(text: str) -> dict:
    """'-1:2,0:1,1:1/2' -> {x: r(x)}."""
    out = {}
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        if ":" not in item:
            raise UsageError(f"r-table entries look like x:value, got {item!r}")
        x, v = item.split(":", 1)
        try:
            out[int(x)] = _rational(v, "r-table value")
        except ValueError:
            raise UsageError(f"r-table key must be an integer, got {x!r}") from None
    return out


# -- output ------------------------------------------------------------------------------

def _jsonable(x):
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, Partition):
        return list(x)
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return format_rational(x)
    if isinstance(x, GradedPoly):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return str(x)


def _emit(report: dict, fmt: str, out) -> None:
    if fmt == "json":
        body = {k: v for k, v in report.items() if k != "rows"}
        if "rows" in report and "rows" not in body.get("results", {}):
            body.setdefault("results", {})["rows"] = report["rows"]
        out.write(json.dumps(_jsonable(body), sort_keys=True, indent=2) + "\n")
        return
    rows = report.get("rows")
    if rows is None:
        rows = [report.get("results", {})]
    rows = [_jsonable(r) for r in rows]
    header = sorted({k for r in rows for k in r})
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=header, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: json.dumps(v) if isinstance(v, (list, dict)) else v for k, v in r.items()})
    out.write(buf.getvalue())


# -- weights from flags ------------------------------------------------------------------

def _formal_ring(D: int, param_degree: int, extra=()) -> Ring:
    from .bkp_tau import tau_ring
    return tau_ring(D, extra=[("h", "h", 1)] + list(extra), bounds={"h": param_degree})


def _weight_from_flags(args, ring: Ring):
    """Build a content weight.  Parametrizations I and II are expanded in the
    formal parameter h (truncated at --param-degree): zeta_m -> zeta_m (h0 h)^m
    and xi_m -> xi_m h, xi0 log t -> xi0 h, so that all coefficients stay rational."""
    from .bkp_tau import RTable
    from .contentprod import WeightSpecI, WeightSpecII
    chosen = [x for x in (args.weight_i, args.weight_ii, args.weight_table) if x]
    if len(chosen) > 1:
        raise UsageError("give at most one of --weight-i, --weight-ii, --weight-table")
    h = ring.gen("h") if "h" in ring else None
    if args.weight_i:
        kv = _kv(args.weight_i, "--weight-i")
        zeta = _rational_list(kv.get("zeta", "[]"), "zeta")
        h0 = _rational(kv.get("h", "1"), "h")
        return WeightSpecI(zeta, h.scale(h0)), {"zeta": zeta, "h": h0}
    if args.weight_ii:
        kv = _kv(args.weight_ii, "--weight-ii")
        xi = _rational_list(kv.get("xi", "[]"), "xi")
        xim = _rational_list(kv.get("xi_minus", "[]"), "xi_minus")
        t = _rational(kv.get("t", "2"), "t")
        xi0 = _rational(kv.get("xi0", "0"), "xi0")
        if not t:
            raise UsageError("t must be nonzero")
        spec = {m: h.scale(v) for m, v in enumerate(xi, start=1)}
        spec.update({-m: h.scale(v) for m, v in enumerate(xim, start=1)})
        return WeightSpecII(spec, t, h.scale(xi0)), {"xi": xi, "xi_minus": xim, "t": t, "xi0": xi0}
    if args.weight_table:
        table = _rtable(args.weight_table)
        return RTable(table), {"table": {str(k): v for k, v in sorted(table.items())}}
    return None, {"r": "1"}


# -- subcommands ------------------------------------------------------------------------

def cmd_hurwitz(args, cfg) -> tuple[dict, int]:
    from .hurwitz import euler_cover, hurwitz_character, monodromy_oracle
    d = args.degree
    if d < 0:
        raise UsageError("--degree must be nonnegative")
    profiles = _profiles(args.profiles, d)
    inputs = {"euler": args.euler, "degree": d, "profiles": profiles,
              "oracle": args.oracle, "transitive": args.transitive}
    if args.transitive and not args.oracle:
        raise UsageError("--transitive counts connected covers and needs --oracle")
    if args.oracle:
        value = monodromy_oracle(args.euler, d, profiles, args.surface, args.transitive,
                                 cfg["max_iterations"])
        method = "monodromy-oracle" + ("-transitive" if args.transitive else "")
    else:
        value = hurwitz_character(args.euler, d, profiles)
        method = "character-formula"
    results = {"value": value, "method": method, "euler_cover": euler_cover(args.euler, d, profiles)}
    return {"inputs": inputs, "results": results}, 0


def cmd_chartable(args, cfg) -> tuple[dict, int]:
    from .characters import char_table
    d = args.degree
    if d < 0:
        raise UsageError("--degree must be nonnegative")
    table = char_table(d)
    classes = list(partitions_of(d))
    rows = []
    for lam in partitions_of(d):
        row = {"lambda": lam}
        for delta in classes:
            row[str(list(delta))] = table[lam, delta]
        rows.append(row)
    return {"inputs": {"degree": d}, "results": {"classes": classes, "rows": rows}, "rows": rows}, 0


def cmd_symfun(args, cfg) -> tuple[dict, int]:
    from . import symfun
    mu = _partition(args.mu, "--mu")
    fam = args.family
    if fam == "schur":
        f = symfun.schur(mu)
    elif fam == "macdonald":
        f = symfun.macdonald_Q(mu, _rational(args.q, "q"), _rational(args.t, "t")) if args.dual \
            else symfun.macdonald_P(mu, _rational(args.q, "q"), _rational(args.t, "t"))
    elif fam == "hall-littlewood":
        f = symfun.hall_littlewood_Q(mu, _rational(args.t, "t")) if args.dual \
            else symfun.hall_littlewood_P(mu, _rational(args.t, "t"))
    elif fam == "jack":
        f = symfun.jack_Q(mu, _rational(args.alpha, "alpha")) if args.dual \
            else symfun.jack_P(mu, _rational(args.alpha, "alpha"))
    else:
        raise UsageError(f"unknown family {fam!r}")
    rows = [{"delta": delta, "coefficient": c}
            for delta, c in sorted(f.coeffs.items(), key=lambda kv: tuple(kv[0]), reverse=True)]
    inputs = {"family": fam, "mu": mu, "q": args.q, "t": args.t, "alpha": args.alpha, "dual": args.dual}
    return {"inputs": inputs, "results": {"p_expansion": rows}, "rows": rows}, 0


def cmd_content(args, cfg) -> tuple[dict, int]:
    from .contentprod import (WeightSpecI, content_product_I, content_product_II)
    lam = _partition(args.lam, "--lambda")
    ring = Ring([("h", "h", 1)], {"h": cfg["param_degree"]})
    ns = argparse.Namespace(weight_i=args.param_i, weight_ii=args.param_ii, weight_table=None)
    if not (args.param_i or args.param_ii):
        raise UsageError("give --param-i or --param-ii")
    weight, echo = _weight_from_flags(ns, ring)
    if isinstance(weight, WeightSpecI):
        value = content_product_I(lam, weight, args.n, ring)
        exponent = weight.exponent_via_Phi(lam, args.n, ring)
    else:
        value = content_product_II(lam, weight, args.n, ring)
        exponent = weight.exponent_via_T(lam, args.n, ring)
    inputs = {"lambda": lam, "n": args.n, "weight": echo, "param_degree": cfg["param_degree"]}
    results = {"product": value, "exponent": exponent,
               "note": "series in the formal expansion parameter h"}
    return {"inputs": inputs, "results": results}, 0


def cmd_tau(args, cfg) -> tuple[dict, int]:
    from .bkp_tau import build_tau, extract_hurwitz
    D = args.truncate if args.truncate is not None else cfg["p_degree"]
    if D < 0:
        raise UsageError("--truncate must be nonnegative")
    ring = _formal_ring(D, cfg["param_degree"])
    weight, echo = _weight_from_flags(args, ring)
    N = args.N if args.N is not None else D
    try:
        tau = build_tau(N, args.n, weight, D, ring)
    except DomainError as exc:
        raise UsageError(str(exc)) from None
    coeffs = extract_hurwitz(tau)
    inputs = {"N": N, "n": args.n, "truncate": D, "weight": echo, "param_degree": cfg["param_degree"]}
    if args.extract_profile is not None:
        delta = _partition(args.extract_profile, "--extract-profile")
        if delta.weight > D:
            raise UsageError(f"profile weight {delta.weight} exceeds the truncation {D}")
        val = coeffs.get((delta.weight, delta), Fraction(0))
        results = {"profile": delta, "coefficient": val,
                   "hurwitz_interpretable": delta.weight <= N}
        return {"inputs": inputs, "results": results}, 0
    rows = [{"degree": d, "profile": delta, "coefficient": v, "hurwitz_interpretable": d <= N}
            for (d, delta), v in sorted(coeffs.items(), key=lambda kv: (kv[0][0], tuple(kv[0][1])))]
    return {"inputs": inputs, "results": {"coefficients": rows}, "rows": rows}, 0


def cmd_weighted(args, cfg) -> tuple[dict, int]:
    from .hurwitz import WeightedSumSpec, weighted_sum
    d = args.degree
    delta = _partition(args.profile, "--profile")
    if delta.weight != d:
        raise UsageError(f"--profile {list(delta)} has weight {delta.weight}, expected {d}")
    params = {}
    if args.q is not None:
        params["q"] = _rational(args.q, "q")
    if args.t is not None:
        params["t"] = _rational(args.t, "t")
    if args.alpha is not None:
        params["alpha"] = _rational(args.alpha, "alpha")
    if args.qt:
        pairs = []
        for item in args.qt.split(";"):
            q, t = item.split(",")
            pairs.append((_rational(q, "q"), _rational(t, "t")))
        params["qt"] = pairs
    mu = _partition(args.mu or "", "--mu")
    spec = WeightedSumSpec(args.family, mu, params)
    value = weighted_sum(spec, d, delta)
    results = {"value": value}
    if args.from_tau:
        from .bkp_tau import weighted_sum_from_tau
        other = weighted_sum_from_tau(spec, d, delta)
        results["from_tau"] = other
        results["agree"] = other == value
    inputs = {"family": args.family, "mu": mu, "degree": d, "profile": delta, "params": params}
    return {"inputs": inputs, "results": results}, 0 if results.get("agree", True) else 1


# -- verification suites ------------------------------------------------------------------

def _check(items: list, ident: str, fn) -> None:
    try:
        ok, detail = fn()
    except (ConsistencyError, DomainError) as exc:
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    items.append({"id": ident, "pass": bool(ok), "detail": detail})


def _suite_oracle(D: int, cfg) -> list:
    from .hurwitz import hurwitz_character, monodromy_oracle
    items = []
    for E in (2, 1):
        for d in range(1, D + 1):
            parts = partitions_of(d)
            tuples = [()] + [(p,) for p in parts] + list(combinations_with_replacement(parts, 2))
            for profs in tuples:
                ident = f"oracle/E={E}/d={d}/" + ";".join(str(list(p)) for p in profs)

                def fn(E=E, d=d, profs=profs):
                    a = hurwitz_character(E, d, profs)
                    b = monodromy_oracle(E, d, profs, max_iterations=cfg["max_iterations"])
                    return a == b, f"{format_rational(a)} vs {format_rational(b)}"
                _check(items, ident, fn)
    return items


def _suite_content(D: int, cfg) -> list:
    from .contentprod import (Phi_m, T_lambda, WeightSpecI, WeightSpecII, content_poly_identity,
                              content_product_I, content_product_II)
    items = []
    ring = Ring([("h", "h", 1)], {"h": min(cfg["param_degree"], 4)})
    h = ring.gen("h")
    wI = WeightSpecI([Fraction(1), Fraction(-1, 2), Fraction(1, 3)], h)
    wII = WeightSpecII({1: h, 2: h.scale(Fraction(1, 2)), -1: h.scale(-1)}, Fraction(3), h.scale(2))
    for lam in partitions_up_to(D):
        if not lam.weight:
            continue
        ident = f"content/{list(lam)}"

        def fn(lam=lam):
            content_poly_identity(lam)
            for m in range(0, 5):
                Phi_m(lam, m)
            for t in (Fraction(2), Fraction(-1, 3)):
                T_lambda(lam, t, 1)
            for n in (-1, 0, 2):
                content_product_I(lam, wI, n, ring)
                content_product_II(lam, wII, n, ring)
            return True, "all routes agree"
        _check(items, ident, fn)
    return items


def _suite_hirota(D: int, cfg) -> list:
    from .bkp_tau import RTable, TauFamily, hirota_elementary, hirota_full
    items = []
    D = min(D, cfg["hirota_degree"])
    window = D + 8
    weights = [("r=1", None)] + [(f"rtable/seed={s}", RTable.random(-window, window, seed=s))
                                 for s in range(3)]
    for name, w in weights:
        fam = TauFamily(w)
        for N in range(0, 3):
            for n in (-1, 0, 1):
                for which in (1, 2):
                    def fn(fam=fam, N=N, n=n, which=which):
                        res = hirota_elementary(fam, N, n, D, which)
                        return res.is_zero(), "zero residual" if res.is_zero() else str(res)[:200]
                    _check(items, f"hirota/{name}/elementary{which}/N={N}/n={n}", fn)
        for (N, Np) in [(0, 1), (1, 2), (1, 1), (2, 1)]:
            for which in ("A1", "A2"):
                def fn(fam=fam, N=N, Np=Np, which=which):
                    res = hirota_full(fam, N, Np, 0, min(D, 3), which)
                    return res.is_zero(), "zero residual" if res.is_zero() else str(res)[:200]
                _check(items, f"hirota/{name}/{which}/N={N}/N'={Np}", fn)
    return items


SUITES = {"oracle": _suite_oracle, "content": _suite_content, "hirota": _suite_hirota}


def cmd_verify(args, cfg) -> tuple[dict, int]:
    D = args.max_degree if args.max_degree is not None else 4
    if D < 1:
        raise UsageError("--max-degree must be positive")
    names = list(SUITES) if args.suite == "all" else [args.suite]
    items = []
    for name in names:
        items.extend(SUITES[name](D, cfg))
    items.sort(key=lambda it: it["id"])
    failed = [it["id"] for it in items if not it["pass"]]
    results = {"checks": len(items), "failed": len(failed), "failures": failed, "all_pass": not failed}
    return {"inputs": {"suite": args.suite, "max_degree": D}, "results": results, "rows": items}, \
        (1 if failed else 0)


# -- argument parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--no-timing", action="store_true", help="omit the timing field")
    common.add_argument("--config", help=f"key=value config file (default: ${CONFIG_ENV})")
    common.add_argument("--p-degree", type=int, help="default p-degree truncation")
    common.add_argument("--param-degree", type=int, help="truncation of formal parameters")
    common.add_argument("--max-iterations", type=int, help="oracle work bound")

    parser = _Parser(prog="bkphurwitz", description="Exact Hurwitz numbers of Klein surfaces "
                     "and BKP hypergeometric tau functions.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("hurwitz", parents=[common], help="Hurwitz number H^{E,F}(d; profiles)")
    p.add_argument("--euler", type=int, required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--profiles", default="", help='";"-separated partitions, e.g. "[2,1];[3]"')
    p.add_argument("--oracle", action="store_true", help="count monodromy solutions by brute force")
    p.add_argument("--transitive", action="store_true", help="connected covers only (oracle)")
    p.add_argument("--surface", choices=("orientable", "nonorientable", "sphere", "torus",
                                         "klein", "projective"))

    p = sub.add_parser("chartable", parents=[common], help="character table of S_d")
    p.add_argument("--degree", type=int, required=True)

    p = sub.add_parser("symfun", parents=[common], help="symmetric function in power sums")
    p.add_argument("--family", required=True, choices=("schur", "macdonald", "hall-littlewood", "jack"))
    p.add_argument("--mu", required=True)
    p.add_argument("--q", default="0")
    p.add_argument("--t", default="1/2")
    p.add_argument("--alpha", default="1")
    p.add_argument("--dual", action="store_true", help="print the dual Q instead of P")

    p = sub.add_parser("content", parents=[common], help="content product of a diagram")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--param-i", help='e.g. "zeta=[1,0,1];h=1"')
    p.add_argument("--param-ii", help='e.g. "xi=[1,1/2];xi_minus=[];t=2;xi0=0"')
    p.add_argument("--n", type=int, default=0)

    p = sub.add_parser("tau", parents=[common], help="hypergeometric BKP tau series")
    p.add_argument("--weight-i", help='e.g. "zeta=[1];h=1"')
    p.add_argument("--weight-ii", help='e.g. "xi=[1];t=2;xi0=0"')
    p.add_argument("--weight-table", help='r-values x:value,...; use the = form, e.g. --weight-table=-1:2,0:1,1:1/2')
    p.add_argument("--N", type=int)
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--truncate", type=int)
    p.add_argument("--extract-profile")

    p = sub.add_parser("weighted", parents=[common], help="weighted sums of Hurwitz numbers")
    p.add_argument("--family", required=True, choices=("C", "J", "S", "K", "M", "F"))
    p.add_argument("--mu", default="")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--profile", required=True)
    p.add_argument("--q")
    p.add_argument("--t")
    p.add_argument("--alpha")
    p.add_argument("--qt", help='";"-separated q,t pairs for family F')
    p.add_argument("--from-tau", action="store_true", help="also read the value off a tau series")

    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("--suite", choices=("hirota", "content", "oracle", "all"), default="all")
    p.add_argument("--max-degree", type=int)
    return parser


COMMANDS = {
    "hurwitz": cmd_hurwitz, "chartable": cmd_chartable, "symfun": cmd_symfun,
    "content": cmd_content, "tau": cmd_tau, "weighted": cmd_weighted, "verify": cmd_verify,
}


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        cfg = load_config(args.config)
        for key in ("p_degree", "param_degree", "max_iterations"):
            v = getattr(args, key, None)
            if v is not None:
                if v < 0:
                    raise UsageError(f"--{key.replace('_', '-')} must be nonnegative")
                cfg[key] = v
        start = time.perf_counter()
        report, status = COMMANDS[args.command](args, cfg)
        elapsed = time.perf_counter() - start
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return 2
    except (DomainError, StructureError) as exc:
        err.write(f"usage error: {exc}\n")
        return 2
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    report = {"schema": SCHEMA_VERSION, "command": args.command, **report}
    if not args.no_timing:
        report["timing"] = {"seconds": f"{elapsed:.3f}"}
    _emit(report, args.format, out)
    return status


def main() -> None:  # pragma: no cover - thin wrapper
    sys.exit(run())


if __name__ == "__main__":  # pragma: no cover
    main()
