"""Command-line entry point: ``agtlab <command> [options]`` or ``python -m agtlab``.

Commands: z-c2, z-ale, jack, edges, fock-check, verify, report.  Every
command prints one JSON document (schema ``agt-lab/1``) or CSV rows.  Exit
status is 0 when every verdict passes, 1 on a verification failure and 2
on a usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Dict, List, Optional, Sequence

from gmpy2 import mpq

from .exactalg import QSeries, RatFunc, parse_rational, rational_str, sample_assignment
from .suites import ALIASES, SCHEMA, SUITES, RunConfig, dumps, run_suites

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

FOCK_CHECKS = ("chevalley", "virasoro", "primary", "carlsson-okounkov", "integrals", "gaiotto")

# option name -> default; ``None`` means "not set" so that config files can fill it in
_DEFAULTS = {
    "mode": None, "seed": 0, "samples": 3, "jobs": 1, "format": "json", "output": None,
    "order": None, "masses": None, "quiver": "pure", "k": 2, "j": 0, "dmax": None,
    "n": 4, "beta": "b", "v": None, "suite": None, "grade": None, "e1": None, "e2": None,
    "mu": None, "cc_index": "n", "input": None,
}


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- parsing

def _rational(text: str) -> mpq:
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _rational_list(text: str) -> List[mpq]:
    return [_rational(t) for t in text.split(",") if t.strip()]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file with option values; explicit flags win")
    common.add_argument("--mode", choices=("symbolic", "sampled"), default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--samples", type=int, default=argparse.SUPPRESS)
    common.add_argument("--jobs", type=int, default=argparse.SUPPRESS, help="worker processes for verify")
    common.add_argument("--format", choices=("json", "csv"), default=argparse.SUPPRESS)
    common.add_argument("--output", "-o", default=argparse.SUPPRESS, help="write the report here instead of stdout")

    p = argparse.ArgumentParser(prog="agtlab", description="Instanton partition functions and their CFT duals")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("z-c2", parents=[common], help="partition function on C^2 versus its closed form")
    s.add_argument("--quiver", default=argparse.SUPPRESS, help="pure | ahat:R | a:R")
    s.add_argument("--order", type=int, default=argparse.SUPPRESS)
    s.add_argument("--masses", type=_rational_list, default=argparse.SUPPRESS, help="comma separated rationals")
    s.add_argument("--e1", type=_rational, default=argparse.SUPPRESS)
    s.add_argument("--e2", type=_rational, default=argparse.SUPPRESS)

    s = sub.add_parser("z-ale", parents=[common], help="partition function on X_k versus its closed form")
    s.add_argument("--k", type=int, default=argparse.SUPPRESS)
    s.add_argument("--j", type=int, default=argparse.SUPPRESS)
    s.add_argument("--quiver", default=argparse.SUPPRESS, help="pure | ahat:0 | a:0")
    s.add_argument("--order", type=_rational, default=argparse.SUPPRESS)
    s.add_argument("--dmax", type=_rational, default=argparse.SUPPRESS)
    s.add_argument("--masses", type=_rational_list, default=argparse.SUPPRESS)
    s.add_argument("--e1", type=_rational, default=argparse.SUPPRESS)
    s.add_argument("--e2", type=_rational, default=argparse.SUPPRESS)

    s = sub.add_parser("jack", parents=[common], help="Jack functions in the monomial basis")
    s.add_argument("--n", type=int, default=argparse.SUPPRESS, help="maximal degree")
    s.add_argument("--beta", default=argparse.SUPPRESS, help="rational p/q or a symbol name")

    s = sub.add_parser("edges", parents=[common], help="edge contributions of a charge on X_k")
    s.add_argument("--k", type=int, default=argparse.SUPPRESS)
    s.add_argument("--v", type=_rational_list, default=argparse.SUPPRESS, help="charge vector v = C^-1 u")
    s.add_argument("--cc-index", dest="cc_index", choices=("n", "j"), default=argparse.SUPPRESS)

    s = sub.add_parser("fock-check", parents=[common], help="operator identities on truncated Fock spaces")
    s.add_argument("--suite", choices=FOCK_CHECKS, default=argparse.SUPPRESS)
    s.add_argument("--grade", type=int, default=argparse.SUPPRESS)
    s.add_argument("--k", type=int, default=argparse.SUPPRESS)

    s = sub.add_parser("verify", parents=[common], help="acceptance suites")
    s.add_argument("--suite", default=argparse.SUPPRESS,
                   help="all | " + " | ".join(list(SUITES) + list(ALIASES)))
    s.add_argument("--grade", type=int, default=argparse.SUPPRESS)

    s = sub.add_parser("report", parents=[common], help="summarise a saved verify report")
    s.add_argument("--input", "-i", default=argparse.SUPPRESS)
    return p


def resolve_options(ns: argparse.Namespace) -> Dict:
    """defaults <- config file <- explicit flags."""
    opts = dict(_DEFAULTS)
    if getattr(ns, "config", None):
        try:
            with open(ns.config) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {ns.config}: {exc}") from exc
        if not isinstance(data, dict):
            raise UsageError("config file must contain a JSON object")
        for key, val in data.items():
            key = key.replace("-", "_")
            if key not in opts:
                raise UsageError(f"unknown config key {key!r}")
            opts[key] = val
    for key, val in vars(ns).items():
        if key in ("config", "command"):
            continue
        opts[key] = val
    for key in ("order", "dmax", "e1", "e2", "mu"):
        if isinstance(opts[key], (str, int)) and not isinstance(opts[key], bool):
            opts[key] = parse_rational(str(opts[key]))
    for key in ("masses", "v"):
        if isinstance(opts[key], str):
            opts[key] = _rational_list(opts[key])
        elif isinstance(opts[key], list):
            opts[key] = [parse_rational(str(x)) for x in opts[key]]
    return opts


def _run_config(opts) -> RunConfig:
    try:
        return RunConfig(mode=opts["mode"], seed=int(opts["seed"]), samples=int(opts["samples"]),
                         jobs=int(opts["jobs"]), grade=opts["grade"])
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from exc


_RUN_KEYS = ("mode", "seed", "samples", "format")
_COMMAND_KEYS = {
    "z-c2": ("quiver", "order", "masses", "e1", "e2"),
    "z-ale": ("k", "j", "quiver", "order", "dmax", "masses", "e1", "e2"),
    "jack": ("n", "beta"),
    "edges": ("k", "v", "cc_index"),
    "fock-check": ("suite", "grade", "k"),
    "verify": ("suite", "grade"),
    "report": ("input",),
}


def _config_json(command: str, opts) -> Dict:
    """The options that determine the result (output path and job count do not)."""
    out = {}
    for key in sorted(_RUN_KEYS + _COMMAND_KEYS[command]):
        val = opts[key]
        if isinstance(val, list):
            val = [rational_str(x) for x in val]
        elif isinstance(val, mpq):
            val = rational_str(val)
        out[key] = val
    return out


# ---------------------------------------------------------------- series commands

def _series_payload(series: QSeries) -> Dict:
    return series.to_json()


def _compare(a: QSeries, b: QSeries) -> Dict:
    diff = a.difference(b)
    return {"pass": not diff, "diff": [[rational_str(x) for x in e] for e in diff[:20]]}


def _params(names: Sequence[str], fixed: Dict[str, object], opts) -> List[Dict]:
    """Parameter assignments: one symbolic, or one per seed with fixed values kept."""
    free = [n for n in names if fixed.get(n) is None]
    mode = opts["mode"] or "symbolic"
    if mode == "symbolic":
        gens = RatFunc.gens(free) if free else {}
        return [{"seed": None, "values": {**{n: fixed[n] for n in names if n not in gens}, **gens}}]
    out = []
    for seed in _run_config(opts).seeds:
        pt = sample_assignment(free, seed) if free else {}
        out.append({"seed": seed, "values": {**{n: fixed[n] for n in names if n not in pt}, **pt}})
    return out


def _point_json(values: Dict) -> Dict:
    return {k: rational_str(v) for k, v in sorted(values.items()) if isinstance(v, mpq)}


def cmd_z_c2(opts) -> Dict:
    from .nekrasov_c2 import QuiverSpec, closed_forms_c2, z_quiver_c2

    try:
        shape = QuiverSpec.parse(opts["quiver"], [0] * _mass_count(opts["quiver"]))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    order = int(opts["order"] if opts["order"] is not None else 4)
    names = shape.mass_names()
    masses = opts["masses"]
    if masses is not None and len(masses) != len(names):
        raise UsageError(f"{opts['quiver']} needs {len(names)} masses, got {len(masses)}")
    fixed = {"e1": opts["e1"], "e2": opts["e2"], **{n: (masses[i] if masses else None) for i, n in enumerate(names)}}
    runs = []
    ok = True
    for pt in _params(["e1", "e2"] + names, fixed, opts):
        g = pt["values"]
        spec = QuiverSpec(shape.kind, shape.r, tuple(g[n] for n in names))
        z = z_quiver_c2(spec, order, g["e1"], g["e2"])
        verdicts = {"closed_form": _compare(z, closed_forms_c2(spec, order, g["e1"], g["e2"]))}
        if spec.kind == "A_hat":
            verdicts["torus_trace"] = _compare(z, closed_forms_c2(spec, order, g["e1"], g["e2"], "trace"))
        ok = ok and verdicts["closed_form"]["pass"]
        runs.append({"seed": pt["seed"], "point": _point_json(g), "series": _series_payload(z), "verdicts": verdicts})
    return {"theory": {"quiver": shape.kind, "r": shape.r}, "truncation": {"order": order}, "runs": runs, "pass": ok}


def _mass_count(text: str) -> int:
    t = text.strip().lower()
    if t == "pure":
        return 0
    name, _, r = t.partition(":")
    if not r.isdigit() or name not in ("ahat", "a"):
        raise UsageError(f"bad quiver description {text!r}")
    return int(r) + (1 if name == "ahat" else 2)


def cmd_z_ale(opts) -> Dict:
    from .nekrasov_ale import ALEQuiverSpec, closed_forms_ale, z_quiver_ale
    from .nekrasov_c2 import QuiverSpec

    k, j = int(opts["k"]), int(opts["j"])
    if k < 1 or not 0 <= j < k:
        raise UsageError("need k >= 1 and 0 <= j < k")
    order = opts["order"] if opts["order"] is not None else mpq(2)
    nm = _mass_count(opts["quiver"])
    shape = QuiverSpec.parse(opts["quiver"], [0] * nm)
    kind = {"pure": "pure", "A_hat": "A_hat_0", "A": "A_0"}[shape.kind]
    names = shape.mass_names()
    masses = opts["masses"]
    if masses is not None and len(masses) != nm:
        raise UsageError(f"{opts['quiver']} needs {nm} masses, got {len(masses)}")
    fixed = {"e1": opts["e1"], "e2": opts["e2"], **{n: (masses[i] if masses else None) for i, n in enumerate(names)}}
    runs, ok = [], True
    for pt in _params(["e1", "e2"] + names, fixed, opts):
        g = pt["values"]
        mu = tuple(g[n] for n in names)
        spec = ALEQuiverSpec(QuiverSpec(shape.kind, shape.r, mu), k, (j,) * shape.n_vertices, order, opts["dmax"])
        z = z_quiver_ale(spec, g["e1"], g["e2"])
        verdicts = {}
        if shape.r == 0:
            verdicts["closed_form"] = _compare(z, closed_forms_ale(kind, k, j, order, mu, g["e1"], g["e2"]))
            ok = ok and verdicts["closed_form"]["pass"]
        runs.append({"seed": pt["seed"], "point": _point_json(g), "series": _series_payload(z), "verdicts": verdicts})
    return {"k": k, "j": j, "theory": spec.to_json(),
            "truncation": {"order": rational_str(spec.order), "dmax": rational_str(spec.dmax)},
            "runs": runs, "pass": ok}


def cmd_jack(opts) -> Dict:
    from .partitions import partitions
    from .symfunc import jack_norm_formula, jack_table

    n = int(opts["n"])
    if n < 0:
        raise UsageError("--n must be nonnegative")
    text = str(opts["beta"])
    try:
        beta = parse_rational(text)
    except (ValueError, ZeroDivisionError):
        if not text.isidentifier():
            raise UsageError(f"--beta must be a rational or a symbol name, got {text!r}")
        beta = RatFunc.gens([text])[text]
    T = jack_table(n, beta)
    norms_ok = all(T.norm[lam] == jack_norm_formula(lam, beta) for d in range(n + 1) for lam in partitions(d))
    return {"table": T.to_json(), "verdicts": {"norm_formula": {"pass": norms_ok}}, "pass": norms_ok}


def cmd_edges(opts) -> Dict:
    from .ale import InconsistentCharge
    from .edges import edge_chern, edge_factor, rank_defect

    k = int(opts["k"])
    v = opts["v"]
    if v is None:
        raise UsageError("--v is required")
    if len(v) != k - 1:
        raise UsageError(f"k={k} needs {k - 1} components in --v")
    g = RatFunc.gens(["e1", "e2", "mu"])
    try:
        lists = edge_chern(v, k, opts["cc_index"])
        total, c1, count = edge_factor(v, k, g["mu"], g["e1"], g["e2"], cc_index=opts["cc_index"])
    except InconsistentCharge as exc:
        raise UsageError(str(exc)) from exc
    # per-n factors as functions of their own arguments (e1, e2) = (eps1^(n), eps2^(n));
    # ell_total is their product at the chart weights, as it enters the partition function
    factors = []
    for n, mons in enumerate(lists, 1):
        ell = 1
        for m in mons:
            w = g["mu"] + m.weight(g["e1"], g["e2"])
            ell = ell * w if m.sign > 0 else ell / w
        factors.append({"n": n, "monomials": [m.to_json() for m in mons], "ell": str(ell)})
    expected = rank_defect(v, k)
    out = factors[0] if k == 2 else {"factors": factors}
    out = dict(out)
    out.update({"k": k, "v": [rational_str(x) for x in v], "cc_index": opts["cc_index"],
                "ell_total": str(total), "signed_count": count, "rank_defect": rational_str(expected),
                "pass": count == expected})
    return out


def cmd_fock_check(opts) -> Dict:
    from . import suites as S

    name = opts["suite"]
    if name is None:
        raise UsageError("--suite is required")
    grade = opts["grade"]
    k = opts["k"] if opts["k"] is not None else 2
    cfg = _run_config(opts)
    if name == "chevalley":
        checks = S.fk_chevalley(grade if grade is not None else 3, (int(k),))
    elif name == "virasoro":
        checks = S.fk_virasoro(grade if grade is not None else 3, (int(k),))
    elif name == "primary":
        checks = S.fk_primary(grade if grade is not None else 3)
    else:
        rep = S.run_suite(name, cfg)
        checks = rep["checks"]
    return {"suite": name, "checks": checks, "pass": all(c["pass"] for c in checks)}


def cmd_verify(opts) -> Dict:
    name = opts["suite"] or "all"
    names = list(SUITES) if name == "all" else [name]
    for n in names:
        if n not in SUITES and n not in ALIASES:
            raise UsageError(f"unknown suite {n!r}")
    reports = run_suites(names, _run_config(opts))
    return {"suites": reports, "pass": all(r["pass"] for r in reports)}


def cmd_report(opts) -> Dict:
    path = opts["input"]
    if not path:
        raise UsageError("--input is required")
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read report {path}: {exc}") from exc
    if doc.get("schema") != SCHEMA:
        raise UsageError(f"{path} is not an {SCHEMA} report")
    suites = doc.get("result", {}).get("suites", [])
    rows = [{"criterion": r["criterion"], "suite": r["suite"], "pass": r["pass"],
             "failed_checks": [c["name"] for c in r["checks"] if not c["pass"]]} for r in suites]
    return {"source": path, "summary": rows, "pass": all(r["pass"] for r in rows)}


COMMANDS = {
    "z-c2": cmd_z_c2, "z-ale": cmd_z_ale, "jack": cmd_jack, "edges": cmd_edges,
    "fock-check": cmd_fock_check, "verify": cmd_verify, "report": cmd_report,
}


# ---------------------------------------------------------------- output

def _csv(command: str, result: Dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if "runs" in result:
        w.writerow(["seed", "exponent", "coefficient"])
        for run in result["runs"]:
            for key, coeff in run["series"]["terms"]:
                exp = key if isinstance(key, str) else " ".join(key)
                w.writerow([run["seed"] if run["seed"] is not None else "", exp,
                            coeff if isinstance(coeff, str) else json.dumps(coeff, sort_keys=True)])
    elif "suites" in result or "summary" in result:
        w.writerow(["criterion", "suite", "check", "kind", "pass"])
        for r in result.get("suites", []):
            for kind in ("checks", "informational"):
                for c in r[kind]:
                    w.writerow([r["criterion"], r["suite"], c["name"], kind, c["pass"]])
        for r in result.get("summary", []):
            w.writerow([r["criterion"], r["suite"], "", "summary", r["pass"]])
    elif "checks" in result:
        w.writerow(["check", "pass"])
        for c in result["checks"]:
            w.writerow([c["name"], c["pass"]])
    elif command == "jack":
        w.writerow(["partition", "monomial", "coefficient"])
        for row in result["table"]["jacks"]:
            for mu, c in row["m"]:
                w.writerow([" ".join(map(str, row["partition"])), " ".join(map(str, mu)),
                            c if isinstance(c, str) else json.dumps(c, sort_keys=True)])
    else:
        w.writerow(["n", "sign", "a", "b"])
        for f in result.get("factors", [result]):
            for m in f.get("monomials", []):
                w.writerow([f["n"], m["sign"], m["a"], m["b"]])
    return buf.getvalue()


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        opts = resolve_options(ns)
        result = COMMANDS[ns.command](opts)
    except UsageError as exc:
        print(f"agtlab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, ZeroDivisionError) as exc:
        print(f"agtlab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if ns.command == "edges" and opts["k"] == 2:
        doc = result  # compact shape {"n", "monomials", "ell", ...}
        doc = {"schema": SCHEMA, "command": ns.command, **doc}
    else:
        doc = {"schema": SCHEMA, "command": ns.command, "config": _config_json(ns.command, opts), "result": result}
    text = _csv(ns.command, result) if opts["format"] == "csv" else dumps(doc) + "\n"
    if opts["output"]:
        with open(opts["output"], "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK if result.get("pass", True) else EXIT_FAIL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
