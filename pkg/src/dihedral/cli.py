"""Command-line front end.

Exit codes: 0 success, 1 a check reported violations, 2 usage or input errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

import sympy
from sympy import primerange

from .cache import ENV_CACHE_DIR, DiskCache, default_cache_dir
from .classgroup import DEFAULT_BOUND, class_group, wide_class_number
from .cyclotomic import CycElt, CycModulus, build_residue_field, reduce_mod_P
from .errors import DihedralError
from .galoisrep import (
    characters_of,
    exceptionality,
    frob_trace,
    lift_case,
    make_character,
    make_rep,
    no_char0_lift_same_level,
    serre_invariants,
)
from .heckeold import char_poly, expected_char_poly, tp_matrix
from .modcheck import classify_reducible, eisenstein_traces, verify_modularity
from .quadfield import (
    SplittingType,
    fundamental_unit_norm,
    kronecker_symbol,
    prime_to_class,
    splitting_type,
)
from .serretrick import find_auxiliary, norm_compatibility, twisted_character
from .thetaseries import IdealCharacter, QExpansion, reduce_qexp, theta_coeffs

ENV_CONFIG = "DIHEDRAL_CONFIG"
COMMANDS = ("classgroup", "rep", "traces", "serre", "theta", "verify", "oldform", "trick", "irred", "paper-examples")


class UsageError(Exception):
    pass


# -- settings ----------------------------------------------------------------

def load_config(path: str | None) -> dict:
    path = path or os.environ.get(ENV_CONFIG)
    if not path:
        return {}
    try:
        with open(path) as fh:
            cfg = json.load(fh)
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(cfg, dict):
        raise UsageError(f"config {path} must hold a JSON object")
    return cfg


def resolve_cache_dir(args, cfg) -> str | None:
    if args.no_cache:
        return None
    if args.cache_dir:
        return args.cache_dir
    if os.environ.get(ENV_CACHE_DIR):
        return os.environ[ENV_CACHE_DIR]
    if cfg.get("cache_dir"):
        return cfg["cache_dir"]
    return str(default_cache_dir())


def resolve_jobs(args, cfg) -> int:
    jobs = args.jobs if args.jobs is not None else cfg.get("jobs")
    if jobs is None:
        jobs = os.cpu_count() or 1
    if jobs < 1:
        raise UsageError("--jobs must be positive")
    return int(jobs)


def _opt(args, cfg, name, default):
    v = getattr(args, name, None)
    if v is None:
        v = cfg.get(name, default)
    return v


# -- shared helpers ----------------------------------------------------------

def _need(args, *names):
    missing = [n for n in names if getattr(args, n, None) is None]
    if missing:
        raise UsageError("missing required flag(s): " + ", ".join("--" + n.replace("_", "-") for n in missing))


def _parse_chi(values) -> list[int] | None:
    if values is None:
        return None
    out = []
    for v in values:
        for part in str(v).replace(",", " ").split():
            try:
                out.append(int(part))
            except ValueError as exc:
                raise UsageError(f"--chi expects integers, got {part!r}") from exc
    return out


def _character(D: int, chi, group_bound: int):
    G = class_group(D, group_bound)
    if chi is None:
        chars = characters_of(G)
        if not chars:
            raise UsageError(f"the class group of {D} has no character of order > 2; pass --chi")
        return chars[0]
    return make_character(G, chi)


def _scalar(x):
    if hasattr(x, "to_json"):
        return x.to_json()
    if isinstance(x, sympy.Basic):
        return int(x) if x.is_Integer else str(x)
    return x


def _ideal_character(chi, aux_bound: int):
    """The theta-ready character: chi itself for D < 0, chi twisted by an auxiliary prime for D > 0."""
    if chi.D < 0:
        return IdealCharacter(chi), None
    aux = find_auxiliary(chi.D, 1, aux_bound)
    return twisted_character(chi, aux), aux


def _theta_cached(cache: DiskCache, chi, B: int, aux_bound: int):
    ic, aux = _ideal_character(chi, aux_bound)
    key = {
        "D": chi.D,
        "exponents": list(chi.exponents),
        "twist": list(aux.lam) if aux else None,
        "B": B,
    }
    m = chi.order

    def compute():
        return [list(a.coeffs) for a in theta_coeffs(ic, B).coeffs]

    rows = cache.fetch("theta", key, compute)
    mod = CycModulus.of(m)
    f = QExpansion(("cyclotomic", m), tuple(CycElt(mod, r) for r in rows))
    return ic, aux, f


def _classgroup_json(cache: DiskCache, D: int, bound: int):
    return cache.fetch("classgroup", {"D": D}, lambda: class_group(D, bound).to_json())


def _coeff_rows(f: QExpansion):
    return [[n, list(a.coeffs) if hasattr(a, "coeffs") else [a]] for n, a in enumerate(f.coeffs) if n >= 1]


# -- subcommands -------------------------------------------------------------

def cmd_classgroup(args, ctx):
    _need(args, "D")
    out = dict(_classgroup_json(ctx["cache"], args.D, ctx["bound"]))
    G = class_group(args.D, ctx["bound"])
    out["narrow"] = G.narrow
    out["wide_h"] = wide_class_number(G)
    return out, 0


def _trace_rows(rep, bound):
    rows = []
    for q in primerange(2, bound + 1):
        if rep.D % q == 0:
            continue
        t = frob_trace(rep, q)
        rows.append([q, t.to_json(), reduce_mod_P(t, rep.residue).to_json()])
    return rows


def cmd_rep(args, ctx):
    _need(args, "D", "p")
    chi = _character(args.D, args.chi, ctx["bound"])
    rep = make_rep(chi, args.p)
    inv = serre_invariants(rep)
    try:
        lc = lift_case(rep).value
    except DihedralError:
        lc = None
    out = {
        "D": rep.D,
        "chi": list(chi.exponents),
        "m": rep.m,
        "p": rep.p,
        "N": inv.conductor,
        "residue_field": rep.residue.to_json(),
        "weight_report": inv.weight_report.value,
        "exceptional": inv.exceptional,
        "lift_case": lc,
        "traces": _trace_rows(rep, ctx["trace_bound"]),
    }
    return out, 0


def cmd_traces(args, ctx):
    _need(args, "D", "p")
    chi = _character(args.D, args.chi, ctx["bound"])
    rep = make_rep(chi, args.p)
    rows = _trace_rows(rep, ctx["trace_bound"])
    if args.csv:
        return ("csv", ["q", "trace", "reduced"], [[q, json.dumps(t["coeffs"]), json.dumps(r["coeffs"])] for q, t, r in rows]), 0
    return {"D": rep.D, "chi": list(chi.exponents), "p": rep.p, "traces": rows}, 0


def cmd_serre(args, ctx):
    _need(args, "D", "p")
    chi = _character(args.D, args.chi, ctx["bound"])
    rep = make_rep(chi, args.p)
    inv = serre_invariants(rep)
    eps = inv.epsilon.table(primerange(2, ctx["trace_bound"] + 1))
    out = {
        "D": rep.D,
        "chi": list(chi.exponents),
        "p": rep.p,
        "N": inv.conductor,
        "weight": inv.minimal_weight,
        "weight_report": inv.weight_report.value,
        "exceptional": inv.exceptional,
        "epsilon": [[q, v.to_json()] for q, v in sorted(eps.items())],
    }
    if rep.D > 0 and rep.D % rep.p:
        out["lift_case"] = lift_case(rep).value
        out["no_char0_lift_same_level"] = no_char0_lift_same_level(rep)
    return out, 0


def cmd_theta(args, ctx):
    _need(args, "D")
    B = ctx["B"]
    chi = _character(args.D, args.chi, ctx["bound"])
    ic, aux, f = _theta_cached(ctx["cache"], chi, B, ctx["search_bound"])
    if args.mod_p:
        f = reduce_qexp(f, build_residue_field(chi.order, args.mod_p))
    rows = _coeff_rows(f)
    if args.csv:
        return ("csv", ["n", "coefficient"], [[n, json.dumps(c)] for n, c in rows]), 0
    out = {
        "D": chi.D,
        "chi": list(chi.exponents),
        "m": chi.order,
        "B": B,
        "conductor": ic.conductor,
        "twist": aux.to_json() if aux else None,
        "ring": "cyclotomic" if not args.mod_p else f.ring[1].to_json(),
        "coefficients": rows,
    }
    return out, 0


def _verify_chunk(payload):
    D, exps, p, B, aux_bound, excluded, lo, hi = payload
    chi = make_character(class_group(D), exps)
    rep = make_rep(chi, p)
    ic, _ = _ideal_character(chi, aux_bound)
    f = reduce_qexp(theta_coeffs(ic, B), rep.residue)
    skip = set(excluded) | {q for q in primerange(2, lo)}
    r = verify_modularity(rep, f, hi, skip)
    return r.checked, r.epsilon_checked, r.violations


def cmd_verify(args, ctx):
    _need(args, "D", "p")
    chi = _character(args.D, args.chi, ctx["bound"])
    bound = ctx["verify_bound"]
    rep = make_rep(chi, args.p)
    ic, aux = _ideal_character(chi, ctx["search_bound"])
    excluded = sorted({q for q in sympy.factorint(ic.conductor)})
    jobs = min(ctx["jobs"], 64)
    if jobs == 1 or bound < 2000:
        f = reduce_qexp(theta_coeffs(ic, bound), rep.residue)
        r = verify_modularity(rep, f, bound, excluded)
        checked, eps_checked, violations = r.checked, r.epsilon_checked, r.violations
    else:
        cuts = [2 + (bound - 1) * i // jobs for i in range(jobs + 1)]
        payloads = [
            (chi.D, list(chi.exponents), args.p, bound, ctx["search_bound"], excluded, cuts[i], cuts[i + 1] - 1 if i < jobs - 1 else bound)
            for i in range(jobs)
        ]
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            parts = list(ex.map(_verify_chunk, payloads))
        checked = sum(c for c, _, _ in parts)
        eps_checked = sum(e for _, e, _ in parts)
        violations = [v for _, _, vs in parts for v in vs]
        violations.sort(key=lambda v: (v["q"], v["kind"]))
    out = {
        "D": chi.D,
        "chi": list(chi.exponents),
        "p": args.p,
        "bound": bound,
        "excluded": excluded,
        "twist": aux.to_json() if aux else None,
        "checked": checked,
        "epsilon_checked": eps_checked,
        "violations": violations,
    }
    return out, 1 if violations else 0


def _parse_scalar(s: str):
    try:
        return sympy.sympify(s)
    except (sympy.SympifyError, SyntaxError, TypeError) as exc:
        raise UsageError(f"cannot parse scalar {s!r}") from exc


def cmd_oldform(args, ctx):
    ap = _parse_scalar(args.ap if args.ap is not None else "a_p")
    eps = _parse_scalar(args.eps if args.eps is not None else "eps_p")
    k = args.k if args.k is not None else 1
    delta = args.delta if args.delta is not None else 1
    r = args.r if args.r is not None else 2
    if delta not in (0, 1):
        raise UsageError("--delta must be 0 or 1")
    if r < 0:
        raise UsageError("--r must be nonnegative")
    if k != 1 and args.p is None:
        raise UsageError("--p is required when --k is not 1")
    blk = tp_matrix(ap, eps, k, delta, r, args.p)
    cp = [sympy.expand(c) for c in char_poly(blk)]
    exp = [sympy.expand(c) for c in expected_char_poly(blk)]
    x = sympy.Symbol("x")
    out = {
        "matrix": [[_scalar(sympy.expand(v)) for v in row] for row in blk.matrix],
        "beta": _scalar(sympy.expand(blk.beta)),
        "char_poly": str(sympy.factor(sum(c * x ** (len(cp) - 1 - i) for i, c in enumerate(cp)))),
        "char_poly_coeffs": [_scalar(c) for c in cp],
        "matches_expected": cp == exp,
    }
    if r >= 2:
        v = blk.kernel_vector()
        out["stabilizing_combination"] = [_scalar(sympy.expand(c)) for c in v]
        out["kernel_check"] = all(sympy.expand(c) == 0 for c in blk.apply(v))
    ok = out["matches_expected"] and out.get("kernel_check", True)
    return out, 0 if ok else 1


def cmd_trick(args, ctx):
    _need(args, "D")
    D = args.D
    aux = find_auxiliary(D, 1, ctx["search_bound"])
    lam_norm = -aux.l
    split_q = [q for q in primerange(3, 200) if kronecker_symbol(D, q) == 1 and q != aux.l][:10]
    checks = {
        "norm_negative_prime": lam_norm < 0 and sympy.isprime(aux.l),
        "congruence": (aux.lam[0] - 1) % aux.congruence_modulus == 0 and aux.lam[1] % aux.congruence_modulus == 0,
        "l_splits": splitting_type(D, aux.l) is SplittingType.split,
        "norm_compatibility": all(norm_compatibility(aux, q) for q in split_q),
    }
    G = class_group(D, ctx["bound"])
    chars = characters_of(G)
    out = {"D": D, "auxiliary": aux.to_json()}
    if chars or args.chi is not None:
        chi = _character(D, args.chi, ctx["bound"])
        rep = make_rep(chi, 2)
        t_l = reduce_mod_P(frob_trace(rep, aux.l), rep.residue)
        checks["trace_at_l_zero_mod_2"] = t_l.is_zero()
        out["chi"] = list(chi.exponents)
    out["checks"] = checks
    return out, 0 if all(checks.values()) else 1


def cmd_irred(args, ctx):
    _need(args, "p")
    p = args.p
    bound = ctx["trace_bound"]
    if args.eisenstein is not None:
        N = args.N if args.N is not None else 1
        traces = eisenstein_traces(p, args.eisenstein, primerange(2, bound + 1))
        source = {"eisenstein_exponent": args.eisenstein}
    else:
        _need(args, "D")
        chi = _character(args.D, args.chi, ctx["bound"])
        rep = make_rep(chi, p)
        N = args.N if args.N is not None else serre_invariants(rep).conductor
        traces = {
            q: reduce_mod_P(frob_trace(rep, q), rep.residue)
            for q in primerange(2, bound + 1)
            if rep.D % q and q != p
        }
        source = {"D": rep.D, "chi": list(chi.exponents)}
    res = classify_reducible(traces, p, N, bound)
    out = {"p": p, "N": N, "source": source}
    out.update(res.to_json())
    return out, 0


# -- paper-examples ----------------------------------------------------------

def _example(name):
    if name == "class_numbers":
        hs = {D: class_group(D).h for D in (-23, 2089, 229)}
        return {"value": {str(k): v for k, v in sorted(hs.items())}, "pass": hs == {-23: 3, 2089: 3, 229: 3}}
    if name == "exceptional_2089":
        rep = make_rep(make_character(class_group(2089), (1,)), 2)
        G = rep.chi.group
        split = splitting_type(2089, 2) is SplittingType.split
        principal = prime_to_class(2089, 2) == G.identity
        exc = exceptionality(rep)
        return {"value": {"split": split, "principal": principal, "exceptional": exc}, "pass": split and principal and exc}
    if name == "exceptional_229":
        rep = make_rep(make_character(class_group(229), (1,)), 2)
        inert = splitting_type(229, 2) is SplittingType.inert
        exc = exceptionality(rep)
        return {"value": {"inert": inert, "exceptional": exc}, "pass": inert and exc}
    if name == "unit_norm_229":
        rep = make_rep(make_character(class_group(229), (1,)), 2)
        nu = fundamental_unit_norm(229)
        nl = no_char0_lift_same_level(rep)
        return {"value": {"unit_norm": nu, "no_char0_lift_same_level": nl}, "pass": nu == -1 and nl}
    if name == "modularity_minus23":
        chi = make_character(class_group(-23), (1,))
        rep = make_rep(chi, 2)
        f = reduce_qexp(theta_coeffs(IdealCharacter(chi), 10**4), rep.residue)
        r = verify_modularity(rep, f, 10**4, {23})
        return {"value": {"checked": r.checked, "violations": len(r.violations)}, "pass": r.ok}
    if name == "serre_trick_229":
        chi = make_character(class_group(229), (1,))
        rep = make_rep(chi, 2)
        aux = find_auxiliary(229)
        tw = twisted_character(chi, aux)
        f = reduce_qexp(theta_coeffs(tw, 1400), rep.residue)
        r = verify_modularity(rep, f, 1400, {2, aux.l}, check_epsilon=False)
        ok = (
            aux.lam[0] % 916 == 1 and aux.lam[1] % 916 == 0
            and sympy.isprime(aux.l)
            and reduce_mod_P(frob_trace(rep, aux.l), rep.residue).is_zero()
            and r.checked >= 200 and r.ok
        )
        return {"value": {"lambda": list(aux.lam), "l": aux.l, "checked": r.checked}, "pass": ok}
    raise KeyError(name)


EXAMPLES = ("class_numbers", "exceptional_2089", "exceptional_229", "unit_norm_229", "modularity_minus23", "serre_trick_229")


def cmd_paper_examples(args, ctx):
    jobs = min(ctx["jobs"], len(EXAMPLES))
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_example, EXAMPLES))
    else:
        results = [_example(n) for n in EXAMPLES]
    rows = [dict(name=n, **r) for n, r in zip(EXAMPLES, results)]
    out = {"examples": rows, "all_pass": all(r["pass"] for r in rows)}
    if not args.json and not args.csv:
        width = max(len(n) for n in EXAMPLES)
        lines = [f"{'example':<{width}}  result  detail"]
        for r in rows:
            lines.append(f"{r['name']:<{width}}  {'PASS' if r['pass'] else 'FAIL':<6}  {json.dumps(r['value'], sort_keys=True)}")
        out = ("text", "\n".join(lines) + "\n")
    return out, 0 if all(r["pass"] for r in rows) else 1


HANDLERS = {
    "classgroup": cmd_classgroup,
    "rep": cmd_rep,
    "traces": cmd_traces,
    "serre": cmd_serre,
    "theta": cmd_theta,
    "verify": cmd_verify,
    "oldform": cmd_oldform,
    "trick": cmd_trick,
    "irred": cmd_irred,
    "paper-examples": cmd_paper_examples,
}


# -- parsing and output ------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--D", type=int, help="fundamental discriminant")
    common.add_argument("--chi", nargs="+", help="character exponents on the cyclic generators")
    common.add_argument("--p", type=int, help="residue characteristic")
    common.add_argument("--B", type=int, help="q-expansion bound")
    common.add_argument("--bound", type=int, help="prime bound (traces, verify) or search height (trick)")
    common.add_argument("--cache-dir", help=f"cache directory (env {ENV_CACHE_DIR} also works)")
    common.add_argument("--no-cache", action="store_true", help="disable the disk cache")
    common.add_argument("--config", help=f"JSON config file (env {ENV_CONFIG} also works)")
    common.add_argument("--jobs", type=int, help="worker processes (default: all cores)")
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="JSON output (default)")
    fmt.add_argument("--csv", action="store_true", help="CSV output for coefficient tables")

    parser = argparse.ArgumentParser(prog="dihedral", description="Dihedral mod-p representations and theta series.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True
    helps = {
        "classgroup": "class group (narrow for D > 0) with its cyclic decomposition",
        "rep": "the induced representation: invariants and a trace table",
        "traces": "Frobenius traces, exact and reduced",
        "serre": "conductor, weight, nebentypus and exceptionality",
        "theta": "theta series coefficients",
        "verify": "compare reduced theta coefficients with Frobenius traces",
        "oldform": "T_p matrix on oldforms and its characteristic polynomial",
        "trick": "auxiliary prime with negative norm for a real field",
        "irred": "sampled reducibility classifier",
        "paper-examples": "the worked examples D = 2089, 229, -23",
    }
    subs = {name: sub.add_parser(name, parents=[common], help=helps[name]) for name in COMMANDS}
    subs["theta"].add_argument("--mod-p", type=int, help="reduce modulo the chosen prime above this p")
    subs["oldform"].add_argument("--ap", help="a_p (integer or symbol)")
    subs["oldform"].add_argument("--eps", help="eps(p) (integer or symbol)")
    subs["oldform"].add_argument("--k", type=int, help="weight")
    subs["oldform"].add_argument("--delta", type=int, help="1 if p does not divide the level, else 0")
    subs["oldform"].add_argument("--r", type=int, help="number of extra p-power levels")
    subs["irred"].add_argument("--N", type=int, help="squarefree level (default: the conductor)")
    subs["irred"].add_argument("--eisenstein", type=int, metavar="J", help="classify synthetic traces l^J + l^-J")
    return parser


def _emit(out, args, stream):
    if isinstance(out, tuple) and out[0] == "text":
        stream.write(out[1])
    elif isinstance(out, tuple) and out[0] == "csv":
        _, header, rows = out
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        stream.write(buf.getvalue())
    else:
        if args.csv:
            raise UsageError("--csv is only available for coefficient tables (theta, traces)")
        stream.write(json.dumps(out, sort_keys=True, indent=2) + "\n")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = load_config(args.config)
        ctx = {
            "cache": DiskCache(resolve_cache_dir(args, cfg)),
            "jobs": resolve_jobs(args, cfg),
            "bound": int(cfg.get("class_group_bound", DEFAULT_BOUND)),
            "B": int(_opt(args, cfg, "B", 100)),
            "trace_bound": int(_opt(args, cfg, "bound", 100)),
            "verify_bound": int(_opt(args, cfg, "bound", 10**4)),
            "search_bound": int(_opt(args, cfg, "bound", 10**4)) if args.command == "trick" else int(cfg.get("search_bound", 10**4)),
        }
        if args.B is not None and args.B < 1:
            raise UsageError("--B must be positive")
        if args.bound is not None and args.bound < 1:
            raise UsageError("--bound must be positive")
        args.chi = _parse_chi(args.chi)
        out, code = HANDLERS[args.command](args, ctx)
        _emit(out, args, sys.stdout)
        return code
    except (UsageError, DihedralError) as exc:
        print(f"dihedral {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
