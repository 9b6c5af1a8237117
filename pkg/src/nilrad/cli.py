"""Command line interface: ``nilrad <command> ...``.

A SOURCE argument is a law file path or the name of a built-in law
(``nilrad catalog list``). Curves need ``--param NAME=RAT``; classification
commands accept the flag several times to sample the curve.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import catalog
from .algebra import (
    LieLaw,
    NotNilpotentError,
    ParameterError,
    derived_series,
    descending_central_series,
    instantiate,
    jacobi_violations,
)
from .classify import INCONCLUSIVE, JacobiError, classify_many, dcs_core, table
from .degeneration import assess, find_degeneration, gphi_diag
from .derivations import derivation_space, diagonal_rank
from .fileformat import FormatError, parse_catalog, serialize
from .moment import NumericLaw, ZeroLawError, emit_soliton_system, moment_map, norm_sq, verify_soliton
from .nice import gram_matrix, nice_criterion, nice_violations
from .pre_einstein import (
    DegenerateTypeError,
    PreEinsteinError,
    min_decimal,
    min_value,
    pre_einstein,
)

CAVEAT = (
    "note: whether a curve member is an Einstein nilradical can change at isolated "
    "parameter values, so each rational sample is classified on its own"
)


class CliError(Exception):
    pass


# -- helpers ---------------------------------------------------------------


def _params(specs: list[str]) -> list[tuple[str, Fraction]]:
    out = []
    for spec in specs or ():
        name, sep, val = spec.partition("=")
        if not sep or not name:
            raise CliError(f"--param expects NAME=RAT, got {spec!r}")
        try:
            out.append((name.strip(), Fraction(val.strip())))
        except (ValueError, ZeroDivisionError):
            raise CliError(f"parameter value {val!r} is not a rational number; symbolic values are refused.\n{CAVEAT}")
    return out


def _load(source: str):
    """List of ``(name, law, entry_or_None)``."""
    if os.path.exists(source):
        with open(source, encoding="utf-8") as fh:
            text = fh.read()
        items = parse_catalog(text)
        base = os.path.splitext(os.path.basename(source))[0]
        if len(items) == 1 and items[0][0] == "law1":
            items = [(base, items[0][1])]
        return [(name, law, None) for name, law in items]
    try:
        e = catalog.get(source)
    except KeyError:
        raise CliError(f"{source!r} is neither a file nor a built-in law")
    return [(e.name, e.law, e)]


def _samples(law, params: list[tuple[str, Fraction]]) -> list[Fraction | None]:
    if isinstance(law, NumericLaw) or not law.is_parametric:
        return [None]
    vals = [v for name, v in params if name == law.param]
    if not vals:
        raise CliError(f"law depends on parameter {law.param}; give --param {law.param}=RAT.\n{CAVEAT}")
    return vals


def _single(args) -> tuple[str, object, object, Fraction | None]:
    items = _load(args.source)
    if len(items) != 1:
        raise CliError("this command takes a file with exactly one law")
    name, law, entry = items[0]
    vals = _samples(law, _params(args.param))
    if len(vals) != 1:
        raise CliError("this command takes a single parameter value")
    v = vals[0]
    if v is not None:
        law = instantiate(law, v)
    return name, law, entry, v


def _exact(law, what: str) -> LieLaw:
    if isinstance(law, NumericLaw):
        raise CliError(f"{what} needs exact rational structure constants")
    return law


def _r(x) -> str:
    return str(x) if isinstance(x, Fraction) else (f"{x:.12g}" if isinstance(x, float) else str(x))


def _emit(args, data: dict, text: str) -> None:
    if args.json:
        print(json.dumps(_jsonable(data), indent=2, ensure_ascii=False))
    else:
        print(text.rstrip("\n"))


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _vec(v) -> str:
    return "(" + ", ".join(_r(x) for x in v) + ")"


# -- commands --------------------------------------------------------------


def cmd_validate(args) -> int:
    name, law, _, _ = _single(args)
    if isinstance(law, NumericLaw):
        from .moment import jacobi_residual

        res = jacobi_residual(law)
        ok = res <= args.tol
        _emit(args, {"name": name, "jacobi": ok, "residual": res},
              f"{name}: numeric law, Jacobi residual {res:.3g} ({'ok' if ok else 'FAIL'})")
        return 0 if ok else 1
    viol = jacobi_violations(law)
    nil = None
    if not viol:
        try:
            descending_central_series(law)
            nil = True
        except NotNilpotentError:
            nil = False
    lines = [f"{name}: dim {law.n}, {len(law.brackets)} nonzero structure constants"]
    for v in viol:
        lines.append(f"Jacobi fails on ({v.triple[0]},{v.triple[1]},{v.triple[2]}): residual {_vec(v.residual)}")
    if not viol:
        lines.append("Jacobi ok; " + ("nilpotent" if nil else "NOT nilpotent"))
    data = {"name": name, "jacobi": not viol, "nilpotent": nil,
            "violations": [{"triple": list(v.triple), "residual": list(v.residual)} for v in viol]}
    _emit(args, data, "\n".join(lines))
    return 0 if not viol and nil else 1


def cmd_invariants(args) -> int:
    name, law, _, _ = _single(args)
    law = _exact(law, "invariants")
    dcs, der_s = descending_central_series(law), derived_series(law)
    dd, dr = derivation_space(law).dim, diagonal_rank(law)
    viol = nice_violations(law)
    data = {"name": name, "dcs": list(dcs), "derived": list(der_s), "dim_der": dd,
            "diagonal_rank": dr, "nice": not viol}
    text = (f"{name}\n  descending central series {_vec(dcs)}\n  derived series {_vec(der_s)}\n"
            f"  dim Der {dd}\n  diagonal rank {dr}\n  nice basis {'yes' if not viol else 'no'}")
    _emit(args, data, text)
    return 0


def cmd_pre_einstein(args) -> int:
    name, law, _, _ = _single(args)
    pe = pre_einstein(_exact(law, "pre-Einstein"))
    data = {"name": name, "phi": list(pe.phi), "scale": pe.scale, "d": pe.d,
            "type": None if pe.eig_type is None else str(pe.eig_type), "positive": pe.positive}
    lines = [f"{name}", f"  phi = {_vec(pe.phi)}"]
    if pe.d is not None:
        lines.append(f"      = {pe.scale}{_vec(pe.d)}")
    if pe.eig_type is not None:
        lines.append(f"  eigenvalue type {pe.eig_type}")
        try:
            m = min_value(pe.eig_type)
            data["min"] = m
            data["min_decimal"] = min_decimal(m)
            lines.append(f"  Min {m} ~ {min_decimal(m)}")
        except DegenerateTypeError:
            pass
    else:
        lines.append("  phi is not positive: not an Einstein nilradical")
    _emit(args, data, "\n".join(lines))
    return 0


def cmd_nice(args) -> int:
    name, law, _, _ = _single(args)
    law = _exact(law, "nice")
    cv = nice_criterion(law)
    data = {"name": name, "nice": cv.nice, "einstein": cv.einstein,
            "violations": [{"kind": v.kind, "key": list(v.key), "indices": list(v.indices)} for v in cv.violations]}
    lines = [name]
    if not cv.nice:
        lines.append("  basis is not nice:")
        for v in cv.violations:
            if v.kind == "pair":
                lines.append(f"    [e{v.key[0]},e{v.key[1]}] hits e_k for k in {list(v.indices)}")
            else:
                lines.append(f"    e{v.key[0]} reaches e{v.key[1]} through j in {list(v.indices)}")
        _emit(args, data, "\n".join(lines))
        return 0
    u = gram_matrix(law)
    data.update(slots=[list(s) for s in cv.slots], gram=u, witness=cv.witness,
                forced_coordinates=list(cv.forced_coordinates), certificate=cv.certificate)
    lines.append("  slots " + " ".join(f"({i},{j},{k})" for i, j, k in cv.slots))
    lines.append("  U =")
    lines += ["    " + " ".join(f"{x:3d}" for x in row) for row in u]
    lines.append(f"  Einstein nilradical: {cv.einstein}")
    if cv.witness is not None:
        lines.append(f"  positive solution of Ux=1: {_vec(cv.witness)}")
    if cv.forced_zero:
        lines.append(f"  coordinates forced to 0: {list(cv.forced_coordinates)}")
    if cv.certificate is not None:
        lines.append(f"  Ux=1 inconsistent, certificate y = {_vec(cv.certificate)}")
    _emit(args, data, "\n".join(lines))
    return 0


def cmd_moment_map(args) -> int:
    name, law, _, _ = _single(args)
    m = moment_map(law)
    ns = norm_sq(law)
    data = {"name": name, "norm_sq": ns, "moment_map": m}
    lines = [f"{name}: ||mu||^2 = {_r(ns)}", "m(mu) ="]
    lines += ["  " + "  ".join(f"{_r(x):>10}" for x in row) for row in m]
    _emit(args, data, "\n".join(lines))
    return 0


def cmd_degenerate(args) -> int:
    name, law, _, _ = _single(args)
    law = _exact(law, "degenerate")
    pe = pre_einstein(law)
    eq = gphi_diag(law, pe.phi)
    cert = find_degeneration(law, pe.phi)
    data = {"name": name, "gphi": eq, "certificate": None}
    lines = [f"{name}", f"  g_phi diagonal: sum a = 0, {_vec(eq[1])} . a = 0"]
    if cert is None:
        lines.append("  no diagonal degeneration found (inconclusive)")
    else:
        verdict = assess(cert)
        data["certificate"] = {
            "X": list(cert.X), "dropped": [list(s) for s in cert.dropped],
            "limit": serialize(cert.limit),
            "dim_der": [cert.before.dim_der, cert.after.dim_der],
            "dcs": [list(cert.before.dcs), list(cert.after.dcs)],
            "verdict": verdict,
        }
        lines += [
            f"  X = diag{_vec(cert.X)}",
            "  dropped slots " + " ".join(f"({i},{j},{k})" for i, j, k in cert.dropped),
            f"  dim Der {cert.before.dim_der} -> {cert.after.dim_der}",
            f"  DCS {_vec(cert.before.dcs)} -> {_vec(cert.after.dcs)}",
            f"  assessment: {verdict}",
        ]
    _emit(args, data, "\n".join(lines))
    return 0


def cmd_verify_soliton(args) -> int:
    name, law, entry, _ = _single(args)
    if entry is not None and entry.fixture is not None and not args.as_printed:
        law = entry.fixture
        name += " (soliton fixture)"
    v = verify_soliton(law, args.tol)
    data = {"name": name, "soliton": v.soliton, "c": v.c, "residual": v.residual, "derivation": v.derivation}
    _emit(args, data, f"{name}: {v.label}\n  c = {_r(v.c)}\n  residual = {v.residual:.3g}")
    return 0 if v.soliton else 1


def cmd_soliton_system(args) -> int:
    try:
        d = [int(x) for x in args.type.replace(" ", "").split(",")]
    except ValueError:
        raise CliError(f"--type expects comma separated integers, got {args.type!r}")
    sys.stdout.write(emit_soliton_system(d))
    return 0


def _jobs_for(args):
    params = _params(args.param)
    jobs = []
    for src in args.sources:
        for name, law, entry in _load(src):
            if isinstance(law, NumericLaw):
                raise CliError(f"{name}: classification needs exact structure constants")
            for v in _samples(law, params):
                kw = {"tol": args.tol}
                if entry is not None:
                    jobs.append(("entry", (entry, v), kw))
                else:
                    inst = instantiate(law, v) if v is not None else law
                    kw["param_value"] = v
                    jobs.append(("law", (inst, name), kw))
    return jobs


def cmd_classify(args) -> int:
    reports = classify_many(_jobs_for(args), args.jobs)
    if args.json:
        print(table(reports, "json").rstrip("\n"))
        return 0
    for r in reports:
        print(f"{r.label}: {r.verdict}" + (f" ({r.certificate})" if r.certificate else ""))
        if r.phi is not None:
            print(f"  phi {r.phi_scale}{_vec(r.phi_d) if r.phi_d else ''}"
                  + (f", type {r.eig_type}" if r.eig_type else ""))
        if r.min_exact is not None and r.verdict != "not-EN":
            print(f"  Min {r.min_exact} ~ {r.min_decimal}")
        print(f"  dim Der {r.dim_der}, DCS {_vec(dcs_core(r.dcs))}, derived {_vec(r.derived)}")
        for d in r.diagnostics:
            print(f"  {d}")
        if r.verdict == INCONCLUSIVE and r.phi_d and r.eig_type is not None:
            print(f"  follow up: nilrad soliton-system --type {','.join(map(str, r.phi_d))}")
        if r.mismatches:
            print("  MISMATCH vs tables: " + ", ".join(r.mismatches))
    return 0


def cmd_table(args) -> int:
    if not args.sources:
        args.sources = catalog.names()
    if not args.param:
        args.param = []
    # curves without samples use every sample the records single out
    params = _params(args.param)
    jobs = []
    for src in args.sources:
        for name, law, entry in _load(src):
            vals = [None]
            if not isinstance(law, NumericLaw) and law.is_parametric:
                vals = [v for n, v in params if n == law.param] or _default_samples(name)
                if not vals:
                    raise CliError(f"{name} is a curve; give --param {law.param}=RAT")
            for v in vals:
                if entry is not None:
                    jobs.append(("entry", (entry, v), {"tol": args.tol}))
                else:
                    inst = instantiate(law, v) if v is not None else law
                    jobs.append(("law", (inst, name), {"tol": args.tol, "param_value": v}))
    reports = classify_many(jobs, args.jobs)
    sys.stdout.write(table(reports, "json" if args.json else args.format))
    return 0


def _default_samples(name: str) -> list[Fraction]:
    """A generic sample (2) plus every special value listed in the records."""
    recs = [r for r in catalog.records() if r.name == name and r.param_case]
    if not recs:
        return []
    vals = [Fraction(2)]
    for r in recs:
        if r.param_case != "generic":
            vals.append(Fraction(r.param_case))
    return vals


def cmd_catalog(args) -> int:
    if args.action == "list":
        rows = []
        for e in catalog.builtin():
            exp = [r for r in catalog.records() if r.name == e.name]
            rows.append({"name": e.name, "n": e.law.n, "param": e.law.param,
                         "records": len(exp), "fixture": e.fixture is not None})
        if args.json:
            print(json.dumps(rows, indent=2))
        else:
            for r in rows:
                extra = [f"param {r['param']}"] if r["param"] else []
                if r["fixture"]:
                    extra.append("soliton fixture")
                print(f"{r['name']}\tdim {r['n']}" + ("\t" + ", ".join(extra) if extra else ""))
            print(f"({len(catalog.records())} expected-value records bundled)")
        return 0
    if not args.name:
        raise CliError("catalog show needs a NAME")
    try:
        e = catalog.get(args.name)
    except KeyError:
        recs = [r for r in catalog.records() if r.name == args.name]
        if not recs:
            raise CliError(f"unknown name {args.name!r}")
        for r in recs:
            print(_record_line(r))
        return 0
    sys.stdout.write(serialize(e.law))
    for r in catalog.records():
        if r.name == e.name:
            print("# expected: " + _record_line(r))
    return 0


def _record_line(r) -> str:
    case = "" if r.param_case is None else (" [generic]" if r.param_case == "generic" else f" [{r.param_case}]")
    return (f"{r.name}{case}: EN {'yes' if r.en else 'no'}, phi {r.phi_scale}{_vec(r.phi_d)}, "
            f"Min {r.min_printed or '-'}, dim Der {r.dim_der}, DCS {_vec(r.dcs)}")


# -- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--param", action="append", default=[], metavar="NAME=RAT",
                        help="bind a curve parameter (repeat to sample several values)")
    common.add_argument("--tol", type=float, default=1e-10, help="numeric tolerance (default 1e-10)")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for batch commands")

    p = argparse.ArgumentParser(prog="nilrad", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def single(name, func, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.add_argument("source", help="law file or built-in name")
        sp.set_defaults(func=func)
        return sp

    single("validate", cmd_validate, "check Jacobi identity and nilpotency")
    single("invariants", cmd_invariants, "series dimensions, dim Der, diagonal rank")
    single("pre-einstein", cmd_pre_einstein, "pre-Einstein derivation, type and Min")
    single("nice", cmd_nice, "nice-basis check and Gram-matrix criterion")
    single("moment-map", cmd_moment_map, "moment map and norm")
    single("degenerate", cmd_degenerate, "search a diagonal degeneration in G_phi")
    vs = single("verify-soliton", cmd_verify_soliton, "test m(mu) = cI + D")
    vs.add_argument("--as-printed", action="store_true",
                    help="check the law itself even when a soliton fixture is bundled")

    ss = sub.add_parser("soliton-system", parents=[common], help="emit the polynomial soliton system")
    ss.add_argument("--type", required=True, metavar="D1,...,DN", help="diagonal of the derivation")
    ss.set_defaults(func=cmd_soliton_system)

    cl = sub.add_parser("classify", parents=[common], help="run the full pipeline")
    cl.add_argument("sources", nargs="+", help="law files or built-in names")
    cl.set_defaults(func=cmd_classify)

    tb = sub.add_parser("table", parents=[common], help="table of computed values vs records")
    tb.add_argument("sources", nargs="*", help="law files or built-in names (default: all built-ins)")
    tb.add_argument("--format", choices=("tsv", "json"), default="tsv")
    tb.set_defaults(func=cmd_table)

    ca = sub.add_parser("catalog", parents=[common], help="built-in laws and records")
    ca.add_argument("action", choices=("list", "show"))
    ca.add_argument("name", nargs="?")
    ca.set_defaults(func=cmd_catalog)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CliError, FormatError, ParameterError, NotNilpotentError, JacobiError,
            PreEinsteinError, DegenerateTypeError, ZeroLawError, ValueError) as exc:
        print(f"nilrad: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
