"""Classification pipeline and report tables."""
from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .algebra import LieLaw, derived_series, descending_central_series, jacobi_violations
from .catalog import CatalogEntry, ExpectedRecord
from .degeneration import NOT_EN, assess, find_degeneration
from .derivations import derivation_space, diagonal_rank
from .moment import NumericLaw, verify_soliton
from .nice import YES, is_nice, nice_criterion
from .pre_einstein import (
    EigenType,
    PreEinsteinError,
    min_decimal,
    min_value,
    necessary_conditions,
    pre_einstein,
)

EN, NOT_EN_VERDICT, INCONCLUSIVE = "EN", "not-EN", "inconclusive"
_GLYPH = {EN: "✓", NOT_EN_VERDICT: "-", INCONCLUSIVE: "?"}


class JacobiError(ValueError):
    pass


@dataclass
class Report:
    name: str
    n: int
    param_value: Fraction | None = None
    verdict: str = INCONCLUSIVE
    certificate: str | None = None
    phi: tuple[Fraction, ...] | None = None
    phi_scale: Fraction | None = None
    phi_d: tuple[int, ...] | None = None
    eig_type: EigenType | None = None
    min_exact: Fraction | None = None
    dim_der: int | None = None
    diagonal_rank: int | None = None
    dcs: tuple[int, ...] = ()
    derived: tuple[int, ...] = ()
    nice: bool | None = None
    details: dict = field(default_factory=dict)
    diagnostics: list[str] = field(default_factory=list)
    expected: ExpectedRecord | None = None
    mismatches: list[str] = field(default_factory=list)

    @property
    def label(self) -> str:
        if self.param_value is None:
            return self.name
        return f"{self.name}[{self.param_value}]"

    @property
    def min_decimal(self) -> str | None:
        return None if self.min_exact is None else min_decimal(self.min_exact)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "label": self.label,
            "n": self.n,
            "param_value": _rat(self.param_value),
            "verdict": self.verdict,
            "certificate": self.certificate,
            "phi": None if self.phi is None else [_rat(x) for x in self.phi],
            "phi_scale": _rat(self.phi_scale),
            "phi_d": None if self.phi_d is None else list(self.phi_d),
            "eig_type": None if self.eig_type is None else str(self.eig_type),
            "min": _rat(self.min_exact),
            "min_decimal": self.min_decimal,
            "dim_der": self.dim_der,
            "diagonal_rank": self.diagonal_rank,
            "dcs": list(self.dcs),
            "derived": list(self.derived),
            "nice": self.nice,
            "details": _jsonable(self.details),
            "diagnostics": list(self.diagnostics),
            "mismatches": list(self.mismatches),
        }


def _rat(x) -> str | None:
    return None if x is None else str(Fraction(x))


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _soliton_consistent(fixture: NumericLaw, report: Report, tol: float) -> str | None:
    """Reason the fixture cannot stand in for the law, or None if it passes."""
    v = verify_soliton(fixture, tol)
    if not v.soliton:
        return f"fixture is not a soliton (residual {v.residual:.3g}, c {float(v.c):.6g})"
    if fixture.n != report.n:
        return "fixture dimension differs"
    diag = sorted(v.derivation[i][i] for i in range(fixture.n))
    d = sorted(report.phi_d or ())
    if not d or diag[0] <= 0:
        return "fixture derivation is not positive"
    s = diag[0] / d[0]
    if any(abs(a - s * b) > 1e-8 for a, b in zip(diag, d)):
        return "fixture eigenvalue type differs from the pre-Einstein type"
    return None


def classify(
    law: LieLaw,
    name: str = "law",
    *,
    param_value=None,
    fixture: NumericLaw | None = None,
    torus_adapted: bool = False,
    expected: ExpectedRecord | None = None,
    tol: float = 1e-10,
) -> Report:
    """Run the decision pipeline on an instantiated law.

    Stages: Jacobi, series and Der, pre-Einstein derivation, positivity,
    nice-basis criterion (final when the basis is nice), otherwise a diagonal
    degeneration search. ``fixture`` is a numeric law claimed to lie in the
    same orbit; a verified soliton there upgrades an open verdict to EN.
    ``torus_adapted`` asserts that some maximal torus is diagonal in the given
    basis, so diagonal rank 0 means rank 0.
    """
    law._require_instantiated()
    viol = jacobi_violations(law)
    if viol:
        raise JacobiError(f"Jacobi identity fails on triple {viol[0].triple}")
    rep = Report(name, law.n, None if param_value is None else Fraction(param_value), expected=expected)
    rep.dcs = descending_central_series(law)  # raises NotNilpotentError
    rep.derived = derived_series(law)
    der = derivation_space(law)
    rep.dim_der = der.dim
    rep.diagonal_rank = diagonal_rank(law)
    rep.nice = is_nice(law)[0]

    _decide(law, rep, der, fixture, torus_adapted, tol)
    if expected is not None:
        rep.mismatches = _compare(rep, expected)
    return rep


def _decide(law, rep: Report, der, fixture, torus_adapted, tol) -> None:
    if not law.brackets:
        rep.diagnostics.append("abelian law: not covered by the Einstein nilradical tests")
        return
    if rep.diagonal_rank == 0:
        if torus_adapted:
            rep.verdict, rep.certificate = NOT_EN_VERDICT, "rank-zero"
        else:
            rep.diagnostics.append("no diagonal derivations; rank unknown in this basis")
        return
    try:
        pe = pre_einstein(law, der)
    except PreEinsteinError as exc:
        rep.diagnostics.append(f"pre-Einstein derivation unavailable: {exc}")
        return
    rep.phi, rep.phi_scale, rep.phi_d, rep.eig_type = pe.phi, pe.scale, pe.d, pe.eig_type
    ok, why = necessary_conditions(pe)
    if not ok:
        rep.verdict, rep.certificate = NOT_EN_VERDICT, "pre-Einstein"
        rep.diagnostics.append(why)
        return
    try:
        rep.min_exact = min_value(pe.eig_type)
    except ValueError:
        rep.diagnostics.append("type proportional to the identity")

    if rep.nice:
        cv = nice_criterion(law)
        rep.verdict = EN if cv.einstein == YES else NOT_EN_VERDICT
        rep.certificate = "nice-criterion"
        rep.details["slots"] = [list(s) for s in cv.slots]
        if cv.witness is not None:
            rep.details["witness"] = list(cv.witness)
        if cv.forced_zero:
            rep.details["forced_coordinates"] = list(cv.forced_coordinates)
        if cv.certificate is not None:
            rep.details["inconsistency"] = list(cv.certificate)
        return

    cert = find_degeneration(law, pe.phi)
    if cert is not None:
        rep.details["degeneration"] = {
            "X": list(cert.X),
            "dropped": [list(s) for s in cert.dropped],
            "dim_der": [cert.before.dim_der, cert.after.dim_der],
            "dcs": [list(cert.before.dcs), list(cert.after.dcs)],
            "derived": [list(cert.before.derived), list(cert.after.derived)],
        }
        if assess(cert) == NOT_EN:
            rep.verdict, rep.certificate = NOT_EN_VERDICT, "degeneration"
            return
    if fixture is not None:
        why = _soliton_consistent(fixture, rep, tol)
        if why is None:
            rep.verdict, rep.certificate = EN, "soliton"
            return
        rep.diagnostics.append(why)
    if rep.eig_type is not None:
        rep.details["soliton_system_type"] = list(rep.phi_d)
        rep.diagnostics.append(
            "open: solve the soliton system for type " + ",".join(map(str, rep.phi_d))
        )


def _compare(rep: Report, exp: ExpectedRecord) -> list[str]:
    bad = []
    if rep.verdict != INCONCLUSIVE and (rep.verdict == EN) != exp.en:
        bad.append("en")
    if rep.phi is not None and tuple(rep.phi) != exp.phi:
        bad.append("phi")
    if rep.verdict == EN and exp.min_exact is not None and rep.min_exact != exp.min_exact:
        bad.append("min")
    if rep.dim_der != exp.dim_der:
        bad.append("dim_der")
    if dcs_core(rep.dcs) != exp.dcs:
        bad.append("dcs")
    return bad


def dcs_core(dcs: Sequence[int]) -> tuple[int, ...]:
    """Drop the leading ``n`` and the trailing 0, as the tables print it."""
    return tuple(dcs[1:-1])


def classify_entry(entry: CatalogEntry, value=None, tol: float = 1e-10) -> Report:
    from .algebra import instantiate

    if entry.parametric and value is None:
        raise ValueError(f"{entry.name} is a curve; supply a parameter value")
    law = instantiate(entry.law, value) if entry.parametric else entry.law
    v = Fraction(value) if entry.parametric else None
    return classify(law, entry.name, param_value=v, fixture=entry.fixture, expected=entry.expected(v), tol=tol)


def _run(job):
    kind, payload, kwargs = job
    if kind == "entry":
        return classify_entry(*payload, **kwargs)
    return classify(*payload, **kwargs)


def classify_many(jobs: Iterable[tuple], n_jobs: int = 1) -> list[Report]:
    """Jobs are ``("entry", (entry, value), kw)`` or ``("law", (law, name), kw)``; order is kept."""
    jobs = list(jobs)
    if n_jobs <= 1 or len(jobs) <= 1:
        return [_run(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=n_jobs) as pool:
        return list(pool.map(_run, jobs))


# -- tables ---------------------------------------------------------------

COLUMNS = ("name", "EN", "pre-Einstein derivation", "Min", "dim Der", "dim DCS", "mismatch")


def phi_str(scale: Fraction | None, d: Sequence[int] | None) -> str:
    if d is None:
        return "0" if scale is None else "?"
    body = "(" + ",".join(map(str, d)) + ")"
    return body if scale == 1 else f"{scale}{body}"


def table_row(rep: Report) -> list[str]:
    return [
        rep.label,
        _GLYPH[rep.verdict],
        phi_str(rep.phi_scale, rep.phi_d) if rep.phi is not None else "?",
        rep.min_decimal if rep.verdict == EN and rep.min_exact is not None else "-",
        "" if rep.dim_der is None else str(rep.dim_der),
        "(" + ",".join(map(str, dcs_core(rep.dcs))) + ")",
        ",".join(rep.mismatches),
    ]


def table(reports: Sequence[Report], fmt: str = "tsv") -> str:
    if fmt == "json":
        return json.dumps([r.to_dict() for r in reports], indent=2, ensure_ascii=False) + "\n"
    if fmt != "tsv":
        raise ValueError(f"unknown table format {fmt!r}")
    lines = ["\t".join(COLUMNS)] + ["\t".join(table_row(r)) for r in reports]
    return "\n".join(lines) + "\n"
