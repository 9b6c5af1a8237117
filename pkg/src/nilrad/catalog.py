"""Bundled laws, soliton fixtures and the expected-value records of the tables."""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources

from .algebra import LieLaw
from .fileformat import parse_catalog
from .moment import NumericLaw
from .pre_einstein import EigenType, min_value


@dataclass(frozen=True)
class ExpectedRecord:
    name: str
    rank: int
    en: bool
    phi_scale: Fraction
    phi_d: tuple[int, ...]
    min_printed: str | None
    dim_der: int
    dcs: tuple[int, ...]  # without the leading n and the trailing 0
    param_case: str | None = None  # "generic", or the rational value of a special row
    excluded: tuple[Fraction, ...] = ()

    @property
    def phi(self) -> tuple[Fraction, ...]:
        return tuple(self.phi_scale * x for x in self.phi_d)

    @property
    def min_exact(self) -> Fraction | None:
        """Min implied by the printed type (only meaningful for positive phi)."""
        if self.min_printed is None or any(x <= 0 for x in self.phi_d):
            return None
        return min_value(EigenType.from_vector(self.phi_d))

    def applies_to(self, value: Fraction | None) -> bool:
        if self.param_case is None:
            return True
        if value is None:
            return False
        if self.param_case == "generic":
            return value not in self.excluded
        return value == Fraction(self.param_case)


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    law: LieLaw
    fixture: NumericLaw | None = None

    @property
    def parametric(self) -> bool:
        return self.law.is_parametric

    def expected(self, value=None) -> ExpectedRecord | None:
        v = None if value is None else Fraction(value)
        return expected_record(self.name, v)


def _data(name: str) -> str:
    return resources.files("nilrad").joinpath("data").joinpath(name).read_text(encoding="utf-8")


@lru_cache(maxsize=None)
def records() -> tuple[ExpectedRecord, ...]:
    out = []
    for r in json.loads(_data("tables.json")):
        p = r.get("param") or {}
        out.append(
            ExpectedRecord(
                name=r["name"],
                rank=r["rank"],
                en=r["en"],
                phi_scale=Fraction(r["phi_scale"]),
                phi_d=tuple(r["phi_d"]),
                min_printed=r["min_printed"],
                dim_der=r["dim_der"],
                dcs=tuple(r["dcs"]),
                param_case=p.get("case"),
                excluded=tuple(Fraction(x) for x in p.get("excluded", ())),
            )
        )
    return tuple(out)


def expected_record(name: str, value: Fraction | None = None) -> ExpectedRecord | None:
    for rec in records():
        if rec.name == name and rec.applies_to(value):
            return rec
    return None


@lru_cache(maxsize=None)
def _fixtures() -> dict[str, NumericLaw]:
    return dict(parse_catalog(_data("soliton_1.17.law")))


@lru_cache(maxsize=None)
def builtin() -> tuple[CatalogEntry, ...]:
    fx = _fixtures()
    return tuple(CatalogEntry(name, law, fx.get(name)) for name, law in parse_catalog(_data("catalog.law")))


def get(name: str) -> CatalogEntry:
    for e in builtin():
        if e.name == name:
            return e
    raise KeyError(f"no built-in law named {name!r}")


def names() -> list[str]:
    return [e.name for e in builtin()]
