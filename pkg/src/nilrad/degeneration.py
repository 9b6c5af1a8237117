"""Diagonal one-parameter degenerations inside G_phi.

A diagonal ``X = diag(a)`` acts on the slot ``(i, j, k)`` by the factor
``exp(-t w)`` with ``w = a_i + a_j - a_k``. If every ``w >= 0`` the limit
``t -> oo`` exists: slots with ``w = 0`` survive unchanged, slots with ``w > 0``
vanish. When ``a`` also satisfies ``sum a = 0`` and ``sum phi_i a_i = 0`` the
curve stays in the G_phi orbit, and a limit that is not isomorphic to the
original law shows that orbit is not closed.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra import LieLaw, Slot, derived_series, descending_central_series, jacobi_check
from .derivations import derivation_space
from .linalg import Matrix, Vector, as_vector, dot, primitive_integer
from .lp import FREE, lp_feasible

NOT_EN, INDETERMINATE = "not-EN", "indeterminate"


class InvalidDirectionError(ValueError):
    pass


def gphi_diag(law: LieLaw, phi: Sequence) -> Matrix:
    """Rows ``(1,...,1)`` and ``phi``: the diagonal part of the Lie algebra of G_phi."""
    phi = as_vector(phi)
    if len(phi) != law.n:
        raise ValueError("phi has the wrong length")
    return [[Fraction(1)] * law.n, list(phi)]


def exponent(slot: Slot, a: Sequence) -> Fraction:
    i, j, k = slot
    return Fraction(a[i - 1]) + Fraction(a[j - 1]) - Fraction(a[k - 1])


@dataclass(frozen=True)
class Invariants:
    dim_der: int
    dcs: tuple[int, ...]
    derived: tuple[int, ...]

    @classmethod
    def of(cls, law: LieLaw) -> Invariants:
        return cls(derivation_space(law).dim, descending_central_series(law), derived_series(law))


@dataclass(frozen=True)
class DegenerationCertificate:
    X: Vector
    dropped: tuple[Slot, ...]
    limit: LieLaw
    before: Invariants
    after: Invariants

    @property
    def invariants_differ(self) -> bool:
        return self.before != self.after


def certificate_from_direction(law: LieLaw, phi: Sequence, x: Sequence) -> DegenerationCertificate:
    """Check ``diag(x)`` is a valid degeneration direction and build its certificate."""
    x = as_vector(x)
    if len(x) != law.n:
        raise InvalidDirectionError("direction has the wrong length")
    for row in gphi_diag(law, phi):
        if dot(row, x) != 0:
            raise InvalidDirectionError("direction is not in the diagonal of g_phi")
    ws = {s: exponent(s, x) for s in law.brackets}
    neg = [s for s, w in ws.items() if w < 0]
    if neg:
        raise InvalidDirectionError(f"limit does not exist: slot {neg[0]} has negative exponent")
    dropped = tuple(s for s, w in ws.items() if w > 0)
    if not dropped:
        raise InvalidDirectionError("direction fixes the law (no slot has a positive exponent)")
    limit = law.without(dropped)
    if not jacobi_check(limit):
        raise InvalidDirectionError("limit violates Jacobi")
    return DegenerationCertificate(x, dropped, limit, Invariants.of(law), Invariants.of(limit))


def find_degeneration(law: LieLaw, phi: Sequence) -> DegenerationCertificate | None:
    """Search one LP per slot with that slot's exponent strictly positive.

    Certificates that change an invariant win; ties go to fewer dropped slots,
    then to the earliest slot.
    """
    law._require_instantiated()
    n = law.n
    eq = gphi_diag(law, phi)
    slots = list(law.brackets)
    # -(a_i + a_j - a_k) <= 0
    a_in = [[-Fraction(v) for v in _wrow(s, n)] for s in slots]
    seen: set[tuple[Slot, ...]] = set()
    best = None
    for r in range(len(slots)):
        res = lp_feasible(eq, [0, 0], [FREE] * n, a_in, strict_rows=[r], diagnose=False)
        if not res.feasible:
            continue
        _, ints = primitive_integer(res.witness)
        cert = certificate_from_direction(law, phi, ints)
        if cert.dropped in seen:
            continue
        seen.add(cert.dropped)
        key = (not cert.invariants_differ, len(cert.dropped))
        if best is None or key < best[0]:
            best = (key, cert)
    return None if best is None else best[1]


def _wrow(slot: Slot, n: int) -> list[int]:
    i, j, k = slot
    row = [0] * n
    row[i - 1] += 1
    row[j - 1] += 1
    row[k - 1] -= 1
    return row


def assess(cert: DegenerationCertificate | None) -> str:
    if cert is None:
        raise ValueError("assess needs a certificate")
    return NOT_EN if cert.invariants_differ else INDETERMINATE
