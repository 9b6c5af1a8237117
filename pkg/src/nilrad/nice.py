"""Nice bases and the Gram-matrix criterion for Einstein nilradicals.

For a law whose basis is nice, the law is an Einstein nilradical exactly when
``U x = [1]`` has a solution with every coordinate positive, where ``U`` is the
Gram matrix of the weights ``E_kk - E_ii - E_jj`` of the nonzero slots.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import LieLaw, Slot
from .linalg import InconsistentSystemError, Matrix, Vector, solve_affine
from .lp import POS, lp_feasible

YES, NO, NOT_APPLICABLE = "yes", "no", "not-applicable"


@dataclass(frozen=True)
class NiceViolation:
    """``kind == "pair"``: ``[e_i, e_j]`` hits several ``k`` (``key = (i, j)``).

    ``kind == "target"``: several ``j`` send ``e_i`` to ``e_k`` (``key = (i, k)``).
    """

    kind: str
    key: tuple[int, int]
    indices: tuple[int, ...]


def nice_violations(law: LieLaw) -> list[NiceViolation]:
    n = law.n
    targets: dict[tuple[int, int], list[int]] = defaultdict(list)
    sources: dict[tuple[int, int], list[int]] = defaultdict(list)
    for i, j, k in law.brackets:
        targets[(i, j)].append(k)
        sources[(i, k)].append(j)
        sources[(j, k)].append(i)
    out = [NiceViolation("pair", key, tuple(ks)) for key, ks in sorted(targets.items()) if len(ks) > 1]
    out += [
        NiceViolation("target", key, tuple(sorted(js)))
        for key, js in sorted(sources.items())
        if len(js) > 1
    ]
    assert all(1 <= x <= n for v in out for x in v.indices)
    return out


def is_nice(law: LieLaw) -> tuple[bool, list[NiceViolation]]:
    v = nice_violations(law)
    return not v, v


def weight(slot: Slot, n: int) -> tuple[int, ...]:
    i, j, k = slot
    w = [0] * n
    w[k - 1] += 1
    w[i - 1] -= 1
    w[j - 1] -= 1
    return tuple(w)


def gram_matrix(law: LieLaw) -> list[list[int]]:
    """``U_pq = <alpha_p, alpha_q>`` over nonzero slots in lexicographic order."""
    return _gram(sorted(law.brackets), law.n)


def _gram(slots, n: int) -> list[list[int]]:
    ws = [weight(s, n) for s in slots]
    return [[sum(a * b for a, b in zip(u, v)) for v in ws] for u in ws]


@dataclass(frozen=True)
class CriterionVerdict:
    nice: bool
    einstein: str
    witness: Vector | None = None
    # 0-based coordinates of x that vanish on every nonnegative solution
    forced_zero: tuple[int, ...] = ()
    # y with y U = 0 and y.1 != 0 when U x = 1 has no solution at all
    certificate: Vector | None = None
    violations: tuple[NiceViolation, ...] = field(default=())
    slots: tuple[Slot, ...] = ()

    @property
    def forced_coordinates(self) -> tuple[int, ...]:
        """``forced_zero`` with 1-based numbering."""
        return tuple(i + 1 for i in self.forced_zero)


def slots_criterion(slots, n: int) -> CriterionVerdict:
    """Decide whether ``U x = [1]`` has a positive solution for the given slots.

    No niceness check is made here; the answer only carries its meaning for
    nice laws.
    """
    slots = tuple(slots)
    if not slots:
        raise ValueError("criterion needs a nonzero law")
    u: Matrix = [[Fraction(x) for x in row] for row in _gram(slots, n)]
    ones = [Fraction(1)] * len(slots)
    try:
        solve_affine(u, ones)
    except InconsistentSystemError as exc:
        return CriterionVerdict(True, NO, certificate=exc.certificate, slots=slots)
    res = lp_feasible(u, ones, [POS] * len(slots))
    if res.feasible:
        return CriterionVerdict(True, YES, witness=res.witness, slots=slots)
    return CriterionVerdict(True, NO, forced_zero=res.forced_zero, slots=slots)


def nice_criterion(law: LieLaw) -> CriterionVerdict:
    law._require_instantiated()
    ok, viol = is_nice(law)
    slots = tuple(sorted(law.brackets))
    if not ok:
        return CriterionVerdict(False, NOT_APPLICABLE, violations=tuple(viol), slots=slots)
    return slots_criterion(slots, law.n)
