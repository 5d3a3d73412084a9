"""
Uncertainty measures: an uncertainty function composed with a Born distribution.

``UncertaintyMeasure(f, A)(rho) = f(P)`` where ``P_i = tr(rho A_i)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .exceptions import DimensionError, ValidationError
from .quantum_objects import (
    Observable,
    State,
    born_distribution,
    effect_variance,
    is_projective,
    mix_observables,
    mix_states,
    random_state,
)
from .simplex import ProbabilityVector
from .uncertainty_functions import AXIOM_TOL, UncertaintyFunction, make_mixture, variance


@dataclass(frozen=True, eq=False)
class UncertaintyMeasure:
    f: UncertaintyFunction
    a: Observable

    def __post_init__(self):
        if not self.f.accepts(self.a.d):
            raise DimensionError(f"{self.f.name} is bound to d={self.f.d}, observable has {self.a.d} outcomes")

    def __call__(self, rho: State) -> float:
        return measure(self, rho)


def measure(m: UncertaintyMeasure, rho: State) -> float:
    return m.f(born_distribution(rho, m.a))


def concavity_gap(m: UncertaintyMeasure, trials: int, seed: int = 0) -> tuple[float, dict]:
    """Worst excess of ``l U(r1) + (1-l) U(r2)`` over ``U(l r1 + (1-l) r2)``.

    State pairs are drawn with random rank, so pure states are well
    represented. Returns the excess (clipped at 0) and the worst trial.
    """
    if trials < 1:
        raise ValidationError("trials must be at least 1")
    n = m.a.hilbert_dim
    rng = np.random.default_rng(seed)
    worst, witness = -np.inf, {}
    for trial in range(trials):
        r1 = random_state(n, rng, rank=int(rng.integers(1, n + 1)))
        r2 = random_state(n, rng, rank=int(rng.integers(1, n + 1)))
        lam = float(rng.random())
        mixed = mix_states([r1, r2], [lam, 1.0 - lam])
        gap = lam * measure(m, r1) + (1.0 - lam) * measure(m, r2) - measure(m, mixed)
        if gap > worst:
            worst, witness = gap, {"trial": trial, "lambda": lam, "gap": gap}
    return max(0.0, worst), witness


def measure_concavity_check(m: UncertaintyMeasure, trials: int = 1000, seed: int = 0,
                            tol: float = AXIOM_TOL) -> bool:
    """True iff no sampled state mixture lowers the measure beyond ``tol``."""
    worst, _ = concavity_gap(m, trials, seed)
    return worst <= tol


def variance_measure_decomposition(a: Observable, rho: State) -> tuple[float, float]:
    """Variance measure computed two ways for a projective observable.

    Returns ``(v(P), d/(d-1) * sum_i Var(A_i, rho))``. The two agree only
    when every effect is a projection, so other observables are rejected.
    """
    if not is_projective(a):
        raise ValidationError("variance decomposition requires a projective observable")
    if rho.dim != a.hilbert_dim:
        raise DimensionError(f"state dim {rho.dim} vs observable dim {a.hilbert_dim}")
    d = a.d
    direct = measure(UncertaintyMeasure(variance, a), rho)
    total = 0.0
    for e in a.effects:
        total += effect_variance(e, rho)
    return direct, d / (d - 1) * total


def mixed_measure(fs: Sequence[UncertaintyFunction], fweights: Sequence[float],
                  obs: Sequence[Observable], oweights: Sequence[float]) -> UncertaintyMeasure:
    """Measure built from a mixed function applied to a mixed observable.

    It evaluates ``(sum l_i f_i)(P^{sum m_j B_j})``. That is in general
    strictly larger than ``sum_ij l_i m_j U_(f_i, B_j)``; see
    :func:`observable_mixture_gap`.
    """
    f = fs[0] if len(fs) == 1 and list(fweights) == [1.0] else make_mixture(fs, fweights)
    a = obs[0] if len(obs) == 1 and list(oweights) == [1.0] else mix_observables(obs, oweights)
    return UncertaintyMeasure(f, a)


def observable_mixture_gap(f: UncertaintyFunction, rho: State, obs: Sequence[Observable],
                           weights: Sequence[float]) -> float:
    """``f(P^{sum m_j B_j}) - sum_j m_j f(P^{B_j})``, which is never negative for concave ``f``."""
    lhs = measure(UncertaintyMeasure(f, mix_observables(obs, weights)), rho)
    rhs = 0.0
    for w, b in zip(weights, obs):
        rhs += w * measure(UncertaintyMeasure(f, b), rho)
    return lhs - rhs


# -- discrimination ----------------------------------------------------------

@dataclass
class DiscriminationRow:
    label: str
    distribution: ProbabilityVector
    values: dict[str, float]


@dataclass
class DiscriminationReport:
    """Born distributions and uncertainty values for a set of labelled states.

    ``gaps[(a, b)]`` is the largest outcome-wise difference between the
    distributions of states ``a`` and ``b``; zero means the observable does
    not tell them apart.
    """

    rows: list[DiscriminationRow]
    functions: list[str]
    gaps: dict[tuple[str, str], float] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "rows": [
                {"label": r.label, "distribution": r.distribution.tolist(), "uncertainty": dict(r.values)}
                for r in self.rows
            ],
            "gaps": [{"a": a, "b": b, "gap": g} for (a, b), g in self.gaps.items()],
        }

    def to_table(self, digits: int = 4) -> str:
        d = self.rows[0].distribution.d if self.rows else 0
        header = ["label"] + [f"P({i})" for i in range(d)] + list(self.functions)
        body = [
            [r.label] + [fmt_fixed(p, digits) for p in r.distribution.probs]
            + [fmt_fixed(r.values[name], digits) for name in self.functions]
            for r in self.rows
        ]
        lines = _align([header] + body)
        if self.gaps:
            lines.append("")
            lines += _align([["state", "state", "gap"]]
                            + [[a, b, fmt_fixed(g, digits)] for (a, b), g in self.gaps.items()])
        return "\n".join(lines) + "\n"


def fmt_fixed(x: float, digits: int = 4) -> str:
    """Fixed-point text without a spurious minus sign on rounded zeros."""
    s = f"{x:.{digits}f}"
    return s[1:] if s.startswith("-") and float(s) == 0.0 else s


def _align(rows: list[list[str]]) -> list[str]:
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    return ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows]


def discriminate(states: Mapping[str, State] | Sequence[tuple[str, State]], a: Observable,
                 fs: Sequence[UncertaintyFunction]) -> DiscriminationReport:
    items = list(states.items()) if isinstance(states, Mapping) else list(states)
    rows = []
    for label, rho in items:
        p = born_distribution(rho, a)
        rows.append(DiscriminationRow(label, p, {f.name: f(p) for f in fs}))
    gaps = {
        (r1.label, r2.label): float(np.max(np.abs(r1.distribution.probs - r2.distribution.probs)))
        for r1, r2 in itertools.combinations(rows, 2)
    }
    return DiscriminationReport(rows, [f.name for f in fs], gaps)
