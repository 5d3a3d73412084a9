"""
Uncertainty functions on the probability simplex.

An uncertainty function maps a probability vector to ``[0, 1]``. It vanishes
exactly on the vertices, equals 1 exactly at the uniform vector, and is
symmetric and concave. Four builtins are provided:

* ``variance``  -- ``d/(d-1) * (1 - sum x_i^2)``
* ``entropy``   -- ``-(1/ln d) * sum x_i ln x_i`` with ``0 ln 0 = 0``
* ``geometric`` -- ``d/(d-1) * (1 - max x_i)``
* ``sine``      -- ``sum sin(pi x_i) / (d sin(pi/d))``

New functions come from :func:`make_sum_form` (``x -> sum h(x_i)`` for a
concave generator ``h``) and :func:`make_mixture` (convex combinations).
:func:`verify_axioms` spot-checks the four defining properties on seeded
random samples.

All evaluators accept a single vector or an ``(n, d)`` batch.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
import numpy.typing as npt

from .exceptions import DimensionError, ValidationError
from .simplex import DIST_TOL, ProbabilityVector, sample_batch

AXIOM_TOL = 1e-9
AUDIT_TOL = 1e-9
EVAL_TOL = 1e-12
WEIGHT_TOL = 1e-12

KINDS = ("variance", "entropy", "geometric", "sine", "sum_form", "mixture", "custom")

BatchFn = Callable[[np.ndarray], np.ndarray]


def _as_batch(x) -> tuple[np.ndarray, bool]:
    if isinstance(x, ProbabilityVector):
        return x.probs[None, :], True
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim == 1:
        return arr[None, :], True
    if arr.ndim == 2:
        return arr, False
    raise ValidationError("expected a probability vector or an (n, d) batch", detail=f"shape {arr.shape}")


@dataclass(frozen=True, eq=False)
class UncertaintyFunction:
    """A map from probability vectors to reals.

    ``d`` is the outcome count the function is bound to, or ``None`` for the
    builtins, which are defined for every ``d >= 2``.
    """

    kind: str
    name: str
    evaluator: BatchFn = field(repr=False)
    d: int | None = None
    generator: "GeneratorFunction | None" = field(default=None, repr=False)
    components: tuple["UncertaintyFunction", ...] = field(default=(), repr=False)
    weights: tuple[float, ...] = ()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}")

    def __call__(self, x):
        arr, single = _as_batch(x)
        if self.d is not None and arr.shape[1] != self.d:
            raise DimensionError(f"{self.name} is defined on d={self.d}, got d={arr.shape[1]}")
        vals = np.asarray(self.evaluator(arr), dtype=np.float64)
        return float(vals[0]) if single else vals

    def accepts(self, d: int) -> bool:
        return self.d is None or self.d == d


# -- builtins ----------------------------------------------------------------

def _variance(x: np.ndarray) -> np.ndarray:
    d = x.shape[1]
    return d / (d - 1) * (1.0 - np.sum(x * x, axis=1))


def _xlnx(x: np.ndarray) -> np.ndarray:
    pos = x > 0
    return np.where(pos, x * np.log(np.where(pos, x, 1.0)), 0.0)


def _entropy(x: np.ndarray) -> np.ndarray:
    d = x.shape[1]
    # leading 0.0 avoids -0.0 at the vertices
    return 0.0 - np.sum(_xlnx(x), axis=1) / math.log(d)


def _geometric(x: np.ndarray) -> np.ndarray:
    d = x.shape[1]
    # max over every component; ties are irrelevant
    return d / (d - 1) * (1.0 - np.max(x, axis=1))


def _sine(x: np.ndarray) -> np.ndarray:
    d = x.shape[1]
    # sin(pi x) = sin(pi (1 - x)); reflecting keeps sin(pi) from leaving ~1e-16
    return np.sum(np.sin(np.pi * np.minimum(x, 1.0 - x)), axis=1) / (d * math.sin(math.pi / d))


variance = UncertaintyFunction("variance", "v", _variance)
entropy = UncertaintyFunction("entropy", "e", _entropy)
geometric = UncertaintyFunction("geometric", "g", _geometric)
sine = UncertaintyFunction("sine", "s", _sine)

BUILTINS = {"v": variance, "e": entropy, "g": geometric, "s": sine}


def eval_variance(x):
    return variance(x)


def eval_entropy(x):
    return entropy(x)


def eval_geometric(x):
    return geometric(x)


def eval_sine(x):
    return sine(x)


def custom(name: str, func: BatchFn, d: int | None = None) -> UncertaintyFunction:
    """Wrap an arbitrary batch evaluator, e.g. a control that is not concave."""
    return UncertaintyFunction("custom", name, func, d=d)


# -- sum form ----------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class GeneratorFunction:
    """A real function ``h`` on ``[0, 1]`` with ``h(0) = h(1) = 0``.

    ``h`` may be scalar-only; it is vectorised on demand.
    """

    h: Callable
    description: str = ""

    def __post_init__(self):
        ends = self(np.array([0.0, 1.0]))
        _check_endpoints(ends)

    def __call__(self, a: npt.ArrayLike) -> np.ndarray:
        a = np.asarray(a, dtype=np.float64)
        try:
            with np.errstate(all="ignore"), warnings.catch_warnings():
                warnings.simplefilter("error", DeprecationWarning)
                out = np.asarray(self.h(a), dtype=np.float64)
            if out.shape == a.shape:
                return out
        except (TypeError, ValueError, DeprecationWarning):
            pass
        return np.vectorize(lambda t: float(self.h(float(t))), otypes=[np.float64])(a)


def _check_endpoints(ends: np.ndarray) -> None:
    if not np.all(np.isfinite(ends)):
        raise ValidationError("condition (ii) h(0) = h(1) = 0", detail="generator is not finite at an endpoint")
    worst = float(np.max(np.abs(ends)))
    if worst > EVAL_TOL:
        raise ValidationError("condition (ii) h(0) = h(1) = 0", worst,
                              f"h(0)={ends[0]:.6g}, h(1)={ends[1]:.6g}")


def variance_generator(d: int) -> GeneratorFunction:
    c = d / (d - 1)
    return GeneratorFunction(lambda a: c * (a - a * a), f"d/(d-1)(a - a^2), d={d}")


def entropy_generator(d: int) -> GeneratorFunction:
    c = 1.0 / math.log(d)
    return GeneratorFunction(lambda a: -c * _xlnx(np.asarray(a, dtype=np.float64)), f"-(a ln a)/ln d, d={d}")


def sine_generator(d: int) -> GeneratorFunction:
    c = 1.0 / (d * math.sin(math.pi / d))
    return GeneratorFunction(lambda a: c * np.sin(np.pi * a), f"sin(pi a)/(d sin(pi/d)), d={d}")


def make_sum_form(h: GeneratorFunction | Callable, d: int, audit_tol: float = AUDIT_TOL,
                  name: str | None = None) -> UncertaintyFunction:
    """Build ``x -> sum_i h(x_i)`` on the simplex of ``d`` outcomes.

    The generator is audited before the function is returned: it must vanish
    at 0 and 1, be positive on a grid inside ``(0, 1)``, satisfy
    ``h(1/d) = 1/d``, and be midpoint concave on a 101-point grid. The
    requirement that ``sum h(x_i) = 1`` only at the uniform vector cannot be
    certified by sampling; :func:`verify_axioms` exercises it instead.

    Raises
    ------
    ValidationError
        Naming the first audited condition that fails.
    """
    if d < 2:
        raise ValidationError("d must be at least 2", detail=f"d={d}")
    gen = h if isinstance(h, GeneratorFunction) else GeneratorFunction(h)

    grid = np.linspace(0.0, 1.0, 101)
    hg = gen(grid)
    if not np.all(np.isfinite(hg)):
        raise ValidationError("condition (i) h is concave", detail="generator is not finite on [0, 1]")

    inner = hg[1:-1]
    if np.any(inner <= 0):
        k = int(np.argmin(inner))
        raise ValidationError("condition (iii) h > 0 on (0, 1)", float(-inner[k]), f"h({grid[k + 1]:.2f}) = {inner[k]:.6g}")

    at_center = float(gen(np.array([1.0 / d]))[0])
    if abs(at_center - 1.0 / d) > audit_tol:
        raise ValidationError("condition (iv) h(1/d) = 1/d", abs(at_center - 1.0 / d))

    mid = gen(0.5 * (grid[:, None] + grid[None, :]))
    gap = 0.5 * (hg[:, None] + hg[None, :]) - mid
    worst = float(gap.max())
    if worst > audit_tol:
        i, j = np.unravel_index(int(gap.argmax()), gap.shape)
        raise ValidationError("condition (i) h is concave", worst, f"midpoint test at a={grid[i]:.2f}, b={grid[j]:.2f}")

    return UncertaintyFunction(
        "sum_form", name or f"sum[{gen.description or 'h'}]",
        lambda x: np.sum(gen(x), axis=1), d=d, generator=gen,
    )


# -- mixtures ----------------------------------------------------------------

def check_weights(weights: Sequence[float], strictly_positive: bool = True) -> tuple[float, ...]:
    w = tuple(float(x) for x in weights)
    if not w:
        raise ValidationError("weights must be non-empty")
    for x in w:
        bad = (x <= 0.0) if strictly_positive else (x < 0.0)
        if bad or x > 1.0 or not math.isfinite(x):
            interval = "(0, 1]" if strictly_positive else "[0, 1]"
            raise ValidationError(f"weights must lie in {interval}", detail=f"got {x}")
    total = math.fsum(w)
    if abs(total - 1.0) > WEIGHT_TOL:
        raise ValidationError("weights must sum to 1", abs(total - 1.0))
    return w


def make_mixture(fs: Sequence[UncertaintyFunction], weights: Sequence[float]) -> UncertaintyFunction:
    """Convex combination ``sum_i w_i f_i`` of uncertainty functions.

    Terms are accumulated in ascending index order starting from ``0.0``.
    """
    fs = tuple(fs)
    if not fs:
        raise ValidationError("mixture needs at least one component")
    if len(fs) != len(weights):
        raise ValidationError("one weight per component is required",
                              detail=f"{len(fs)} functions, {len(weights)} weights")
    w = check_weights(weights)
    dims = {f.d for f in fs if f.d is not None}
    if len(dims) > 1:
        raise DimensionError(f"components are bound to different d: {sorted(dims)}")
    d = dims.pop() if dims else None

    def evaluate(x: np.ndarray) -> np.ndarray:
        total = np.zeros(x.shape[0])
        for wi, f in zip(w, fs):
            total = total + wi * np.asarray(f.evaluator(x), dtype=np.float64)
        return total

    name = "mix:" + "+".join(f"{wi:g}*{f.name}" for wi, f in zip(w, fs))
    return UncertaintyFunction("mixture", name, evaluate, d=d, components=fs, weights=w)


# -- specifier grammar -------------------------------------------------------

_registry: dict[str, UncertaintyFunction] = dict(BUILTINS)


def register_function(name: str, f: UncertaintyFunction) -> None:
    """Make ``f`` available to :func:`parse_function_spec` under ``name``."""
    if not name or name.startswith("mix") or any(c in name for c in "*+:,"):
        raise ValueError(f"invalid function name {name!r}")
    _registry[name] = f


def unregister_function(name: str) -> None:
    if name in BUILTINS:
        raise ValueError("builtins cannot be removed")
    _registry.pop(name, None)


def parse_function_spec(spec: str) -> UncertaintyFunction:
    """Parse ``v | e | g | s | <registered> | mix:w1*f1+w2*f2+...``."""
    spec = spec.strip()
    if spec.startswith("mix:"):
        fs, ws = [], []
        for term in spec[4:].split("+"):
            weight, sep, fname = term.partition("*")
            if not sep:
                raise ValidationError("mixture term must read weight*function", detail=repr(term))
            try:
                ws.append(float(weight))
            except ValueError:
                raise ValidationError("mixture weight must be a number", detail=repr(weight)) from None
            fs.append(_lookup(fname.strip()))
        return make_mixture(fs, ws)
    return _lookup(spec)


def _lookup(name: str) -> UncertaintyFunction:
    try:
        return _registry[name]
    except KeyError:
        known = ", ".join(sorted(_registry))
        raise ValidationError("unknown uncertainty function", detail=f"{name!r} (known: {known})") from None


# -- axiom verification ------------------------------------------------------

AXIOMS = ("zero_iff_certain", "one_iff_uniform", "symmetry", "concavity", "range")


@dataclass
class AxiomResult:
    passed: bool
    worst_violation: float
    witness: object = None

    def to_dict(self) -> dict:
        return {"pass": self.passed, "worst_violation": self.worst_violation, "witness": self.witness}


@dataclass
class AxiomReport:
    function: str
    d: int
    samples: int
    seed: int
    results: dict[str, AxiomResult]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results.values())

    def failed(self) -> list[str]:
        return [k for k, r in self.results.items() if not r.passed]

    def to_dict(self) -> dict:
        return {k: r.to_dict() for k, r in self.results.items()}


def _test_points(d: int, n: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform simplex draws, with half of them pushed onto random faces.

    Face points keep at least two non-zero components, so none is a vertex.
    """
    x = sample_batch(d, n, rng)
    if d > 2:
        half = n // 2
        support = rng.integers(2, d + 1, size=half)
        order = np.argsort(rng.random((half, d)), axis=1)
        ranks = np.argsort(order, axis=1)
        mask = ranks < support[:, None]
        face = x[:half] * mask
        x[:half] = face / face.sum(axis=1, keepdims=True)
    return x


def _streams(seed: int, k: int) -> list[np.random.Generator]:
    return [np.random.default_rng(s) for s in np.random.SeedSequence(seed).spawn(k)]


def verify_axioms(f: UncertaintyFunction, d: int, samples: int = 10_000, seed: int = 0,
                  tol: float = AXIOM_TOL) -> AxiomReport:
    """Spot-check the defining properties of an uncertainty function.

    Vertices and the uniform vector are always checked; ``samples`` random
    points (and pairs, and permutations) are drawn on top. Each check gets
    its own RNG stream spawned from ``seed``, so the report is reproducible.
    Values are never clamped here.
    """
    if d < 2:
        raise ValidationError("d must be at least 2", detail=f"d={d}")
    if samples < 1:
        raise ValidationError("samples must be at least 1")
    if not f.accepts(d):
        raise DimensionError(f"{f.name} is bound to d={f.d}, asked to verify at d={d}")

    rng_zero, rng_one, rng_sym, rng_cav = _streams(seed, 4)
    results: dict[str, AxiomResult] = {}
    every_value = []

    # zero exactly on vertices
    vertices = np.eye(d)
    fv = f(vertices)
    pts = _test_points(d, samples, rng_zero)
    fp = f(pts)
    every_value += [fv, fp]
    k_vert = int(np.argmax(np.abs(fv)))
    at_vertex = float(abs(fv[k_vert]))
    k_int = int(np.argmin(fp))
    inside = float(-fp[k_int])
    ok_vertex = at_vertex <= tol
    ok_inside = fp[k_int] > 0
    witness = None
    if not ok_vertex:
        witness = [vertices[k_vert].tolist()]
    elif not ok_inside:
        witness = [pts[k_int].tolist()]
    results["zero_iff_certain"] = AxiomResult(ok_vertex and bool(ok_inside), max(0.0, at_vertex, inside), witness)

    # one exactly at the uniform vector
    u = np.full(d, 1.0 / d)
    fu = f(u)
    pts = _test_points(d, samples, rng_one)
    pts = pts[np.max(np.abs(pts - 1.0 / d), axis=1) > DIST_TOL]
    fp = f(pts) if len(pts) else np.zeros(0)
    every_value += [np.array([fu]), fp]
    at_uniform = abs(fu - 1.0)
    ok_uniform = at_uniform <= tol
    if len(fp):
        k = int(np.argmax(fp))
        above = float(fp[k] - 1.0)
        ok_below = fp[k] < 1.0
    else:
        above, ok_below = 0.0, True
    witness = None
    if not ok_uniform:
        witness = [u.tolist()]
    elif not ok_below:
        witness = [pts[k].tolist()]
    results["one_iff_uniform"] = AxiomResult(ok_uniform and bool(ok_below), max(0.0, at_uniform, above), witness)

    # symmetry under permutations
    pts = _test_points(d, samples, rng_sym)
    perms = rng_sym.permuted(np.tile(np.arange(d), (samples, 1)), axis=1)
    permuted = np.take_along_axis(pts, perms, axis=1)
    f1, f2 = f(pts), f(permuted)
    every_value += [f1, f2]
    diff = np.abs(f1 - f2)
    k = int(np.argmax(diff))
    worst = float(diff[k])
    results["symmetry"] = AxiomResult(worst <= tol, worst,
                                      None if worst <= tol else [pts[k].tolist(), permuted[k].tolist()])

    # concavity along random chords
    xs = _test_points(d, samples, rng_cav)
    ys = _test_points(d, samples, rng_cav)
    lam = rng_cav.random(samples)
    zs = lam[:, None] * xs + (1.0 - lam)[:, None] * ys
    fx, fy, fz = f(xs), f(ys), f(zs)
    every_value += [fx, fy, fz]
    gap = lam * fx + (1.0 - lam) * fy - fz
    k = int(np.argmax(gap))
    worst = max(0.0, float(gap[k]))
    results["concavity"] = AxiomResult(
        worst <= tol, worst,
        None if worst <= tol else {"x": xs[k].tolist(), "y": ys[k].tolist(), "lambda": float(lam[k])},
    )

    allv = np.concatenate(every_value)
    lo, hi = float(allv.min()), float(allv.max())
    worst = max(0.0, -lo, hi - 1.0)
    results["range"] = AxiomResult(worst <= tol, worst, None if worst <= tol else [lo, hi])

    return AxiomReport(f.name, d, samples, seed, results)


def jensen_violation(f: UncertaintyFunction, d: int, n: int, seed: int = 0,
                     trials: int = 1000) -> tuple[float, dict | None]:
    """Largest excess of ``sum l_i f(z_i)`` over ``f(sum l_i z_i)``.

    Returns the worst excess (clipped at 0) and the offending points and
    weights.
    """
    if n < 2:
        raise ValidationError("Jensen check needs n >= 2 points")
    if not f.accepts(d):
        raise DimensionError(f"{f.name} is bound to d={f.d}, asked to check at d={d}")
    rng = np.random.default_rng(np.random.SeedSequence([seed, n, d]))
    z = _test_points(d, trials * n, rng).reshape(trials, n, d)
    lam = rng.dirichlet(np.ones(n), size=trials)
    mixed = np.einsum("tn,tnd->td", lam, z)
    fz = f(z.reshape(trials * n, d)).reshape(trials, n)
    gap = np.sum(lam * fz, axis=1) - f(mixed)
    k = int(np.argmax(gap))
    worst = max(0.0, float(gap[k]))
    return worst, {"points": z[k].tolist(), "weights": lam[k].tolist()}


def verify_jensen(f: UncertaintyFunction, d: int, n: int, seed: int = 0, trials: int = 1000,
                  tol: float = AXIOM_TOL) -> bool:
    """True iff the ``n``-point Jensen inequality holds on every sampled trial."""
    worst, _ = jensen_violation(f, d, n, seed, trials)
    return worst <= tol
