import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stateuncertainty.exceptions import DimensionError, ValidationError
from stateuncertainty.simplex import make_probability_vector, sample_batch, uniform
from stateuncertainty.uncertainty_functions import (
    BUILTINS,
    GeneratorFunction,
    custom,
    entropy,
    entropy_generator,
    eval_entropy,
    eval_geometric,
    eval_sine,
    eval_variance,
    make_mixture,
    make_sum_form,
    parse_function_spec,
    register_function,
    sine_generator,
    unregister_function,
    variance,
    variance_generator,
    verify_axioms,
    verify_jensen,
)

Z = (2 / 3, 1 / 3)

purity = custom("purity", lambda x: np.sum(x * x, axis=1))
first_component = custom("first", lambda x: x[:, 0])


def mp_formula(name, x):
    """High-precision reference evaluation straight from the defining formulas."""
    mp.mp.dps = 40
    x = [mp.mpf(t) for t in x]
    d = len(x)
    if name == "v":
        return mp.mpf(d) / (d - 1) * (1 - sum(t * t for t in x))
    if name == "e":
        return -sum(t * mp.log(t) for t in x if t > 0) / mp.log(d)
    if name == "g":
        return mp.mpf(d) / (d - 1) * (1 - max(x))
    if name == "s":
        return sum(mp.sin(mp.pi * t) for t in x) / (d * mp.sin(mp.pi / d))
    raise KeyError(name)


class TestBuiltinValues:
    def test_variance(self):
        assert eval_variance([0.5, 0.5]) == pytest.approx(1.0, abs=1e-12)
        assert eval_variance([1.0, 0.0]) == pytest.approx(0.0, abs=1e-12)
        assert eval_variance(Z) == pytest.approx(8 / 9, abs=1e-12)

    def test_entropy(self):
        assert eval_entropy(uniform(4)) == pytest.approx(1.0, abs=1e-12)
        assert eval_entropy([1.0, 0.0]) == 0.0
        assert eval_entropy(Z) == pytest.approx(0.9184, abs=1e-3)
        assert eval_entropy(Z) == pytest.approx(0.918295834054489, abs=1e-12)

    @pytest.mark.parametrize("name", "vegs")
    def test_vertex_is_positive_zero(self, name):
        for d in (2, 3, 5):
            val = BUILTINS[name](np.eye(d)[1])
            assert val == 0.0 and math.copysign(1.0, val) == 1.0

    def test_geometric(self):
        assert eval_geometric(Z) == pytest.approx(2 / 3, abs=1e-12)
        assert eval_geometric([1.0, 0.0, 0.0]) == 0.0
        assert eval_geometric([0.5, 0.3, 0.2]) == pytest.approx(0.75, abs=1e-12)

    def test_geometric_uses_global_max(self):
        assert eval_geometric([0.2, 0.3, 0.5]) == pytest.approx(0.75, abs=1e-12)
        assert eval_geometric([0.4, 0.2, 0.4]) == pytest.approx(0.9, abs=1e-12)

    def test_sine(self):
        assert eval_sine(uniform(3)) == pytest.approx(1.0, abs=1e-12)
        assert eval_sine([1.0, 0.0]) == pytest.approx(0.0, abs=1e-12)
        # formula value; 0.500 would be an arithmetic slip
        assert eval_sine(Z) == pytest.approx(math.sqrt(3) / 2, abs=1e-12)

    @pytest.mark.parametrize("name", "vegs")
    def test_against_high_precision(self, name, rng):
        for d in (2, 3, 5, 8):
            for x in sample_batch(d, 20, rng):
                assert BUILTINS[name](x) == pytest.approx(float(mp_formula(name, x)), abs=1e-12)

    @pytest.mark.parametrize("name", "vegs")
    @pytest.mark.parametrize("d", range(2, 9))
    def test_uniform_and_vertices(self, name, d):
        f = BUILTINS[name]
        assert f(uniform(d)) == pytest.approx(1.0, abs=1e-12)
        np.testing.assert_allclose(f(np.eye(d)), 0.0, atol=1e-12)

    def test_batch_and_single_agree(self, rng):
        xs = sample_batch(4, 10, rng)
        for f in BUILTINS.values():
            np.testing.assert_array_equal(f(xs), [f(x) for x in xs])

    def test_variance_per_coordinate_form(self, rng):
        for d in range(2, 7):
            xs = sample_batch(d, 200, rng)
            np.testing.assert_allclose(variance(xs), d / (d - 1) * np.sum(xs - xs ** 2, axis=1), atol=1e-12)

    @pytest.mark.parametrize("name", "vegs")
    def test_symmetry_pointwise(self, name, rng):
        f = BUILTINS[name]
        xs = sample_batch(5, 1000, rng)
        perms = rng.permuted(np.tile(np.arange(5), (1000, 1)), axis=1)
        np.testing.assert_allclose(f(xs), f(np.take_along_axis(xs, perms, axis=1)), atol=1e-12)


class TestSumForm:
    def test_variance_generator_reproduces_builtin(self, rng):
        d = 3
        f = make_sum_form(lambda a: d / (d - 1) * (a - a * a), d)
        xs = sample_batch(d, 100, rng)
        np.testing.assert_allclose(f(xs), variance(xs), atol=1e-12)

    def test_entropy_generator_reproduces_builtin(self, rng):
        d = 2

        def h(a):
            a = np.asarray(a, dtype=float)
            return np.where(a > 0, -a * np.log(np.where(a > 0, a, 1.0)) / np.log(d), 0.0)

        f = make_sum_form(h, d)
        xs = sample_batch(d, 100, rng)
        np.testing.assert_allclose(f(xs), entropy(xs), atol=1e-12)

    @pytest.mark.parametrize("factory,name", [(variance_generator, "v"), (entropy_generator, "e"), (sine_generator, "s")])
    def test_builtin_generators(self, factory, name, rng):
        for d in range(2, 7):
            f = make_sum_form(factory(d), d)
            xs = sample_batch(d, 200, rng)
            np.testing.assert_allclose(f(xs), BUILTINS[name](xs), atol=1e-12)

    def test_rejects_square(self):
        with pytest.raises(ValidationError, match=r"\(ii\)"):
            make_sum_form(lambda a: a * a, 3)

    def test_rejects_nonpositive_interior(self):
        # vanishes at 0 and 1 but is negative on (0, 1)
        with pytest.raises(ValidationError, match=r"\(iii\)"):
            make_sum_form(lambda a: a * a - a, 2)

    def test_rejects_wrong_center(self):
        # concave and positive, but h(1/3) != 1/3
        with pytest.raises(ValidationError, match=r"\(iv\)"):
            make_sum_form(lambda a: a - a * a, 3)

    def test_rejects_non_concave(self):
        # h(1/2) = 1/2, positive, zero at ends, but a sharp dip near 1/4 breaks concavity
        def h(a):
            a = np.asarray(a, dtype=float)
            base = 2 * (a - a * a)
            return base - 0.3 * np.exp(-((a - 0.25) / 0.03) ** 2)

        with pytest.raises(ValidationError, match=r"\(i\)"):
            make_sum_form(h, 2)

    def test_scalar_only_generator(self, rng):
        f = make_sum_form(lambda a: 2 * math.sin(math.pi * a) / (2 * math.sin(math.pi / 2)) / 2, 2)
        xs = sample_batch(2, 10, rng)
        np.testing.assert_allclose(f(xs), BUILTINS["s"](xs), atol=1e-12)

    def test_bound_dimension(self):
        f = make_sum_form(variance_generator(3), 3)
        with pytest.raises(DimensionError):
            f([0.5, 0.5])

    def test_generator_checked_at_construction(self):
        with pytest.raises(ValidationError):
            GeneratorFunction(lambda a: a)


class TestMixture:
    def test_single_component(self, rng):
        f = make_mixture([entropy], [1.0])
        xs = sample_batch(3, 50, rng)
        np.testing.assert_array_equal(f(xs), entropy(xs))

    def test_half_variance_half_entropy(self):
        f = make_mixture([variance, entropy], [0.5, 0.5])
        assert f(Z) == pytest.approx(0.903592361471689, abs=1e-12)
        assert f(Z) == pytest.approx(0.5 * (8 / 9) + 0.5 * 0.9183, abs=1e-4)

    @given(st.lists(st.sampled_from("vegs"), min_size=1, max_size=4), st.integers(2, 6), st.data())
    @settings(max_examples=50, deadline=None)
    def test_uniform_and_vertex(self, names, d, data):
        w = np.array(data.draw(st.lists(st.floats(0.05, 1.0), min_size=len(names), max_size=len(names))))
        w = w / w.sum()
        w[-1] = 1.0 - w[:-1].sum()
        f = make_mixture([BUILTINS[n] for n in names], w)
        assert f(uniform(d)) == pytest.approx(1.0, abs=1e-12)
        assert f(np.eye(d)[0]) == pytest.approx(0.0, abs=1e-12)

    def test_exact_weighted_sum(self, rng):
        fs = [BUILTINS[n] for n in "vegs"]
        w = [0.1, 0.2, 0.3, 0.4]
        f = make_mixture(fs, w)
        xs = sample_batch(4, 100, rng)
        expected = 0.0
        for wi, fi in zip(w, fs):
            expected = expected + wi * fi(xs)
        np.testing.assert_array_equal(f(xs), expected)

    @pytest.mark.parametrize("weights", [[0.5, 0.6], [1.0, 0.0], [-0.5, 1.5], [0.5]])
    def test_weight_constraints(self, weights):
        with pytest.raises(ValidationError):
            make_mixture([variance, entropy], weights)

    def test_empty(self):
        with pytest.raises(ValidationError):
            make_mixture([], [])

    def test_mixed_bound_dims(self):
        with pytest.raises(DimensionError):
            make_mixture([make_sum_form(variance_generator(2), 2), make_sum_form(variance_generator(3), 3)], [0.5, 0.5])


class TestSpecParser:
    @pytest.mark.parametrize("spec", list("vegs"))
    def test_builtins(self, spec):
        assert parse_function_spec(spec) is BUILTINS[spec]

    def test_mixture(self):
        f = parse_function_spec("mix:0.5*v+0.5*e")
        assert f.kind == "mixture"
        assert f(Z) == pytest.approx(0.903592361471689, abs=1e-12)

    @pytest.mark.parametrize("spec", ["x", "mix:0.5v+0.5*e", "mix:a*v+0.5*e", "mix:0.4*v+0.4*e"])
    def test_bad_specs(self, spec):
        with pytest.raises(ValidationError):
            parse_function_spec(spec)

    def test_registry(self):
        register_function("purity", purity)
        try:
            assert parse_function_spec("purity") is purity
            assert parse_function_spec("mix:0.5*purity+0.5*v").kind == "mixture"
        finally:
            unregister_function("purity")
        with pytest.raises(ValidationError):
            parse_function_spec("purity")


class TestVerifyAxioms:
    @pytest.mark.parametrize("name", "vegs")
    def test_builtins_pass(self, name):
        report = verify_axioms(BUILTINS[name], 3, samples=2000, seed=1)
        assert report.passed, report.to_dict()

    def test_purity_fails(self):
        report = verify_axioms(purity, 3, samples=2000, seed=1)
        assert {"zero_iff_certain", "one_iff_uniform", "concavity"} <= set(report.failed())
        assert report.results["zero_iff_certain"].worst_violation == pytest.approx(1.0)
        assert report.results["concavity"].worst_violation > 1e-2

    def test_first_component_fails_symmetry(self):
        report = verify_axioms(first_component, 3, samples=2000, seed=1)
        assert not report.results["symmetry"].passed
        assert report.results["symmetry"].worst_violation > 1e-2
        assert len(report.results["symmetry"].witness) == 2

    def test_deterministic(self):
        a = verify_axioms(entropy, 4, samples=500, seed=3).to_dict()
        b = verify_axioms(entropy, 4, samples=500, seed=3).to_dict()
        assert a == b

    def test_single_sample_still_checks_vertices(self):
        assert verify_axioms(variance, 2, samples=1, seed=0).passed
        assert not verify_axioms(purity, 2, samples=1, seed=0).passed

    def test_json_shape(self):
        out = verify_axioms(purity, 2, samples=10).to_dict()
        assert set(out["concavity"]) == {"pass", "worst_violation", "witness"}
        assert set(out["concavity"]["witness"]) == {"x", "y", "lambda"}

    def test_range_violation_detected(self):
        doubled = custom("2v", lambda x: 2 * variance(x))
        report = verify_axioms(doubled, 2, samples=200)
        assert not report.results["range"].passed

    def test_bound_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            verify_axioms(make_sum_form(variance_generator(3), 3), 4, samples=10)


class TestJensen:
    def test_two_point_matches_concavity(self):
        assert verify_jensen(variance, 3, 2, seed=0)
        assert not verify_jensen(purity, 3, 2, seed=0)

    def test_entropy_five_points(self):
        assert verify_jensen(entropy, 2, 5, seed=0, trials=1000)

    def test_convex_counterexample(self):
        assert not verify_jensen(purity, 2, 5, seed=0)

    def test_needs_two_points(self):
        with pytest.raises(ValidationError):
            verify_jensen(entropy, 2, 1)
