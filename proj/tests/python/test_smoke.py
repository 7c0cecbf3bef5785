"""Smoke tests for the python module (run via ctest with the built module on sys.path)."""
import math
import sys

import _specstat as ss


def approx(a, b, tol=1e-9):
    assert abs(a - b) <= tol, f"{a} vs {b}"


def test_version():
    assert ss.__version__


def test_sampling_determinism():
    a = ss.sample_spectrum("A", 8, seed=7)
    b = ss.sample_spectrum("A", 8, seed=7)
    assert a == b
    assert len(a) == 8
    assert a == sorted(a)


def test_explicit_matrix():
    vals = ss.spectrum_from_matrix([[1.0, 0.0], [0.0, 2.0]])
    approx(vals[0], 1.0)
    approx(vals[1], 2.0)


def test_benchmarks():
    approx(ss.wigner_surmise(1.0, 1.0), math.pi / 2 * math.exp(-math.pi / 4), 1e-12)
    approx(ss.poisson_spacing(1, 0.7), math.exp(-0.7), 1e-12)
    approx(ss.sff_closed(2, 0.5), 0.5, 1e-15)
    assert abs(ss.ginue_shat_derived() - 1.143) < 1e-3


def test_kernels_and_operators():
    approx(ss.sine_kernel(0.3, 0.3), 1.0, 1e-15)
    approx(ss.airy_ai(0.0), 0.3550280538878172, 1e-13)
    approx(ss.bessel_j(0.0, 0.0), 1.0)
    approx(ss.pfaffian([[0.0, 2.0], [-2.0, 0.0]]), 2.0, 1e-12)
    # gap probability of the empty interval
    approx(ss.gap_probability("bulk", 2, 0.0, 0.1, 0.1), 1.0)
    g = ss.gap_probability("bulk", 2, 0.0, -0.5, 0.5)
    assert 0.0 < g < 1.0
    # two-level determinantal repulsion
    approx(ss.det_kpoint("bulk", 2, 0.0, 1, 1.0, 0.0, [0.0, 0.5]),
           1.0 - ss.sine_kernel(0.0, 0.5) ** 2, 1e-12)


def test_pipeline_spacings():
    vals = ss.sample_spectrum("A", 120, seed=3)
    unfolded = ss.unfold_semicircle(vals, 1.0, 120)
    bulk = unfolded[24:-24]
    gaps = [b - a for a, b in zip(bulk, bulk[1:])]
    mean = sum(gaps) / len(gaps)
    assert 0.7 < mean < 1.3
    ratios, mean_r = ss.spacing_ratios(vals)
    assert len(ratios) == 118
    assert 0.0 <= min(ratios) and max(ratios) <= 1.0
    assert 0.3 < mean_r < 0.8


if __name__ == "__main__":
    failures = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_") and callable(fn):
            try:
                fn()
                print(f"PASS {name}")
            except AssertionError as exc:
                print(f"FAIL {name}: {exc}")
                failures += 1
    sys.exit(1 if failures else 0)
