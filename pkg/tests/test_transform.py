import cmath
import math

import numpy as np
import pytest

from smfrft import (
    AngleMismatchError,
    FftSizeError,
    GridCompatibilityError,
    SampledSignal,
    Spectrum,
    fast_ugrid,
    frft_direct,
    gen_chirp,
    gen_gaussian,
    ismfrft_direct,
    ismfrft_fast,
    make_angle,
    make_grid,
    relative_l2_error,
    smfrft_direct,
    smfrft_fast,
    smfrft_kernel,
    smfrft_quadrature,
)

PI = math.pi


def random_signal(grid, rng):
    data = rng.standard_normal(grid.count) + 1j * rng.standard_normal(grid.count)
    return SampledSignal(grid, data)


class TestDirectQuadrature:
    def test_matches_pointwise_kernel_sum(self, small_grid, quarter_angle):
        # ties the vectorized path to the scalar kernel definition
        x = gen_gaussian(small_grid, 0.3, 0.9, 1.2)
        u = np.array([-2.0, -0.3, 0.0, 1.7])
        got = smfrft_quadrature(x, u, quarter_angle)
        t = small_grid.points()
        for k, uk in enumerate(u):
            ref = small_grid.step * sum(
                x.samples[n] * smfrft_kernel(t[n], uk, quarter_angle)
                for n in range(small_grid.count)
            )
            assert got[k] == pytest.approx(ref, rel=1e-12)

    def test_zero_signal(self, small_grid, quarter_angle):
        x = SampledSignal(small_grid, np.zeros(small_grid.count, complex))
        spec = smfrft_direct(x, fast_ugrid(small_grid), quarter_angle)
        assert np.all(spec.values == 0)

    def test_gaussian_right_angle_at_origin(self):
        # closed form: integral of exp(-t^2/2) is sqrt(2*pi), so the
        # transform at u = 0 collapses to exp(-j*pi/4)
        grid = make_grid(-16.0, 32.0 / 2048, 2048)
        x = gen_gaussian(grid, 0.0, 1.0, 0.0)
        val = smfrft_quadrature(x, np.array([0.0]), make_angle(PI / 2))[0]
        assert val == pytest.approx(cmath.exp(-0.25j * PI), rel=1e-6)
        assert val == pytest.approx(0.7071067811865476 - 0.7071067811865475j,
                                    rel=1e-6)

    def test_gaussian_right_angle_closed_form(self):
        grid = make_grid(-16.0, 32.0 / 2048, 2048)
        x = gen_gaussian(grid, 0.0, 1.0, 0.0)
        u = np.linspace(-4.0, 4.0, 41)
        got = smfrft_quadrature(x, u, make_angle(PI / 2))
        expected = cmath.exp(-0.25j * PI) * np.exp(-u * u / 2.0)
        assert relative_l2_error(got, expected) < 1e-6


class TestFastPath:
    def test_zero_signal(self, std_grid):
        x = SampledSignal(std_grid, np.zeros(std_grid.count, complex))
        spec = smfrft_fast(x, make_angle(PI / 3))
        assert np.all(spec.values == 0)

    def test_matches_direct_on_fast_grid(self):
        grid = make_grid(-16.0, 32.0 / 1024, 1024)
        x = gen_gaussian(grid, 0.0, 1.0, 0.0)
        angle = make_angle(PI / 3)
        fast = smfrft_fast(x, angle)
        direct = smfrft_direct(x, fast.ugrid, angle)
        assert relative_l2_error(fast.values, direct.values) <= 1e-9

    def test_rejects_non_power_of_two(self):
        grid = make_grid(-8.0, 16.0 / 100, 100)
        x = gen_gaussian(grid, 0.0, 1.0, 0.0)
        with pytest.raises(FftSizeError):
            smfrft_fast(x, make_angle(PI / 4))

    def test_chirp_compaction(self, quarter_angle):
        # chirp at the kernel's own rate loses its quadratic phase in the
        # pre-multiply, so |spectrum| equals that of the bare envelope
        # under the plain Fourier angle
        grid = make_grid(-16.0, 32.0 / 1024, 1024)
        chirp = gen_chirp(grid, rate=quarter_angle.cot_phi, envelope_width=2.0)
        envelope = gen_gaussian(grid, 0.0, 2.0, 0.0)
        compacted = smfrft_fast(chirp, quarter_angle)
        reference = smfrft_fast(envelope, make_angle(PI / 2))
        assert relative_l2_error(np.abs(compacted.values),
                                 np.abs(reference.values)) <= 1e-9
        peak_u = compacted.ugrid.points()[np.argmax(np.abs(compacted.values))]
        assert abs(peak_u) < 2 * compacted.ugrid.step

    def test_right_angle_reduces_to_scaled_dft(self, rng):
        # e^{-j pi/4} times the dt-scaled unitary DFT, bins fftshifted
        grid = make_grid(-16.0, 32.0 / 512, 512)
        x = random_signal(grid, rng)
        spec = smfrft_fast(x, make_angle(PI / 2))
        u = spec.ugrid.points()
        dft = np.fft.fftshift(np.fft.fft(x.samples))
        reference = (cmath.exp(-0.25j * PI) / math.sqrt(2 * PI) *
                     grid.step * np.exp(-1j * grid.start * u) * dft)
        assert relative_l2_error(spec.values, reference) <= 1e-12

    def test_parseval(self, rng):
        grid = make_grid(-16.0, 32.0 / 512, 512)
        signals = [
            gen_gaussian(grid, 0.3, 0.8, 2.0),
            gen_chirp(grid, 5.0, 1.5),
            random_signal(grid, rng),
        ]
        for x in signals:
            for phi in (0.3, PI / 4, PI / 2, 2.8):
                spec = smfrft_fast(x, make_angle(phi))
                assert abs(spec.energy() - x.energy()) / x.energy() <= 1e-12

    def test_angle_continuity(self):
        grid = make_grid(-16.0, 32.0 / 512, 512)
        x = gen_gaussian(grid, 0.0, 1.0, 0.0)
        base = smfrft_fast(x, make_angle(PI / 4))
        nudged = smfrft_fast(x, make_angle(PI / 4 + 1e-9))
        assert relative_l2_error(nudged.values, base.values) <= 1e-6


class TestInverse:
    def test_direct_inverse_of_zeros(self, std_grid):
        angle = make_angle(PI / 3)
        spec = Spectrum(fast_ugrid(std_grid),
                        np.zeros(std_grid.count, complex), angle)
        out = ismfrft_direct(spec, std_grid, angle)
        assert np.all(out.samples == 0)

    def test_direct_inverse_round_trip(self):
        grid = make_grid(-16.0, 32.0 / 512, 512)
        x = gen_gaussian(grid, 0.5, 1.2, -2.0)
        angle = make_angle(PI / 3)
        back = ismfrft_direct(smfrft_fast(x, angle), grid, angle)
        assert relative_l2_error(back.samples, x.samples) <= 1e-9

    def test_single_bin_spectrum(self):
        # one-term sum: each output sample is a pure phasor times constants
        grid = make_grid(-4.0, 8.0 / 16, 16)
        angle = make_angle(PI / 2)
        ugrid = fast_ugrid(grid)
        values = np.zeros(16, complex)
        k0 = 5
        values[k0] = 1.0
        out = ismfrft_direct(Spectrum(ugrid, values, angle), grid, angle)
        t = grid.points()
        const = cmath.exp(0.25j * PI) / math.sqrt(2 * PI)
        expected = const * ugrid.step * np.exp(1j * ugrid.point(k0) * t)
        np.testing.assert_allclose(out.samples, expected, rtol=1e-12, atol=1e-15)

    def test_direct_inverse_angle_mismatch(self, std_grid):
        spec = smfrft_fast(gen_gaussian(std_grid, 0, 1, 0), make_angle(PI / 3))
        with pytest.raises(AngleMismatchError):
            ismfrft_direct(spec, std_grid, make_angle(PI / 4))

    def test_fast_round_trip_random_signals(self, rng):
        grid = make_grid(-16.0, 32.0 / 256, 256)
        for phi in (0.2, PI / 4, PI / 2, 2.9):
            angle = make_angle(phi)
            x = random_signal(grid, rng)
            back = ismfrft_fast(smfrft_fast(x, angle), angle)
            assert relative_l2_error(back.samples, x.samples) <= 1e-10

    def test_fast_round_trip_other_composition(self, rng):
        grid = make_grid(-16.0, 32.0 / 256, 256)
        angle = make_angle(1.1)
        spec = smfrft_fast(random_signal(grid, rng), angle)
        again = smfrft_fast(ismfrft_fast(spec, angle), angle)
        assert relative_l2_error(again.values, spec.values) <= 1e-10

    def test_fast_inverse_of_zeros(self, std_grid):
        angle = make_angle(0.9)
        spec = Spectrum(fast_ugrid(std_grid),
                        np.zeros(std_grid.count, complex), angle,
                        tgrid=std_grid)
        assert np.all(ismfrft_fast(spec, angle).samples == 0)

    def test_fast_inverse_requires_reciprocal_grids(self, std_grid):
        angle = make_angle(0.9)
        bad_ugrid = make_grid(-10.0, 20.0 / std_grid.count, std_grid.count)
        spec = Spectrum(bad_ugrid, np.zeros(std_grid.count, complex), angle,
                        tgrid=std_grid)
        with pytest.raises(GridCompatibilityError):
            ismfrft_fast(spec, angle)

    def test_fast_inverse_requires_time_grid(self, std_grid):
        angle = make_angle(0.9)
        spec = Spectrum(fast_ugrid(std_grid),
                        np.zeros(std_grid.count, complex), angle)
        with pytest.raises(GridCompatibilityError):
            ismfrft_fast(spec, angle)


class TestConventionalTransform:
    def test_gaussian_right_angle(self):
        grid = make_grid(-16.0, 32.0 / 1024, 1024)
        x = gen_gaussian(grid, 0.0, 1.0, 0.0)
        ugrid = make_grid(-4.0, 8.0 / 64, 64)
        spec = frft_direct(x, ugrid, make_angle(PI / 2))
        u = ugrid.points()
        assert relative_l2_error(spec.values, np.exp(-u * u / 2)) < 1e-6

    def test_right_angle_relation_to_simplified(self, rng):
        # kernels differ by exactly sqrt(j) when cot(phi) = 0
        grid = make_grid(-16.0, 32.0 / 512, 512)
        x = random_signal(grid, rng)
        angle = make_angle(PI / 2)
        ugrid = make_grid(-8.0, 16.0 / 128, 128)
        conventional = frft_direct(x, ugrid, angle)
        simplified = smfrft_direct(x, ugrid, angle)
        sqrt_j = cmath.exp(0.25j * PI)
        assert relative_l2_error(conventional.values,
                                 sqrt_j * simplified.values) <= 1e-12

    def test_zero_signal(self, std_grid):
        x = SampledSignal(std_grid, np.zeros(std_grid.count, complex))
        spec = frft_direct(x, fast_ugrid(std_grid), make_angle(1.0))
        assert np.all(spec.values == 0)


class TestDeterminism:
    def test_worker_count_does_not_change_bits(self, rng, monkeypatch):
        # blocked evaluation writes disjoint slices with identical per-row
        # arithmetic, so results are bitwise equal at any worker count
        import smfrft._chunked as chunked

        grid = make_grid(-16.0, 32.0 / 2048, 2048)
        x = random_signal(grid, rng)
        angle = make_angle(1.0)
        u = fast_ugrid(grid).points()
        threaded = smfrft_quadrature(x, u, angle)
        monkeypatch.setattr(chunked, "_WORKERS", 1)
        sequential = smfrft_quadrature(x, u, angle)
        assert np.array_equal(threaded, sequential)


class TestLinearity:
    def test_all_five_operations(self, rng):
        grid = make_grid(-8.0, 16.0 / 128, 128)
        angle = make_angle(1.0)
        ugrid = fast_ugrid(grid)
        x = random_signal(grid, rng)
        y = random_signal(grid, rng)
        alpha, beta = 1.7 - 0.3j, -0.8 + 1.1j

        def lin_sig(op):
            mixed = SampledSignal(grid, alpha * x.samples + beta * y.samples)
            lhs = op(mixed)
            rhs = alpha * op(x) + beta * op(y)
            return relative_l2_error(lhs, rhs)

        assert lin_sig(lambda s: smfrft_direct(s, ugrid, angle).values) <= 1e-12
        assert lin_sig(lambda s: smfrft_fast(s, angle).values) <= 1e-12
        assert lin_sig(lambda s: frft_direct(s, ugrid, angle).values) <= 1e-12

        sx = smfrft_fast(x, angle)
        sy = smfrft_fast(y, angle)
        mixed_spec = Spectrum(sx.ugrid, alpha * sx.values + beta * sy.values,
                              angle, tgrid=grid)
        lhs = ismfrft_fast(mixed_spec, angle).samples
        rhs = (alpha * ismfrft_fast(sx, angle).samples
               + beta * ismfrft_fast(sy, angle).samples)
        assert relative_l2_error(lhs, rhs) <= 1e-12

        lhs = ismfrft_direct(mixed_spec, grid, angle).samples
        rhs = (alpha * ismfrft_direct(sx, grid, angle).samples
               + beta * ismfrft_direct(sy, grid, angle).samples)
        assert relative_l2_error(lhs, rhs) <= 1e-12
