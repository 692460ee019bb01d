import math

import numpy as np
import pytest

from uavcb.chaos import (
    ChaoticStream,
    MapKind,
    chebyshev_stream,
    gauss_mouse_stream,
    logistic_stream,
)


class TestGaussMouse:
    def test_zero_state_emits_one(self):
        assert gauss_mouse_stream(0.0).next() == 1.0

    def test_exact_divisions(self):
        s = gauss_mouse_stream(0.5)
        assert s.next() == 0.0  # frac(1/0.5) = frac(2)
        assert s.next() == 1.0  # zero branch

    def test_fractional_part(self):
        s = gauss_mouse_stream(0.4)
        assert s.next() == pytest.approx(0.5, abs=1e-15)  # frac(2.5)

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            gauss_mouse_stream(1.5)

    def test_emitted_counter(self):
        s = gauss_mouse_stream(0.37)
        for _ in range(5):
            s.next()
        assert s.emitted == 5


class TestLogistic:
    def test_spec_trajectory(self):
        s = logistic_stream(0.2)
        assert s.next() == pytest.approx(0.64, abs=1e-15)
        assert s.next() == pytest.approx(0.9216, abs=1e-15)
        assert s.next() == pytest.approx(0.28901376, abs=1e-12)

    @pytest.mark.parametrize("bad", [0.0, 0.25, 0.5, 0.75, 1.0])
    def test_rejects_degenerate_seeds(self, bad):
        with pytest.raises(ValueError):
            logistic_stream(bad)

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            logistic_stream(1.2)

    def test_no_stagnation(self):
        # No value may repeat within 1e-12 for more than 10 consecutive steps.
        s = logistic_stream(0.3721)
        prev = s.next()
        run_length = 0
        for _ in range(10_000):
            cur = s.next()
            if abs(cur - prev) <= 1e-12:
                run_length += 1
                assert run_length <= 10
            else:
                run_length = 0
            prev = cur


class TestChebyshev:
    def test_fixed_point_at_one(self):
        s = chebyshev_stream(1.0)
        assert s.next() == 1.0
        assert s.state == 1.0

    def test_zero_maps_to_one(self):
        # arccos(0) = pi/2, cos(4 * pi/2) = cos(2 pi) = 1.
        assert chebyshev_stream(0.0).next() == pytest.approx(1.0, abs=1e-12)

    def test_half(self):
        s = chebyshev_stream(0.5)
        assert s.next() == pytest.approx(0.25, abs=1e-12)
        assert s.state == pytest.approx(-0.5, abs=1e-12)

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            chebyshev_stream(-1.01)


def _stream_for(kind: MapKind, seed_value: float) -> ChaoticStream:
    if kind is MapKind.GAUSS_MOUSE:
        return gauss_mouse_stream(seed_value)
    if kind is MapKind.LOGISTIC:
        return logistic_stream(seed_value)
    return chebyshev_stream(seed_value * 2.0 - 1.0)


@pytest.mark.parametrize("kind", list(MapKind))
def test_determinism_element_wise(kind):
    a = _stream_for(kind, 0.618)
    b = _stream_for(kind, 0.618)
    for _ in range(100_000):
        assert a.next() == b.next()


@pytest.mark.parametrize("kind", list(MapKind))
def test_range_containment(kind):
    rng = np.random.default_rng(5)
    for _ in range(100):
        seed_value = float(rng.uniform(0.01, 0.99))
        s = _stream_for(kind, seed_value)
        for _ in range(1000):
            v = s.next()
            assert 0.0 <= v <= 1.0
            if kind is MapKind.LOGISTIC:
                assert 0.0 < v < 1.0
            if kind is MapKind.CHEBYSHEV:
                assert -1.0 <= s.state <= 1.0


def test_wrong_kind_dispatch_rejected():
    s = logistic_stream(0.3)
    with pytest.raises(ValueError):
        from uavcb.chaos import gauss_mouse_next

        gauss_mouse_next(s)
