import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from levysheet import paths as pth


def bridge_path():
    return pth.LinearPath(0.0, 1.0, 1.0, 1.0, 0.0, 1.0)


class TestEval:
    def test_linear(self):
        assert bridge_path().eval(0.25) == (0.25, 0.75)

    def test_exponential_at_zero(self):
        p = pth.ExponentialPath(1.0, 1.0, 1.0, 0.0, 1.0)
        assert p.eval(0.0) == (1.0, 1.0)

    def test_tabulated_midpoint(self):
        p = pth.TabulatedPath.from_knots([(0.0, (1.0, 2.0)), (1.0, (3.0, 1.0))])
        assert p.eval(0.5) == (2.0, 1.5)

    def test_outside_domain_rejected(self):
        with pytest.raises(ValueError):
            bridge_path().eval(1.5)

    def test_corner_path_legs(self):
        p = pth.VThenHPath(0.5, 1.0, 2.0, 4.0, 2.0, 0.0, 1.0)
        assert p.eval(0.25) == (1.0, 3.0)   # vertical leg
        assert p.eval(0.75) == (1.5, 2.0)   # horizontal leg
        assert p.eval(0.5) == (1.0, 2.0)


class TestConstruction:
    def test_monotonicity_enforced(self):
        with pytest.raises(ValueError):
            pth.TabulatedPath(np.array([0.0, 0.5, 1.0]),
                              np.array([1.0, 0.5, 2.0]),  # x dips
                              np.array([2.0, 1.5, 1.0]))
        with pytest.raises(ValueError):
            pth.LinearPath(0.0, -1.0, 1.0, 1.0, 0.0, 1.0)

    def test_positivity_on_interior(self):
        with pytest.raises(ValueError):
            pth.LinearPath(0.0, 1.0, 0.4, 1.0, 0.0, 1.0)  # y < 0 inside

    def test_some_coordinate_must_vary(self):
        with pytest.raises(ValueError):
            pth.TabulatedPath(np.array([0.0, 0.5, 1.0]),
                              np.full(3, 1.0), np.full(3, 2.0))

    def test_endpoint_zero_admitted(self):
        p = bridge_path()  # x(0) = 0 and y(1) = 0 are both fine
        assert p.eval(0.0) == (0.0, 1.0)
        assert p.eval(1.0) == (1.0, 0.0)


class TestClassify:
    def test_linear_bridge(self):
        cls = pth.classify(bridge_path())
        assert cls.tag is pth.PathTag.LINEAR
        assert cls.phi(0.5) == pytest.approx(0.25)
        assert cls.phi(1.0) == pytest.approx(0.0)  # pinned endpoints

    def test_exponential(self):
        cls = pth.classify(pth.ExponentialPath(1.0, 1.0, 1.0, 0.0, 2.0))
        assert cls.tag is pth.PathTag.EXPONENTIAL
        assert cls.phi(math.log(2.0)) == pytest.approx(1.0)

    def test_corner_needs_balanced_rates(self):
        ok = pth.VThenHPath(0.5, 1.0, 2.0, 4.0, 2.0, 0.0, 1.0)  # ac = bd = 4
        assert pth.classify(ok).tag is pth.PathTag.V_THEN_H
        bad = pth.VThenHPath(0.5, 1.0, 2.0, 4.0, 1.0, 0.0, 1.0)  # ac=4, bd=2
        assert pth.classify(bad).tag is pth.PathTag.NON_STATIONARY

    def test_horizontal_and_vertical(self):
        h = pth.HorizontalPath.affine(0.5, 2.0, 1.5, 0.0, 1.0)
        cls = pth.classify(h)
        assert cls.tag is pth.PathTag.HORIZONTAL
        assert cls.phi(0.5) == pytest.approx(1.5 * 2.0 * 0.5)
        v = pth.VerticalPath.affine(3.0, 1.0, 2.0, 0.0, 1.0)
        cls_v = pth.classify(v)
        assert cls_v.tag is pth.PathTag.VERTICAL
        assert cls_v.phi(0.5) == pytest.approx(2.0 * 1.0 * 0.5)

    def test_non_affine_horizontal_is_nonstationary(self):
        h = pth.HorizontalPath(1.0, lambda t: 0.5 + np.asarray(t) ** 2, 0.1, 1.0)
        assert pth.classify(h).tag is pth.PathTag.NON_STATIONARY

    def test_tabulated_quadratic_is_nonstationary(self):
        ts = np.linspace(0.1, 0.9, 64)
        tab = pth.TabulatedPath(ts, ts ** 2, 1.0 - ts)
        assert pth.classify(tab).tag is pth.PathTag.NON_STATIONARY

    @pytest.mark.parametrize("maker,tag", [
        (lambda ts: (0.2 + 1.3 * ts, 2.0 - 1.1 * ts), pth.PathTag.LINEAR),
        (lambda ts: (0.7 * np.exp(1.3 * ts), 1.1 * np.exp(-1.3 * ts)),
         pth.PathTag.EXPONENTIAL),
        (lambda ts: (0.5 + 2.0 * ts, np.full(ts.size, 1.4)), pth.PathTag.HORIZONTAL),
        (lambda ts: (np.full(ts.size, 1.4), 2.0 - 1.3 * ts), pth.PathTag.VERTICAL),
    ])
    def test_tabulated_recovery(self, maker, tag):
        ts = np.linspace(0.1, 0.9, 16)
        xs, ys = maker(ts)
        assert pth.classify(pth.TabulatedPath(ts, xs, ys)).tag is tag

    def test_tabulated_corner_recovery(self):
        corner = pth.VThenHPath(0.5, 1.0, 2.0, 4.0, 2.0, 0.0, 1.0)
        ts = np.linspace(0.0, 1.0, 17)  # knot at the corner
        tab = pth.TabulatedPath(ts, corner.x(ts), corner.y(ts))
        cls = pth.classify(tab)
        assert cls.tag is pth.PathTag.V_THEN_H
        assert cls.params["s_star"] == pytest.approx(0.5)

    def test_degenerate_tabulated_rejected(self):
        tab = pth.TabulatedPath(np.array([0.0, 1.0]), np.array([1.0, 2.0]),
                                np.array([2.0, 1.0]))
        with pytest.raises(ValueError):
            pth.classify(tab)

    def test_classify_invariant_under_rescaling(self):
        rng = np.random.default_rng(21)
        for path in (bridge_path(), pth.ExponentialPath(0.7, 1.1, 1.3, 0.0, 1.0),
                     pth.VThenHPath(0.5, 1.0, 2.0, 4.0, 2.0, 0.0, 1.0)):
            cls = pth.classify(path)
            for p in (0.5, 2.0, 3.7):
                other = pth.classify(pth.scaled(path, p))
                assert other.tag is cls.tag
                for u in rng.uniform(0.0, path.span, size=20):
                    assert other.phi(u) == pytest.approx(cls.phi(u), abs=1e-9)


class TestPhi:
    def test_nonnegative_on_lags(self):
        rng = np.random.default_rng(22)
        for path in (bridge_path(), pth.ExponentialPath(1.0, 0.5, 2.0, 0.0, 1.5),
                     pth.HorizontalPath.affine(0.1, 1.0, 2.0, 0.0, 1.0)):
            cls = pth.classify(path)
            us = rng.uniform(0.0, path.span, size=200)
            assert np.all(cls.phi(us) >= -1e-12)

    def test_phi_matches_functional_equation(self):
        rng = np.random.default_rng(23)
        path = pth.ExponentialPath(0.8, 1.2, 0.9, 0.0, 2.0)
        cls = pth.classify(path)
        s = rng.uniform(0.0, 2.0, size=1000)
        t = rng.uniform(0.0, 2.0, size=1000)
        s, t = np.minimum(s, t), np.maximum(s, t)
        keep = t > s
        lhs = pth.symmetric_increment_area(path, s[keep], t[keep])
        ph = cls.phi(t[keep] - s[keep])
        assert np.max(np.abs(lhs - ph) / np.maximum(1.0, np.abs(ph))) < 1e-9

    def test_zero_lag(self):
        for path in (bridge_path(), pth.ExponentialPath(1.0, 1.0, 1.0, 0.0, 1.0)):
            assert pth.classify(path).phi(0.0) == 0.0

    def test_rejects_nonstationary_and_bad_lag(self):
        cls = pth.PathClass(pth.PathTag.NON_STATIONARY, {}, 1.0)
        with pytest.raises(ValueError):
            pth.phi(cls, 0.5)
        good = pth.classify(bridge_path())
        with pytest.raises(ValueError):
            good.phi(2.0)  # outside the lag range


class TestEquivalent:
    def test_scaled_linear(self):
        p1 = bridge_path()
        p2 = pth.LinearPath(0.0, 2.0, 0.5, 0.5, 0.0, 1.0)
        assert pth.equivalent(p1, p2) == pytest.approx(2.0)

    def test_identity(self):
        assert pth.equivalent(bridge_path(), bridge_path()) == pytest.approx(1.0)

    def test_different_families(self):
        p2 = pth.ExponentialPath(1.0, 1.0, 1.0, 0.0, 1.0)
        assert pth.equivalent(bridge_path(), p2) is None

    def test_domain_mismatch(self):
        p2 = pth.LinearPath(0.0, 1.0, 1.5, 1.0, 0.0, 1.5)
        with pytest.raises(ValueError):
            pth.equivalent(bridge_path(), p2)


class TestTwoPieceGuard:
    def up(self):
        return pth.IncreasingPath(lambda t: np.asarray(t, float),
                                  lambda t: np.asarray(t, float), 0.0, 1.0)

    def down(self):
        return pth.LinearPath(0.0, 1.0, 2.0, 1.0, 1.0, 2.0)  # x=t, y=2-t on [1,2]

    def test_flags_nonstationary(self):
        verdict = pth.check_two_piece_nonstationary(self.up(), self.down(), 0.5, 1.5)
        assert verdict is pth.TwoPieceVerdict.NONSTATIONARY

    def test_inconclusive_when_levels_match(self):
        # y(junction) = 1 = y(s) at s = 1
        verdict = pth.check_two_piece_nonstationary(self.up(), self.down(), 1.0, 1.5)
        assert verdict is pth.TwoPieceVerdict.INCONCLUSIVE

    def test_junction_mismatch(self):
        shifted = pth.LinearPath(0.0, 1.0, 2.0, 1.0, 1.1, 2.0)
        with pytest.raises(ValueError):
            pth.check_two_piece_nonstationary(self.up(), shifted, 0.5, 1.5)

    def test_down_then_down_rejected(self):
        with pytest.raises(TypeError):
            pth.check_two_piece_nonstationary(self.down(), self.down(), 1.2, 1.5)


class TestSerialization:
    @pytest.mark.parametrize("path", [
        pth.LinearPath(0.0, 1.0, 1.0, 1.0, 0.0, 1.0),
        pth.ExponentialPath(0.7, 1.1, 1.3, 0.0, 2.0),
        pth.VThenHPath(0.5, 1.0, 2.0, 4.0, 2.0, 0.0, 1.0),
        pth.HorizontalPath.affine(0.5, 2.0, 1.5, 0.0, 1.0),
        pth.VerticalPath.affine(3.0, 1.0, 2.0, 0.0, 1.0),
        pth.TabulatedPath(np.array([0.0, 0.5, 1.0]), np.array([0.5, 1.0, 1.5]),
                          np.array([2.0, 1.5, 1.0])),
    ])
    def test_round_trip(self, path):
        spec = pth.path_to_dict(path)
        back = pth.path_from_dict(spec)
        assert pth.path_to_dict(back) == spec

    def test_missing_field_named(self):
        with pytest.raises(ValueError, match="form"):
            pth.path_from_dict({"a": 1.0})
        with pytest.raises(ValueError, match="t_hi"):
            pth.path_from_dict({"form": "linear", "a": 0, "b": 1, "c": 1,
                                "d": 1, "t_lo": 0})


@given(
    a=st.floats(0.0, 1.0), b=st.floats(0.5, 2.0),
    d=st.floats(0.5, 2.0), extra=st.floats(0.05, 1.0),
    u_frac=st.floats(0.01, 0.99),
)
def test_linear_phi_formula(a, b, d, extra, u_frac):
    c = d * 1.0 + extra
    path = pth.LinearPath(a, b, c, d, 0.0, 1.0)
    cls = pth.classify(path)
    u = u_frac * 1.0
    expected = (a * d + b * c) * u - b * d * u * u
    assert cls.phi(u) == pytest.approx(expected, rel=1e-12, abs=1e-12)
