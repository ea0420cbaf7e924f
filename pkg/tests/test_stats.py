import math
import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from flexglove import (
    ArgumentError,
    DegenerateRange,
    FingerStats,
    Frame,
    GraspObject,
    GraspSession,
    PreconditionViolation,
    Shape,
    build_cohort,
    collate,
    intervals_overlap,
    linear_fit,
    min_max_normalize,
    sem,
    session_mean,
)
from oracles import ols_oracle, sem_oracle


def constant_session(value, n=100, user="u01", shape=Shape.SPHERE, diameter=8.0):
    frames = [Frame(t_ms=i * 50, adc=(value,) * 5) for i in range(n)]
    return GraspSession(user_id=user, obj=GraspObject(shape, diameter), frames=frames)


class TestSessionMean:
    def test_constant(self):
        assert session_mean(constant_session(512), "ring") == 512.0

    def test_alternating(self):
        frames = [Frame(t_ms=i * 50, adc=(500 if i % 2 else 502,) * 5) for i in range(100)]
        session = GraspSession("u01", GraspObject(Shape.SPHERE, 8.0), frames)
        assert session_mean(session, "thumb") == 501.0

    def test_wrong_frame_count(self):
        with pytest.raises(PreconditionViolation):
            session_mean(constant_session(512, n=99), "ring")

    def test_unknown_finger(self):
        with pytest.raises(ArgumentError):
            session_mean(constant_session(512), "palm")


class TestMinMaxNormalize:
    def test_three_point_example(self):
        assert min_max_normalize({6: 600.0, 11: 450.0, 16: 300.0}) == {6: 1.0, 11: 0.5, 16: 0.0}

    def test_flat_input_is_degenerate(self):
        with pytest.raises(DegenerateRange):
            min_max_normalize({6: 700.0, 16: 700.0})

    def test_single_point_rejected(self):
        with pytest.raises(PreconditionViolation):
            min_max_normalize({6: 700.0})

    @given(
        st.lists(
            st.integers(min_value=0, max_value=1023), min_size=2, max_size=12, unique=True
        )
    )
    def test_endpoints_exact_and_order_preserved(self, raw):
        values = {float(i): float(v) for i, v in enumerate(raw)}
        normalized = min_max_normalize(values)
        assert min(normalized.values()) == 0.0
        assert max(normalized.values()) == 1.0
        keys = sorted(values)
        for a in keys:
            for b in keys:
                if values[a] < values[b]:
                    assert normalized[a] < normalized[b]

    @given(
        st.lists(st.integers(min_value=0, max_value=1023), min_size=2, max_size=12, unique=True),
        st.integers(min_value=-6, max_value=6),
        st.integers(min_value=-4096, max_value=4096),
    )
    def test_power_of_two_affine_invariance_is_bitwise(self, raw, k, b):
        # 2**k scaling and integer shifts are exact in binary floats, so the
        # normalized outputs must agree bit for bit, not just approximately.
        a = 2.0**k
        values = {float(i): float(v) for i, v in enumerate(raw)}
        transformed = {d: a * v + b for d, v in values.items()}
        assert min_max_normalize(values) == min_max_normalize(transformed)


class TestSem:
    def test_zero_variance(self):
        assert sem([0.5, 0.5, 0.5]) == 0.0

    def test_2_4_6(self):
        assert sem([2.0, 4.0, 6.0]) == pytest.approx(2.0 / math.sqrt(3.0), abs=1e-12)

    def test_translation_invariance(self):
        values = [0.13, 0.55, 0.72, 0.48]
        shifted = [v + 17.5 for v in values]
        assert sem(values) == pytest.approx(sem(shifted), abs=1e-12)

    def test_single_value_rejected(self):
        with pytest.raises(PreconditionViolation):
            sem([0.4])

    def test_matches_bruteforce_oracle(self):
        rng = random.Random(8)
        for _ in range(300):
            values = [rng.uniform(-50, 50) for _ in range(rng.randint(2, 12))]
            assert sem(values) == pytest.approx(sem_oracle(values), abs=1e-9)

    def test_matches_oracle_tightly_on_unit_scale(self):
        # normalized values live in [0, 1], where the two computations must
        # agree to 1e-12; this also covers the 1/sqrt(n) shrink exactly
        rng = random.Random(9)
        for _ in range(300):
            values = [rng.random() for _ in range(rng.randint(2, 12))]
            assert sem(values) == pytest.approx(sem_oracle(values), abs=1e-12)


class TestLinearFit:
    def test_exact_line(self):
        fit = linear_fit([(1, 1), (2, 2), (3, 3)])
        assert fit.slope == pytest.approx(1.0)
        assert fit.intercept == pytest.approx(0.0, abs=1e-12)
        assert fit.r2 == 1.0

    def test_zero_slope_zero_r2(self):
        fit = linear_fit([(0, 0), (1, 1), (2, 0)])
        assert fit.slope == pytest.approx(0.0, abs=1e-12)
        assert fit.intercept == pytest.approx(1.0 / 3.0)
        assert fit.r2 == pytest.approx(0.0, abs=1e-12)

    def test_constant_y_defines_r2_as_one(self):
        fit = linear_fit([(0, 2.0), (1, 2.0), (2, 2.0)])
        assert fit.slope == pytest.approx(0.0, abs=1e-12)
        assert fit.r2 == 1.0

    def test_y_negation_flips_slope_only(self):
        points = [(0, 0.2), (1, 0.9), (2, 1.3), (3, 2.9)]
        fit = linear_fit(points)
        neg = linear_fit([(x, -y) for x, y in points])
        assert neg.slope == pytest.approx(-fit.slope)
        assert neg.r2 == pytest.approx(fit.r2, abs=1e-12)

    def test_vertical_data_rejected(self):
        with pytest.raises(PreconditionViolation):
            linear_fit([(1, 0), (1, 5), (1, 9)])

    def test_matches_summation_oracle(self):
        rng = random.Random(13)
        for _ in range(300):
            n = rng.randint(2, 15)
            xs = random.sample(range(-100, 100), n)
            points = [(float(x), rng.uniform(-20, 20)) for x in xs]
            fit = linear_fit(points)
            slope, intercept, r2 = ols_oracle(points)
            assert fit.slope == pytest.approx(slope, abs=1e-9)
            assert fit.intercept == pytest.approx(intercept, abs=1e-9)
            assert fit.r2 == pytest.approx(r2, abs=1e-9)

    def test_matches_numpy(self):
        rng = random.Random(21)
        for _ in range(50):
            xs = random.sample(range(0, 60), 8)
            points = [(float(x), rng.uniform(0, 1)) for x in xs]
            fit = linear_fit(points)
            slope, intercept = np.polyfit([p[0] for p in points], [p[1] for p in points], 1)
            assert fit.slope == pytest.approx(slope, abs=1e-9)
            assert fit.intercept == pytest.approx(intercept, abs=1e-9)


class TestCollate:
    def test_two_user_cell(self):
        key = (Shape.CYLINDER, 8.0, "pinky")
        table = collate({"a": {key: 0.4}, "b": {key: 0.6}})
        st_ = table.stats(key)
        assert st_.mean == pytest.approx(0.5)
        assert st_.n == 2

    def test_single_user_cell_rejected(self):
        with pytest.raises(PreconditionViolation):
            collate({"a": {(Shape.SPHERE, 8.0, "ring"): 0.4}})

    def test_default_sphere_cells_have_eleven_users(self, default_table):
        for d in default_table.diameters(Shape.SPHERE):
            assert default_table.stats((Shape.SPHERE, d, "ring")).n == 11

    def test_default_cylinder_has_no_10cm_cell(self, default_table):
        assert 10.0 not in default_table.diameters(Shape.CYLINDER)
        for d in default_table.diameters(Shape.CYLINDER):
            assert default_table.stats((Shape.CYLINDER, d, "index")).n == 8


class TestIntervalsOverlap:
    def test_disjoint(self):
        assert not intervals_overlap(FingerStats(0.4, 0.05, 3), FingerStats(0.6, 0.05, 3))

    def test_touching_counts_as_overlap(self):
        assert intervals_overlap(FingerStats(0.4, 0.1, 3), FingerStats(0.6, 0.1, 3))

    def test_reflexive(self):
        a = FingerStats(0.37, 0.02, 5)
        assert intervals_overlap(a, a)

    @given(
        st.floats(min_value=0, max_value=1),
        st.floats(min_value=0, max_value=0.3),
        st.floats(min_value=0, max_value=1),
        st.floats(min_value=0, max_value=0.3),
    )
    def test_symmetric(self, m1, s1, m2, s2):
        a, b = FingerStats(m1, s1, 4), FingerStats(m2, s2, 4)
        assert intervals_overlap(a, b) == intervals_overlap(b, a)


class TestBuildCohort:
    def test_tiny_synthetic_pipeline(self):
        sessions = []
        for user, bump in (("a", 0), ("b", 5)):
            for d, v in ((6.0, 700), (11.0, 500), (16.0, 300)):
                sessions.append(
                    constant_session(v + bump, user=user, shape=Shape.SPHERE, diameter=d)
                )
        table = build_cohort(sessions)
        mid = table.stats((Shape.SPHERE, 11.0, "middle"))
        assert mid.mean == pytest.approx(0.5)
        assert mid.n == 2
        assert table.stats((Shape.SPHERE, 6.0, "middle")).mean == 1.0
        assert table.stats((Shape.SPHERE, 16.0, "middle")).mean == 0.0
        # raw scale context records the cohort-average sweep extremes
        assert table.raw_scale[(Shape.SPHERE, "middle")] == (302.5, 702.5)

    def test_duplicate_session_rejected(self):
        sessions = [constant_session(500), constant_session(510)]
        with pytest.raises(ArgumentError):
            build_cohort(sessions)

    def test_no_sessions_rejected(self):
        with pytest.raises(ArgumentError):
            build_cohort([])
