"""Tests for the minimal solvers."""
import numpy as np
import pytest

from ackermann_rs.exceptions import DegenerateSampleError, SideMismatchError
from ackermann_rs.geometry import compensated_x, inverse_depth
from ackermann_rs.models import (
    CameraModel,
    PlausibilityBounds,
    RsModel,
    SegmentRs,
    SolverVariant,
)
from ackermann_rs.simulator import random_minimal_instance
from ackermann_rs.simulator.minimal import segment_from_gs_column
from ackermann_rs.solvers import (
    PlaneSide,
    SolverCandidate,
    build_constraint,
    least_absolute_root,
    one_line_candidates,
    real_roots_by_magnitude,
    solve_1la,
    solve_3la,
    solve_4la,
    solve_lambda,
)
from ackermann_rs.solvers.candidates import candidate_order, keep_plausible


@pytest.fixture
def camera():
    """Default synthetic camera."""
    return CameraModel.from_readout(640, 380, 816.0, 30.0, 0.4)


@pytest.fixture
def bounds(camera):
    """Default physical bounds."""
    return PlausibilityBounds.from_physical(camera)


def _matches(candidate: RsModel, truth: RsModel, bounds: PlausibilityBounds, tol: float) -> bool:
    """Parameters agree with alpha and beta measured against the box size."""
    if abs(candidate.alpha - truth.alpha) > tol * bounds.alpha_max:
        return False
    if abs(candidate.beta - truth.beta) > tol * bounds.beta_max:
        return False
    if truth.depth.delta is not None and abs(candidate.delta - truth.delta) > tol:
        return False
    if truth.depth.lambda_right is not None and abs(candidate.lam - truth.lam) > tol * max(
        1.0, truth.lam
    ):
        return False
    return True


class TestRoots:
    """Test univariate root extraction."""

    def test_sorted_by_magnitude(self):
        """Test real roots of x^2 - 2 come back by |root|, negative first on ties."""
        roots = real_roots_by_magnitude(np.array([-2.0, 0.0, 1.0]))

        assert roots == pytest.approx([-np.sqrt(2.0), np.sqrt(2.0)])

    def test_complex_roots_dropped(self):
        """Test x^2 + 1 has no real roots."""
        assert real_roots_by_magnitude(np.array([1.0, 0.0, 1.0])) == []

    def test_constant(self):
        """Test a constant has no roots."""
        assert real_roots_by_magnitude(np.array([3.0])) == []
        assert least_absolute_root(np.array([3.0, 0.0, 0.0])) is None

    def test_negligible_leading_coefficient(self):
        """Test a vanishing leading term does not create a huge spurious root."""
        roots = real_roots_by_magnitude(np.array([-1.0, 1.0, 1e-20]))

        assert roots == pytest.approx([1.0])

    def test_least_absolute_root(self):
        """Test (x - 2)(x - 3)."""
        assert least_absolute_root(np.array([6.0, -5.0, 1.0])) == pytest.approx(2.0)


class TestConstraints:
    """Test per-segment constraint polynomials."""

    def test_vertical_segment_zero_motion(self, camera):
        """Test a vertical segment satisfies the zero-motion constraint."""
        seg = SegmentRs.from_pixels(0, (150.0, 30.0), (150.0, 250.0), camera)
        con = build_constraint(seg, PlaneSide.LEFT)

        assert con.evaluate(0.0, 0.0, 0.0) == pytest.approx(0.0)
        assert con.a0[0] == pytest.approx(seg.bottom_n.x - seg.top_n.x)

    def test_cleared_denominators(self, camera):
        """Test g = D_u D_v (x'_v - x'_u) on both walls."""
        seg = SegmentRs.from_pixels(0, (150.0, 30.0), (158.0, 290.0), camera)
        alpha, beta, delta, lam = 1.5e-5, 5e-4, 0.1, 0.6
        xu, ru = seg.top_n.x, seg.rows[0]
        xv, rv = seg.bottom_n.x, seg.rows[1]
        d_u = 1.0 - 2.0 * xu * alpha * ru
        d_v = 1.0 - 2.0 * xv * alpha * rv

        for side, depth in (
            (PlaneSide.LEFT, RsModel.from_parameters(alpha, beta, delta, lam).depth),
            (PlaneSide.RIGHT, RsModel.from_parameters(alpha, beta, xu - 0.2, lam).depth),
        ):
            d = depth.delta
            cu = compensated_x(xu, ru, alpha, beta, inverse_depth(xu, depth))
            cv = compensated_x(xv, rv, alpha, beta, inverse_depth(xv, depth))
            g = build_constraint(seg, side).evaluate(alpha, beta, d, lam)
            assert g == pytest.approx(float(d_u * d_v * (cv - cu)), rel=1e-9, abs=1e-15)

    def test_degrees(self, camera):
        """Test total degrees of left and right constraints."""
        seg = SegmentRs.from_pixels(0, (150.0, 30.0), (158.0, 290.0), camera)

        assert build_constraint(seg, PlaneSide.LEFT).total_degree == 5
        assert build_constraint(seg, PlaneSide.RIGHT).total_degree == 6

    def test_lambda_coefficients(self, camera):
        """Test the right constraint is linear in lambda."""
        seg = SegmentRs.from_pixels(0, (450.0, 30.0), (452.0, 290.0), camera)
        con = build_constraint(seg, PlaneSide.RIGHT)
        q = con.lambda_coefficients(1e-5, 3e-4, 0.0)

        assert q[2] == 0.0
        assert q[0] + q[1] * 0.8 == pytest.approx(con.evaluate(1e-5, 3e-4, 0.0, 0.8))


class TestOneLine:
    """Test the pure-rotation solver."""

    def test_recovers_alpha(self, camera, bounds):
        """Test alpha is among the roots on noise-free instances."""
        rng = np.random.default_rng(11)
        for _ in range(20):
            inst = random_minimal_instance(SolverVariant.ONE_LINE, camera, bounds, rng)
            alphas = solve_1la(inst.segments[0])
            assert any(
                abs(a - inst.true_model.alpha) <= 1e-8 * bounds.alpha_max for a in alphas
            )
            assert len(alphas) <= 2

    def test_candidates_are_pure_rotation(self, camera, bounds):
        """Test wrapped candidates carry beta = 0 and no depth."""
        rng = np.random.default_rng(5)
        inst = random_minimal_instance(SolverVariant.ONE_LINE, camera, bounds, rng)
        cands = one_line_candidates(inst.segments[0], bounds)

        assert cands
        for cand in cands:
            assert cand.model.beta == 0.0
            assert cand.model.depth.delta is None
            assert abs(cand.model.alpha) <= bounds.alpha_max

    def test_vertical_segment_gives_zero(self, camera):
        """Test a vertical segment is explained by alpha = 0."""
        seg = SegmentRs.from_pixels(0, (200.0, 30.0), (200.0, 300.0), camera)

        assert solve_1la(seg)[0] == pytest.approx(0.0, abs=1e-15)


class TestThreeLine:
    """Test the pure-translation solver."""

    def test_left_pair(self, camera, bounds):
        """Test two left and one right segment recover (beta, delta, lambda)."""
        rng = np.random.default_rng(3)
        for _ in range(20):
            inst = random_minimal_instance(SolverVariant.THREE_LINE, camera, bounds, rng)
            cands = solve_3la(inst.segments[:2], inst.segments[2])
            assert len(cands) == 1
            assert _matches(cands[0].model, inst.true_model, bounds, 1e-6)
            assert cands[0].model.alpha == 0.0

    def test_right_pair(self, camera, bounds):
        """Test one left and two right segments recover the same model."""
        truth = RsModel.from_parameters(0.0, 0.5 * bounds.beta_max, 0.05, 0.8)
        left = segment_from_gs_column(0, -0.2, (-0.2, 0.2), truth, camera)
        right = [
            segment_from_gs_column(1, 0.15, (-0.18, 0.21), truth, camera),
            segment_from_gs_column(2, 0.3, (-0.15, 0.19), truth, camera),
        ]
        cands = solve_3la(right, left, side=PlaneSide.RIGHT)

        assert len(cands) == 1
        assert _matches(cands[0].model, truth, bounds, 1e-6)

    def test_singular_pair(self, camera):
        """Test a repeated segment makes the system singular."""
        seg = SegmentRs.from_pixels(0, (150.0, 30.0), (152.0, 290.0), camera)
        other = SegmentRs.from_pixels(1, (500.0, 30.0), (499.0, 290.0), camera)

        with pytest.raises(DegenerateSampleError):
            solve_3la([seg, seg], other)


class TestFourLine:
    """Test the general solver."""

    def test_recovers_truth(self, camera, bounds):
        """Test a candidate matches the planted model on noise-free instances."""
        rng = np.random.default_rng(2024)
        trials, hits = 40, 0
        for _ in range(trials):
            inst = random_minimal_instance(SolverVariant.FOUR_LINE, camera, bounds, rng)
            cands = solve_4la(inst.segments[:3], inst.segments[3], bounds)
            assert len(cands) <= 3
            hits += any(_matches(c.model, inst.true_model, bounds, 1e-6) for c in cands)

        assert hits >= 0.95 * trials

    def test_candidates_are_plausible(self, camera, bounds):
        """Test every returned candidate passes the plausibility filter."""
        rng = np.random.default_rng(8)
        inst = random_minimal_instance(SolverVariant.FOUR_LINE, camera, bounds, rng)

        for cand in solve_4la(inst.segments[:3], inst.segments[3], bounds):
            assert abs(cand.model.alpha) <= bounds.alpha_max
            assert abs(cand.model.beta) <= bounds.beta_max

    def test_degenerate_left_triple(self, camera):
        """Test three copies of one segment are rejected."""
        seg = SegmentRs.from_pixels(0, (150.0, 30.0), (152.0, 290.0), camera)
        right = SegmentRs.from_pixels(1, (500.0, 30.0), (499.0, 290.0), camera)

        with pytest.raises(DegenerateSampleError):
            solve_4la([seg, seg, seg], right)


class TestLambda:
    """Test the right-wall slope step."""

    def test_side_mismatch(self, camera):
        """Test a segment left of delta cannot be on the right wall."""
        seg = SegmentRs.from_pixels(0, (100.0, 30.0), (102.0, 290.0), camera)

        with pytest.raises(SideMismatchError):
            solve_lambda((0.0, 3e-4, 0.1), seg)

    def test_recovers_lambda(self, camera):
        """Test lambda of a segment generated with a known model."""
        truth = RsModel.from_parameters(1e-5, 5e-4, 0.0, 0.7)
        seg = segment_from_gs_column(0, 0.25, (-0.2, 0.2), truth, camera)
        sol = solve_lambda((truth.alpha, truth.beta, truth.delta), seg)

        assert not sol.degenerate
        assert sol.value == pytest.approx(0.7, rel=1e-6)


class TestCandidates:
    """Test candidate helpers."""

    def test_order(self):
        """Test exact candidates sort before inexact, then by |alpha|."""
        a = SolverCandidate(RsModel.from_parameters(3e-5, 1e-4), 2, 1.0, 0.0)
        b = SolverCandidate(RsModel.from_parameters(-1e-5, 1e-4), 2, 1.0, 1e-12)
        c = SolverCandidate(RsModel.from_parameters(0.0, 1e-4), 2, 1.0, 1e-3)

        assert sorted([c, a, b], key=candidate_order) == [b, a, c]

    def test_keep_plausible_none(self):
        """Test that no bounds keeps everything."""
        cands = [SolverCandidate(RsModel.from_parameters(1.0, 1.0), 1, 1.0)]

        assert keep_plausible(cands, None) == cands
