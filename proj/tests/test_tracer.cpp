#include <doctest.h>

#include "stokes/rabi_map.hpp"
#include "stokes/tracer.hpp"

using namespace stokes;

namespace {

QuadDiff finite_g_model(double Ea, double Da, double g) {
    RabiParams p;
    p.g_sq = g * g;
    p.energy = Ea * g * g;
    p.delta_sq = Da * Da * g * g * g * g;
    return QuadDiff::make(coeffs_from_params(p));
}

} // namespace

TEST_CASE("critical_directions: counts and spacing") {
    // simple zeros: z^4 - 5 z^2 + 4 has zeros +-1... collides with poles; use
    // a shifted quartic with four distinct zeros away from +-1.
    QuarticCoeffs c{0, -6.25, 0, 6.25};  // zeros +-sqrt(5/4)... compute via solver
    QuadDiff qd = QuadDiff::make(c);
    for (const auto& r : qd.roots.roots) {
        auto dirs = critical_directions(qd, r.value, r.multiplicity);
        REQUIRE(int(dirs.size()) == r.multiplicity + 2);
        if (r.multiplicity == 1) {
            // pairwise angle 2 pi / 3
            double a0 = std::arg(dirs[0]), a1 = std::arg(dirs[1]), a2 = std::arg(dirs[2]);
            double d1 = a1 - a0, d2 = a2 - a1;
            CHECK(d1 == doctest::Approx(2.0 * M_PI / 3.0).epsilon(1e-9));
            CHECK(d2 == doctest::Approx(2.0 * M_PI / 3.0).epsilon(1e-9));
        }
    }
}

TEST_CASE("critical_directions: double zero has four orthogonal rays") {
    // (z^2+1)^2: double zeros at +-i
    QuarticCoeffs c{0, 2, 0, 1};
    QuadDiff qd = QuadDiff::make(c, 1e-6);
    REQUIRE(qd.roots.roots.size() == 2);
    auto dirs = critical_directions(qd, qd.roots.roots[1].value, 2);
    REQUIRE(dirs.size() == 4);
    for (size_t i = 0; i + 1 < dirs.size(); ++i) {
        double d = std::arg(dirs[i + 1]) - std::arg(dirs[i]);
        CHECK(d == doctest::Approx(M_PI / 2.0).epsilon(1e-9));
    }
}

TEST_CASE("infinity has the two vertical critical directions") {
    auto dirs = infinity_directions();
    REQUIRE(dirs.size() == 2);
    CHECK(std::abs(dirs[0] - cplx(0, 1)) == 0.0);
    CHECK(std::abs(dirs[1] + cplx(0, 1)) == 0.0);
}

TEST_CASE("critical_directions rejects order zero") {
    QuadDiff qd = QuadDiff::make(QuarticCoeffs{0, 0, 0, 1});
    CHECK_THROWS_AS(critical_directions(qd, cplx(0.5, 0.5), 0), InvalidInputError);
}

TEST_CASE("real interval between adjacent real zeros is traced along the axis") {
    // Case III-1 geometry: four real zeros left of -1.
    // (z+2)(z+3)(z+4)(z+5) = z^4 + 14 z^3 + 71 z^2 + 154 z + 120
    QuarticCoeffs c{14, 71, 154, 120};
    QuadDiff qd = QuadDiff::make(c);
    // zeros sorted ascending: -5, -4, -3, -2; the trajectory interval is
    // (e1, e2) = (-5, -4).
    REQUIRE(qd.roots.roots.size() == 4);
    CHECK(qd.roots.roots[0].value.real() == doctest::Approx(-5.0));
    Trajectory t = trace_trajectory(0, cplx(1, 0), qd);
    CHECK(t.terminal.kind == TerminalKind::Zero);
    CHECK(t.terminal.zero_index == 1);
    for (const auto& z : t.points) CHECK(std::abs(z.imag()) < 1e-8);
    // cumulative Q-length is strictly increasing
    for (size_t i = 1; i < t.q_arc.size(); ++i) CHECK(t.q_arc[i] >= t.q_arc[i - 1]);
}

TEST_CASE("imaginary axis is an exact trajectory for asymptotic C4 coefficients") {
    // (Da, Ea) = (1, -3) lies in C4; the finite-g model stays symmetric enough
    // that a symmetric launch keeps Re z ~ 0.  Use the exact biquadratic.
    QuarticCoeffs c{0, 2.0 * (-3.0) + 1.0, 0, 9.0 - 1.0};
    QuadDiff qd = QuadDiff::make(c);
    // integrate the trajectory field from a point on the axis
    TraceOptions opts;
    cplx z(0.0, 0.1);
    cplx dir(0, 1);
    for (int step = 0; step < 2000 && std::abs(z) < 20.0; ++step) {
        cplx znew, dirnew;
        double err;
        REQUIRE(detail::Dopri5::step(qd.coeffs, z, dir, 0.01, znew, dirnew, err));
        z = znew;
        dir = dirnew;
        CHECK(std::abs(z.real()) < 1e-9);
    }
    CHECK(std::abs(z) >= 19.0);
}

TEST_CASE("trajectory into a radial pole terminates at the pole") {
    // Pattern (1,1,0) (II-3): zeros -2, 0.5 real and a conjugate pair; the
    // segment trajectories (e1,-1) and (-1,e2) end at the pole -1.
    // Build from zeros: -2, 0.5, 0.3 +- 0.9i.
    cplx e3(0.3, 0.9);
    QuarticCoeffs c = detail::quartic_from_zeros(cplx(-2, 0), cplx(0.5, 0), e3, std::conj(e3));
    QuadDiff qd = QuadDiff::make(c);
    CHECK(-qd.p0_at(-1.0) / 4.0 > 0.0);  // radial pole
    // launch from the zero at -2 toward the pole
    Trajectory t = trace_trajectory(0, cplx(1, 0), qd);
    CHECK(t.terminal.kind == TerminalKind::PoleMinus1);
    for (const auto& z : t.points) CHECK(std::abs(z.imag()) < 1e-8);
}

TEST_CASE("trace_all on case I parameters: twelve rays, conjugation closure") {
    QuadDiff qd = finite_g_model(-3.0, 1.0, 10.0);  // C4 -> case I-2 at finite g
    REQUIRE(qd.roots.roots.size() == 4);
    auto trajectories = trace_all(qd);
    // every ray terminated
    for (const auto& t : trajectories) CHECK(t.terminal.kind != TerminalKind::StepLimit);
    // endpoint budget: 12 ray-endpoints at zeros in total (n+2 each), and the
    // traced set is closed under conjugation
    int zero_endpoints = 0;
    for (const auto& t : trajectories) {
        zero_endpoints += 1;  // start
        if (t.terminal.kind == TerminalKind::Zero) zero_endpoints += 1;
    }
    CHECK(zero_endpoints == 12);
    for (const auto& t : trajectories) {
        // the mirrored polyline endpoint set must appear among the trajectories
        cplx s = std::conj(t.start);
        bool found = false;
        for (const auto& u : trajectories) {
            if (std::abs(u.start - s) < 1e-9
                || (u.terminal.kind == TerminalKind::Zero
                    && std::abs(qd.roots.roots[size_t(u.terminal.zero_index)].value - s) < 1e-9))
                found = true;
        }
        CHECK(found);
    }
}

TEST_CASE("symmetry exploitation does not change the traced configuration") {
    QuadDiff qd = finite_g_model(-0.5, 2.0, 100.0);  // IR -> II-2-a
    TraceOptions with_sym, without_sym;
    without_sym.exploit_symmetry = false;
    auto count_kinds = [&](const std::vector<Trajectory>& ts) {
        std::array<int, 6> n{};
        for (const auto& t : ts) n[size_t(t.terminal.kind)]++;
        return n;
    };
    auto a = trace_all(qd, with_sym);
    auto b = trace_all(qd, without_sym);
    CHECK(a.size() == b.size());
    CHECK(count_kinds(a) == count_kinds(b));
}

TEST_CASE("trajectory condition holds along traced rays") {
    QuadDiff qd = finite_g_model(2.0, 1.0, 10.0);  // I4 -> case I-1 at finite g
    auto trajectories = trace_all(qd);
    REQUIRE(!trajectories.empty());
    for (const auto& t : trajectories) {
        // chord midpoints against sqrt(Q0): |Im(sqrt(Q) dz)| / |sqrt(Q) dz|
        double worst = 0.0;
        for (size_t i = t.points.size() / 8; i + 1 < 7 * t.points.size() / 8; ++i) {
            cplx dz = t.points[i + 1] - t.points[i];
            if (std::abs(dz) == 0.0) continue;
            cplx mid = 0.5 * (t.points[i] + t.points[i + 1]);
            cplx w = std::sqrt(eval_Q0(mid, qd.coeffs)) * dz;
            if (std::abs(w) > 0.0) worst = std::max(worst, std::abs(w.imag()) / std::abs(w));
        }
        CHECK(worst < 1e-6);
    }
}
