#include <doctest.h>

#include <random>

#include "stokes/qdiff.hpp"
#include "stokes/rabi_map.hpp"
#include "oracles.hpp"

using namespace stokes;

TEST_CASE("eval_Q0: pinned values") {
    CHECK(std::abs(eval_Q0(cplx(0, 0), QuarticCoeffs{0, 0, 0, 0})) == doctest::Approx(0.0));
    // Q0 -> -1 at infinity
    cplx far = eval_Q0(cplx(1e6, 0), QuarticCoeffs{1, 2, 3, 4});
    CHECK(std::abs(far - cplx(-1, 0)) < 1e-5);
    // z = i, c = (0,0,0,1): P0(i) = 2, ((i-1)(i+1))^2 = 4 -> Q0 = -1/2
    cplx v = eval_Q0(cplx(0, 1), QuarticCoeffs{0, 0, 0, 1});
    CHECK(v.real() == doctest::Approx(-0.5));
    CHECK(v.imag() == doctest::Approx(0.0));
    CHECK_THROWS_AS(eval_Q0(cplx(1, 0), QuarticCoeffs{0, 0, 0, 1}), PoleEvaluationError);
}

TEST_CASE("eval_Q0 conjugation symmetry for real coefficients") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> U(-3.0, 3.0);
    for (int t = 0; t < 200; ++t) {
        QuarticCoeffs c{U(rng), U(rng), U(rng), U(rng)};
        cplx z(U(rng), U(rng));
        if (std::abs(z - cplx(1, 0)) < 0.1 || std::abs(z + cplx(1, 0)) < 0.1) continue;
        CHECK(std::abs(eval_Q0(std::conj(z), c) - std::conj(eval_Q0(z, c))) < 1e-12);
    }
}

TEST_CASE("pole_data: pinned example c=(0,0,0,3), k=1") {
    PoleData pd = pole_data(QuarticCoeffs{0, 0, 0, 3}, 1);
    CHECK(pd.alpha == doctest::Approx(-1.0));
    CHECK(pd.delta == doctest::Approx(2.0 * M_PI));
    CHECK(pd.delta_contour == doctest::Approx(pd.delta).epsilon(1e-6));
}

TEST_CASE("pole_data: depressed error when a zero hits the pole") {
    CHECK_THROWS_AS(pole_data(QuarticCoeffs{0, 0, 0, -1}, 1), DepressedError);
}

TEST_CASE("pole_data: closed form vs trapezoid contour oracle on random admissible sets") {
    std::mt19937 rng(19);
    std::uniform_real_distribution<double> U(-3.0, 3.0);
    int done = 0;
    while (done < 100) {
        QuarticCoeffs c{U(rng), U(rng), U(rng), U(rng)};
        const double scale = c.magnitude_scale();
        if (std::abs(c.eval(cplx(1, 0)).real()) < 1e-3 * scale) continue;
        if (std::abs(c.eval(cplx(-1, 0)).real()) < 1e-3 * scale) continue;
        RootSet rs = solve_quartic(c);
        bool clear = true;
        for (const auto& r : rs.roots) {
            clear &= std::abs(r.value - cplx(1, 0)) > 2.5e-2;
            clear &= std::abs(r.value - cplx(-1, 0)) > 2.5e-2;
        }
        if (!clear) continue;
        ++done;
        for (int k : {-1, 1}) {
            PoleData pd = pole_data(c, k);
            double oracle = oracles::contour_delta(c, k, 1e-2, 4096);
            CHECK(std::abs(pd.delta - oracle) < 1e-6 * pd.delta);
        }
    }
}

TEST_CASE("q_length basics") {
    QuarticCoeffs c{0, 0, 0, 1};
    SUBCASE("empty segment") {
        QLength q = q_length(cplx(0.3, 0.2), cplx(0.3, 0.2), c);
        CHECK(std::abs(q.value) == 0.0);
    }
    SUBCASE("Schwarz reflection: conjugated endpoints give the conjugate value up to sign") {
        cplx a(-0.4, 0.3), b(0.5, 0.7);
        QLength q = q_length(a, b, c);
        QLength qc = q_length(std::conj(a), std::conj(b), c);
        double d1 = std::abs(qc.value - std::conj(q.value));
        double d2 = std::abs(qc.value + std::conj(q.value));
        CHECK(std::min(d1, d2) < 1e-9 * (1.0 + std::abs(q.value)));
    }
    SUBCASE("matches a 10x-refined composite Simpson oracle") {
        std::mt19937 rng(29);
        std::uniform_real_distribution<double> U(-2.0, 2.0);
        int done = 0;
        while (done < 50) {
            QuarticCoeffs cc{U(rng), U(rng), U(rng), U(rng)};
            cplx a(U(rng), U(rng)), b(U(rng), U(rng));
            RootSet rs = solve_quartic(cc);
            bool clear = std::abs(a - b) > 0.1;
            for (const auto& r : rs.roots)
                clear &= detail::dist_point_segment(r.value, a, b) > 1e-2;
            for (double p : {-1.0, 1.0})
                clear &= detail::dist_point_segment(cplx(p, 0), a, b) > 1e-2;
            if (!clear) continue;
            ++done;
            QLength q = q_length(a, b, cc);
            cplx oracle = oracles::simpson_q_length(a, b, cc, 20000);
            double d1 = std::abs(q.value - oracle);
            double d2 = std::abs(q.value + oracle);
            CHECK(std::min(d1, d2) < 1e-8 * (1.0 + std::abs(oracle)));
        }
    }
    SUBCASE("additivity along a collinear chain") {
        cplx a(-0.5, 0.4), b(0.7, 1.0);
        cplx m = 0.5 * (a + b);
        QLength whole = q_length(a, b, c);
        QLength chain = q_length_chain({a, m, b}, c);
        CHECK(std::abs(whole.value - chain.value) < 1e-8 * (1.0 + std::abs(whole.value)));
    }
    SUBCASE("singular path error near a pole") {
        CHECK_THROWS_AS(q_length(cplx(0.5, 0), cplx(1.5, 0), c), SingularPathError);
    }
}

TEST_CASE("q_length path through a zero is refused") {
    QuarticCoeffs c{0, -5, 0, 4};  // zeros at +-1, +-2
    CHECK_THROWS_AS(q_length(cplx(1.7, 0.0), cplx(2.3, 0.0), c), SingularPathError);
}

TEST_CASE("QuadDiff::make refuses depressed input") {
    CHECK_THROWS_AS(QuadDiff::make(QuarticCoeffs{0, 0, 0, -1}), DepressedError);
    CHECK_NOTHROW(QuadDiff::make(QuarticCoeffs{0, 0, 0, 1}));
}

TEST_CASE("delta_k consistency over random admissible coefficients") {
    std::mt19937 rng(41);
    std::uniform_real_distribution<double> U(-2.5, 2.5);
    int done = 0;
    while (done < 100) {
        QuarticCoeffs c{U(rng), U(rng), U(rng), U(rng)};
        const double scale = c.magnitude_scale();
        if (std::abs(c.eval(cplx(1, 0)).real()) < 1e-2 * scale) continue;
        if (std::abs(c.eval(cplx(-1, 0)).real()) < 1e-2 * scale) continue;
        ++done;
        for (int k : {-1, 1}) {
            PoleData pd = pole_data(c, k);
            CHECK(std::abs(pd.delta - pd.delta_contour) < 1e-6 * (1.0 + pd.delta));
        }
    }
}
