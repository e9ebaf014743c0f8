#ifndef STOKES_ASYMPTOTICS_HPP
#define STOKES_ASYMPTOTICS_HPP

#include <array>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "stokes/polynomials.hpp"
#include "stokes/rabi_map.hpp"

namespace stokes {

// Large-|g| regime: E/g^2 -> E_a, Delta^2/g^4 -> Delta_a^2.
struct AsymptoticParams {
    double E_a = 0.0;
    double Delta_a = 0.0;  // >= 0

    bool valid() const { return std::isfinite(E_a) && std::isfinite(Delta_a) && Delta_a >= 0.0; }
};

enum class Region {
    I4,   // four distinct pure imaginary zeros
    C4,   // four fully complex zeros
    IR,   // two real in (-1,1) + two pure imaginary
    R4,   // four real in (-1,1)
    L_minus1,  // depressed: P_a(+-1) = 0
    L1,   // parabola Y = -X^2/4 - 1, X > 0
    L2,   // Y = X, X > 0
    L3,   // Y = -X, X > 0
    L4,   // X = 0, Y > -1
    L5,   // X = 0, Y < -1
    OriginPoint,       // (0, 0)
    TwoMinusTwoPoint,  // (2, -2)
};

inline const char* to_string(Region r) {
    switch (r) {
        case Region::I4: return "I4";
        case Region::C4: return "C4";
        case Region::IR: return "IR";
        case Region::R4: return "R4";
        case Region::L_minus1: return "L_minus1";
        case Region::L1: return "L1";
        case Region::L2: return "L2";
        case Region::L3: return "L3";
        case Region::L4: return "L4";
        case Region::L5: return "L5";
        case Region::OriginPoint: return "OriginPoint";
        case Region::TwoMinusTwoPoint: return "TwoMinusTwoPoint";
    }
    return "?";
}

struct AsymptoticModel {
    double c2 = 0.0;  // 2 E_a + Delta_a^2
    double c0 = 0.0;  // E_a^2 - Delta_a^2
    std::array<cplx, 4> zeros;  // e1, e2, e3 = -e2, e4 = -e1 (principal roots)
    QuarticCoeffs coeffs() const { return QuarticCoeffs{0.0, c2, 0.0, c0}; }
};

inline AsymptoticModel asymptotic_model(const AsymptoticParams& p) {
    if (!p.valid()) throw InvalidInputError("asymptotic_model: invalid parameters");
    AsymptoticModel m;
    const double Da = p.Delta_a, Ea = p.E_a;
    m.c2 = 2.0 * Ea + Da * Da;
    m.c0 = Ea * Ea - Da * Da;
    const cplx disc = std::sqrt(cplx(Da * Da + 4.0 * Ea + 4.0, 0.0));
    const cplx base = cplx(-0.5 * Da * Da - Ea, 0.0);
    m.zeros[0] = std::sqrt(base - 0.5 * Da * disc);
    m.zeros[1] = std::sqrt(base + 0.5 * Da * disc);
    m.zeros[2] = -m.zeros[1];
    m.zeros[3] = -m.zeros[0];
    return m;
}

inline Region asymptotic_region(const AsymptoticParams& p, double tol = 1e-12) {
    if (!p.valid()) throw InvalidInputError("asymptotic_region: invalid parameters");
    const double X = p.Delta_a, Y = p.E_a;
    auto near = [&](double a, double b) { return std::abs(a - b) <= tol * (1.0 + std::abs(a) + std::abs(b)); };

    // Boundary strata first.
    if (near(X, 0.0) && near(Y, 0.0)) return Region::OriginPoint;
    if (near(X, 2.0) && near(Y, -2.0)) return Region::TwoMinusTwoPoint;
    if (near(Y, -1.0) && X >= 0.0) return Region::L_minus1;
    if (X > 0.0 && near(Y, -0.25 * X * X - 1.0)) return Region::L1;
    if (X > 0.0 && near(Y, X)) return Region::L2;
    if (X > 0.0 && near(Y, -X)) return Region::L3;
    if (near(X, 0.0) && Y > -1.0) return Region::L4;
    if (near(X, 0.0) && Y < -1.0) return Region::L5;

    if (Y > X && X > 0.0) return Region::I4;
    if (X > 2.0 && Y > -1.0 - 0.25 * X * X && Y < -X) return Region::I4;
    if (X != 0.0 && Y < -0.25 * X * X - 1.0) return Region::C4;
    if (X > 0.0 && std::abs(Y) < X && Y != 0.0) return Region::IR;
    if (X > 0.0 && X < 2.0 && Y > -0.25 * X * X - 1.0 && Y < -X) return Region::R4;
    // Remaining sliver: X>0, 0 < Y < ... covered above; fall back by closest stratum.
    if (near(Y, 0.0) && X > 0.0) return Region::IR;  // Y=0 inside |Y|<X limit stratum of IR
    return Region::L4;
}

struct ConvergenceRow {
    double g = 0.0;
    double c3_mag = 0.0;
    double c1_mag = 0.0;
    double c2_err = 0.0;
    double c0_err = 0.0;
    double root_hausdorff = 0.0;
    bool skipped_depressed = false;
};

struct ConvergenceReport {
    std::vector<ConvergenceRow> rows;
    bool monotone = true;  // root distance decreases along the ladder
};

namespace detail {

inline double hausdorff(const std::vector<cplx>& A, const std::vector<cplx>& B) {
    double h = 0.0;
    for (const auto& a : A) {
        double d = 1e300;
        for (const auto& b : B) d = std::min(d, std::abs(a - b));
        h = std::max(h, d);
    }
    for (const auto& b : B) {
        double d = 1e300;
        for (const auto& a : A) d = std::min(d, std::abs(b - a));
        h = std::max(h, d);
    }
    return h;
}

} // namespace detail

// Finite-g convergence toward the asymptotic differential along a g-ladder,
// with Delta = Delta_a g^2 and E = E_a g^2.
inline ConvergenceReport limit_convergence(const AsymptoticParams& p,
                                           const std::vector<double>& g_values) {
    ConvergenceReport rep;
    AsymptoticModel model = asymptotic_model(p);
    std::vector<cplx> zlim(model.zeros.begin(), model.zeros.end());
    double prev = 1e300;
    for (double g : g_values) {
        ConvergenceRow row;
        row.g = g;
        RabiParams rp;
        rp.g_sq = g * g;
        rp.energy = p.E_a * g * g;
        rp.delta_sq = p.Delta_a * p.Delta_a * g * g * g * g;
        QuarticCoeffs c = coeffs_from_params(rp);
        row.c3_mag = std::abs(c.c3);
        row.c1_mag = std::abs(c.c1);
        row.c2_err = std::abs(c.c2 - model.c2);
        row.c0_err = std::abs(c.c0 - model.c0);
        const double scale = c.magnitude_scale();
        if (std::abs(c.eval(cplx(1, 0)).real()) < 1e-12 * scale
            || std::abs(c.eval(cplx(-1, 0)).real()) < 1e-12 * scale) {
            row.skipped_depressed = true;
            rep.rows.push_back(row);
            continue;
        }
        RootSet rs = solve_quartic(c, 1e-10);
        row.root_hausdorff = detail::hausdorff(rs.expanded(), zlim);
        if (row.root_hausdorff >= prev) rep.monotone = false;
        prev = row.root_hausdorff;
        rep.rows.push_back(row);
    }
    return rep;
}

} // namespace stokes

#endif
