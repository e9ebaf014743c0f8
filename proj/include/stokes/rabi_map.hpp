#ifndef STOKES_RABI_MAP_HPP
#define STOKES_RABI_MAP_HPP

#include <cmath>
#include <optional>
#include <random>
#include <string>

#include "stokes/errors.hpp"
#include "stokes/polynomials.hpp"

namespace stokes {

// Physical parameters.  Delta enters every formula only through its square,
// so the square is what we store; g is represented by g^2 (negative g^2
// means pure imaginary coupling).
struct RabiParams {
    double delta_sq = 0.0;  // Delta^2 >= 0
    double energy = 0.0;    // E
    double g_sq = 1.0;      // g^2 != 0

    bool finite() const {
        return std::isfinite(delta_sq) && std::isfinite(energy) && std::isfinite(g_sq);
    }
};

// Garnier-form data: t = -4 g^2, theta = E + g^2, and the a_k coefficients of
// the unrescaled numerator.
struct GarnierModel {
    double t = 0.0;
    double theta = 0.0;
    double a3 = 0.0, a2 = 0.0, a1 = 0.0, a0 = 0.0;
    double rescale_check_rel_err = 0.0;  // worst pointwise error of the substitution identity
};

// A point of the parabolic cylinder S(a): a = c3, (X,Y,Z) = (c2,c1,c0),
// c = a^2 Delta^2.
struct CylinderPoint {
    double a = 0.0;
    double X = 0.0, Y = 0.0, Z = 0.0;
    double c = 0.0;
};

enum class SpecialMode {
    VerticalLine,            // zeros alpha +- i beta_{1,2}
    CircleCentered,          // zeros r e^{+-i theta_{1,2}}
    SymRealPairComplexPair,  // zeros -alpha, alpha, delta +- i beta
    SymRealQuadruple,        // zeros -alpha, alpha, delta -+ beta (all real)
    HorizontalLines,         // zeros on Im z = +-beta (never Rabi-feasible)
    TwoRays,                 // zeros on two conjugate rays (never Rabi-feasible)
};

inline const char* to_string(SpecialMode m) {
    switch (m) {
        case SpecialMode::VerticalLine: return "VerticalLine";
        case SpecialMode::CircleCentered: return "CircleCentered";
        case SpecialMode::SymRealPairComplexPair: return "SymRealPairComplexPair";
        case SpecialMode::SymRealQuadruple: return "SymRealQuadruple";
        case SpecialMode::HorizontalLines: return "HorizontalLines";
        case SpecialMode::TwoRays: return "TwoRays";
    }
    return "?";
}

struct SpecialConfig {
    SpecialMode mode = SpecialMode::VerticalLine;
    double alpha = 0.0;   // VerticalLine, SymReal*, HorizontalLines
    double beta1 = 0.0;   // VerticalLine (lower |Im|), HorizontalLines (line height)
    double r = 1.0;       // CircleCentered radius; also r1 for TwoRays
    double theta1 = 0.0;  // CircleCentered, TwoRays
    double delta = 0.0;   // SymReal*, HorizontalLines (half-separation)
};

struct SpecialConfigResult {
    bool feasible = false;
    std::string reason;          // violated condition, when infeasible
    double witness = 0.0;        // contradiction witness for the impossible modes
    RabiParams params;           // when feasible
    // Derived geometry, mode dependent:
    double beta2 = 0.0;          // VerticalLine
    double theta2 = 0.0;         // CircleCentered
    double beta_sq = 0.0;        // SymReal* (beta^2)
    QuarticCoeffs coeffs;        // quartic built from the prescribed zeros
};

struct ParamsRecovery {
    bool feasible = false;
    std::string reason;
    double residual = 0.0;       // cylinder residual of the input
    RabiParams params;           // delta_sq carries Delta^2; both signs of Delta map to it
};

// ---------------------------------------------------------------------------
// Coefficient maps.
// ---------------------------------------------------------------------------
inline QuarticCoeffs coeffs_from_params(const RabiParams& p) {
    if (!p.finite()) throw InvalidInputError("coeffs_from_params: non-finite parameter");
    if (p.g_sq == 0.0)
        throw InfiniteCouplingError("coeffs_from_params: g^2 = 0 (asymptotic regime)");
    const double g2 = p.g_sq, g4 = g2 * g2;
    const double D2 = p.delta_sq, E = p.energy;
    QuarticCoeffs c;
    c.c3 = 1.0 / g2;
    c.c2 = (8.0 * E * g2 + 4.0 * D2 + 4.0 * g2 - 1.0) / (4.0 * g4);
    c.c1 = -(4.0 * g2 + 2.0 * E + 1.0) / (2.0 * g4);
    c.c0 = -(4.0 * D2 - 4.0 * E * E - 4.0 * E + 1.0) / (4.0 * g4);
    return c;
}

// Physical-form invariants.  The R0 and S0 expansions are the corrected ones
// (the printed versions fail the dual-formula identity; see the test suite,
// which pins both routes against each other).
inline LagrangeInvariants invariants_from_params(const RabiParams& p) {
    if (!p.finite()) throw InvalidInputError("invariants_from_params: non-finite parameter");
    if (p.g_sq == 0.0)
        throw InfiniteCouplingError("invariants_from_params: g^2 = 0 (asymptotic regime)");
    const double g2 = p.g_sq;
    const double g4 = g2 * g2, g6 = g4 * g2, g8 = g4 * g4, g10 = g8 * g2, g12 = g8 * g4;
    const double D2 = p.delta_sq, E = p.energy;
    const double D4 = D2 * D2, D6 = D4 * D2, D8 = D6 * D2, D10 = D8 * D2;
    const double E2 = E * E, E3 = E2 * E, E4 = E3 * E, E5 = E4 * E;

    LagrangeInvariants v;
    const double bracket =
        1024 * D6 * g8 - 1024 * D4 * E2 * g8 + 2048 * D6 * E * g6 - 2048 * D4 * E3 * g6
        - 1024 * D4 * E * g8 + 4608 * D2 * E * g10 - 4096 * E3 * g10 + 512 * D8 * g4
        + 512 * D6 * E2 * g4 + 1024 * D6 * g6 - 1024 * D4 * E4 * g4 - 3072 * D4 * E2 * g6
        + 2048 * D4 * g8 + 7680 * D2 * E2 * g8 + 2304 * D2 * g10 - 8192 * E4 * g8
        - 6144 * E2 * g10 + 1728 * g12 + 512 * D8 * E * g2 - 512 * D6 * E3 * g2
        + 512 * D6 * E * g4 - 2048 * D4 * E3 * g4 + 3328 * D4 * E * g6 + 1536 * D2 * E3 * g6
        + 7680 * D2 * E * g8 - 4096 * E5 * g6 - 16384 * E3 * g8 + 3840 * E * g10 + 64 * D10
        - 64 * D8 * E2 + 256 * D8 * g2 - 768 * D6 * E2 * g2 + 512 * D6 * g4
        + 1024 * D4 * E2 * g4 + 2176 * D4 * g6 - 1536 * D2 * E4 * g4 + 2304 * D2 * E2 * g6
        + 2208 * D2 * g8 - 10240 * E4 * g6 - 2688 * E2 * g8 + 2944 * g10 - 64 * D8 * E
        - 224 * D6 * E * g2 + 256 * D4 * E3 * g2 + 2048 * D4 * E * g4 - 3072 * D2 * E3 * g4
        + 672 * D2 * E * g6 - 3840 * E3 * g6 + 5504 * E * g8 - 64 * D8 + 96 * D6 * E2
        + 16 * D6 * g2 + 384 * D4 * E2 * g2 - 52 * D4 * g4 - 1440 * D2 * E2 * g4
        - 48 * D2 * g6 + 960 * E4 * g4 + 4480 * E2 * g6 + 1024 * g8 + 96 * D6 * E
        - 40 * D4 * E * g2 + 96 * D2 * E3 * g2 + 96 * D2 * E * g4 + 1920 * E3 * g4
        + 1744 * E * g6 + 20 * D6 - 52 * D4 * E2 - 84 * D4 * g2 + 144 * D2 * E2 * g2
        + 60 * D2 * g4 + 672 * E2 * g4 - 216 * g6 - 52 * D4 * E + 72 * D2 * E * g2
        - 48 * E3 * g2 - 288 * E * g4 - 2 * D4 + 12 * D2 * E2 + 12 * D2 * g2 - 72 * E2 * g2
        - 25 * g4 + 12 * D2 * E - 26 * E * g2 - E2 - g2 - E;
    v.D0 = -bracket / (4.0 * g10 * g10);
    v.Pc = (16 * E * g2 + 8 * D2 + 8 * g2 - 5) / g4;
    v.Qc = -8.0 / g8
           * (8 * D2 * g4 + 8 * D2 * E * g2 + 2 * D4 + 4 * D2 * g2 - 8 * E * g2 - 3 * D2
              - 4 * g2 + 1);
    v.R0 = (2 - 16 * g4 - 16 * E * g2 - 4 * D2 - 8 * g2) / g6;
    v.S0 = (1 - 192 * D2 * g4 + 256 * E2 * g4 + 64 * D2 * E * g2 + 256 * E * g4 + 16 * D4
            + 32 * D2 * g2 + 64 * g4 + 32 * E * g2 - 8 * D2 + 16 * g2)
           / (16 * g8);
    return v;
}

// Cylinder residual (Y+a)^2 - a^2 X - a^2 Z - (a^2/4)(4+3a^2) with a = c3.
inline double cylinder_residual(const QuarticCoeffs& c) {
    const double a = c.c3, X = c.c2, Y = c.c1, Z = c.c0;
    return (Y + a) * (Y + a) - a * a * X - a * a * Z - 0.25 * a * a * (4.0 + 3.0 * a * a);
}

inline CylinderPoint cylinder_point(const QuarticCoeffs& c, double delta_sq) {
    CylinderPoint pt;
    pt.a = c.c3;
    pt.X = c.c2;
    pt.Y = c.c1;
    pt.Z = c.c0;
    pt.c = pt.a * pt.a * delta_sq;
    return pt;
}

// ---------------------------------------------------------------------------
// params_from_coeffs: invert the coefficient map when the quadruple lies on
// the parabolic cylinder.
// ---------------------------------------------------------------------------
inline ParamsRecovery params_from_coeffs(const QuarticCoeffs& cf, double tol = 1e-8) {
    ParamsRecovery rec;
    rec.residual = cylinder_residual(cf);
    if (cf.c3 == 0.0) {
        rec.reason = "c3 = 0: biquadratic numerator does not occur for finite g";
        return rec;
    }
    const double a = cf.c3;
    const double scale = std::pow(1.0 + std::abs(a), 4) + cf.c1 * cf.c1 + std::abs(cf.c2)
                       + std::abs(cf.c0);
    if (std::abs(rec.residual) > tol * scale) {
        rec.reason = "cylinder residual exceeds tolerance";
        return rec;
    }
    const double E = -(2.0 * cf.c1 + a * a + 4.0 * a) / (2.0 * a * a);
    const double c = cf.c2 + (8.0 * cf.c1 + a * a * a + 16.0 * a) / (4.0 * a);  // = a^2 Delta^2
    if (c < -1e-12 * (1.0 + std::abs(cf.c2))) {
        rec.reason = "recovered a^2 Delta^2 is negative";
        return rec;
    }
    rec.feasible = true;
    rec.params.g_sq = 1.0 / a;
    rec.params.energy = E;
    rec.params.delta_sq = std::max(0.0, c) / (a * a);
    return rec;
}

// ---------------------------------------------------------------------------
// mirror_params: reflection of the zero set across the imaginary axis,
// realized by (Delta, E, g) -> (Delta, -(E+1), i g).
// ---------------------------------------------------------------------------
inline RabiParams mirror_params(const RabiParams& p) {
    RabiParams m = p;
    m.energy = -(p.energy + 1.0);
    m.g_sq = -p.g_sq;
    return m;
}

// ---------------------------------------------------------------------------
// garnier_coeffs: the unrescaled model and the substitution identity
// Q0(w) = 4 Q((t/2)(1-w), t), validated at 32 pseudo-random sample points.
// ---------------------------------------------------------------------------
inline GarnierModel garnier_coeffs(const RabiParams& p) {
    if (p.g_sq == 0.0) throw InfiniteCouplingError("garnier_coeffs: g^2 = 0");
    GarnierModel m;
    m.t = -4.0 * p.g_sq;
    m.theta = p.energy + p.g_sq;
    const double t = m.t, th = m.theta, D2 = p.delta_sq;
    m.a3 = -2.0 * t + 2.0;
    m.a2 = t * t - t * (2.0 * th + 4.0) + 4.0 * D2 - 1.0;
    m.a1 = t * t * (2.0 * th + 2.0) - t * (4.0 * D2 - 2.0 * th - 2.0);
    m.a0 = t * t * (th * th - 1.0);

    const QuarticCoeffs c0 = coeffs_from_params(p);
    std::mt19937 rng(0x5eedu);
    std::uniform_real_distribution<double> U(-2.0, 2.0);
    double worst = 0.0;
    for (int k = 0; k < 32; ++k) {
        cplx w(U(rng), U(rng));
        if (std::abs(w - cplx(1, 0)) < 0.1 || std::abs(w + cplx(1, 0)) < 0.1) {
            --k;
            continue;
        }
        cplx q0 = -c0.eval(w) / ((w - 1.0) * (w - 1.0) * (w + 1.0) * (w + 1.0));
        cplx z = 0.5 * t * (1.0 - w);
        cplx num = (((z + m.a3) * z + m.a2) * z + m.a1) * z + m.a0;
        cplx qg = -0.25 * num / (z * z * (z - t) * (z - t));
        double err = std::abs(q0 - 4.0 * qg) / std::max(1.0, std::abs(q0));
        worst = std::max(worst, err);
    }
    m.rescale_check_rel_err = worst;
    if (worst > 1e-9)
        throw StokesError("garnier_coeffs: rescaling identity violated (rel err "
                          + std::to_string(worst) + ")");
    return m;
}

// ---------------------------------------------------------------------------
// special_config_solve: the partially-symmetric zero configurations.
// ---------------------------------------------------------------------------
namespace detail {

inline QuarticCoeffs quartic_from_zeros(cplx e1, cplx e2, cplx e3, cplx e4) {
    cplx s1 = e1 + e2 + e3 + e4;
    cplx s2 = e1 * e2 + e1 * e3 + e1 * e4 + e2 * e3 + e2 * e4 + e3 * e4;
    cplx s3 = e1 * e2 * e3 + e1 * e2 * e4 + e1 * e3 * e4 + e2 * e3 * e4;
    cplx s4 = e1 * e2 * e3 * e4;
    QuarticCoeffs c;
    c.c3 = -s1.real();
    c.c2 = s2.real();
    c.c1 = -s3.real();
    c.c0 = s4.real();
    return c;
}

} // namespace detail

inline SpecialConfigResult special_config_solve(const SpecialConfig& s) {
    SpecialConfigResult out;
    switch (s.mode) {
        case SpecialMode::VerticalLine: {
            if (!(s.alpha > 0.0)) { out.reason = "requires alpha > 0"; return out; }
            if (!(s.beta1 >= 0.0)) { out.reason = "requires beta1 >= 0"; return out; }
            const double rad = s.beta1 * s.beta1 - 8.0 * s.alpha;
            if (rad <= 0.0) {
                out.reason = "beta1^2 - 8 alpha <= 0: printed beta2 formula has no real value";
                out.witness = rad;
                return out;
            }
            out.beta2 = std::sqrt(rad);
            const double al = s.alpha, b1 = s.beta1;
            out.params.g_sq = 1.0 / (-4.0 * al);
            out.params.energy = (al * al - 6.0 * al + 2.0 + b1 * b1) / (4.0 * al);
            out.params.delta_sq = (3.0 * al * al - 4.0 * al + 1.0 + b1 * b1) / (4.0 * al * al);
            if (out.params.delta_sq < 0.0) { out.reason = "Delta^2 < 0"; return out; }
            out.coeffs = detail::quartic_from_zeros(cplx(al, b1), cplx(al, out.beta2),
                                                    cplx(al, -b1), cplx(al, -out.beta2));
            out.feasible = true;
            return out;
        }
        case SpecialMode::CircleCentered: {
            if (!(s.r > 0.0)) { out.reason = "requires r > 0"; return out; }
            if (!(s.theta1 >= 0.0 && s.theta1 < M_PI / 2.0)) {
                out.reason = "requires 0 <= theta1 < pi/2";
                return out;
            }
            const double al = std::cos(s.theta1) / 3.0;
            if (std::abs(std::cos(s.theta1)) < 1e-14) {
                out.reason = "cos(theta1) = 0 forces g^{-2} = 0";
                return out;
            }
            out.theta2 = M_PI - std::acos(al);
            const double r = s.r;
            out.params.g_sq = 1.0 / (-4.0 * r * al);
            out.params.energy = (r * r - 2.0 * r * al + 2.0) / (4.0 * r * al);
            out.params.delta_sq = (r * r + 1.0 - 2.0 * r * r * al * al) / (4.0 * r * r * al * al);
            if (out.params.delta_sq < 0.0) { out.reason = "Delta^2 < 0"; return out; }
            const cplx e1 = std::polar(r, s.theta1), e2 = std::polar(r, out.theta2);
            out.coeffs = detail::quartic_from_zeros(e1, e2, std::conj(e1), std::conj(e2));
            out.feasible = true;
            return out;
        }
        case SpecialMode::SymRealPairComplexPair: {
            const double al = s.alpha, d = s.delta;
            if (!(al > 0.0)) { out.reason = "requires alpha > 0"; return out; }
            if (d == 0.0) { out.reason = "requires delta != 0 (g^{-2} = -2 delta)"; return out; }
            const double lo = std::sqrt(8.0 / 5.0), hi = std::sqrt(2.0);
            const double d2 = d * d;
            bool cond_a = (al > 1.0 && al < lo) || (al > hi && al < 2.0);
            bool cond_b = (al >= lo && al <= hi);
            if (cond_a) {
                double need = al * al * (al * al - 1.0) / (4.0 - al * al);
                if (!(d2 > need)) {
                    out.reason = "condition (a) violated: delta^2 <= alpha^2(alpha^2-1)/(4-alpha^2)";
                    return out;
                }
            } else if (cond_b) {
                double need = 4.0 * (al * al - 1.0) * (al * al - 1.0) / (al * al + 2.0);
                if (!(d2 > need)) {
                    out.reason = "condition (b) violated: delta^2 <= 4(alpha^2-1)^2/(alpha^2+2)";
                    return out;
                }
            } else {
                out.reason = "alpha outside (1,2): no admissible branch of conditions (a)/(b)";
                return out;
            }
            out.beta_sq = ((4.0 - al * al) * d2 - al * al * (al * al - 1.0)) / (al * al - 1.0);
            out.params.g_sq = 1.0 / (-2.0 * d);
            out.params.energy = -(d + al * al - 2.0) / (2.0 * d);
            out.params.delta_sq = ((al * al + 2.0) * d2 - 4.0 * (al * al - 1.0) * (al * al - 1.0))
                                  / (4.0 * d2 * (al * al - 1.0));
            const double b = std::sqrt(out.beta_sq);
            out.coeffs = detail::quartic_from_zeros(cplx(-al, 0), cplx(al, 0), cplx(d, b),
                                                    cplx(d, -b));
            out.feasible = true;
            return out;
        }
        case SpecialMode::SymRealQuadruple: {
            const double al = s.alpha, d = s.delta;
            if (!(al > 0.0)) { out.reason = "requires alpha > 0"; return out; }
            if (!(d > 0.0)) { out.reason = "requires delta > 0"; return out; }
            const double lo = std::sqrt(8.0 / 5.0), hi = std::sqrt(2.0);
            const double d2 = d * d;
            const double f1 = (al == 2.0) ? INFINITY
                                          : al * al * (al * al - 1.0) / (4.0 - al * al);
            const double f2 = 4.0 * (al * al - 1.0) * (al * al - 1.0) / (al * al + 2.0);
            bool ok = false;
            if (al < 1.0) ok = (d2 <= f2);
            else if ((al > 1.0 && al <= lo) || (al >= hi && al <= 2.0)) ok = (d2 >= f2 && d2 < f1);
            else if (al > 2.0) ok = (d2 >= f2);
            if (!ok) {
                out.reason = "conditions (a)/(b)/(c) violated for (alpha, delta)";
                return out;
            }
            out.beta_sq = -((4.0 - al * al) * d2 - al * al * (al * al - 1.0)) / (al * al - 1.0);
            if (out.beta_sq < 0.0) { out.reason = "beta^2 < 0"; return out; }
            out.params.g_sq = 1.0 / (-2.0 * d);
            out.params.energy = -(d + al * al - 2.0) / (2.0 * d);
            out.params.delta_sq = ((al * al + 2.0) * d2 - 4.0 * (al * al - 1.0) * (al * al - 1.0))
                                  / (4.0 * d2 * (al * al - 1.0));
            if (out.params.delta_sq < 0.0) { out.reason = "Delta^2 < 0"; return out; }
            const double b = std::sqrt(out.beta_sq);
            out.coeffs = detail::quartic_from_zeros(cplx(-al, 0), cplx(al, 0), cplx(d - b, 0),
                                                    cplx(d + b, 0));
            out.feasible = true;
            return out;
        }
        case SpecialMode::HorizontalLines: {
            // Solving the cylinder equations for this layout forces
            // delta^2 = -(1/4) a^2 / beta^2 < 0 with a = -4 alpha.
            const double a = -4.0 * s.alpha;
            const double beta = (s.beta1 != 0.0) ? s.beta1 : 1.0;
            out.witness = -0.25 * a * a / (beta * beta);
            out.reason = "infeasible for all inputs: delta^2 = -(a^2/4)/beta^2 < 0";
            return out;
        }
        case SpecialMode::TwoRays: {
            const double t = std::cos(s.theta1);
            // Reduced discriminant of (1+3t^2) y^2 + 2(5t^2-1) y + (1+3t^2) = 0.
            out.witness = 16.0 * t * t * (t * t - 1.0);
            out.reason = "infeasible for all inputs: ratio equation has negative discriminant";
            return out;
        }
    }
    out.reason = "unknown mode";
    return out;
}

} // namespace stokes

#endif
