#ifndef STOKES_TRACER_HPP
#define STOKES_TRACER_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <vector>

#include "stokes/errors.hpp"
#include "stokes/qdiff.hpp"

namespace stokes {

enum class TerminalKind { Zero, PoleMinus1, PolePlus1, InfinityUp, InfinityDown, StepLimit };

inline const char* to_string(TerminalKind t) {
    switch (t) {
        case TerminalKind::Zero: return "zero";
        case TerminalKind::PoleMinus1: return "pole-1";
        case TerminalKind::PolePlus1: return "pole+1";
        case TerminalKind::InfinityUp: return "inf-up";
        case TerminalKind::InfinityDown: return "inf-down";
        case TerminalKind::StepLimit: return "step-limit";
    }
    return "?";
}

struct Terminal {
    TerminalKind kind = TerminalKind::StepLimit;
    int zero_index = -1;       // index into RootSet::roots when kind == Zero
    double asymptote = 0.0;    // Re z at escape for the infinity terminals
};

struct Trajectory {
    int start_zero = -1;          // index into RootSet::roots
    cplx start;                   // the zero itself
    cplx initial_direction;       // unit
    std::vector<cplx> points;     // polyline, starting at the zero
    std::vector<double> q_arc;    // cumulative Q-length per point
    Terminal terminal;
};

struct TraceOptions {
    double initial_step = 1e-4;
    int max_steps = 200000;
    double angle_tolerance = 1e-6;   // trajectory-condition residual
    double snap_radius_factor = 1e-5;  // zero capture: factor * (1+|zero|)
    double rk_rel_tol = 1e-10;
    double pole_capture_radius = 1e-4;
    double escape_factor = 50.0;       // |z| > factor * (1+max|root|)
    bool exploit_symmetry = true;
    double launch_offset_factor = 1e-6;
    // Chord length cap as a fraction of the distance to the nearest critical
    // point.  sqrt(24 * angle_tolerance) keeps the sampled polyline inside the
    // trajectory-condition tolerance; 1/4 is the hard safety clamp.
    double step_dist_factor = 0.0025;
};

// ---------------------------------------------------------------------------
// critical_directions: the n+2 rays of a zero of order n, or {+i, -i} at the
// fourth-order pole at infinity (order <= 0 selects infinity).
// ---------------------------------------------------------------------------
inline std::vector<cplx> critical_directions(const QuadDiff& qd, cplx point, int order) {
    if (order <= 0) throw InvalidInputError("critical_directions: order must be >= 1");
    // Leading local coefficient A with Q0(z) ~ A (z - e)^n.
    cplx A(1.0, 0.0);
    for (const auto& r : qd.roots.roots)
        if (std::abs(r.value - point) > 1e-9 * (1.0 + std::abs(point)))
            for (int i = 0; i < r.multiplicity; ++i) A *= (point - r.value);
    cplx dm = point - 1.0, dp = point + 1.0;
    A = -A / (dm * dm * dp * dp);
    const double base = -std::arg(A);
    std::vector<cplx> dirs;
    for (int k = 0; k < order + 2; ++k) {
        double th = (base + 2.0 * M_PI * k) / double(order + 2);
        dirs.push_back(cplx(std::cos(th), std::sin(th)));
    }
    std::sort(dirs.begin(), dirs.end(), [](cplx a, cplx b) { return std::arg(a) < std::arg(b); });
    return dirs;
}

inline std::vector<cplx> infinity_directions() { return {cplx(0, 1), cplx(0, -1)}; }

namespace detail {

// Unit tangent of the trajectory field at z, aligned with `prev`.
inline cplx field_direction(const QuarticCoeffs& c, cplx z, cplx prev) {
    cplx u = std::sqrt(eval_Q0(z, c));
    // Q dz^2 > 0  <=>  u dz real  <=>  dz parallel to conj(u).
    cplx d = std::conj(u);
    double m = std::abs(d);
    if (m == 0.0) return prev;
    d /= m;
    double dot = d.real() * prev.real() + d.imag() * prev.imag();
    return (dot >= 0.0) ? d : -d;
}

struct Dopri5 {
    // Dormand-Prince 5(4) on dz/ds = T(z) with per-stage alignment against
    // the step's initial tangent.
    static bool step(const QuarticCoeffs& c, cplx z, cplx dir_in, double h, cplx& z_out,
                     cplx& dir_out, double& err) {
        static const double a21 = 1.0 / 5;
        static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
        static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
        static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
        static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
        static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
        static const double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
        try {
            cplx k1 = field_direction(c, z, dir_in);
            cplx k2 = field_direction(c, z + h * a21 * k1, dir_in);
            cplx k3 = field_direction(c, z + h * (a31 * k1 + a32 * k2), dir_in);
            cplx k4 = field_direction(c, z + h * (a41 * k1 + a42 * k2 + a43 * k3), dir_in);
            cplx k5 = field_direction(c, z + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4),
                                      dir_in);
            cplx k6 = field_direction(
                c, z + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5), dir_in);
            cplx z5 = z + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
            cplx k7 = field_direction(c, z5, dir_in);
            cplx errv = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
            err = std::abs(errv);
            z_out = z5;
            dir_out = k7;
            return true;
        } catch (const PoleEvaluationError&) {
            return false;
        }
    }
};

inline double nearest_critical_distance(const QuadDiff& qd, cplx z) {
    double d = std::min(std::abs(z - cplx(1, 0)), std::abs(z + cplx(1, 0)));
    for (const auto& r : qd.roots.roots) d = std::min(d, std::abs(z - r.value));
    return d;
}

} // namespace detail

// ---------------------------------------------------------------------------
// trace_trajectory: follow the ray from a zero along one critical direction.
// ---------------------------------------------------------------------------
inline Trajectory trace_trajectory(int zero_index, cplx direction, const QuadDiff& qd,
                                   const TraceOptions& opts = {}) {
    const RootEntry& ze = qd.roots.roots.at(size_t(zero_index));
    const cplx e = ze.value;
    Trajectory tr;
    tr.start_zero = zero_index;
    tr.start = e;
    tr.initial_direction = direction / std::abs(direction);

    const double scale = 1.0 + qd.roots.max_abs();
    const double offset = opts.launch_offset_factor * (1.0 + std::abs(e));
    const double escape_R = opts.escape_factor * scale;
    const double alpha_m1 = -qd.p0_at(-1.0) / 4.0;
    const double alpha_p1 = -qd.p0_at(+1.0) / 4.0;

    cplx z = e + offset * tr.initial_direction;
    cplx dir = tr.initial_direction;
    double arc = 0.0;
    tr.points.push_back(e);
    tr.q_arc.push_back(0.0);
    tr.points.push_back(z);
    tr.q_arc.push_back(arc += std::abs(std::sqrt(eval_Q0(z, qd.coeffs))) * offset);

    double h = opts.initial_step * (1.0 + std::abs(e));
    int pole_approach_m1 = 0, pole_approach_p1 = 0;
    double prev_dm1 = 1e300, prev_dp1 = 1e300;
    bool left_start = false;
    const double start_snap = opts.snap_radius_factor * (1.0 + std::abs(e));

    for (int step = 0; step < opts.max_steps; ++step) {
        if (!left_start && std::abs(z - e) > 5.0 * start_snap) left_start = true;
        // Zero capture (the start zero only counts once we have left it).
        for (size_t j = 0; j < qd.roots.roots.size(); ++j) {
            const auto& r = qd.roots.roots[j];
            double snap = opts.snap_radius_factor * (1.0 + std::abs(r.value));
            if (int(j) == zero_index && !left_start) continue;
            if (std::abs(z - r.value) < snap) {
                double tail = std::abs(std::sqrt(eval_Q0(0.5 * (z + r.value), qd.coeffs)))
                            * std::abs(r.value - z);
                tr.points.push_back(r.value);
                tr.q_arc.push_back(arc + tail);
                tr.terminal.kind = TerminalKind::Zero;
                tr.terminal.zero_index = int(j);
                return tr;
            }
        }
        // Pole capture (only radial poles attract trajectories).
        double dm1 = std::abs(z + cplx(1, 0));
        double dp1 = std::abs(z - cplx(1, 0));
        pole_approach_m1 = (dm1 < prev_dm1) ? pole_approach_m1 + 1 : 0;
        pole_approach_p1 = (dp1 < prev_dp1) ? pole_approach_p1 + 1 : 0;
        prev_dm1 = dm1;
        prev_dp1 = dp1;
        if (alpha_m1 > 0.0 && dm1 < opts.pole_capture_radius && pole_approach_m1 >= 20) {
            tr.points.push_back(cplx(-1, 0));
            tr.q_arc.push_back(arc);
            tr.terminal.kind = TerminalKind::PoleMinus1;
            return tr;
        }
        if (alpha_p1 > 0.0 && dp1 < opts.pole_capture_radius && pole_approach_p1 >= 20) {
            tr.points.push_back(cplx(1, 0));
            tr.q_arc.push_back(arc);
            tr.terminal.kind = TerminalKind::PolePlus1;
            return tr;
        }
        // Escape.
        if (std::abs(z) > escape_R && std::abs(dir.real()) < 0.05) {
            tr.terminal.kind = (z.imag() > 0.0) ? TerminalKind::InfinityUp
                                                : TerminalKind::InfinityDown;
            tr.terminal.asymptote = z.real();
            return tr;
        }
        // One adaptive step.
        double dcrit = detail::nearest_critical_distance(qd, z);
        double hmax = std::max(std::min(opts.step_dist_factor, 0.25) * dcrit, 1e-9 * scale);
        h = std::min(h, hmax);
        cplx znew, dirnew;
        double err = 0.0;
        bool accepted = false;
        for (int attempt = 0; attempt < 60; ++attempt) {
            if (!detail::Dopri5::step(qd.coeffs, z, dir, h, znew, dirnew, err)) {
                h *= 0.25;  // stepped onto a pole
                continue;
            }
            double dot = dirnew.real() * dir.real() + dirnew.imag() * dir.imag();
            if (dot <= 0.0) {  // branch jump inside the step
                h *= 0.5;
                if (h < 1e-14 * scale)
                    throw StepUnderflowError("trace_trajectory: step underflow at branch jump");
                continue;
            }
            double tol = opts.rk_rel_tol * (1.0 + std::abs(z));
            if (err <= tol) {
                accepted = true;
                break;
            }
            double shrink = 0.9 * std::pow(tol / std::max(err, 1e-300), 0.2);
            h *= std::clamp(shrink, 0.1, 0.9);
            if (h < 1e-14 * scale)
                throw StepUnderflowError("trace_trajectory: step underflow");
        }
        if (!accepted) throw StepUnderflowError("trace_trajectory: no acceptable step");
        double dq = std::abs(std::sqrt(eval_Q0(0.5 * (z + znew), qd.coeffs))) * std::abs(znew - z);
        arc += dq;
        z = znew;
        dir = dirnew;
        tr.points.push_back(z);
        tr.q_arc.push_back(arc);
        // Grow the step for the next round.
        double tol = opts.rk_rel_tol * (1.0 + std::abs(z));
        double grow = 0.9 * std::pow(tol / std::max(err, 1e-300), 0.2);
        h *= std::clamp(grow, 0.5, 5.0);
    }
    tr.terminal.kind = TerminalKind::StepLimit;
    return tr;
}

// ---------------------------------------------------------------------------
// trace_all: all rays from all zeros, conjugation-symmetrized, deduplicated.
// ---------------------------------------------------------------------------
namespace detail {

inline Trajectory conjugate_trajectory(const Trajectory& t, int start_index,
                                       const RootSet& roots) {
    Trajectory m;
    m.start_zero = start_index;
    m.start = std::conj(t.start);
    m.initial_direction = std::conj(t.initial_direction);
    m.points.reserve(t.points.size());
    for (cplx p : t.points) m.points.push_back(std::conj(p));
    m.q_arc = t.q_arc;
    m.terminal = t.terminal;
    if (t.terminal.kind == TerminalKind::Zero) {
        // conjugate partner of the landing zero
        cplx target = std::conj(roots.roots[size_t(t.terminal.zero_index)].value);
        int best = -1;
        double bd = 1e300;
        for (size_t j = 0; j < roots.roots.size(); ++j) {
            double d = std::abs(roots.roots[j].value - target);
            if (d < bd) { bd = d; best = int(j); }
        }
        m.terminal.zero_index = best;
    } else if (t.terminal.kind == TerminalKind::InfinityUp) {
        m.terminal.kind = TerminalKind::InfinityDown;
    } else if (t.terminal.kind == TerminalKind::InfinityDown) {
        m.terminal.kind = TerminalKind::InfinityUp;
    }
    return m;
}

// Point at half total Q-length, for reverse-pair matching.
inline cplx q_midpoint(const Trajectory& t) {
    if (t.points.empty()) return cplx(0, 0);
    double half = 0.5 * t.q_arc.back();
    for (size_t i = 1; i < t.points.size(); ++i) {
        if (t.q_arc[i] >= half) {
            double span = t.q_arc[i] - t.q_arc[i - 1];
            double w = (span > 0.0) ? (half - t.q_arc[i - 1]) / span : 0.0;
            return t.points[i - 1] + w * (t.points[i] - t.points[i - 1]);
        }
    }
    return t.points.back();
}

} // namespace detail

inline std::vector<Trajectory> trace_all(const QuadDiff& qd, const TraceOptions& opts = {}) {
    std::vector<Trajectory> rays;
    const double im_tol = 1e-9;

    for (size_t j = 0; j < qd.roots.roots.size(); ++j) {
        const auto& r = qd.roots.roots[j];
        if (opts.exploit_symmetry && r.value.imag() < -im_tol * (1.0 + std::abs(r.value)))
            continue;  // lower-half zeros come from reflection
        auto dirs = critical_directions(qd, r.value, r.multiplicity);
        bool zero_is_real = std::abs(r.value.imag()) <= im_tol * (1.0 + std::abs(r.value));
        for (cplx d : dirs) {
            if (opts.exploit_symmetry && zero_is_real && d.imag() < -1e-12) continue;
            rays.push_back(trace_trajectory(int(j), d, qd, opts));
        }
    }
    if (opts.exploit_symmetry) {
        std::vector<Trajectory> mirrored;
        for (const auto& t : rays) {
            const auto& r = qd.roots.roots[size_t(t.start_zero)];
            bool zero_is_real = std::abs(r.value.imag()) <= im_tol * (1.0 + std::abs(r.value));
            bool dir_is_real = std::abs(t.initial_direction.imag()) <= 1e-12;
            if (zero_is_real && dir_is_real) continue;  // self-conjugate ray
            // Find the conjugate start zero.
            cplx target = std::conj(r.value);
            int best = -1;
            double bd = 1e300;
            for (size_t j = 0; j < qd.roots.roots.size(); ++j) {
                double d = std::abs(qd.roots.roots[j].value - target);
                if (d < bd) { bd = d; best = int(j); }
            }
            mirrored.push_back(detail::conjugate_trajectory(t, best, qd.roots));
        }
        for (auto& t : mirrored) rays.push_back(std::move(t));
    }

    // Deduplicate reverse pairs of zero-to-zero edges.
    const double scale = 1.0 + qd.roots.max_abs();
    std::vector<int> partner(rays.size(), -1);
    for (size_t i = 0; i < rays.size(); ++i) {
        if (partner[i] >= 0 || rays[i].terminal.kind != TerminalKind::Zero) continue;
        cplx mi = detail::q_midpoint(rays[i]);
        int best = -1;
        double bd = 1e300;
        for (size_t j = i + 1; j < rays.size(); ++j) {
            if (partner[j] >= 0 || rays[j].terminal.kind != TerminalKind::Zero) continue;
            if (rays[j].start_zero != rays[i].terminal.zero_index
                || rays[j].terminal.zero_index != rays[i].start_zero)
                continue;
            double d = std::abs(detail::q_midpoint(rays[j]) - mi);
            if (d < bd) { bd = d; best = int(j); }
        }
        if (best >= 0 && bd < 2e-3 * scale) {
            partner[i] = best;
            partner[best] = int(i);
        }
    }
    std::vector<Trajectory> out;
    for (size_t i = 0; i < rays.size(); ++i) {
        if (partner[i] >= 0 && partner[i] < int(i)) continue;  // keep the first of each pair
        out.push_back(std::move(rays[i]));
    }
    return out;
}

} // namespace stokes

#endif
