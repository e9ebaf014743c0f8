#ifndef STOKES_QDIFF_HPP
#define STOKES_QDIFF_HPP

#include <array>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "stokes/errors.hpp"
#include "stokes/polynomials.hpp"

namespace stokes {

// The quadratic differential Q0(z) dz^2 = -P0(z) / ((z-1)^2 (z+1)^2) dz^2
// with double poles at +-1 and a fourth-order pole at infinity.
struct QuadDiff {
    QuarticCoeffs coeffs;
    RootSet roots;

    double p0_at(double k) const { return coeffs.eval(cplx(k, 0.0)).real(); }

    static QuadDiff make(const QuarticCoeffs& c, double root_tol = 1e-9,
                         double pole_tol = 1e-9) {
        QuadDiff qd;
        qd.coeffs = c;
        const double scale = c.magnitude_scale();
        const double pm1 = c.eval(cplx(-1, 0)).real();
        const double pp1 = c.eval(cplx(+1, 0)).real();
        if (std::abs(pm1) < pole_tol * scale || std::abs(pp1) < pole_tol * scale)
            throw DepressedError("QuadDiff: zero of P0 collides with a pole (depressed case)",
                                 pm1, pp1);
        qd.roots = solve_quartic(c, root_tol);
        return qd;
    }

    static QuadDiff make_from_roots(const QuarticCoeffs& c, const RootSet& rs,
                                    double pole_tol = 1e-9) {
        QuadDiff qd;
        qd.coeffs = c;
        qd.roots = rs;
        const double scale = c.magnitude_scale();
        const double pm1 = c.eval(cplx(-1, 0)).real();
        const double pp1 = c.eval(cplx(+1, 0)).real();
        if (std::abs(pm1) < pole_tol * scale || std::abs(pp1) < pole_tol * scale)
            throw DepressedError("QuadDiff: zero of P0 collides with a pole (depressed case)",
                                 pm1, pp1);
        return qd;
    }
};

inline cplx eval_Q0(cplx z, const QuarticCoeffs& c) {
    cplx dm = z - 1.0, dp = z + 1.0;
    if (dm == cplx(0.0, 0.0) || dp == cplx(0.0, 0.0))
        throw PoleEvaluationError("eval_Q0: evaluation at a double pole");
    return -c.eval(z) / (dm * dm * dp * dp);
}

// Leading Laurent coefficient and the Q-length of the loop around a pole.
struct PoleData {
    int k = 1;               // pole location, -1 or +1
    double alpha = 0.0;      // leading Laurent coefficient of Q0 at z = k
    double delta = 0.0;      // 2 pi sqrt(|alpha|)
    double delta_contour = 0.0;  // trapezoid contour cross-check
};

struct QLength {
    cplx a, b;
    cplx value;
    std::string branch_note;
};

namespace detail {

// sqrt(Q0) continued along a panel: pick the square root closer in direction
// to the previous value.
inline cplx sqrt_aligned(cplx q, cplx prev) {
    cplx u = std::sqrt(q);
    if (prev != cplx(0.0, 0.0)) {
        double re = u.real() * prev.real() + u.imag() * prev.imag();
        if (re < 0.0) u = -u;
    }
    return u;
}

// Gauss7 / Kronrod15 nodes and weights on [-1, 1].
struct GK15 {
    static constexpr std::array<double, 15> x = {
        -0.991455371120813, -0.949107912342759, -0.864864423359769, -0.741531185599394,
        -0.586087235467691, -0.405845151377397, -0.207784955007898, 0.0,
        0.207784955007898,  0.405845151377397,  0.586087235467691,  0.741531185599394,
        0.864864423359769,  0.949107912342759,  0.991455371120813};
    static constexpr std::array<double, 15> wk = {
        0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
        0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728,
        0.204432940075298, 0.190350578064785, 0.169004726639267, 0.140653259715525,
        0.104790010322250, 0.063092092629979, 0.022935322010529};
    static constexpr std::array<double, 7> wg = {
        0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469,
        0.381830050505119, 0.279705391489277, 0.129484966168870};
};

struct SegmentIntegrator {
    const QuarticCoeffs* c;
    double tol;
    int max_depth;

    // Integrates sqrt(Q0) over [a,b] (straight segment), continuing the branch
    // from u_in (value at a).  Returns the integral and the aligned value at b.
    std::pair<cplx, cplx> integrate(cplx a, cplx b, cplx u_in, int depth) const {
        const cplx mid = 0.5 * (a + b);
        const cplx half = 0.5 * (b - a);
        cplx prev = u_in;
        cplx acc_k(0.0, 0.0), acc_g(0.0, 0.0);
        std::array<cplx, 15> u;
        for (int i = 0; i < 15; ++i) {
            cplx z = mid + GK15::x[i] * half;
            u[i] = sqrt_aligned(eval_Q0(z, *c), prev);
            prev = u[i];
            acc_k += GK15::wk[i] * u[i];
            if (i % 2 == 1) acc_g += GK15::wg[i / 2] * u[i];
        }
        cplx u_b = sqrt_aligned(eval_Q0(b, *c), prev);
        cplx Ik = acc_k * half;
        cplx Ig = acc_g * half;
        double err = std::abs(Ik - Ig);
        if (err <= tol * (1.0 + std::abs(Ik)) || depth >= max_depth) return {Ik, u_b};
        auto left = integrate(a, mid, u_in, depth + 1);
        auto right = integrate(mid, b, left.second, depth + 1);
        return {left.first + right.first, right.second};
    }
};

inline double dist_point_segment(cplx p, cplx a, cplx b) {
    cplx ab = b - a;
    double len2 = std::norm(ab);
    if (len2 == 0.0) return std::abs(p - a);
    double t = ((p - a).real() * ab.real() + (p - a).imag() * ab.imag()) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(p - (a + t * ab));
}

} // namespace detail

inline PoleData pole_data(const QuarticCoeffs& c, int k, double tol = 1e-9) {
    if (k != 1 && k != -1) throw InvalidInputError("pole_data: k must be +1 or -1");
    const double pk = c.eval(cplx(double(k), 0.0)).real();
    const double scale = c.magnitude_scale();
    if (std::abs(pk) < tol * scale)
        throw DepressedError("pole_data: P0(k) ~ 0, depressed differential",
                             c.eval(cplx(-1, 0)).real(), c.eval(cplx(1, 0)).real());
    PoleData pd;
    pd.k = k;
    pd.alpha = -pk / 4.0;  // cofactor (k -+ 1)^2 = 4
    pd.delta = 2.0 * M_PI * std::sqrt(std::abs(pd.alpha));

    // Trapezoidal contour cross-check.  Shrink the radius only if a zero of
    // P0 sits close enough to straddle the contour with its branch cut.
    double radius = 1e-2;
    RootSet rs = solve_quartic(c, 1e-9);
    double nearest = 1e300;
    for (const auto& r : rs.roots) nearest = std::min(nearest, std::abs(r.value - cplx(double(k), 0)));
    if (nearest < 2.5 * radius) radius = 0.4 * nearest;
    const int n = 4096;
    cplx prev(0.0, 0.0);
    std::vector<cplx> us(n);
    for (int i = 0; i < n; ++i) {
        double th = 2.0 * M_PI * i / n;
        cplx z = cplx(double(k), 0.0) + radius * cplx(std::cos(th), std::sin(th));
        us[i] = detail::sqrt_aligned(eval_Q0(z, c), prev);
        prev = us[i];
    }
    cplx acc(0.0, 0.0);
    for (int i = 0; i < n; ++i) {
        int j = (i + 1) % n;
        double thi = 2.0 * M_PI * i / n, thj = 2.0 * M_PI * (i + 1) / n;
        cplx zi = cplx(double(k), 0.0) + radius * cplx(std::cos(thi), std::sin(thi));
        cplx zj = cplx(double(k), 0.0) + radius * cplx(std::cos(thj), std::sin(thj));
        cplx uj = (j == 0) ? detail::sqrt_aligned(eval_Q0(zj, c), us[n - 1]) : us[j];
        acc += 0.5 * (us[i] + uj) * (zj - zi);
    }
    pd.delta_contour = std::abs(acc);
    return pd;
}

// Q-length of a straight segment with continuously tracked branch.  The
// returned value carries the branch of sqrt(Q0) chosen at `a` (principal);
// callers apply the non-negativity convention to Re or Im as needed.
inline QLength q_length(cplx a, cplx b, const QuarticCoeffs& c, double tol = 1e-11) {
    QLength out;
    out.a = a;
    out.b = b;
    if (a == b) {
        out.value = cplx(0.0, 0.0);
        out.branch_note = "empty segment";
        return out;
    }
    RootSet rs = solve_quartic(c, 1e-9);
    for (const auto& r : rs.roots) {
        double d = detail::dist_point_segment(r.value, a, b);
        if (d < 1e-10 && std::abs(r.value - a) > 1e-12 && std::abs(r.value - b) > 1e-12)
            throw SingularPathError("q_length: critical point on the open segment");
    }
    for (double p : {-1.0, 1.0}) {
        double d = detail::dist_point_segment(cplx(p, 0.0), a, b);
        if (d < 1e-6) throw SingularPathError("q_length: path within 1e-6 of a double pole");
    }
    detail::SegmentIntegrator ig{&c, tol, 40};
    cplx u0 = std::sqrt(eval_Q0(a, c));
    auto res = ig.integrate(a, b, u0, 0);
    out.value = res.first;
    out.branch_note = "continuous from principal sqrt at start";
    return out;
}

// Chained Q-length along a polygonal path; the branch is continued across
// the joints.
inline QLength q_length_chain(const std::vector<cplx>& pts, const QuarticCoeffs& c,
                              double tol = 1e-11) {
    if (pts.size() < 2) throw InvalidInputError("q_length_chain: need at least 2 points");
    QLength out;
    out.a = pts.front();
    out.b = pts.back();
    RootSet rs = solve_quartic(c, 1e-9);
    detail::SegmentIntegrator ig{&c, tol, 40};
    cplx u = std::sqrt(eval_Q0(pts[0], c));
    cplx acc(0.0, 0.0);
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
        for (const auto& r : rs.roots) {
            double d = detail::dist_point_segment(r.value, pts[i], pts[i + 1]);
            if (d < 1e-10 && std::abs(r.value - pts[i]) > 1e-12
                && std::abs(r.value - pts[i + 1]) > 1e-12)
                throw SingularPathError("q_length_chain: critical point on a segment");
        }
        for (double p : {-1.0, 1.0}) {
            if (detail::dist_point_segment(cplx(p, 0.0), pts[i], pts[i + 1]) < 1e-6)
                throw SingularPathError("q_length_chain: path within 1e-6 of a double pole");
        }
        auto res = ig.integrate(pts[i], pts[i + 1], u, 0);
        acc += res.first;
        u = res.second;
    }
    out.value = acc;
    out.branch_note = "continuous from principal sqrt at start";
    return out;
}

// Convention helpers: the branch is chosen so the requested part is >= 0.
inline double im_nonneg(const QLength& q) { return std::abs(q.value.imag()); }
inline double re_nonneg(const QLength& q) { return std::abs(q.value.real()); }

} // namespace stokes

#endif
