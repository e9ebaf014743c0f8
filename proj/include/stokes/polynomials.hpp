#ifndef STOKES_POLYNOMIALS_HPP
#define STOKES_POLYNOMIALS_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "stokes/errors.hpp"

namespace stokes {

using cplx = std::complex<double>;

// Coefficients of the monic quartic P0(z) = z^4 + c3 z^3 + c2 z^2 + c1 z + c0.
struct QuarticCoeffs {
    double c3 = 0.0, c2 = 0.0, c1 = 0.0, c0 = 0.0;

    bool finite() const {
        return std::isfinite(c3) && std::isfinite(c2) && std::isfinite(c1) && std::isfinite(c0);
    }
    cplx eval(cplx z) const { return (((z + c3) * z + c2) * z + c1) * z + c0; }
    cplx deriv(cplx z) const { return ((4.0 * z + 3.0 * c3) * z + 2.0 * c2) * z + c1; }
    double magnitude_scale() const {
        return 1.0 + std::max({std::abs(c3), std::abs(c2), std::abs(c1), std::abs(c0)});
    }
};

struct RootEntry {
    cplx value;
    int multiplicity = 1;
    bool is_real = false;
};

struct RootSet {
    std::vector<RootEntry> roots;  // sorted by (Re, Im); multiplicities sum to 4
    double tolerance = 0.0;        // clustering tolerance used

    int total_multiplicity() const {
        int n = 0;
        for (const auto& r : roots) n += r.multiplicity;
        return n;
    }
    int real_count() const {  // counting multiplicity
        int n = 0;
        for (const auto& r : roots)
            if (r.is_real) n += r.multiplicity;
        return n;
    }
    double max_abs() const {
        double m = 0.0;
        for (const auto& r : roots) m = std::max(m, std::abs(r.value));
        return m;
    }
    // All roots, repeated per multiplicity.
    std::vector<cplx> expanded() const {
        std::vector<cplx> out;
        for (const auto& r : roots)
            for (int i = 0; i < r.multiplicity; ++i) out.push_back(r.value);
        return out;
    }
};

// The Lagrange discriminant system of the quartic.
struct LagrangeInvariants {
    double D0 = 0.0;  // discriminant
    double Pc = 0.0;  // P0 = 8 c2 - 3 c3^2
    double Qc = 0.0;  // Q0 = 64 c0 - 16 c2^2 + 16 c3^2 c2 - 16 c3 c1 - 3 c3^4
    double R0 = 0.0;  // R0 = c3^3 + 8 c1 - 4 c3 c2
    double S0 = 0.0;  // S0 = c2^2 - 3 c3 c1 + 12 c0
};

enum class RootPattern {
    FourComplex,
    TwoRealTwoComplex,
    FourReal,
    TwoDoubleComplex,
    TwoDoubleReal,
    QuadrupleReal,
    DoubleRealPlusTwoSimpleReal,
    DoubleRealPlusComplexPair,
    TripleRealPlusSimpleReal,
};

inline const char* to_string(RootPattern p) {
    switch (p) {
        case RootPattern::FourComplex: return "FourComplex";
        case RootPattern::TwoRealTwoComplex: return "TwoRealTwoComplex";
        case RootPattern::FourReal: return "FourReal";
        case RootPattern::TwoDoubleComplex: return "TwoDoubleComplex";
        case RootPattern::TwoDoubleReal: return "TwoDoubleReal";
        case RootPattern::QuadrupleReal: return "QuadrupleReal";
        case RootPattern::DoubleRealPlusTwoSimpleReal: return "DoubleRealPlusTwoSimpleReal";
        case RootPattern::DoubleRealPlusComplexPair: return "DoubleRealPlusComplexPair";
        case RootPattern::TripleRealPlusSimpleReal: return "TripleRealPlusSimpleReal";
    }
    return "?";
}

struct RootClass {
    RootPattern pattern = RootPattern::FourComplex;
    bool near_degenerate = false;   // some deciding quantity sat inside its tolerance band
    bool pole_collision_minus1 = false;  // |P0(-1)| below tolerance
    bool pole_collision_plus1 = false;   // |P0(+1)| below tolerance
};

namespace detail {

// Expected number of real roots (counting multiplicity) for each pattern.
inline int real_roots_of_pattern(RootPattern p) {
    switch (p) {
        case RootPattern::FourComplex: return 0;
        case RootPattern::TwoRealTwoComplex: return 2;
        case RootPattern::TwoDoubleComplex: return 0;
        case RootPattern::DoubleRealPlusComplexPair: return 2;
        default: return 4;
    }
}

} // namespace detail

// --------------------------------------------------------------------------
// solve_quartic: Aberth-Ehrlich iteration with Cauchy-bound initialization,
// polished by Newton.  Conjugate pairing is enforced exactly afterwards and
// clusters within tol*(1+|root|) are merged into multiple roots.
// --------------------------------------------------------------------------
inline RootSet solve_quartic(const QuarticCoeffs& c, double tol = 1e-9) {
    if (!c.finite()) throw InvalidInputError("solve_quartic: non-finite coefficient");

    // Cauchy bound on root magnitude.
    const double bound =
        1.0 + std::max({std::abs(c.c3), std::abs(c.c2), std::abs(c.c1), std::abs(c.c0)});

    std::array<cplx, 4> z;
    for (int k = 0; k < 4; ++k) {
        double ang = 2.0 * M_PI * (k + 0.35) / 4.0;  // asymmetric start breaks symmetry locks
        z[k] = 0.7 * bound * cplx(std::cos(ang), std::sin(ang));
    }

    const int max_iter = 400;
    for (int it = 0; it < max_iter; ++it) {
        double worst = 0.0;
        std::array<cplx, 4> znew = z;
        for (int k = 0; k < 4; ++k) {
            cplx p = c.eval(z[k]);
            cplx dp = c.deriv(z[k]);
            if (p == cplx(0.0, 0.0)) continue;
            cplx w = (dp != cplx(0.0, 0.0)) ? p / dp : cplx(0.0, 0.0);
            if (dp == cplx(0.0, 0.0)) {
                // at a critical point of P; nudge
                znew[k] = z[k] + 1e-8 * bound;
                worst = 1.0;
                continue;
            }
            cplx s(0.0, 0.0);
            for (int j = 0; j < 4; ++j)
                if (j != k) s += 1.0 / (z[k] - z[j]);
            cplx corr = w / (1.0 - w * s);
            znew[k] = z[k] - corr;
            worst = std::max(worst, std::abs(corr) / (1.0 + std::abs(znew[k])));
        }
        z = znew;
        if (worst < 1e-15) break;
    }

    // Newton polish (linear near multiple roots, quadratic near simple ones).
    for (int k = 0; k < 4; ++k) {
        for (int it = 0; it < 3; ++it) {
            cplx dp = c.deriv(z[k]);
            if (std::abs(dp) < 1e-300) break;
            cplx step = c.eval(z[k]) / dp;
            if (std::abs(step) > 0.5 * (1.0 + std::abs(z[k]))) break;
            z[k] -= step;
        }
    }

    // Enforce exact conjugation closure: real axis snap, then conjugate pairing.
    std::array<cplx, 4> r = z;
    const double im_tol = std::max(tol, 1e-9) * 1.0;
    std::array<bool, 4> used{};
    for (int k = 0; k < 4; ++k)
        if (std::abs(r[k].imag()) <= im_tol * (1.0 + std::abs(r[k]))) {
            r[k] = cplx(r[k].real(), 0.0);
            used[k] = true;  // real roots need no partner
        }
    for (int k = 0; k < 4; ++k) {
        if (used[k]) continue;
        int best = -1;
        double bestd = 1e300;
        for (int j = 0; j < 4; ++j) {
            if (j == k || used[j]) continue;
            double d = std::abs(r[j] - std::conj(r[k]));
            if (d < bestd) { bestd = d; best = j; }
        }
        if (best >= 0) {
            cplx avg = 0.5 * (r[k] + std::conj(r[best]));
            r[k] = avg;
            r[best] = std::conj(avg);
            used[k] = used[best] = true;
        } else {
            used[k] = true;  // odd one out; leave as computed
        }
    }

    // Cluster into multiple roots.
    std::vector<cplx> vals(r.begin(), r.end());
    std::sort(vals.begin(), vals.end(), [](cplx a, cplx b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    RootSet out;
    out.tolerance = tol;
    std::vector<bool> taken(4, false);
    for (int k = 0; k < 4; ++k) {
        if (taken[k]) continue;
        std::vector<int> cluster{k};
        taken[k] = true;
        bool grew = true;
        while (grew) {  // single linkage
            grew = false;
            for (int j = 0; j < 4; ++j) {
                if (taken[j]) continue;
                for (int m : cluster) {
                    if (std::abs(vals[j] - vals[m]) <= tol * (1.0 + std::abs(vals[m]))) {
                        cluster.push_back(j);
                        taken[j] = true;
                        grew = true;
                        break;
                    }
                }
            }
        }
        cplx centroid(0.0, 0.0);
        for (int m : cluster) centroid += vals[m];
        centroid /= double(cluster.size());
        RootEntry e;
        e.multiplicity = int(cluster.size());
        e.is_real = std::abs(centroid.imag()) <= im_tol * (1.0 + std::abs(centroid));
        e.value = e.is_real ? cplx(centroid.real(), 0.0) : centroid;
        out.roots.push_back(e);
    }
    std::sort(out.roots.begin(), out.roots.end(), [](const RootEntry& a, const RootEntry& b) {
        if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
        return a.value.imag() < b.value.imag();
    });
    return out;
}

// --------------------------------------------------------------------------
// Lagrange invariants, direct evaluation of the coefficient expansions.
// --------------------------------------------------------------------------
inline LagrangeInvariants lagrange_invariants(const QuarticCoeffs& c) {
    if (!c.finite()) throw InvalidInputError("lagrange_invariants: non-finite coefficient");
    const double c3 = c.c3, c2 = c.c2, c1 = c.c1, c0 = c.c0;
    LagrangeInvariants v;
    v.D0 = -27 * c3 * c3 * c3 * c3 * c0 * c0 + 18 * c3 * c3 * c3 * c2 * c1 * c0
         - 4 * c3 * c3 * c3 * c1 * c1 * c1 - 4 * c3 * c3 * c2 * c2 * c2 * c0
         + c3 * c3 * c2 * c2 * c1 * c1 + 144 * c3 * c3 * c2 * c0 * c0
         - 6 * c3 * c3 * c1 * c1 * c0 - 80 * c3 * c2 * c2 * c1 * c0
         + 18 * c3 * c2 * c1 * c1 * c1 + 16 * c2 * c2 * c2 * c2 * c0
         - 4 * c2 * c2 * c2 * c1 * c1 - 192 * c3 * c1 * c0 * c0
         - 128 * c2 * c2 * c0 * c0 + 144 * c2 * c1 * c1 * c0
         - 27 * c1 * c1 * c1 * c1 + 256 * c0 * c0 * c0;
    v.Pc = 8 * c2 - 3 * c3 * c3;
    v.Qc = 64 * c0 - 16 * c2 * c2 + 16 * c3 * c3 * c2 - 16 * c3 * c1 - 3 * c3 * c3 * c3 * c3;
    v.R0 = c3 * c3 * c3 + 8 * c1 - 4 * c3 * c2;
    v.S0 = c2 * c2 - 3 * c3 * c1 + 12 * c0;
    return v;
}

namespace detail {

// Magnitude scales for the tolerance bands: sum of |monomial| values, so the
// band tracks the cancellation actually occurring in each invariant.
struct InvariantScales {
    double D0, Pc, Qc, R0, S0;
};

inline InvariantScales invariant_scales(const QuarticCoeffs& c) {
    const double c3 = std::abs(c.c3), c2 = std::abs(c.c2), c1 = std::abs(c.c1),
                 c0 = std::abs(c.c0);
    InvariantScales s;
    s.D0 = 27 * c3 * c3 * c3 * c3 * c0 * c0 + 18 * c3 * c3 * c3 * c2 * c1 * c0
         + 4 * c3 * c3 * c3 * c1 * c1 * c1 + 4 * c3 * c3 * c2 * c2 * c2 * c0
         + c3 * c3 * c2 * c2 * c1 * c1 + 144 * c3 * c3 * c2 * c0 * c0
         + 6 * c3 * c3 * c1 * c1 * c0 + 80 * c3 * c2 * c2 * c1 * c0
         + 18 * c3 * c2 * c1 * c1 * c1 + 16 * c2 * c2 * c2 * c2 * c0
         + 4 * c2 * c2 * c2 * c1 * c1 + 192 * c3 * c1 * c0 * c0
         + 128 * c2 * c2 * c0 * c0 + 144 * c2 * c1 * c1 * c0
         + 27 * c1 * c1 * c1 * c1 + 256 * c0 * c0 * c0 + 1.0;
    s.Pc = 8 * c2 + 3 * c3 * c3 + 1.0;
    s.Qc = 64 * c0 + 16 * c2 * c2 + 16 * c3 * c3 * c2 + 16 * c3 * c1 + 3 * c3 * c3 * c3 * c3 + 1.0;
    s.R0 = c3 * c3 * c3 + 8 * c1 + 4 * c3 * c2 + 1.0;
    s.S0 = c2 * c2 + 3 * c3 * c1 + 12 * c0 + 1.0;
    return s;
}

} // namespace detail

// --------------------------------------------------------------------------
// classify_roots: the Lagrange decision tree (Props in the source text).
// Equalities are tested inside a relative band of width tol * scale; a hit
// inside the band marks the result near-degenerate.
// --------------------------------------------------------------------------
inline RootClass classify_roots(const LagrangeInvariants& inv, const QuarticCoeffs& c,
                                double tol = 1e-9) {
    const auto sc = detail::invariant_scales(c);
    auto sgn = [&](double v, double scale) -> int {
        if (v > tol * scale) return +1;
        if (v < -tol * scale) return -1;
        return 0;
    };
    const int sD = sgn(inv.D0, sc.D0);
    const int sP = sgn(inv.Pc, sc.Pc);
    const int sQ = sgn(inv.Qc, sc.Qc);
    const int sR = sgn(inv.R0, sc.R0);
    const int sS = sgn(inv.S0, sc.S0);

    RootClass out;
    const double p_at_p1 = 1.0 + c.c3 + c.c2 + c.c1 + c.c0;
    const double p_at_m1 = 1.0 - c.c3 + c.c2 - c.c1 + c.c0;
    const double pole_scale = 1.0 + std::abs(c.c3) + std::abs(c.c2) + std::abs(c.c1) + std::abs(c.c0);
    out.pole_collision_plus1 = std::abs(p_at_p1) < tol * pole_scale;
    out.pole_collision_minus1 = std::abs(p_at_m1) < tol * pole_scale;
    out.near_degenerate = (sD == 0);

    if (sD > 0) {
        if (sP > 0 || sQ > 0) {
            out.pattern = RootPattern::FourComplex;
            if (sP == 0 || sQ == 0) out.near_degenerate = true;
            return out;
        }
        if (sP < 0 && sQ < 0) {
            out.pattern = RootPattern::FourReal;
            return out;
        }
        // P or Q inside the band with D0 > 0: boundary between I and III.
        out.near_degenerate = true;
        out.pattern = (inv.Pc > 0 || inv.Qc > 0) ? RootPattern::FourComplex : RootPattern::FourReal;
        return out;
    }
    if (sD < 0) {
        out.pattern = RootPattern::TwoRealTwoComplex;
        return out;
    }

    // D0 in the zero band: multiple-zero subcases.
    out.near_degenerate = true;
    if (sQ == 0 && sS == 0) { out.pattern = RootPattern::QuadrupleReal; return out; }
    if (sQ == 0 && sP > 0 && sR == 0) { out.pattern = RootPattern::TwoDoubleComplex; return out; }
    if (sQ == 0 && sP < 0) { out.pattern = RootPattern::TwoDoubleReal; return out; }
    if (sS == 0 && sQ != 0) { out.pattern = RootPattern::TripleRealPlusSimpleReal; return out; }
    if (sP < 0 && sQ < 0 && sS != 0) { out.pattern = RootPattern::DoubleRealPlusTwoSimpleReal; return out; }
    if (sQ > 0 || (sP > 0 && (sQ != 0 || sR != 0))) {
        out.pattern = RootPattern::DoubleRealPlusComplexPair;
        return out;
    }
    throw ClassificationAmbiguousError(
        "classify_roots: contradictory sign pattern on the D0=0 stratum",
        std::string(to_string(RootPattern::TwoDoubleReal)),
        std::string(to_string(RootPattern::DoubleRealPlusComplexPair)));
}

// Convenience overload.
inline RootClass classify_roots(const QuarticCoeffs& c, double tol = 1e-9) {
    return classify_roots(lagrange_invariants(c), c, tol);
}

} // namespace stokes

#endif
