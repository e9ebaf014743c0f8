// Test-only oracles, independent of the implementation paths they check.
#ifndef STOKES_TESTS_ORACLES_HPP
#define STOKES_TESTS_ORACLES_HPP

#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include "stokes/polynomials.hpp"

namespace oracles {

using cplx = std::complex<double>;

// ---------------------------------------------------------------------------
// Companion-matrix eigenvalues by shifted complex QR (Givens rotations).
// ---------------------------------------------------------------------------
inline std::vector<cplx> companion_roots(const stokes::QuarticCoeffs& c) {
    constexpr int n = 4;
    std::array<std::array<cplx, n>, n> H{};
    H[0][n - 1] = -c.c0;
    H[1][n - 1] = -c.c1;
    H[2][n - 1] = -c.c2;
    H[3][n - 1] = -c.c3;
    H[1][0] = 1.0;
    H[2][1] = 1.0;
    H[3][2] = 1.0;

    std::vector<cplx> eig;
    int m = n - 1;
    int iter = 0;
    while (m > 0 && iter < 500) {
        ++iter;
        // deflation test
        double off = std::abs(H[m][m - 1]);
        if (off < 1e-14 * (std::abs(H[m][m]) + std::abs(H[m - 1][m - 1]) + 1e-30)) {
            eig.push_back(H[m][m]);
            --m;
            continue;
        }
        // Wilkinson shift from the trailing 2x2 block
        cplx a = H[m - 1][m - 1], b = H[m - 1][m], cc = H[m][m - 1], d = H[m][m];
        cplx tr = a + d, det = a * d - b * cc;
        cplx disc = std::sqrt(tr * tr - 4.0 * det);
        cplx l1 = 0.5 * (tr + disc), l2 = 0.5 * (tr - disc);
        cplx mu = (std::abs(l1 - d) < std::abs(l2 - d)) ? l1 : l2;

        for (int i = 0; i <= m; ++i) H[i][i] -= mu;
        // QR by Givens on the active (m+1)x(m+1) Hessenberg block
        std::vector<std::array<cplx, 2>> rots;
        for (int k = 0; k < m; ++k) {
            cplx x = H[k][k], y = H[k + 1][k];
            double r = std::sqrt(std::norm(x) + std::norm(y));
            if (r == 0.0) { rots.push_back({cplx(1, 0), cplx(0, 0)}); continue; }
            cplx cs = x / r, sn = y / r;
            rots.push_back({cs, sn});
            for (int j = k; j <= m; ++j) {
                cplx h1 = H[k][j], h2 = H[k + 1][j];
                H[k][j] = std::conj(cs) * h1 + std::conj(sn) * h2;
                H[k + 1][j] = -sn * h1 + cs * h2;
            }
        }
        // H = R Q
        for (int k = 0; k < m; ++k) {
            cplx cs = rots[size_t(k)][0], sn = rots[size_t(k)][1];
            for (int i = 0; i <= std::min(k + 2, m); ++i) {
                cplx h1 = H[i][k], h2 = H[i][k + 1];
                H[i][k] = h1 * cs + h2 * sn;
                H[i][k + 1] = -h1 * std::conj(sn) + h2 * std::conj(cs);
            }
        }
        for (int i = 0; i <= m; ++i) H[i][i] += mu;
    }
    eig.push_back(H[0][0]);
    while (eig.size() < n) eig.push_back(cplx(0, 0));  // only on iteration failure
    return eig;
}

// ---------------------------------------------------------------------------
// Discriminant via the Sylvester resultant Res(P, P') (7x7 determinant),
// equal to the Lagrange D0 for a monic quartic.
// ---------------------------------------------------------------------------
inline double resultant_discriminant(const stokes::QuarticCoeffs& q) {
    const double P[5] = {1.0, q.c3, q.c2, q.c1, q.c0};
    const double D[4] = {4.0, 3.0 * q.c3, 2.0 * q.c2, q.c1};
    double S[7][7] = {};
    for (int r = 0; r < 3; ++r)
        for (int k = 0; k < 5; ++k) S[r][r + k] = P[k];
    for (int r = 0; r < 4; ++r)
        for (int k = 0; k < 4; ++k) S[3 + r][r + k] = D[k];
    // LU with partial pivoting
    double det = 1.0;
    for (int col = 0; col < 7; ++col) {
        int piv = col;
        for (int r = col + 1; r < 7; ++r)
            if (std::abs(S[r][col]) > std::abs(S[piv][col])) piv = r;
        if (S[piv][col] == 0.0) return 0.0;
        if (piv != col) {
            for (int k = 0; k < 7; ++k) std::swap(S[piv][k], S[col][k]);
            det = -det;
        }
        det *= S[col][col];
        for (int r = col + 1; r < 7; ++r) {
            double f = S[r][col] / S[col][col];
            for (int k = col; k < 7; ++k) S[r][k] -= f * S[col][k];
        }
    }
    return det;
}

// ---------------------------------------------------------------------------
// Composite-Simpson Q-length along a straight segment with sequentially
// aligned square roots (refinement oracle for the adaptive quadrature).
// ---------------------------------------------------------------------------
inline cplx simpson_q_length(cplx a, cplx b, const stokes::QuarticCoeffs& c, int n_panels) {
    auto Q = [&](cplx z) {
        return -c.eval(z) / ((z - 1.0) * (z - 1.0) * (z + 1.0) * (z + 1.0));
    };
    const int N = 2 * n_panels;
    std::vector<cplx> u(size_t(N) + 1);
    cplx prev(0, 0);
    for (int i = 0; i <= N; ++i) {
        cplx z = a + (b - a) * (double(i) / N);
        cplx s = std::sqrt(Q(z));
        if (prev != cplx(0, 0)
            && s.real() * prev.real() + s.imag() * prev.imag() < 0.0)
            s = -s;
        u[size_t(i)] = s;
        prev = s;
    }
    cplx acc(0, 0);
    for (int i = 0; i < N; i += 2) acc += u[size_t(i)] + 4.0 * u[size_t(i) + 1] + u[size_t(i) + 2];
    return acc * (b - a) / (3.0 * double(N));
}

// ---------------------------------------------------------------------------
// Trapezoidal contour integral of sqrt(Q0) around a pole.
// ---------------------------------------------------------------------------
inline double contour_delta(const stokes::QuarticCoeffs& c, int k, double radius, int n) {
    auto Q = [&](cplx z) {
        return -c.eval(z) / ((z - 1.0) * (z - 1.0) * (z + 1.0) * (z + 1.0));
    };
    std::vector<cplx> u(size_t(n) + 1);
    cplx prev(0, 0);
    auto at = [&](int i) {
        double th = 2.0 * M_PI * i / n;
        return cplx(double(k), 0.0) + radius * cplx(std::cos(th), std::sin(th));
    };
    for (int i = 0; i <= n; ++i) {
        cplx s = std::sqrt(Q(at(i)));
        if (prev != cplx(0, 0)
            && s.real() * prev.real() + s.imag() * prev.imag() < 0.0)
            s = -s;
        u[size_t(i)] = s;
        prev = s;
    }
    cplx acc(0, 0);
    for (int i = 0; i < n; ++i) acc += 0.5 * (u[size_t(i)] + u[size_t(i) + 1]) * (at(i + 1) - at(i));
    return std::abs(acc);
}

} // namespace oracles

#endif
