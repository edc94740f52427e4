#pragma once

// Shared test helpers. The oracle functions below use plain std::complex
// arithmetic on 2-vectors and never call into the library.

#include <array>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Eigenvalues>

#include "weakwave/qcore.hpp"

namespace wwtest {

using cplx = std::complex<double>;
using Qubit = std::array<cplx, 2>;

// Reference values at phi = 0.1, theta = pi/2 - 0.2, evaluated at 30 digits
// with mpmath and frozen here.
inline constexpr double kOperatingP = 0.0124148363990920536;
inline const cplx kOperatingSw{8.00128670280305486, 3.94058334165448159};
inline constexpr double kOperatingNumeratorSq = 0.98758516360090795;
inline const cplx kOperatingPreV{-0.70357419257695233, -0.07059288589999415};
inline constexpr double kOperatingPostH = 0.77416707847694648;
inline constexpr double kOperatingPostV = 0.63298130667695819;

inline Qubit pre_oracle(double phi) {
    const double r = 1.0 / std::sqrt(2.0);
    return {cplx{r, 0.0}, -std::polar(r, phi)};
}

inline Qubit post_oracle(double theta) { return {cplx{std::cos(theta / 2)}, cplx{std::sin(theta / 2)}}; }

inline cplx braket(const Qubit& f, const Qubit& i) { return std::conj(f[0]) * i[0] + std::conj(f[1]) * i[1]; }

// <f|S|i> / <f|i> with S = diag(1, -1).
inline cplx stokes_weak_value_oracle(const Qubit& i, const Qubit& f) {
    const cplx num = std::conj(f[0]) * i[0] - std::conj(f[1]) * i[1];
    return num / braket(f, i);
}

inline Qubit to_qubit(const weakwave::Ket& k) { return {k[0], k[1]}; }

inline weakwave::Ket to_ket(const Qubit& q) { return weakwave::Ket{q[0], q[1]}; }

inline weakwave::Ket random_ket(std::mt19937_64& rng, Eigen::Index dim = 2) {
    std::normal_distribution<double> g;
    Eigen::VectorXcd v(dim);
    for (Eigen::Index k = 0; k < dim; ++k) {
        v(k) = cplx{g(rng), g(rng)};
    }
    return weakwave::Ket(v);
}

inline weakwave::HermitianObservable random_hermitian(std::mt19937_64& rng, Eigen::Index dim = 2) {
    std::normal_distribution<double> g;
    Eigen::MatrixXcd m(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r) {
        for (Eigen::Index c = 0; c < dim; ++c) {
            m(r, c) = cplx{g(rng), g(rng)};
        }
    }
    return weakwave::HermitianObservable((m + m.adjoint()) / 2.0);
}

// Random qubit observable rescaled to unit spectral norm, like the Stokes operator.
inline weakwave::HermitianObservable random_unit_observable(std::mt19937_64& rng) {
    const Eigen::MatrixXcd m = random_hermitian(rng, 2).matrix();
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
    return weakwave::HermitianObservable(m / es.eigenvalues().cwiseAbs().maxCoeff());
}

// Coefficient of eps^m in |<f|exp(-i eps A)|i>|^2 / |<f|i>|^2, from the power series of the exponential.
inline double ratio_taylor_coefficient(const Eigen::MatrixXcd& a, const weakwave::Ket& i, const weakwave::Ket& f,
                                       int m) {
    std::vector<cplx> t(static_cast<std::size_t>(m) + 1);
    Eigen::VectorXcd v = i.amplitudes();
    const cplx overlap = f.amplitudes().dot(v);
    double factorial = 1.0;
    cplx phase = 1.0;
    for (int n = 0; n <= m; ++n) {
        if (n > 0) {
            v = a * v;
            factorial *= n;
            phase *= cplx(0.0, -1.0);
        }
        t[static_cast<std::size_t>(n)] = phase / factorial * f.amplitudes().dot(v) / overlap;
    }
    cplx sum = 0.0;
    for (int n = 0; n <= m; ++n) {
        sum += t[static_cast<std::size_t>(n)] * std::conj(t[static_cast<std::size_t>(m - n)]);
    }
    return sum.real();
}

// A log-log slope reads off the order only if the leading remainder term is not accidentally small
// and still dominates the next one at the top of the window.
inline bool leading_term_dominates(const Eigen::MatrixXcd& a, const weakwave::Ket& i, const weakwave::Ket& f,
                                   int order, double eps_max) {
    const double lead = std::abs(ratio_taylor_coefficient(a, i, f, order + 1));
    const double next = std::abs(ratio_taylor_coefficient(a, i, f, order + 2));
    return lead >= 1e-2 && next * eps_max <= 0.25 * lead;
}

// Least-squares slope of log|err| against log eps.
inline double loglog_slope(const std::vector<double>& eps, const std::vector<double>& err) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(eps.size());
    for (std::size_t k = 0; k < eps.size(); ++k) {
        const double x = std::log(eps[k]);
        const double y = std::log(std::abs(err[k]));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

inline std::vector<double> logspace(double lo, double hi, int n) {
    std::vector<double> out;
    for (int k = 0; k < n; ++k) {
        out.push_back(lo * std::pow(hi / lo, static_cast<double>(k) / (n - 1)));
    }
    return out;
}

}  // namespace wwtest
