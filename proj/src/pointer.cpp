#include "weakwave/pointer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "weakwave/errors.hpp"

namespace weakwave {

namespace {

constexpr double kExtentWidths = 8.0;

double position_norm_factor(double sigma) { return std::pow(2.0 * kPi * sigma * sigma, -0.25); }

double momentum_norm_factor(double sigma) { return std::pow(2.0 * sigma * sigma / kPi, 0.25); }

// \int conj(g_a) g_b dx for unit-coefficient modes.
cplx mode_overlap(const GaussianMode& a, const GaussianMode& b) {
    const double wa = 1.0 / (4.0 * a.sigma * a.sigma);
    const double wb = 1.0 / (4.0 * b.sigma * b.sigma);
    const double quad = wa + wb;
    const cplx lin(2.0 * (wa * a.center + wb * b.center), b.phase_momentum - a.phase_momentum);
    const double constant = -(wa * a.center * a.center + wb * b.center * b.center);
    return position_norm_factor(a.sigma) * position_norm_factor(b.sigma) * std::sqrt(kPi / quad) *
           std::exp(lin * lin / (4.0 * quad) + constant);
}

cplx mode_x(const GaussianMode& m, double x) {
    const double u = x - m.center;
    return m.coeff * position_norm_factor(m.sigma) * std::exp(-u * u / (4.0 * m.sigma * m.sigma)) *
           std::polar(1.0, m.phase_momentum * x);
}

}  // namespace

TransverseProfile::TransverseProfile(std::vector<GaussianMode> modes) : modes_(std::move(modes)) {
    if (modes_.empty()) {
        throw InvalidArgument("TransverseProfile: at least one mode required");
    }
    for (const auto& m : modes_) {
        if (!(m.sigma > 0.0) || !std::isfinite(m.sigma) || !std::isfinite(m.center) ||
            !std::isfinite(m.phase_momentum) || !std::isfinite(m.coeff.real()) ||
            !std::isfinite(m.coeff.imag())) {
            throw InvalidArgument("TransverseProfile: mode parameters must be finite with sigma > 0");
        }
    }
    double norm2 = 0.0;
    for (const auto& a : modes_) {
        for (const auto& b : modes_) {
            norm2 += (std::conj(a.coeff) * b.coeff * mode_overlap(a, b)).real();
        }
    }
    if (!(norm2 > 0.0)) {
        throw InvalidArgument("TransverseProfile: zero-norm superposition");
    }
    const double scale = 1.0 / std::sqrt(norm2);
    for (auto& m : modes_) {
        m.coeff *= scale;
    }
}

TransverseProfile TransverseProfile::gaussian(double sigma, double center, double phase_momentum) {
    return TransverseProfile({GaussianMode{sigma, center, phase_momentum, 1.0}});
}

TransverseProfile TransverseProfile::two_slit(double half_separation, double sigma,
                                              double slit_momentum) {
    return TransverseProfile({GaussianMode{sigma, -half_separation, slit_momentum, 1.0},
                              GaussianMode{sigma, half_separation, -slit_momentum, 1.0}});
}

TransverseProfile TransverseProfile::shifted(double d) const {
    auto modes = modes_;
    for (auto& m : modes) {
        m.center += d;
        m.coeff *= std::polar(1.0, -m.phase_momentum * d);
    }
    return TransverseProfile(std::move(modes));
}

double TransverseProfile::position_extent() const {
    double extent = 0.0;
    for (const auto& m : modes_) {
        extent = std::max(extent, std::abs(m.center) + kExtentWidths * m.sigma);
    }
    return extent;
}

double TransverseProfile::momentum_extent() const {
    double extent = 0.0;
    for (const auto& m : modes_) {
        extent = std::max(extent, std::abs(m.phase_momentum) + kExtentWidths / (2.0 * m.sigma));
    }
    return extent;
}

double TransverseProfile::max_sigma() const {
    double s = 0.0;
    for (const auto& m : modes_) {
        s = std::max(s, m.sigma);
    }
    return s;
}

cplx overlap(const TransverseProfile& a, const TransverseProfile& b) {
    cplx total = 0.0;
    for (const auto& ma : a.modes()) {
        for (const auto& mb : b.modes()) {
            total += std::conj(ma.coeff) * mb.coeff * mode_overlap(ma, mb);
        }
    }
    return total;
}

cplx psi_x(const TransverseProfile& profile, double x) {
    cplx total = 0.0;
    for (const auto& m : profile.modes()) {
        total += mode_x(m, x);
    }
    return total;
}

cplx dpsi_x(const TransverseProfile& profile, double x) {
    cplx total = 0.0;
    for (const auto& m : profile.modes()) {
        const cplx rate(-(x - m.center) / (2.0 * m.sigma * m.sigma), m.phase_momentum);
        total += rate * mode_x(m, x);
    }
    return total;
}

cplx psi_p(const TransverseProfile& profile, double p) {
    cplx total = 0.0;
    for (const auto& m : profile.modes()) {
        const double q = p - m.phase_momentum;
        total += m.coeff * momentum_norm_factor(m.sigma) * std::exp(-m.sigma * m.sigma * q * q) *
                 std::polar(1.0, -q * m.center);
    }
    return total;
}

cplx pointer_weak_value_position(const TransverseProfile& profile, double x) {
    const cplx amp = psi_x(profile, x);
    if (std::abs(amp) <= kNodeThreshold) {
        throw NodePoint("pointer amplitude vanishes at x = " + std::to_string(x));
    }
    return cplx(0.0, -1.0) * dpsi_x(profile, x) / amp;
}

cplx pointer_weak_value_momentum(double p) { return {p, 0.0}; }

double bohm_momentum(const TransverseProfile& profile, double x) {
    return pointer_weak_value_position(profile, x).real();
}

PhaseField phase_field(const TransverseProfile& profile, std::span<const double> grid) {
    for (std::size_t k = 1; k < grid.size(); ++k) {
        if (!(grid[k] > grid[k - 1])) {
            throw InvalidArgument("phase_field: grid must be strictly increasing");
        }
    }
    PhaseField field{std::vector<double>(grid.begin(), grid.end()),
                     std::vector<double>(grid.size(), std::numeric_limits<double>::quiet_NaN())};
    bool have_previous = false;
    double previous = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const cplx amp = psi_x(profile, grid[k]);
        if (std::norm(amp) <= 1e-30) {
            have_previous = false;
            continue;
        }
        double phase = std::arg(amp);
        if (have_previous) {
            phase = previous + std::remainder(phase - previous, 2.0 * kPi);
        }
        field.phi_values[k] = phase;
        previous = phase;
        have_previous = true;
    }
    return field;
}

}  // namespace weakwave
