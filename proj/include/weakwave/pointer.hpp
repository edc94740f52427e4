#pragma once

#include <span>
#include <vector>

#include "weakwave/qcore.hpp"

namespace weakwave {

// coeff * (2 pi sigma^2)^{-1/4} exp(-(x - center)^2 / 4 sigma^2) exp(i phase_momentum x)
struct GaussianMode {
    double sigma = 1.0;
    double center = 0.0;
    double phase_momentum = 0.0;
    cplx coeff{1.0, 0.0};
};

// Transverse beam amplitude <x|psi> as a finite superposition of Gaussian
// modes. Coefficients are rescaled on construction so that the profile has
// unit norm (evaluated analytically from pairwise mode overlaps).
class TransverseProfile {
public:
    explicit TransverseProfile(std::vector<GaussianMode> modes);

    static TransverseProfile gaussian(double sigma = 1.0, double center = 0.0,
                                      double phase_momentum = 0.0);
    // Equal-weight pair of width-sigma Gaussians at +-half_separation, tilted
    // towards each other by slit_momentum (the left mode carries +slit_momentum).
    static TransverseProfile two_slit(double half_separation = 5.0, double sigma = 1.0,
                                      double slit_momentum = 0.0);

    [[nodiscard]] const std::vector<GaussianMode>& modes() const noexcept { return modes_; }

    // psi(x - d)
    [[nodiscard]] TransverseProfile shifted(double d) const;

    // Half-width beyond which every mode's position (momentum) density is
    // below e^{-32} of its peak.
    [[nodiscard]] double position_extent() const;
    [[nodiscard]] double momentum_extent() const;
    [[nodiscard]] double max_sigma() const;

private:
    std::vector<GaussianMode> modes_;
};

// Analytic <a|b>.
cplx overlap(const TransverseProfile& a, const TransverseProfile& b);

cplx psi_x(const TransverseProfile& profile, double x);
cplx dpsi_x(const TransverseProfile& profile, double x);
// Fourier transform (2 pi)^{-1/2} \int e^{-ipx} psi(x) dx.
cplx psi_p(const TransverseProfile& profile, double p);

// Amplitudes at or below this magnitude count as nodes.
inline constexpr double kNodeThreshold = 1e-15;

// <x|p|psi>/<x|psi> = -i psi'(x)/psi(x). Throws NodePoint at profile zeros.
cplx pointer_weak_value_position(const TransverseProfile& profile, double x);
// <p|p|psi>/<p|psi> = p.
cplx pointer_weak_value_momentum(double p);

// Phase gradient of psi at x, i.e. Re of the position-postselected momentum
// weak value. Throws NodePoint at profile zeros.
double bohm_momentum(const TransverseProfile& profile, double x);

// Phase of psi along an increasing grid, continued onto the nearest branch
// between neighbours. Entries where |psi|^2 <= 1e-30 are NaN and the
// continuation restarts after them.
struct PhaseField {
    std::vector<double> grid;
    std::vector<double> phi_values;
};

PhaseField phase_field(const TransverseProfile& profile, std::span<const double> grid);

}  // namespace weakwave
