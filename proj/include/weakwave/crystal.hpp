#pragma once

#include <optional>
#include <vector>

#include "weakwave/pointer.hpp"
#include "weakwave/qcore.hpp"
#include "weakwave/quadrature.hpp"

namespace weakwave {

// Which transverse variable the CCD records: the crystal face (x) or its
// Fourier plane (p).
enum class Plane { Position, Fourier };

const char* to_string(Plane plane);

// A polarized beam displaced by a birefringent crystal,
//   U = exp(-i epsilon S (x) p),
// then postselected on a polarization and recorded on a pixel grid.
struct CrystalSetup {
    double epsilon = 0.0;
    // Interaction time and displacement speed; only their product enters.
    std::optional<double> tau;
    std::optional<double> v;
    Ket preselect = make_preselection(PolarizationConfig{});
    Ket postselect = make_postselection(PolarizationConfig{});
    TransverseProfile profile = TransverseProfile::gaussian();
    Plane plane = Plane::Position;
    GridSpec grid{};

    // Setup whose grid is default_grid(profile, plane, epsilon).
    static CrystalSetup make(double epsilon, Ket preselect, Ket postselect,
                             TransverseProfile profile = TransverseProfile::gaussian(),
                             Plane plane = Plane::Position);

    // Throws InvalidArgument on any violated invariant.
    void validate() const;
};

// Smallest admissible half-width for the plane: position extent + epsilon
// (8 sigma + epsilon for a centered Gaussian) or the momentum extent.
double required_half_width(const TransverseProfile& profile, Plane plane, double epsilon);
GridSpec default_grid(const TransverseProfile& profile, Plane plane, double epsilon,
                      int points = GridSpec::kDefaultPoints);

struct DensityProfile {
    std::vector<double> axis;
    std::vector<double> values;
    double total = 0.0;
};

struct RatioRow {
    double axis = 0.0;
    // NaN where the unperturbed density vanishes.
    double exact_ratio = 0.0;
    double first_order_ratio = 0.0;
};

// <f|H><H|i> psi(x - eps) + <f|V><V|i> psi(x + eps). Position plane only.
cplx joint_amplitude_x(const CrystalSetup& setup, double x);
// (<f|H><H|i> e^{-ip eps} + <f|V><V|i> e^{ip eps}) psi~(p). Fourier plane only.
cplx joint_amplitude_p(const CrystalSetup& setup, double p);

// Postselected density on the setup's grid and its Simpson integral.
DensityProfile perturbed_density(const CrystalSetup& setup);
// Same postselection without the crystal: |<f|i>|^2 |psi(xi)|^2.
DensityProfile unperturbed_density(const CrystalSetup& setup);

// Analytic |<f|U|i,psi>|^2 summed over all pixels (plane independent).
double postselection_probability(const CrystalSetup& setup);

std::vector<RatioRow> ratio_profile(const CrystalSetup& setup);

// 2 eps [Re S_w Im p_w + Im S_w Re p_w] at a pixel, with the pointer weak
// value of the setup's plane.
double first_order_correction(const CrystalSetup& setup, double pixel);

// Mean of x (or p) over the renormalized postselected density.
// Throws ZeroPostselectedIntensity when the postselected total is <= 1e-15.
double centroid(const CrystalSetup& setup);

inline constexpr double kMinPostselectedIntensity = 1e-15;

namespace detail {
// Pixel density with epsilon overridden; epsilon may be any real. No validation.
double density_at(const CrystalSetup& setup, double epsilon, double xi);
// Density samples and Simpson total on the setup grid at an overridden epsilon.
DensityProfile density_on_grid(const CrystalSetup& setup, double epsilon);
// Analytic postselected total at an overridden epsilon. No validation.
double total_probability(const CrystalSetup& setup, double epsilon);
}  // namespace detail

}  // namespace weakwave
