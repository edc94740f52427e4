#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "weakwave/crystal.hpp"
#include "weakwave/parallel.hpp"
#include "weakwave/qcore.hpp"

namespace weakwave {

// Half-open sweep lo + k (hi - lo) / steps, k = 0 .. steps-1.
struct ThetaRange {
    double lo = 0.0;
    double hi = 2.0 * kPi;
    int steps = 2001;

    // Throws InvalidArgument unless steps >= 2, bounds finite, hi > lo.
    void validate() const;
    [[nodiscard]] double at(int k) const noexcept { return lo + k * (hi - lo) / steps; }
};

// Postselection cos(theta/2)|H> + sin(theta/2)|V> for any real theta.
Ket polarizer_state(double theta);

struct SweepRow {
    double param = 0.0;
    // Absent where the postselection is orthogonal to the preselection.
    std::optional<double> re_wv;
    std::optional<double> im_wv;
    double postselect_prob = 0.0;
};

struct SweepResult {
    std::string parameter_name;
    std::vector<SweepRow> rows;
};

// Weak value of `a` for the elliptical preselection (phi) and a rotating
// linear postselection over theta.
SweepResult sweep_theta(double phi, const ThetaRange& range,
                        const HermitianObservable& a = HermitianObservable::stokes());

// Inverts the linear centroid response: centroid / Re S_w (position plane)
// or centroid 2 sigma^2 / Im S_w (Fourier plane). Throws DegenerateAmplifier
// when the relevant part of S_w is within 1e-12 of zero.
double estimate_epsilon(double measured_centroid, cplx s_w, Plane plane, double sigma);

struct SnrIdentity {
    double lhs = 0.0;  // P(theta) |S_w|^2
    double rhs = 0.0;  // |<f|S|i>|^2
};

// Amplification / detection-probability tradeoff P |S_w|^2 = |<f|S|i>|^2.
// At orthogonality lhs takes its continuous limit.
SnrIdentity snr_identity_check(double phi, double theta);

// d/d eps ln P_eps(pixel | f) by central difference with step
// max(1e-6, 1e-4 eps). Throws ZeroDensity when the density is <= 1e-15.
double fisher_score(const CrystalSetup& setup, double pixel);
inline double fisher_step(double epsilon) { return std::max(1e-6, epsilon * 1e-4); }

// \int score^2 P_eps(xi | f) d xi on the setup grid.
double fisher_information(const CrystalSetup& setup);

// Counter-based uniform deviate in [0, 1): a pure function of (seed, counter).
double counter_uniform(std::uint64_t seed, std::uint64_t counter);
// Independent seed for a sub-experiment (e.g. one trial of many).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

struct PhotonSample {
    std::vector<double> positions;
    std::uint64_t seed = 0;
    std::int64_t n_requested = 0;
    std::int64_t n_detected = 0;
};

// Photon k survives postselection when u(seed, 2k) < total; survivors are
// placed by inverse CDF of the conditioned density (piecewise linear on the
// grid) at u(seed, 2k+1). Identical output for any worker count.
PhotonSample sample_photons(const CrystalSetup& setup, std::int64_t n, std::uint64_t seed,
                            unsigned workers = worker_count());

struct SampleStats {
    double mean = 0.0;
    double standard_error = 0.0;
};

// Mean and standard error of detected positions. Throws
// ZeroPostselectedIntensity for an empty sample.
SampleStats sample_statistics(const PhotonSample& sample);

}  // namespace weakwave
