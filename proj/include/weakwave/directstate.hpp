#pragma once

#include <optional>

#include "weakwave/qcore.hpp"

namespace weakwave {

enum class ReconstructionMethod { ExactWeakValues, SimulatedWeakValues };

struct ReconstructionReport {
    Ket reconstructed;
    double fidelity = 0.0;
    // <D|H>/<D|i>, the scale relating the weak values to the true amplitudes.
    cplx c_factor;
    ReconstructionMethod method = ReconstructionMethod::ExactWeakValues;
    // Displacement used by the simulated measurement.
    std::optional<double> epsilon;
};

// Qubit state with components H_w = (1 + S_w)/2 and V_w = (1 - S_w)/2,
// normalized, with the larger-magnitude component made real and positive
// (ties go to H).
Ket direct_state(cplx s_w);

// Exact S_w with the |D> postselection, then direct_state.
ReconstructionReport reconstruct_exact(const Ket& i_true);

// Simulated measurement: Re S_w from the position-plane centroid and Im S_w
// from the Fourier-plane centroid of the crystal experiment with |D>
// postselection, then direct_state. Throws SmallOverlap when
// |<D|i_true>|^2 <= 1e-6.
ReconstructionReport reconstruct_via_crystal(const Ket& i_true, double epsilon, double sigma = 1.0);

inline constexpr double kMinDiagonalOverlap = 1e-6;

}  // namespace weakwave
