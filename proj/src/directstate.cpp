#include "weakwave/directstate.hpp"

#include <cmath>
#include <string>

#include "weakwave/crystal.hpp"
#include "weakwave/errors.hpp"
#include "weakwave/metrology.hpp"
#include "weakwave/weakval.hpp"

namespace weakwave {

namespace {

void require_qubit(const Ket& k) {
    if (k.dim() != 2) {
        throw InvalidArgument("direct state determination is defined for qubits");
    }
}

cplx c_factor_for(const Ket& i_true) {
    const Ket d = Ket::diagonal();
    return inner(d, Ket::horizontal()) / inner(d, i_true);
}

}  // namespace

Ket direct_state(cplx s_w) {
    if (!std::isfinite(s_w.real()) || !std::isfinite(s_w.imag())) {
        throw InvalidArgument("direct_state: S_w must be finite");
    }
    const cplx h_w = (1.0 + s_w) / 2.0;
    const cplx v_w = (1.0 - s_w) / 2.0;
    // h_w + v_w = 1, so the pair never vanishes.
    const cplx pivot = std::abs(h_w) >= std::abs(v_w) ? h_w : v_w;
    const cplx phase = std::conj(pivot) / std::abs(pivot);
    return Ket{h_w * phase, v_w * phase};
}

ReconstructionReport reconstruct_exact(const Ket& i_true) {
    require_qubit(i_true);
    const cplx s_w = weak_value(HermitianObservable::stokes(), i_true, Ket::diagonal()).value;
    Ket rec = direct_state(s_w);
    const double fid = 1.0 - infidelity(rec, i_true);
    return {std::move(rec), fid, c_factor_for(i_true), ReconstructionMethod::ExactWeakValues, std::nullopt};
}

ReconstructionReport reconstruct_via_crystal(const Ket& i_true, double epsilon, double sigma) {
    require_qubit(i_true);
    if (!(epsilon > 0.0)) {
        throw InvalidArgument("reconstruct_via_crystal: epsilon must be positive");
    }
    const Ket d = Ket::diagonal();
    const double overlap2 = std::norm(inner(d, i_true));
    if (overlap2 <= kMinDiagonalOverlap) {
        throw SmallOverlap("reconstruct_via_crystal: |<D|i>|^2 = " + std::to_string(overlap2) +
                           " too small for the linear response");
    }
    const TransverseProfile beam = TransverseProfile::gaussian(sigma);
    const double x_shift = centroid(CrystalSetup::make(epsilon, i_true, d, beam, Plane::Position));
    const double p_shift = centroid(CrystalSetup::make(epsilon, i_true, d, beam, Plane::Fourier));
    // Invert centroid = eps Re S_w and centroid = eps Im S_w / (2 sigma^2).
    const cplx s_w(x_shift / epsilon, p_shift * 2.0 * sigma * sigma / epsilon);

    Ket rec = direct_state(s_w);
    const double fid = 1.0 - infidelity(rec, i_true);
    return {std::move(rec), fid, c_factor_for(i_true), ReconstructionMethod::SimulatedWeakValues, epsilon};
}

}  // namespace weakwave
