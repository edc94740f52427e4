#include "weakwave/qcore.hpp"

#include <cmath>
#include <string>

#include "weakwave/errors.hpp"

namespace weakwave {

namespace {

constexpr double kHermitianTol = 1e-12;

void require_same_dim(Eigen::Index a, Eigen::Index b, const char* what) {
    if (a != b) {
        throw InvalidArgument(std::string(what) + ": dimension mismatch (" + std::to_string(a) +
                              " vs " + std::to_string(b) + ")");
    }
}

}  // namespace

Ket::Ket(Eigen::VectorXcd amplitudes) : amps_(std::move(amplitudes)) {
    if (amps_.size() == 0) {
        throw InvalidArgument("Ket: empty amplitude vector");
    }
    if (!amps_.allFinite()) {
        throw InvalidArgument("Ket: non-finite amplitude");
    }
    const double norm = amps_.norm();
    if (!(norm > 0.0)) {
        throw InvalidArgument("Ket: zero vector cannot be normalized");
    }
    amps_ /= norm;
}

Ket::Ket(std::initializer_list<cplx> amplitudes)
    : Ket(Eigen::Map<const Eigen::VectorXcd>(amplitudes.begin(),
                                             static_cast<Eigen::Index>(amplitudes.size()))) {}

Ket Ket::basis(Eigen::Index dim, Eigen::Index k) {
    if (dim < 1 || k < 0 || k >= dim) {
        throw InvalidArgument("Ket::basis: index out of range");
    }
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
    v(k) = 1.0;
    return Ket(std::move(v));
}

Ket Ket::diagonal() { return Ket{cplx(1.0), cplx(1.0)}; }

HermitianObservable::HermitianObservable(Eigen::MatrixXcd matrix) : m_(std::move(matrix)) {
    if (m_.rows() == 0 || m_.rows() != m_.cols()) {
        throw InvalidArgument("HermitianObservable: matrix must be square and nonempty");
    }
    if (!m_.allFinite()) {
        throw InvalidArgument("HermitianObservable: non-finite entry");
    }
    const double dev = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
    if (dev > kHermitianTol) {
        throw InvalidArgument("HermitianObservable: matrix is not Hermitian (deviation " +
                              std::to_string(dev) + ")");
    }
}

HermitianObservable HermitianObservable::stokes() {
    Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(2, 2);
    s(0, 0) = 1.0;
    s(1, 1) = -1.0;
    return HermitianObservable(std::move(s));
}

HermitianObservable HermitianObservable::identity(Eigen::Index dim) {
    return HermitianObservable(Eigen::MatrixXcd::Identity(dim, dim));
}

void PolarizationConfig::validate() const {
    if (!std::isfinite(phi) || phi < -kPi || phi > kPi) {
        throw InvalidArgument("phi must lie in [-pi, pi]");
    }
    if (!std::isfinite(theta) || theta < 0.0 || theta >= 2.0 * kPi) {
        throw InvalidArgument("theta must lie in [0, 2pi)");
    }
}

cplx inner(const Ket& f, const Ket& i) {
    require_same_dim(f.dim(), i.dim(), "inner");
    return f.amplitudes().dot(i.amplitudes());  // Eigen's dot conjugates the left operand
}

Ket make_preselection(const PolarizationConfig& cfg) {
    cfg.validate();
    return Ket{cplx(1.0), -std::polar(1.0, cfg.phi)};
}

Ket make_postselection(const PolarizationConfig& cfg) {
    cfg.validate();
    return Ket{cplx(std::cos(cfg.theta / 2)), cplx(std::sin(cfg.theta / 2))};
}

double expectation(const HermitianObservable& a, const Ket& psi) {
    require_same_dim(a.dim(), psi.dim(), "expectation");
    const cplx value = psi.amplitudes().dot(a.matrix() * psi.amplitudes());
    // Hermiticity bounds the imaginary part by roundoff.
    const double scale = std::max(1.0, a.matrix().cwiseAbs().maxCoeff());
    if (std::abs(value.imag()) > 1e-12 * scale * static_cast<double>(a.dim())) {
        throw Error("expectation: imaginary residual " + std::to_string(value.imag()));
    }
    return value.real();
}

PoincarePoint poincare_coords(const Ket& psi) {
    if (psi.dim() != 2) {
        throw InvalidArgument("poincare_coords: qubit state required");
    }
    const cplx h = psi[0];
    const cplx v = psi[1];
    const cplx cross = std::conj(h) * v;
    return {std::norm(h) - std::norm(v), 2.0 * cross.real(), 2.0 * cross.imag()};
}

double infidelity(const Ket& a, const Ket& b) {
    require_same_dim(a.dim(), b.dim(), "infidelity");
    const cplx overlap = inner(a, b);
    const Eigen::VectorXcd residual = b.amplitudes() - overlap * a.amplitudes();
    return residual.squaredNorm();
}

}  // namespace weakwave
