#include "weakwave/weakval.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "weakwave/errors.hpp"

namespace weakwave {

namespace {

void check_dims(const HermitianObservable& a, const Ket& i, const Ket& f, const char* what) {
    if (a.dim() != i.dim() || a.dim() != f.dim()) {
        throw InvalidArgument(std::string(what) + ": dimension mismatch");
    }
}

cplx checked_overlap(const Ket& f, const Ket& i) {
    const cplx overlap = inner(f, i);
    if (std::norm(overlap) <= kOrthogonalityThreshold) {
        throw OrthogonalPostselection("postselection is orthogonal to preselection (|<f|i>|^2 = " +
                                      std::to_string(std::norm(overlap)) + ")");
    }
    return overlap;
}

}  // namespace

WeakValueResult weak_value(const HermitianObservable& a, const Ket& i, const Ket& f, int n) {
    if (n < 1) {
        throw InvalidArgument("weak_value: order must be positive");
    }
    check_dims(a, i, f, "weak_value");
    const cplx overlap = checked_overlap(f, i);

    Eigen::VectorXcd v = i.amplitudes();
    for (int k = 0; k < n; ++k) {
        v = a.matrix() * v;
    }
    const cplx numerator = f.amplitudes().dot(v);
    // Complex division does not return exactly 1 for equal operands.
    const cplx value = numerator == overlap ? cplx{1.0, 0.0} : numerator / overlap;
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
        throw OrthogonalPostselection("weak_value: non-finite result");
    }
    return {n, value, i, f};
}

namespace {

// U - I for U = exp(-i eps A), computed as V (e^{-i eps lambda} - 1) V^dagger
// so the departure from identity keeps full relative precision at small eps.
Eigen::MatrixXcd unitary_minus_identity(const HermitianObservable& a, double epsilon) {
    if (a.dim() > kMaxGeneratorDim) {
        throw InvalidArgument("unitary_from_generator: dimension " + std::to_string(a.dim()) +
                              " exceeds cap of " + std::to_string(kMaxGeneratorDim));
    }
    if (!std::isfinite(epsilon)) {
        throw InvalidArgument("unitary_from_generator: epsilon must be finite");
    }
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a.matrix());
    const Eigen::VectorXcd shifts = es.eigenvalues().unaryExpr([epsilon](double lambda) {
        const double half = std::sin(-epsilon * lambda / 2);
        return cplx{-2.0 * half * half, std::sin(-epsilon * lambda)};
    });
    return es.eigenvectors() * shifts.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

Eigen::MatrixXcd unitary_from_generator(const HermitianObservable& a, double epsilon) {
    return Eigen::MatrixXcd::Identity(a.dim(), a.dim()) + unitary_minus_identity(a, epsilon);
}

double perturbed_probability(const HermitianObservable& a, const Ket& i, const Ket& f,
                             double epsilon) {
    check_dims(a, i, f, "perturbed_probability");
    const Eigen::MatrixXcd delta = unitary_minus_identity(a, epsilon);
    const double p = std::norm(f.amplitudes().dot(i.amplitudes()) + f.amplitudes().dot(delta * i.amplitudes()));
    return std::min(p, 1.0);
}

double ratio_series(const HermitianObservable& a, const Ket& i, const Ket& f, double epsilon,
                    int order) {
    if (order != 1 && order != 2) {
        throw InvalidArgument("ratio_series: order must be 1 or 2");
    }
    const cplx aw = weak_value(a, i, f, 1).value;
    double ratio = 1.0 + 2.0 * epsilon * aw.imag();
    if (order == 2) {
        const cplx a2w = weak_value(a, i, f, 2).value;
        ratio -= epsilon * epsilon * (a2w.real() - std::norm(aw));
    }
    return ratio;
}

}  // namespace weakwave
