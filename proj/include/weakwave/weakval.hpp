#pragma once

#include "weakwave/qcore.hpp"

namespace weakwave {

// Postselections with |<f|i>|^2 at or below this are treated as orthogonal.
inline constexpr double kOrthogonalityThreshold = 1e-12;
// Largest generator handled by unitary_from_generator.
inline constexpr Eigen::Index kMaxGeneratorDim = 16;

struct WeakValueResult {
    int order = 1;
    cplx value;
    Ket preselect;
    Ket postselect;
};

// <f|A^n|i> / <f|i>, computed by applying A n times to |i>.
// Throws OrthogonalPostselection when |<f|i>|^2 <= kOrthogonalityThreshold.
WeakValueResult weak_value(const HermitianObservable& a, const Ket& i, const Ket& f, int n = 1);

// exp(-i epsilon A) via the spectral decomposition of A.
Eigen::MatrixXcd unitary_from_generator(const HermitianObservable& a, double epsilon);

// |<f| exp(-i epsilon A) |i>|^2, no truncation.
double perturbed_probability(const HermitianObservable& a, const Ket& i, const Ket& f,
                             double epsilon);

// Relative probability change P_eps/P expanded in epsilon:
//   order 1: 1 + 2 eps Im A_w
//   order 2: ... - eps^2 [Re A^2_w - |A_w|^2]
double ratio_series(const HermitianObservable& a, const Ket& i, const Ket& f, double epsilon,
                    int order);

}  // namespace weakwave
