#pragma once

#include <array>
#include <complex>
#include <initializer_list>

#include <Eigen/Dense>

namespace weakwave {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

// Normalized pure state of a finite-dimensional system. Immutable once built.
class Ket {
public:
    // Normalizes the input. Throws InvalidArgument for empty, zero or
    // non-finite vectors.
    explicit Ket(Eigen::VectorXcd amplitudes);
    Ket(std::initializer_list<cplx> amplitudes);

    static Ket basis(Eigen::Index dim, Eigen::Index k);
    static Ket horizontal() { return basis(2, 0); }
    static Ket vertical() { return basis(2, 1); }
    // (|H> + |V>)/sqrt(2)
    static Ket diagonal();

    [[nodiscard]] Eigen::Index dim() const noexcept { return amps_.size(); }
    [[nodiscard]] const Eigen::VectorXcd& amplitudes() const noexcept { return amps_; }
    [[nodiscard]] cplx operator[](Eigen::Index k) const { return amps_(k); }

private:
    Eigen::VectorXcd amps_;
};

class HermitianObservable {
public:
    // Throws InvalidArgument unless square and Hermitian within 1e-12.
    explicit HermitianObservable(Eigen::MatrixXcd matrix);

    // |H><H| - |V><V|
    static HermitianObservable stokes();
    static HermitianObservable identity(Eigen::Index dim);

    [[nodiscard]] Eigen::Index dim() const noexcept { return m_.rows(); }
    [[nodiscard]] const Eigen::MatrixXcd& matrix() const noexcept { return m_; }

private:
    Eigen::MatrixXcd m_;
};

// Ellipticity phase of the preparation and angle of the postselection polarizer.
struct PolarizationConfig {
    double phi = 0.1;
    double theta = kPi / 2 - 0.2;

    // Throws InvalidArgument unless phi in [-pi, pi] and theta in [0, 2pi).
    void validate() const;
};

// Scale factors for reporting. Internally hbar = 1 and lengths are in the
// same unit as the beam width.
struct UnitSystem {
    double hbar = 1.0;
    double sigma_unit = 1.0;

    [[nodiscard]] double length(double x) const noexcept { return x * sigma_unit; }
    [[nodiscard]] double momentum(double p) const noexcept { return p * hbar / sigma_unit; }
};

struct PoincarePoint {
    double s1 = 0.0;
    double s2 = 0.0;
    double s3 = 0.0;
};

// <f|i>, conjugating f.
cplx inner(const Ket& f, const Ket& i);

// (|H> - e^{i phi}|V>)/sqrt(2)
Ket make_preselection(const PolarizationConfig& cfg);
// cos(theta/2)|H> + sin(theta/2)|V>
Ket make_postselection(const PolarizationConfig& cfg);

double expectation(const HermitianObservable& a, const Ket& psi);

// s1 = <S> (H/V axis), s2 along the diagonal, s3 circular.
PoincarePoint poincare_coords(const Ket& psi);

// 1 - |<a|b>|^2 evaluated as the squared norm of the component of b
// orthogonal to a, which keeps precision near unit fidelity.
double infidelity(const Ket& a, const Ket& b);

}  // namespace weakwave
