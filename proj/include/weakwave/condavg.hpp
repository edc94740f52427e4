#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "weakwave/metrology.hpp"
#include "weakwave/pointer.hpp"
#include "weakwave/qcore.hpp"
#include "weakwave/quadrature.hpp"

namespace weakwave {

// Value alpha(x) attached to each pixel when averaging.
class ValueAssignment {
public:
    enum class Kind { GeneralizedPosition, Custom };

    // alpha(x) = x / epsilon, epsilon > 0.
    static ValueAssignment generalized_position(double epsilon);
    static ValueAssignment custom(std::function<double(double)> alpha);
    // Piecewise-linear table over an increasing axis, constant beyond its ends.
    static ValueAssignment custom_table(std::vector<double> axis, std::vector<double> values);

    [[nodiscard]] Kind kind() const noexcept { return kind_; }
    [[nodiscard]] double operator()(double x) const { return alpha_(x); }

private:
    ValueAssignment(Kind kind, std::function<double(double)> alpha)
        : kind_(kind), alpha_(std::move(alpha)) {}

    Kind kind_;
    std::function<double(double)> alpha_;
};

// Pixel POVM element |psi(x - eps)|^2 |H><H| + |psi(x + eps)|^2 |V><V|.
struct ProbabilityOperator {
    double x = 0.0;
    Eigen::Matrix2cd matrix;
};

ProbabilityOperator probability_operator(const TransverseProfile& profile, double epsilon, double x);

// <i|P_x|i>: pixel probability with no polarization postselection.
double pixel_probability(const Ket& i, const TransverseProfile& profile, double epsilon, double x);

// \int (x/eps) P_eps(x) dx. Throws NonCenteredProfile when the profile mean
// exceeds 1e-10 in magnitude.
double generalized_average(const Ket& i, const TransverseProfile& profile, double epsilon,
                           std::optional<GridSpec> grid = std::nullopt);

// Max-entry norm of \int alpha(x) P_x dx - S. Throws InvalidArgument if
// alpha is non-finite anywhere on the grid.
double operator_identity_residual(const TransverseProfile& profile, double epsilon,
                                  const ValueAssignment& assignment,
                                  std::optional<GridSpec> grid = std::nullopt);

// \int (x/eps) P_eps(x | f) dx with the exact interfering postselected
// density. Throws ZeroPostselectedIntensity when the postselection is dark.
double conditioned_average(const Ket& i, const Ket& f, const TransverseProfile& profile,
                           double epsilon, std::optional<GridSpec> grid = std::nullopt);

// Large-displacement limit: the eigenvalue average weighted by the two
// non-interfering branch probabilities.
double classical_conditioned_average(const Ket& i, const Ket& f);

struct InterpolationRow {
    double theta = 0.0;
    double epsilon = 0.0;
    std::optional<double> cond_avg;
    std::optional<double> re_sw;
    std::optional<double> classical;
};

// Quadrature grid for a sweep: the half-width defaults to the smallest
// admissible value for each displacement.
struct SweepGrid {
    std::optional<double> half_width;
    int points = GridSpec::kDefaultPoints;
};

// Conditioned averages over a postselection sweep for each displacement,
// with the Re S_w and classical reference curves. Rows are ordered by
// epsilon, then theta; dark-port entries are absent.
std::vector<InterpolationRow> interpolation_sweep(const Ket& i, const ThetaRange& range,
                                                  std::span<const double> epsilons,
                                                  const TransverseProfile& profile,
                                                  const SweepGrid& grid = {},
                                                  unsigned workers = worker_count());

}  // namespace weakwave
