#include "weakwave/condavg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "weakwave/crystal.hpp"
#include "weakwave/errors.hpp"
#include "weakwave/weakval.hpp"

namespace weakwave {

namespace {

void require_positive_epsilon(double epsilon) {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
        throw InvalidArgument("generalized eigenvalues need a positive finite epsilon");
    }
}

void require_qubit(const Ket& k) {
    if (k.dim() != 2) {
        throw InvalidArgument("polarization state must be a qubit");
    }
}

GridSpec grid_or_default(const std::optional<GridSpec>& grid, const TransverseProfile& profile,
                         double epsilon) {
    GridSpec g = grid.value_or(default_grid(profile, Plane::Position, epsilon));
    g.validate();
    return g;
}

}  // namespace

ValueAssignment ValueAssignment::generalized_position(double epsilon) {
    require_positive_epsilon(epsilon);
    return {Kind::GeneralizedPosition, [epsilon](double x) { return x / epsilon; }};
}

ValueAssignment ValueAssignment::custom(std::function<double(double)> alpha) {
    if (!alpha) {
        throw InvalidArgument("ValueAssignment: empty function");
    }
    return {Kind::Custom, std::move(alpha)};
}

ValueAssignment ValueAssignment::custom_table(std::vector<double> axis, std::vector<double> values) {
    if (axis.size() < 2 || axis.size() != values.size()) {
        throw InvalidArgument("ValueAssignment: table needs matching axis/value columns of length >= 2");
    }
    for (std::size_t k = 0; k < axis.size(); ++k) {
        if (!std::isfinite(axis[k]) || !std::isfinite(values[k]) || (k > 0 && !(axis[k] > axis[k - 1]))) {
            throw InvalidArgument("ValueAssignment: table must be finite with increasing axis");
        }
    }
    return {Kind::Custom, [axis = std::move(axis), values = std::move(values)](double x) {
                if (x <= axis.front()) {
                    return values.front();
                }
                if (x >= axis.back()) {
                    return values.back();
                }
                const auto hi = static_cast<std::size_t>(std::upper_bound(axis.begin(), axis.end(), x) - axis.begin());
                const std::size_t lo = hi - 1;
                const double t = (x - axis[lo]) / (axis[hi] - axis[lo]);
                return values[lo] + t * (values[hi] - values[lo]);
            }};
}

ProbabilityOperator probability_operator(const TransverseProfile& profile, double epsilon, double x) {
    require_positive_epsilon(epsilon);
    ProbabilityOperator op{x, Eigen::Matrix2cd::Zero()};
    op.matrix(0, 0) = std::norm(psi_x(profile, x - epsilon));
    op.matrix(1, 1) = std::norm(psi_x(profile, x + epsilon));
    return op;
}

double pixel_probability(const Ket& i, const TransverseProfile& profile, double epsilon, double x) {
    require_qubit(i);
    return std::norm(i[0]) * std::norm(psi_x(profile, x - epsilon)) +
           std::norm(i[1]) * std::norm(psi_x(profile, x + epsilon));
}

double generalized_average(const Ket& i, const TransverseProfile& profile, double epsilon,
                           std::optional<GridSpec> grid) {
    require_positive_epsilon(epsilon);
    require_qubit(i);
    const GridSpec g = grid_or_default(grid, profile, epsilon);
    const double mean = integrate(g, [&](double x) { return x * std::norm(psi_x(profile, x)); });
    if (std::abs(mean) >= 1e-10) {
        throw NonCenteredProfile("generalized_average: profile mean " + std::to_string(mean) +
                                 " is not zero");
    }
    return integrate(g, [&](double x) { return x / epsilon * pixel_probability(i, profile, epsilon, x); });
}

double operator_identity_residual(const TransverseProfile& profile, double epsilon,
                                  const ValueAssignment& assignment, std::optional<GridSpec> grid) {
    require_positive_epsilon(epsilon);
    const GridSpec g = grid_or_default(grid, profile, epsilon);
    const auto xs = g.nodes();
    std::vector<double> h_entry(xs.size());
    std::vector<double> v_entry(xs.size());
    for (std::size_t k = 0; k < xs.size(); ++k) {
        const double alpha = assignment(xs[k]);
        if (!std::isfinite(alpha)) {
            throw InvalidArgument("operator_identity_residual: assignment is not finite at x = " +
                                  std::to_string(xs[k]));
        }
        const ProbabilityOperator op = probability_operator(profile, epsilon, xs[k]);
        h_entry[k] = alpha * op.matrix(0, 0).real();
        v_entry[k] = alpha * op.matrix(1, 1).real();
    }
    const Eigen::Matrix2cd s = HermitianObservable::stokes().matrix();
    Eigen::Matrix2cd integral = Eigen::Matrix2cd::Zero();
    integral(0, 0) = simpson(h_entry, g.step());
    integral(1, 1) = simpson(v_entry, g.step());
    return (integral - s).cwiseAbs().maxCoeff();
}

double conditioned_average(const Ket& i, const Ket& f, const TransverseProfile& profile,
                           double epsilon, std::optional<GridSpec> grid) {
    require_positive_epsilon(epsilon);
    CrystalSetup setup{.epsilon = epsilon,
                       .tau = std::nullopt,
                       .v = std::nullopt,
                       .preselect = i,
                       .postselect = f,
                       .profile = profile,
                       .plane = Plane::Position,
                       .grid = grid.value_or(default_grid(profile, Plane::Position, epsilon))};
    return centroid(setup) / epsilon;
}

double classical_conditioned_average(const Ket& i, const Ket& f) {
    require_qubit(i);
    require_qubit(f);
    const double h = std::norm(std::conj(f[0]) * i[0]);
    const double v = std::norm(std::conj(f[1]) * i[1]);
    if (!(h + v > 0.0)) {
        throw ZeroPostselectedIntensity("classical_conditioned_average: both branches dark");
    }
    return (h - v) / (h + v);
}

std::vector<InterpolationRow> interpolation_sweep(const Ket& i, const ThetaRange& range,
                                                  std::span<const double> epsilons,
                                                  const TransverseProfile& profile, const SweepGrid& grid,
                                                  unsigned workers) {
    range.validate();
    require_qubit(i);
    std::vector<GridSpec> grids;
    for (const double eps : epsilons) {
        require_positive_epsilon(eps);
        const double needed = required_half_width(profile, Plane::Position, eps);
        const GridSpec g{grid.half_width.value_or(needed), grid.points};
        g.validate();
        if (g.half_width < needed) {
            throw InvalidArgument("interpolation_sweep: grid half-width " + std::to_string(g.half_width) +
                                  " below required " + std::to_string(needed));
        }
        grids.push_back(g);
    }
    const auto n_theta = static_cast<std::size_t>(range.steps);
    std::vector<InterpolationRow> rows(n_theta * epsilons.size());
    const HermitianObservable s = HermitianObservable::stokes();

    parallel_for(rows.size(), workers, [&](std::size_t begin, std::size_t end) {
        for (std::size_t r = begin; r < end; ++r) {
            const double eps = epsilons[r / n_theta];
            const GridSpec& g = grids[r / n_theta];
            const double theta = range.at(static_cast<int>(r % n_theta));
            const Ket f = polarizer_state(theta);
            InterpolationRow row{theta, eps, std::nullopt, std::nullopt, std::nullopt};
            try {
                row.classical = classical_conditioned_average(i, f);
            } catch (const ZeroPostselectedIntensity&) {
            }
            if (std::norm(inner(f, i)) > kOrthogonalityThreshold) {
                row.re_sw = weak_value(s, i, f).value.real();
            }
            try {
                row.cond_avg = conditioned_average(i, f, profile, eps, g);
            } catch (const ZeroPostselectedIntensity&) {
            }
            rows[r] = row;
        }
    });
    return rows;
}

}  // namespace weakwave
