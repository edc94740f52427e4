#include "weakwave/quadrature.hpp"

#include <cmath>
#include <string>

#include "weakwave/errors.hpp"

namespace weakwave {

void GridSpec::validate() const {
    if (!std::isfinite(half_width) || half_width <= 0.0) {
        throw InvalidArgument("grid half_width must be positive and finite");
    }
    if (points < kMinPoints || points % 2 == 0) {
        throw InvalidArgument("grid points must be odd and at least " + std::to_string(kMinPoints) +
                              " (got " + std::to_string(points) + ")");
    }
}

std::vector<double> GridSpec::nodes() const {
    std::vector<double> xs(static_cast<std::size_t>(points));
    for (int k = 0; k < points; ++k) {
        xs[static_cast<std::size_t>(k)] = at(k);
    }
    // Pin the symmetric endpoints and center exactly.
    xs.front() = -half_width;
    xs.back() = half_width;
    xs[static_cast<std::size_t>(points / 2)] = 0.0;
    return xs;
}

double simpson(std::span<const double> values, double step) {
    const std::size_t n = values.size();
    if (n < 3 || n % 2 == 0) {
        throw InvalidArgument("simpson: need an odd number of at least 3 samples");
    }
    double odd = 0.0;
    double even = 0.0;
    for (std::size_t k = 1; k + 1 < n; ++k) {
        (k % 2 == 1 ? odd : even) += values[k];
    }
    return step / 3.0 * (values.front() + values.back() + 4.0 * odd + 2.0 * even);
}

double integrate(const GridSpec& grid, const std::function<double(double)>& fn) {
    grid.validate();
    const auto xs = grid.nodes();
    std::vector<double> ys(xs.size());
    for (std::size_t k = 0; k < xs.size(); ++k) {
        ys[k] = fn(xs[k]);
    }
    return simpson(ys, grid.step());
}

}  // namespace weakwave
