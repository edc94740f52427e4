#pragma once

#include <functional>
#include <span>
#include <vector>

namespace weakwave {

// Symmetric uniform grid on [-half_width, half_width].
struct GridSpec {
    static constexpr int kDefaultPoints = 4097;
    static constexpr int kMinPoints = 64;

    double half_width = 8.0;
    int points = kDefaultPoints;

    // Throws InvalidArgument unless points >= 64 and odd and half_width > 0.
    void validate() const;

    [[nodiscard]] double step() const noexcept { return 2.0 * half_width / (points - 1); }
    [[nodiscard]] double at(int k) const noexcept { return -half_width + k * step(); }
    [[nodiscard]] std::vector<double> nodes() const;
};

// Composite Simpson rule on uniformly spaced samples (odd count).
double simpson(std::span<const double> values, double step);

// Simpson quadrature of fn sampled on the grid nodes.
double integrate(const GridSpec& grid, const std::function<double(double)>& fn);

}  // namespace weakwave
