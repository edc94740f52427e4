#include "weakwave/metrology.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "weakwave/errors.hpp"
#include "weakwave/weakval.hpp"

namespace weakwave {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Cumulative trapezoid of the density, scaled to end at exactly 1.
std::vector<double> normalized_cdf(const DensityProfile& d, double step) {
    std::vector<double> cdf(d.values.size(), 0.0);
    for (std::size_t k = 1; k < cdf.size(); ++k) {
        cdf[k] = cdf[k - 1] + 0.5 * step * (d.values[k - 1] + d.values[k]);
    }
    const double last = cdf.back();
    for (auto& c : cdf) {
        c /= last;
    }
    cdf.back() = 1.0;
    return cdf;
}

double inverse_cdf(const std::vector<double>& cdf, const std::vector<double>& axis, double u) {
    // First node with cdf > u; the sample lies in the cell just before it.
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.begin()) {
        return axis.front();
    }
    if (it == cdf.end()) {
        return axis.back();
    }
    const auto hi = static_cast<std::size_t>(it - cdf.begin());
    const std::size_t lo = hi - 1;
    const double width = cdf[hi] - cdf[lo];
    const double t = width > 0.0 ? (u - cdf[lo]) / width : 0.0;
    return axis[lo] + t * (axis[hi] - axis[lo]);
}

}  // namespace

void ThetaRange::validate() const {
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(hi > lo)) {
        throw InvalidArgument("theta range: need finite bounds with hi > lo");
    }
    if (steps < 2) {
        throw InvalidArgument("theta range: need at least 2 steps");
    }
}

Ket polarizer_state(double theta) {
    return Ket{cplx(std::cos(theta / 2)), cplx(std::sin(theta / 2))};
}

SweepResult sweep_theta(double phi, const ThetaRange& range, const HermitianObservable& a) {
    range.validate();
    if (a.dim() != 2) {
        throw InvalidArgument("sweep_theta: observable must act on a qubit");
    }
    const Ket pre = make_preselection(PolarizationConfig{phi, 0.0});
    SweepResult result{"theta", {}};
    result.rows.reserve(static_cast<std::size_t>(range.steps));
    for (int k = 0; k < range.steps; ++k) {
        const double theta = range.at(k);
        const Ket post = polarizer_state(theta);
        SweepRow row{theta, std::nullopt, std::nullopt, std::norm(inner(post, pre))};
        if (row.postselect_prob > kOrthogonalityThreshold) {
            const cplx aw = weak_value(a, pre, post).value;
            row.re_wv = aw.real();
            row.im_wv = aw.imag();
        }
        result.rows.push_back(row);
    }
    return result;
}

double estimate_epsilon(double measured_centroid, cplx s_w, Plane plane, double sigma) {
    if (!(sigma > 0.0)) {
        throw InvalidArgument("estimate_epsilon: sigma must be positive");
    }
    if (plane == Plane::Position) {
        if (std::abs(s_w.real()) <= 1e-12) {
            throw DegenerateAmplifier("estimate_epsilon: Re S_w vanishes");
        }
        return measured_centroid / s_w.real();
    }
    if (std::abs(s_w.imag()) <= 1e-12) {
        throw DegenerateAmplifier("estimate_epsilon: Im S_w vanishes");
    }
    return measured_centroid * 2.0 * sigma * sigma / s_w.imag();
}

SnrIdentity snr_identity_check(double phi, double theta) {
    const Ket pre = make_preselection(PolarizationConfig{phi, 0.0});
    const Ket post = polarizer_state(theta);
    const HermitianObservable s = HermitianObservable::stokes();
    const double rhs = std::norm(post.amplitudes().dot(s.matrix() * pre.amplitudes()));
    const double p = std::norm(inner(post, pre));
    if (p <= kOrthogonalityThreshold) {
        return {rhs, rhs};
    }
    return {p * std::norm(weak_value(s, pre, post).value), rhs};
}

double fisher_score(const CrystalSetup& setup, double pixel) {
    setup.validate();
    const double eps = setup.epsilon;
    const double h = fisher_step(eps);
    const double here = detail::density_at(setup, eps, pixel);
    const double up = detail::density_at(setup, eps + h, pixel);
    const double down = detail::density_at(setup, eps - h, pixel);
    if (!(here > 1e-15) || !(up > 0.0) || !(down > 0.0)) {
        throw ZeroDensity("fisher_score: density vanishes at pixel " + std::to_string(pixel));
    }
    const double log_up = std::log(up / detail::total_probability(setup, eps + h));
    const double log_down = std::log(down / detail::total_probability(setup, eps - h));
    return (log_up - log_down) / (2.0 * h);
}

double fisher_information(const CrystalSetup& setup) {
    setup.validate();
    const double eps = setup.epsilon;
    const double h = fisher_step(eps);
    const DensityProfile here = detail::density_on_grid(setup, eps);
    const DensityProfile up = detail::density_on_grid(setup, eps + h);
    const DensityProfile down = detail::density_on_grid(setup, eps - h);
    if (!(here.total > kMinPostselectedIntensity)) {
        throw ZeroPostselectedIntensity("fisher_information: postselected intensity vanishes");
    }
    const double total_up = detail::total_probability(setup, eps + h);
    const double total_down = detail::total_probability(setup, eps - h);
    std::vector<double> integrand(here.values.size(), 0.0);
    for (std::size_t k = 0; k < integrand.size(); ++k) {
        if (here.values[k] > 0.0 && up.values[k] > 0.0 && down.values[k] > 0.0) {
            const double score =
                (std::log(up.values[k] / total_up) - std::log(down.values[k] / total_down)) / (2.0 * h);
            integrand[k] = score * score * here.values[k];
        }
    }
    return simpson(integrand, setup.grid.step()) / here.total;
}

double counter_uniform(std::uint64_t seed, std::uint64_t counter) {
    const std::uint64_t bits = splitmix64(splitmix64(seed) ^ counter);
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    return splitmix64(seed ^ splitmix64(stream + 0x632BE59BD9B4E019ULL));
}

PhotonSample sample_photons(const CrystalSetup& setup, std::int64_t n, std::uint64_t seed,
                            unsigned workers) {
    if (n < 1) {
        throw InvalidArgument("sample_photons: need at least one photon");
    }
    const DensityProfile d = perturbed_density(setup);
    PhotonSample sample{{}, seed, n, 0};
    const double survive = std::min(d.total, 1.0);
    if (!(survive > 0.0)) {
        return sample;
    }
    const std::vector<double> cdf = normalized_cdf(d, setup.grid.step());

    const std::size_t count = static_cast<std::size_t>(n);
    const std::size_t chunks = std::min<std::size_t>(std::max(1u, workers), count);
    std::vector<std::vector<double>> partial(chunks);
    parallel_for(chunks, static_cast<unsigned>(chunks), [&](std::size_t c_begin, std::size_t c_end) {
        for (std::size_t c = c_begin; c < c_end; ++c) {
            const std::size_t begin = count * c / chunks;
            const std::size_t end = count * (c + 1) / chunks;
            auto& out = partial[c];
            for (std::size_t k = begin; k < end; ++k) {
                if (counter_uniform(seed, 2 * k) < survive) {
                    out.push_back(inverse_cdf(cdf, d.axis, counter_uniform(seed, 2 * k + 1)));
                }
            }
        }
    });
    for (auto& part : partial) {
        sample.positions.insert(sample.positions.end(), part.begin(), part.end());
    }
    sample.n_detected = static_cast<std::int64_t>(sample.positions.size());
    return sample;
}

SampleStats sample_statistics(const PhotonSample& sample) {
    const auto& xs = sample.positions;
    if (xs.empty()) {
        throw ZeroPostselectedIntensity("sample_statistics: no photons detected");
    }
    double mean = 0.0;
    for (const double x : xs) {
        mean += x;
    }
    mean /= static_cast<double>(xs.size());
    if (xs.size() < 2) {
        return {mean, std::numeric_limits<double>::infinity()};
    }
    double ss = 0.0;
    for (const double x : xs) {
        ss += (x - mean) * (x - mean);
    }
    const double var = ss / static_cast<double>(xs.size() - 1);
    return {mean, std::sqrt(var / static_cast<double>(xs.size()))};
}

}  // namespace weakwave
