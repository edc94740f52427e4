#include <doctest.h>

#include "support.hpp"
#include "weakwave/errors.hpp"
#include "weakwave/pointer.hpp"
#include "weakwave/quadrature.hpp"

using namespace weakwave;
using doctest::Approx;

namespace {

// Direct single-mode formula, unnormalized superpositions summed by hand.
cplx mode_oracle(double sigma, double c, double p0, double x) {
    return std::pow(2 * kPi * sigma * sigma, -0.25) * std::exp(-(x - c) * (x - c) / (4 * sigma * sigma)) *
           std::polar(1.0, p0 * x);
}

TransverseProfile random_profile(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_int_distribution<int> count(1, 4);
    std::vector<GaussianMode> modes;
    const int n = count(rng);
    for (int k = 0; k < n; ++k) {
        modes.push_back({0.6 + 0.5 * (u(rng) + 1.0), 3.0 * u(rng), 2.0 * u(rng), cplx{u(rng), u(rng)} + 1.5});
    }
    return TransverseProfile(modes);
}

}  // namespace

TEST_CASE("gaussian amplitudes") {
    const auto g = TransverseProfile::gaussian();
    CHECK(psi_x(g, 0.0).real() == Approx(std::pow(2 * kPi, -0.25)).epsilon(1e-15));
    CHECK(std::abs(psi_x(g, 60.0)) == 0.0);
    CHECK(std::abs(psi_x(g, -60.0)) == 0.0);
    CHECK(std::abs(overlap(g, g) - 1.0) < 1e-14);

    const auto wide = TransverseProfile::gaussian(2.5, 0.3, -0.7);
    for (const double x : {-3.0, 0.0, 1.2, 4.4}) {
        CHECK(std::abs(psi_x(wide, x) - mode_oracle(2.5, 0.3, -0.7, x)) < 1e-14);
    }
    CHECK_THROWS_AS(TransverseProfile::gaussian(0.0), InvalidArgument);
    CHECK_THROWS_AS(TransverseProfile(std::vector<GaussianMode>{}), InvalidArgument);
}

TEST_CASE("two-slit amplitude at the midpoint is the sum of two tails") {
    const auto slit = TransverseProfile::two_slit(5.0, 1.0, 0.0);
    const double n = std::sqrt(2.0 + 2.0 * std::exp(-25.0 / 2.0));
    const cplx expected = 2.0 * mode_oracle(1.0, 5.0, 0.0, 0.0) / n;
    CHECK(std::abs(psi_x(slit, 0.0) - expected) < 1e-15);
}

TEST_CASE("normalization and Parseval") {
    std::mt19937_64 rng(21);
    for (int n = 0; n < 10; ++n) {
        const auto prof = random_profile(rng);
        const GridSpec gx{prof.position_extent() + 2.0, 8193};
        const GridSpec gp{prof.momentum_extent() + 4.0, 8193};
        const double nx = integrate(gx, [&](double x) { return std::norm(psi_x(prof, x)); });
        const double np = integrate(gp, [&](double p) { return std::norm(psi_p(prof, p)); });
        CHECK(nx == Approx(1.0).epsilon(1e-9));
        CHECK(np == Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("momentum amplitude") {
    const auto g = TransverseProfile::gaussian();
    // Peak of the momentum Gaussian of width 1/(2 sigma).
    CHECK(psi_p(g, 0.0).real() == Approx(std::pow(2.0 / kPi, 0.25)).epsilon(1e-15));
    CHECK(std::abs(psi_p(g, 0.3)) == Approx(std::abs(psi_p(g, -0.3))));

    // Shifting the center only rotates the phase.
    const auto shifted = TransverseProfile::gaussian(1.0, 2.7);
    for (const double p : {-1.0, 0.0, 0.4, 2.0}) {
        CHECK(std::abs(psi_p(shifted, p)) == Approx(std::abs(psi_p(g, p))).epsilon(1e-14));
    }

    // Against a direct quadrature Fourier transform.
    std::mt19937_64 rng(22);
    const auto prof = random_profile(rng);
    const GridSpec gx{prof.position_extent() + 2.0, 8193};
    for (const double p : {-1.3, 0.0, 0.8}) {
        const double re = integrate(gx, [&](double x) { return (psi_x(prof, x) * std::polar(1.0, -p * x)).real(); });
        const double im = integrate(gx, [&](double x) { return (psi_x(prof, x) * std::polar(1.0, -p * x)).imag(); });
        const cplx ft = cplx{re, im} / std::sqrt(2 * kPi);
        CHECK(std::abs(ft - psi_p(prof, p)) < 1e-10);
    }
}

TEST_CASE("shifted profile") {
    const auto g = TransverseProfile::gaussian(1.0, 0.0, 0.9);
    const auto s = g.shifted(1.5);
    for (const double x : {-2.0, 0.0, 1.5, 3.0}) {
        CHECK(std::abs(psi_x(s, x) - psi_x(g, x - 1.5)) < 1e-15);
    }
}

TEST_CASE("position pointer weak value") {
    const auto g = TransverseProfile::gaussian();
    const cplx w = pointer_weak_value_position(g, 0.5);
    CHECK(std::abs(w.real()) < 1e-15);
    CHECK(w.imag() == Approx(0.25).epsilon(1e-15));
    CHECK(std::abs(pointer_weak_value_position(g, 0.0)) < 1e-15);

    for (int k = 0; k < 100; ++k) {
        const double x = -5.0 + 0.1 * k;
        const cplx pw = pointer_weak_value_position(g, x);
        CHECK(pw.imag() == Approx(x / 2.0).epsilon(1e-14));
        CHECK(std::abs(pw.real()) < 1e-14);
    }

    const auto tilted = TransverseProfile::gaussian(1.3, 0.0, 0.8);
    const cplx t = pointer_weak_value_position(tilted, -0.6);
    CHECK(t.real() == Approx(0.8).epsilon(1e-14));
    CHECK(t.imag() == Approx(-0.6 / (2 * 1.3 * 1.3)).epsilon(1e-14));

    // A dark fringe of two opposite-phase slits.
    const TransverseProfile odd({{1.0, -1.0, 0.0, 1.0}, {1.0, 1.0, 0.0, -1.0}});
    CHECK_THROWS_AS(pointer_weak_value_position(odd, 0.0), NodePoint);
    CHECK_THROWS_AS(bohm_momentum(odd, 0.0), NodePoint);
    CHECK_THROWS_AS(pointer_weak_value_position(g, 60.0), NodePoint);
}

TEST_CASE("momentum pointer weak value is p") {
    CHECK(pointer_weak_value_momentum(0.0) == cplx(0.0));
    CHECK(pointer_weak_value_momentum(1.7) == cplx(1.7));
    CHECK(pointer_weak_value_momentum(-3.0) == cplx(-3.0));
}

TEST_CASE("bohm momentum") {
    const auto g = TransverseProfile::gaussian();
    const auto plane = TransverseProfile::gaussian(1.0, 0.0, 1.25);
    for (const double x : {-3.0, -0.5, 0.0, 2.0}) {
        CHECK(bohm_momentum(g, x) == 0.0);
        CHECK(bohm_momentum(plane, x) == Approx(1.25).epsilon(1e-14));
    }

    const auto slit = TransverseProfile::two_slit(5.0, 1.0, 0.5);
    CHECK(std::abs(bohm_momentum(slit, 0.0)) < 1e-14);
    for (const double x : {0.7, 2.3, 4.9, 6.1}) {
        CHECK(bohm_momentum(slit, -x) == Approx(-bohm_momentum(slit, x)).epsilon(1e-12));
        const std::vector<double> pts{x - 1e-4, x, x + 1e-4};
        const auto pf = phase_field(slit, pts);
        const double fd = (pf.phi_values[2] - pf.phi_values[0]) / 2e-4;
        CHECK(std::abs(fd - bohm_momentum(slit, x)) < 1e-6);
    }
}

TEST_CASE("bohm momentum matches phase gradient on random profiles") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int n = 0; n < 10; ++n) {
        const auto prof = random_profile(rng);
        // Amplitude and its x derivative written out mode by mode.
        const auto amp = [&](double x, bool derivative) {
            cplx s{0.0, 0.0};
            for (const auto& m : prof.modes()) {
                const double d = x - m.center;
                const cplx g = m.coeff * std::exp(-d * d / (4 * m.sigma * m.sigma)) / std::sqrt(m.sigma) *
                               std::polar(1.0, m.phase_momentum * x);
                s += derivative ? g * cplx(-d / (2 * m.sigma * m.sigma), m.phase_momentum) : g;
            }
            return s;
        };
        for (int k = 0; k < 100; ++k) {
            const double x = u(rng);
            if (std::abs(psi_x(prof, x)) < 1e-6) {
                continue;
            }
            const double exact = (amp(x, true) / amp(x, false)).imag();
            CHECK(std::abs(exact - bohm_momentum(prof, x)) <= 1e-9 * std::max(1.0, std::abs(exact)));
            // Five-point stencil on the phase.
            const double h = 1e-4;
            const double fd = (8 * std::arg(psi_x(prof, x + h) / psi_x(prof, x - h)) -
                               std::arg(psi_x(prof, x + 2 * h) / psi_x(prof, x - 2 * h))) /
                              (12 * h);
            CHECK(std::abs(fd - bohm_momentum(prof, x)) < 1e-6);
        }
    }
}

TEST_CASE("probability transport") {
    std::mt19937_64 rng(24);
    for (int n = 0; n < 5; ++n) {
        const auto prof = random_profile(rng);
        const GridSpec gx{prof.position_extent() + 2.0, 8193};
        const GridSpec gp{prof.momentum_extent() + 4.0, 8193};
        const double flux = integrate(gx, [&](double x) {
            const cplx a = psi_x(prof, x);
            return std::abs(a) <= kNodeThreshold ? 0.0 : bohm_momentum(prof, x) * std::norm(a);
        });
        const double mean_p = integrate(gp, [&](double p) { return p * std::norm(psi_p(prof, p)); });
        CHECK(flux == Approx(mean_p).epsilon(1e-6).scale(1.0));
    }
}

TEST_CASE("phase field unwrapping") {
    const auto plane = TransverseProfile::gaussian(1.0, 0.0, 3.0);
    GridSpec grid{6.0, 1201};
    const auto xs = grid.nodes();
    const auto pf = phase_field(plane, xs);
    REQUIRE(pf.phi_values.size() == xs.size());
    for (std::size_t k = 1; k < xs.size(); ++k) {
        CHECK((pf.phi_values[k] - pf.phi_values[k - 1]) == Approx(3.0 * grid.step()).epsilon(1e-9));
    }
    const auto far = phase_field(TransverseProfile::gaussian(), std::vector<double>{0.0, 40.0});
    CHECK(std::isnan(far.phi_values[1]));
    CHECK_THROWS_AS(phase_field(plane, std::vector<double>{0.0, 0.0}), InvalidArgument);
}
