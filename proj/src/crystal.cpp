#include "weakwave/crystal.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "weakwave/errors.hpp"
#include "weakwave/weakval.hpp"

namespace weakwave {

namespace {

struct Branches {
    cplx h;  // <f|H><H|i>
    cplx v;  // <f|V><V|i>
};

Branches branches(const CrystalSetup& s) {
    return {std::conj(s.postselect[0]) * s.preselect[0], std::conj(s.postselect[1]) * s.preselect[1]};
}

cplx amplitude_x(const CrystalSetup& s, const Branches& b, double eps, double x) {
    return b.h * psi_x(s.profile, x - eps) + b.v * psi_x(s.profile, x + eps);
}

cplx amplitude_p(const CrystalSetup& s, const Branches& b, double eps, double p) {
    return (b.h * std::polar(1.0, -p * eps) + b.v * std::polar(1.0, p * eps)) * psi_p(s.profile, p);
}

double pointer_density(const CrystalSetup& s, double xi) {
    return s.plane == Plane::Position ? std::norm(psi_x(s.profile, xi)) : std::norm(psi_p(s.profile, xi));
}

}  // namespace

const char* to_string(Plane plane) { return plane == Plane::Position ? "position" : "fourier"; }

double required_half_width(const TransverseProfile& profile, Plane plane, double epsilon) {
    return plane == Plane::Position ? profile.position_extent() + std::abs(epsilon)
                                    : profile.momentum_extent();
}

GridSpec default_grid(const TransverseProfile& profile, Plane plane, double epsilon, int points) {
    return GridSpec{required_half_width(profile, plane, epsilon), points};
}

CrystalSetup CrystalSetup::make(double epsilon, Ket preselect, Ket postselect,
                                TransverseProfile profile, Plane plane) {
    CrystalSetup s{.epsilon = epsilon,
                   .tau = std::nullopt,
                   .v = std::nullopt,
                   .preselect = std::move(preselect),
                   .postselect = std::move(postselect),
                   .profile = std::move(profile),
                   .plane = plane,
                   .grid = {}};
    s.grid = default_grid(s.profile, plane, epsilon);
    s.validate();
    return s;
}

void CrystalSetup::validate() const {
    if (!std::isfinite(epsilon) || epsilon < 0.0) {
        throw InvalidArgument("crystal: epsilon must be finite and non-negative");
    }
    if (tau && !(*tau > 0.0)) {
        throw InvalidArgument("crystal: tau must be positive");
    }
    if (tau && v && std::abs(epsilon - *tau * *v) >= 1e-12) {
        throw InvalidArgument("crystal: epsilon must equal tau * v");
    }
    if (preselect.dim() != 2 || postselect.dim() != 2) {
        throw InvalidArgument("crystal: polarization states must be qubits");
    }
    grid.validate();
    const double needed = required_half_width(profile, plane, epsilon);
    if (grid.half_width < needed * (1.0 - 1e-12)) {
        throw InvalidArgument("crystal: grid half_width " + std::to_string(grid.half_width) +
                              " below required " + std::to_string(needed));
    }
}

cplx joint_amplitude_x(const CrystalSetup& setup, double x) {
    if (setup.plane != Plane::Position) {
        throw InvalidArgument("joint_amplitude_x: setup records the Fourier plane");
    }
    return amplitude_x(setup, branches(setup), setup.epsilon, x);
}

cplx joint_amplitude_p(const CrystalSetup& setup, double p) {
    if (setup.plane != Plane::Fourier) {
        throw InvalidArgument("joint_amplitude_p: setup records the position plane");
    }
    return amplitude_p(setup, branches(setup), setup.epsilon, p);
}

namespace detail {

double density_at(const CrystalSetup& setup, double epsilon, double xi) {
    const Branches b = branches(setup);
    return setup.plane == Plane::Position ? std::norm(amplitude_x(setup, b, epsilon, xi))
                                          : std::norm(amplitude_p(setup, b, epsilon, xi));
}

DensityProfile density_on_grid(const CrystalSetup& setup, double epsilon) {
    const Branches b = branches(setup);
    DensityProfile out;
    out.axis = setup.grid.nodes();
    out.values.resize(out.axis.size());
    for (std::size_t k = 0; k < out.axis.size(); ++k) {
        const double xi = out.axis[k];
        out.values[k] = setup.plane == Plane::Position ? std::norm(amplitude_x(setup, b, epsilon, xi))
                                                       : std::norm(amplitude_p(setup, b, epsilon, xi));
    }
    out.total = simpson(out.values, setup.grid.step());
    return out;
}

double total_probability(const CrystalSetup& setup, double epsilon) {
    const Branches b = branches(setup);
    const cplx cross = overlap(setup.profile.shifted(epsilon), setup.profile.shifted(-epsilon));
    return std::norm(b.h) + std::norm(b.v) + 2.0 * (std::conj(b.h) * b.v * cross).real();
}

}  // namespace detail

DensityProfile perturbed_density(const CrystalSetup& setup) {
    setup.validate();
    return detail::density_on_grid(setup, setup.epsilon);
}

DensityProfile unperturbed_density(const CrystalSetup& setup) {
    setup.validate();
    const double p = std::norm(inner(setup.postselect, setup.preselect));
    DensityProfile out;
    out.axis = setup.grid.nodes();
    out.values.resize(out.axis.size());
    for (std::size_t k = 0; k < out.axis.size(); ++k) {
        out.values[k] = p * pointer_density(setup, out.axis[k]);
    }
    out.total = simpson(out.values, setup.grid.step());
    return out;
}

double postselection_probability(const CrystalSetup& setup) {
    setup.validate();
    return detail::total_probability(setup, setup.epsilon);
}

double first_order_correction(const CrystalSetup& setup, double pixel) {
    setup.validate();
    const cplx sw = weak_value(HermitianObservable::stokes(), setup.preselect, setup.postselect).value;
    const cplx pw = setup.plane == Plane::Position ? pointer_weak_value_position(setup.profile, pixel)
                                                   : pointer_weak_value_momentum(pixel);
    return 2.0 * setup.epsilon * (sw.real() * pw.imag() + sw.imag() * pw.real());
}

std::vector<RatioRow> ratio_profile(const CrystalSetup& setup) {
    setup.validate();
    const cplx sw = weak_value(HermitianObservable::stokes(), setup.preselect, setup.postselect).value;
    const double p0 = std::norm(inner(setup.postselect, setup.preselect));
    const Branches b = branches(setup);
    const double nan = std::numeric_limits<double>::quiet_NaN();

    std::vector<RatioRow> rows;
    const auto axis = setup.grid.nodes();
    rows.reserve(axis.size());
    for (const double xi : axis) {
        RatioRow row{xi, nan, nan};
        const double unperturbed = p0 * pointer_density(setup, xi);
        if (unperturbed > 0.0) {
            const double perturbed = setup.plane == Plane::Position
                                         ? std::norm(amplitude_x(setup, b, setup.epsilon, xi))
                                         : std::norm(amplitude_p(setup, b, setup.epsilon, xi));
            row.exact_ratio = perturbed / unperturbed;
        }
        if (setup.plane == Plane::Fourier) {
            row.first_order_ratio = 1.0 + 2.0 * setup.epsilon * xi * sw.imag();
        } else if (std::abs(psi_x(setup.profile, xi)) > kNodeThreshold) {
            const cplx pw = pointer_weak_value_position(setup.profile, xi);
            row.first_order_ratio = 1.0 + 2.0 * setup.epsilon * (sw.real() * pw.imag() + sw.imag() * pw.real());
        }
        rows.push_back(row);
    }
    return rows;
}

double centroid(const CrystalSetup& setup) {
    const DensityProfile d = perturbed_density(setup);
    if (!(d.total > kMinPostselectedIntensity)) {
        throw ZeroPostselectedIntensity("centroid: postselected intensity " + std::to_string(d.total));
    }
    std::vector<double> moment(d.values.size());
    for (std::size_t k = 0; k < moment.size(); ++k) {
        moment[k] = d.axis[k] * d.values[k];
    }
    return simpson(moment, setup.grid.step()) / d.total;
}

}  // namespace weakwave
