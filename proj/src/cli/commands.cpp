#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "weakwave/cli.hpp"
#include "weakwave/condavg.hpp"
#include "weakwave/directstate.hpp"
#include "weakwave/errors.hpp"
#include "weakwave/weakval.hpp"

namespace weakwave::cli {

namespace {

std::string eps_label(double eps) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", eps);
    return buf;
}

Ket preselection(const RunConfig& cfg) { return make_preselection(PolarizationConfig{cfg.phi, cfg.theta}); }
Ket postselection(const RunConfig& cfg) { return make_postselection(PolarizationConfig{cfg.phi, cfg.theta}); }

void require_bright_port(const Ket& pre, const Ket& post) {
    const double p = std::norm(inner(post, pre));
    if (p <= kOrthogonalityThreshold) {
        throw OrthogonalPostselection("postselection is a dark port (|<f|i>|^2 = " + format_number(p) + ")");
    }
}

GridSpec grid_for(const RunConfig& cfg, const TransverseProfile& profile, Plane plane, double max_eps) {
    return GridSpec{cfg.grid_half_width.value_or(required_half_width(profile, plane, max_eps)),
                    cfg.grid_points};
}

CrystalSetup setup_for(const RunConfig& cfg, double eps, const GridSpec& grid) {
    CrystalSetup s{.epsilon = eps,
                   .tau = std::nullopt,
                   .v = std::nullopt,
                   .preselect = preselection(cfg),
                   .postselect = postselection(cfg),
                   .profile = TransverseProfile::gaussian(cfg.sigma),
                   .plane = cfg.plane,
                   .grid = grid};
    s.validate();
    return s;
}

std::vector<double> epsilon_list(const RunConfig& cfg, const std::vector<double>& defaults) {
    if (cfg.epsilon) {
        return {*cfg.epsilon};
    }
    if (defaults.empty()) {
        throw InvalidArgument("at least one epsilon is required");
    }
    return defaults;
}

nlohmann::json ket_json(const Ket& k) {
    auto arr = nlohmann::json::array();
    for (Eigen::Index n = 0; n < k.dim(); ++n) {
        arr.push_back({k[n].real(), k[n].imag()});
    }
    return arr;
}

std::filesystem::path write_report(const nlohmann::json& report, const RunConfig& cfg, const std::string& stem) {
    if (cfg.format == Format::Json) {
        const std::filesystem::path dir(cfg.output_path);
        std::filesystem::create_directories(dir);
        const auto path = dir / (stem + ".json");
        std::ofstream os(path, std::ios::binary);
        if (!os) {
            throw Error("cannot write " + path.string());
        }
        os << report.dump(2) << '\n';
        return path;
    }
    Table t;
    std::vector<std::optional<double>> row;
    for (const auto& [key, value] : report.items()) {
        if (value.is_number()) {
            t.columns.push_back(key);
            row.push_back(value.get<double>());
        }
    }
    t.rows.push_back(std::move(row));
    return write_table(t, cfg, stem);
}

}  // namespace

void cmd_fig3(const RunConfig& cfg, const Fig3Options& opts, std::ostream& log) {
    cfg.validate();
    const auto epsilons = epsilon_list(cfg, opts.epsilons);
    for (const double eps : epsilons) {
        if (!std::isfinite(eps) || eps < 0.0) {
            throw InvalidArgument("fig3: epsilon values must be finite and non-negative");
        }
    }
    const double max_eps = *std::max_element(epsilons.begin(), epsilons.end());
    const TransverseProfile beam = TransverseProfile::gaussian(cfg.sigma);
    const GridSpec grid = grid_for(cfg, beam, cfg.plane, max_eps);
    require_bright_port(preselection(cfg), postselection(cfg));

    const char* axis = cfg.plane == Plane::Position ? "x" : "p";
    Table a{{axis, "unperturbed_density"}, {}};
    Table b{{axis}, {}};
    std::vector<DensityProfile> perturbed;
    std::vector<std::vector<RatioRow>> ratios;
    for (const double eps : epsilons) {
        const CrystalSetup s = setup_for(cfg, eps, grid);
        perturbed.push_back(perturbed_density(s));
        ratios.push_back(ratio_profile(s));
        a.columns.push_back("perturbed_density_eps" + eps_label(eps));
        b.columns.push_back("exact_ratio_eps" + eps_label(eps));
        b.columns.push_back("first_order_ratio_eps" + eps_label(eps));
    }
    const DensityProfile unperturbed = unperturbed_density(setup_for(cfg, max_eps, grid));

    for (std::size_t k = 0; k < unperturbed.axis.size(); ++k) {
        std::vector<std::optional<double>> ra{unperturbed.axis[k], unperturbed.values[k]};
        std::vector<std::optional<double>> rb{unperturbed.axis[k]};
        for (std::size_t e = 0; e < epsilons.size(); ++e) {
            ra.push_back(perturbed[e].values[k]);
            rb.push_back(ratios[e][k].exact_ratio);
            rb.push_back(ratios[e][k].first_order_ratio);
        }
        a.rows.push_back(std::move(ra));
        b.rows.push_back(std::move(rb));
    }
    log << write_table(a, cfg, "fig3a").string() << '\n';
    log << write_table(b, cfg, "fig3b").string() << '\n';
}

void cmd_fig4(const RunConfig& cfg, const ThetaOptions& opts, std::ostream& log) {
    cfg.validate();
    const SweepResult sweep = sweep_theta(cfg.phi, opts.range);
    Table t{{"theta", "re_sw", "im_sw", "postselect_prob"}, {}};
    for (const auto& row : sweep.rows) {
        t.rows.push_back({row.param, row.re_wv, row.im_wv, row.postselect_prob});
    }
    log << write_table(t, cfg, "fig4").string() << '\n';
}

void cmd_fig5(const RunConfig& cfg, const Fig5Options& opts, std::ostream& log) {
    cfg.validate();
    const auto epsilons = epsilon_list(cfg, opts.epsilons);
    const TransverseProfile beam = TransverseProfile::gaussian(cfg.sigma);
    const auto rows = interpolation_sweep(preselection(cfg), opts.range, epsilons, beam,
                                          SweepGrid{cfg.grid_half_width, cfg.grid_points});
    Table t{{"theta", "eps", "cond_avg", "re_sw", "classical"}, {}};
    for (const auto& r : rows) {
        t.rows.push_back({r.theta, r.epsilon, r.cond_avg, r.re_sw, r.classical});
    }
    log << write_table(t, cfg, "fig5").string() << '\n';
}

nlohmann::json cmd_estimate(const RunConfig& cfg, const EstimateOptions& opts, std::ostream& log) {
    cfg.validate();
    if (opts.photons < 1 || opts.trials < 1) {
        throw InvalidArgument("estimate: photons and trials must be positive");
    }
    const double eps = cfg.epsilon.value_or(1e-3);
    const TransverseProfile beam = TransverseProfile::gaussian(cfg.sigma);
    const CrystalSetup setup = setup_for(cfg, eps, grid_for(cfg, beam, cfg.plane, eps));
    require_bright_port(setup.preselect, setup.postselect);
    const cplx s_w = weak_value(HermitianObservable::stokes(), setup.preselect, setup.postselect).value;

    const unsigned workers = worker_count();
    std::vector<double> estimates;
    double detected = 0.0;
    for (int t = 0; t < opts.trials; ++t) {
        const PhotonSample sample =
            sample_photons(setup, opts.photons, derive_seed(cfg.seed, static_cast<std::uint64_t>(t)), workers);
        const SampleStats stats = sample_statistics(sample);
        estimates.push_back(estimate_epsilon(stats.mean, s_w, cfg.plane, cfg.sigma));
        detected += static_cast<double>(sample.n_detected);
    }
    double mean = 0.0;
    for (const double e : estimates) {
        mean += e;
    }
    mean /= static_cast<double>(estimates.size());
    double stderr_mean = 0.0;
    if (estimates.size() > 1) {
        double ss = 0.0;
        for (const double e : estimates) {
            ss += (e - mean) * (e - mean);
        }
        stderr_mean = std::sqrt(ss / static_cast<double>(estimates.size() - 1) /
                                static_cast<double>(estimates.size()));
    }
    nlohmann::json report{{"epsilon_true", eps},
                          {"epsilon_hat_mean", mean},
                          {"epsilon_hat_stderr", stderr_mean},
                          {"n_detected_mean", detected / opts.trials}};
    log << write_report(report, cfg, "estimate").string() << '\n';
    return report;
}

nlohmann::json cmd_tomo(const RunConfig& cfg, std::ostream& log) {
    cfg.validate();
    const double eps = cfg.epsilon.value_or(1e-3);
    const Ket truth = preselection(cfg);
    const ReconstructionReport rep = reconstruct_via_crystal(truth, eps, cfg.sigma);
    nlohmann::json report{{"true_state", ket_json(truth)},
                          {"reconstructed", ket_json(rep.reconstructed)},
                          {"fidelity", rep.fidelity},
                          {"epsilon", eps}};
    log << write_report(report, cfg, "tomo").string() << '\n';
    return report;
}

void cmd_bohm(const RunConfig& cfg, const BohmOptions& opts, std::ostream& log) {
    cfg.validate();
    if (opts.streamlines < 0 || !(opts.z_step > 0.0) || !(opts.z_max >= 0.0)) {
        throw InvalidArgument("bohm: streamline settings must be non-negative with a positive step");
    }
    const TransverseProfile profile =
        opts.profile == ProfileKind::Gaussian
            ? TransverseProfile::gaussian(cfg.sigma, 0.0, opts.p0)
            : TransverseProfile::two_slit(opts.slit_half_separation, cfg.sigma, opts.slit_momentum);
    const GridSpec grid{cfg.grid_half_width.value_or(profile.position_extent()), cfg.grid_points};
    grid.validate();

    Table field{{"x", "p_B", "density"}, {}};
    std::vector<double> density;
    for (const double x : grid.nodes()) {
        std::optional<double> pb;
        if (std::abs(psi_x(profile, x)) > kNodeThreshold) {
            pb = bohm_momentum(profile, x);
        }
        density.push_back(std::norm(psi_x(profile, x)));
        field.rows.push_back({x, pb, density.back()});
    }
    log << write_table(field, cfg, "bohm").string() << '\n';

    if (opts.streamlines == 0) {
        return;
    }
    // Launch points at equally spaced quantiles of the density.
    const auto xs = grid.nodes();
    std::vector<double> cdf(xs.size(), 0.0);
    for (std::size_t k = 1; k < xs.size(); ++k) {
        cdf[k] = cdf[k - 1] + 0.5 * grid.step() * (density[k - 1] + density[k]);
    }
    Table lines{{"line", "z", "x"}, {}};
    // Step length is given in units of the beam width.
    const double dz = opts.z_step * cfg.sigma;
    const int steps = static_cast<int>(std::llround(opts.z_max / dz));
    for (int n = 0; n < opts.streamlines; ++n) {
        const double target = (n + 0.5) / opts.streamlines * cdf.back();
        const auto hi = static_cast<std::size_t>(std::lower_bound(cdf.begin(), cdf.end(), target) - cdf.begin());
        double x = xs[std::min(hi, xs.size() - 1)];
        if (hi > 0 && hi < xs.size()) {
            const double t = (target - cdf[hi - 1]) / (cdf[hi] - cdf[hi - 1]);
            x = xs[hi - 1] + t * grid.step();
        }
        lines.rows.push_back({static_cast<double>(n), 0.0, x});
        for (int s = 1; s <= steps; ++s) {
            try {
                const double mid = x + 0.5 * dz * bohm_momentum(profile, x);
                x += dz * bohm_momentum(profile, mid);
            } catch (const NodePoint&) {
                break;
            }
            lines.rows.push_back({static_cast<double>(n), s * dz, x});
        }
    }
    log << write_table(lines, cfg, "streamlines").string() << '\n';
}

}  // namespace weakwave::cli
