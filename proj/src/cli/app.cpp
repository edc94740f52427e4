#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "weakwave/cli.hpp"
#include "weakwave/errors.hpp"

namespace weakwave::cli {

namespace {

// Flag values as typed on the command line; only the ones given override
// the config file.
struct CommonFlags {
    std::string config_path;
    std::optional<double> phi, theta, sigma, epsilon, half_width;
    std::optional<std::string> plane, out, format;
    std::optional<int> grid_points;
    std::optional<std::uint64_t> seed;

    void attach(CLI::App* app) {
        app->add_option("--config", config_path, "Flat JSON run configuration");
        app->add_option("--phi", phi, "Preselection ellipticity phase (rad)");
        app->add_option("--theta", theta, "Postselection polarizer angle (rad)");
        app->add_option("--sigma", sigma, "Beam width");
        app->add_option("--epsilon", epsilon, "Crystal displacement (units of the beam width unit)");
        app->add_option("--plane", plane, "Recorded plane: position | fourier");
        app->add_option("--grid-points", grid_points, "Quadrature points (odd, >= 64)");
        app->add_option("--half-width", half_width, "Grid half-width");
        app->add_option("--seed", seed, "Random seed");
        app->add_option("--out", out, "Output directory");
        app->add_option("--format", format, "Table format: csv | json");
    }

    RunConfig resolve() const {
        RunConfig cfg = config_path.empty() ? RunConfig{} : load_config(config_path);
        if (phi) cfg.phi = *phi;
        if (theta) cfg.theta = *theta;
        if (sigma) cfg.sigma = *sigma;
        if (epsilon) cfg.epsilon = *epsilon;
        if (half_width) cfg.grid_half_width = *half_width;
        if (plane) cfg.plane = parse_plane(*plane);
        if (format) cfg.format = parse_format(*format);
        if (out) cfg.output_path = *out;
        if (grid_points) cfg.grid_points = *grid_points;
        if (seed) cfg.seed = *seed;
        cfg.validate();
        return cfg;
    }
};

void attach_theta(CLI::App* app, ThetaRange& range) {
    app->add_option("--theta-min", range.lo, "Sweep start (rad)");
    app->add_option("--theta-max", range.hi, "Sweep end, exclusive (rad)");
    app->add_option("--theta-steps", range.steps, "Number of sweep points");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Pre/postselected weak-measurement simulator (birefringent crystal model)", "weakwave"};
    app.require_subcommand(1);

    CommonFlags flags;
    Fig3Options fig3;
    ThetaOptions fig4;
    Fig5Options fig5;
    EstimateOptions estimate;
    BohmOptions bohm;
    std::string profile_name = "two-slit";

    auto* c_fig3 = app.add_subcommand("fig3", "Perturbed vs unperturbed postselected profiles and their ratio");
    auto* c_fig4 = app.add_subcommand("fig4", "Polarization weak value and postselection probability vs theta");
    auto* c_fig5 = app.add_subcommand("fig5", "Conditioned averages of generalized eigenvalues vs theta");
    auto* c_est = app.add_subcommand("estimate", "Monte Carlo amplification estimate of epsilon");
    auto* c_tomo = app.add_subcommand("tomo", "Direct state determination from simulated weak values");
    auto* c_bohm = app.add_subcommand("bohm", "Momentum weak-value field and streamlines of a beam profile");
    for (auto* c : {c_fig3, c_fig4, c_fig5, c_est, c_tomo, c_bohm}) {
        flags.attach(c);
    }
    attach_theta(c_fig4, fig4.range);
    attach_theta(c_fig5, fig5.range);
    c_est->add_option("--photons", estimate.photons, "Photons sent per trial");
    c_est->add_option("--trials", estimate.trials, "Independent trials");
    c_bohm->add_option("--profile", profile_name, "gaussian | two-slit");
    c_bohm->add_option("--p0", bohm.p0, "Plane-wave phase momentum of the gaussian profile");
    c_bohm->add_option("--slit-half-separation", bohm.slit_half_separation, "Slit centers at +- this value");
    c_bohm->add_option("--slit-momentum", bohm.slit_momentum, "Converging tilt of the slit beams");
    c_bohm->add_option("--streamlines", bohm.streamlines, "Number of streamlines to integrate (0 = none)");
    c_bohm->add_option("--z-max", bohm.z_max, "Streamline propagation length");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    }

    try {
        const RunConfig cfg = flags.resolve();
        if (c_fig3->parsed()) {
            cmd_fig3(cfg, fig3, out);
        } else if (c_fig4->parsed()) {
            cmd_fig4(cfg, fig4, out);
        } else if (c_fig5->parsed()) {
            cmd_fig5(cfg, fig5, out);
        } else if (c_est->parsed()) {
            out << cmd_estimate(cfg, estimate, out).dump() << '\n';
        } else if (c_tomo->parsed()) {
            out << cmd_tomo(cfg, out).dump() << '\n';
        } else if (c_bohm->parsed()) {
            if (profile_name == "gaussian") {
                bohm.profile = ProfileKind::Gaussian;
            } else if (profile_name != "two-slit") {
                throw InvalidArgument("profile must be 'gaussian' or 'two-slit'");
            }
            cmd_bohm(cfg, bohm, out);
        }
    } catch (const InvalidArgument& e) {
        err << "configuration error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const DomainError& e) {
        err << "physics-domain error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitOk;
}

}  // namespace weakwave::cli
