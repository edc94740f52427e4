#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "weakwave/crystal.hpp"
#include "weakwave/metrology.hpp"

namespace weakwave::cli {

enum class Format { Csv, Json };

// Flat run configuration; loadable from JSON with exactly these keys.
struct RunConfig {
    double phi = 0.1;
    double theta = kPi / 2 - 0.2;
    double sigma = 1.0;
    // Unset means the command's own default (a list of values for the figures).
    std::optional<double> epsilon;
    Plane plane = Plane::Position;
    int grid_points = GridSpec::kDefaultPoints;
    // Unset means the smallest admissible half-width for the command.
    std::optional<double> grid_half_width;
    std::uint64_t seed = 0;
    std::string output_path = ".";
    Format format = Format::Csv;

    // Throws InvalidArgument on non-finite values or violated grid rules.
    void validate() const;
};

// Throws InvalidArgument on unknown keys or wrongly typed values.
RunConfig config_from_json(const nlohmann::json& j, RunConfig base = {});
RunConfig load_config(const std::filesystem::path& path, RunConfig base = {});

Plane parse_plane(const std::string& s);
Format parse_format(const std::string& s);

// Columnar numeric table; absent cells are written as empty CSV fields or
// JSON nulls. NaN is treated as absent.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::optional<double>>> rows;

    void write_csv(std::ostream& os) const;
    void write_json(std::ostream& os) const;
};

// %.17g
std::string format_number(double v);

// Writes `stem`.csv or `stem`.json under the output directory; returns the path.
std::filesystem::path write_table(const Table& table, const RunConfig& cfg, const std::string& stem);

struct Fig3Options {
    std::vector<double> epsilons{0.1, 0.5, 1.0, 2.0};
};

struct ThetaOptions {
    ThetaRange range{};
};

struct Fig5Options {
    ThetaRange range{0.0, 2.0 * kPi, 721};
    std::vector<double> epsilons{0.1, 0.5, 1.0, 2.0, 5.0};
};

struct EstimateOptions {
    std::int64_t photons = 1'000'000;
    int trials = 16;
};

enum class ProfileKind { Gaussian, TwoSlit };

struct BohmOptions {
    ProfileKind profile = ProfileKind::TwoSlit;
    double p0 = 0.0;
    double slit_half_separation = 5.0;
    double slit_momentum = 0.5;
    int streamlines = 0;
    double z_max = 10.0;
    double z_step = 0.01;
};

// Each command writes its outputs under cfg.output_path and logs the written
// paths to `log`. Errors propagate as weakwave exceptions.
void cmd_fig3(const RunConfig& cfg, const Fig3Options& opts, std::ostream& log);
void cmd_fig4(const RunConfig& cfg, const ThetaOptions& opts, std::ostream& log);
void cmd_fig5(const RunConfig& cfg, const Fig5Options& opts, std::ostream& log);
nlohmann::json cmd_estimate(const RunConfig& cfg, const EstimateOptions& opts, std::ostream& log);
nlohmann::json cmd_tomo(const RunConfig& cfg, std::ostream& log);
void cmd_bohm(const RunConfig& cfg, const BohmOptions& opts, std::ostream& log);

// Entry point: returns 0 on success, 2 on configuration errors, 3 on
// physics-domain errors (dark port, node, vanishing intensity), 1 otherwise.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitDomain = 3;

}  // namespace weakwave::cli
