#include <cmath>
#include <fstream>
#include <set>
#include <string>

#include "weakwave/cli.hpp"
#include "weakwave/errors.hpp"

namespace weakwave::cli {

namespace {

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys{"phi",       "theta",           "sigma", "epsilon",
                                            "plane",     "grid_points",     "grid_half_width",
                                            "seed",      "output_path",     "format"};
    return keys;
}

double finite_number(const nlohmann::json& v, const std::string& key) {
    if (!v.is_number()) {
        throw InvalidArgument("config: '" + key + "' must be a number");
    }
    const double d = v.get<double>();
    if (!std::isfinite(d)) {
        throw InvalidArgument("config: '" + key + "' must be finite");
    }
    return d;
}

}  // namespace

Plane parse_plane(const std::string& s) {
    if (s == "position") {
        return Plane::Position;
    }
    if (s == "fourier") {
        return Plane::Fourier;
    }
    throw InvalidArgument("plane must be 'position' or 'fourier' (got '" + s + "')");
}

Format parse_format(const std::string& s) {
    if (s == "csv") {
        return Format::Csv;
    }
    if (s == "json") {
        return Format::Json;
    }
    throw InvalidArgument("format must be 'csv' or 'json' (got '" + s + "')");
}

void RunConfig::validate() const {
    PolarizationConfig{phi, theta}.validate();
    if (!std::isfinite(sigma) || sigma <= 0.0) {
        throw InvalidArgument("sigma must be positive and finite");
    }
    if (epsilon && (!std::isfinite(*epsilon) || *epsilon < 0.0)) {
        throw InvalidArgument("epsilon must be finite and non-negative");
    }
    if (grid_half_width && (!std::isfinite(*grid_half_width) || *grid_half_width <= 0.0)) {
        throw InvalidArgument("grid_half_width must be positive and finite");
    }
    GridSpec{grid_half_width.value_or(1.0), grid_points}.validate();
    if (output_path.empty()) {
        throw InvalidArgument("output_path must not be empty");
    }
}

RunConfig config_from_json(const nlohmann::json& j, RunConfig base) {
    if (!j.is_object()) {
        throw InvalidArgument("config: top level must be a JSON object");
    }
    for (const auto& [key, value] : j.items()) {
        if (!known_keys().contains(key)) {
            throw InvalidArgument("config: unknown key '" + key + "'");
        }
        if (key == "phi") {
            base.phi = finite_number(value, key);
        } else if (key == "theta") {
            base.theta = finite_number(value, key);
        } else if (key == "sigma") {
            base.sigma = finite_number(value, key);
        } else if (key == "epsilon") {
            base.epsilon = finite_number(value, key);
        } else if (key == "grid_half_width") {
            base.grid_half_width = finite_number(value, key);
        } else if (key == "grid_points") {
            if (!value.is_number_integer()) {
                throw InvalidArgument("config: 'grid_points' must be an integer");
            }
            base.grid_points = value.get<int>();
        } else if (key == "seed") {
            if (!value.is_number_unsigned()) {
                throw InvalidArgument("config: 'seed' must be a non-negative integer");
            }
            base.seed = value.get<std::uint64_t>();
        } else if (key == "plane" || key == "format" || key == "output_path") {
            if (!value.is_string()) {
                throw InvalidArgument("config: '" + key + "' must be a string");
            }
            const auto s = value.get<std::string>();
            if (key == "plane") {
                base.plane = parse_plane(s);
            } else if (key == "format") {
                base.format = parse_format(s);
            } else {
                base.output_path = s;
            }
        }
    }
    return base;
}

RunConfig load_config(const std::filesystem::path& path, RunConfig base) {
    std::ifstream in(path);
    if (!in) {
        throw InvalidArgument("config: cannot open " + path.string());
    }
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(std::string("config: ") + e.what());
    }
    return config_from_json(j, std::move(base));
}

}  // namespace weakwave::cli
