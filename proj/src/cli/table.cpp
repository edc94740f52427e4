#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "weakwave/cli.hpp"
#include "weakwave/errors.hpp"

namespace weakwave::cli {

namespace {

bool present(const std::optional<double>& v) { return v && !std::isnan(*v); }

}  // namespace

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void Table::write_csv(std::ostream& os) const {
    for (std::size_t c = 0; c < columns.size(); ++c) {
        os << (c ? "," : "") << columns[c];
    }
    os << '\n';
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) {
                os << ',';
            }
            if (present(row[c])) {
                os << format_number(*row[c]);
            }
        }
        os << '\n';
    }
}

void Table::write_json(std::ostream& os) const {
    nlohmann::json j;
    j["columns"] = columns;
    auto& out_rows = j["rows"] = nlohmann::json::array();
    for (const auto& row : rows) {
        auto r = nlohmann::json::array();
        for (const auto& cell : row) {
            r.push_back(present(cell) ? nlohmann::json(*cell) : nlohmann::json(nullptr));
        }
        out_rows.push_back(std::move(r));
    }
    os << j.dump() << '\n';
}

std::filesystem::path write_table(const Table& table, const RunConfig& cfg, const std::string& stem) {
    const std::filesystem::path dir(cfg.output_path);
    std::filesystem::create_directories(dir);
    const auto path = dir / (stem + (cfg.format == Format::Csv ? ".csv" : ".json"));
    std::ofstream os(path, std::ios::binary);
    if (!os) {
        throw Error("cannot write " + path.string());
    }
    if (cfg.format == Format::Csv) {
        table.write_csv(os);
    } else {
        table.write_json(os);
    }
    return path;
}

}  // namespace weakwave::cli
