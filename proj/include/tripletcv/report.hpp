#pragma once

#include "tripletcv/config.hpp"

#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <map>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

// Result emission: a manifest block of '#'-prefixed comment lines followed
// by a CSV-style table. Numbers are serialized with 9 significant digits so
// a given (config, seed) pair always produces identical bytes.
namespace tripletcv::report {

inline constexpr const char* kToolVersion = "0.1.0";

inline std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

struct RunManifest {
    std::string command;
    std::string config_digest;  // hex, or "-" when no config is involved
    std::uint64_t seed = 0;
    bool has_seed = false;
    std::map<std::string, double> metadata;

    static RunManifest for_command(std::string command) {
        RunManifest m;
        m.command = std::move(command);
        m.config_digest = "-";
        return m;
    }

    /// Wall-clock timestamp, unless SOURCE_DATE_EPOCH pins it for
    /// byte-reproducible output.
    static std::string timestamp() {
        std::time_t t;
        if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) {
            t = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
        } else {
            t = std::time(nullptr);
        }
        char buf[32];
        std::tm tm{};
        gmtime_r(&t, &tm);
        std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
        return buf;
    }

    void write(std::ostream& out) const {
        out << "# tool: tripletcv " << kToolVersion << "\n";
        out << "# command: " << command << "\n";
        out << "# config_digest: " << config_digest << "\n";
        if (has_seed) out << "# seed: " << seed << "\n";
        out << "# timestamp: " << timestamp() << "\n";
        for (const auto& [key, value] : metadata)
            out << "# meta " << key << ": " << format_number(value) << "\n";
    }
};

inline std::string digest_hex(std::uint64_t digest) {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%016" PRIx64, digest);
    return buf;
}

using Cell = std::variant<std::string, double>;

struct ResultTable {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> row) { rows.push_back(std::move(row)); }

    void write_csv(std::ostream& out, const RunManifest& manifest) const {
        manifest.write(out);
        for (std::size_t i = 0; i < columns.size(); ++i)
            out << columns[i] << (i + 1 < columns.size() ? "," : "\n");
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (const auto* s = std::get_if<std::string>(&row[i]))
                    out << *s;
                else
                    out << format_number(std::get<double>(row[i]));
                out << (i + 1 < row.size() ? "," : "\n");
            }
        }
    }
};

}  // namespace tripletcv::report
