#include "kt/report.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <sstream>

namespace kt {

std::string render_text(const Report& report) {
    std::ostringstream out;
    for (const auto& e : report.entries) {
        out << "check " << e.name << ": " << status_name(e.status);
        if (!e.note.empty()) out << " (" << e.note << ")";
        out << "\n";
        if (!e.residual.empty()) out << "  residual: " << e.residual << "\n";
        for (const auto& d : e.data) out << "  " << d << "\n";
    }
    out << "summary: " << report.count(CheckStatus::pass) << " pass, "
        << report.count(CheckStatus::fail) << " fail, "
        << report.count(CheckStatus::inconclusive) << " inconclusive\n";
    return out.str();
}

std::string render_json(const Report& report, bool with_timing) {
    nlohmann::json j;
    j["schema"] = 1;
    j["tool_version"] = report.tool_version;
    j["model_hash"] = report.model_hash;
    j["checks"] = nlohmann::json::array();
    for (const auto& e : report.entries) {
        nlohmann::json c;
        c["name"] = e.name;
        c["status"] = status_name(e.status);
        c["residual"] = e.residual;
        c["data"] = e.data;
        c["note"] = e.note;
        if (with_timing) c["timing_ms"] = e.timing_ms;
        j["checks"].push_back(std::move(c));
    }
    j["counts"] = {{"pass", report.count(CheckStatus::pass)},
                   {"fail", report.count(CheckStatus::fail)},
                   {"inconclusive", report.count(CheckStatus::inconclusive)}};
    return j.dump(2) + "\n";
}

std::string fnv1a_hex(const std::string& data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

} // namespace kt
