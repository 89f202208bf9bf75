#ifndef KT_REPORT_HPP
#define KT_REPORT_HPP

#include <string>
#include <vector>

namespace kt {

enum class CheckStatus { pass, fail, inconclusive };

inline const char* status_name(CheckStatus s) {
    switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    default: return "inconclusive-within-bounds";
    }
}

struct CheckEntry {
    std::string name;
    CheckStatus status = CheckStatus::pass;
    std::string residual;           // canonical polynomial text, non-empty on fail
    std::vector<std::string> data;  // witnesses / basis elements / notes payload
    std::string note;
    double timing_ms = 0;           // excluded from the determinism contract
};

struct Report {
    std::string tool_version;
    std::string model_hash;
    std::vector<CheckEntry> entries;

    int count(CheckStatus s) const {
        int c = 0;
        for (const auto& e : entries)
            if (e.status == s) ++c;
        return c;
    }
    bool ok() const { return count(CheckStatus::fail) == 0; }
};

// Deterministic human-readable rendering; timings are omitted.
std::string render_text(const Report& report);

// JSON rendering per the versioned report schema (schema field = 1).
// Timing fields are included only when with_timing is set.
std::string render_json(const Report& report, bool with_timing = true);

// FNV-1a over the canonical model serialization, as a fixed-width hex tag.
std::string fnv1a_hex(const std::string& data);

} // namespace kt

#endif
