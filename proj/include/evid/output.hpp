#pragma once

// Row serialization shared by the CLI and the round-trip tests. Both CSV
// and JSON print numbers through the same 12-significant-digit formatter,
// so the two encodings carry identical value tokens. Missing numeric
// fields are empty in CSV and null in JSON; non-finite values print as
// inf/-inf/nan in CSV and as the same token in string form in JSON.

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "evid/analysis.hpp"
#include "evid/equation_of_state.hpp"
#include "evid/verification.hpp"

namespace evid {

struct OutputRow {
    std::string class_tag;
    double theta2_left = std::numeric_limits<double>::quiet_NaN();
    double theta2_right = std::numeric_limits<double>::quiet_NaN();
    double n = std::numeric_limits<double>::quiet_NaN();
    double x = std::numeric_limits<double>::quiet_NaN();
    double ratio = std::numeric_limits<double>::quiet_NaN();
    double s = std::numeric_limits<double>::quiet_NaN();
    double v = std::numeric_limits<double>::quiet_NaN();
    double b = std::numeric_limits<double>::quiet_NaN();
    double c1 = std::numeric_limits<double>::quiet_NaN();
    double e = std::numeric_limits<double>::quiet_NaN();
    std::string favored;  // empty when unclassified
    double trp1 = std::numeric_limits<double>::quiet_NaN();
    double trp2 = std::numeric_limits<double>::quiet_NaN();
    double log2_e = std::numeric_limits<double>::quiet_NaN();
    std::string error;  // empty on success
};

inline const char* output_header[] = {"class", "theta2_left", "theta2_right", "n", "x",
                                      "ratio", "S",           "V",            "b", "c1",
                                      "E",     "favored",     "trp1",         "trp2",
                                      "log2E", "error"};

namespace detail {

inline std::string fmt_num(double v) {
    if (std::isnan(v)) return "";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

inline std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

inline std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        case '\r': out += "\\r"; break;
        default:
            if (static_cast<unsigned char>(c) < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                out += buf;
            } else {
                out += c;
            }
        }
    }
    return out;
}

// JSON value for a numeric cell: null when missing, bare number when
// finite, the CSV token quoted when not finite.
inline std::string json_num(double v) {
    if (std::isnan(v)) return "null";
    if (!std::isfinite(v)) return "\"" + fmt_num(v) + "\"";
    return fmt_num(v);
}

inline std::vector<std::string> row_cells(const OutputRow& r) {
    return {r.class_tag,     fmt_num(r.theta2_left), fmt_num(r.theta2_right),
            fmt_num(r.n),    fmt_num(r.x),           fmt_num(r.ratio),
            fmt_num(r.s),    fmt_num(r.v),           fmt_num(r.b),
            fmt_num(r.c1),   fmt_num(r.e),           r.favored,
            fmt_num(r.trp1), fmt_num(r.trp2),        fmt_num(r.log2_e),
            r.error};
}

}  // namespace detail

// Build a row from a full evidence result.
inline OutputRow make_row(const EvidenceResult& res, const std::string& error = "") {
    OutputRow row;
    row.class_tag = res.hc.tag();
    row.theta2_left = res.hc.theta2().lo;
    row.theta2_right = res.hc.theta2().hi;
    row.n = res.obs.n;
    row.x = res.obs.x;
    row.ratio = res.obs.ratio();
    row.s = res.s;
    row.v = res.v;
    row.b = res.b;
    row.c1 = res.c1;
    row.e = res.e;
    if (!res.trp.points.empty()) {
        row.favored = favored_name(res.favored);
        row.trp1 = res.trp.points[0].ratio;
        if (res.trp.points.size() > 1) row.trp2 = res.trp.points[1].ratio;
    }
    row.log2_e = res.log_e / std::log(2.0);
    row.error = error;
    return row;
}

inline OutputRow make_row(const HypothesisContrast& hc, const SweepRow& sr) {
    if (sr.result) return make_row(*sr.result, sr.error);
    OutputRow row;
    row.class_tag = hc.tag();
    row.theta2_left = hc.theta2().lo;
    row.theta2_right = hc.theta2().hi;
    row.n = sr.n;
    row.x = sr.x;
    row.ratio = sr.n > 0 ? sr.x / sr.n : std::numeric_limits<double>::quiet_NaN();
    row.error = sr.error;
    return row;
}

inline void emit_csv(std::ostream& os, const std::vector<OutputRow>& rows) {
    for (size_t i = 0; i < 16; ++i) os << (i ? "," : "") << output_header[i];
    os << "\n";
    for (const auto& r : rows) {
        auto cells = detail::row_cells(r);
        for (size_t i = 0; i < cells.size(); ++i)
            os << (i ? "," : "") << detail::csv_escape(cells[i]);
        os << "\n";
    }
}

inline void emit_json(std::ostream& os, const std::vector<OutputRow>& rows) {
    os << "[";
    for (size_t k = 0; k < rows.size(); ++k) {
        const OutputRow& r = rows[k];
        os << (k ? ",\n " : "\n ") << "{";
        os << "\"class\":\"" << detail::json_escape(r.class_tag) << "\"";
        os << ",\"theta2_left\":" << detail::json_num(r.theta2_left);
        os << ",\"theta2_right\":" << detail::json_num(r.theta2_right);
        os << ",\"n\":" << detail::json_num(r.n);
        os << ",\"x\":" << detail::json_num(r.x);
        os << ",\"ratio\":" << detail::json_num(r.ratio);
        os << ",\"S\":" << detail::json_num(r.s);
        os << ",\"V\":" << detail::json_num(r.v);
        os << ",\"b\":" << detail::json_num(r.b);
        os << ",\"c1\":" << detail::json_num(r.c1);
        os << ",\"E\":" << detail::json_num(r.e);
        os << ",\"favored\":\"" << detail::json_escape(r.favored) << "\"";
        os << ",\"trp1\":" << detail::json_num(r.trp1);
        os << ",\"trp2\":" << detail::json_num(r.trp2);
        os << ",\"log2E\":" << detail::json_num(r.log2_e);
        os << ",\"error\":\"" << detail::json_escape(r.error) << "\"";
        os << "}";
    }
    os << "\n]\n";
}

inline void emit_report_csv(std::ostream& os, const std::vector<VerificationReport>& reps) {
    os << "name,pass,max_deviation,grid\n";
    for (const auto& r : reps)
        os << detail::csv_escape(r.name) << "," << (r.pass ? "true" : "false") << ","
           << detail::fmt_num(r.max_deviation) << "," << detail::csv_escape(r.grid) << "\n";
}

inline void emit_report_json(std::ostream& os, const std::vector<VerificationReport>& reps) {
    os << "[";
    for (size_t k = 0; k < reps.size(); ++k) {
        const auto& r = reps[k];
        os << (k ? ",\n " : "\n ") << "{\"name\":\"" << detail::json_escape(r.name)
           << "\",\"pass\":" << (r.pass ? "true" : "false")
           << ",\"max_deviation\":" << detail::json_num(r.max_deviation) << ",\"grid\":\""
           << detail::json_escape(r.grid) << "\"}";
    }
    os << "\n]\n";
}

}  // namespace evid
