#pragma once

#include <ctime>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "relclass/campaigns.hpp"
#include "relclass/orders.hpp"
#include "relclass/pell.hpp"

namespace relclass {

inline constexpr int kSchemaVersion = 1;

enum class RecordKind { unit, klass, form_count, campaign_item };

inline const char* to_string(RecordKind k) {
    switch (k) {
        case RecordKind::unit: return "unit";
        case RecordKind::klass: return "class";
        case RecordKind::form_count: return "form_count";
        case RecordKind::campaign_item: return "campaign_item";
    }
    throw std::domain_error("unknown record kind");
}

inline RecordKind record_kind_from(const std::string& s) {
    if (s == "unit") return RecordKind::unit;
    if (s == "class") return RecordKind::klass;
    if (s == "form_count") return RecordKind::form_count;
    if (s == "campaign_item") return RecordKind::campaign_item;
    throw std::domain_error("unknown record kind: " + s);
}

/// One persisted result.  Every integer in the payload is a decimal string —
/// fundamental-unit coordinates overflow any fixed-width type, and nothing
/// numeric is ever serialized as floating point.
struct ResultRecord {
    int schema_version = kSchemaVersion;
    RecordKind kind = RecordKind::unit;
    KV payload;
    std::string timestamp;  // UTC ISO-8601

    bool operator==(const ResultRecord&) const = default;
};

enum class OutputFormat { jsonl, tsv };

inline std::string utc_now_iso8601() {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

namespace detail {

// A payload value that parses as a float (decimal point or exponent in an
// otherwise numeric string) is a schema violation.
inline bool looks_like_float(const std::string& s) {
    if (s.empty()) return false;
    bool digits = false, dot_or_exp = false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i) {
        char ch = s[i];
        if (ch >= '0' && ch <= '9') digits = true;
        else if (ch == '.' || ch == 'e' || ch == 'E') dot_or_exp = true;
        else return false;
    }
    return digits && dot_or_exp;
}

}  // namespace detail

inline std::string render_jsonl(const ResultRecord& r) {
    nlohmann::ordered_json j;
    j["schema_version"] = r.schema_version;
    j["kind"] = to_string(r.kind);
    nlohmann::ordered_json payload = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.payload) payload[k] = v;
    j["payload"] = std::move(payload);
    j["timestamp"] = r.timestamp;
    return j.dump();
}

inline std::string render_tsv(const ResultRecord& r) {
    std::ostringstream out;
    out << r.schema_version << '\t' << to_string(r.kind) << '\t' << r.timestamp;
    for (const auto& [k, v] : r.payload) out << '\t' << k << '=' << v;
    return out.str();
}

inline ResultRecord parse_jsonl_line(const std::string& line) {
    nlohmann::ordered_json j = nlohmann::ordered_json::parse(line);  // throws on malformed input
    if (!j.is_object()) throw std::runtime_error("record is not a JSON object");
    if (!j.contains("schema_version") || !j["schema_version"].is_number_integer()) {
        throw std::runtime_error("missing integer schema_version");
    }
    int version = j["schema_version"].get<int>();
    if (version != kSchemaVersion) {
        throw std::runtime_error("schema_version mismatch: file has " + std::to_string(version) +
                                 ", this build reads " + std::to_string(kSchemaVersion));
    }
    ResultRecord r;
    r.schema_version = version;
    r.kind = record_kind_from(j.at("kind").get<std::string>());
    if (!j.contains("payload") || !j["payload"].is_object()) throw std::runtime_error("missing payload object");
    for (const auto& [k, v] : j["payload"].items()) {
        if (!v.is_string()) {
            throw std::runtime_error("payload field '" + k + "' is not a string (integers must be decimal strings)");
        }
        std::string s = v.get<std::string>();
        if (detail::looks_like_float(s)) {
            throw std::runtime_error("payload field '" + k + "' looks like a float: " + s);
        }
        r.payload.emplace_back(k, std::move(s));
    }
    r.timestamp = j.at("timestamp").get<std::string>();
    return r;
}

/// Appends records to path, one per line.  JSONL is the canonical store;
/// TSV is an output-only encoding.
inline void persist(const std::vector<ResultRecord>& records, const std::string& path,
                    OutputFormat format = OutputFormat::jsonl) {
    std::ofstream out(path, std::ios::app);
    if (!out) throw std::runtime_error("persist: cannot open " + path);
    for (const auto& r : records) {
        out << (format == OutputFormat::jsonl ? render_jsonl(r) : render_tsv(r)) << '\n';
    }
    if (!out) throw std::runtime_error("persist: write failed on " + path);
}

/// Reads a JSONL result file back; empty file gives an empty list.  A bad
/// line fails with its line number.
inline std::vector<ResultRecord> load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load: cannot open " + path);
    std::vector<ResultRecord> records;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        try {
            records.push_back(parse_jsonl_line(line));
        } catch (const std::exception& e) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    return records;
}

inline ResultRecord record_of(const QuadUnit& u, std::string timestamp = utc_now_iso8601()) {
    return {kSchemaVersion,
            RecordKind::unit,
            {{"m", u.m.get_str()},
             {"x", u.x.get_str()},
             {"y", u.y.get_str()},
             {"c", std::to_string(u.c)},
             {"norm", u.norm >= 0 ? "1" : "-1"}},
            std::move(timestamp)};
}

inline ResultRecord record_of(const ClassRecord& rec, std::string timestamp = utc_now_iso8601()) {
    return {kSchemaVersion,
            RecordKind::klass,
            {{"d0", rec.order.d0.get_str()},
             {"f", rec.order.f.get_str()},
             {"m", rec.order.m.get_str()},
             {"psi", rec.psi.get_str()},
             {"phi", rec.phi.get_str()},
             {"h_rel", rec.h_rel.get_str()},
             {"norm_eps_d0", rec.norm_eps_d0 >= 0 ? "1" : "-1"},
             {"norm_eps_d0f2", rec.norm_eps_d0f2 >= 0 ? "1" : "-1"},
             {"h_plus_rel", rec.h_plus_rel.get_str()},
             {"H_rel", rec.H_rel.get_str()}},
            std::move(timestamp)};
}

inline ResultRecord form_count_record(const Int& d, const Int& H, std::string timestamp = utc_now_iso8601()) {
    return {kSchemaVersion,
            RecordKind::form_count,
            {{"d", d.get_str()}, {"H", H.get_str()}},
            std::move(timestamp)};
}

/// One record per campaign item; the campaign name and parameters are
/// prefixed into each payload so lines stand alone.
inline std::vector<ResultRecord> records_of(const CampaignResult& c, const std::string& timestamp = utc_now_iso8601()) {
    std::vector<ResultRecord> out;
    out.reserve(c.items.size());
    for (const auto& item : c.items) {
        ResultRecord r;
        r.kind = RecordKind::campaign_item;
        r.timestamp = timestamp;
        r.payload.emplace_back("campaign", c.name);
        for (const auto& [k, v] : c.parameters) r.payload.emplace_back(k, v);
        r.payload.emplace_back("item", item.kind);
        for (const auto& [k, v] : item.fields) r.payload.emplace_back(k, v);
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace relclass
