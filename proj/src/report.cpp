#include "hecke_f2/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace hecke_f2 {

CheckResult check_pass(std::string id, std::string anchor, std::string detail) {
    return {std::move(id), std::move(anchor), "pass", std::move(detail), 0};
}
CheckResult check_fail(std::string id, std::string anchor, std::string detail) {
    return {std::move(id), std::move(anchor), "fail", std::move(detail), 0};
}
CheckResult check_skip(std::string id, std::string anchor, std::string detail) {
    return {std::move(id), std::move(anchor), "skipped-insufficient-scale",
            std::move(detail), 0};
}

bool Report::ok() const {
    for (const auto& c : checks)
        if (c.status == "fail") return false;
    return true;
}

static std::vector<CheckResult> sorted_checks(const Report& r) {
    std::vector<CheckResult> cs = r.checks;
    std::stable_sort(cs.begin(), cs.end(),
                     [](const CheckResult& a, const CheckResult& b) { return a.id < b.id; });
    return cs;
}

std::string render_text(const Report& r) {
    std::ostringstream os;
    os << "suite: " << r.suite;
    if (!r.scale.empty()) {
        os << " (";
        for (size_t i = 0; i < r.scale.size(); ++i) {
            if (i) os << ", ";
            os << r.scale[i].first << "=" << r.scale[i].second;
        }
        os << ")";
    }
    os << "\n";
    int64_t passed = 0, failed = 0, skipped = 0;
    for (const auto& c : sorted_checks(r)) {
        char ms[32] = "";
        if (c.runtime_ms > 0) std::snprintf(ms, sizeof ms, "  [%.0f ms]", c.runtime_ms);
        os << "  " << c.status << "  " << c.id << "  (" << c.anchor << ")  "
           << c.detail << ms << "\n";
        if (c.status == "pass")
            ++passed;
        else if (c.status == "fail")
            ++failed;
        else
            ++skipped;
    }
    os << passed << " passed, " << failed << " failed, " << skipped << " skipped\n";
    return os.str();
}

std::string render_json(const Report& r) {
    nlohmann::ordered_json j;
    j["suite"] = r.suite;
    j["scale"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.scale) j["scale"][k] = v;
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : sorted_checks(r)) {
        nlohmann::ordered_json jc;
        jc["id"] = c.id;
        jc["paper_anchor"] = c.anchor;
        jc["status"] = c.status;
        jc["detail"] = c.detail;
        j["checks"].push_back(jc);
    }
    return j.dump(2) + "\n";
}

static std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

std::string render_csv(const Report& r) {
    std::ostringstream os;
    os << "id,paper_anchor,status,detail\n";
    for (const auto& c : sorted_checks(r))
        os << csv_field(c.id) << ',' << csv_field(c.anchor) << ',' << csv_field(c.status)
           << ',' << csv_field(c.detail) << '\n';
    return os.str();
}

}  // namespace hecke_f2
