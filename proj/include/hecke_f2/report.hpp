#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "vendor/json.hpp"

namespace hecke_f2 {

// One verified statement. `anchor` is an opaque stable tag naming the claim
// a check pins down; it travels into reports as "paper_anchor" so runs can
// be diffed across versions.
struct CheckResult {
    std::string id;
    std::string anchor;
    std::string status;  // "pass" | "fail" | "skipped-insufficient-scale"
    std::string detail;
    double runtime_ms = 0;  // shown in the text rendering only
};

CheckResult check_pass(std::string id, std::string anchor, std::string detail);
CheckResult check_fail(std::string id, std::string anchor, std::string detail);
CheckResult check_skip(std::string id, std::string anchor, std::string detail);

struct Report {
    std::string suite;
    std::vector<std::pair<std::string, int64_t>> scale;  // name -> value, ordered
    std::vector<CheckResult> checks;

    bool ok() const;  // no "fail" entries
};

// Checks are rendered sorted by id in every format, so byte-identical
// reports come out of identical runs regardless of execution order.
std::string render_text(const Report& r);
std::string render_json(const Report& r);
std::string render_csv(const Report& r);

}  // namespace hecke_f2
