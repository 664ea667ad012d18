#pragma once

#include <cstdint>
#include <string>

#include "hecke_f2/report.hpp"

namespace hecke_f2 {

// Scale and filter knobs for the verification suites. degree is the base
// degree bound D; scale-hungry preparations climb an internal ladder of
// larger algebras (and report skipped-insufficient-scale only if the top
// rung still is not enough). level = 0 runs every level, otherwise checks
// tied to the other levels are omitted from the report.
struct VerifyOptions {
    int64_t level = 0;          // 0, 1, 3 or 5
    int64_t degree = 160;       // base algebra degree bound
    int64_t prec = 0;           // 0 = derive from degree per algebra
    int64_t nmax = 40;          // size of the generator-power test family
    int64_t series_degree = 12; // extraction bound for the level-1 series
    bool use_cache = true;      // generator q-expansion disk cache

    bool want(int64_t lv) const { return level == 0 || level == lv; }
};

// Run one suite: "tables", "recurrences", "series", "tangent", "relations"
// or "all". Unknown names throw InvalidIndex. Every check lands in the
// report as pass, fail or skipped-insufficient-scale; nothing escapes.
Report run_suite(const std::string& suite, const VerifyOptions& opt);

}  // namespace hecke_f2
