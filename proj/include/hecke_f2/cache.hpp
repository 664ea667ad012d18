#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "hecke_f2/fps2.hpp"

namespace hecke_f2 {

// On-disk cache for generator q-expansions. Strictly best-effort: a miss,
// an unreadable directory or a malformed file all just mean recomputing.
// Entries are keyed by level and exact precision, so a cached series is
// byte-for-byte the one that would have been computed.
std::string cache_dir();

std::optional<QExpansion> load_generator(int64_t level, int64_t prec);
bool store_generator(int64_t level, const QExpansion& gen);

// gen_qexp with a cache wrap.
QExpansion generator(int64_t level, int64_t prec, bool use_cache);

}  // namespace hecke_f2
