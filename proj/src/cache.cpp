#include "hecke_f2/cache.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hecke_f2/errors.hpp"
#include "hecke_f2/genforms.hpp"

namespace fs = std::filesystem;

namespace hecke_f2 {

std::string cache_dir() {
    if (const char* p = std::getenv("HECKE_F2_CACHE"); p && *p) return p;
    if (const char* p = std::getenv("XDG_CACHE_HOME"); p && *p)
        return (fs::path(p) / "hecke-f2").string();
    if (const char* p = std::getenv("HOME"); p && *p)
        return (fs::path(p) / ".cache" / "hecke-f2").string();
    return ".hecke-f2-cache";
}

static fs::path entry_path(int64_t level, int64_t prec) {
    std::ostringstream name;
    name << "gen-" << gen_name(level) << "-L" << level << "-p" << prec << ".f2q";
    return fs::path(cache_dir()) / name.str();
}

std::optional<QExpansion> load_generator(int64_t level, int64_t prec) {
    require_level(level);
    std::error_code ec;
    fs::path p = entry_path(level, prec);
    if (!fs::exists(p, ec) || ec) return std::nullopt;
    std::ifstream in(p);
    if (!in) return std::nullopt;
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        F2qserRecord rec = from_f2qser(buf.str());
        if (rec.level != level || rec.name != gen_name(level) ||
            rec.series.prec != prec)
            return std::nullopt;
        return rec.series;
    } catch (const Error&) {
        return std::nullopt;
    }
}

bool store_generator(int64_t level, const QExpansion& gen) {
    require_level(level);
    std::error_code ec;
    fs::create_directories(cache_dir(), ec);
    if (ec) return false;
    fs::path p = entry_path(level, gen.prec);
    fs::path tmp = p;
    tmp += ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) return false;
        out << to_f2qser(gen, gen_name(level), level);
        if (!out) return false;
    }
    fs::rename(tmp, p, ec);
    return !ec;
}

QExpansion generator(int64_t level, int64_t prec, bool use_cache) {
    if (use_cache)
        if (auto cached = load_generator(level, prec)) return *cached;
    QExpansion gen = gen_qexp(level, prec);
    if (use_cache) store_generator(level, gen);
    return gen;
}

}  // namespace hecke_f2
