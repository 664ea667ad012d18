#include "hecke_f2/tangent.hpp"

#include <array>
#include <sstream>

#include "hecke_f2/errors.hpp"
#include "hecke_f2/galois.hpp"

namespace hecke_f2 {

const char* tangent_system_name(TangentSystem sys) {
    switch (sys) {
        case TangentSystem::Unrestricted: return "unrestricted";
        case TangentSystem::LevelShape: return "level-shape";
        case TangentSystem::PrimeQuotient: return "prime-quotient";
        case TangentSystem::Reduced: return "reduced";
    }
    throw InvalidIndex("unknown tangent system");
}

static int idx(const std::array<int, 3>& t) { return t[0] + 2 * t[1] + 4 * t[2]; }

static std::array<int, 3> xor3(const std::array<int, 3>& a,
                               const std::array<int, 3>& b) {
    return {a[0] ^ b[0], a[1] ^ b[1], a[2] ^ b[2]};
}

static std::vector<std::array<int, 3>> all_triples() {
    std::vector<std::array<int, 3>> out;
    for (int z = 0; z < 2; ++z)
        for (int y = 0; y < 2; ++y)
            for (int x = 0; x < 2; ++x) out.push_back({x, y, z});
    return out;
}

BitMatrix tangent_constraints(TangentSystem sys, int64_t n_mod8) {
    CosetData cd = coset_data(n_mod8);
    const std::array<int, 3> one{0, 0, 0};
    std::vector<uint64_t> rows;  // 8-bit masks

    auto mask1 = [](const std::array<int, 3>& g) {
        return uint64_t{1} << idx(g);
    };

    switch (sys) {
        case TangentSystem::Unrestricted:
            rows.push_back(mask1(one));
            rows.push_back(mask1(cd.c_rep));
            break;
        case TangentSystem::LevelShape:
            rows.push_back(mask1(one));
            rows.push_back(mask1(cd.c_rep));
            for (const auto& d : cd.decomposition)
                for (const auto& i : cd.inertia) {
                    uint64_t m = mask1(d) ^ mask1(xor3(d, i));
                    if (m) rows.push_back(m);
                }
            break;
        case TangentSystem::PrimeQuotient:
            rows.push_back(mask1(cd.c_rep));
            for (const auto& d : cd.decomposition) rows.push_back(mask1(d));
            for (const auto& g : all_triples())
                for (const auto& d : cd.decomposition)
                    for (const auto& i : cd.inertia) {
                        uint64_t m = mask1(g) ^ mask1(xor3(g, i)) ^
                                     mask1(xor3(g, d)) ^ mask1(xor3(g, xor3(d, i)));
                        if (m) rows.push_back(m);
                    }
            break;
        case TangentSystem::Reduced:
            rows.push_back(mask1(cd.c_rep));
            for (const auto& g : cd.inertia) rows.push_back(mask1(g));
            for (const auto& d : cd.decomposition)
                for (const auto& i : cd.inertia) {
                    uint64_t m = mask1(d) ^ mask1(xor3(d, i));
                    if (m) rows.push_back(m);
                }
            for (const auto& g : all_triples())
                for (const auto& d : cd.decomposition)
                    for (const auto& i : cd.inertia) {
                        uint64_t m = mask1(g) ^ mask1(xor3(g, i)) ^
                                     mask1(xor3(g, d)) ^ mask1(xor3(g, xor3(d, i)));
                        if (m) rows.push_back(m);
                    }
            break;
    }

    BitMatrix m(static_cast<int64_t>(rows.size()), 8);
    for (size_t r = 0; r < rows.size(); ++r)
        m.row(static_cast<int64_t>(r))[0] = rows[r];
    return m;
}

int64_t tangent_nullity(TangentSystem sys, int64_t n_mod8) {
    return 8 - rank(tangent_constraints(sys, n_mod8));
}

// The brute-force route restates the constraints as predicates on an
// explicit assignment, sharing only the coset data with the matrix builder.
static bool satisfies(TangentSystem sys, const CosetData& cd,
                      const std::array<int, 8>& b) {
    auto at = [&](const std::array<int, 3>& g) { return b[static_cast<size_t>(idx(g))]; };
    const std::array<int, 3> one{0, 0, 0};

    auto level_glue = [&]() {
        for (const auto& d : cd.decomposition)
            for (const auto& i : cd.inertia)
                if (at(xor3(d, i)) != at(d)) return false;
        return true;
    };
    auto coset_sums = [&]() {
        for (const auto& g : all_triples())
            for (const auto& d : cd.decomposition)
                for (const auto& i : cd.inertia) {
                    int s = at(g) ^ at(xor3(g, i)) ^ at(xor3(g, d)) ^
                            at(xor3(g, xor3(d, i)));
                    if (s) return false;
                }
        return true;
    };

    switch (sys) {
        case TangentSystem::Unrestricted:
            return at(one) == 0 && at(cd.c_rep) == 0;
        case TangentSystem::LevelShape:
            return at(one) == 0 && at(cd.c_rep) == 0 && level_glue();
        case TangentSystem::PrimeQuotient: {
            if (at(cd.c_rep) != 0) return false;
            for (const auto& d : cd.decomposition)
                if (at(d) != 0) return false;
            return coset_sums();
        }
        case TangentSystem::Reduced: {
            if (at(cd.c_rep) != 0) return false;
            for (const auto& g : cd.inertia)
                if (at(g) != 0) return false;
            return level_glue() && coset_sums();
        }
    }
    throw InvalidIndex("unknown tangent system");
}

int64_t tangent_nullity_enum(TangentSystem sys, int64_t n_mod8) {
    CosetData cd = coset_data(n_mod8);
    int64_t count = 0;
    for (int mask = 0; mask < 256; ++mask) {
        std::array<int, 8> b{};
        for (int k = 0; k < 8; ++k) b[static_cast<size_t>(k)] = (mask >> k) & 1;
        if (satisfies(sys, cd, b)) ++count;
    }
    int64_t log2c = 0;
    while ((int64_t{1} << log2c) < count) ++log2c;
    if ((int64_t{1} << log2c) != count)
        throw ClassDecompositionFailed("solution count is not a power of two");
    return log2c;
}

static const TangentSystem kSystems[4] = {
    TangentSystem::Unrestricted, TangentSystem::LevelShape,
    TangentSystem::PrimeQuotient, TangentSystem::Reduced};
static const int64_t kResidues[4] = {1, 3, 5, 7};

std::string tangent_table_text() {
    std::ostringstream os;
    os << "tangent-space nullities by residue of the level prime mod 8\n";
    os << "system            1   3   5   7\n";
    for (auto sys : kSystems) {
        std::string name = tangent_system_name(sys);
        os << name;
        for (size_t pad = name.size(); pad < 16; ++pad) os << ' ';
        for (auto r : kResidues) os << "  " << tangent_nullity(sys, r);
        os << '\n';
    }
    return os.str();
}

nlohmann::ordered_json tangent_table_json() {
    nlohmann::ordered_json j;
    j["columns"] = {1, 3, 5, 7};
    j["rows"] = nlohmann::ordered_json::array();
    for (auto sys : kSystems) {
        nlohmann::ordered_json row;
        row["system"] = tangent_system_name(sys);
        row["nullity"] = nlohmann::ordered_json::array();
        for (auto r : kResidues) row["nullity"].push_back(tangent_nullity(sys, r));
        j["rows"].push_back(row);
    }
    return j;
}

}  // namespace hecke_f2
