#include "hecke_f2/galois.hpp"

#include <algorithm>
#include <sstream>

#include "hecke_f2/errors.hpp"

namespace hecke_f2 {

int jacobi(int64_t a, int64_t n) {
    if (n <= 0 || n % 2 == 0) throw InvalidIndex("jacobi needs odd positive n");
    a %= n;
    if (a < 0) a += n;
    int result = 1;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            int64_t r = n % 8;
            if (r == 3 || r == 5) result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

bool is_prime_ll(int64_t n) {
    if (n < 2) return false;
    for (int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

static std::string letters_of(int64_t n_mod8, const std::array<int, 3>& t) {
    // Solve t = a*c + b*d + e*i in the sign group, with c = (1,0,0),
    // i = (0,0,1) and d the Frobenius-at-N image. For the residues we care
    // about (3 and 5 mod 8) d has second coordinate 1, so b is forced first.
    CosetData cd = coset_data(n_mod8);
    if (cd.d_rep[1] == 0 && t[1] != 0)
        throw ClassDecompositionFailed("triple is not a word in c, d, i at this residue");
    int b = cd.d_rep[1] ? t[1] : 0;
    int a = t[0] ^ (b & cd.d_rep[0]);
    int e = t[2] ^ (b & cd.d_rep[2]);
    std::string s;
    if (a) s += "c";
    if (b) s += "d";
    if (e) s += "i";
    return s.empty() ? "1" : s;
}

FrattiniClass class_of_triple(int64_t level, const std::array<int, 3>& t) {
    FrattiniClass fc;
    fc.eps = t;
    static const int64_t label_of[2][2] = {{1, 5}, {7, 3}};  // [eps_i][eps_2]
    fc.label = label_of[t[0]][t[1]];
    fc.plus = (t[2] == 0);
    fc.letters = letters_of(level % 8, t);
    return fc;
}

FrattiniClass frattini_class(int64_t level, int64_t q) {
    if (level != 3 && level != 5)
        throw InvalidIndex("frattini classes are defined for levels 3 and 5");
    if (q < 3 || !is_prime_ll(q) || q == level)
        throw InvalidIndex("class representative must be an odd prime away from the level");
    std::array<int, 3> t{};
    t[0] = (q % 4 == 3) ? 1 : 0;
    t[1] = (q % 8 == 3 || q % 8 == 5) ? 1 : 0;
    t[2] = (jacobi(level, q) == -1) ? 1 : 0;
    FrattiniClass fc = class_of_triple(level, t);
    // The cyclotomic coordinate is just the residue of q mod 8.
    if (fc.label != q % 8)
        throw ClassDecompositionFailed("mod-8 label disagrees with the residue");
    return fc;
}

CosetData coset_data(int64_t n_mod8) {
    if (n_mod8 != 1 && n_mod8 != 3 && n_mod8 != 5 && n_mod8 != 7)
        throw InvalidIndex("residue must be an odd class mod 8");
    CosetData cd;
    cd.n_mod8 = n_mod8;
    cd.i_rep = {0, 0, 1};
    cd.c_rep = {1, 0, 0};
    // d acts on sqrt(-1) and sqrt(2) the way the residue does and fixes
    // sqrt(N): (eps_i(N), eps_2(N), 0).
    cd.d_rep = {(n_mod8 == 3 || n_mod8 == 7) ? 1 : 0,
                (n_mod8 == 3 || n_mod8 == 5) ? 1 : 0, 0};
    cd.inertia = {{0, 0, 0}, cd.i_rep};
    for (const auto& g : cd.inertia) {
        cd.decomposition.push_back(g);
        cd.decomposition.push_back(
            {g[0] ^ cd.d_rep[0], g[1] ^ cd.d_rep[1], g[2] ^ cd.d_rep[2]});
    }
    std::sort(cd.decomposition.begin(), cd.decomposition.end());
    cd.decomposition.erase(
        std::unique(cd.decomposition.begin(), cd.decomposition.end()),
        cd.decomposition.end());
    return cd;
}

std::vector<int64_t> class_primes(int64_t level, const std::array<int, 3>& t,
                                  int64_t count, int64_t limit) {
    std::vector<int64_t> out;
    for (int64_t q = 3; q <= limit && (int64_t)out.size() < count; q += 2) {
        if (!is_prime_ll(q) || q == level) continue;
        if (frattini_class(level, q).eps == t) out.push_back(q);
    }
    return out;
}

std::vector<FrattiniClass> all_classes(int64_t level) {
    std::vector<FrattiniClass> out;
    for (int64_t label : {1, 3, 5, 7})
        for (int sign = 0; sign < 2; ++sign) {
            std::array<int, 3> t{};
            t[0] = (label == 3 || label == 7) ? 1 : 0;
            t[1] = (label == 3 || label == 5) ? 1 : 0;
            t[2] = sign;
            out.push_back(class_of_triple(level, t));
        }
    return out;
}

static std::string class_name(const FrattiniClass& fc) {
    return "g" + std::to_string(fc.label) + (fc.plus ? "+" : "-");
}

std::string class_table_text(int64_t level) {
    std::ostringstream os;
    os << "level " << level << " Frobenius classes (action on sqrt(-1), sqrt(2), sqrt("
       << level << "))\n";
    os << "class  triple  word  sample primes\n";
    for (const auto& fc : all_classes(level)) {
        os << class_name(fc) << "    (" << fc.eps[0] << "," << fc.eps[1] << ","
           << fc.eps[2] << ")  " << fc.letters;
        for (size_t pad = fc.letters.size(); pad < 4; ++pad) os << ' ';
        auto ps = class_primes(level, fc.eps, 2);
        for (auto p : ps) os << ' ' << p;
        os << '\n';
    }
    return os.str();
}

nlohmann::ordered_json class_table_json(int64_t level) {
    nlohmann::ordered_json j;
    j["level"] = level;
    j["classes"] = nlohmann::ordered_json::array();
    for (const auto& fc : all_classes(level)) {
        nlohmann::ordered_json row;
        row["class"] = class_name(fc);
        row["triple"] = fc.eps;
        row["word"] = fc.letters;
        row["primes"] = class_primes(level, fc.eps, 2);
        j["classes"].push_back(row);
    }
    return j;
}

}  // namespace hecke_f2
