#include "vendor/doctest.h"

#include <map>
#include <set>

#include "hecke_f2/errors.hpp"
#include "hecke_f2/galois.hpp"

using namespace hecke_f2;

namespace {

int64_t modpow(int64_t b, int64_t e, int64_t m) {
    int64_t r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = r * b % m;
        b = b * b % m;
        e >>= 1;
    }
    return r;
}

struct Row {
    std::array<int, 3> eps;
    int64_t label;
    bool plus;
    const char* letters;
    std::vector<int64_t> primes;
};

// Expected class tables: sign triple (action on sqrt(-1), sqrt(2), sqrt(N)),
// mod-8 label, sign, letter word, and sample Frobenius primes.
std::vector<Row> table3() {
    return {
        {{0, 0, 0}, 1, true, "1", {73}},  {{0, 0, 1}, 1, false, "i", {17}},
        {{1, 1, 0}, 3, true, "d", {11}},  {{1, 1, 1}, 3, false, "di", {19}},
        {{0, 1, 0}, 5, true, "cd", {13}}, {{0, 1, 1}, 5, false, "cdi", {5}},
        {{1, 0, 0}, 7, true, "c", {23}},  {{1, 0, 1}, 7, false, "ci", {7}},
    };
}

std::vector<Row> table5() {
    return {
        {{0, 0, 0}, 1, true, "1", {41, 89}},  {{0, 0, 1}, 1, false, "i", {17, 73}},
        {{1, 1, 0}, 3, true, "cd", {11, 19}}, {{1, 1, 1}, 3, false, "cdi", {3, 67}},
        {{0, 1, 0}, 5, true, "d", {61, 29}},  {{0, 1, 1}, 5, false, "di", {13, 37}},
        {{1, 0, 0}, 7, true, "c", {31, 79}},  {{1, 0, 1}, 7, false, "ci", {7, 23}},
    };
}

}  // namespace

TEST_CASE("galois: jacobi symbol matches Euler's criterion at odd primes") {
    for (int64_t q = 3; q < 200; q += 2) {
        if (!is_prime_ll(q)) continue;
        for (int64_t a = 1; a < q; ++a) {
            int64_t e = modpow(a, (q - 1) / 2, q);
            int want = (e == 1) ? 1 : -1;
            CHECK(jacobi(a, q) == want);
        }
        CHECK(jacobi(q, q) == 0);
    }
    // multiplicativity in the lower argument on a composite
    CHECK(jacobi(2, 15) == jacobi(2, 3) * jacobi(2, 5));
}

TEST_CASE("galois: primality by trial division") {
    auto naive = [](int64_t n) {
        if (n < 2) return false;
        for (int64_t d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    };
    for (int64_t n = 0; n < 5000; ++n) CHECK(is_prime_ll(n) == naive(n));
}

TEST_CASE("galois: the sixteen recorded class rows hold") {
    for (int64_t level : {3, 5}) {
        auto rows = (level == 3) ? table3() : table5();
        REQUIRE(rows.size() == 8);
        for (const Row& row : rows) {
            FrattiniClass fc = class_of_triple(level, row.eps);
            CHECK(fc.eps == row.eps);
            CHECK(fc.label == row.label);
            CHECK(fc.plus == row.plus);
            CHECK(fc.letters == row.letters);
            for (int64_t q : row.primes) {
                FrattiniClass got = frattini_class(level, q);
                CHECK(got == fc);
            }
        }
    }
}

TEST_CASE("galois: class enumeration order and letter anatomy") {
    for (int64_t level : {3, 5}) {
        auto got = all_classes(level);
        REQUIRE(got.size() == 8);
        // labels ascend 1,1,3,3,5,5,7,7 with plus before minus
        for (size_t i = 0; i < 8; ++i) {
            CHECK(got[i].label == static_cast<int64_t>(1 + 2 * (i / 2)));
            CHECK(got[i].plus == (i % 2 == 0));
        }
        // the eight letter words are exactly the subsets of {c, d, i}
        std::set<std::string> words;
        for (const auto& fc : got) words.insert(fc.letters);
        CHECK(words == std::set<std::string>{"1", "c", "cd", "cdi", "ci", "d", "di",
                                             "i"});
        // identity class is (label 1, plus); c sits at (7, plus)
        CHECK(class_of_triple(level, {0, 0, 0}).letters == "1");
        FrattiniClass c = class_of_triple(level, {1, 0, 0});
        CHECK(c.label == 7);
        CHECK(c.plus);
        CHECK(c.letters == "c");
    }
}

TEST_CASE("galois: frattini_class rejects bad arguments") {
    CHECK_THROWS_AS(frattini_class(3, 2), InvalidIndex);   // even prime
    CHECK_THROWS_AS(frattini_class(3, 9), InvalidIndex);   // composite
    CHECK_THROWS_AS(frattini_class(3, 3), InvalidIndex);   // ramified at the level
    CHECK_THROWS_AS(frattini_class(5, 5), InvalidIndex);
    CHECK_THROWS_AS(frattini_class(3, 1), InvalidIndex);
    CHECK_THROWS_AS(frattini_class(4, 7), InvalidIndex);   // bad level
}

TEST_CASE("galois: the class is a residue invariant and a homomorphism") {
    for (int64_t level : {3, 5}) {
        const int64_t M = (level == 3) ? 24 : 40;
        std::map<int64_t, std::array<int, 3>> by_residue;
        for (int64_t q = 3; q < 600; ++q) {
            if (!is_prime_ll(q) || q == level) continue;
            auto t = frattini_class(level, q).eps;
            auto [it, fresh] = by_residue.emplace(q % M, t);
            if (!fresh) CHECK(it->second == t);
        }
        // every unit residue shows up, and the triple map is additive
        CHECK(by_residue.size() == static_cast<size_t>(level == 3 ? 8 : 16));
        for (const auto& [a, ta] : by_residue)
            for (const auto& [b, tb] : by_residue) {
                auto it = by_residue.find(a * b % M);
                REQUIRE(it != by_residue.end());
                std::array<int, 3> sum{ta[0] ^ tb[0], ta[1] ^ tb[1], ta[2] ^ tb[2]};
                CHECK(it->second == sum);
            }
    }
}

TEST_CASE("galois: class_primes returns witnesses of the right class") {
    for (int64_t level : {3, 5}) {
        for (const Row& row : (level == 3) ? table3() : table5()) {
            auto ps = class_primes(level, row.eps, 3);
            REQUIRE(ps.size() == 3);
            int64_t prev = 0;
            for (int64_t q : ps) {
                CHECK(q > prev);
                prev = q;
                CHECK(frattini_class(level, q).eps == row.eps);
            }
        }
    }
}

TEST_CASE("galois: coset data pins the three letter generators") {
    for (int64_t n : {3, 5}) {
        CosetData cd = coset_data(n);
        CHECK(cd.n_mod8 == n);
        CHECK(cd.c_rep == std::array<int, 3>{1, 0, 0});
        CHECK(cd.i_rep == std::array<int, 3>{0, 0, 1});
        CHECK(cd.d_rep == ((n == 3) ? std::array<int, 3>{1, 1, 0}
                                    : std::array<int, 3>{0, 1, 0}));
        REQUIRE(cd.inertia.size() == 2);
        CHECK(cd.inertia[0] == std::array<int, 3>{0, 0, 0});
        CHECK(cd.inertia[1] == cd.i_rep);
        REQUIRE(cd.decomposition.size() == 4);
        // decomposition = subgroup generated by i and d
        std::set<std::array<int, 3>> dec(cd.decomposition.begin(),
                                         cd.decomposition.end());
        std::array<int, 3> di{cd.d_rep[0] ^ cd.i_rep[0], cd.d_rep[1] ^ cd.i_rep[1],
                              cd.d_rep[2] ^ cd.i_rep[2]};
        CHECK(dec == std::set<std::array<int, 3>>{
                         {0, 0, 0}, cd.i_rep, cd.d_rep, di});
    }
}

TEST_CASE("galois: rendered tables carry the recorded rows") {
    for (int64_t level : {3, 5}) {
        std::string text = class_table_text(level);
        for (const char* w : {"cdi", "cd", "ci", "di"})
            CHECK(text.find(w) != std::string::npos);
        auto j = class_table_json(level);
        CHECK(j["level"] == level);
        REQUIRE(j.contains("classes"));
        CHECK(j["classes"].size() == 8);
        for (const auto& entry : j["classes"]) {
            CHECK(entry.contains("class"));
            CHECK(entry.contains("triple"));
            CHECK(entry.contains("word"));
            CHECK(entry.contains("primes"));
            CHECK(entry["primes"].size() == 2);
        }
    }
}
