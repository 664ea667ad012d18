#include "vendor/doctest.h"

#include <set>

#include "hecke_f2/errors.hpp"
#include "hecke_f2/genforms.hpp"
#include "oracle.hpp"

using namespace hecke_f2;

namespace {

std::set<int64_t> support(const QExpansion& f) {
    std::set<int64_t> s;
    for (int64_t i = 0; i < f.prec; ++i)
        if (f.coeff(i)) s.insert(i);
    return s;
}

}  // namespace

TEST_CASE("genforms: the three generators open with their recorded terms") {
    CHECK(support(gen_qexp(1, 50)) == std::set<int64_t>{1, 9, 25, 49});
    CHECK(support(gen_qexp(3, 20)) ==
          std::set<int64_t>{1, 2, 3, 4, 6, 8, 9, 12, 16, 18});
    CHECK(support(gen_qexp(5, 20)) ==
          std::set<int64_t>{1, 2, 4, 5, 8, 9, 10, 16, 18});
}

TEST_CASE("genforms: delta is supported exactly on odd squares") {
    QExpansion d = gen_qexp(1, 400);
    for (int64_t n = 0; n < 400; ++n) {
        int64_t r = 0;
        while (r * r < n) ++r;
        bool odd_square = (r * r == n) && (r % 2 == 1);
        CHECK(d.coeff(n) == (odd_square ? 1 : 0));
    }
}

TEST_CASE("genforms: sigma3 parity matches trial division") {
    for (int64_t n = 1; n <= 3000; ++n)
        CHECK(sigma3_parity(n) == oracle::sigma3_parity_naive(n));
    CHECK_THROWS_AS(sigma3_parity(0), InvalidIndex);
}

TEST_CASE("genforms: level generators follow the divisor-sum parity law") {
    // coefficient n of f_N is sigma3-parity of n, folded with n/N when N | n
    for (int64_t level : {3, 5}) {
        QExpansion f = gen_qexp(level, 500);
        for (int64_t n = 1; n < 500; ++n) {
            int want = oracle::sigma3_parity_naive(n);
            if (n % level == 0) want ^= oracle::sigma3_parity_naive(n / level);
            CHECK(f.coeff(n) == want);
        }
    }
}

TEST_CASE("genforms: graded parts partition the series") {
    for (int64_t level : {1, 3, 5}) {
        QExpansion f = gen_qexp(level, 300);
        QExpansion back = qzero(300);
        for (int64_t i = 0; i < 8; ++i) {
            QExpansion part = graded_part(f, i);
            back = add(back, part);
            for (int64_t n = 0; n < 300; ++n)
                if (part.coeff(n))
                    CHECK((n == 0 ? 0 : n % 8) == (i == 0 ? 0 : i % 8));
        }
        CHECK(back == f);
    }
    CHECK_THROWS_AS(graded_part(gen_qexp(1, 20), 8), InvalidIndex);
    CHECK_THROWS_AS(graded_part(gen_qexp(1, 20), -1), InvalidIndex);
}

TEST_CASE("genforms: level validation and names") {
    CHECK(valid_level(1));
    CHECK(valid_level(3));
    CHECK(valid_level(5));
    CHECK(!valid_level(2));
    CHECK(!valid_level(7));
    CHECK_THROWS_AS(require_level(4), InvalidIndex);
    CHECK_THROWS_AS(gen_qexp(2, 10), InvalidIndex);
    CHECK(gen_name(1) == "delta");
    CHECK(gen_name(3) == "f3");
    CHECK(gen_name(5) == "f5");
}
