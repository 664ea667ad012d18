#include "vendor/doctest.h"

#include <random>

#include "hecke_f2/errors.hpp"
#include "hecke_f2/genforms.hpp"
#include "hecke_f2/recur.hpp"
#include "oracle.hpp"

using namespace hecke_f2;

namespace {

CompanionPoly cp_of(int64_t order, std::vector<uint64_t> a) {
    CompanionPoly cp;
    cp.order = order;
    cp.a = std::move(a);
    return cp;
}

struct Frozen {
    OpSpec op;
    int64_t level;
    CompanionPoly cp;
};

// The six recorded companion polynomials, coefficients as y-power bitmasks.
std::vector<Frozen> frozen_table() {
    return {
        {op_u(3), 3, cp_of(3, {0, 2, 6, 10})},
        {op_t(7), 3, cp_of(8, {0, 0, 0, 0, 6, 6, 30, 30, 256})},
        {op_t(13), 3,
         cp_of(14, {0, 0, 4, 0, 16, 0, 64, 0, 276, 0, 1092, 0, 4182, 6, 16384})},
        {op_u(5), 5, cp_of(5, {0, 2, 6, 10, 30, 34})},
        {op_t(7), 5, cp_of(8, {0, 0, 6, 6, 0, 0, 102, 102, 256})},
        {op_t(11), 5, cp_of(12, {0, 0, 0, 0, 4, 0, 20, 0, 64, 0, 326, 6, 4096})},
    };
}

}  // namespace

TEST_CASE("recur: PolyCoord arithmetic respects the window") {
    PolyCoord a(10);
    a.set(2, 1);
    a.set(5, 1);
    CHECK(a.deg() == 5);
    PolyCoord s = pc_shift(a, 4);
    CHECK(s.get(6) == 1);
    CHECK(s.get(9) == 1);
    CHECK_THROWS_AS(pc_shift(a, 5), InvalidIndex);  // 5 + 5 = 10 leaves the window
    // multiplying by (1 + y) is a shift-and-add
    PolyCoord m = pc_mul_mask(a, 0b11);
    CHECK(m == pc_add(a, pc_shift(a, 1)));
    CHECK_THROWS_AS(pc_resize(a, 5), InvalidIndex);  // would drop the y^5 term
    PolyCoord grown = pc_resize(a, 40);
    CHECK(grown.dim == 40);
    CHECK(grown.deg() == 5);
}

TEST_CASE("recur: generator powers and coordinate round trips") {
    QExpansion f3 = gen_qexp(3, 200);
    auto pows = gen_powers(f3, 30);
    REQUIRE(pows.size() == 31);
    CHECK(pows[0] == qone(200));
    CHECK(pows[1] == f3);
    CHECK(pows[7] == pow(f3, 7));

    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 10; ++trial) {
        PolyCoord c(31);
        for (int64_t i = 0; i <= 30; ++i)
            if (rng() & 1) c.set(i, 1);
        PolyCoord back = from_qexpansion(qexp_of(c, pows), pows, 30);
        CHECK(back.bits == c.bits);
    }
}

TEST_CASE("recur: from_qexpansion rejects series outside the algebra") {
    QExpansion f3 = gen_qexp(3, 100);
    auto pows = gen_powers(f3, 20);
    QExpansion g = qexp_of(from_qexpansion(pow(f3, 4), pows, 20), pows);
    // flip a coefficient beyond the degree window: no degree-<=20 polynomial
    // can absorb a discrepancy whose order exceeds every generator power
    g.set_coeff(21, g.coeff(21) ^ 1);
    CHECK_THROWS_AS(from_qexpansion(g, pows, 20), NotInAlgebra);
    // and insufficient precision is flagged, not guessed at
    CHECK_THROWS_AS(from_qexpansion(truncate(f3, 15), pows, 20),
                    InsufficientPrecision);
}

TEST_CASE("recur: the six recorded companion polynomials re-derive exactly") {
    for (const Frozen& row : frozen_table()) {
        CompanionPoly got = derive_companion(row.op, row.level, 16);
        CHECK(got == row.cp);
    }
}

TEST_CASE("recur: recorded recurrences verify against fresh q-expansions") {
    for (const Frozen& row : frozen_table()) {
        RecurrenceCheck rc = verify_recurrence(row.cp, row.op, row.level, 40);
        CHECK(rc.ok);
        CHECK(rc.first_fail == -1);
    }
}

TEST_CASE("recur: a mutated coefficient is caught quickly") {
    CompanionPoly bad = cp_of(3, {0, 2, 6, 10});
    bad.a[1] ^= 1;  // y -> y + 1 in the X^2 coefficient
    RecurrenceCheck rc = verify_recurrence(bad, op_u(3), 3, 16);
    CHECK(!rc.ok);
    CHECK(rc.first_fail > 3);
    CHECK(rc.first_fail <= 16);
}

TEST_CASE("recur: canonical text rendering") {
    CHECK(to_text(cp_of(3, {0, 2, 6, 10})) ==
          "X^3 + y*X^2 + (y + y^2)*X + y + y^3");
}

TEST_CASE("recur: hecke_matrix columns are exact and degree-nonincreasing") {
    const int64_t D = 32;
    QExpansion f3 = gen_qexp(3, 400);
    auto pows = gen_powers(f3, D - 1);
    CompanionPoly cp = derive_companion(op_t(7), 3, 16);
    BitMatrix m = hecke_matrix(cp, op_t(7), 3, D);
    REQUIRE(m.rows == D);
    REQUIRE(m.cols == D);
    for (int64_t n = 0; n < D; ++n) {
        // column n = coordinates of T_7(f^n), recomputed from scratch
        PolyCoord want = from_qexpansion(t_ell(pows[static_cast<size_t>(n)], 7),
                                         pows, D - 1);
        for (int64_t i = 0; i < D; ++i) {
            CHECK(m.get(i, n) == want.get(i));
            if (i > n) CHECK(m.get(i, n) == 0);
        }
    }
}

TEST_CASE("recur: no recurrence of tiny order exists for T_13") {
    CHECK_THROWS_AS(derive_companion(op_t(13), 3, 8), NoRecurrenceFound);
}
