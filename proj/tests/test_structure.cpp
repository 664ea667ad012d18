#include "vendor/doctest.h"

#include <algorithm>
#include <random>

#include "hecke_f2/errors.hpp"
#include "hecke_f2/spaces.hpp"
#include "hecke_f2/structure.hpp"

using namespace hecke_f2;

namespace {

std::vector<std::vector<uint64_t>> rows_of(const FormSpace& s) {
    std::vector<std::vector<uint64_t>> rows;
    for (int64_t i = 0; i < s.dim(); ++i) rows.push_back(s.basis_row(i));
    return rows;
}

}  // namespace

TEST_CASE("structure: graded monomial order") {
    auto m = graded_monomials(4);
    REQUIRE(m.size() == 10);
    // degree blocks ascending, first exponent descending inside each block
    CHECK(m[0] == std::pair<int64_t, int64_t>{0, 0});
    CHECK(m[1] == std::pair<int64_t, int64_t>{1, 0});
    CHECK(m[2] == std::pair<int64_t, int64_t>{0, 1});
    CHECK(m[3] == std::pair<int64_t, int64_t>{2, 0});
    CHECK(m.back() == std::pair<int64_t, int64_t>{0, 3});
    for (auto [a, b] : m) CHECK(a + b < 4);
}

TEST_CASE("structure: BiSeries text and json") {
    BiSeries s;
    s.xname = "x";
    s.yname = "y";
    s.degree_bound = 6;
    s.set_term(1, 1);
    s.set_term(3, 1);
    s.set_term(1, 4);
    // the bound is exclusive: degree 6 terms are out of range at bound 6
    CHECK_THROWS_AS(s.set_term(1, 5), InvalidIndex);
    CHECK_THROWS_AS(s.set_term(-1, 2), InvalidIndex);
    CHECK(s.has_term(1, 1));
    CHECK(!s.has_term(1, 2));
    CHECK(s.text().find("xy") != std::string::npos);
    CHECK(s.text().find("x^3y") != std::string::npos);
    s.set_term(1, 1, false);
    CHECK(!s.has_term(1, 1));
    auto j = s.to_json();
    CHECK(j.contains("terms"));
    CHECK(j.contains("degree_bound"));
    BiSeries empty;
    empty.degree_bound = 3;
    CHECK(empty.text() == "0");
    CHECK(empty.is_zero());
}

TEST_CASE("structure: operator expressions form an algebra over GF(2)") {
    OperatorExpr x = ox_gen(op_t(5));
    OperatorExpr y = ox_gen(op_t(7));
    CHECK(ox_sum(x, x).is_zero());  // coefficients cancel in pairs
    OperatorExpr xy = ox_compose(x, y);
    OperatorExpr x2 = ox_pow(x, 2);
    CHECK(ox_pow(x, 0) == ox_identity());
    CHECK(ox_pow(x, 1) == x);
    CHECK(ox_sum(xy, ox_sum(x2, xy)) == x2);
    CHECK(ox_compose(ox_identity(), xy) == xy);
    CHECK(ox_compose(ox_zero(), xy).is_zero());
    CHECK(ox_name(ox_identity()) == "1");
    CHECK(ox_name(ox_zero()) == "0");
}

TEST_CASE("structure: eval_expr multiplies matrices in composition order") {
    PolyAlgebra alg = make_algebra(3, 24);
    const BitMatrix& m5 = alg.op_matrix(op_t(5));
    const BitMatrix& m7 = alg.op_matrix(op_t(7));
    OpMatrix got = eval_expr(alg, ox_compose(ox_gen(op_t(5)), ox_gen(op_t(7))));
    CHECK(got.mat == mul(m5, m7));
    CHECK(got.valid == alg.D);
    OpMatrix s = eval_expr(alg, ox_sum(ox_gen(op_t(5)), ox_identity()));
    CHECK(s.mat == add(m5, BitMatrix::identity(alg.D)));
    // series_operator expands terms as x^a y^b compositions
    BiSeries ser;
    ser.degree_bound = 4;
    ser.set_term(1, 1);
    ser.set_term(0, 2);
    OpMatrix sm = eval_expr(alg, series_operator(ser, op_t(5), op_t(7)));
    CHECK(sm.mat == add(mul(m5, m7), mul(m7, m7)));
    // degree-raising operators may not appear inside products
    CHECK_THROWS_AS(
        eval_expr(alg, ox_compose(ox_gen(op_theta()), ox_gen(op_t(5)))), Error);
}

TEST_CASE("structure: dual basis is sound and extraction is basis-independent") {
    PolyAlgebra alg = make_algebra(1, 96);
    FormSpace K = k_space(alg);
    const BitMatrix& mx = alg.op_matrix(op_t(11));
    const BitMatrix& my = alg.op_matrix(op_t(13));
    DualBasis dual = dual_basis(alg, K, mx, my, 4);
    REQUIRE(dual.monomials.size() == dual.forms.size());
    REQUIRE(dual.monomials.size() == 10);
    // soundness: <x^a y^b, form_k> = 1 exactly at the matching monomial
    for (size_t k = 0; k < dual.monomials.size(); ++k)
        for (size_t g = 0; g < dual.monomials.size(); ++g) {
            auto [a, b] = dual.monomials[g];
            std::vector<uint64_t> v = dual.forms[k];
            for (int64_t i = 0; i < b; ++i) v = mat_vec(my, v);
            for (int64_t i = 0; i < a; ++i) v = mat_vec(mx, v);
            CHECK(pairing_bit(BitMatrix::identity(alg.D), v) == (k == g ? 1 : 0));
        }
    // tail certificate: every degree-4 monomial kills every dual form
    for (const auto& form : dual.forms)
        for (int64_t a = 4; a >= 0; --a) {
            std::vector<uint64_t> v = form;
            for (int64_t i = 0; i < 4 - a; ++i) v = mat_vec(my, v);
            for (int64_t i = 0; i < a; ++i) v = mat_vec(mx, v);
            CHECK(all_zero(v));
        }

    // extraction through a shuffled copy of the same space gives the same series
    BiSeries f1 = express_in_generators(alg, alg.op_matrix(op_t(7)), mx, my, dual,
                                        "x", "y");
    auto rows = rows_of(K);
    std::mt19937_64 rng(17);
    std::shuffle(rows.begin(), rows.end(), rng);
    // xor a few rows into each other: same span, different basis
    for (size_t i = 1; i < rows.size(); ++i)
        if (rng() & 1) {
            auto copy = rows[i - 1];
            xor_into(rows[i], copy);
        }
    BitMatrix stacked(static_cast<int64_t>(rows.size()), alg.D);
    for (size_t i = 0; i < rows.size(); ++i)
        stacked.row_assign(static_cast<int64_t>(i), rows[i]);
    FormSpace K2 = make_space("shuffled", alg, stacked);
    CHECK(K2.dim() == K.dim());
    DualBasis dual2 = dual_basis(alg, K2, mx, my, 4);
    BiSeries f2 = express_in_generators(alg, alg.op_matrix(op_t(7)), mx, my, dual2,
                                        "x", "y");
    CHECK(f1 == f2);
    CHECK(f1.has_term(1, 1));  // the leading xy term of the recorded series
}

TEST_CASE("structure: nilpotence index counts ideal powers") {
    PolyAlgebra alg = make_algebra(1, 64);
    std::vector<BitMatrix> gens = {alg.op_matrix(op_t(3)), alg.op_matrix(op_t(5)),
                                   alg.op_matrix(op_t(7)), alg.op_matrix(op_t(11)),
                                   alg.op_matrix(op_t(13))};
    // delta itself dies under every generator: index 1
    PolyCoord delta(alg.D);
    delta.set(1, 1);
    CHECK(nilpotence_index(gens, delta.bits, alg.D) == 1);
    // every operator image of delta^3 and delta^5 is 0 or delta, so both
    // die in two steps; delta^7 takes three because T_3 only knocks it down
    // to delta^5 and T_5 only to delta^3
    for (int64_t e : {3, 5}) {
        PolyCoord de(alg.D);
        de.set(e, 1);
        CHECK(nilpotence_index(gens, de.bits, alg.D) == 2);
    }
    PolyCoord d7(alg.D);
    d7.set(7, 1);
    CHECK(nilpotence_index(gens, d7.bits, alg.D) == 3);
    std::vector<uint64_t> zero(static_cast<size_t>(nwords(alg.D)), 0);
    CHECK(nilpotence_index(gens, zero, alg.D) == 0);
}

TEST_CASE("structure: Hilbert-Samuel ranks on the level-1 kernel") {
    // degree 128: the window must hold enough of K for ten monomial
    // functionals of degree < 5 to act independently (64 tops out at 14)
    PolyAlgebra alg = make_algebra(1, 128);
    FormSpace K = k_space(alg);
    auto h = hilbert_samuel({alg.op_matrix(op_t(11)), alg.op_matrix(op_t(13))},
                            rows_of(K), 5);
    CHECK(h == std::vector<int64_t>{0, 1, 3, 6, 10, 15});
}

TEST_CASE("structure: solve_frobenius witnesses satisfy the quadratic exactly") {
    PolyAlgebra alg = make_algebra(3, 48);
    OperatorExpr F = solve_frobenius(alg, {op_t(5), op_t(7), op_t(11), op_t(13)});
    BitMatrix mF = eval_expr(alg, F).mat;
    const BitMatrix& mu = alg.op_matrix(op_u(3));
    BitMatrix lhs = add(mul(mu, mu), add(mul(mF, mu), BitMatrix::identity(alg.D)));
    CHECK(all_zero(lhs.w));
    CHECK(!F.is_zero());
    // the span walk is ordered, so the expression it settles on is stable
    OperatorExpr F2 = solve_frobenius(alg, {op_t(5), op_t(7), op_t(11), op_t(13)});
    CHECK(F == F2);
}
