#include "vendor/doctest.h"

#include <sstream>

#include "hecke_f2/errors.hpp"
#include "hecke_f2/genforms.hpp"
#include "hecke_f2/spaces.hpp"

using namespace hecke_f2;

TEST_CASE("spaces: make_algebra validates its inputs") {
    CHECK_THROWS_AS(make_algebra(3, 4), InvalidIndex);       // window too small
    CHECK_THROWS_AS(make_algebra(2, 32), InvalidIndex);      // bad level
    CHECK_THROWS_AS(make_algebra(3, 32, 40), InsufficientScale);  // prec uncoupled
    QExpansion wrong_prec = gen_qexp(3, 100);
    CHECK_THROWS_AS(make_algebra(3, 32, 160, wrong_prec), InvalidIndex);
    QExpansion not_gen = qone(160);
    CHECK_THROWS_AS(make_algebra(3, 32, 160, not_gen), InvalidIndex);
    // the supplied-generator route must agree with the self-computed one
    PolyAlgebra a = make_algebra(3, 32);
    PolyAlgebra b = make_algebra(3, 32, a.prec, gen_qexp(3, a.prec));
    CHECK(a.gen == b.gen);
    CHECK(a.u2 == b.u2);
}

TEST_CASE("spaces: coordinates and q-expansions round-trip") {
    PolyAlgebra alg = make_algebra(5, 24);
    PolyCoord c(alg.D);
    c.set(0, 1);
    c.set(3, 1);
    c.set(17, 1);
    QExpansion f = alg.qexp(c);
    CHECK(alg.coord(f) == c);
    CHECK(alg.qexp_bits(c.bits) == f);
    // a nonzero series of order >= D cannot be a degree-< D polynomial in a
    // generator of order 1
    CHECK_THROWS_AS(alg.coord(qpow_monomial(alg.D, alg.prec)), NotInAlgebra);
}

TEST_CASE("spaces: K is the odd-support kernel of U_2") {
    for (int64_t level : {1, 3, 5}) {
        PolyAlgebra alg = make_algebra(level, 32);
        FormSpace K = k_space(alg);
        CHECK(K.dim() > 0);
        for (int64_t i = 0; i < K.dim(); ++i) {
            auto row = K.basis_row(i);
            CHECK(all_zero(mat_vec(alg.u2, row)));
            QExpansion f = alg.qexp_bits(row);
            for (int64_t n = 0; n < f.prec; n += 2) CHECK(f.coeff(n) == 0);
        }
        FormSpace th = theta_image(alg);
        CHECK(th.dim() > 0);
        CHECK(th.dim() <= K.dim());
        for (int64_t i = 0; i < th.dim(); ++i) CHECK(K.contains(th.basis_row(i)));
    }
}

TEST_CASE("spaces: old space holds the level-raised generators") {
    PolyAlgebra alg = make_algebra(3, 64);
    OldSpace old = old_space(alg);
    CHECK(old.space.dim() > 2);
    // delta and delta(q^3) really are those series
    QExpansion delta = gen_qexp(1, alg.prec);
    CHECK(alg.qexp(old.delta) == delta);
    CHECK(alg.qexp(old.delta_n) == truncate(substitute_qpow(delta, 3), alg.prec));
    CHECK(old.space.contains(old.delta.bits));
    CHECK(old.space.contains(old.delta_n.bits));
    PolyCoord one(alg.D);
    one.set(0, 1);
    CHECK(old.space.contains(one.bits));
    CHECK(old.space.contains(pc_mul(old.delta, old.delta_n).bits));
    CHECK_THROWS_AS(old_space(make_algebra(1, 16)), InvalidIndex);
}

TEST_CASE("spaces: very-new inside new inside K, with the right kernels") {
    for (int64_t level : {3, 5}) {
        PolyAlgebra alg = make_algebra(level, 48);
        FormSpace K = k_space(alg);
        FormSpace vnew = vnew_space(alg);
        FormSpace nw = new_space(alg);
        CHECK(vnew.dim() > 0);
        CHECK(vnew.dim() <= nw.dim());
        BitMatrix u1 = add(alg.op_matrix(op_u(level)), BitMatrix::identity(alg.D));
        for (int64_t i = 0; i < vnew.dim(); ++i) {
            CHECK(K.contains(vnew.basis_row(i)));
            CHECK(nw.contains(vnew.basis_row(i)));
            CHECK(all_zero(mat_vec(u1, vnew.basis_row(i))));
        }
        BitMatrix u2sq = mul(u1, u1);
        for (int64_t i = 0; i < nw.dim(); ++i) {
            CHECK(K.contains(nw.basis_row(i)));
            CHECK(all_zero(mat_vec(u2sq, nw.basis_row(i))));
        }
        // kernel_in_space is the generic route to the same space
        FormSpace alt = kernel_in_space("alt", alg, K, u1);
        CHECK(alt.dim() == vnew.dim());
        for (int64_t i = 0; i < alt.dim(); ++i)
            CHECK(vnew.contains(alt.basis_row(i)));
    }
}

TEST_CASE("spaces: un_preimage solves (U_N + 1) g = f on the very-new space") {
    for (int64_t level : {3, 5}) {
        PolyAlgebra alg = make_algebra(level, 48);
        FormSpace vnew = vnew_space(alg);
        BitMatrix u1 = add(alg.op_matrix(op_u(level)), BitMatrix::identity(alg.D));
        REQUIRE(vnew.dim() > 0);
        for (int64_t i = 0; i < vnew.dim(); ++i) {
            PolyCoord f(alg.D);
            f.bits = vnew.basis_row(i);
            PolyCoord g = un_preimage(alg, f);
            CHECK(mat_vec(u1, g.bits) == f.bits);
        }
    }
    PolyAlgebra alg1 = make_algebra(1, 16);
    PolyCoord z(alg1.D);
    CHECK_THROWS_AS(un_preimage(alg1, z), InvalidIndex);
    PolyAlgebra alg3 = make_algebra(3, 16);
    PolyCoord z3(alg3.D);
    CHECK_THROWS_AS(un_preimage(alg3, z3, 3), InvalidIndex);  // class 3 = level class
    CHECK_THROWS_AS(un_preimage(alg3, z3, 4), InvalidIndex);  // even class
}

TEST_CASE("spaces: operator matrices act like the operators") {
    PolyAlgebra alg = make_algebra(3, 32);
    for (OpSpec op : {op_t(5), op_t(7), op_t(11), op_u(3)}) {
        const BitMatrix& m = alg.op_matrix(op);
        CHECK(alg.valid_cols(op) == alg.D);
        for (int64_t n = 0; n < alg.D; ++n) {
            PolyCoord c(alg.D);
            c.set(n, 1);
            QExpansion want = apply_op(op, alg.pows[static_cast<size_t>(n)]);
            QExpansion got = alg.qexp_bits(mat_vec(m, c.bits));
            CHECK(eq_to_prec(got, want, std::min(got.prec, want.prec)));
        }
    }
    // the matrix cache hands back the same object
    const BitMatrix& m1 = alg.op_matrix(op_t(7));
    const BitMatrix& m2 = alg.op_matrix(op_t(7));
    CHECK(&m1 == &m2);
}

TEST_CASE("spaces: pc_mul is the polynomial product, exactly") {
    PolyAlgebra alg = make_algebra(3, 32);
    PolyCoord a(alg.D);
    a.set(2, 1);
    a.set(5, 1);
    PolyCoord b(alg.D);
    b.set(0, 1);
    b.set(26, 1);
    PolyCoord p = pc_mul(a, b);
    CHECK(p.get(2) == 1);
    CHECK(p.get(5) == 1);
    CHECK(p.get(28) == 1);
    CHECK(p.get(31) == 1);
    QExpansion qa = alg.qexp(a);
    QExpansion qb = alg.qexp(b);
    CHECK(alg.qexp(p) == mul(qa, qb));
    PolyCoord d(alg.D);
    d.set(27, 1);
    CHECK_THROWS_AS(pc_mul(a, d), InvalidIndex);  // 5 + 27 = 32 leaves the window
    PolyCoord e(16);
    e.set(1, 1);
    CHECK_THROWS_AS(pc_mul(a, e), InvalidIndex);  // dim mismatch
}

TEST_CASE("spaces: CSV dump shape") {
    PolyAlgebra alg = make_algebra(3, 16);
    FormSpace K = k_space(alg);
    std::string csv = dump_space_csv(K);
    std::istringstream in(csv);
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line.rfind("row,degree,label", 0) == 0);
    int64_t rows = 0;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == K.dim());
}

TEST_CASE("spaces: intersection dimension basics") {
    PolyAlgebra alg = make_algebra(3, 48);
    FormSpace K = k_space(alg);
    FormSpace vnew = vnew_space(alg);
    CHECK(intersection_dim(K, K) == K.dim());
    CHECK(intersection_dim(K, vnew) == vnew.dim());  // vnew is inside K
}
