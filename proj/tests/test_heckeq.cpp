#include "vendor/doctest.h"

#include "hecke_f2/errors.hpp"
#include "hecke_f2/genforms.hpp"
#include "hecke_f2/heckeq.hpp"
#include "oracle.hpp"

using namespace hecke_f2;

TEST_CASE("heckeq: T_ell agrees with the coefficient-formula oracle") {
    for (int64_t ell : {3, 5, 7, 11, 13}) {
        for (int64_t prec : {64, 127, 300}) {
            QExpansion f = oracle::random_series(40 + ell + prec, prec, 40);
            CHECK(t_ell(f, ell) == oracle::t_ell_naive(f, ell));
        }
        QExpansion d = gen_qexp(1, 1000);
        CHECK(t_ell(d, ell) == oracle::t_ell_naive(d, ell));
    }
}

TEST_CASE("heckeq: U and V agree with the oracle and invert correctly") {
    for (int64_t m : {2, 3, 5}) {
        QExpansion f = oracle::random_series(900 + m, 250, 40);
        QExpansion uf = u_op(f, m);
        QExpansion vf = v_op(f, m);
        CHECK(uf == oracle::u_naive(f, m));
        CHECK(vf == oracle::v_naive(f, m));
        // U_m V_m = identity on the stretched window
        CHECK(u_op(vf, m) == f);
        CHECK(hecke_out_prec(f.prec, m) == (f.prec - 1) / m + 1);
        CHECK(uf.prec == hecke_out_prec(f.prec, m));
        CHECK(vf.prec == m * f.prec);
    }
}

TEST_CASE("heckeq: theta projects onto odd indices") {
    QExpansion f = oracle::random_series(321, 200, 45);
    QExpansion tf = theta(f);
    for (int64_t n = 0; n < tf.prec; ++n)
        CHECK(tf.coeff(n) == (n % 2 == 1 ? f.coeff(n) : 0));
    // the 1 + V_2 U_2 route lands on the same series where both are known
    QExpansion alt = add(f, v_op(u_op(f, 2), 2));
    CHECK(eq_to_prec(tf, alt, std::min(tf.prec, alt.prec)));
    CHECK(theta(tf) == tf);
}

TEST_CASE("heckeq: constants and small identities") {
    QExpansion one = qone(100);
    for (int64_t ell : {3, 5, 7}) CHECK(t_ell(one, ell).is_zero());
    CHECK(u_op(one, 3) == qone(34));
    // V_2 is squaring in characteristic 2
    QExpansion f = oracle::random_series(5, 80, 40);
    CHECK(v_op(f, 2) == substitute_qpow(f, 2));
}

TEST_CASE("heckeq: prime-power and composite index reductions") {
    QExpansion f = oracle::random_series(77, 2000, 35);
    // T_9 = T_3 T_3 + 1 via the characteristic-2 recurrence
    QExpansion t9 = t_prime_power(f, 3, 2);
    QExpansion t3t3 = t_ell(t_ell(f, 3), 3);
    QExpansion alt = add(t3t3, truncate(f, t3t3.prec));
    CHECK(eq_to_prec(t9, alt, std::min(t9.prec, alt.prec)));
    // multiplicativity across coprime factors, both orders
    QExpansion t15 = t_n(f, 15);
    QExpansion t35 = t_ell(t_ell(f, 5), 3);
    QExpansion t53 = t_ell(t_ell(f, 3), 5);
    CHECK(eq_to_prec(t15, t35, std::min(t15.prec, t35.prec)));
    CHECK(eq_to_prec(t35, t53, std::min(t35.prec, t53.prec)));
    CHECK(t_n(f, 1) == f);
}

TEST_CASE("heckeq: operator validation") {
    QExpansion f = oracle::random_series(1, 50, 40);
    CHECK(is_odd_prime(3));
    CHECK(is_odd_prime(13));
    CHECK(!is_odd_prime(2));
    CHECK(!is_odd_prime(9));
    CHECK(!is_odd_prime(1));
    CHECK_THROWS_AS(t_ell(f, 2), InvalidIndex);
    CHECK_THROWS_AS(t_ell(f, 9), InvalidIndex);
    CHECK_THROWS_AS(u_op(f, 0), InvalidIndex);
    CHECK_THROWS_AS(v_op(f, 0), InvalidIndex);
}

TEST_CASE("heckeq: OpSpec dispatch and names") {
    QExpansion f = oracle::random_series(2, 120, 40);
    CHECK(apply_op(op_t(11), f) == t_ell(f, 11));
    CHECK(apply_op(op_u(3), f) == u_op(f, 3));
    CHECK(apply_op(op_v(2), f) == v_op(f, 2));
    CHECK(apply_op(op_theta(), f) == theta(f));
    CHECK(apply_op(op_id(), f) == f);
    CHECK(op_name(op_t(11)) == "T11");
    CHECK(op_name(op_u(3)) == "U3");
    CHECK(op_name(op_v(2)) == "V2");
    CHECK(op_name(op_theta()) == "theta");
    CHECK(op_name(op_id()) == "1");
    CHECK(op_t(7) == op_t(7));
    CHECK(op_t(7) < op_u(7));  // TEll sorts before UOp
}
