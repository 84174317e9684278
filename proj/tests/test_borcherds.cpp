#include <doctest.h>

#include "smt/borcherds.hpp"
#include "smt/errors.hpp"
#include "smt/modform.hpp"
#include "smt/plusspace.hpp"

using namespace smt;

TEST_CASE("lift of 12 theta is Delta") {
    BorcherdsProduct p = lift({twelve_theta(80), 60});
    CHECK(p.weyl_exponent == 1);
    CHECK(p.claimed_weight == 12);
    for (long n = 1; n < 60; ++n) CHECK(p.exponents[n] == 24);
    auto [ok, mm] = certify(p, delta_qexp(60));
    CHECK(ok);
    CHECK(mm == -1);
    // mismatch detection: Delta vs E4 differ at q^1
    auto [bad, at] = certify(p, e4_qexp(60));
    CHECK(!bad);
    CHECK(at == 0);  // E4 starts at 1, Delta at q
}

TEST_CASE("lift of the Borcherds-normalized f_3 is E4") {
    auto hb = half_basis(1, 4, 40);
    const PlusForm* f3 = nullptr;
    for (auto& f : hb)
        if (f.pole_order() == 3) f3 = &f;
    REQUIRE(f3);
    PlusForm in = lift_input(*f3, hb[0]);
    BorcherdsProduct p = lift({in, 30});
    CHECK(p.weyl_exponent == 0);
    CHECK(p.claimed_weight == 4);  // matches the weight of E4
    CHECK(p.exponents[1] == -240);
    CHECK(p.exponents[2] == 26760);
    auto [ok, mm] = certify(p, e4_qexp(30));
    CHECK(ok);
}

TEST_CASE("lift of theta is eta^2") {
    auto hb = half_basis(1, 0, 30);
    BorcherdsProduct p = lift({hb[0], 25});
    CHECK(p.weyl_exponent == make_q(1, 12));
    CHECK(p.claimed_weight == 1);
    QSeries eta2 = pow_int(eta_qexp(24 * 25), 2).reduced_den();
    auto [ok, mm] = certify(p, eta2);
    CHECK(ok);
}

TEST_CASE("lift of zero is one") {
    PlusForm z;
    z.weight = make_q(1, 2);
    z.level = 4;
    z.series = QSeries(1, 40);
    BorcherdsProduct p = lift({z, 30});
    CHECK(p.weyl_exponent == 0);
    CHECK(p.claimed_weight == 0);
    CHECK(agree_to_truncation(p.product_expansion, QSeries::one(1, 30)));
}

TEST_CASE("logarithmic consistency: q d/dq Psi = (q d/dq log Psi) Psi") {
    auto hb = half_basis(1, 4, 40);
    const PlusForm* f3 = nullptr;
    for (auto& f : hb)
        if (f.pole_order() == 3) f3 = &f;
    PlusForm in = lift_input(*f3, hb[0]);
    for (BorcherdsProduct p : {lift({twelve_theta(40), 30}), lift({in, 30})}) {
        QSeries lhs = p.product_expansion.derivative();
        QSeries rhs = p.log_expansion.with_den(p.product_expansion.den()) *
                      p.product_expansion;
        CHECK(agree_to_truncation(lhs, rhs));
    }
}

TEST_CASE("additivity: lift(f1 + f2) = lift(f1) lift(f2)") {
    auto hb = half_basis(1, 4, 60);
    const PlusForm* f3 = nullptr;
    for (auto& f : hb)
        if (f.pole_order() == 3) f3 = &f;
    PlusForm a = twelve_theta(60);
    PlusForm b = lift_input(*f3, hb[0]);
    PlusForm sum;
    sum.weight = a.weight;
    sum.level = 4;
    sum.series = a.series + b.series;
    sum.principal_part = b.principal_part;
    sum.witness = a.witness;
    for (auto& w : b.witness) sum.witness.push_back(w);
    BorcherdsProduct pa = lift({a, 25});
    BorcherdsProduct pb = lift({b, 25});
    BorcherdsProduct ps = lift({sum, 25});
    CHECK(ps.weyl_exponent == pa.weyl_exponent + pb.weyl_exponent);
    CHECK(ps.claimed_weight == pa.claimed_weight + pb.claimed_weight);
    CHECK(agree_to_truncation(ps.product_expansion,
                              pa.product_expansion * pb.product_expansion));
}

TEST_CASE("integrality and availability are enforced") {
    PlusForm f;
    f.weight = make_q(1, 2);
    f.level = 4;
    f.series = QSeries(1, 10);
    f.series.set(0, make_q(1, 2));
    CHECK_THROWS_AS(lift({f, 8}), NonIntegralExponent);
    // no witness and trunc too short for c(n^2)
    PlusForm g;
    g.weight = make_q(1, 2);
    g.level = 4;
    g.series = QSeries(1, 10);
    g.series.set(0, 1);
    g.series.set(1, 2);
    CHECK_THROWS_AS(lift({g, 20}), NonIntegralExponent);
}

TEST_CASE("deep square-coefficient extraction agrees with the stored series") {
    auto hb = half_basis(1, 8, 150);
    for (auto& f : hb) {
        auto sq = witness_square_coefficients(f.witness, 12);
        for (long n = 0; n <= 12; ++n) {
            if ((long long)n * n >= f.series.trunc()) break;
            CHECK(sq[n] == f.series.at((long long)n * n));
        }
    }
}
