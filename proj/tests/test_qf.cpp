#include <doctest.h>

#include <random>

#include "smt/arithfun.hpp"
#include "smt/errors.hpp"
#include "smt/qf.hpp"

using namespace smt;

static std::mt19937_64 rng(0xf0f0a11eULL);

static Mat2 random_gamma0(long M, int len) {
    // word in T = [1,1;0,1] and V = [1,0;M,1]
    std::uniform_int_distribution<int> coin(0, 1), pw(-2, 2);
    Mat2 g;
    for (int i = 0; i < len; ++i) {
        long e = pw(rng);
        if (coin(rng))
            g = g * Mat2{1, e, 0, 1};
        else
            g = g * Mat2{1, 0, e * M, 1};
    }
    return g;
}

TEST_CASE("reduction: examples and transform validity") {
    QuadForm a{1, 1, 1, 1};
    auto [ra, ua] = reduce(a);
    CHECK(ra == a);
    CHECK(ua == Mat2{});
    QuadForm b{2, 2, 3, 1};
    auto [rb, ub] = reduce(b);
    CHECK(rb == b);
    QuadForm c{1, 5, 7, 1};  // disc -3
    auto [rc, uc] = reduce(c);
    CHECK(rc == QuadForm{1, 1, 1, 1});
    CHECK(apply(c, uc) == rc);
    CHECK(uc.det() == 1);
    CHECK_THROWS_AS(reduce(QuadForm{-1, 0, -1, 1}), NotPositiveDefinite);
}

TEST_CASE("orbit soundness under 100 random words") {
    std::vector<QuadForm> forms = {{1, 1, 1, 1}, {1, 0, 1, 1}, {2, 1, 3, 1}, {3, 2, 5, 1}};
    for (auto& Q : forms) {
        QuadForm R = reduce(Q).first;
        for (int i = 0; i < 25; ++i) {
            Mat2 g = random_gamma0(1, 10);
            CHECK(reduce(apply(Q, g)).first == R);
        }
    }
}

TEST_CASE("class representatives at level 1") {
    auto c3 = class_reps(3, 1);
    REQUIRE(c3.size() == 1);
    CHECK(reduce(c3[0].first).first == QuadForm{1, 1, 1, 1});
    CHECK(c3[0].second == 3);
    auto c4 = class_reps(4, 1);
    REQUIRE(c4.size() == 1);
    CHECK(reduce(c4[0].first).first == QuadForm{1, 0, 1, 1});
    CHECK(c4[0].second == 2);
    auto c23 = class_reps(23, 1);
    CHECK(c23.size() == 3);
    for (auto& [Q, w] : c23) CHECK(w == 1);
    CHECK_THROWS_AS(class_reps(5, 1), InvalidDiscriminant);
    CHECK_THROWS_AS(class_reps(-3, 1), InvalidDiscriminant);
}

TEST_CASE("degree identity: sum of 1/w equals the Hurwitz class number, n <= 200") {
    for (long n = 3; n <= 200; ++n) {
        long r = n % 4;
        if (r == 1 || r == 2) continue;
        QQ s = 0;
        for (auto& [Q, w] : class_reps(n, 1)) s += make_q(1, w);
        CHECK(s == hurwitz(n));
    }
}

TEST_CASE("level structure: M=2 classes") {
    auto c = class_reps(4, 2);
    REQUIRE(c.size() == 1);
    CHECK(c[0].first.a % 2 == 0);
    CHECK(c[0].second == 2);  // the disc -4 automorph [-1,-1;2,1] lies in Gamma_0(2)
    auto c12 = class_reps(12, 2);
    CHECK(c12.size() == 2);
    for (auto& [Q, w] : c12) {
        CHECK(Q.a % 2 == 0);
        CHECK(w == 1);  // the order-3 automorph of [2,2,2] has lower-left 1
    }
    CHECK(class_reps(3, 2).empty());  // -3 is not a square mod 8
    CHECK_THROWS_AS(class_reps(6, 2), InvalidDiscriminant);
}

TEST_CASE("heegner points") {
    HeegnerPoint i = heegner_point({1, 0, 1, 1}, 256);
    CHECK(std::abs(i.approx.re.to_double()) < 1e-60);
    CHECK(std::abs(i.approx.im.to_double() - 1.0) < 1e-60);
    HeegnerPoint w = heegner_point({1, 1, 1, 1}, 256);
    CHECK(std::abs(w.approx.re.to_double() + 0.5) < 1e-60);
    CHECK(std::abs(w.approx.im.to_double() - std::sqrt(3.0) / 2) < 1e-15);
    HeegnerPoint p = heegner_point({2, 1, 3, 1}, 256);
    CHECK(std::abs(p.approx.im.to_double() - std::sqrt(23.0) / 4) < 1e-15);
    CHECK(std::abs(p.approx.im.to_double() - 1.1989578808) < 1e-9);

    // residual |a alpha^2 + b alpha + c| < 2^{-prec+8}
    std::uniform_int_distribution<long> db(-6, 6), da(1, 8);
    for (int it = 0; it < 20; ++it) {
        long a = da(rng), b = db(rng);
        long c = (b * b + 4 * a * 3 + 8) / (4 * a) + 1;  // ensure disc < 0
        QuadForm Q{a, b, c, 1};
        if (!Q.positive_definite()) continue;
        for (long prec : {128L, 512L}) {
            HeegnerPoint h = heegner_point(Q, prec);
            BigComplex al = h.approx;
            BigComplex r = al * al;
            r = {r.re * BigFloat::from_long(a, prec), r.im * BigFloat::from_long(a, prec)};
            BigComplex lin{al.re * BigFloat::from_long(b, prec),
                           al.im * BigFloat::from_long(b, prec)};
            r = r + lin;
            r = {r.re + BigFloat::from_long(c, prec), r.im};
            CHECK(abs(r).ilog2() < -prec + 8);
        }
    }
}

TEST_CASE("genus character: examples") {
    GenusCharData chi(5, 1, 1);
    CHECK(genus_char(chi, {1, 1, 1, 1}) == 0);   // 5 does not divide -3
    CHECK(genus_char(chi, {1, 1, 4, 1}) == 1);   // disc -15, n = Q(1,0) = 1
    CHECK(genus_char(chi, {2, 1, 2, 1}) == -1);  // disc -15, n = 2, (5|2) = -1
    CHECK(genus_char(chi, {5, 5, 5, 1}) == 0);   // gcd(a,b,c,5) = 5
    CHECK_THROWS(GenusCharData(1, 1, 1));        // Delta = 1 excluded
    CHECK_THROWS(GenusCharData(5, 2, 1));        // 5 ≢ 4 mod 4
    CHECK_THROWS(GenusCharData(8, 2, 2));        // gcd(8, 2M) > 1
}

TEST_CASE("genus character: well-definedness over represented values") {
    GenusCharData chi(5, 1, 1);
    std::uniform_int_distribution<long> db(-10, 10), da(1, 10);
    int tested = 0;
    for (int it = 0; it < 400 && tested < 50; ++it) {
        long a = da(rng), b = db(rng), c = da(rng);
        QuadForm Q{a, b, c, 1};
        if (!Q.positive_definite()) continue;
        if (Q.disc() % 5 != 0) continue;
        int sym = genus_char(chi, Q);
        if (sym == 0) continue;
        ++tested;
        // every represented value below 100 coprime to 5 gives the same symbol
        for (long x = -10; x <= 10; ++x) {
            for (long y = -10; y <= 10; ++y) {
                if (x == 0 && y == 0) continue;
                ZZ n = Q.eval(x, y);
                if (n > 100 || gcd_zz(n, 5) != 1) continue;
                CHECK(kronecker(ZZ(5), n) == sym);
            }
        }
    }
    CHECK(tested >= 20);
}

TEST_CASE("genus character is Gamma_0(M)-class invariant") {
    struct Case {
        long M, Delta, r;
        QuadForm Q;
    };
    std::vector<Case> cases = {
        {1, 5, 1, {1, 1, 4, 1}},  // disc -15
        {1, 5, 1, {2, 1, 2, 1}},
        {1, 5, 1, {1, 0, 5, 1}},  // disc -20
        {2, 17, 1, {2, 2, 9, 2}},  // disc -68 = 17 * (-4)
    };
    for (auto& tc : cases) {
        GenusCharData chi(tc.Delta, tc.r, tc.M);
        int sym = genus_char(chi, tc.Q);
        CHECK(sym != 0);
        for (int k = 0; k < 20; ++k) {
            Mat2 g = random_gamma0(tc.M, 6);
            QuadForm Qg = apply(tc.Q, g);
            Qg.M = tc.M;
            CHECK(genus_char(chi, Qg) == sym);
        }
    }
}

TEST_CASE("gamma0 equivalence respects the b mod 2M invariant") {
    auto c47 = class_reps(47, 6);
    // classes are pairwise inequivalent and all carry 6 | a
    for (auto& [Q, w] : c47) CHECK(Q.a % 6 == 0);
    for (size_t i = 0; i < c47.size(); ++i)
        for (size_t j = i + 1; j < c47.size(); ++j)
            CHECK(!gamma0_equivalent(c47[i].first, c47[j].first, 6));
    // and each class is equivalent to a random translate of itself
    for (auto& [Q, w] : c47) {
        Mat2 g = random_gamma0(6, 8);
        CHECK(gamma0_equivalent(Q, apply(Q, g), 6).has_value());
    }
}
