#include <doctest.h>

#include "smt/arithfun.hpp"
#include "smt/errors.hpp"
#include "smt/plusspace.hpp"
#include "smt/traces.hpp"

using namespace smt;

static const ModFunc& Jfun() {
    static ModFunc J = ModFunc::catalog("J");
    return J;
}

// J^2 - 393768: principal part q^{-2}, vanishing constant term
static const ModFunc& J2fun() {
    static ModFunc F = ModFunc::parse_sexp(
        "(+ (pow (j) 2) (* -1488 (j)) 159768)", 1);
    return F;
}

TEST_CASE("CM traces of J") {
    CHECK(cm_trace(Jfun(), 3, 1, 256) == -248);   // j(omega) = 0: (0-744)/3
    CHECK(cm_trace(Jfun(), 4, 1, 256) == 492);    // (1728-744)/2
    CHECK(cm_trace(Jfun(), 7, 1, 256) == -4119);  // one class [1,1,2]
    CHECK(cm_trace(Jfun(), 8, 1, 256) == 7256);
    CHECK(cm_trace(Jfun(), 5, 1, 256) == 0);  // -5 not a discriminant
    double resid = 1.0;
    cm_trace(Jfun(), 100, 1, 512, &resid);
    CHECK(resid < 1e-10);
}

TEST_CASE("principal part terms") {
    QSeries pJ = principal_part_terms(Jfun(), 1);
    CHECK(pJ.at(-1) == -1);
    CHECK(pJ.coeffs().size() == 1);
    // F with c+(-2) = 1 only: (b,n) = (1,2) gives -q^{-1}, (2,1) gives -2q^{-4}
    QSeries p2 = principal_part_terms(J2fun(), 1);
    CHECK(p2.at(-1) == -1);
    CHECK(p2.at(-4) == -2);
    CHECK(p2.coeffs().size() == 2);
}

TEST_CASE("constant term formula") {
    CHECK(constant_term(Jfun(), 1) == 2);
    CHECK(constant_term(J2fun(), 1) == 6);  // 2 sigma_1(2)
    // M = 2 with distinct cusp data: c+_{I_1}(-1) = 1 and c+_{I_2}(-2) = 1
    // built from the level-2 hauptmodul t and its Fricke partner u = 4096/t:
    // F = t + u^2/4096^2-normalized has I_2-expansion t^2-shaped
    ModFunc F = ModFunc::parse_sexp(
        "(+ (pow (* (eta 1) (pow (eta 2) -1)) 24)"
        "   (* 16777216 (pow (* (eta 2) (pow (eta 1) -1)) 48)))",
        2);
    QSeries at1 = F.cusp_expansion(1, 2);
    QSeries at2 = F.cusp_expansion(2, 2);
    CHECK(at1.at(-1 * at1.den()) == 1);
    CHECK(at2.at(-2 * at2.den()) == 1);
    CHECK(constant_term(F, 2) == 6);  // 2(sigma_1(1) + 2 sigma_1(1)), sigma_1(1/2) = 0
}

TEST_CASE("assemble: the Zagier series to q^8") {
    TraceSeries ts = assemble(Jfun(), 1, 8, 256);
    QSeries expect(1, 9);
    expect.set(-1, -1);
    expect.set(0, 2);
    expect.set(3, -248);
    expect.set(4, 492);
    expect.set(7, -4119);
    expect.set(8, 7256);
    CHECK(agree_to_truncation(ts.series, expect));
    CHECK(ts.modulus_vector.at(1) == 2);  // m_I = max(1, -ord+1) with ord = -1
    CHECK(ts.rounding_report < 1e-10);
    // plus support
    for (auto& [e, c] : ts.series.coeffs()) {
        long r = (long)(((e % 4) + 4) % 4);
        CHECK((r == 0 || r == 3));
    }
}

TEST_CASE("assemble: hypothesis enforcement") {
    // all-zero F rejected
    ModFunc zero = ModFunc::parse_sexp("(+ (j) (* -1 (j)))", 1);
    CHECK(zero.is_zero());
    CHECK_THROWS_AS(assemble(zero, 1, 4, 256), HypothesisViolation);
    // nonvanishing constant term rejected (j has c+(0) = 744)
    ModFunc j_raw = ModFunc::parse_sexp("(j)", 1);
    CHECK_THROWS_AS(assemble(j_raw, 1, 4, 256), HypothesisViolation);
    // level mismatch rejected
    CHECK_THROWS_AS(assemble(Jfun(), 2, 4, 256), HypothesisViolation);
    CHECK_THROWS_AS(assemble(Jfun(), 1, 0, 256), ConfigError);
}

TEST_CASE("rounding failure at starved precision") {
    // d = 9999 needs far more than 128 working bits
    CHECK_THROWS_AS(cm_trace(Jfun(), 9999, 1, 128), RoundingFailure);
}

TEST_CASE("M=2 trace series certifies against the theta family") {
    ModFunc F = ModFunc::catalog("m2");
    TraceSeries ts = assemble(F, 2, 24, 320);
    CHECK(ts.series.at(-1) == -2);  // two cusps, both with c+(-1) = 1
    CHECK(ts.series.at(0) == 2);
    auto fam = theta_j_family(2, 3, 6);
    PairingReport rep = verify_modularity_vector(ts.components, fam);
    CHECK(rep.pass);
    for (auto& [i, r] : rep.residuals) CHECK(r == 0);
    // component sum reproduces the scalar series (fold weights 1,2,1)
    QSeries sum = ts.components[0] + QQ(2) * ts.components[1] + ts.components[2];
    for (auto& [e, c] : ts.series.coeffs()) CHECK(sum.at(e) == c);
}

TEST_CASE("twisted traces, Delta = 5") {
    GenusCharData chi(5, 1, 1);
    CHECK(twisted_cm_trace(Jfun(), chi, 4, 1, 320) == 565760);
    CHECK(twisted_cm_trace(Jfun(), chi, 3, 1, 320) == -85995);
    CHECK(twisted_cm_trace(Jfun(), chi, 1, 1, 320) == 0);  // -5 not a discriminant
    TwistedTraceSeries tw = twisted_assemble(Jfun(), chi, 1, 12, 320);
    CHECK(tw.series.at(-5) == -1);  // -(5|1) c+(-1) at the b=1 slot
    CHECK(tw.series.at(0) == 0);    // the twisted d=0 class is zero
    CHECK(tw.parity == 1);
    // cross-construction oracle: the twisted series equals -g_5
    auto tb = three_halves_basis(1, 5, 14);
    const PlusForm* g5 = nullptr;
    for (auto& g : tb)
        if (g.pole_order() == 5) g5 = &g;
    REQUIRE(g5);
    CHECK(agree_to_truncation(tw.series, -g5->series));
    // and it passes the checker
    auto hb = half_basis(1, 12, 40);
    CHECK(verify_modularity(tw.series, hb).pass);
}

TEST_CASE("twisted series vanishes identically for Delta < 0 (parity)") {
    // chi_Delta(-lambda) = sgn(Delta) chi_Delta(lambda), so the chi_1
    // scalarization kills every coefficient when Delta < 0
    GenusCharData chi(-7, 1, 1);
    TwistedTraceSeries tw = twisted_assemble(Jfun(), chi, 1, 6, 320);
    CHECK(tw.series.is_zero());
    CHECK(tw.parity == -1);
}

TEST_CASE("residue identity: F dh/h against the closed formula") {
    // h = 1 - q + O(q^2) as the normalized eta quotient eta(tau)/eta(2tau)
    QSeries h1 = euler_product(1, 1, 40) * pow_int(euler_product(2, 1, 40), -1);
    CHECK(h1.at(0) == 1);
    CHECK(h1.at(1) == -1);
    CHECK(h1.at(2) == 0);
    auto residue = [](const QSeries& Fexp, const QSeries& h) {
        QSeries qdlog = h.derivative() * inverse(h);
        return (Fexp * qdlog).at(0);
    };
    QSeries Jexp = Jfun().qexp(40);
    // -res(F dh/h) = n_I sum_j c+(-n_I j), trivial phase; here n_I = 1
    CHECK(-residue(Jexp, h1) == 1);
    // h = 1 - q^2 + O(q^4): eta(2tau)/eta(4tau); F = J^2 - const with c+(-2)=1
    QSeries h2 = euler_product(2, 1, 40) * pow_int(euler_product(4, 1, 40), -1);
    CHECK(h2.at(2) == -1);
    CHECK(h2.at(3) == 0);
    QSeries J2exp = J2fun().qexp(40);
    CHECK(-residue(J2exp, h2) == 2);  // n_I = 2, c+(-2) = 1, c+(-4) = 0
    // and J against the n_I = 2 function: no c+(-2j) terms at all
    CHECK(-residue(Jexp, h2) == 0);
}
