#include "smt/borcherds.hpp"

#include <algorithm>
#include <map>

#include "smt/arithfun.hpp"
#include "smt/errors.hpp"
#include "smt/modform.hpp"
#include "smt/zseries.hpp"

namespace smt {

PlusForm twelve_theta(long long trunc) {
    PlusForm f;
    f.weight = make_q(1, 2);
    f.level = 4;
    f.series = QQ(12) * theta_qexp(trunc);
    f.witness.push_back({QQ(12), 1, 0, 0});
    return f;
}

std::vector<QQ> witness_square_coefficients(const std::vector<PlusForm::WitnessTerm>& witness,
                                            long nmax) {
    // group terms by the Delta(4tau) power
    std::map<long, std::vector<PlusForm::WitnessTerm>> groups;
    for (auto& w : witness) groups[w.delta4_pow].push_back(w);
    long kmax = 0;
    for (auto& [k, terms] : groups) kmax = std::max(kmax, k);
    // the q^{-4k} shift of Delta(4tau)^{-k} pushes the convolution index up
    long long L = (long long)nmax * nmax + 4 * (long long)kmax + 1;

    std::vector<QQ> out((size_t)nmax + 1, QQ(0));
    for (auto& [k, terms] : groups) {
        // Horner shape: coefficients of theta^{A-4b} F^b with A fixed
        long A = -1;
        long bmax = 0;
        for (auto& w : terms) {
            long a = w.theta_pow + 4 * w.f_pow;
            if (A < 0) A = a;
            if (a != A) throw Error("witness_square_coefficients: mixed pool shape");
            bmax = std::max(bmax, w.f_pow);
        }
        ZZ ell = 1;
        for (auto& w : terms) {
            ZZ d = w.coeff.get_den();
            ell = ell / gcd_zz(ell, d) * d;
        }
        std::vector<ZZ> coeff_by_b((size_t)bmax + 1, ZZ(0));
        for (auto& w : terms) {
            QQ c = w.coeff * QQ(ell);
            if (c.get_den() != 1) throw Error("witness_square_coefficients: lcm failure");
            coeff_by_b[w.f_pow] += c.get_num();
        }

        ZVec X(L, ZZ(0));
        X[0] = coeff_by_b[bmax];
        ZVec thpow(L, ZZ(0));
        thpow[0] = 1;
        for (long b = bmax - 1; b >= 0; --b) {
            // X = X*F + c_b theta^{4(bmax-b)},  F = q E(q^4)^8 E(q^2)^{-4}
            for (int i = 0; i < 8; ++i) euler_pass(X, 4, +1);
            for (int i = 0; i < 4; ++i) euler_pass(X, 2, -1);
            shift_up(X, 1);
            for (int i = 0; i < 4; ++i) theta_pass(thpow, +1);
            if (coeff_by_b[b] != 0) axpy(X, coeff_by_b[b], thpow);
        }
        for (long i = 0; i < A - 4 * bmax; ++i) theta_pass(X, +1);

        if (k == 0) {
            for (long n = 0; n <= nmax; ++n)
                out[n] += QQ(X[(size_t)((long long)n * n)]) / QQ(ell);
        } else {
            ZVec Xi(L, ZZ(0));
            Xi[0] = 1;
            for (long i = 0; i < 24 * k; ++i) euler_pass(Xi, 4, -1);
            for (long n = 0; n <= nmax; ++n) {
                long long idx = (long long)n * n + 4 * (long long)k;
                out[n] += QQ(convolve_at(X, Xi, idx)) / QQ(ell);
            }
        }
    }
    return out;
}

BorcherdsProduct lift(const BorcherdsInput& input) {
    const PlusForm& f = input.f;
    long long T = input.trunc;
    if (T < 2) throw Error("lift: trunc must be at least 2");
    if (f.weight != make_q(1, 2)) throw Error("lift: input must have weight 1/2");
    for (auto& [e, c] : f.series.coeffs()) {
        if (!is_integer(c))
            throw NonIntegralExponent("lift: input coefficient at q^" + std::to_string(e) +
                                      " is not integral");
    }

    BorcherdsProduct out;
    if (f.series.is_zero() && f.witness.empty()) {
        out.weyl_exponent = 0;
        out.claimed_weight = 0;
        out.exponents.resize((size_t)T, ZZ(0));
        out.product_expansion = QSeries::one(1, T);
        out.log_expansion = QSeries(1, T);
        return out;
    }
    out.claimed_weight = f.series.at(0);

    // Weyl exponent from the weight/degree bookkeeping
    QQ rho = out.claimed_weight / 12;
    for (auto& [e, c] : f.principal_part) rho -= c * hurwitz((long)(-e));
    out.weyl_exponent = rho;

    // exponents e(n) = c(n^2)
    out.exponents.resize((size_t)T, ZZ(0));
    long nmax = (long)T - 1;
    if (f.series.trunc() > (long long)nmax * nmax) {
        for (long n = 1; n <= nmax; ++n) {
            QQ c = f.series.at((long long)n * n);
            if (!is_integer(c)) throw NonIntegralExponent("lift: c(n^2) not integral");
            out.exponents[n] = c.get_num();
        }
    } else if (!f.witness.empty()) {
        auto sq = witness_square_coefficients(f.witness, nmax);
        // cross-check the overlap with the stored series
        for (long n = 1; n <= nmax; ++n) {
            if ((long long)n * n < f.series.trunc() &&
                f.series.at((long long)n * n) != sq[n])
                throw Error("lift: deep expansion disagrees with the stored series");
            if (!is_integer(sq[n])) throw NonIntegralExponent("lift: c(n^2) not integral");
            out.exponents[n] = sq[n].get_num();
        }
    } else {
        throw NonIntegralExponent("lift: c(n^2) unavailable below the truncation and no witness");
    }

    // product expansion q^rho prod (1-q^n)^{e(n)}
    QSeries P = QSeries::one(1, T);
    for (long n = 1; n < (long)T; ++n) {
        if (out.exponents[n] == 0) continue;
        QSeries base(1, T);
        base.set(0, 1);
        base.set(n, -1);
        P = P * pow_int(base, out.exponents[n]);
    }
    // with_den multiplies exponent numerators by dr, after which the q^rho
    // shift is by the numerator of rho on that grid
    long dr = (long)rho.get_den().get_si();
    long long nr = (long long)rho.get_num().get_si();
    out.product_expansion = P.with_den(dr).shifted(nr).reduced_den();

    // q d/dq log Psi = rho - sum_m (sum_{n|m} n e(n)) q^m
    QSeries lg(1, T);
    lg.set(0, rho);
    for (long m = 1; m < (long)T; ++m) {
        ZZ s = 0;
        for (long n = 1; (long long)n * n <= m; ++n) {
            if (m % n) continue;
            s += ZZ(n) * out.exponents[n];
            long n2 = m / n;
            if (n2 != n) s += ZZ(n2) * out.exponents[n2];
        }
        if (s != 0) lg.set(m, QQ(-s));
    }
    out.log_expansion = lg;
    return out;
}

std::pair<bool, long long> certify(const BorcherdsProduct& prod, const QSeries& reference) {
    long long mm = first_mismatch(prod.product_expansion, reference);
    return {mm < 0, mm};
}

}  // namespace smt
