#include "smt/traces.hpp"

#include <algorithm>
#include <cmath>

#include "smt/arithfun.hpp"
#include "smt/errors.hpp"
#include "smt/parallel.hpp"

namespace smt {

long fold_coset(long b, long M) {
    long m = ((b % (2 * M)) + 2 * M) % (2 * M);
    return std::min(m, 2 * M - m);
}

namespace {

// round x to z/den with den | den_target; returns residual |x - z/den|
QQ round_value(const BigFloat& x, long den_target, double& residual) {
    BigFloat scaled = x * BigFloat::from_long(den_target, x.prec());
    auto [z, resid] = scaled.round_to_zz();
    double r = resid.to_double() / (double)den_target;
    residual = std::max(residual, r);
    return make_q(z, ZZ(den_target));
}

struct CmData {
    QQ value;
    std::map<long, QQ> by_coset;  // folded coset -> component value
    double residual{0.0};
};

CmData cm_trace_full(const ModFunc& F, long d, long M, long prec_bits, bool with_cosets) {
    CmData out;
    out.value = 0;
    long r4 = d % 4;
    if (r4 == 1 || r4 == 2) return out;  // -d not a discriminant
    auto reps = class_reps(d, M);
    if (reps.empty()) {
        out.value = 0;
        return out;
    }
    long wp = prec_bits;
    // per-coset complex accumulators at working precision; the error budget
    // sums the certified relative accuracy of each evaluation, which catches
    // precision starvation that exact-integer rounding cannot see
    std::map<long, BigComplex> acc;
    BigComplex total(wp + 128);
    double budget = 0.0;
    for (auto& [Q, w] : reps) {
        HeegnerPoint pt = heegner_point(Q, wp + 128);
        BigComplex v = F.eval(pt.approx, wp);
        budget += std::ldexp(1.0, (int)std::max<long>(abs(v).ilog2() - (wp - 16), -1060));
        BigFloat wf = BigFloat::from_long(w, wp + 128);
        v = {v.re / wf, v.im / wf};
        total = total + v;
        if (with_cosets) {
            long mu = fold_coset((long)Q.b.get_si(), M);
            bool self = (mu == 0 || mu == M);
            BigFloat half = BigFloat::from_long(self ? 1 : 2, wp + 128);
            BigComplex vv{v.re / half, v.im / half};
            auto it = acc.find(mu);
            if (it == acc.end())
                acc.emplace(mu, vv);
            else
                it->second = it->second + vv;
        }
    }
    out.residual = std::max(out.residual, budget);
    out.residual = std::max(out.residual, std::abs(total.im.to_double()));
    out.value = round_value(total.re, 6, out.residual);
    if (with_cosets) {
        QQ check = 0;
        for (auto& [mu, v] : acc) {
            out.residual = std::max(out.residual, std::abs(v.im.to_double()));
            QQ r = round_value(v.re, 12, out.residual);
            out.by_coset[mu] = r;
            long mult = (mu == 0 || mu == M) ? 1 : 2;
            check += mult * r;
        }
        if (check != out.value)
            throw RoundingFailure("cm_trace: coset components do not sum to the trace at d=" +
                                  std::to_string(d));
    }
    if (out.residual >= 1e-6)
        throw RoundingFailure("cm_trace: residual " + std::to_string(out.residual) + " at d=" +
                              std::to_string(d));
    return out;
}

void check_hypotheses(const ModFunc& F, long M) {
    if (F.is_zero()) throw HypothesisViolation("assemble: F = 0 is rejected");
    if (F.level() != M)
        throw HypothesisViolation("assemble: F has level " + std::to_string(F.level()) +
                                  ", expected " + std::to_string(M));
    for (long D : divisors(M)) {
        if (F.cplus(D, 0, 4) != 0)
            throw HypothesisViolation("assemble: constant term of F at cusp D=" +
                                      std::to_string(D) + " does not vanish");
    }
}

}  // namespace

QQ cm_trace(const ModFunc& F, long d, long M, long prec_bits, double* residual) {
    CmData r = cm_trace_full(F, d, M, prec_bits, false);
    if (residual) *residual = r.residual;
    return r.value;
}

QSeries principal_part_terms(const ModFunc& F, long M) {
    QSeries out(1, 1);
    for (long D : divisors(M)) {
        long p = -F.ord_cusp(D);
        if (p <= 0) continue;
        QSeries exp_d = F.cusp_expansion(D, 2);
        for (long b = 1; b <= p; ++b) {
            for (long n = 1; b * n <= p; ++n) {
                QQ c = exp_d.at(-(long long)(b * n) * exp_d.den());
                if (c != 0) out.add_to(-(long long)b * b, -QQ(b) * c);
            }
        }
    }
    return out;
}

QQ constant_term(const ModFunc& F, long M) {
    QQ out = 0;
    for (long D : divisors(M)) {
        long p = -F.ord_cusp(D);
        if (p <= 0) continue;
        QSeries exp_d = F.cusp_expansion(D, 2);
        for (long j = 1; j <= p; ++j) {
            QQ c = exp_d.at(-(long long)j * exp_d.den());
            if (c != 0) out += 2 * c * QQ(D) * QQ(sigma1_ratio(j, D));
        }
    }
    return out;
}

TraceSeries assemble(const ModFunc& F, long M, long long N, long prec_bits) {
    if (N < 1) throw ConfigError("assemble: N must be >= 1");
    check_hypotheses(F, M);

    TraceSeries ts;
    ts.M = M;
    ts.F_name = F.name();
    ts.N = N;
    ts.series = QSeries(1, N + 1);
    long den = 4 * M;
    for (long mu = 0; mu <= M; ++mu) ts.components.emplace_back(den, N + 1);

    bool cosets = F.al_invariant();

    // negative part and constant term (exact)
    for (long D : divisors(M)) {
        long p = -F.ord_cusp(D);
        ts.modulus_vector[D] = std::max(1L, p + 1);
        if (p <= 0) continue;
        QSeries exp_d = F.cusp_expansion(D, 2);
        long uD = atkin_lehner_unit(D, M);
        for (long b = 1; b <= p; ++b) {
            QQ coeff = 0;
            for (long n = 1; b * n <= p; ++n)
                coeff -= QQ(b) * exp_d.at(-(long long)(b * n) * exp_d.den());
            if (coeff == 0) continue;
            ts.series.add_to(-(long long)b * b, coeff);
            long mu = fold_coset(uD * b, M);
            bool self = (mu == 0 || mu == M);
            ts.components[mu].add_to(-(long long)b * b, self ? coeff : coeff / 2);
        }
    }
    QQ ct = constant_term(F, M);
    ts.series.add_to(0, ct);
    ts.components[0].add_to(0, ct);

    // CM traces, parallel over d, deterministic by slot
    std::vector<CmData> results((size_t)N + 1);
    std::vector<long> ds;
    for (long d = 1; d <= N; ++d) {
        long rm = ((-d) % (4 * M) + 4 * M) % (4 * M);
        bool adm = false;
        for (long b = 0; b < 2 * M && !adm; ++b) adm = ((b * b) % (4 * M) == rm);
        if (adm) ds.push_back(d);
    }
    parallel_for_indexed(
        (long)ds.size(),
        [&](long i) { results[ds[i]] = cm_trace_full(F, ds[i], M, prec_bits, cosets); },
        [] { mpfr_free_cache(); });
    for (long d : ds) {
        CmData& r = results[d];
        ts.rounding_report = std::max(ts.rounding_report, r.residual);
        if (r.value != 0) ts.series.add_to(d, r.value);
        for (auto& [mu, v] : r.by_coset) ts.components[mu].add_to(d, v);
    }
    // assembled-series invariant is stricter than the per-trace threshold
    if (ts.rounding_report >= 1e-10)
        throw RoundingFailure("assemble: rounding report " +
                              std::to_string(ts.rounding_report) + " exceeds 1e-10");

    // invariants: negative support only at -b^2; components sum to the scalar
    for (auto& [e, c] : ts.series.coeffs()) {
        if (e < 0 && !is_square_zz(ZZ((long)(-e))))
            throw Error("assemble: negative exponent not of the form -b^2");
    }
    if (cosets) {
        QSeries sum(den, N + 1);
        for (long mu = 0; mu <= M; ++mu) {
            long mult = (mu == 0 || mu == M) ? 1 : 2;
            sum = sum + QQ(mult) * ts.components[mu];
        }
        // component exponent numerators are the scalar integers (grid 1/4M)
        QSeries scal_num(den, N + 1);
        for (auto& [e, c] : ts.series.coeffs()) scal_num.set(e, c);
        if (!agree_to_truncation(sum, scal_num))
            throw Error("assemble: coset components do not sum to the scalar series");
    }
    return ts;
}

QQ twisted_cm_trace(const ModFunc& F, const GenusCharData& chi, long d, long M,
                    long prec_bits, double* residual) {
    long Dl = chi.Delta;
    // chi_Delta(-lambda) = sgn(Delta) chi_Delta(lambda): the chi_1
    // scalarization folds both signs, so every coefficient vanishes for
    // negative Delta (the parity remark of the twisted modularity theorem)
    if (Dl < 0) return 0;
    long ad = std::labs(Dl);
    long r4 = (d * ad) % 4;
    if (r4 == 1 || r4 == 2) return 0;  // -d|Delta| not a discriminant
    auto reps = class_reps(d * ad, M);
    double res = 0.0;
    QQ out = 0;
    if (!reps.empty()) {
        long wp = prec_bits;
        BigComplex total(wp + 128);
        bool any = false;
        double budget = 0.0;
        for (auto& [Q, w] : reps) {
            int ch = genus_char(chi, Q);
            if (ch == 0) continue;
            any = true;
            HeegnerPoint pt = heegner_point(Q, wp + 128);
            BigComplex v = F.eval(pt.approx, wp);
            budget += std::ldexp(1.0, (int)std::max<long>(abs(v).ilog2() - (wp - 16), -1060));
            BigFloat wf = BigFloat::from_long(w * ch, wp + 128);
            total = total + BigComplex{v.re / wf, v.im / wf};
        }
        if (any) {
            // the Gauss sum puts sqrt(Delta) into the negative-index classes;
            // dividing the positive traces by it keeps the series rational
            BigComplex sq = sqrt(BigComplex::from_qq(QQ(Dl), QQ(0), wp + 128));
            BigComplex t = total / sq;
            res = std::max(res, budget);
            res = std::max(res, std::abs(t.im.to_double()));
            out = round_value(t.re, 6, res);
        }
    }
    if (res >= 1e-6)
        throw RoundingFailure("twisted_cm_trace: residual " + std::to_string(res));
    if (residual) *residual = std::max(*residual, res);
    return out;
}

TwistedTraceSeries twisted_assemble(const ModFunc& F, const GenusCharData& chi, long M,
                                    long long N, long prec_bits) {
    if (N < 1) throw ConfigError("twisted_assemble: N must be >= 1");
    if (chi.M != M) throw ConfigError("twisted_assemble: character level mismatch");
    check_hypotheses(F, M);

    TwistedTraceSeries ts;
    ts.M = M;
    ts.F_name = F.name();
    ts.N = N;
    ts.Delta = chi.Delta;
    ts.r = chi.r;
    ts.parity = chi.Delta > 0 ? +1 : -1;
    ts.series = QSeries(1, N + 1);

    long ad = std::labs(chi.Delta);
    if (chi.Delta > 0) {
        // negative slots -|Delta| b^2 from the h_{Delta,lambda} residues
        for (long D : divisors(M)) {
            long p = -F.ord_cusp(D);
            if (p <= 0) continue;
            QSeries exp_d = F.cusp_expansion(D, 2);
            for (long b = 1; b <= p; ++b) {
                QQ coeff = 0;
                for (long n = 1; b * n <= p; ++n) {
                    QQ c = exp_d.at(-(long long)(b * n) * exp_d.den());
                    if (c != 0) coeff -= QQ(kronecker(chi.Delta, n) * b) * c;
                }
                if (coeff != 0) ts.series.add_to(-(long long)ad * b * b, coeff);
            }
        }
    }
    // the twisted d = 0 class is zero: no constant term

    std::vector<QQ> vals((size_t)N + 1, QQ(0));
    std::vector<double> resid((size_t)N + 1, 0.0);
    std::vector<long> ds;
    for (long d = 1; d <= N; ++d) ds.push_back(d);
    parallel_for_indexed(
        (long)ds.size(),
        [&](long i) {
            long d = ds[i];
            double r = 0.0;
            vals[d] = twisted_cm_trace(F, chi, d, M, prec_bits, &r);
            resid[d] = r;
        },
        [] { mpfr_free_cache(); });
    for (long d = 1; d <= N; ++d) {
        ts.rounding_report = std::max(ts.rounding_report, resid[d]);
        if (vals[d] != 0) ts.series.add_to(d, vals[d]);
    }
    if (ts.rounding_report >= 1e-10)
        throw RoundingFailure("twisted_assemble: rounding report " +
                              std::to_string(ts.rounding_report) + " exceeds 1e-10");

    // support invariant: negative exponents only at -|Delta| b^2
    for (auto& [e, c] : ts.series.coeffs()) {
        if (e < 0) {
            if (e % ad) throw Error("twisted_assemble: negative exponent not -|D|b^2");
            if (!is_square_zz(ZZ((long)(-e / ad))))
                throw Error("twisted_assemble: negative exponent not -|D|b^2");
        }
    }
    return ts;
}

}  // namespace smt
