#ifndef SMT_TRACES_HPP
#define SMT_TRACES_HPP

#include <map>
#include <string>
#include <vector>

#include "smt/modform.hpp"
#include "smt/qf.hpp"
#include "smt/qseries.hpp"

namespace smt {

/*
 * Scalar trace generating series: negative part -sum_{D|M} sum_{b,n>=1}
 * c^+_{F,I_D}(-bn) b q^{-b^2}, constant 2 sum_{D|M} sum_j c^+_{F,I_D}(-j) D
 * sigma_1(j/D), and CM traces sum_Q F(alpha_Q)/w_Q at q^d. Components carry
 * the coset-resolved data (folded mu = 0..M on the den-4M grid) used by the
 * vector-valued certification at composite level.
 */
struct TraceSeries {
    QSeries series;  // den 1, exponents in Z
    long M{1};
    std::string F_name;
    long long N{0};
    std::map<long, long> modulus_vector;  // D | M -> m_I
    double rounding_report{0.0};          // max CM rounding residual
    std::vector<QSeries> components;      // folded cosets, den 4M
};

struct TwistedTraceSeries {
    QSeries series;
    long M{1};
    std::string F_name;
    long long N{0};
    long Delta{0};
    long r{0};
    int parity{+1};  // sgn(Delta)
    double rounding_report{0.0};
};

// Rounded CM trace sum_{Q in class_reps(d,M)} F(alpha_Q)/w_Q; denominator
// divides 6, rounding residual below 1e-6 or RoundingFailure is thrown.
QQ cm_trace(const ModFunc& F, long d, long M, long prec_bits, double* residual = nullptr);

// The two exact pieces of Theorem-level data.
QSeries principal_part_terms(const ModFunc& F, long M);
QQ constant_term(const ModFunc& F, long M);

TraceSeries assemble(const ModFunc& F, long M, long long N, long prec_bits);

// Genus-character twist: positive coefficients (sum chi(Q) F(alpha_Q)/w)/sqrt(Delta),
// negative slots -|Delta| b^2 with -b sum (Delta|n) c^+(-bn) (Delta > 0),
// constant 0.
QQ twisted_cm_trace(const ModFunc& F, const GenusCharData& chi, long d, long M,
                    long prec_bits, double* residual = nullptr);
TwistedTraceSeries twisted_assemble(const ModFunc& F, const GenusCharData& chi, long M,
                                    long long N, long prec_bits);

// folded coset index of b mod 2M
long fold_coset(long b, long M);

}  // namespace smt

#endif
