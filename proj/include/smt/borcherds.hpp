#ifndef SMT_BORCHERDS_HPP
#define SMT_BORCHERDS_HPP

#include <utility>
#include <vector>

#include "smt/plusspace.hpp"
#include "smt/qseries.hpp"

namespace smt {

/*
 * Scalar M = 1 Borcherds lift: a weight-1/2 plus form f with integer
 * coefficients c(n) lifts to Psi = q^rho prod_{n>=1} (1 - q^n)^{c(n^2)} of
 * weight c(0). The Weyl exponent rho = c(0)/12 - sum_{d>0} c(-d) H(d) is the
 * value forced by the weight/degree bookkeeping on X(1).
 */
struct BorcherdsInput {
    PlusForm f;
    long long trunc;
};

struct BorcherdsProduct {
    QQ weyl_exponent;
    QSeries log_expansion;      // q d/dq log Psi, exact
    QSeries product_expansion;  // q^rho prod (1-q^n)^{e(n)}
    QQ claimed_weight;          // c(0)
    std::vector<ZZ> exponents;  // e(n) = c(n^2), n = 1..trunc-1
};

BorcherdsProduct lift(const BorcherdsInput& input);

// Exact coefficientwise comparison; (match, first mismatching exponent
// numerator on the common grid, -1 when equal).
std::pair<bool, long long> certify(const BorcherdsProduct& prod, const QSeries& reference);

// Square-indexed coefficients c(n^2), n = 0..nmax, of a witness combination,
// extracted through the dense integer pipeline (the series itself would need
// nmax^2 terms).
std::vector<QQ> witness_square_coefficients(const std::vector<PlusForm::WitnessTerm>& witness,
                                            long nmax);

// The catalog input 12*theta.
PlusForm twelve_theta(long long trunc);

}  // namespace smt

#endif
