#ifndef SMT_PLUSSPACE_HPP
#define SMT_PLUSSPACE_HPP

#include <map>
#include <string>
#include <vector>

#include "smt/qseries.hpp"

namespace smt {

/*
 * Weakly holomorphic form in the Kohnen plus space over Q. Support classes:
 * weight 1/2: n ≡ 0,1 mod 4; weight 3/2: n ≡ 0,3 mod 4 (level 4).
 * The construction witness records the form as an exact combination of
 * theta^a F^b / Delta(4tau)^k monomials (F = eta(4t)^8/eta(2t)^4) and
 * re-expands to the stored series.
 */
struct PlusForm {
    QQ weight;   // 1/2 or 3/2
    long level;  // 4M
    QSeries series;
    std::map<long long, QQ> principal_part;

    struct WitnessTerm {
        QQ coeff;
        long theta_pow;
        long f_pow;
        long delta4_pow;  // k in Delta(4 tau)^{-k}
    };
    std::vector<WitnessTerm> witness;

    long long pole_order() const;
};

struct PairingReport {
    std::vector<std::pair<long, QQ>> residuals;  // basis index -> residual
    bool pass{false};
    long long certified_pole_bound{0};
};

/*
 * Weight-1/2 basis f_delta = q^{-delta} + O(q) (delta ≡ 0,3 mod 4, so that
 * the pole slot is plus-admissible), f_0 = theta, with vanishing
 * coefficients at the other non-positive plus slots. Automatic construction
 * is scoped to M = 1.
 */
std::vector<PlusForm> half_basis(long M, long max_pole, long long trunc);

// Weight-3/2 basis g_d = q^{-d} + O(1), d ≡ 0,1 mod 4, d >= 1 (the d = 0
// slot does not exist: plus Eisenstein obstruction). M = 1.
std::vector<PlusForm> three_halves_basis(long M, long max_pole, long long trunc);

// Borcherds-normalized representative f + 12 H(delta) theta of the theta
// family of f: the unique input whose lift carries the classical weight.
PlusForm lift_input(const PlusForm& f, const PlusForm& theta_form);

// Exact re-expansion of a witness (oracle for the stored series).
QSeries witness_qexp(const std::vector<PlusForm::WitnessTerm>& witness, long long trunc);

/*
 * Borcherds pairing criterion, scalar form (M = 1): residual(f) =
 * sum_n a(n) c_f(-n) over the common exponent grid; the candidate g is
 * modular iff every residual vanishes. Throws InsufficientTruncation when a
 * residual cannot be evaluated exactly.
 */
PairingReport verify_modularity(const QSeries& g, const std::vector<PlusForm>& basis);

/*
 * Vector-valued data for M > 1: folded components mu = 0..M of a form for
 * the rank-one Weil representation attached to Z/2M, on the den = 4M grid.
 */
struct VectorPlusForm {
    long M{1};
    QQ weight;
    std::string label;
    std::vector<QSeries> comp;
};

// The family j(tau)^k Theta for k = 0..kmax, Theta the unary theta vector
// (classically weight-1/2 modular with the representation the pairing needs).
std::vector<VectorPlusForm> theta_j_family(long M, long kmax, long long trunc_int);

// Per-coset residual sum_n sum_mu a_mu(n) c_mu(-n), folded cosets weighted 2
// except mu = 0, M.
PairingReport verify_modularity_vector(const std::vector<QSeries>& g_comp,
                                       const std::vector<VectorPlusForm>& basis);

std::string vector_basis_to_text(const std::vector<VectorPlusForm>& basis);
std::vector<VectorPlusForm> vector_basis_from_text(const std::string& text);
std::string scalar_basis_to_text(const std::vector<PlusForm>& basis);
std::vector<PlusForm> scalar_basis_from_text(const std::string& text);

}  // namespace smt

#endif
