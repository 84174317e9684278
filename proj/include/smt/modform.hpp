#ifndef SMT_MODFORM_HPP
#define SMT_MODFORM_HPP

#include <map>
#include <string>
#include <vector>

#include "smt/bigcomplex.hpp"
#include "smt/qseries.hpp"

namespace smt {

// ---- classical q-expansions (integer exponent grid, den = 1) ----

// Euler product prod_{n>=1} (1 - q^{t n}) via the pentagonal number theorem.
// trunc and den refer to the QSeries grid; t counts integer powers of q.
QSeries euler_product(long t, long den, long long trunc);

QSeries theta_qexp(long long trunc);                    // 1 + 2q + 2q^4 + ...
QSeries e4_qexp(long long trunc);                       // 1 + 240 sum sigma_3(n) q^n
QSeries e6_qexp(long long trunc);                       // 1 - 504 sum sigma_5(n) q^n
QSeries delta_qexp(long long trunc);                    // q prod (1-q^n)^24
QSeries j_qexp(long long trunc);                        // E4^3 / Delta
QSeries eta_qexp(long long trunc24);                    // den 24: q^{1/24} prod (1-q^n)

// Expansion of an eta quotient prod_t eta(t tau)^{r_t}; den 24, reduced.
QSeries eta_quotient_qexp(const std::map<long, long>& factors, long long trunc_int);

/*
 * Weakly holomorphic modular function on Gamma_0(M) kept as a closed
 * expression: an exact rational combination of weight-0 eta quotients and
 * powers of j (j only at level 1). The same object yields exact q-expansions
 * at every cusp and arbitrary-precision values at points of H.
 */
struct ModMonomial {
    QQ coeff;
    std::map<long, long> eta;  // scale t -> exponent r_t
    long jpow{0};
};

class ModFunc {
public:
    ModFunc() = default;
    ModFunc(std::vector<ModMonomial> terms, long level, std::string name);

    static ModFunc parse_sexp(const std::string& text, long level);
    // Built-in catalog: "J" (M=1) and Atkin-Lehner invariant hauptmodul-style
    // functions "m2","m3","m5","m6","m7","m10","m13" with vanishing constant
    // terms at every cusp.
    static ModFunc catalog(const std::string& name);

    long level() const { return level_; }
    const std::string& name() const { return name_; }
    const std::vector<ModMonomial>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool al_invariant() const { return al_invariant_; }

    std::string to_sexp() const;

    // q-expansion at the cusp infinity, known modulo q^trunc (integer grid
    // when the expression lands there; generally den | 24).
    QSeries qexp(long long trunc_int) const;

    // Expansion of F|W_D, i.e. of F at the cusp c_{I_D}. Exact for D=1 and
    // D=M (Fricke); for intermediate D it is available when the function is
    // certified Atkin-Lehner invariant, and fails loudly otherwise.
    QSeries cusp_expansion(long D, long long trunc_int) const;

    // min exponent of the cusp-D expansion (a small probe truncation is used)
    long ord_cusp(long D) const;
    // c^+_{F,I_D}(j): coefficient of q^j in the cusp-D expansion
    QQ cplus(long D, long long j, long long trunc_hint) const;

    // Value at tau (Im tau > 0) with certified accuracy ~2^{-prec_bits+16}.
    BigComplex eval(const BigComplex& tau, long prec_bits) const;

    // Numeric Atkin-Lehner invariance certification (used by the catalog).
    void certify_al_invariant();

private:
    std::vector<ModMonomial> terms_;
    long level_{1};
    std::string name_;
    bool al_invariant_{false};

    void validate() const;
};

// Fricke/Atkin-Lehner image as a series; exact path (see cusp_expansion).
QSeries atkin_lehner_qexp(const ModFunc& F, long D, long long trunc_int);
// Exact Fricke image of a pure eta quotient of even weight at level M:
// maps eta(t tau) -> eta((M/t) tau) with the determinant-normalized constant
// (so Delta|W_D = D^{-6} Delta(D tau) at level D).
ModMonomial fricke_image(const ModMonomial& mono, long M);

// ---- arbitrary-precision evaluation ----

// Dedekind eta via reduction to the fundamental domain.
BigComplex eval_eta(const BigComplex& tau, long prec_bits);
// Klein j via theta nulls after SL2(Z) reduction.
BigComplex eval_j(const BigComplex& tau, long prec_bits);

}  // namespace smt

#endif
