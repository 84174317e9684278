#include "smt/modform.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "smt/arithfun.hpp"
#include "smt/errors.hpp"

namespace smt {

// ---------------------------------------------------------------- series

QSeries euler_product(long t, long den, long long trunc) {
    QSeries s(den, trunc);
    // sum_{k in Z} (-1)^k q^{t k(3k-1)/2}
    s.set(0, 1);
    for (long long k = 1;; ++k) {
        long long e1 = t * (long long)den * (k * (3 * k - 1) / 2);
        long long e2 = t * (long long)den * (k * (3 * k + 1) / 2);
        if (e1 >= trunc && e2 >= trunc) break;
        QQ sign = (k % 2) ? QQ(-1) : QQ(1);
        if (e1 < trunc) s.add_to(e1, sign);
        if (e2 < trunc) s.add_to(e2, sign);
    }
    return s;
}

QSeries theta_qexp(long long trunc) {
    QSeries s(1, trunc);
    s.set(0, 1);
    for (long long n = 1; n * n < trunc; ++n) s.set(n * n, 2);
    return s;
}

QSeries e4_qexp(long long trunc) {
    QSeries s(1, trunc);
    s.set(0, 1);
    for (long long n = 1; n < trunc; ++n) s.set(n, 240 * QQ(sigma_k((long)n, 3)));
    return s;
}

QSeries e6_qexp(long long trunc) {
    QSeries s(1, trunc);
    s.set(0, 1);
    for (long long n = 1; n < trunc; ++n) s.set(n, -504 * QQ(sigma_k((long)n, 5)));
    return s;
}

QSeries delta_qexp(long long trunc) {
    return pow_int(euler_product(1, 1, trunc - 1), 24).shifted(1);
}

QSeries j_qexp(long long trunc) {
    // E4^3/Delta: both sides known mod q^{trunc+1} so the quotient reaches q^{trunc}
    QSeries e4 = e4_qexp(trunc + 2);
    QSeries dl = delta_qexp(trunc + 2);
    return pow_int(e4, 3) * inverse(dl);
}

QSeries eta_qexp(long long trunc24) {
    QSeries e = euler_product(1, 24, trunc24 - 1);
    return e.shifted(1);
}

QSeries eta_quotient_qexp(const std::map<long, long>& factors, long long trunc_int) {
    long long shift = 0;  // total q-power numerator on the den-24 grid
    for (auto& [t, r] : factors) shift += (long long)t * r;
    long long trunc24 = trunc_int * 24;
    QSeries s = QSeries::one(24, trunc24 - shift);
    for (auto& [t, r] : factors) {
        QSeries e = euler_product(t, 24, s.trunc());
        s = s * pow_int(e, r);
    }
    s = s.shifted(shift);
    if (s.trunc() > trunc24) s = s.truncated(trunc24);
    return s.reduced_den();
}

// ------------------------------------------------------------- ModFunc

static void merge_terms(std::vector<ModMonomial>& ts) {
    std::sort(ts.begin(), ts.end(), [](const ModMonomial& x, const ModMonomial& y) {
        if (x.jpow != y.jpow) return x.jpow < y.jpow;
        return x.eta < y.eta;
    });
    std::vector<ModMonomial> out;
    for (auto& m : ts) {
        if (m.coeff == 0) continue;
        if (!out.empty() && out.back().jpow == m.jpow && out.back().eta == m.eta) {
            out.back().coeff += m.coeff;
            if (out.back().coeff == 0) out.pop_back();
        } else {
            out.push_back(m);
        }
    }
    for (auto& m : out) {
        for (auto it = m.eta.begin(); it != m.eta.end();) {
            if (it->second == 0)
                it = m.eta.erase(it);
            else
                ++it;
        }
    }
    ts = std::move(out);
}

ModFunc::ModFunc(std::vector<ModMonomial> terms, long level, std::string name)
    : terms_(std::move(terms)), level_(level), name_(std::move(name)) {
    merge_terms(terms_);
    validate();
}

void ModFunc::validate() const {
    if (level_ < 1 || !is_squarefree(level_))
        throw Error("ModFunc: level must be squarefree positive");
    for (auto& m : terms_) {
        long wt2 = 0;
        for (auto& [t, r] : m.eta) {
            if (t < 1 || level_ % t) throw UnsupportedExpression("eta scale must divide the level");
            wt2 += r;
        }
        if (wt2 != 0) throw UnsupportedExpression("modular functions must have weight 0");
        if (m.jpow != 0 && level_ != 1)
            throw UnsupportedExpression("j is only available at level 1");
        if (m.jpow < 0) throw UnsupportedExpression("negative powers of j are not supported");
    }
}

QSeries ModFunc::qexp(long long trunc_int) const {
    QSeries acc(1, trunc_int);
    for (auto& m : terms_) {
        // per-term pole budget keeps the product truncation at trunc_int
        long long shift = 0;
        for (auto& [t, r] : m.eta) shift += (long long)t * r;
        long long budget = m.jpow + (shift < 0 ? (-shift + 23) / 24 : 0) + 2;
        long long T = trunc_int + budget;
        QSeries part = QSeries::one(1, T);
        if (!m.eta.empty()) part = eta_quotient_qexp(m.eta, T);
        if (m.jpow > 0) part = part * pow_int(j_qexp(T + m.jpow + 1), m.jpow);
        part = m.coeff * part;
        long long want = trunc_int * part.den();
        if (part.trunc() < want) throw Error("ModFunc::qexp: internal truncation shortfall");
        if (part.trunc() > want) part = part.truncated(want);
        acc = acc + part;
    }
    return acc.reduced_den();
}

ModMonomial fricke_image(const ModMonomial& mono, long M) {
    long k2 = 0;  // twice the weight
    for (auto& [t, r] : mono.eta) k2 += r;
    if (k2 % 2 != 0) throw UnsupportedExpression("fricke_image: half-integral weight");
    long k = k2 / 2;
    if (k % 2 != 0) throw UnsupportedExpression("fricke_image: odd weight");
    if (mono.jpow != 0 && M != 1)
        throw UnsupportedExpression("fricke_image: j beyond level 1");
    ModMonomial out;
    out.jpow = mono.jpow;
    // constant: (-i)^k M^{-3k/2} prod_t (M/t)^{r_t/2}, assembled as an exact
    // square root of a rational (Delta|W_D = D^{-6} Delta(D tau) at level D)
    QQ csq = 1;
    for (auto& [t, r] : mono.eta) {
        if (M % t) throw UnsupportedExpression("fricke_image: scale does not divide level");
        out.eta[M / t] += r;
        csq *= pow_qq(QQ(M / t), r);
    }
    csq *= pow_qq(QQ(M), -3 * k);
    ZZ num = csq.get_num(), den = csq.get_den();
    if (!is_square_zz(num) || !is_square_zz(den))
        throw UnsupportedExpression("fricke_image: irrational Atkin-Lehner constant");
    QQ C(isqrt_zz(num), isqrt_zz(den));
    if (((k % 4) + 4) % 4 == 2) C = -C;
    out.coeff = mono.coeff * C;
    return out;
}

QSeries atkin_lehner_qexp(const ModFunc& F, long D, long long trunc_int) {
    long M = F.level();
    if (D < 1 || M % D || gcd_l(D, M / D) != 1)
        throw Error("atkin_lehner: D must be an exact divisor of M");
    if (D == 1) return F.qexp(trunc_int);
    if (D == M) {
        std::vector<ModMonomial> imgs;
        for (auto& m : F.terms()) imgs.push_back(fricke_image(m, M));
        ModFunc G(imgs, M, F.name() + "|W");
        return G.qexp(trunc_int);
    }
    if (F.al_invariant()) return F.qexp(trunc_int);
    throw UnsupportedExpression(
        "atkin_lehner: partial W_D implemented only for certified invariant functions");
}

QSeries ModFunc::cusp_expansion(long D, long long trunc_int) const {
    return atkin_lehner_qexp(*this, D, trunc_int);
}

long ModFunc::ord_cusp(long D) const {
    QSeries e = cusp_expansion(D, 8);
    if (e.is_zero()) throw Error("ord_cusp: zero expansion probe");
    return (long)(e.lowest_exp() / e.den());
}

QQ ModFunc::cplus(long D, long long j, long long trunc_hint) const {
    QSeries e = cusp_expansion(D, std::max<long long>(trunc_hint, j + 2));
    long long num = j * e.den();
    if (num >= e.trunc()) return 0;
    return e.at(num);
}

// ------------------------------------------------------------- numerics

static long eta_terms_needed(long prec) {
    // |q| <= e^{-2 pi 0.86}; geometric tail below 2^{-prec-16}
    return (long)std::ceil((prec + 24) * 0.6931 / (2 * 3.14159 * 0.86)) + 3;
}

BigComplex eval_eta(const BigComplex& tau0, long prec_bits) {
    long p = prec_bits + 64;
    if (tau0.im.sign() <= 0) throw Error("eval_eta: Im tau must be positive");
    BigComplex tau = tau0.at_prec(p);
    BigComplex factor{BigFloat::from_long(1, p), BigFloat::from_long(0, p)};
    long phase24 = 0;
    BigFloat one = BigFloat::from_long(1, p);
    for (int iter = 0;; ++iter) {
        if (iter > 4096) throw PrecisionLoss("eval_eta: reduction did not terminate");
        auto [k, resid] = tau.re.round_to_zz();
        if (k != 0) {
            tau.re = tau.re - BigFloat::from_zz(k, p);
            ZZ ph = k % 24;
            phase24 = (long)(((phase24 + ph.get_si()) % 24 + 24) % 24);
        }
        if (norm2(tau) < one) {
            // tau -> -1/tau;  eta(old) = sqrt(-i*new... ) accumulated on the new
            BigComplex inv = -(BigComplex{one, BigFloat::from_long(0, p)} / tau);
            // eta(tau_old) = eta(-1/inv) = sqrt(-i*inv) eta(inv)
            BigComplex mi{inv.im, -inv.re};  // -i*inv
            factor = factor * sqrt(mi);
            tau = inv;
        } else {
            break;
        }
    }
    // phase from the accumulated translations
    BigFloat pi = BigFloat::pi(p);
    BigFloat arg = pi * BigFloat::from_qq(QQ(phase24, 12), p);
    BigComplex phase{cos(arg), sin(arg)};
    // eta(tau) = e(tau/24) prod (1 - e(n tau))
    BigComplex q = exp2pii(tau);
    BigComplex prod = exp2pii({tau.re / BigFloat::from_long(24, p), tau.im / BigFloat::from_long(24, p)});
    BigComplex qn = q;
    long N = eta_terms_needed(p);
    BigComplex one_c{one, BigFloat::from_long(0, p)};
    BigComplex acc = one_c;
    for (long n = 1; n <= N; ++n) {
        acc = acc * (one_c - qn);
        qn = qn * q;
    }
    return factor * phase * prod * acc;
}

static void sl2_reduce(BigComplex& tau, long p) {
    BigFloat one = BigFloat::from_long(1, p);
    for (int iter = 0;; ++iter) {
        if (iter > 4096) throw PrecisionLoss("sl2_reduce: did not terminate");
        auto [k, resid] = tau.re.round_to_zz();
        if (k != 0) tau.re = tau.re - BigFloat::from_zz(k, p);
        if (norm2(tau) < one) {
            tau = -(BigComplex{one, BigFloat::from_long(0, p)} / tau);
        } else {
            return;
        }
    }
}

BigComplex eval_j(const BigComplex& tau0, long prec_bits) {
    long p = prec_bits + 64;
    if (tau0.im.sign() <= 0) throw Error("eval_j: Im tau must be positive");
    BigComplex tau = tau0.at_prec(p);
    sl2_reduce(tau, p);
    // theta nulls in the half nome q_h = e(tau/2)
    BigComplex qh = exp2pii({tau.re / BigFloat::from_long(2, p), tau.im / BigFloat::from_long(2, p)});
    long N = (long)std::ceil(std::sqrt((p + 24) * 0.6931 / (3.14159 * 0.86))) + 2;
    BigComplex one_c{BigFloat::from_long(1, p), BigFloat::from_long(0, p)};
    BigComplex th2{BigFloat::from_long(0, p), BigFloat::from_long(0, p)};
    BigComplex th3 = one_c, th4 = one_c;
    for (long n = 1; n <= N; ++n) {
        BigComplex qn2 = pow_int(qh, n * n);
        th3 = th3 + qn2 + qn2;
        if (n % 2)
            th4 = th4 - qn2 - qn2;
        else
            th4 = th4 + qn2 + qn2;
    }
    for (long n = 0; n <= N; ++n) {
        th2 = th2 + pow_int(qh, n * (n + 1));
    }
    // q_h^{1/4}: use e(tau/8)
    th2 = th2 * exp2pii({tau.re / BigFloat::from_long(8, p), tau.im / BigFloat::from_long(8, p)});
    th2 = th2 + th2;  // factor 2
    BigComplex t2_8 = pow_int(th2, 8), t3_8 = pow_int(th3, 8), t4_8 = pow_int(th4, 8);
    BigComplex num = pow_int(t2_8 + t3_8 + t4_8, 3);
    BigComplex den = pow_int(th2 * th3 * th4, 8);
    BigComplex j = num / den;
    BigFloat c32 = BigFloat::from_long(32, p);
    return {j.re * c32, j.im * c32};
}

static BigComplex eval_monomial(const ModMonomial& m, const BigComplex& tau, long p) {
    BigComplex v{BigFloat::from_qq(m.coeff, p), BigFloat::from_long(0, p)};
    for (auto& [t, r] : m.eta) {
        BigComplex arg{tau.re * BigFloat::from_long(t, p), tau.im * BigFloat::from_long(t, p)};
        v = v * pow_int(eval_eta(arg, p), r);
    }
    if (m.jpow > 0) v = v * pow_int(eval_j(tau, p), m.jpow);
    return v;
}

static BigComplex eval_at(const std::vector<ModMonomial>& terms, const BigComplex& tau0, long p) {
    BigComplex tau = tau0.at_prec(p);
    BigComplex acc{BigFloat::from_long(0, p), BigFloat::from_long(0, p)};
    for (auto& m : terms) acc = acc + eval_monomial(m, tau, p);
    return acc;
}

BigComplex ModFunc::eval(const BigComplex& tau, long prec_bits) const {
    // evaluate twice at staggered precision and certify their agreement
    BigComplex lo = eval_at(terms_, tau, prec_bits + 64);
    BigComplex hi = eval_at(terms_, tau, prec_bits + 128);
    BigFloat diff = abs(lo - hi);
    BigFloat scale = abs(hi);
    if (scale < BigFloat::from_long(1, 64)) scale = BigFloat::from_long(1, 64);
    long target = -(prec_bits - 16);
    if (diff.ilog2() - scale.ilog2() > target)
        throw PrecisionLoss("ModFunc::eval: could not certify " + std::to_string(prec_bits) +
                            " bits at the evaluation point");
    return hi;
}

// ------------------------------------------------------------- catalog

void ModFunc::certify_al_invariant() {
    long M = level_;
    std::vector<std::pair<double, double>> pts = {{0.137, 0.71}, {-0.382, 0.55}, {0.291, 1.13}};
    long p = 256;
    for (long D : divisors(M)) {
        if (D == 1) continue;
        // integral W_D representative [D x, y; -M, D] with D x D - y(-M) = D
        long x, y;
        ext_gcd(D, M / D, x, y);  // D x + (M/D) y = 1
        for (auto& [re0, im0] : pts) {
            BigComplex tau{BigFloat::from_double(re0, p), BigFloat::from_double(im0, p)};
            BigComplex num{tau.re * BigFloat::from_long(D * x, p) + BigFloat::from_long(y, p),
                           tau.im * BigFloat::from_long(D * x, p)};
            BigComplex den{tau.re * BigFloat::from_long(-M, p) + BigFloat::from_long(D, p),
                           tau.im * BigFloat::from_long(-M, p)};
            BigComplex wtau = num / den;
            if (wtau.im.sign() <= 0) throw Error("certify_al_invariant: W_D left H");
            BigComplex a = eval_at(terms_, wtau, p);
            BigComplex b = eval_at(terms_, tau, p);
            BigFloat diff = abs(a - b);
            BigFloat scale = abs(b) + BigFloat::from_long(1, p);
            if (diff.ilog2() - scale.ilog2() > -180)
                throw Error("certify_al_invariant: " + name_ + " is not W_" +
                            std::to_string(D) + " invariant");
        }
    }
    al_invariant_ = true;
}

// Value of a monomial sum at the W_D-image of the probe point (D = 1 gives
// the point itself); used to pin signs the exact Fricke rule does not cover.
static BigComplex eval_at_wd(const std::vector<ModMonomial>& terms, long D, long M,
                             double re0, double im0, long p) {
    BigComplex tau{BigFloat::from_double(re0, p), BigFloat::from_double(im0, p)};
    if (D > 1) {
        long x, y;
        ext_gcd(D, M / D, x, y);  // D x + (M/D) y = 1
        BigComplex num{tau.re * BigFloat::from_long(D * x, p) + BigFloat::from_long(y, p),
                       tau.im * BigFloat::from_long(D * x, p)};
        BigComplex den{tau.re * BigFloat::from_long(-M, p) + BigFloat::from_long(D, p),
                       tau.im * BigFloat::from_long(-M, p)};
        tau = num / den;
    }
    return eval_at(terms, tau, p);
}

// Hauptmodul-style symmetrizations t + s/t + const with all cusp expansions
// equal and vanishing constant term. For prime M the partner s/t is the exact
// Fricke image; for composite M the sign s of t|W_p = s/t is pinned
// numerically and the result is re-certified.
static ModFunc make_al_catalog(const std::string& name, long M,
                               const std::map<long, long>& t_eta) {
    ModMonomial t;
    t.coeff = 1;
    t.eta = t_eta;
    ModMonomial partner;
    ModMonomial tw = fricke_image(t, M);
    if (tw.eta == t.eta) {
        // t is Fricke-invariant (composite M): partner comes from W_p, p | M
        for (auto& [tt, r] : t.eta) partner.eta[tt] = -r;
        long p0 = 2;
        while (M % p0) ++p0;
        BigComplex prod = eval_at_wd({t}, p0, M, 0.137, 0.71, 256) *
                          eval_at_wd({t}, 1, M, 0.137, 0.71, 256);
        // t(W_p tau) t(tau) = s in {+1,-1}
        double s = prod.re.to_double();
        double drift = std::abs(prod.im.to_double()) + std::abs(std::abs(s) - 1.0);
        if (drift > 1e-30)
            throw UnsupportedExpression("catalog: W_p partner of " + name +
                                        " is not +-1/t (drift " + std::to_string(drift) + ")");
        partner.coeff = (s > 0) ? 1 : -1;
    } else {
        partner = tw;  // t|W_M = C * (1/t - atoms)
    }
    std::vector<ModMonomial> terms = {t, partner};
    ModFunc probe(terms, M, name);
    QQ kappa = probe.qexp(2).at_q(0);
    ModMonomial cst;
    cst.coeff = -kappa;
    terms.push_back(cst);
    ModFunc F(terms, M, name);
    F.certify_al_invariant();
    // standing hypothesis of the trace theory
    if (F.qexp(2).at_q(0) != 0) throw Error("catalog: constant term did not vanish");
    return F;
}

ModFunc ModFunc::catalog(const std::string& name) {
    if (name == "J") {
        ModMonomial j;
        j.coeff = 1;
        j.jpow = 1;
        ModMonomial c;
        c.coeff = -744;
        ModFunc F({j, c}, 1, "J");
        F.al_invariant_ = true;
        return F;
    }
    if (name == "m2") return make_al_catalog("m2", 2, {{1, 24}, {2, -24}});
    if (name == "m3") return make_al_catalog("m3", 3, {{1, 12}, {3, -12}});
    if (name == "m5") return make_al_catalog("m5", 5, {{1, 6}, {5, -6}});
    if (name == "m7") return make_al_catalog("m7", 7, {{1, 4}, {7, -4}});
    if (name == "m13") return make_al_catalog("m13", 13, {{1, 2}, {13, -2}});
    if (name == "m6")
        return make_al_catalog("m6", 6, {{2, 12}, {3, 12}, {1, -12}, {6, -12}});
    if (name == "m10")
        return make_al_catalog("m10", 10, {{2, 6}, {5, 6}, {1, -6}, {10, -6}});
    throw ConfigError("unknown catalog function '" + name + "'");
}

// ------------------------------------------------------------- s-expr

namespace {

struct SexpParser {
    const std::string& s;
    size_t i = 0;

    explicit SexpParser(const std::string& text) : s(text) {}

    void skip() {
        while (i < s.size() && std::isspace((unsigned char)s[i])) ++i;
    }
    char peek() {
        skip();
        if (i >= s.size()) throw ParseError("sexp: unexpected end");
        return s[i];
    }
    std::string token() {
        skip();
        size_t j = i;
        while (j < s.size() && !std::isspace((unsigned char)s[j]) && s[j] != '(' && s[j] != ')')
            ++j;
        if (j == i) throw ParseError("sexp: empty token");
        std::string t = s.substr(i, j - i);
        i = j;
        return t;
    }

    using Poly = std::vector<ModMonomial>;

    static Poly constant(const QQ& c) {
        if (c == 0) return {};
        ModMonomial m;
        m.coeff = c;
        return {m};
    }

    static Poly add(const Poly& a, const Poly& b) {
        Poly r = a;
        r.insert(r.end(), b.begin(), b.end());
        merge_terms(r);
        return r;
    }

    static Poly mul(const Poly& a, const Poly& b) {
        Poly r;
        for (auto& x : a) {
            for (auto& y : b) {
                ModMonomial m;
                m.coeff = x.coeff * y.coeff;
                m.eta = x.eta;
                for (auto& [t, e] : y.eta) m.eta[t] += e;
                m.jpow = x.jpow + y.jpow;
                r.push_back(m);
            }
        }
        merge_terms(r);
        return r;
    }

    static Poly pow(const Poly& a, long e) {
        if (e == 0) return constant(1);
        if (a.size() == 1) {
            ModMonomial m;
            m.coeff = pow_qq(a[0].coeff, e);
            for (auto& [t, r] : a[0].eta) m.eta[t] = r * e;
            m.jpow = a[0].jpow * e;
            if (m.jpow < 0) throw UnsupportedExpression("sexp: negative power of j");
            return {m};
        }
        if (e < 0) throw UnsupportedExpression("sexp: negative power of a sum");
        Poly r = constant(1);
        Poly base = a;
        while (e > 0) {
            if (e & 1) r = mul(r, base);
            e >>= 1;
            if (e) base = mul(base, base);
        }
        return r;
    }

    Poly parse() {
        skip();
        if (peek() != '(') {
            std::string t = token();
            return constant(parse_rational(t));
        }
        ++i;  // '('
        std::string op = token();
        Poly r;
        if (op == "eta") {
            long t = std::stol(token());
            ModMonomial m;
            m.coeff = 1;
            m.eta[t] = 1;
            r = {m};
        } else if (op == "j") {
            ModMonomial m;
            m.coeff = 1;
            m.jpow = 1;
            r = {m};
        } else if (op == "+") {
            r = constant(0);
            while (peek() != ')') r = add(r, parse());
        } else if (op == "*") {
            r = constant(1);
            while (peek() != ')') r = mul(r, parse());
        } else if (op == "pow") {
            Poly base = parse();
            long e = std::stol(token());
            r = pow(base, e);
        } else {
            throw ParseError("sexp: unknown operator '" + op + "'");
        }
        skip();
        if (i >= s.size() || s[i] != ')') throw ParseError("sexp: expected ')'");
        ++i;
        return r;
    }

    static QQ parse_rational(const std::string& t) {
        auto slash = t.find('/');
        try {
            if (slash == std::string::npos) return QQ(ZZ(t));
            return make_q(ZZ(t.substr(0, slash)), ZZ(t.substr(slash + 1)));
        } catch (const std::invalid_argument&) {
            throw ParseError("sexp: bad number '" + t + "'");
        }
    }
};

}  // namespace

ModFunc ModFunc::parse_sexp(const std::string& text, long level) {
    SexpParser p(text);
    auto poly = p.parse();
    p.skip();
    if (p.i != text.size()) throw ParseError("sexp: trailing input");
    return ModFunc(poly, level, "user");
}

std::string ModFunc::to_sexp() const {
    std::ostringstream os;
    os << "(+";
    for (auto& m : terms_) {
        os << " (*" << " " << m.coeff;
        for (auto& [t, r] : m.eta) os << " (pow (eta " << t << ") " << r << ")";
        if (m.jpow == 1)
            os << " (j)";
        else if (m.jpow > 1)
            os << " (pow (j) " << m.jpow << ")";
        os << ")";
    }
    os << ")";
    return os.str();
}

}  // namespace smt
