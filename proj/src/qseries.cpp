#include "smt/qseries.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <vector>

namespace smt {

QSeries::QSeries(long den, long long trunc) : den_(den), trunc_(trunc) {
    if (den < 1) throw Error("QSeries: den must be positive");
}

QSeries QSeries::monomial(const QQ& c, long long e, long den, long long trunc) {
    QSeries s(den, trunc);
    s.set(e, c);
    return s;
}

QQ QSeries::at(long long e) const {
    if (e >= trunc_)
        throw InsufficientTruncation("coefficient q^(" + std::to_string(e) + "/" +
                                     std::to_string(den_) + ") is beyond truncation " +
                                     std::to_string(trunc_));
    auto it = coef_.find(e);
    return it == coef_.end() ? QQ(0) : it->second;
}

void QSeries::set(long long e, const QQ& v) {
    if (e >= trunc_) return;  // beyond knowledge: drop
    if (v == 0)
        coef_.erase(e);
    else
        coef_[e] = v;
}

void QSeries::add_to(long long e, const QQ& v) {
    if (e >= trunc_ || v == 0) return;
    auto it = coef_.find(e);
    if (it == coef_.end()) {
        coef_.emplace(e, v);
    } else {
        it->second += v;
        if (it->second == 0) coef_.erase(it);
    }
}

QSeries QSeries::with_den(long newden) const {
    if (newden % den_) throw Error("with_den: new denominator must be a multiple");
    long f = newden / den_;
    if (f == 1) return *this;
    QSeries r(newden, trunc_ * f);
    for (auto& [e, c] : coef_) r.coef_.emplace(e * f, c);
    return r;
}

QSeries QSeries::reduced_den() const {
    long long g = den_;
    for (auto& [e, c] : coef_) {
        g = gcd_l((long)g, (long)(e < 0 ? -e : e));
        if (g == 1) return *this;
    }
    if (g <= 1) return *this;
    // new truncation: smallest grid point with e'/den' >= trunc/den
    long long t = trunc_ >= 0 ? (trunc_ + g - 1) / g : trunc_ / g;
    QSeries r((long)(den_ / g), t);
    for (auto& [e, c] : coef_) r.coef_.emplace(e / g, c);
    return r;
}

QSeries QSeries::truncated(long long new_trunc) const {
    if (new_trunc > trunc_) throw Error("truncated: cannot extend truncation");
    QSeries r(den_, new_trunc);
    for (auto& [e, c] : coef_) {
        if (e >= new_trunc) break;
        r.coef_.emplace(e, c);
    }
    return r;
}

QSeries QSeries::scaled_exponents(long s) const {
    if (s < 1) throw Error("scaled_exponents: scale must be positive");
    QSeries r(den_, trunc_ * s);
    for (auto& [e, c] : coef_) r.coef_.emplace(e * s, c);
    return r;
}

QSeries QSeries::shifted(long long e) const {
    QSeries r(den_, trunc_ + e);
    for (auto& [ee, c] : coef_) r.coef_.emplace(ee + e, c);
    return r;
}

void QSeries::align(QSeries& a, QSeries& b) {
    long L = lcm_l(a.den_, b.den_);
    if (a.den_ != L) a = a.with_den(L);
    if (b.den_ != L) b = b.with_den(L);
}

QSeries operator+(const QSeries& a0, const QSeries& b0) {
    QSeries a = a0, b = b0;
    QSeries::align(a, b);
    QSeries r(a.den_, std::min(a.trunc_, b.trunc_));
    for (auto& [e, c] : a.coef_) r.add_to(e, c);
    for (auto& [e, c] : b.coef_) r.add_to(e, c);
    return r;
}

QSeries operator-(const QSeries& a, const QSeries& b) { return a + (-b); }

QSeries QSeries::operator-() const {
    QSeries r(den_, trunc_);
    for (auto& [e, c] : coef_) r.coef_.emplace(e, -c);
    return r;
}

QSeries operator*(const QQ& c, const QSeries& a) {
    QSeries r(a.den_, a.trunc_);
    if (c == 0) return r;
    for (auto& [e, v] : a.coef_) r.coef_.emplace(e, c * v);
    return r;
}

QSeries operator*(const QSeries& a0, const QSeries& b0) {
    QSeries a = a0, b = b0;
    QSeries::align(a, b);
    // Unknown tail of a at trunc(a) meets lowest(b) and vice versa.
    long long t = std::min(a.trunc_ + b.lowest_exp(), b.trunc_ + a.lowest_exp());
    QSeries r(a.den_, t);
    for (auto& [ea, ca] : a.coef_) {
        for (auto& [eb, cb] : b.coef_) {
            long long e = ea + eb;
            if (e >= t) break;  // eb ascending: later terms only larger
            r.add_to(e, ca * cb);
        }
    }
    return r;
}

QSeries inverse(const QSeries& a) {
    if (a.is_zero())
        throw NotInvertible("series is O(q^" + std::to_string(a.trunc()) + "/" +
                            std::to_string(a.den()) + ")");
    long long l = a.lowest_exp();
    QQ lead = a.coeffs().begin()->second;
    long long t = a.trunc() - 2 * l;  // relative precision preserved
    QSeries r(a.den(), t);
    // b with a*b = 1: recurrence on coefficients of b starting at -l.
    std::vector<std::pair<long long, QQ>> terms(a.coeffs().begin(), a.coeffs().end());
    std::map<long long, QQ> b;
    b[-l] = 1 / lead;
    r.set(-l, b[-l]);
    for (long long m = -l + 1; m < t; ++m) {
        // coefficient of q^{m+l} in a*b must vanish
        QQ s = 0;
        for (auto& [ea, ca] : terms) {
            if (ea == l) continue;
            long long eb = m + l - ea;
            if (eb >= m) continue;  // only earlier b-terms known; ea > l ensures eb < m
            auto it = b.find(eb);
            if (it != b.end()) s += ca * it->second;
        }
        QQ v = -s / lead;
        if (v != 0) {
            b[m] = v;
            r.set(m, v);
        }
    }
    return r;
}

// (1 + c q^n)^e by the exact binomial series; handles huge exponents, where
// binary powering over the exponent bits is hopeless.
static QSeries pow_binomial(const QSeries& a, const ZZ& e) {
    long long n = std::next(a.coeffs().begin())->first;
    const QQ& c = std::next(a.coeffs().begin())->second;
    QSeries r(a.den(), a.trunc());
    r.set(0, 1);
    QQ acc = 1;
    for (long long k = 1; k * n < a.trunc(); ++k) {
        acc *= make_q(e - (long)(k - 1), ZZ((long)k)) * c;
        if (acc == 0) break;
        r.set(k * n, acc);
    }
    return r;
}

static bool is_one_plus_monomial(const QSeries& a) {
    return a.coeffs().size() == 2 && a.coeffs().begin()->first == 0 &&
           a.coeffs().begin()->second == 1 && std::next(a.coeffs().begin())->first > 0;
}

QSeries pow_int(const QSeries& a, long e) {
    if (e < 0) return pow_int(inverse(a), -e);
    // relative precision of a bounds any positive power's knowledge
    long long rel = a.trunc() - a.lowest_exp();
    if (e == 0) return QSeries::one(a.den(), rel);
    if (is_one_plus_monomial(a)) return pow_binomial(a, ZZ(e));
    QSeries base = a;
    QSeries result = QSeries::one(a.den(), rel);
    long ee = e;
    while (ee > 0) {
        if (ee & 1) result = result * base;
        ee >>= 1;
        if (ee) base = base * base;
    }
    return result;
}

QSeries pow_int(const QSeries& a, const ZZ& e) {
    if (mpz_fits_slong_p(e.get_mpz_t())) return pow_int(a, e.get_si());
    if (is_one_plus_monomial(a)) return pow_binomial(a, e);
    QSeries inv = inverse(a);
    if (is_one_plus_monomial(inv)) return pow_binomial(inv, -e);
    throw Error("pow_int: exponent too large for a general base");
}

QSeries QSeries::derivative() const {
    QSeries r(den_, trunc_);
    for (auto& [e, c] : coef_) {
        QQ v = c * make_q(e, den_);
        if (v != 0) r.coef_.emplace(e, v);
    }
    return r;
}

long long first_mismatch(const QSeries& a0, const QSeries& b0) {
    QSeries a = a0, b = b0;
    QSeries::align(a, b);
    long long t = std::min(a.trunc(), b.trunc());
    auto ia = a.coeffs().begin(), ib = b.coeffs().begin();
    while (true) {
        while (ia != a.coeffs().end() && ia->first >= t) ++ia;
        while (ib != b.coeffs().end() && ib->first >= t) ++ib;
        bool ea = (ia == a.coeffs().end() || ia->first >= t);
        bool eb = (ib == b.coeffs().end() || ib->first >= t);
        if (ea && eb) return -1;
        if (ea) return ib->first;
        if (eb) return ia->first;
        if (ia->first != ib->first) return std::min(ia->first, ib->first);
        if (ia->second != ib->second) return ia->first;
        ++ia;
        ++ib;
    }
}

bool agree_to_truncation(const QSeries& a, const QSeries& b) {
    return first_mismatch(a, b) == -1;
}

std::string QSeries::to_text() const {
    std::ostringstream os;
    os << "den=" << den_ << " trunc=" << trunc_ << "\n";
    for (auto& [e, c] : coef_) {
        os << e << " " << c.get_num().get_str() << "/" << c.get_den().get_str() << "\n";
    }
    return os.str();
}

QSeries QSeries::from_text(const std::string& text) {
    std::istringstream is(text);
    std::string header;
    if (!std::getline(is, header)) throw ParseError("qseries: empty input");
    long den = 0;
    long long trunc = 0;
    if (sscanf(header.c_str(), "den=%ld trunc=%lld", &den, &trunc) != 2)
        throw ParseError("qseries: bad header '" + header + "'");
    QSeries s(den, trunc);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        long long e;
        std::string frac;
        if (!(ls >> e >> frac)) throw ParseError("qseries: bad term '" + line + "'");
        auto slash = frac.find('/');
        if (slash == std::string::npos) throw ParseError("qseries: missing '/' in '" + line + "'");
        QQ c = make_q(ZZ(frac.substr(0, slash)), ZZ(frac.substr(slash + 1)));
        if (e >= trunc) throw ParseError("qseries: term beyond truncation");
        s.set(e, c);
    }
    return s;
}

std::ostream& operator<<(std::ostream& os, const QSeries& s) {
    bool first = true;
    for (auto& [e, c] : s.coeffs()) {
        if (!first) os << " + ";
        os << "(" << c << ")q^(" << e << "/" << s.den() << ")";
        first = false;
    }
    if (first) os << "0";
    os << " + O(q^(" << s.trunc() << "/" << s.den() << "))";
    return os;
}

}  // namespace smt
