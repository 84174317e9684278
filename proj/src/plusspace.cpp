#include "smt/plusspace.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <sstream>

#include "smt/arithfun.hpp"
#include "smt/errors.hpp"
#include "smt/modform.hpp"
#include "smt/zseries.hpp"

namespace smt {

using QMat = Eigen::Matrix<QQ, Eigen::Dynamic, Eigen::Dynamic>;

long long PlusForm::pole_order() const {
    long long p = 0;
    for (auto& [e, c] : principal_part) p = std::max(p, -e);
    return p;
}

// ------------------------------------------------------------- pool

namespace {

bool plus_class(const QQ& weight, long long e) {
    long r = (long)(((e % 4) + 4) % 4);
    if (weight == make_q(1, 2)) return r == 0 || r == 1;
    return r == 0 || r == 3;  // weight 3/2
}

/*
 * Monomial pool theta^{A-4b} F^b / Delta(4tau)^k for b = 0..6k on the
 * exponent window [-4k, S]; columns are built by eta/theta passes on the
 * shifted integer grid (index i <-> exponent i - 4k).
 */
struct Pool {
    long k;
    long A;  // theta exponent at b = 0
    long long S;
    std::vector<ZVec> cols;

    Pool(long wnum, long k_, long long S_) : k(k_), S(S_) {
        A = wnum + 24 * k;
        long long W = 4 * (long long)k + S + 1;
        ZVec v(W, ZZ(0));
        v[0] = 1;
        for (long i = 0; i < 24 * k; ++i) euler_pass(v, 4, -1);
        for (long i = 0; i < A; ++i) theta_pass(v, +1);
        cols.push_back(v);
        for (long b = 1; b <= 6 * k; ++b) {
            // next = prev * F / theta^4,  F = q E(q^4)^8 E(q^2)^{-4}
            for (int i = 0; i < 8; ++i) euler_pass(v, 4, +1);
            for (int i = 0; i < 4; ++i) euler_pass(v, 2, -1);
            shift_up(v, 1);
            for (int i = 0; i < 4; ++i) theta_pass(v, -1);
            cols.push_back(v);
        }
    }

    QQ at(long b, long long e) const {  // coefficient of q^e in monomial b
        long long i = e + 4 * (long long)k;
        if (i < 0 || i >= (long long)cols[b].size()) return 0;
        return QQ(cols[b][i]);
    }
};

// Reduced row echelon form of [A | rhs-block]; returns pivot column per row.
std::vector<long> rref(QMat& m, long ncols_main) {
    std::vector<long> pivots;
    long rank = 0;
    for (long col = 0; col < ncols_main && rank < m.rows(); ++col) {
        long piv = -1;
        for (long r = rank; r < m.rows(); ++r) {
            if (m(r, col) != 0) {
                piv = r;
                break;
            }
        }
        if (piv < 0) continue;
        m.row(rank).swap(m.row(piv));
        QQ inv = 1 / m(rank, col);
        for (long c = col; c < m.cols(); ++c) m(rank, c) *= inv;
        for (long r = 0; r < m.rows(); ++r) {
            if (r == rank || m(r, col) == 0) continue;
            QQ f = m(r, col);
            for (long c = col; c < m.cols(); ++c) m(r, c) -= f * m(rank, c);
        }
        pivots.push_back(col);
        ++rank;
    }
    return pivots;
}

struct BasisProblem {
    long wnum;  // 1 or 3 (numerator of the weight over 2)
    QQ weight;
    bool normalize_constant;  // pin c(0) (weight 1/2 Zagier normalization)
};

std::vector<PlusForm> build_basis(const BasisProblem& bp, long M, long max_pole,
                                  long long trunc) {
    if (M != 1)
        throw SpanDeficient("automatic plus-space construction is scoped to M=1; "
                            "supply component bases for M>1");
    if (max_pole < 0 || trunc <= max_pole + 1)
        throw Error("basis: need trunc > max_pole + 1");
    long k = (max_pole + 3) / 4;
    if (k < 1) k = 1;

    for (int attempt = 0; attempt < 2; ++attempt, ++k) {
        long long S = std::max<long long>(trunc - 1, max_pole + 12 * (long long)k + 20);
        Pool pool(bp.wnum, k, S);
        long ncols = (long)pool.cols.size();

        // admissible pole slots
        std::vector<long> deltas;
        for (long d = (bp.wnum == 1) ? 0 : 1; d <= max_pole; ++d) {
            long r = d % 4;
            bool adm = (bp.wnum == 1) ? (r == 0 || r == 3) : (r == 0 || r == 1);
            if (adm) deltas.push_back(d);
        }

        // constraint exponents: everything we pin on [-4k, Scheck]
        long long Scheck = 12 * (long long)k + max_pole + 16;
        std::vector<long long> rows_e;
        for (long long e = -4 * (long long)k; e <= Scheck; ++e) {
            bool constrained;
            if (e < 0)
                constrained = true;  // non-plus killed, plus slots prescribed
            else if (e == 0)
                constrained = bp.normalize_constant || !plus_class(bp.weight, 0);
            else
                constrained = !plus_class(bp.weight, e);
            if (constrained) rows_e.push_back(e);
        }

        long nrows = (long)rows_e.size();
        long ntargets = (long)deltas.size();
        QMat m(nrows, ncols + ntargets);
        for (long r = 0; r < nrows; ++r) {
            for (long c = 0; c < ncols; ++c) m(r, c) = pool.at(c, rows_e[r]);
            for (long t = 0; t < ntargets; ++t) {
                long long want = -(long long)deltas[t];
                m(r, ncols + t) = (rows_e[r] == want) ? QQ(1) : QQ(0);
            }
        }

        auto pivots = rref(m, ncols);
        long rank = (long)pivots.size();
        if (rank < ncols) {
            continue;  // pool degenerate on this window: enlarge k
        }
        // consistency: zero rows must carry zero right-hand sides
        bool consistent = true;
        for (long r = rank; r < nrows && consistent; ++r) {
            for (long t = 0; t < ntargets; ++t) {
                if (m(r, ncols + t) != 0) {
                    consistent = false;
                    break;
                }
            }
        }
        if (!consistent) {
            continue;
        }

        std::vector<PlusForm> out;
        for (long t = 0; t < ntargets; ++t) {
            // solution x: row i gives coefficient of pivot column i
            std::vector<QQ> x(ncols, QQ(0));
            for (long r = 0; r < rank; ++r) x[pivots[r]] = m(r, ncols + t);
            PlusForm f;
            f.weight = bp.weight;
            f.level = 4 * M;
            f.series = QSeries(1, trunc);
            for (long long e = -4 * (long long)k; e < trunc; ++e) {
                QQ v = 0;
                for (long c = 0; c < ncols; ++c) {
                    if (x[c] == 0) continue;
                    v += x[c] * pool.at(c, e);
                }
                f.series.set(e, v);
            }
            for (auto& [e, c] : f.series.coeffs()) {
                if (e < 0) f.principal_part.emplace(e, c);
            }
            for (long c = 0; c < ncols; ++c) {
                if (x[c] == 0) continue;
                f.witness.push_back({x[c], pool.A - 4 * c, c, k});
            }
            // verify the normal form and plus support on the full window
            long d = deltas[t];
            if (f.series.at(-(long long)d) != 1)
                throw SpanDeficient("basis: pole slot not realized at delta=" +
                                    std::to_string(d));
            for (auto& [e, c] : f.series.coeffs()) {
                if (!plus_class(bp.weight, e))
                    throw SpanDeficient("basis: plus support violated at exponent " +
                                        std::to_string(e) + " for delta=" + std::to_string(d));
                if (e < 0 && e != -(long long)d)
                    throw SpanDeficient("basis: stray principal term at delta=" +
                                        std::to_string(d));
            }
            out.push_back(std::move(f));
        }
        return out;
    }
    throw SpanDeficient("basis: monomial pool failed to realize the requested poles");
}

}  // namespace

std::vector<PlusForm> half_basis(long M, long max_pole, long long trunc) {
    return build_basis({1, make_q(1, 2), true}, M, max_pole, trunc);
}

std::vector<PlusForm> three_halves_basis(long M, long max_pole, long long trunc) {
    if (max_pole < 1) throw Error("three_halves_basis: the basis starts at d=1");
    return build_basis({3, make_q(3, 2), false}, M, max_pole, trunc);
}

PlusForm lift_input(const PlusForm& f, const PlusForm& theta_form) {
    long long d = f.pole_order();
    if (d == 0) return f;  // theta itself
    QQ c0 = 12 * hurwitz((long)d);
    PlusForm out;
    out.weight = f.weight;
    out.level = f.level;
    out.series = f.series + c0 * theta_form.series;
    out.principal_part = f.principal_part;
    out.witness = f.witness;
    for (auto w : theta_form.witness) {
        w.coeff *= c0;
        out.witness.push_back(w);
    }
    return out;
}

QSeries witness_qexp(const std::vector<PlusForm::WitnessTerm>& witness, long long trunc) {
    QSeries acc(1, trunc);
    for (auto& w : witness) {
        long long W = 4 * (long long)w.delta4_pow + trunc;
        ZVec v(W, ZZ(0));
        v[0] = 1;
        for (long i = 0; i < 24 * w.delta4_pow; ++i) euler_pass(v, 4, -1);
        for (long i = 0; i < w.theta_pow; ++i) theta_pass(v, +1);
        for (long i = 0; i < w.f_pow; ++i) {
            for (int j = 0; j < 8; ++j) euler_pass(v, 4, +1);
            for (int j = 0; j < 4; ++j) euler_pass(v, 2, -1);
            shift_up(v, 1);
        }
        QSeries part(1, trunc);
        for (long long i = 0; i < W; ++i) {
            long long e = i - 4 * (long long)w.delta4_pow;
            if (e >= trunc) break;
            if (v[i] != 0) part.set(e, QQ(v[i]));
        }
        acc = acc + w.coeff * part;
    }
    return acc;
}

// ------------------------------------------------------------ pairing

PairingReport verify_modularity(const QSeries& g, const std::vector<PlusForm>& basis) {
    PairingReport rep;
    long long gpole_num = g.is_zero() ? 0 : std::max<long long>(0, -g.lowest_exp());
    long long gpole_int = (gpole_num + g.den() - 1) / g.den();
    rep.pass = true;
    for (long i = 0; i < (long)basis.size(); ++i) {
        const PlusForm& f = basis[i];
        long long fpole = f.pole_order();
        rep.certified_pole_bound = std::max(rep.certified_pole_bound, fpole);
        if (g.trunc() <= fpole * g.den())
            throw InsufficientTruncation("verify_modularity: candidate known to q^" +
                                         std::to_string(g.trunc() / g.den()) +
                                         " but basis pole is " + std::to_string(fpole));
        if (f.series.trunc() <= gpole_int)
            throw InsufficientTruncation("verify_modularity: basis form too short");
        QQ resid = 0;
        for (auto& [e, c] : f.series.coeffs()) {
            long long ge = -e * g.den();
            if (ge >= g.trunc()) continue;  // beyond candidate poles: coefficient 0
            auto it = g.coeffs().find(ge);
            if (it != g.coeffs().end()) resid += c * it->second;
        }
        rep.residuals.emplace_back(i, resid);
        if (resid != 0) rep.pass = false;
    }
    return rep;
}

// -------------------------------------------------- vector-valued (M > 1)

std::vector<VectorPlusForm> theta_j_family(long M, long kmax, long long trunc_int) {
    if (M < 1) throw Error("theta_j_family: bad level");
    long den = 4 * M;
    long long T = trunc_int * den;
    // single-coset unary thetas: theta_mu = sum_{r in Z, r ≡ mu (2M)} q^{r^2/4M}
    std::vector<QSeries> theta_comp;
    long long R = isqrt_l((long)T) + 1;
    for (long mu = 0; mu <= M; ++mu) {
        QSeries th(den, T);
        for (long long r = -R; r <= R; ++r) {
            if (((r - mu) % (2 * M) + 2 * M) % (2 * M) != 0) continue;
            long long e = r * r;
            if (e < T) th.add_to(e, 1);
        }
        theta_comp.push_back(th);
    }
    std::vector<VectorPlusForm> fam;
    QSeries jpow = QSeries::one(1, trunc_int + 2 * (kmax + 1));
    for (long kk = 0; kk <= kmax; ++kk) {
        if (kk > 0) jpow = jpow * j_qexp(trunc_int + 2 * (kmax + 1) + 1);
        VectorPlusForm vf;
        vf.M = M;
        vf.weight = make_q(1, 2);
        vf.label = "j^" + std::to_string(kk) + "*Theta";
        QSeries jl = jpow.with_den(den);
        for (long mu = 0; mu <= M; ++mu) vf.comp.push_back(jl * theta_comp[mu]);
        fam.push_back(std::move(vf));
    }
    return fam;
}

PairingReport verify_modularity_vector(const std::vector<QSeries>& g_comp,
                                       const std::vector<VectorPlusForm>& basis) {
    PairingReport rep;
    rep.pass = true;
    for (long i = 0; i < (long)basis.size(); ++i) {
        const VectorPlusForm& f = basis[i];
        if (g_comp.size() != f.comp.size())
            throw Error("verify_modularity_vector: component count mismatch");
        long M = f.M;
        QQ resid = 0;
        for (long mu = 0; mu < (long)f.comp.size(); ++mu) {
            const QSeries& fc = f.comp[mu];
            const QSeries& gc = g_comp[mu];
            if (fc.den() != gc.den())
                throw Error("verify_modularity_vector: grid mismatch");
            long long fpole = fc.is_zero() ? 0 : std::max<long long>(0, -fc.lowest_exp());
            long long gpole = gc.is_zero() ? 0 : std::max<long long>(0, -gc.lowest_exp());
            if (gc.trunc() <= fpole || fc.trunc() <= gpole)
                throw InsufficientTruncation("verify_modularity_vector: truncation too short");
            QQ part = 0;
            for (auto& [e, c] : fc.coeffs()) {
                auto it = gc.coeffs().find(-e);
                if (it != gc.coeffs().end()) part += c * it->second;
            }
            QQ mult = (mu == 0 || mu == M) ? 1 : 2;  // folded coset pair
            resid += mult * part;
        }
        rep.residuals.emplace_back(i, resid);
        rep.certified_pole_bound = std::max(rep.certified_pole_bound, (long long)0);
        if (resid != 0) rep.pass = false;
    }
    return rep;
}

// ------------------------------------------------------------------ io

std::string vector_basis_to_text(const std::vector<VectorPlusForm>& basis) {
    std::ostringstream os;
    if (basis.empty()) throw Error("vector_basis_to_text: empty basis");
    os << "vqsbasis version=1 weight=" << basis[0].weight.get_num() << "/"
       << basis[0].weight.get_den() << " M=" << basis[0].M << " elements=" << basis.size()
       << "\n";
    for (auto& f : basis) {
        os << "element label=" << f.label << " components=" << f.comp.size() << "\n";
        for (long mu = 0; mu < (long)f.comp.size(); ++mu) {
            os << "component mu=" << mu << "\n";
            os << f.comp[mu].to_text();
        }
    }
    return os.str();
}

namespace {

// supplied component data must sit on the right coset grid: the mu-component
// of a weight-1/2 form is supported on exponent numerators ≡ mu^2 mod 4M
void validate_component(const QSeries& c, long mu, long M) {
    long den = 4 * M;
    if (c.den() != den)
        throw ParseError("vqsbasis: component denominator must be 4M");
    long want = (mu * mu) % den;
    for (auto& [e, v] : c.coeffs()) {
        long r = (long)(((e % den) + den) % den);
        if (r != want)
            throw ParseError("vqsbasis: component mu=" + std::to_string(mu) +
                             " has exponent " + std::to_string(e) + " off its coset class");
    }
}

}  // namespace

std::vector<VectorPlusForm> vector_basis_from_text(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line)) throw ParseError("vqsbasis: empty");
    long wn, wd, M;
    unsigned long nelem;
    if (sscanf(line.c_str(), "vqsbasis version=1 weight=%ld/%ld M=%ld elements=%lu", &wn,
               &wd, &M, &nelem) != 4)
        throw ParseError("vqsbasis: bad header '" + line + "'");
    std::vector<VectorPlusForm> out;
    for (unsigned long e = 0; e < nelem; ++e) {
        if (!std::getline(is, line)) throw ParseError("vqsbasis: missing element header");
        char label[128];
        unsigned long ncomp;
        if (sscanf(line.c_str(), "element label=%127s components=%lu", label, &ncomp) != 2)
            throw ParseError("vqsbasis: bad element header '" + line + "'");
        VectorPlusForm vf;
        vf.M = M;
        vf.weight = make_q(wn, wd);
        vf.label = label;
        for (unsigned long mu = 0; mu < ncomp; ++mu) {
            if (!std::getline(is, line) ||
                line.rfind("component", 0) != 0)
                throw ParseError("vqsbasis: missing component header");
            // read one qseries: header line + term lines until next keyword
            std::string block;
            if (!std::getline(is, block)) throw ParseError("vqsbasis: missing series header");
            block += "\n";
            while (is.peek() != 'c' && is.peek() != 'e' && is.peek() != EOF) {
                std::string term;
                if (!std::getline(is, term)) break;
                block += term + "\n";
            }
            QSeries c = QSeries::from_text(block);
            validate_component(c, (long)mu, M);
            vf.comp.push_back(std::move(c));
        }
        out.push_back(std::move(vf));
    }
    return out;
}

std::string scalar_basis_to_text(const std::vector<PlusForm>& basis) {
    std::ostringstream os;
    if (basis.empty()) throw Error("scalar_basis_to_text: empty basis");
    os << "plusbasis version=1 weight=" << basis[0].weight.get_num() << "/"
       << basis[0].weight.get_den() << " level=" << basis[0].level
       << " elements=" << basis.size() << "\n";
    for (auto& f : basis) {
        os << "element pole=" << f.pole_order() << "\n";
        os << f.series.to_text();
    }
    return os.str();
}

std::vector<PlusForm> scalar_basis_from_text(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line)) throw ParseError("plusbasis: empty");
    long wn, wd, level;
    unsigned long nelem;
    if (sscanf(line.c_str(), "plusbasis version=1 weight=%ld/%ld level=%ld elements=%lu",
               &wn, &wd, &level, &nelem) != 4)
        throw ParseError("plusbasis: bad header '" + line + "'");
    std::vector<PlusForm> out;
    for (unsigned long e = 0; e < nelem; ++e) {
        if (!std::getline(is, line) || line.rfind("element", 0) != 0)
            throw ParseError("plusbasis: missing element header");
        std::string block;
        if (!std::getline(is, block)) throw ParseError("plusbasis: missing series header");
        block += "\n";
        while (is.peek() != 'e' && is.peek() != EOF) {
            std::string term;
            if (!std::getline(is, term)) break;
            block += term + "\n";
        }
        PlusForm f;
        f.weight = make_q(wn, wd);
        f.level = level;
        f.series = QSeries::from_text(block);
        for (auto& [ee, c] : f.series.coeffs()) {
            if (!plus_class(f.weight, ee))
                throw ParseError("plusbasis: exponent " + std::to_string(ee) +
                                 " violates the plus support");
            if (ee < 0) f.principal_part.emplace(ee, c);
        }
        out.push_back(std::move(f));
    }
    return out;
}

}  // namespace smt
