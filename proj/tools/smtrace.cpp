// Command-line front end: trace assembly, plus-space bases, modularity
// certification, Borcherds lifts, class data. Reports are byte-identical for
// identical configurations; wall-clock timings only appear under --timings.

#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "smt/arithfun.hpp"
#include "smt/borcherds.hpp"
#include "smt/errors.hpp"
#include "smt/modform.hpp"
#include "smt/plusspace.hpp"
#include "smt/qf.hpp"
#include "smt/traces.hpp"

using json = nlohmann::ordered_json;
using namespace smt;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitPrecision = 3;
constexpr int kExitCertification = 4;

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit(const json& report, const std::string& out_path, const std::string& format) {
    std::string payload;
    if (format == "json") {
        payload = report.dump(2) + "\n";
    } else {
        std::ostringstream os;
        for (auto& [k, v] : report.items()) {
            if (v.is_string())
                os << k << ":\n" << v.get<std::string>() << "\n";
            else
                os << k << ": " << v.dump() << "\n";
        }
        payload = os.str();
    }
    if (out_path.empty()) {
        std::cout << payload;
    } else {
        std::ofstream out(out_path);
        out << payload;
    }
}

long default_prec() {
    if (const char* p = std::getenv("SMTRACE_PREC")) return std::atol(p);
    return 512;
}

ModFunc load_f(const std::string& spec_name, long M) {
    if (spec_name.rfind("catalog:", 0) == 0) return ModFunc::catalog(spec_name.substr(8));
    if (spec_name == "J" || (spec_name.size() <= 3 && spec_name[0] == 'm'))
        return ModFunc::catalog(spec_name);
    ModFunc F = ModFunc::parse_sexp(read_file(spec_name), M);
    return F;
}

json residuals_json(const PairingReport& rep) {
    json r = json::object();
    r["pass"] = rep.pass;
    r["certified_pole_bound"] = rep.certified_pole_bound;
    json rs = json::array();
    for (auto& [i, v] : rep.residuals) rs.push_back({i, to_string(v)});
    r["residuals"] = rs;
    return r;
}

int run_trace(long M, const std::string& fname, long long N, long prec, long prec_cap,
              bool verify, const std::string& basis_path, const std::string& twist,
              const std::string& perturb, const std::string& inject, const std::string& out,
              const std::string& format, bool timings) {
    if (N < 1) throw ConfigError("trace: N must be >= 1");
    if (M < 1 || !is_squarefree(M)) throw ConfigError("trace: M must be squarefree positive");
    if (prec < 128) throw ConfigError("trace: prec must be at least 128");
    if (inject == "rounding") throw RoundingFailure("injected failure");
    if (inject == "precision") throw PrecisionLoss("injected failure");
    if (!inject.empty()) throw ConfigError("trace: unknown --inject-failure kind");
    Timer timer;
    ModFunc F = load_f(fname, M);

    long twist_delta = 0, twist_r = 0;
    if (!twist.empty()) {
        if (sscanf(twist.c_str(), "%ld,%ld", &twist_delta, &twist_r) != 2)
            throw ConfigError("trace: --twist expects 'Delta,r'");
    }

    json report;
    report["report_version"] = 1;
    report["command"] = "trace";
    report["M"] = M;
    report["F"] = F.name();
    report["N"] = N;
    report["prec_bits"] = prec;
    if (twist_delta) report["twist"] = {twist_delta, twist_r};

    QSeries series(1, N + 1);
    double rounding = 0.0;
    std::vector<QSeries> components;
    // precision auto-retry: CM values of large discriminant need
    // unpredictable precision
    long p = prec;
    for (;;) {
        try {
            if (twist_delta) {
                GenusCharData chi(twist_delta, twist_r, M);
                TwistedTraceSeries ts = twisted_assemble(F, chi, M, N, p);
                series = ts.series;
                rounding = ts.rounding_report;
            } else {
                TraceSeries ts = assemble(F, M, N, p);
                series = ts.series;
                rounding = ts.rounding_report;
                components = ts.components;
                json mv = json::object();
                for (auto& [D, m] : ts.modulus_vector) mv[std::to_string(D)] = m;
                report["modulus_vector"] = mv;
            }
            break;
        } catch (const RoundingFailure&) {
            if (2 * p > prec_cap) throw;
            p *= 2;
        }
    }
    if (p != prec) report["prec_bits_used"] = p;

    if (!perturb.empty()) {
        double eps_num = 0;
        long d0 = 0;
        long en = 0, ed = 1;
        if (sscanf(perturb.c_str(), "%ld,%ld/%ld", &d0, &en, &ed) < 2)
            throw ConfigError("trace: --perturb expects 'd0,eps'");
        (void)eps_num;
        series.add_to(d0 * series.den(), make_q(en, ed));
        report["perturbed"] = perturb;
    }

    report["rounding_report"] = rounding;
    report["series"] = series.to_text();

    bool cert_ok = true;
    if (verify) {
        if (M == 1) {
            long long mp = std::max<long long>(N, 4);
            auto basis = basis_path.empty()
                             ? half_basis(1, (long)mp, N + 10)
                             : scalar_basis_from_text(read_file(basis_path));
            PairingReport rep = verify_modularity(series, basis);
            report["pairing"] = residuals_json(rep);
            cert_ok = rep.pass;
        } else {
            if (twist_delta)
                throw ConfigError("trace: twisted verification is scoped to M=1");
            if (basis_path.empty())
                throw ConfigError("trace: M>1 verification needs --basis (component file)");
            auto basis = vector_basis_from_text(read_file(basis_path));
            PairingReport rep = verify_modularity_vector(components, basis);
            report["pairing"] = residuals_json(rep);
            cert_ok = rep.pass;
        }
    }
    if (timings) report["timings"] = {{"total_s", timer.seconds()}};
    emit(report, out, format);
    return cert_ok ? kExitOk : kExitCertification;
}

int run_basis(const std::string& weight, long M, long max_pole, long long trunc,
              const std::string& out, const std::string& format, bool timings) {
    Timer timer;
    if (weight != "1/2" && weight != "3/2") throw ConfigError("basis: weight must be 1/2 or 3/2");
    auto basis = (weight == "1/2") ? half_basis(M, max_pole, trunc)
                                   : three_halves_basis(M, max_pole, trunc);
    json report;
    report["report_version"] = 1;
    report["command"] = "basis";
    report["weight"] = weight;
    report["M"] = M;
    report["max_pole"] = max_pole;
    report["trunc"] = trunc;
    report["count"] = basis.size();
    report["basis"] = scalar_basis_to_text(basis);
    if (timings) report["timings"] = {{"total_s", timer.seconds()}};
    emit(report, out, format);
    return kExitOk;
}

int run_borcherds(const std::string& fsel, long long trunc, const std::string& refsel,
                  const std::string& out, const std::string& format, bool timings) {
    Timer timer;
    PlusForm f;
    if (fsel == "12theta") {
        f = twelve_theta(std::max<long long>(trunc, 8));
    } else if (fsel == "f3" || (!fsel.empty() && fsel.find_first_not_of("0123456789") ==
                                                      std::string::npos)) {
        long d = (fsel == "f3") ? 3 : std::atol(fsel.c_str());
        auto basis = half_basis(1, std::max(4L, d), std::max<long long>(2 * d + 24, 40));
        const PlusForm* found = nullptr;
        for (auto& b : basis)
            if (b.pole_order() == d) found = &b;
        if (!found) throw ConfigError("borcherds: no basis element with pole " + fsel);
        f = lift_input(*found, basis[0]);
    } else {
        auto fs = scalar_basis_from_text(read_file(fsel));
        if (fs.empty()) throw ConfigError("borcherds: empty basis file");
        f = fs[0];
    }
    BorcherdsProduct prod = lift({f, trunc});

    json report;
    report["report_version"] = 1;
    report["command"] = "borcherds";
    report["f"] = fsel;
    report["trunc"] = trunc;
    report["weyl_exponent"] = to_string(prod.weyl_exponent);
    report["claimed_weight"] = to_string(prod.claimed_weight);
    report["product"] = prod.product_expansion.to_text();

    int rc = kExitOk;
    if (!refsel.empty()) {
        QSeries ref = (refsel == "delta")
                          ? delta_qexp(trunc)
                          : (refsel == "e4") ? e4_qexp(trunc) : QSeries::from_text(read_file(refsel));
        auto [ok, mm] = certify(prod, ref);
        report["reference"] = refsel;
        report["match"] = ok;
        report["first_mismatch"] = mm;
        if (!ok) rc = kExitCertification;
    }
    if (timings) report["timings"] = {{"total_s", timer.seconds()}};
    emit(report, out, format);
    return rc;
}

int run_classdata(long d, long M, const std::string& out, const std::string& format,
                  bool timings) {
    Timer timer;
    auto reps = class_reps(d, M);
    json report;
    report["report_version"] = 1;
    report["command"] = "classdata";
    report["d"] = d;
    report["M"] = M;
    json cl = json::array();
    for (auto& [Q, w] : reps) {
        cl.push_back({{"a", Q.a.get_str()}, {"b", Q.b.get_str()}, {"c", Q.c.get_str()}, {"w", w}});
    }
    report["classes"] = cl;
    if (timings) report["timings"] = {{"total_s", timer.seconds()}};
    emit(report, out, format);
    return kExitOk;
}

int run_verify(const std::string& series_path, long max_pole, long long trunc,
               const std::string& basis_path, const std::string& out,
               const std::string& format, bool timings) {
    Timer timer;
    QSeries g = QSeries::from_text(read_file(series_path));
    auto basis = basis_path.empty() ? half_basis(1, max_pole, trunc)
                                    : scalar_basis_from_text(read_file(basis_path));
    PairingReport rep = verify_modularity(g, basis);
    json report;
    report["report_version"] = 1;
    report["command"] = "verify";
    report["series"] = series_path;
    report["pairing"] = residuals_json(rep);
    if (timings) report["timings"] = {{"total_s", timer.seconds()}};
    emit(report, out, format);
    return rep.pass ? kExitOk : kExitCertification;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"traces of singular moduli over Heegner divisors on X_0(M)"};
    app.require_subcommand(1);

    std::string out, format = "json", basis_path, twist, perturb, inject;
    bool timings = false, verify = false;
    long M = 1, prec = default_prec(), prec_cap = 4096, max_pole = 20, d = 3;
    long long N = 20, trunc = 60;
    std::string fname = "J", weight = "1/2", fsel = "12theta", refsel, series_path;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out", out, "write the report to this path");
        sub->add_option("--format", format, "json|text")->check(CLI::IsMember({"json", "text"}));
        sub->add_flag("--timings", timings, "include wall-clock timings in the report");
    };

    CLI::App* tr = app.add_subcommand("trace", "assemble the trace generating series");
    tr->add_option("--M", M, "squarefree level");
    tr->add_option("--F", fname, "catalog name (J, m2, ...) or s-expression file");
    tr->add_option("--N", N, "truncation: coefficients up to q^N");
    tr->add_option("--prec", prec, "working precision in bits");
    tr->add_option("--prec-cap", prec_cap, "auto-retry precision cap");
    tr->add_flag("--verify", verify, "certify modularity via the pairing criterion");
    tr->add_option("--basis", basis_path, "basis file (required for M>1 verification)");
    tr->add_option("--twist", twist, "genus-character twist 'Delta,r'");
    tr->add_option("--perturb", perturb, "testing hook: add eps*q^d0 ('d0,num/den')")
        ->group("");
    tr->add_option("--inject-failure", inject, "testing hook: rounding|precision")->group("");
    add_common(tr);

    CLI::App* ba = app.add_subcommand("basis", "construct plus-space bases (M=1)");
    ba->add_option("--weight", weight, "1/2 or 3/2");
    ba->add_option("--M", M, "level (automatic construction is scoped to 1)");
    ba->add_option("--max-pole", max_pole, "largest pole order");
    ba->add_option("--trunc", trunc, "series truncation");
    add_common(ba);

    CLI::App* bo = app.add_subcommand("borcherds", "Borcherds product expansion");
    bo->add_option("--f", fsel, "12theta, f3, a pole order, or a basis file");
    bo->add_option("--trunc", trunc, "product expansion truncation");
    bo->add_option("--reference", refsel, "delta, e4, or a qseries file");
    add_common(bo);

    CLI::App* cd = app.add_subcommand("classdata", "Gamma_0(M)-classes of forms");
    cd->add_option("--d", d, "positive discriminant -d");
    cd->add_option("--M", M, "squarefree level");
    add_common(cd);

    CLI::App* ve = app.add_subcommand("verify", "verify a series file against a basis");
    ve->add_option("--series", series_path, "qseries text file")->required();
    ve->add_option("--max-pole", max_pole, "basis pole bound");
    ve->add_option("--trunc", trunc, "basis truncation");
    ve->add_option("--basis", basis_path, "scalar basis file (default: construct)");
    add_common(ve);

    CLI11_PARSE(app, argc, argv);

    try {
        if (tr->parsed())
            return run_trace(M, fname, N, prec, prec_cap, verify, basis_path, twist, perturb,
                             inject, out, format, timings);
        if (ba->parsed()) return run_basis(weight, M, max_pole, trunc, out, format, timings);
        if (bo->parsed()) return run_borcherds(fsel, trunc, refsel, out, format, timings);
        if (cd->parsed()) return run_classdata(d, M, out, format, timings);
        if (ve->parsed())
            return run_verify(series_path, max_pole, trunc, basis_path, out, format, timings);
    } catch (const ConfigError& e) {
        std::cerr << e.what() << "\n";
        return kExitConfig;
    } catch (const RoundingFailure& e) {
        std::cerr << e.what() << "\n";
        return kExitPrecision;
    } catch (const PrecisionLoss& e) {
        std::cerr << e.what() << "\n";
        return kExitPrecision;
    } catch (const InsufficientTruncation& e) {
        std::cerr << e.what() << "\n";
        return kExitCertification;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
    return kExitConfig;
}
