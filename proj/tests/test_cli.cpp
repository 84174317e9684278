// CLI contract tests: exit codes per failure class and byte-identical
// reports for identical configurations. Driven through the real binary.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "smt/plusspace.hpp"

static int failures = 0;
static std::string bin;

static int run(const std::string& args, std::string* output = nullptr) {
    std::string cmd = bin + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) {
        std::cerr << "popen failed\n";
        return -1;
    }
    std::string out;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
    int rc = pclose(p);
    if (output) *output = out;
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

#define EXPECT(cond, msg)                                             \
    do {                                                              \
        if (!(cond)) {                                                \
            std::cerr << "FAIL: " << msg << "\n";                     \
            ++failures;                                               \
        }                                                             \
    } while (0)

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: test_cli <smtrace binary>\n";
        return 2;
    }
    bin = argv[1];

    // exit 0 and certified output
    std::string out1, out2;
    int rc = run("trace --M 1 --F J --N 12 --verify", &out1);
    EXPECT(rc == 0, "trace --verify should exit 0, got " << rc);
    EXPECT(out1.find("\"pass\": true") != std::string::npos, "verification must pass");

    // determinism: byte-identical reports
    rc = run("trace --M 1 --F J --N 12 --verify", &out2);
    EXPECT(rc == 0, "second run exit 0");
    EXPECT(out1 == out2, "reports must be byte-identical for identical configs");

    // config errors: exit 2
    EXPECT(run("trace --M 1 --F J --N 0") == 2, "N=0 is a config error");
    EXPECT(run("trace --M 4 --F J --N 4") == 2, "M=4 not squarefree");
    EXPECT(run("trace --M 1 --F J --N 4 --prec 64") == 2, "prec below 128");

    // precision failure class: exit 3
    EXPECT(run("trace --M 1 --F J --N 4 --inject-failure rounding") == 3,
           "rounding failure maps to exit 3");
    EXPECT(run("trace --M 1 --F J --N 4 --inject-failure precision") == 3,
           "precision loss maps to exit 3");

    // certification failure: exit 4 (plus-admissible perturbation)
    EXPECT(run("trace --M 1 --F J --N 12 --verify --perturb 4,1/7") == 4,
           "perturbed series must fail certification");

    // borcherds: the two catalog correspondences
    EXPECT(run("borcherds --f 12theta --trunc 60 --reference delta") == 0,
           "lift(12theta) = Delta");
    EXPECT(run("borcherds --f f3 --trunc 25 --reference e4") == 0, "lift(f3) = E4");
    EXPECT(run("borcherds --f 12theta --trunc 40 --reference e4") == 4,
           "wrong reference must exit 4");

    // classdata: h(-23) = 3
    std::string cd;
    rc = run("classdata --d 23 --M 1", &cd);
    EXPECT(rc == 0, "classdata exit 0");
    size_t count = 0;
    for (size_t pos = 0; (pos = cd.find("\"w\"", pos)) != std::string::npos; ++pos) ++count;
    EXPECT(count == 3, "classdata --d 23 should list 3 classes, got " << count);

    // basis: 11 admissible poles up to 20
    std::string bs;
    rc = run("basis --weight 1/2 --max-pole 20 --trunc 40", &bs);
    EXPECT(rc == 0, "basis exit 0");
    EXPECT(bs.find("\"count\": 11") != std::string::npos, "11 forms at max-pole 20");

    // verify subcommand end to end through files
    {
        auto tb = smt::three_halves_basis(1, 8, 40);
        const smt::PlusForm* g1 = nullptr;
        for (auto& g : tb)
            if (g.pole_order() == 1) g1 = &g;
        std::ofstream("/tmp/smt_g1.qs") << g1->series.to_text();
        smt::QSeries pert = g1->series;
        pert.add_to(8, 1);
        std::ofstream("/tmp/smt_g1_bad.qs") << pert.to_text();
    }
    EXPECT(run("verify --series /tmp/smt_g1.qs --max-pole 12 --trunc 40") == 0,
           "g1 verifies");
    EXPECT(run("verify --series /tmp/smt_g1_bad.qs --max-pole 12 --trunc 40") == 4,
           "perturbed g1 fails with exit 4");

    // twisted trace through the CLI
    EXPECT(run("trace --M 1 --F J --N 12 --twist 5,1 --verify") == 0,
           "twisted trace verifies");

    // composite level against the shipped component basis
    if (argc > 2) {
        std::string data = argv[2];
        EXPECT(run("trace --M 6 --F catalog:m6 --N 50 --verify --basis " + data +
                   "/bases/m6.vqs") == 0,
               "M=6 verifies against the shipped basis");
        EXPECT(run("trace --M 2 --F m2 --N 8 --verify") == 2,
               "M>1 verification without a basis is a config error");
    }

    // text format
    std::string txt;
    EXPECT(run("classdata --d 3 --format text", &txt) == 0, "text format exit 0");
    EXPECT(txt.find("command:\nclassdata") != std::string::npos, "text format shape");

    if (failures) {
        std::cerr << failures << " CLI check(s) failed\n";
        return 1;
    }
    std::cout << "all CLI checks passed\n";
    return 0;
}
