// Generates the shipped weight-1/2 component bases (j^k Theta family) for
// composite/prime levels; deterministic, so the data files are reproducible.

#include <fstream>
#include <iostream>

#include "smt/plusspace.hpp"

using namespace smt;

int main(int argc, char** argv) {
    if (argc < 4) {
        std::cerr << "usage: gen_vector_basis <M> <kmax> <trunc_int> [out]\n";
        return 2;
    }
    long M = std::atol(argv[1]);
    long kmax = std::atol(argv[2]);
    long long trunc = std::atoll(argv[3]);
    auto fam = theta_j_family(M, kmax, trunc);
    std::string text = vector_basis_to_text(fam);
    if (argc > 4) {
        std::ofstream out(argv[4]);
        out << text;
    } else {
        std::cout << text;
    }
    return 0;
}
