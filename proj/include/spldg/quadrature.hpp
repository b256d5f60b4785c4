#pragma once

#include <vector>

namespace spldg {

// Gauss-Legendre rule on [-1,1]; exact for polynomials of degree <= 2n-1.
struct QuadRule {
    int order = 0;
    std::vector<double> nodes;    // ascending, in (-1,1)
    std::vector<double> weights;  // positive, symmetric, sum to 2
};

// n in [1,32]. Nodes are the roots of the Legendre polynomial P_n, found by
// Newton iteration from Chebyshev initial guesses (tolerance 1e-15).
QuadRule gauss_legendre(int n);

}  // namespace spldg
