#include "spldg/legendre.hpp"

#include <cassert>
#include <stdexcept>

namespace spldg {

void legendre_eval(int k, double t, std::span<double> values, std::span<double> derivs) {
    assert(static_cast<int>(values.size()) >= k + 1);
    assert(static_cast<int>(derivs.size()) >= k + 1);
    values[0] = 1.0;
    derivs[0] = 0.0;
    if (k == 0) return;
    values[1] = t;
    derivs[1] = 1.0;
    for (int n = 1; n < k; ++n) {
        values[n + 1] = ((2 * n + 1) * t * values[n] - n * values[n - 1]) / (n + 1);
    }
    // P'_{n} = P'_{n-2} + (2n-1) P_{n-1}; stable at t = +-1 as well
    for (int n = 2; n <= k; ++n) {
        derivs[n] = derivs[n - 2] + (2 * n - 1) * values[n - 1];
    }
}

BasisTable::BasisTable(int degree, std::span<const double> nodes)
    : degree_(degree), n_nodes_(static_cast<int>(nodes.size())) {
    if (degree < 0) throw std::invalid_argument("BasisTable: negative degree");
    val_.resize(static_cast<size_t>(n_nodes_) * (degree_ + 1));
    der_.resize(val_.size());
    for (int g = 0; g < n_nodes_; ++g) {
        legendre_eval(degree_, nodes[g],
                      std::span<double>(&val_[g * (degree_ + 1)], degree_ + 1),
                      std::span<double>(&der_[g * (degree_ + 1)], degree_ + 1));
    }
}

}  // namespace spldg
