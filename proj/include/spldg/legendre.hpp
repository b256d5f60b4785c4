#pragma once

#include <span>
#include <vector>

namespace spldg {

// Values and first derivatives of the Legendre polynomials P_0..P_k at t,
// via the three-term recurrence. Normalization P_n(1) = 1.
void legendre_eval(int k, double t, std::span<double> values, std::span<double> derivs);

// 1-D basis values tabulated at a fixed set of reference nodes.
class BasisTable {
public:
    BasisTable(int degree, std::span<const double> nodes);

    int degree() const { return degree_; }
    int n_nodes() const { return n_nodes_; }
    // P_m(node g) and P_m'(node g)
    double val(int g, int m) const { return val_[g * (degree_ + 1) + m]; }
    double der(int g, int m) const { return der_[g * (degree_ + 1) + m]; }

private:
    int degree_ = 0;
    int n_nodes_ = 0;
    std::vector<double> val_, der_;
};

}  // namespace spldg
