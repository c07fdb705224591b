#pragma once

#include <vector>

#include "lk/control.hpp"
#include "lk/driving.hpp"

namespace lk {

constexpr int kCompositionCap = 8;

// Worst grid point for one composition and one of the two inequalities
// (1: pointwise bound w(0,t)^n/n!, 2: increment bound w(s,t) w(0,T)^{n-1}/(n-1)!).
struct CertifyRow {
    int n = 0;
    std::vector<int> composition;
    int inequality = 1;
    double s = 0.0, t = 0.0;
    double lhs = 0.0, bound = 0.0, ratio = 0.0;
};

struct CertifyReport {
    int n_max = 0;
    double horizon = 0.0;
    std::vector<double> max_ratio;  // indexed by n, entry 0 unused
    std::vector<CertifyRow> rows;
    long long comparisons = 0;

    double overall() const;
    bool passes(double slack = 1e-9) const { return overall() <= 1.0 + slack; }
};

// Missing or identically zero x_k are treated as zero paths.
CertifyReport certify_lk_controlled(const DrivingSpec& d, const ControlFunction& omega, const std::vector<double>& grid,
                                    int n_max, int cap = kCompositionCap);

}  // namespace lk
