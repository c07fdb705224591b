#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"

#include "lk/path.hpp"

namespace lk {

// Superadditive modulus omega(s, t) on [0, T], evaluated behaviourally.
class ControlFunction {
public:
    using Eval = std::function<double(double, double)>;

    ControlFunction();

    static ControlFunction linear_rate(double rate);
    static ControlFunction from_path_variation(PiecewisePath y);
    // r (t^p - s^p), 0 < p <= 1
    static ControlFunction power_increment(double rate, double exponent);
    // e^{w0} (w0 + w)
    static ControlFunction composed(const ControlFunction& w0, const ControlFunction& w);
    static ControlFunction scaled(double c, const ControlFunction& w);
    static ControlFunction sum(const std::vector<ControlFunction>& terms);
    // Arbitrary callable; used for test moduli that may fail the axioms.
    static ControlFunction custom(std::string description, Eval f);

    double operator()(double s, double t) const { return eval_(s, t); }
    const std::string& kind() const { return kind_; }
    const nlohmann::json& params() const { return params_; }

private:
    ControlFunction(std::string kind, nlohmann::json params, Eval f);

    std::string kind_;
    nlohmann::json params_;
    Eval eval_;
};

ControlFunction compose_control(const ControlFunction& w0, const ControlFunction& w);

struct SuperadditivityReport {
    double max_violation = 0.0;  // max of w(s,u) + w(u,t) - w(s,t)
    double max_diagonal = 0.0;   // max |w(t,t)|
    double worst_s = 0.0, worst_u = 0.0, worst_t = 0.0;
    long long triples = 0;

    bool passes(double tol = 1e-12) const { return max_violation <= tol && max_diagonal <= tol; }
};

// All ordered triples s <= u <= t drawn from the grid.
SuperadditivityReport check_superadditive(const ControlFunction& w, const std::vector<double>& grid);

// Explicit triples, e.g. random samples.
struct Triple {
    double s, u, t;
};
SuperadditivityReport check_superadditive(const ControlFunction& w, const std::vector<Triple>& triples);

// Largest ratio n! / (prod (i_j - 1)! prod (i_1 + ... + i_j)) over compositions (i_1..i_p) of n.
double composition_weight_max(int n);

// Constant c for which c (w0 + w) e^{w0} certifies drivings built from
// w-controlled generators, for all levels n <= n_max on [0, T].
double generator_constant(int n_max, double w0_total, double w_total);

}  // namespace lk
