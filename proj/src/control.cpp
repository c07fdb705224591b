#include "lk/control.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lk {

ControlFunction::ControlFunction() : ControlFunction("zero", nlohmann::json::object(), [](double, double) { return 0.0; }) {}

ControlFunction::ControlFunction(std::string kind, nlohmann::json params, Eval f)
    : kind_(std::move(kind)), params_(std::move(params)), eval_(std::move(f)) {}

ControlFunction ControlFunction::linear_rate(double rate) {
    if (!(rate >= 0.0)) throw std::invalid_argument("linear_rate: rate must be nonnegative");
    return ControlFunction("linear_rate", {{"rate", rate}}, [rate](double s, double t) { return rate * (t - s); });
}

ControlFunction ControlFunction::from_path_variation(PiecewisePath y) {
    // Cumulative variation at the knots; between knots the variation of a
    // linear piece grows linearly, so w(s,t) = V(t) - V(s) exactly.
    if (!y.is_linear()) {
        auto p = std::make_shared<PiecewisePath>(std::move(y));
        return ControlFunction("from_path_variation", {{"linear", false}},
                               [p](double s, double t) { return one_variation(*p, s, t); });
    }
    auto path = std::make_shared<PiecewisePath>(std::move(y));
    auto cum = std::make_shared<std::vector<double>>(path->knots().size(), 0.0);
    for (std::size_t i = 0; i + 1 < path->knots().size(); ++i) {
        const auto& seg = path->segments()[i];
        (*cum)[i + 1] = (*cum)[i] + (seg.size() > 1 ? std::abs(seg[1]) : 0.0);
    }
    auto V = [path, cum](double t) {
        const int i = path->segment_of(t);
        const auto& kn = path->knots();
        const auto& seg = path->segments()[i];
        const double frac = std::clamp((t - kn[i]) / (kn[i + 1] - kn[i]), 0.0, 1.0);
        return (*cum)[i] + frac * (seg.size() > 1 ? std::abs(seg[1]) : 0.0);
    };
    return ControlFunction("from_path_variation", {{"linear", true}, {"total", cum->back()}},
                           [V](double s, double t) { return s >= t ? 0.0 : V(t) - V(s); });
}

ControlFunction ControlFunction::power_increment(double rate, double exponent) {
    if (!(rate >= 0.0)) throw std::invalid_argument("power_increment: rate must be nonnegative");
    if (!(exponent > 0.0 && exponent <= 1.0)) throw std::invalid_argument("power_increment: exponent must lie in (0,1]");
    return ControlFunction("power_increment", {{"rate", rate}, {"exponent", exponent}},
                           [rate, exponent](double s, double t) {
                               return s >= t ? 0.0 : rate * (std::pow(t, exponent) - std::pow(s, exponent));
                           });
}

ControlFunction ControlFunction::composed(const ControlFunction& w0, const ControlFunction& w) {
    return ControlFunction("composed", {{"omega0", w0.kind()}, {"omega", w.kind()}}, [w0, w](double s, double t) {
        const double a = w0(s, t);
        return std::exp(a) * (a + w(s, t));
    });
}

ControlFunction ControlFunction::scaled(double c, const ControlFunction& w) {
    if (!(c > 0.0)) throw std::invalid_argument("scaled: factor must be positive");
    return ControlFunction("scaled", {{"factor", c}, {"omega", w.kind()}}, [c, w](double s, double t) { return c * w(s, t); });
}

ControlFunction ControlFunction::sum(const std::vector<ControlFunction>& terms) {
    nlohmann::json kinds = nlohmann::json::array();
    for (const auto& t : terms) kinds.push_back(t.kind());
    return ControlFunction("sum", {{"terms", kinds}}, [terms](double s, double t) {
        double acc = 0.0;
        for (const auto& w : terms) acc += w(s, t);
        return acc;
    });
}

ControlFunction ControlFunction::custom(std::string description, Eval f) {
    return ControlFunction("custom", {{"description", std::move(description)}}, std::move(f));
}

ControlFunction compose_control(const ControlFunction& w0, const ControlFunction& w) {
    return ControlFunction::composed(w0, w);
}

namespace {

void account(SuperadditivityReport& r, const ControlFunction& w, double s, double u, double t) {
    const double v = w(s, u) + w(u, t) - w(s, t);
    if (r.triples == 0 || v > r.max_violation) {
        r.max_violation = v;
        r.worst_s = s;
        r.worst_u = u;
        r.worst_t = t;
    }
    ++r.triples;
}

}  // namespace

SuperadditivityReport check_superadditive(const ControlFunction& w, const std::vector<double>& grid) {
    if (grid.empty()) throw std::invalid_argument("check_superadditive: empty grid");
    std::vector<double> g(grid);
    std::sort(g.begin(), g.end());
    SuperadditivityReport r;
    for (double t : g) r.max_diagonal = std::max(r.max_diagonal, std::abs(w(t, t)));
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = i; j < g.size(); ++j)
            for (std::size_t k = j; k < g.size(); ++k) account(r, w, g[i], g[j], g[k]);
    r.max_violation = std::max(r.max_violation, 0.0);
    return r;
}

SuperadditivityReport check_superadditive(const ControlFunction& w, const std::vector<Triple>& triples) {
    if (triples.empty()) throw std::invalid_argument("check_superadditive: no triples");
    SuperadditivityReport r;
    for (const auto& tr : triples) {
        if (!(tr.s <= tr.u && tr.u <= tr.t)) throw std::invalid_argument("check_superadditive: triple not ordered");
        r.max_diagonal = std::max({r.max_diagonal, std::abs(w(tr.s, tr.s)), std::abs(w(tr.t, tr.t))});
        account(r, w, tr.s, tr.u, tr.t);
    }
    r.max_violation = std::max(r.max_violation, 0.0);
    return r;
}

double composition_weight_max(int n) {
    if (n < 1) throw std::invalid_argument("composition_weight_max: n must be positive");
    // Enumerate compositions through their bitmask of cut points.
    double best = 0.0;
    const double nfact = std::tgamma(n + 1.0);
    for (unsigned mask = 0; mask < (1u << (n - 1)); ++mask) {
        double denom = 1.0;
        int part = 1, partial = 0;
        for (int pos = 1; pos <= n; ++pos) {
            const bool cut = pos == n || (mask >> (pos - 1)) & 1u;
            if (!cut) {
                ++part;
                continue;
            }
            partial += part;
            denom *= std::tgamma(double(part)) * partial;
            part = 1;
        }
        best = std::max(best, nfact / denom);
    }
    return best;
}

double generator_constant(int n_max, double w0_total, double w_total) {
    double c = 0.0;
    const double base = std::exp(w0_total) * std::max(1.0, w0_total + w_total);
    for (int n = 1; n <= n_max; ++n) c = std::max(c, std::pow(composition_weight_max(n) * base, 1.0 / n));
    return c;
}

}  // namespace lk
