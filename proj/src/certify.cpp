#include "lk/certify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace lk {

double CertifyReport::overall() const {
    double m = 0.0;
    for (double r : max_ratio) m = std::max(m, r);
    return m;
}

namespace {

struct Node {
    int parent = -1;
    int part = 0;
    int sum = 0;
};

double safe_ratio(double lhs, double bound) {
    if (bound > 0.0) return lhs / bound;
    return lhs <= 1e-300 ? 0.0 : std::numeric_limits<double>::infinity();
}

}  // namespace

CertifyReport certify_lk_controlled(const DrivingSpec& d, const ControlFunction& omega, const std::vector<double>& grid,
                                    int n_max, int cap) {
    d.validate();
    if (n_max < 1) throw std::invalid_argument("certify: n_max must be positive");
    if (n_max > cap)
        throw std::invalid_argument("certify: n_max = " + std::to_string(n_max) + " exceeds the composition cap " +
                                    std::to_string(cap));
    if (grid.empty()) throw std::invalid_argument("certify: empty grid");
    std::vector<double> times(grid);
    std::sort(times.begin(), times.end());

    // Trie of compositions using only nonzero paths; children append a later-time part.
    std::vector<Node> nodes{Node{}};
    for (std::size_t i = 0; i < nodes.size(); ++i)
        for (int k = 1; nodes[i].sum + k <= n_max; ++k)
            if (d.active(k)) nodes.push_back(Node{static_cast<int>(i), k, nodes[i].sum + k});

    int k_max = 1;
    for (const auto& nd : nodes) k_max = std::max(k_max, nd.part);
    const auto part = sweep_partition(d, times, k_max);
    const int D = local_order(n_max);

    std::vector<cplx> val(nodes.size(), cplx(0.0));
    val[0] = 1.0;
    std::vector<std::vector<cplx>> at(nodes.size(), std::vector<cplx>(times.size(), cplx(0.0)));
    auto record = [&](std::size_t p) {
        for (int idx : part.hits[p])
            for (std::size_t i = 0; i < nodes.size(); ++i) at[i][static_cast<std::size_t>(idx)] = val[i];
    };
    record(0);
    std::vector<TruncatedSeries> F(nodes.size(), TruncatedSeries(D));
    for (std::size_t p = 0; p + 1 < part.points.size(); ++p) {
        LocalFrame frame(d, part.points[p], part.points[p + 1], D);
        F[0] = TruncatedSeries::constant(1.0, D);
        for (std::size_t i = 1; i < nodes.size(); ++i) {
            F[i] = series_mul(F[static_cast<std::size_t>(nodes[i].parent)], frame.weighted_differential(nodes[i].part))
                       .antiderivative();
            F[i][0] += val[i];
            val[i] = end_value(F[i]);
        }
        record(p + 1);
    }

    CertifyReport rep;
    rep.n_max = n_max;
    rep.horizon = d.horizon();
    rep.max_ratio.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
    const double wT = omega(0.0, rep.horizon);
    std::vector<double> x0(times.size());
    for (std::size_t j = 0; j < times.size(); ++j) x0[j] = d.x0(times[j]).real();

    for (std::size_t i = 1; i < nodes.size(); ++i) {
        const int n = nodes[i].sum;
        std::vector<int> comp;
        for (int c = static_cast<int>(i); c > 0; c = nodes[static_cast<std::size_t>(c)].parent)
            comp.push_back(nodes[static_cast<std::size_t>(c)].part);
        std::reverse(comp.begin(), comp.end());
        std::vector<cplx> phi(times.size());
        for (std::size_t j = 0; j < times.size(); ++j) phi[j] = std::exp(n * x0[j]) * at[i][j];
        const double nfact = std::tgamma(n + 1.0), n1fact = std::tgamma(double(n));

        CertifyRow worst1{n, comp, 1}, worst2{n, comp, 2};
        worst1.ratio = worst2.ratio = -1.0;
        for (std::size_t j = 0; j < times.size(); ++j) {
            const double lhs = std::abs(phi[j]);
            const double bound = std::pow(omega(0.0, times[j]), n) / nfact;
            const double r = safe_ratio(lhs, bound);
            ++rep.comparisons;
            if (r > worst1.ratio) {
                worst1.s = 0.0;
                worst1.t = times[j];
                worst1.lhs = lhs;
                worst1.bound = bound;
                worst1.ratio = r;
            }
            for (std::size_t k = j + 1; k < times.size(); ++k) {
                const double lhs2 = std::abs(phi[k] - phi[j]);
                const double bound2 = omega(times[j], times[k]) * std::pow(wT, n - 1) / n1fact;
                const double r2 = safe_ratio(lhs2, bound2);
                ++rep.comparisons;
                if (r2 > worst2.ratio) {
                    worst2.s = times[j];
                    worst2.t = times[k];
                    worst2.lhs = lhs2;
                    worst2.bound = bound2;
                    worst2.ratio = r2;
                }
            }
        }
        rep.max_ratio[static_cast<std::size_t>(n)] = std::max({rep.max_ratio[static_cast<std::size_t>(n)], worst1.ratio, worst2.ratio});
        rep.rows.push_back(worst1);
        if (worst2.ratio >= 0.0) rep.rows.push_back(worst2);
    }
    return rep;
}

}  // namespace lk
