#include "lk/loewner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace lk {

std::vector<FlowState> solve_coefficients(const DrivingSpec& d, const std::vector<double>& t_grid, int N) {
    d.validate();
    if (N < 1 || N > kMaxSolveOrder)
        throw std::invalid_argument("solve_coefficients: order must lie in [1, " + std::to_string(kMaxSolveOrder) + "]");
    std::vector<int> act;
    for (int k = 1; k < N; ++k)
        if (d.active(k)) act.push_back(k);
    const int k_max = act.empty() ? 1 : act.back();
    const auto part = sweep_partition(d, t_grid, k_max);
    const int D = local_order(N);

    std::vector<cplx> u(N + 1, cplx(0.0));
    u[1] = 1.0;
    std::vector<FlowState> states(t_grid.size());
    auto record = [&](std::size_t p) {
        for (int idx : part.hits[p]) {
            const double t = t_grid[static_cast<std::size_t>(idx)];
            const double x0 = d.x0(t).real();
            auto& st = states[static_cast<std::size_t>(idx)];
            st.t = t;
            st.a.assign(N + 1, cplx(0.0));
            for (int n = 1; n <= N; ++n) st.a[n] = std::exp(n * x0) * u[n];
        }
    };
    record(0);

    std::vector<TruncatedSeries> U(N + 1, TruncatedSeries(D));
    std::vector<bool> nonzero(N + 1, false);
    for (std::size_t p = 0; p + 1 < part.points.size(); ++p) {
        LocalFrame frame(d, part.points[p], part.points[p + 1], D);
        U[1] = TruncatedSeries::constant(1.0, D);
        nonzero[1] = true;
        for (int n = 2; n <= N; ++n) {
            TruncatedSeries acc(D);
            bool any = false;
            for (int k : act) {
                if (k >= n) break;
                if (!nonzero[n - k]) continue;
                acc += series_mul(U[n - k], frame.weighted_differential(k)) * cplx(double(n - k));
                any = true;
            }
            U[n] = acc.antiderivative();
            U[n][0] += u[n];
            nonzero[n] = any || u[n] != cplx(0.0);
            u[n] = end_value(U[n]);
        }
        record(p + 1);
    }
    return states;
}

namespace {

void compositions(int n, int max_part, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (n == 0) {
        out.push_back(cur);
        return;
    }
    for (int i = 1; i <= std::min(n, max_part); ++i) {
        cur.push_back(i);
        compositions(n - i, max_part, cur, out);
        cur.pop_back();
    }
}

// int_{u_1<...<u_p<=t} prod_j e^{-i_j x_0(u_j)} dx_{i_j}(u_j)
cplx weighted_chain(const DrivingSpec& d, const std::vector<int>& comp, double t) {
    const int k_max = *std::max_element(comp.begin(), comp.end());
    const auto part = sweep_partition(d, {t}, k_max);
    const int D = local_order(static_cast<int>(comp.size()) * 2 + 2);
    std::vector<cplx> level(comp.size() + 1, cplx(0.0));
    level[0] = 1.0;
    for (std::size_t p = 0; p + 1 < part.points.size() && part.points[p] < t; ++p) {
        LocalFrame frame(d, part.points[p], part.points[p + 1], D);
        TruncatedSeries run = TruncatedSeries::constant(1.0, D);
        for (std::size_t j = 0; j < comp.size(); ++j) {
            run = series_mul(run, frame.weighted_differential(comp[j])).antiderivative();
            run[0] += level[j + 1];
            level[j + 1] = end_value(run);
        }
        if (!part.hits[p + 1].empty()) break;
    }
    return level.back();
}

}  // namespace

cplx coeff_closed_form(const DrivingSpec& d, double t, int n) {
    d.validate();
    if (n < 1 || n > kClosedFormMaxN)
        throw std::invalid_argument("coeff_closed_form: n must lie in [1, " + std::to_string(kClosedFormMaxN) + "]");
    const double x0 = d.x0(t).real();
    if (n == 1) return std::exp(x0);
    std::vector<std::vector<int>> comps;
    std::vector<int> cur;
    compositions(n - 1, d.K(), cur, comps);
    cplx total(0.0);
    for (const auto& c : comps) {
        bool zero = false;
        for (int i : c) zero = zero || d.active(i) == nullptr;
        if (zero) continue;
        double w = 1.0;
        int partial = 0;
        for (int i : c) {
            w *= 1.0 + partial;
            partial += i;
        }
        total += w * weighted_chain(d, c, t);
    }
    return std::exp(n * x0) * total;
}

CoeffBoundReport check_coeff_bounds(const std::vector<FlowState>& states, const ControlFunction& omega) {
    CoeffBoundReport rep;
    for (const auto& st : states) {
        const double w = omega(0.0, st.t);
        rep.omega_total = std::max(rep.omega_total, w);
        const cplx a1 = st.a.at(1);
        double uni = 0.0, abs_sum = 1.0;
        for (int n = 1; n + 1 <= st.order(); ++n) {
            CoeffBoundRow row;
            row.t = st.t;
            row.n = n;
            row.value = std::abs(st.a[n + 1] / a1);
            row.bound = n * std::pow(4.0 * w, n) / 4.0;
            if (row.bound > 0.0)
                row.ratio = row.value / row.bound;
            else
                row.ratio = row.value == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
            rep.max_ratio = std::max(rep.max_ratio, row.ratio);
            uni += (n + 1) * row.value;
            abs_sum += row.value;
            rep.rows.push_back(row);
        }
        rep.univalence_sums.push_back(uni);
        rep.abs_coeff_sums.push_back(abs_sum);
        rep.univalence_surrogate = rep.univalence_surrogate && uni < 1.0;
    }
    return rep;
}

}  // namespace lk
