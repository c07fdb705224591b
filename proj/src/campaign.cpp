#include "lk/campaign.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "lk/certify.hpp"
#include "lk/freeprob.hpp"
#include "lk/grassmann.hpp"
#include "lk/grunsky.hpp"

namespace lk {

using nlohmann::json;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt(int v) { return std::to_string(v); }

bool ExperimentReport::passed() const {
    return std::all_of(assertions.begin(), assertions.end(), [](const Assertion& a) { return a.pass; });
}

std::string ExperimentReport::csv() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
    out << '\n';
    for (const auto& r : rows) {
        for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << r[i];
        out << '\n';
    }
    return out.str();
}

json ExperimentReport::summary() const {
    json a = json::array();
    for (const auto& x : assertions)
        a.push_back({{"name", x.name}, {"value", x.value}, {"bound", x.bound}, {"pass", x.pass}});
    return {{"campaign", campaign}, {"passed", passed()}, {"assertions", a}, {"meta", meta}};
}

namespace {

void assert_le(ExperimentReport& r, const std::string& name, double value, double bound) {
    r.assertions.push_back({name, value, bound, value <= bound});
}

const FlowConfig& need_flow(const ExperimentConfig& cfg, const std::string& campaign) {
    if (!cfg.flow) throw std::invalid_argument("campaign " + campaign + " needs a flow in the config");
    return *cfg.flow;
}

json base_meta(const ExperimentConfig& cfg) {
    const auto& t = cfg.tol;
    json m = {{"config", cfg.name},
              {"seed", cfg.seed},
              {"orders", {{"N", cfg.N}, {"M", cfg.M}, {"K", cfg.K}, {"n_max", cfg.n_max}}},
              {"grid", cfg.grid},
              {"tolerances",
               {{"cert_slack", t.cert_slack},
                {"bound_slack", t.bound_slack},
                {"grunsky_norm", t.grunsky_norm},
                {"tail_max", t.tail_max},
                {"idempotence", t.idempotence},
                {"selfadjoint", t.selfadjoint},
                {"block", t.block},
                {"fixed_frame", t.fixed_frame},
                {"symmetry", t.symmetry},
                {"b11_formula", t.b11_formula},
                {"generating_identity", t.generating_identity},
                {"ward_z", t.ward_z}}}};
    if (cfg.flow) {
        m["flow"] = cfg.flow->name;
        m["horizon"] = cfg.flow->horizon();
        m["omega_0T"] = cfg.flow->omega(0.0, cfg.flow->horizon());
        m["control"] = cfg.flow->control_spec;
    }
    return m;
}

std::string composition_label(const std::vector<int>& c) {
    std::string s;
    for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "-" : "") + std::to_string(c[i]);
    return s;
}

ExperimentReport run_certify(const ExperimentConfig& cfg) {
    const auto& fl = need_flow(cfg, "certify");
    ExperimentReport rep;
    rep.campaign = "certify";
    rep.meta = base_meta(cfg);
    const auto grid = uniform_grid(fl.horizon(), cfg.grid);
    const auto cr = certify_lk_controlled(fl.driving, fl.omega, grid, cfg.n_max);
    rep.header = {"n", "composition", "inequality", "s", "t", "lhs", "bound", "ratio"};
    for (const auto& r : cr.rows)
        rep.rows.push_back({fmt(r.n), composition_label(r.composition), fmt(r.inequality), fmt(r.s), fmt(r.t), fmt(r.lhs),
                            fmt(r.bound), fmt(r.ratio)});
    for (int n = 1; n <= cfg.n_max; ++n)
        assert_le(rep, "max ratio n=" + std::to_string(n), cr.max_ratio[static_cast<std::size_t>(n)], 1.0 + cfg.tol.cert_slack);
    rep.meta["comparisons"] = cr.comparisons;
    return rep;
}

ExperimentReport run_solve(const ExperimentConfig& cfg) {
    const auto& fl = need_flow(cfg, "solve");
    ExperimentReport rep;
    rep.campaign = "solve";
    rep.meta = base_meta(cfg);
    const auto grid = uniform_grid(fl.horizon(), cfg.solve_grid);
    const auto states = solve_coefficients(fl.driving, grid, cfg.N);
    rep.header = {"t", "n", "re", "im"};
    double a1_err = 0.0;
    for (const auto& st : states) {
        a1_err = std::max(a1_err, std::abs(st.a[1] - std::exp(fl.driving.x0(st.t).real())));
        for (int n = 1; n <= st.order(); ++n)
            rep.rows.push_back({fmt(st.t), fmt(n), fmt(st.a[n].real()), fmt(st.a[n].imag())});
    }
    assert_le(rep, "a_1 = exp(x_0)", a1_err, cfg.tol.a1_exact);
    const double wT = fl.omega(0.0, fl.horizon());
    rep.meta["omega_0T"] = wT;
    if (wT < 0.25) {
        const auto cb = check_coeff_bounds(states, fl.omega);
        assert_le(rep, "coefficient bound ratio", cb.max_ratio, 1.0 + cfg.tol.bound_slack);
        double uni = 0.0, bsum = 0.0;
        for (double v : cb.univalence_sums) uni = std::max(uni, v);
        for (double v : cb.abs_coeff_sums) bsum = std::max(bsum, v);
        rep.assertions.push_back({"univalence surrogate sum n|c_n| (sufficient only)", uni, 1.0, uni < 1.0});
        rep.meta["max_abs_coeff_sum"] = bsum;
    } else {
        rep.meta["coefficient_bounds"] = "skipped: w(0,T) >= 1/4";
    }
    return rep;
}

std::vector<FlowState> flow_states(const FlowConfig& fl, const std::vector<double>& grid, int N) {
    return solve_coefficients(fl.driving, grid, N);
}

std::vector<GrunskyTable> tables_of(const std::vector<FlowState>& states, int M) {
    std::vector<GrunskyTable> out;
    for (const auto& st : states) {
        auto tb = grunsky_coefficients(st.series(), M);
        tb.t = st.t;
        out.push_back(std::move(tb));
    }
    return out;
}

ExperimentReport run_grunsky(const ExperimentConfig& cfg) {
    ExperimentReport rep;
    rep.campaign = "grunsky";
    rep.meta = base_meta(cfg);
    std::vector<FlowState> states;
    const int N = std::max(cfg.N, 2 * cfg.M + 1);
    if (cfg.states_path) {
        states = read_states_csv(*cfg.states_path);
        rep.meta["states"] = *cfg.states_path;
    } else {
        const auto& fl = need_flow(cfg, "grunsky");
        states = flow_states(fl, uniform_grid(fl.horizon(), cfg.grid), N);
    }
    const auto tables = tables_of(states, cfg.M);
    rep.header = {"t", "m", "n", "re", "im"};
    double asym = 0.0, bnorm = 0.0, gen_err = 0.0;
    for (std::size_t i = 0; i < tables.size(); ++i) {
        const auto& tb = tables[i];
        for (int m = 1; m <= tb.M; ++m)
            for (int n = 1; n <= tb.M; ++n)
                rep.rows.push_back({fmt(tb.t), fmt(m), fmt(n), fmt(tb(m, n).real()), fmt(tb(m, n).imag())});
        asym = std::max(asym, tb.asymmetry());
        bnorm = std::max(bnorm, spectral_norm(grunsky_operator(tb)));
        // Faber route: z^{-k} coefficient of Phi_n(F) equals n b_{-n,-k}
        const auto f = states[i].series();
        for (int n = 1; n <= tb.M; ++n) {
            const auto tail = faber_tail(f, n, tb.M);
            for (int k = 1; k <= tb.M; ++k) {
                const cplx ref = double(n) * tb(n, k);
                gen_err = std::max(gen_err, std::abs(tail[k - 1] - ref) / std::max(1e-300, std::max(std::abs(ref), 1e-12)));
            }
        }
    }
    assert_le(rep, "symmetry |b_mn - b_nm|", asym, cfg.tol.symmetry);
    assert_le(rep, "max ||B_t||", bnorm, 1.0 + cfg.tol.grunsky_norm);
    assert_le(rep, "generating identity (relative, floor 1e-12)", gen_err, cfg.tol.generating_identity);
    if (cfg.flow && !cfg.states_path) {
        const auto& fl = *cfg.flow;
        const double T = fl.horizon();
        const double wT = fl.omega(0.0, T);
        const double tail = grunsky_tail_certificate(wT, cfg.M);
        assert_le(rep, "tail certificate", tail, cfg.tol.tail_max);
        const auto gb = check_grunsky_bounds(tables, fl.omega, T, 2 * cfg.M);
        assert_le(rep, "|b11(t)| / (w(0,t)^2/2)", gb.max_ratio_b11, 1.0 + cfg.tol.bound_slack);
        assert_le(rep, "|b11(t)-b11(s)| / (w(s,t) w(0,T))", gb.max_ratio_b11_mod, 1.0 + cfg.tol.bound_slack);
        assert_le(rep, "coefficient majorant ratio, 3 <= m+n", gb.max_ratio_coeff, 1.0 + cfg.tol.bound_slack);
        assert_le(rep, "modulus majorant ratio, 3 <= m+n", gb.max_ratio_modulus, 1.0 + cfg.tol.bound_slack);
        double b11_err = 0.0;
        for (const auto& tb : tables) {
            const cplx formula =
                -std::exp(2.0 * fl.driving.x0(tb.t).real()) * weighted_increment_gl(fl.driving, 2, tb.t);
            b11_err = std::max(b11_err, std::abs(tb(1, 1) - formula));
        }
        assert_le(rep, "b11 vs -e^{2x0} int e^{-2x0} dx2", b11_err, cfg.tol.b11_formula);
        rep.meta["tail_certificate"] = tail;
        rep.meta["worst_coeff_ratio_at"] = {{"m", gb.worst_m}, {"n", gb.worst_n}, {"t", gb.worst_t}};
    }
    json la = json::array();
    for (const auto& tb : tables) la.push_back({{"t", tb.t}, {"re", tb.log_a1.real()}, {"im", tb.log_a1.imag()}});
    rep.meta["log_a1"] = la;
    return rep;
}

ExperimentReport run_continuity(const ExperimentConfig& cfg) {
    const auto& fl = need_flow(cfg, "continuity");
    const double T = fl.horizon();
    const double wT = fl.omega(0.0, T);
    if (!(8.0 * wT < 1.0))
        throw std::domain_error("continuity: hypothesis w(0,T) < 1/8 violated (w(0,T) = " + fmt(wT) + ")");
    ExperimentReport rep;
    rep.campaign = "continuity";
    rep.meta = base_meta(cfg);
    const auto grid = uniform_grid(T, cfg.grid);
    const auto states = flow_states(fl, grid, std::max(cfg.N, 2 * cfg.M + 1));
    const auto tables = tables_of(states, cfg.M);
    std::vector<Snapshot> snaps;
    std::vector<Mat> Bs;
    double idem = 0.0, sadj = 0.0, blk = 0.0, fixed = 0.0;
    for (const auto& tb : tables) {
        const Mat B = grunsky_operator(tb);
        auto s = make_snapshot(tb.t, B);
        idem = std::max(idem, s.P.idempotence_residual);
        sadj = std::max(sadj, s.P.selfadjoint_residual);
        blk = std::max(blk, spectral_norm(s.P.P31 - s.A * B));
        blk = std::max(blk, spectral_norm(s.P.P33 - (Mat::Identity(B.rows(), B.cols()) - s.A)));
        const Mat W = fixed_frame(B), V = annihilated_frame(B);
        fixed = std::max({fixed, spectral_norm(s.Pfull * W - W), spectral_norm(s.Pfull * V)});
        Bs.push_back(B);
        snaps.push_back(std::move(s));
    }
    assert_le(rep, "||P^2 - P||", idem, cfg.tol.idempotence);
    assert_le(rep, "||P - P*||", sadj, cfg.tol.selfadjoint);
    assert_le(rep, "block identities", blk, cfg.tol.block);
    assert_le(rep, "P fixes w_n, kills v_n", fixed, cfg.tol.fixed_frame);

    const auto cr = continuity_experiment(snaps, fl.omega, T, cfg.M);
    rep.header = {"s", "t", "omega", "opnorm", "ratio", "termI", "termII", "termIII", "termIV", "termV"};
    for (const auto& r : cr.rows)
        rep.rows.push_back({fmt(r.s), fmt(r.t), fmt(r.omega), fmt(r.opnorm), fmt(r.ratio), fmt(r.term[0]), fmt(r.term[1]),
                            fmt(r.term[2]), fmt(r.term[3]), fmt(r.term[4])});
    rep.assertions.push_back({"five-term decomposition and term estimates", cr.decomposition_holds ? 0.0 : 1.0, 0.0,
                              cr.decomposition_holds});
    rep.assertions.push_back({"empirical c* finite", cr.c_star, 0.0, std::isfinite(cr.c_star)});
    assert_le(rep, "tail certificate", cr.tail_certificate, cfg.tol.tail_max);
    const auto om = check_operator_modulus(grid, Bs, fl.omega, T);
    assert_le(rep, "||B_t - B_s|| / (c w(s,t))", om.max_ratio_B, 1.0 + cfg.tol.bound_slack);
    assert_le(rep, "||A_t - A_s|| / (2c w(s,t))", om.max_ratio_A, 1.0 + cfg.tol.bound_slack);
    rep.assertions.push_back({"Hilbert-Schmidt chain", om.chain_holds ? 0.0 : 1.0, 0.0, om.chain_holds});
    rep.meta["c_star"] = cr.c_star;
    rep.meta["slope"] = std::isfinite(cr.slope) ? json(cr.slope) : json(nullptr);
    rep.meta["modulus_constant"] = om.c;
    rep.meta["tail_certificate"] = cr.tail_certificate;
    return rep;
}

ExperimentReport run_ward(const ExperimentConfig& cfg) {
    ExperimentReport rep;
    rep.campaign = "ward";
    rep.meta = base_meta(cfg);
    rep.meta["gue"] = {{"N", cfg.ward_N}, {"trials", cfg.trials}, {"entry_variance", "1/N"}};
    const int K = cfg.K;
    const auto ward = ward_second_order(cauchy_from_moments(semicircle_moments(2 * K)), K);
    const auto mc = gue_sample_cov(cfg.ward_N, cfg.trials, K, cfg.seed);
    rep.header = {"m", "n", "alpha_ward", "alpha_mc", "se", "z_score"};
    double worst_z = 0.0;
    for (int m = 1; m <= K; ++m)
        for (int n = 1; n <= K; ++n) {
            const double se = mc.err(m, n);
            const double z = se > 0.0 ? (mc(m, n) - ward(m, n)) / se : 0.0;
            rep.rows.push_back({fmt(m), fmt(n), fmt(ward(m, n)), fmt(mc(m, n)), fmt(se), fmt(z)});
            if (m + n <= 6) worst_z = std::max(worst_z, std::abs(z));
        }
    assert_le(rep, "max |z| for m+n <= 6", worst_z, cfg.tol.ward_z);
    const double a11w = ward(1, 1), a11m = mc(1, 1);
    rep.assertions.push_back({"alpha_11 (Ward) in range", a11w, cfg.tol.alpha11_hi,
                              a11w >= cfg.tol.alpha11_lo && a11w <= cfg.tol.alpha11_hi});
    rep.assertions.push_back({"alpha_11 (Monte Carlo) in range", a11m, cfg.tol.alpha11_hi,
                              a11m >= cfg.tol.alpha11_lo && a11m <= cfg.tol.alpha11_hi});
    const double zmean = mc.mean_se[0] > 0.0 ? std::abs(mc.mean[0]) / mc.mean_se[0] : 0.0;
    assert_le(rep, "|E Tr X| / se", zmean, cfg.tol.ward_z);
    return rep;
}

std::vector<cplx> flow_boundary(const FlowState& st, int samples) {
    std::vector<cplx> z(static_cast<std::size_t>(samples));
    const auto f = st.series();
    for (int j = 0; j < samples; ++j) z[j] = f.eval(std::polar(1.0, 2.0 * M_PI * j / samples));
    return z;
}

ExperimentReport run_moments(const ExperimentConfig& cfg) {
    ExperimentReport rep;
    rep.campaign = "moments";
    rep.meta = base_meta(cfg);
    rep.header = {"label", "t", "k", "re_tk", "im_tk", "re_vk", "im_vk", "t0"};
    auto emit = [&](const std::string& label, const std::string& t, const MomentVector& mv) {
        for (int k = 1; k <= static_cast<int>(mv.tk.size()); ++k)
            rep.rows.push_back({label, t, fmt(k), fmt(mv.tk[k - 1].real()), fmt(mv.tk[k - 1].imag()), fmt(mv.vn[k - 1].real()),
                                fmt(mv.vn[k - 1].imag()), fmt(mv.t0)});
    };
    std::vector<MomentShape> shapes = cfg.shapes;
    if (shapes.empty()) {
        shapes.push_back({"circle", "circle", 1.5, 1.5, cplx(0.0)});
        shapes.push_back({"ellipse", "ellipse", 2.0, 1.0, cplx(0.0)});
        shapes.push_back({"disc", "circle", 1.0, 1.0, cplx(0.3, 0.2)});
    }
    for (const auto& sh : shapes) {
        const auto mv = harmonic_moments(ellipse_boundary(sh.a, sh.b, sh.center, cfg.moment_samples), cfg.moment_K);
        emit(sh.label, "", mv);
        if (sh.kind == "circle") {
            if (sh.center == cplx(0.0)) {
                double worst = 0.0;
                for (auto v : mv.tk) worst = std::max(worst, std::abs(v));
                assert_le(rep, sh.label + ": max |t_k|", worst, cfg.tol.circle_moments);
            }
            assert_le(rep, sh.label + ": |t_0 - r^2|", std::abs(mv.t0 - sh.a * sh.a), cfg.tol.circle_area);
            if (!mv.vn.empty())
                assert_le(rep, sh.label + ": |v_1 - c r^2|", std::abs(mv.vn[0] - sh.center * sh.a * sh.a), cfg.tol.circle_area);
        }
    }
    if (cfg.flow) {
        const auto& fl = *cfg.flow;
        const auto grid = uniform_grid(fl.horizon(), cfg.grid);
        const auto states = flow_states(fl, grid, cfg.N);
        std::vector<MomentVector> mvs;
        for (const auto& st : states) {
            mvs.push_back(harmonic_moments(flow_boundary(st, cfg.moment_samples), cfg.moment_K));
            emit(fl.name, fmt(st.t), mvs.back());
        }
        // empirical constants C_k with |t_k(t) - t_k(s)| <= C_k w(s,t), reported only
        json ck = json::array();
        for (int k = 1; k <= cfg.moment_K; ++k) {
            double c = 0.0;
            for (std::size_t i = 0; i < states.size(); ++i)
                for (std::size_t j = i + 1; j < states.size(); ++j) {
                    const double w = fl.omega(states[i].t, states[j].t);
                    if (w > 0.0) c = std::max(c, std::abs(mvs[j].tk[k - 1] - mvs[i].tk[k - 1]) / w);
                }
            ck.push_back(c);
        }
        rep.meta["flow_moment_constants"] = ck;
    }
    return rep;
}

}  // namespace

ExperimentReport run_campaign(const ExperimentConfig& cfg, const std::string& campaign) {
    if (campaign == "certify") return run_certify(cfg);
    if (campaign == "solve") return run_solve(cfg);
    if (campaign == "grunsky") return run_grunsky(cfg);
    if (campaign == "continuity") return run_continuity(cfg);
    if (campaign == "ward") return run_ward(cfg);
    if (campaign == "moments") return run_moments(cfg);
    throw std::invalid_argument("unknown campaign \"" + campaign + "\"");
}

std::vector<FlowState> read_states_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open states file " + path);
    std::string line;
    std::getline(in, line);
    if (line.rfind("t,n,re,im", 0) != 0) throw std::invalid_argument("states file must start with header t,n,re,im");
    std::map<double, std::map<int, cplx>> rows;
    std::vector<double> order;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string a, b, c, d;
        std::getline(ls, a, ',');
        std::getline(ls, b, ',');
        std::getline(ls, c, ',');
        std::getline(ls, d, ',');
        const double t = std::stod(a);
        if (!rows.count(t)) order.push_back(t);
        rows[t][std::stoi(b)] = cplx(std::stod(c), std::stod(d));
    }
    std::vector<FlowState> out;
    for (double t : order) {
        const auto& r = rows[t];
        FlowState st;
        st.t = t;
        const int N = r.rbegin()->first;
        st.a.assign(static_cast<std::size_t>(N) + 1, cplx(0.0));
        for (const auto& [n, v] : r) st.a.at(static_cast<std::size_t>(n)) = v;
        out.push_back(std::move(st));
    }
    return out;
}

}  // namespace lk
