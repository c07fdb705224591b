#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>

#include "lk/campaign.hpp"

namespace lk {

using nlohmann::json;

namespace {

cplx parse_complex(const json& v) {
    if (v.is_number()) return cplx(v.get<double>(), 0.0);
    if (v.is_array() && v.size() == 2) return cplx(v[0].get<double>(), v[1].get<double>());
    throw std::invalid_argument("expected a number or an [re, im] pair, got " + v.dump());
}

}  // namespace

PiecewisePath parse_path(const json& j) {
    if (!j.contains("knots") || !j.contains("values")) throw std::invalid_argument("path needs \"knots\" and \"values\"");
    std::vector<double> knots = j.at("knots").get<std::vector<double>>();
    std::vector<cplx> values;
    for (const auto& v : j.at("values")) values.push_back(parse_complex(v));
    return PiecewisePath(std::move(knots), std::move(values));
}

json path_to_json(const PiecewisePath& p) {
    if (!p.is_linear()) throw std::invalid_argument("only piecewise-linear paths serialize to knots/values");
    json vals = json::array();
    for (auto v : p.knot_values()) vals.push_back({v.real(), v.imag()});
    return {{"knots", p.knots()}, {"values", vals}};
}

ControlFunction parse_control(const json& j, const DrivingSpec* driving, int n_max) {
    const std::string kind = j.value("kind", "");
    if (kind == "linear_rate") return ControlFunction::linear_rate(j.value("rate", 1.0));
    if (kind == "power_increment") return ControlFunction::power_increment(j.at("rate").get<double>(), j.value("exponent", 0.5));
    if (kind == "from_path_variation") return ControlFunction::from_path_variation(parse_path(j.at("path")));
    if (kind == "scaled") return ControlFunction::scaled(j.at("factor").get<double>(), parse_control(j.at("omega"), driving, n_max));
    if (kind == "composed")
        return ControlFunction::composed(parse_control(j.at("omega0"), driving, n_max), parse_control(j.at("omega"), driving, n_max));
    if (kind == "sum") {
        std::vector<ControlFunction> terms;
        for (const auto& t : j.at("terms")) terms.push_back(parse_control(t, driving, n_max));
        return ControlFunction::sum(terms);
    }
    if (kind == "generated") {
        // c (w0 + w) e^{w0} built from the generator data of the driving
        if (driving == nullptr || !driving->generator)
            throw std::invalid_argument("control kind \"generated\" needs a flow with generator paths");
        const auto& g = *driving->generator;
        const double T = driving->horizon();
        const double c = generator_constant(n_max, g.omega0(0.0, T), g.omega(0.0, T));
        return ControlFunction::scaled(c, ControlFunction::composed(g.omega0, g.omega));
    }
    throw std::invalid_argument("unknown control kind \"" + kind + "\"");
}

FlowConfig parse_flow(const json& flow, const json& control, int n_max) {
    FlowConfig fc;
    fc.name = flow.value("name", "flow");
    const double T = flow.at("horizon").get<double>();
    if (!(T > 0.0)) throw std::invalid_argument("flow horizon must be positive");
    PiecewisePath x0 = flow.contains("x0") ? parse_path(flow.at("x0")) : PiecewisePath::zero(T);
    if (std::abs(x0.horizon() - T) > 1e-12 * std::max(1.0, T)) throw std::invalid_argument("x0 horizon differs from flow horizon");
    if (flow.contains("generator")) {
        const auto& gen = flow.at("generator");
        std::vector<std::vector<PiecewisePath>> ys;
        std::vector<PiecewisePath> all;
        for (const auto& level : gen.at("y")) {
            std::vector<PiecewisePath> lv;
            for (const auto& p : level) lv.push_back(parse_path(p));
            all.insert(all.end(), lv.begin(), lv.end());
            ys.push_back(std::move(lv));
        }
        ControlFunction omega;
        if (gen.contains("omega")) {
            omega = parse_control(gen.at("omega"), nullptr, n_max);
        } else {
            std::vector<ControlFunction> terms;
            for (const auto& y : all) terms.push_back(ControlFunction::from_path_variation(y));
            omega = ControlFunction::sum(terms);
        }
        ControlFunction omega0 =
            gen.contains("omega0") ? parse_control(gen.at("omega0"), nullptr, n_max) : ControlFunction::from_path_variation(x0);
        fc.driving = make_driving(ys, omega, x0, omega0);
    } else {
        fc.driving.x0 = x0;
        for (const auto& p : flow.at("x")) fc.driving.x.push_back(parse_path(p));
        fc.driving.validate();
    }
    fc.control_spec = control;
    fc.omega = parse_control(control, &fc.driving, n_max);
    return fc;
}

ExperimentConfig parse_config(const json& j) {
    ExperimentConfig c;
    c.name = j.value("name", c.name);
    if (j.contains("orders")) {
        const auto& o = j.at("orders");
        c.N = o.value("N", c.N);
        c.M = o.value("M", c.M);
        c.K = o.value("K", c.K);
        c.n_max = o.value("n_max", c.n_max);
    }
    c.grid = j.value("grid", c.grid);
    c.solve_grid = j.value("solve_grid", c.solve_grid);
    c.seed = j.value("seed", c.seed);
    if (j.contains("ward")) {
        c.ward_N = j.at("ward").value("N", c.ward_N);
        c.trials = j.at("ward").value("trials", c.trials);
    }
    if (j.contains("moments")) {
        const auto& m = j.at("moments");
        c.moment_samples = m.value("samples", c.moment_samples);
        c.moment_K = m.value("K", c.moment_K);
        if (m.contains("shapes"))
            for (const auto& s : m.at("shapes")) {
                MomentShape sh;
                sh.kind = s.at("kind").get<std::string>();
                sh.label = s.value("label", sh.kind);
                if (sh.kind == "circle") {
                    sh.a = sh.b = s.at("r").get<double>();
                } else if (sh.kind == "ellipse") {
                    sh.a = s.at("a").get<double>();
                    sh.b = s.at("b").get<double>();
                } else {
                    throw std::invalid_argument("unknown moment shape \"" + sh.kind + "\"");
                }
                if (s.contains("center")) sh.center = parse_complex(s.at("center"));
                c.shapes.push_back(sh);
            }
    }
    if (j.contains("tolerances")) {
        const auto& t = j.at("tolerances");
        auto& T = c.tol;
        T.cert_slack = t.value("cert_slack", T.cert_slack);
        T.bound_slack = t.value("bound_slack", T.bound_slack);
        T.grunsky_norm = t.value("grunsky_norm", T.grunsky_norm);
        T.tail_max = t.value("tail_max", T.tail_max);
        T.idempotence = t.value("idempotence", T.idempotence);
        T.selfadjoint = t.value("selfadjoint", T.selfadjoint);
        T.block = t.value("block", T.block);
        T.fixed_frame = t.value("fixed_frame", T.fixed_frame);
        T.symmetry = t.value("symmetry", T.symmetry);
        T.b11_formula = t.value("b11_formula", T.b11_formula);
        T.generating_identity = t.value("generating_identity", T.generating_identity);
        T.a1_exact = t.value("a1_exact", T.a1_exact);
        T.ward_z = t.value("ward_z", T.ward_z);
        T.alpha11_lo = t.value("alpha11_lo", T.alpha11_lo);
        T.alpha11_hi = t.value("alpha11_hi", T.alpha11_hi);
        T.circle_moments = t.value("circle_moments", T.circle_moments);
        T.circle_area = t.value("circle_area", T.circle_area);
    }
    if (c.N < 1 || c.N > kMaxSolveOrder) throw std::invalid_argument("orders.N out of range");
    if (c.M < 1 || c.M > 64) throw std::invalid_argument("orders.M out of range [1, 64]");
    if (c.K < 1 || c.K > 16) throw std::invalid_argument("orders.K out of range [1, 16]");
    if (c.n_max < 1 || c.n_max > 12) throw std::invalid_argument("orders.n_max out of range [1, 12]");
    if (c.grid < 2 || c.solve_grid < 2) throw std::invalid_argument("grids need at least two points");
    if (j.contains("states")) {
        const auto states = j.at("states").get<std::string>();
        if (!std::filesystem::exists(states)) throw std::invalid_argument("states file " + states + " does not exist");
        c.states_path = states;
    }
    if (j.contains("flow")) {
        const auto& fl = j.at("flow");
        if (fl.is_string()) throw std::invalid_argument("flow file references are resolved by load_config");
        const json* control = j.contains("control") ? &j.at("control") : fl.contains("control") ? &fl.at("control") : nullptr;
        if (control == nullptr) throw std::invalid_argument("a flow needs a \"control\" entry");
        c.flow = parse_flow(fl, *control, c.n_max);
    }
    return c;
}

namespace {

json read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(path.string() + ": " + e.what());
    }
}

}  // namespace

json resolve_config(const std::string& path) {
    json j = read_json(path);
    // a bare flow document is accepted as a config with defaults
    if (j.contains("horizon")) j = json{{"flow", j}};
    const auto dir = std::filesystem::path(path).parent_path();
    if (j.contains("flow") && j.at("flow").is_string()) j["flow"] = read_json(dir / j.at("flow").get<std::string>());
    if (j.contains("states") && j.at("states").is_string()) {
        const std::filesystem::path states = j.at("states").get<std::string>();
        if (states.is_relative()) j["states"] = (dir / states).string();
    }
    return j;
}

ExperimentConfig load_config(const std::string& path) { return parse_config(resolve_config(path)); }

std::vector<double> uniform_grid(double T, int points) {
    if (points < 2) throw std::invalid_argument("uniform_grid: need at least two points");
    std::vector<double> g(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) g[i] = T * i / (points - 1);
    g.back() = T;
    return g;
}

}  // namespace lk
