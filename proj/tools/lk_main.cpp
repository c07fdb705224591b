#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "lk/campaign.hpp"

using nlohmann::json;

namespace {

struct Options {
    std::string config;
    std::string out;
    std::string report;
    std::string states;
    std::optional<std::uint64_t> seed;
    std::optional<int> order, M, grid, K, N, trials, n_max, samples, moment_K;
    bool quiet = false;
};

void add_common(CLI::App* sub, Options& o) {
    sub->add_option("--config,--flow", o.config, "experiment config or flow JSON")->check(CLI::ExistingFile);
    sub->add_option("--out", o.out, "CSV output path (default stdout)");
    sub->add_option("--report", o.report, "JSON summary path");
    sub->add_option("--seed", o.seed, "random seed");
    sub->add_option("--order", o.order, "series truncation order N");
    sub->add_option("--M", o.M, "Grunsky window size");
    sub->add_option("--grid", o.grid, "number of grid points");
    sub->add_option("--n-max", o.n_max, "certification level cap");
    sub->add_flag("--quiet", o.quiet, "suppress the assertion summary");
}

json overrides(const Options& o) {
    json j = json::object();
    if (o.order) j["orders"]["N"] = *o.order;
    if (o.M) j["orders"]["M"] = *o.M;
    if (o.K) j["orders"]["K"] = *o.K;
    if (o.n_max) j["orders"]["n_max"] = *o.n_max;
    if (o.grid) {
        j["grid"] = *o.grid;
        j["solve_grid"] = *o.grid;
    }
    if (o.seed) j["seed"] = *o.seed;
    if (o.N) j["ward"]["N"] = *o.N;
    if (o.trials) j["ward"]["trials"] = *o.trials;
    if (o.samples) j["moments"]["samples"] = *o.samples;
    if (o.moment_K) j["moments"]["K"] = *o.moment_K;
    if (!o.states.empty()) j["states"] = o.states;
    return j;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << text;
}

int run(const std::string& campaign, const Options& o) {
    json j = o.config.empty() ? json::object() : lk::resolve_config(o.config);
    j.merge_patch(overrides(o));
    const auto cfg = lk::parse_config(j);
    const auto rep = lk::run_campaign(cfg, campaign);
    if (o.out.empty())
        std::cout << rep.csv();
    else
        write_file(o.out, rep.csv());
    if (!o.report.empty()) write_file(o.report, rep.summary().dump(2) + "\n");
    if (!o.quiet)
        for (const auto& a : rep.assertions)
            std::fprintf(stderr, "[%s] %s: %.6g (bound %.6g)\n", a.pass ? "PASS" : "FAIL", a.name.c_str(), a.value, a.bound);
    return rep.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"lk: controlled Loewner-Kufarev numerics"};
    app.require_subcommand(1);
    Options o;
    std::string chosen;
    const char* campaigns[] = {"certify", "solve", "grunsky", "continuity", "ward", "moments"};
    for (const char* name : campaigns) {
        auto* sub = app.add_subcommand(name);
        add_common(sub, o);
        if (std::string(name) == "grunsky")
            sub->add_option("--states", o.states, "states CSV from lk solve")->check(CLI::ExistingFile);
        if (std::string(name) == "ward") {
            sub->add_option("--K", o.K, "table size");
            sub->add_option("--N", o.N, "GUE matrix size");
            sub->add_option("--trials", o.trials, "Monte Carlo trials");
        }
        if (std::string(name) == "moments") {
            sub->add_option("--K", o.moment_K, "number of moments");
            sub->add_option("--samples", o.samples, "boundary samples");
        }
        sub->callback([&chosen, name] { chosen = name; });
    }
    CLI11_PARSE(app, argc, argv);
    try {
        return run(chosen, o);
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "lk %s: hypothesis violated: %s\n", chosen.c_str(), e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "lk %s: %s\n", chosen.c_str(), e.what());
        return 2;
    }
}
