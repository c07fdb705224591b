#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "lk/control.hpp"
#include "lk/driving.hpp"
#include "lk/loewner.hpp"

namespace lk {

struct Tolerances {
    double cert_slack = 1e-9;        // certification ratios <= 1 + slack
    double bound_slack = 1e-9;       // all other "ratio <= 1" checks
    double grunsky_norm = 1e-8;      // ||B|| <= 1 + this
    double tail_max = 1e-10;         // tail certificate
    double idempotence = 1e-10;
    double selfadjoint = 1e-12;
    double block = 1e-12;
    double fixed_frame = 1e-10;
    double symmetry = 1e-12;
    double b11_formula = 1e-10;
    double generating_identity = 1e-9;
    double a1_exact = 1e-12;
    double ward_z = 3.0;
    double alpha11_lo = 0.95, alpha11_hi = 1.05;
    double circle_moments = 1e-12;
    double circle_area = 1e-10;
};

struct FlowConfig {
    std::string name;
    DrivingSpec driving;
    ControlFunction omega;
    nlohmann::json control_spec;
    double horizon() const { return driving.horizon(); }
};

struct MomentShape {
    std::string label;
    std::string kind;  // circle | ellipse
    double a = 1.0, b = 1.0;
    cplx center{0.0};
};

struct ExperimentConfig {
    std::string name = "experiment";
    std::optional<FlowConfig> flow;
    int N = 25;          // series order for solve
    int M = 12;          // Grunsky / projection window
    int K = 6;           // Ward table size
    int n_max = 8;       // certification level cap
    int grid = 16;       // grid points for certify / grunsky / continuity
    int solve_grid = 64; // grid points for solve
    int ward_N = 300;
    int trials = 2000;
    std::uint64_t seed = 42;
    int moment_samples = 512;
    int moment_K = 8;
    std::vector<MomentShape> shapes;
    std::optional<std::string> states_path;  // grunsky from a states CSV
    Tolerances tol;
};

PiecewisePath parse_path(const nlohmann::json& j);
nlohmann::json path_to_json(const PiecewisePath& p);
ControlFunction parse_control(const nlohmann::json& j, const DrivingSpec* driving, int n_max);
FlowConfig parse_flow(const nlohmann::json& flow, const nlohmann::json& control, int n_max);
ExperimentConfig parse_config(const nlohmann::json& j);
// Reads a config file; a bare flow document becomes {"flow": ...}, and string
// "flow" / "states" entries are resolved relative to the file.
nlohmann::json resolve_config(const std::string& path);
ExperimentConfig load_config(const std::string& path);

// Uniformly spaced points on [0, T], including both ends.
std::vector<double> uniform_grid(double T, int points);

struct Assertion {
    std::string name;
    double value = 0.0;
    double bound = 0.0;
    bool pass = true;
};

struct ExperimentReport {
    std::string campaign;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<Assertion> assertions;
    nlohmann::json meta = nlohmann::json::object();

    bool passed() const;
    std::string csv() const;
    nlohmann::json summary() const;
};

std::string fmt(double v);
std::string fmt(int v);

ExperimentReport run_campaign(const ExperimentConfig& cfg, const std::string& campaign);

// CSV written by `lk solve` (t, n, re, im) back into states.
std::vector<FlowState> read_states_csv(const std::string& path);

}  // namespace lk
