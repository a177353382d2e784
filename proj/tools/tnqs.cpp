// Copyright 2026 The tnqs Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tnqs/circuit_io.hpp"
#include "tnqs/composition.hpp"
#include "tnqs/engine.hpp"
#include "tnqs/errors.hpp"
#include "tnqs/oracle.hpp"
#include "tnqs/rng.hpp"
#include "tnqs/schedule.hpp"

namespace {

using nlohmann::json;
using namespace tnqs;

constexpr int kExitFailure = 1;
constexpr int kExitParse = 2;

struct CircuitSource {
    std::vector<int> aqft;     // n m
    std::vector<long long> logdepth; // n d r seed
    std::string path;
};

struct RunConfig {
    CircuitSource circuit;
    std::string input_bits;
    std::string outcome;
    std::string schedule = "auto";
    int rank_ceiling = kDefaultMaxRank;
    std::uint64_t seed = 1;
    std::uint64_t shots = 1;
    std::string output;
    std::string format = "text";
    std::string emit = "schedule";
    bool explicit_p1 = false;
    bool logical = false;
};

void add_circuit_flags(CLI::App *cmd, CircuitSource &src) {
    auto *group = cmd->add_option_group("circuit", "circuit source");
    group->add_option("--aqft", src.aqft, "approximate QFT: n m")->expected(2);
    group->add_option("--logdepth", src.logdepth, "log-depth limited range: n d r [seed]")
        ->expected(3, 4);
    group->add_option("--circuit", src.path, "circuit JSON file");
    group->require_option(1);
}

CircuitGraph build_circuit(const CircuitSource &src) {
    if (!src.aqft.empty()) {
        return aqft_circuit(src.aqft[0], src.aqft[1]);
    }
    if (!src.logdepth.empty()) {
        return logdepth_circuit(static_cast<int>(src.logdepth[0]), static_cast<int>(src.logdepth[1]),
                                static_cast<int>(src.logdepth[2]),
                                src.logdepth.size() > 3 ? static_cast<std::uint64_t>(src.logdepth[3]) : 0);
    }
    return load_circuit(src.path);
}

/// "aqft:n:m", "logdepth:n:d:r:seed" or a file path.
CircuitGraph build_circuit(const std::string &spec) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    for (std::string part; std::getline(ss, part, ':');) {
        parts.push_back(part);
    }
    try {
        if (parts.size() == 3 && parts[0] == "aqft") {
            return aqft_circuit(std::stoi(parts[1]), std::stoi(parts[2]));
        }
        if (parts.size() == 5 && parts[0] == "logdepth") {
            return logdepth_circuit(std::stoi(parts[1]), std::stoi(parts[2]), std::stoi(parts[3]),
                                    std::stoull(parts[4]));
        }
    } catch (const std::logic_error &) {
        throw ParseError("bad circuit source '" + spec + "'");
    }
    return load_circuit(spec);
}

bool has_ladders(const CircuitGraph &g) {
    bool any = false;
    for (const auto &v : g.vertices()) {
        if (v.is_gate()) {
            if (v.ladder == 0) {
                return false;
            }
            any = true;
        }
    }
    return any;
}

std::string read_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open '" + path + "'");
    }
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

Schedule resolve_schedule(const std::string &source, const CircuitGraph &g) {
    if (source == "auto") {
        return has_ladders(g) ? aqft_schedule(g) : sweep_schedule(g);
    }
    if (source == "auto-sweep") {
        return sweep_schedule(g);
    }
    if (source == "auto-sweep-up") {
        return sweep_schedule(g, SweepDirection::BottomUp);
    }
    if (source == "auto-aqft") {
        return aqft_schedule(g);
    }
    return parse_schedule(read_file(source));
}

void write_text(const std::string &path, const std::string &text) {
    std::ofstream out(path);
    if (!out) {
        throw Error("cannot write '" + path + "'");
    }
    out << text;
}

json report_json(const ScheduleReport &r) {
    return {{"e_max", r.e_max},
            {"peak_step", r.peak_step},
            {"cost_estimate", r.cost_estimate},
            {"rank_ceiling", r.rank_ceiling},
            {"feasible", r.feasible}};
}

void require_feasible(const ScheduleReport &r) {
    if (!r.feasible) {
        throw RankCeilingExceeded(r.e_max, r.rank_ceiling,
                                  "step " + std::to_string(r.peak_step) + " has E^i = " +
                                      std::to_string(r.e_max));
    }
}

CircuitGraph prepare(const RunConfig &cfg) {
    CircuitGraph g = build_circuit(cfg.circuit);
    if (!cfg.input_bits.empty()) {
        g = with_basis_input(g, cfg.input_bits);
    }
    return g;
}

int cmd_simulate(const RunConfig &cfg) {
    const CircuitGraph g = prepare(cfg);
    const Schedule s = resolve_schedule(cfg.schedule, g);
    const auto report = validate_schedule(s, g, cfg.rank_ceiling);
    require_feasible(report);
    const auto assign = cfg.outcome.empty() ? OutputAssignment::from_graph(g)
                                            : OutputAssignment::from_bits(g, cfg.outcome);
    EngineOptions opts;
    opts.max_rank = cfg.rank_ceiling;
    const auto t0 = std::chrono::steady_clock::now();
    const double p = Simulator(g, s, opts).probability(assign);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (cfg.format == "json") {
        json rec = report_json(report);
        rec["probability"] = p;
        rec["seconds"] = seconds;
        std::cout << rec.dump() << "\n";
    } else {
        std::printf("%.17g\n", p);
        std::printf("e_max %d at step %d, cost %.6g, %.3f s\n", report.e_max, report.peak_step,
                    report.cost_estimate, seconds);
    }
    return 0;
}

int cmd_sample(const RunConfig &cfg) {
    const CircuitGraph g = prepare(cfg);
    const Schedule s = resolve_schedule(cfg.schedule, g);
    require_feasible(validate_schedule(s, g, cfg.rank_ceiling));
    EngineOptions opts;
    opts.max_rank = cfg.rank_ceiling;
    opts.explicit_p1 = cfg.explicit_p1;
    const auto records = Simulator(g, s, opts).sample(cfg.shots, cfg.seed);
    std::ostringstream os;
    for (const auto &r : records) {
        const std::string bits = cfg.logical ? logical_bits(g, r.bits) : r.bits;
        if (cfg.format == "json") {
            os << json{{"shot", r.shot}, {"seed", r.seed}, {"bits", bits}, {"joint", r.joint},
                       {"chain", r.chain}}
                      .dump()
               << "\n";
        } else {
            os << bits << "\n";
        }
    }
    if (cfg.output.empty()) {
        std::cout << os.str();
    } else {
        write_text(cfg.output, os.str());
    }
    return 0;
}

int cmd_schedule(const RunConfig &cfg) {
    const CircuitGraph g = prepare(cfg);
    Schedule s = resolve_schedule(cfg.schedule, g);
    s.graph_ref = graph_fingerprint(g);
    const auto report = analyze_schedule(s, g, cfg.rank_ceiling);
    if (!cfg.output.empty()) {
        write_text(cfg.output, format_schedule(s));
    }
    if (cfg.emit == "profile") {
        if (cfg.format == "json") {
            for (std::size_t i = 0; i < report.steps.size(); ++i) {
                const auto &st = report.steps[i];
                std::cout << json{{"step", i}, {"boundary", st.boundary}, {"shared", st.shared},
                                  {"cost", st.cost}}
                                 .dump()
                          << "\n";
            }
            std::cout << report_json(report).dump() << "\n";
        } else {
            std::printf("%6s %4s %6s %12s\n", "step", "E", "shared", "cost");
            for (std::size_t i = 0; i < report.steps.size(); ++i) {
                const auto &st = report.steps[i];
                std::printf("%6zu %4d %6d %12.6g\n", i, st.boundary, st.shared, st.cost);
            }
            std::printf("max %d at step %d, cost %.6g, %s\n", report.e_max, report.peak_step,
                        report.cost_estimate, report.feasible ? "feasible" : "infeasible");
        }
    } else if (cfg.output.empty()) {
        std::cout << format_schedule(s);
    }
    return report.feasible ? 0 : kExitFailure;
}

struct ComposeConfig {
    std::string first;
    std::string second;
    std::string first_schedule = "auto";
    std::string second_schedule = "auto";
    bool flip = false;
    std::string output;
    std::string format = "text";
    int rank_ceiling = kDefaultMaxRank;
};

int cmd_compose(const ComposeConfig &cfg) {
    const CircuitGraph a = build_circuit(cfg.first);
    CircuitGraph b = build_circuit(cfg.second);
    if (cfg.flip) {
        b = flip_circuit(b);
    }
    const Schedule sa = resolve_schedule(cfg.first_schedule, a);
    const Schedule sb = resolve_schedule(cfg.second_schedule, b);
    const auto ra = validate_schedule(sa, a, cfg.rank_ceiling);
    const auto rb = validate_schedule(sb, b, cfg.rank_ceiling);
    const auto plan = check_composability(sa, sb, a, b, line_wiring(a, b));
    const Schedule sc = compose_schedules(plan);
    const auto rc = validate_schedule(sc, plan.composed.graph, cfg.rank_ceiling);
    if (!cfg.output.empty()) {
        save_circuit(plan.composed.graph, cfg.output + ".circuit.json");
        write_text(cfg.output + ".schedule", format_schedule(sc));
    }
    if (cfg.format == "json") {
        std::cout << json{{"e_max_a", ra.e_max},
                          {"e_max_b", rb.e_max},
                          {"e_max_composed", rc.e_max},
                          {"groups", plan.omega_sets.size()},
                          {"steps", sc.steps.size()},
                          {"feasible", rc.feasible}}
                         .dump()
                  << "\n";
    } else {
        std::printf("e_max a %d, b %d, composed %d (bound %d)\n", ra.e_max, rb.e_max, rc.e_max,
                    ra.e_max + rb.e_max);
        std::printf("%zu boundary groups, %zu steps\n", plan.omega_sets.size(), sc.steps.size());
    }
    return rc.feasible ? 0 : kExitFailure;
}

struct VerifyConfig {
    int count = 50;
    int max_qubits = 5;
    std::uint64_t seed = 1;
    bool kraus = true;
    std::string format = "text";
};

std::string bits_of(unsigned x, int n) {
    std::string bits;
    for (int l = 0; l < n; ++l) {
        bits.push_back(((x >> (n - 1 - l)) & 1U) ? '1' : '0');
    }
    return bits;
}

int cmd_verify(const VerifyConfig &cfg) {
    double worst = 0;
    for (int i = 0; i < cfg.count; ++i) {
        Rng rng = Rng::split(cfg.seed, static_cast<std::uint64_t>(i));
        const int n = static_cast<int>(rng.uniform_int(1, cfg.max_qubits));
        RandomCircuitOptions opts;
        opts.kraus = cfg.kraus;
        opts.mixed_inputs = cfg.kraus;
        opts.max_gates = 12;
        const auto g = random_circuit(n, 8, rng.next(), opts);
        const auto expected = oracle_distribution(g);
        const Simulator sim(g, sweep_schedule(g));
        double dev = 0;
        for (unsigned x = 0; x < (1U << n); ++x) {
            const double p = sim.probability(OutputAssignment::from_bits(g, bits_of(x, n)));
            dev = std::max(dev, std::abs(p - expected[x]));
        }
        worst = std::max(worst, dev);
        if (cfg.format == "json") {
            std::cout << json{{"circuit", i}, {"qubits", n}, {"max_deviation", dev}}.dump() << "\n";
        }
    }
    if (cfg.format == "json") {
        std::cout << json{{"circuits", cfg.count}, {"max_deviation", worst}}.dump() << "\n";
    } else {
        std::printf("%d circuits, max abs deviation %.3g\n", cfg.count, worst);
    }
    return worst < 1e-9 ? 0 : kExitFailure;
}

struct ErrorConfig {
    int n = 8;
    std::int64_t basis = -1;
    std::int64_t random_seed = -1;
    std::string format = "text";
};

int cmd_aqft_error(const ErrorConfig &cfg) {
    const AqftInput input = cfg.random_seed >= 0
                                ? AqftInput(RandomInput{static_cast<std::uint64_t>(cfg.random_seed)})
                                : AqftInput(static_cast<std::uint64_t>(
                                      cfg.basis >= 0 ? cfg.basis : (1LL << cfg.n) - 1));
    for (int m = 1; m <= cfg.n - 1; ++m) {
        const double err = aqft_error(cfg.n, m, input);
        if (cfg.format == "json") {
            std::cout << json{{"n", cfg.n}, {"m", m}, {"error", err}}.dump() << "\n";
        } else {
            std::printf("%3d %3d %.6e\n", cfg.n, m, err);
        }
    }
    return 0;
}

struct BenchConfig {
    std::vector<int> sizes{8, 16, 32, 64};
    int m = 4;
    int repeat = 1;
    int rank_ceiling = kDefaultMaxRank;
    std::string format = "text";
};

int cmd_bench(const BenchConfig &cfg) {
    for (int n : cfg.sizes) {
        const auto g = with_basis_input(aqft_circuit(n, std::min(cfg.m, n - 1)),
                                        std::string(static_cast<std::size_t>(n), '0'));
        const auto s = aqft_schedule(g);
        EngineOptions opts;
        opts.max_rank = cfg.rank_ceiling;
        const Simulator sim(g, s, opts);
        const auto assign = OutputAssignment::from_bits(g, std::string(static_cast<std::size_t>(n), '0'));
        double best = 1e300;
        double p = 0;
        for (int r = 0; r < cfg.repeat; ++r) {
            const auto t0 = std::chrono::steady_clock::now();
            p = sim.probability(assign);
            best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
        }
        const auto &rep = sim.report();
        if (cfg.format == "json") {
            std::cout << json{{"n", n}, {"m", cfg.m}, {"seconds", best}, {"peak_rank", rep.e_max},
                              {"cost_estimate", rep.cost_estimate}, {"probability", p}}
                             .dump()
                      << "\n";
        } else {
            std::printf("n %3d m %d  %.4f s  peak rank %2d  cost %.4g\n", n, cfg.m, best, rep.e_max,
                        rep.cost_estimate);
        }
    }
    return 0;
}

int default_rank_ceiling() {
    if (const char *env = std::getenv("TNQS_RANK_CEILING")) {
        try {
            return std::stoi(env);
        } catch (const std::logic_error &) {
            std::fprintf(stderr, "ignoring bad TNQS_RANK_CEILING '%s'\n", env);
        }
    }
    return kDefaultMaxRank;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Tensor network simulation of quantum circuits"};
    app.require_subcommand(1);

    RunConfig sim;
    sim.rank_ceiling = default_rank_ceiling();
    auto add_run_flags = [&](CLI::App *cmd, RunConfig &cfg) {
        add_circuit_flags(cmd, cfg.circuit);
        cmd->add_option("--in", cfg.input_bits, "basis input, one bit per line");
        cmd->add_option("--schedule", cfg.schedule, "auto, auto-sweep, auto-sweep-up, auto-aqft or a file");
        cmd->add_option("--rank-ceiling", cfg.rank_ceiling, "maximum tensor rank");
        cmd->add_option("--format", cfg.format)->check(CLI::IsMember({"text", "json"}));
    };

    auto *simulate = app.add_subcommand("simulate", "probability of one outcome");
    add_run_flags(simulate, sim);
    simulate->add_option("--out", sim.outcome, "outcome per line: 0, 1 or x");

    RunConfig smp = sim;
    auto *sample_cmd = app.add_subcommand("sample", "sample output bitstrings");
    add_run_flags(sample_cmd, smp);
    sample_cmd->add_option("--shots", smp.shots);
    sample_cmd->add_option("--seed", smp.seed);
    sample_cmd->add_option("--output", smp.output, "write samples to a file");
    sample_cmd->add_flag("--explicit-p1", smp.explicit_p1, "evaluate p1 instead of subtracting");
    sample_cmd->add_flag("--logical", smp.logical, "report bits in logical qubit order");

    RunConfig sch = sim;
    auto *schedule_cmd = app.add_subcommand("schedule", "build and analyze a schedule");
    add_run_flags(schedule_cmd, sch);
    schedule_cmd->add_option("--emit", sch.emit)->check(CLI::IsMember({"schedule", "profile"}));
    schedule_cmd->add_option("--output", sch.output, "write the schedule file");

    ComposeConfig cmp;
    cmp.rank_ceiling = sim.rank_ceiling;
    auto *compose_cmd = app.add_subcommand("compose", "attach one circuit after another");
    compose_cmd->add_option("--first", cmp.first, "aqft:n:m, logdepth:n:d:r:seed or a file")->required();
    compose_cmd->add_option("--second", cmp.second, "aqft:n:m, logdepth:n:d:r:seed or a file")->required();
    compose_cmd->add_option("--first-schedule", cmp.first_schedule);
    compose_cmd->add_option("--second-schedule", cmp.second_schedule);
    compose_cmd->add_flag("--flip", cmp.flip, "flip the second circuit vertically");
    compose_cmd->add_option("--output", cmp.output, "prefix for the composed circuit and schedule");
    compose_cmd->add_option("--rank-ceiling", cmp.rank_ceiling);
    compose_cmd->add_option("--format", cmp.format)->check(CLI::IsMember({"text", "json"}));

    VerifyConfig ver;
    auto *verify_cmd = app.add_subcommand("verify", "compare the engine with the dense oracle");
    verify_cmd->add_option("--count", ver.count);
    verify_cmd->add_option("--max-qubits", ver.max_qubits)->check(CLI::Range(1, 6));
    verify_cmd->add_option("--seed", ver.seed);
    verify_cmd->add_option("--format", ver.format)->check(CLI::IsMember({"text", "json"}));

    ErrorConfig err;
    auto *error_cmd = app.add_subcommand("aqft-error", "AQFT trace distance for each m");
    error_cmd->add_option("--n", err.n)->check(CLI::Range(2, 10));
    error_cmd->add_option("--basis", err.basis, "basis input index, all ones by default");
    error_cmd->add_option("--random-seed", err.random_seed, "use a random pure input");
    error_cmd->add_option("--format", err.format)->check(CLI::IsMember({"text", "json"}));

    BenchConfig bench;
    bench.rank_ceiling = sim.rank_ceiling;
    auto *bench_cmd = app.add_subcommand("bench", "time AQFT simulation across sizes");
    bench_cmd->add_option("--sizes", bench.sizes)->delimiter(',');
    bench_cmd->add_option("--m", bench.m);
    bench_cmd->add_option("--repeat", bench.repeat);
    bench_cmd->add_option("--rank-ceiling", bench.rank_ceiling);
    bench_cmd->add_option("--format", bench.format)->check(CLI::IsMember({"text", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitParse;
    }

    try {
        if (*simulate) {
            return cmd_simulate(sim);
        }
        if (*sample_cmd) {
            return cmd_sample(smp);
        }
        if (*schedule_cmd) {
            return cmd_schedule(sch);
        }
        if (*compose_cmd) {
            return cmd_compose(cmp);
        }
        if (*verify_cmd) {
            return cmd_verify(ver);
        }
        if (*error_cmd) {
            return cmd_aqft_error(err);
        }
        return cmd_bench(bench);
    } catch (const ParseError &e) {
        std::fprintf(stderr, "%s\n", e.what());
        return kExitParse;
    } catch (const std::exception &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitFailure;
    }
}
