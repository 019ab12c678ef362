// eqip: exact solver for 0-1 programs with linear equality constraints.
//
//   eqip solve <file> [--algorithm auto|sort2|recursive2|four-table|brute] [--goal ...]
//   eqip gen <random|planted|subset-sum> --n N [--m M] [--seed S] [--out FILE]
//   eqip bench --n-list 20..32:2 [--m M] [--trials T] [--algorithms sort2,four-table]
//
// Exit status: 0 feasible/optimal, 1 infeasible, 2 usage or input error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eqip/eqip.hpp"

namespace {

constexpr int exit_found = 0;
constexpr int exit_infeasible = 1;
constexpr int exit_usage = 2;

struct SolveArgs {
    std::string input;
    std::string algorithm = "auto";
    std::string goal = "optimize";
    std::uint64_t limit = 1000;
    std::string mode = "exact";
    std::string tol = "1/1000000000";
    std::string output = "text";
    bool blocks = false;
    unsigned threads = 1;
    std::string build = "incremental";
    std::string pivot = "certified";
    std::uint64_t memory_budget_mb = 1024;
};

struct GenArgs {
    std::string family;
    std::size_t n = 0;
    std::size_t m = 1;
    std::uint64_t seed = 1;
    std::int64_t range = 5;
    double density = 1.0;
    bool objective = false;
    bool uniform_target = false;
    std::string out;
};

struct BenchArgs {
    std::string n_list;
    std::size_t m = 4;
    std::size_t trials = 3;
    std::string algorithms = "sort2";
    std::uint64_t seed_base = 1;
    std::int64_t range = 5;
    double density = 1.0;
    std::string out;
};

const std::map<std::string, eqip::Goal> goal_names{{"feasibility", eqip::Goal::feasibility},
                                                   {"optimize", eqip::Goal::optimize},
                                                   {"count", eqip::Goal::count},
                                                   {"enumerate", eqip::Goal::enumerate}};

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << text;
}

std::string vector_text(std::span<const eqip::Rational> v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += v[i].str();
    }
    return s + ")";
}

int print_blocks(const eqip::Instance& inst, const eqip::SolveRequest& req, eqip::Algorithm algo, bool structured) {
    eqip::TwoTableOptions o;
    o.goal = eqip::Goal::enumerate;
    o.algorithm = algo == eqip::Algorithm::recursive2 ? eqip::MatchAlgorithm::recursive : eqip::MatchAlgorithm::sort;
    o.build = req.build;
    o.pivot = req.pivot;
    auto run = eqip::match_two_table<eqip::Rational>(inst, o);
    const auto& m = run.matches;
    if (structured) {
        nlohmann::json blocks = nlohmann::json::array();
        for (const auto& b : m.blocks) {
            std::vector<std::uint64_t> uc, vc;
            for (std::size_t i = b.u_begin; i < b.u_end; ++i) uc.push_back(run.tables.U.code(m.u_order[i]));
            for (std::size_t j = b.v_begin; j < b.v_end; ++j) vc.push_back(run.tables.V.code(m.v_order[j]));
            blocks.push_back({{"u_range", {b.u_begin, b.u_end}},
                              {"v_range", {b.v_begin, b.v_end}},
                              {"key", vector_text(eqip::block_key(m, b, run.tables.U.vectors))},
                              {"u_codes", uc},
                              {"v_codes", vc}});
        }
        nlohmann::json j{{"status", m.empty() ? "Infeasible" : "Feasible"},
                         {"count", eqip::pair_count(m).get_str()},
                         {"solver", eqip::to_string(algo)},
                         {"blocks", blocks}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "count: " << eqip::pair_count(m).get_str() << "\n";
        const auto text = eqip::render_blocks(m);
        std::istringstream lines(text);
        std::string line;
        for (const auto& b : m.blocks) {
            std::getline(lines, line);
            std::cout << line << " key " << vector_text(eqip::block_key(m, b, run.tables.U.vectors)) << "\n";
        }
    }
    return m.empty() ? exit_infeasible : exit_found;
}

int run_solve(const SolveArgs& a) {
    eqip::SolveRequest req;
    auto algo = eqip::parse_algorithm(a.algorithm);
    if (!algo) throw CLI::ValidationError("--algorithm", "unknown algorithm '" + a.algorithm + "'");
    req.algorithm = *algo;
    req.goal = goal_names.at(a.goal);
    req.limit = a.limit;
    req.float_mode = a.mode == "float";
    req.tolerance = eqip::parse_scalar(a.tol);
    req.build.mode = a.build == "recompute" ? eqip::TableBuild::recompute : eqip::TableBuild::incremental;
    req.build.threads = a.threads;
    req.pivot = a.pivot == "heuristic" ? eqip::PivotRule::median_of_three : eqip::PivotRule::median_of_medians;
    req.memory_budget_bytes = a.memory_budget_mb << 20;

    std::vector<std::string> comments;
    auto inst = eqip::read_instance_file(a.input, &comments);
    if (auto w = inst.size_warning()) std::cerr << "warning: " << *w << "\n";

    const bool structured = a.output == "structured";
    if (a.blocks) {
        auto resolved = eqip::resolve_algorithm(inst, req);
        if (resolved != eqip::Algorithm::sort2 && resolved != eqip::Algorithm::recursive2) {
            throw eqip::UnsupportedConfiguration("--blocks needs sort2 or recursive2");
        }
        if (req.float_mode) throw eqip::UnsupportedConfiguration("--blocks needs exact mode");
        return print_blocks(inst, req, resolved, structured);
    }

    auto result = eqip::solve(inst, req);
    eqip::ResultReport report;
    report.outcome = std::move(result.outcome);
    report.algorithm = result.algorithm;
    report.goal = req.goal;
    report.mode = req.mode().name();
    report.n = inst.n();
    report.m = inst.m();
    report.input = a.input;
    report.provenance = comments;

    if (structured) {
        std::cout << eqip::report_json(report).dump(2) << "\n";
    } else if (req.goal == eqip::Goal::enumerate) {
        for (const auto& x : report.outcome.solutions) std::cout << x.str() << "\n";
        std::cerr << eqip::report_text(report);
    } else {
        std::cout << eqip::report_text(report);
    }
    return report.outcome.status == eqip::Status::infeasible ? exit_infeasible : exit_found;
}

int run_gen(const GenArgs& a) {
    eqip::GenSpec spec;
    spec.n = a.n;
    spec.m = a.m;
    spec.seed = a.seed;
    spec.range = a.range;
    spec.density = a.density;
    spec.with_objective = a.objective;
    spec.planted_target = !a.uniform_target;

    std::vector<std::string> comments;
    std::string text;
    if (a.family == "random") {
        spec.family = eqip::Family::random;
        auto inst = eqip::gen_random(spec);
        text = eqip::write_instance_file(inst, {eqip::describe(spec)});
    } else if (a.family == "planted") {
        spec.family = eqip::Family::planted;
        auto [inst, x] = eqip::gen_planted(spec);
        text = eqip::write_instance_file(inst, {eqip::describe(spec), "witness " + x.str()});
    } else {
        spec.family = eqip::Family::subset_sum;
        spec.m = 1;
        auto inst = eqip::gen_subset_sum(spec);
        text = eqip::write_instance_file(inst, {eqip::describe(spec)});
    }
    write_output(a.out, text);
    return 0;
}

int run_bench(const BenchArgs& a) {
    eqip::BenchConfig cfg;
    cfg.n_list = eqip::parse_n_list(a.n_list);
    cfg.m = a.m;
    cfg.trials = a.trials;
    cfg.seed_base = a.seed_base;
    cfg.range = a.range;
    cfg.density = a.density;
    cfg.algorithms.clear();
    std::stringstream ss(a.algorithms);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto algo = eqip::parse_algorithm(item);
        if (!algo || *algo == eqip::Algorithm::automatic) {
            throw CLI::ValidationError("--algorithms", "unknown algorithm '" + item + "'");
        }
        cfg.algorithms.push_back(*algo);
    }
    if (cfg.range < 1 || !(cfg.density > 0.0 && cfg.density <= 1.0)) {
        throw eqip::ValidationError({"range must be >= 1 and density in (0, 1]"});
    }
    std::ostringstream csv;
    eqip::run_bench(cfg, &csv);
    write_output(a.out, csv.str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact solver for 0-1 integer programs with linear equality constraints"};
    app.require_subcommand(1);
    app.set_version_flag("--version", eqip::version_string);

    SolveArgs sa;
    auto* solve = app.add_subcommand("solve", "Solve an instance file");
    solve->add_option("input", sa.input, "Instance file")->required();
    solve->add_option("--algorithm", sa.algorithm, "auto, sort2, recursive2, four-table or brute")
        ->check(CLI::IsMember({"auto", "sort2", "recursive2", "four-table", "brute"}));
    solve->add_option("--goal", sa.goal, "feasibility, optimize, count or enumerate")
        ->check(CLI::IsMember({"feasibility", "optimize", "count", "enumerate"}));
    solve->add_option("--limit", sa.limit, "Maximum witnesses printed by enumerate");
    solve->add_option("--mode", sa.mode, "exact or float")->check(CLI::IsMember({"exact", "float"}));
    solve->add_option("--tol", sa.tol, "Float-mode tolerance (scalar token)");
    solve->add_option("--output", sa.output, "text or structured")->check(CLI::IsMember({"text", "structured"}));
    solve->add_flag("--blocks", sa.blocks, "Print the compressed match blocks instead of witnesses");
    solve->add_option("--threads", sa.threads, "Threads for table construction")->check(CLI::Range(1u, 256u));
    solve->add_option("--build", sa.build, "incremental or recompute")
        ->check(CLI::IsMember({"incremental", "recompute"}));
    solve->add_option("--pivot", sa.pivot, "certified (median of medians) or heuristic")
        ->check(CLI::IsMember({"certified", "heuristic"}));
    solve->add_option("--memory-budget-mb", sa.memory_budget_mb, "Half-table budget before auto picks four-table");

    GenArgs ga;
    auto* gen = app.add_subcommand("gen", "Generate an instance file");
    gen->add_option("family", ga.family, "random, planted or subset-sum")
        ->required()
        ->check(CLI::IsMember({"random", "planted", "subset-sum"}));
    gen->add_option("--n", ga.n, "Variables")->required()->check(CLI::PositiveNumber);
    gen->add_option("--m", ga.m, "Constraints (subset-sum uses 1)");
    gen->add_option("--seed", ga.seed, "Seed");
    gen->add_option("--range", ga.range, "Coefficient bound R")->check(CLI::PositiveNumber);
    gen->add_option("--density", ga.density, "Fraction of nonzero entries")->check(CLI::Range(0.0, 1.0));
    gen->add_flag("--objective", ga.objective, "Draw an objective vector");
    gen->add_flag("--uniform-target", ga.uniform_target, "subset-sum: uniform target instead of a planted subset");
    gen->add_option("--out", ga.out, "Output file (default stdout)");

    BenchArgs ba;
    auto* bench = app.add_subcommand("bench", "Time solvers on planted instances, CSV output");
    bench->add_option("--n-list", ba.n_list, "e.g. 20,22,24 or 20..32:2")->required();
    bench->add_option("--m", ba.m, "Constraints");
    bench->add_option("--trials", ba.trials, "Trials per n")->check(CLI::PositiveNumber);
    bench->add_option("--algorithms", ba.algorithms, "Comma-separated algorithms");
    bench->add_option("--seed-base", ba.seed_base, "Base seed");
    bench->add_option("--range", ba.range, "Coefficient bound R");
    bench->add_option("--density", ba.density, "Fraction of nonzero entries");
    bench->add_option("--out", ba.out, "Output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : exit_usage;
    }

    try {
        if (*solve) return run_solve(sa);
        if (*gen) return run_gen(ga);
        if (*bench) return run_bench(ba);
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }
    return exit_usage;
}
