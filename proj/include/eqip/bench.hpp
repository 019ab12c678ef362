#ifndef EQIP_BENCH_HPP
#define EQIP_BENCH_HPP

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "eqip/errors.hpp"
#include "eqip/generator.hpp"
#include "eqip/solve.hpp"

namespace eqip {

struct BenchConfig {
    std::vector<std::size_t> n_list;
    std::size_t m = 4;
    std::size_t trials = 3;
    std::vector<Algorithm> algorithms{Algorithm::sort2};
    std::uint64_t seed_base = 1;
    std::int64_t range = 5;
    double density = 1.0;
    Goal goal = Goal::optimize;
};

struct BenchRow {
    std::size_t n = 0;
    std::size_t m = 0;
    Algorithm algorithm = Algorithm::sort2;
    std::size_t trial = 0;
    double wall_time = 0.0;
    std::uint64_t table_entries_built = 0;
    std::uint64_t peak_live_entries = 0;
    Status status = Status::infeasible;
};

constexpr const char* bench_csv_header = "n,m,algorithm,trial,wall_time,table_entries_built,peak_live_entries,status";

inline std::string to_csv(const BenchRow& r) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(6);
    os << r.n << "," << r.m << "," << to_string(r.algorithm) << "," << r.trial << "," << r.wall_time << ","
       << r.table_entries_built << "," << r.peak_live_entries << "," << to_string(r.status);
    return os.str();
}

struct BenchResult {
    std::vector<BenchRow> rows;
    std::map<Algorithm, double> growth; // geometric mean of time(n+2)/time(n)
    std::vector<std::string> notes;
};

/// Instance seed for (n, trial); every algorithm sees the same planted instance.
inline std::uint64_t bench_seed(std::uint64_t base, std::size_t n, std::size_t trial) {
    return base + 1000003ull * n + trial;
}

/// Parses "20,22,24" or "20..32" or "20..32:2".
inline std::vector<std::size_t> parse_n_list(const std::string& text) {
    std::vector<std::size_t> out;
    auto num = [&](const std::string& s) -> std::size_t {
        if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
            throw ValidationError({"invalid n-list element '" + s + "'"});
        }
        return std::stoul(s);
    };
    auto dots = text.find("..");
    if (dots != std::string::npos) {
        std::string rest = text.substr(dots + 2);
        std::size_t step = 1;
        auto colon = rest.find(':');
        if (colon != std::string::npos) {
            step = num(rest.substr(colon + 1));
            rest = rest.substr(0, colon);
        }
        std::size_t lo = num(text.substr(0, dots));
        std::size_t hi = num(rest);
        if (step == 0 || lo > hi) throw ValidationError({"invalid n range '" + text + "'"});
        for (std::size_t n = lo; n <= hi; n += step) out.push_back(n);
    } else {
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) out.push_back(num(item));
    }
    if (out.empty()) throw ValidationError({"empty n-list"});
    for (auto n : out) {
        if (n == 0) throw ValidationError({"n must be positive"});
    }
    return out;
}

/// Growth of per-n median times between consecutive n values, rescaled to a
/// step of 2 and combined by geometric mean.
inline double growth_ratio(const std::map<std::size_t, double>& median_time) {
    double log_sum = 0.0;
    std::size_t count = 0;
    for (auto it = median_time.begin(); it != median_time.end(); ++it) {
        auto next = std::next(it);
        if (next == median_time.end()) break;
        if (it->second <= 0.0 || next->second <= 0.0) continue;
        double per_two = std::log(next->second / it->second) * 2.0 / double(next->first - it->first);
        log_sum += per_two;
        ++count;
    }
    return count ? std::exp(log_sum / double(count)) : 0.0;
}

/// Runs every algorithm on planted instances for each n and trial.
/// Brute force is skipped above its cap.
inline BenchResult run_bench(const BenchConfig& cfg, std::ostream* csv = nullptr) {
    if (cfg.n_list.empty()) throw ValidationError({"empty n-list"});
    if (cfg.trials == 0) throw ValidationError({"trials must be positive"});
    if (cfg.algorithms.empty()) throw ValidationError({"no algorithms"});
    BenchResult res;
    if (csv) *csv << bench_csv_header << "\n";

    std::map<Algorithm, std::map<std::size_t, std::vector<double>>> times;
    for (std::size_t n : cfg.n_list) {
        for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
            GenSpec spec;
            spec.family = Family::planted;
            spec.n = n;
            spec.m = cfg.m;
            spec.seed = bench_seed(cfg.seed_base, n, trial);
            spec.range = cfg.range;
            spec.density = cfg.density;
            spec.with_objective = true;
            auto [inst, planted] = gen_planted(spec);
            for (Algorithm algo : cfg.algorithms) {
                if (algo == Algorithm::brute && n > default_brute_force_cap) {
                    if (trial == 0) res.notes.push_back("skipped brute at n=" + std::to_string(n) + " (above cap)");
                    continue;
                }
                SolveRequest req;
                req.algorithm = algo;
                req.goal = cfg.goal;
                auto t0 = std::chrono::steady_clock::now();
                auto d = solve(inst, req);
                double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
                BenchRow row{n, cfg.m, d.algorithm, trial, secs, d.outcome.stats.table_entries_built,
                             d.outcome.stats.peak_live_entries, d.outcome.status};
                if (csv) *csv << to_csv(row) << "\n";
                times[algo][n].push_back(secs);
                res.rows.push_back(row);
            }
        }
    }
    for (auto& [algo, per_n] : times) {
        std::map<std::size_t, double> med;
        for (auto& [n, ts] : per_n) {
            std::sort(ts.begin(), ts.end());
            med[n] = ts[ts.size() / 2];
        }
        res.growth[algo] = growth_ratio(med);
    }
    if (csv) {
        for (const auto& note : res.notes) *csv << "# " << note << "\n";
        for (const auto& [algo, g] : res.growth) *csv << "# growth " << to_string(algo) << " " << g << "\n";
    }
    return res;
}

} // namespace eqip

#endif // EQIP_BENCH_HPP
