#include <gtest/gtest.h>

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "eqip/generator.hpp"
#include "eqip/two_table.hpp"
#include "test_support.hpp"

using eqip::Assignment;
using eqip::CompareMode;
using eqip::Goal;
using eqip::MatchAlgorithm;
using eqip::Rational;
using eqip::Status;
using eqip::TwoTableOptions;
using eqip::testing::make_instance;

namespace {

std::vector<Rational> column(const eqip::Table<Rational>& t) {
    std::vector<Rational> out;
    for (std::size_t k = 0; k < t.size(); ++k) out.push_back(t.vectors[k][0]);
    return out;
}

TwoTableOptions opts(Goal goal, MatchAlgorithm algo = MatchAlgorithm::sort) {
    TwoTableOptions o;
    o.goal = goal;
    o.algorithm = algo;
    return o;
}

TEST(BuildHalfTables, SubsetSumExample) {
    auto inst = make_instance({{2, 3, 5, 7}}, {5});
    auto h = eqip::build_half_tables<Rational>(inst);
    EXPECT_EQ(column(h.U), (std::vector<Rational>{0, 2, 3, 5}));
    EXPECT_EQ(column(h.V), (std::vector<Rational>{5, 0, -2, -7}));
    for (std::size_t k = 0; k < 4; ++k) {
        EXPECT_EQ(h.U.code(k), k);
        EXPECT_EQ(h.V.code(k), k);
    }
}

TEST(BuildHalfTables, ZeroInstanceAndSingleVariable) {
    auto zero = make_instance({{0, 0, 0}}, {0});
    auto h = eqip::build_half_tables<Rational>(zero);
    EXPECT_EQ(h.U.size(), 4u);
    EXPECT_EQ(h.V.size(), 2u);
    for (auto x : column(h.U)) EXPECT_TRUE(x.is_zero());
    for (auto x : column(h.V)) EXPECT_TRUE(x.is_zero());

    auto one = make_instance({{1}}, {1});
    auto g = eqip::build_half_tables<Rational>(one);
    EXPECT_EQ(column(g.U), (std::vector<Rational>{0, 1}));
    EXPECT_EQ(column(g.V), (std::vector<Rational>{1}));
}

TEST(BuildHalfTables, IncrementalRecomputeAndThreadsAgree) {
    auto spec = eqip::GenSpec{eqip::Family::random, 26, 3, 17};
    spec.with_objective = true;
    auto inst = eqip::gen_random(spec);
    eqip::BuildOptions rec{eqip::TableBuild::recompute, 1};
    eqip::BuildOptions inc{eqip::TableBuild::incremental, 1};
    eqip::BuildOptions par{eqip::TableBuild::incremental, 4};
    auto a = eqip::build_half_tables<Rational>(inst, rec);
    auto b = eqip::build_half_tables<Rational>(inst, inc);
    auto c = eqip::build_half_tables<Rational>(inst, par);
    ASSERT_EQ(a.U.size(), std::size_t{1} << 13);
    for (std::size_t k = 0; k < a.U.size(); ++k) {
        for (std::size_t i = 0; i < 3; ++i) {
            ASSERT_EQ(a.U.vectors[k][i], b.U.vectors[k][i]);
            ASSERT_EQ(a.U.vectors[k][i], c.U.vectors[k][i]);
            ASSERT_EQ(a.V.vectors[k][i], b.V.vectors[k][i]);
            ASSERT_EQ(a.V.vectors[k][i], c.V.vectors[k][i]);
        }
        ASSERT_EQ(a.U.weights[k], c.U.weights[k]);
        ASSERT_EQ(a.V.weights[k], c.V.weights[k]);
    }
}

TEST(BuildHalfTables, TableSizesFollowSplit) {
    for (std::size_t n = 1; n <= 14; ++n) {
        std::vector<std::vector<std::int64_t>> a{std::vector<std::int64_t>(n, 1)};
        auto inst = make_instance(a, {1});
        auto h = eqip::build_half_tables<Rational>(inst);
        EXPECT_EQ(h.U.size(), std::size_t{1} << ((n + 1) / 2));
        EXPECT_EQ(h.V.size(), std::size_t{1} << (n / 2));
    }
}

TEST(SolveTwoTable, CountSubsetSum) {
    auto inst = make_instance({{2, 3, 5, 7}}, {5});
    for (auto algo : {MatchAlgorithm::sort, MatchAlgorithm::recursive}) {
        auto out = eqip::solve_two_table<Rational>(inst, opts(Goal::count, algo));
        EXPECT_EQ(out.status, Status::feasible);
        ASSERT_TRUE(out.solution_count);
        EXPECT_EQ(*out.solution_count, 2);
        ASSERT_TRUE(out.witness);
        EXPECT_TRUE(eqip::evaluate(inst, *out.witness).feasible());
    }
}

TEST(SolveTwoTable, OptimizeExample) {
    auto inst = make_instance({{1, 1, 1, 1}}, {2}, std::vector<std::int64_t>{5, 1, 3, 2});
    for (auto algo : {MatchAlgorithm::sort, MatchAlgorithm::recursive}) {
        auto out = eqip::solve_two_table<Rational>(inst, opts(Goal::optimize, algo));
        EXPECT_EQ(out.status, Status::optimal);
        EXPECT_EQ(out.objective, Rational(3));
        ASSERT_TRUE(out.witness);
        EXPECT_EQ(out.witness->str(), "0101");
    }
}

TEST(SolveTwoTable, Infeasible) {
    auto inst = make_instance({{1, 1}}, {3});
    for (auto goal : {Goal::feasibility, Goal::optimize, Goal::count, Goal::enumerate}) {
        auto out = eqip::solve_two_table<Rational>(inst, opts(goal));
        EXPECT_EQ(out.status, Status::infeasible);
        EXPECT_FALSE(out.witness);
        EXPECT_FALSE(out.objective);
    }
}

TEST(SolveTwoTable, RecursiveRejectsTolerantMode) {
    auto inst = make_instance({{1, 1}}, {1});
    auto o = opts(Goal::feasibility, MatchAlgorithm::recursive);
    o.mode = CompareMode::tolerant(Rational(1, 100));
    EXPECT_THROW(eqip::solve_two_table<Rational>(inst, o), eqip::UnsupportedConfiguration);
}

TEST(SolveTwoTable, FeasibilityStopsEarly) {
    auto inst = make_instance({{0, 0, 0, 0}}, {0});
    auto out = eqip::solve_two_table<Rational>(inst, opts(Goal::feasibility));
    EXPECT_EQ(out.status, Status::feasible);
    EXPECT_TRUE(out.stats.early_exit);
}

TEST(SolveTwoTable, NoConstraintsPicksNegativeCosts) {
    eqip::RawInstance raw{4, 0, {}, {}, std::vector<Rational>{-1, 2, -3, 0}};
    auto inst = eqip::validate_instance(raw);
    auto out = eqip::solve_two_table<Rational>(inst, opts(Goal::optimize));
    EXPECT_EQ(out.objective, Rational(-4));
    EXPECT_EQ(out.witness->str(), "1010");
    auto cnt = eqip::solve_two_table<Rational>(inst, opts(Goal::count));
    EXPECT_EQ(*cnt.solution_count, 16);
}

TEST(SolveTwoTable, EnumerateRespectsLimitAndVerifies) {
    auto inst = make_instance({{1, 1, 1, 1, 1, 1}}, {3});
    auto o = opts(Goal::enumerate);
    o.limit = 1000;
    auto all = eqip::solve_two_table<Rational>(inst, o);
    EXPECT_EQ(all.solutions.size(), 20u);
    std::set<std::string> seen;
    for (const auto& x : all.solutions) {
        EXPECT_TRUE(eqip::evaluate(inst, x).feasible());
        seen.insert(x.str());
    }
    EXPECT_EQ(seen.size(), 20u);
    EXPECT_EQ(seen, eqip::testing::brute_summary(inst).solutions);

    o.limit = 7;
    auto some = eqip::solve_two_table<Rational>(inst, o);
    EXPECT_EQ(some.solutions.size(), 7u);
}

TEST(DecodeWitness, Examples) {
    auto p4 = eqip::split_variables(4, 2);
    EXPECT_EQ(eqip::decode_witness(0b11, 0b00, p4).str(), "1100");
    EXPECT_EQ(eqip::decode_witness(0, 0, p4).str(), "0000");
    auto p5 = eqip::split_variables(5, 2);
    EXPECT_EQ(eqip::decode_witness(0b101, 0b10, p5).str(), "10101");
    EXPECT_THROW(eqip::decode_witness(0b1000, 0, p5), eqip::ContractViolation);
    EXPECT_THROW(eqip::decode_witness(0, 0b100, p5), eqip::ContractViolation);
}

TEST(SolveTwoTable, BlockOptimumIsSeparable) {
    // For each block, min over the Cartesian product equals min_u + min_v.
    std::mt19937_64 rng(31);
    for (int iter = 0; iter < 20; ++iter) {
        eqip::GenSpec spec{eqip::Family::random, 10, 1, 500 + static_cast<std::uint64_t>(iter)};
        spec.range = 2;
        spec.with_objective = true;
        auto inst = eqip::gen_random(spec);
        auto run = eqip::match_two_table<Rational>(inst, opts(Goal::count));
        for (const auto& b : run.matches.blocks) {
            std::optional<Rational> prod, mu, mv;
            for (std::size_t i = 0; i < b.u_size(); ++i) {
                const auto& wu = run.tables.U.weights[run.matches.u_at(b, i)];
                if (!mu || wu < *mu) mu = wu;
                for (std::size_t j = 0; j < b.v_size(); ++j) {
                    Rational w = wu + run.tables.V.weights[run.matches.v_at(b, j)];
                    if (!prod || w < *prod) prod = w;
                }
            }
            for (std::size_t j = 0; j < b.v_size(); ++j) {
                const auto& wv = run.tables.V.weights[run.matches.v_at(b, j)];
                if (!mv || wv < *mv) mv = wv;
            }
            EXPECT_EQ(*prod, *mu + *mv);
        }
    }
}

TEST(SolveTwoTable, AgreesWithDirectSummation) {
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        eqip::GenSpec spec{eqip::Family::random, 4 + seed % 9, 1 + seed % 3, seed};
        spec.range = 2;
        spec.with_objective = seed % 2 == 0;
        auto inst = eqip::gen_random(spec);
        auto truth = eqip::testing::brute_summary(inst);
        for (auto algo : {MatchAlgorithm::sort, MatchAlgorithm::recursive}) {
            auto cnt = eqip::solve_two_table<Rational>(inst, opts(Goal::count, algo));
            ASSERT_EQ(*cnt.solution_count, truth.count) << "seed " << seed;
            auto opt = eqip::solve_two_table<Rational>(inst, opts(Goal::optimize, algo));
            ASSERT_EQ(opt.objective, truth.optimum) << "seed " << seed;
            if (opt.witness) {
                ASSERT_TRUE(truth.solutions.count(opt.witness->str()));
                ASSERT_EQ(eqip::evaluate(inst, *opt.witness).objective, *truth.optimum);
            }
        }
    }
}

TEST(SolveTwoTable, FloatModeVerifiesWithinTolerance) {
    eqip::RawInstance raw{4, 1, {{Rational(1, 10), Rational(2, 10), Rational(3, 10), Rational(4, 10)}},
                          {Rational(3, 10)}, std::nullopt};
    auto inst = eqip::validate_instance(raw);
    auto o = opts(Goal::count);
    o.mode = CompareMode::tolerant(Rational(1, 1000000000));
    auto out = eqip::solve_two_table<double>(inst, o);
    EXPECT_EQ(out.status, Status::feasible);
    EXPECT_EQ(*out.solution_count, 2);
    ASSERT_TRUE(out.witness);
    EXPECT_TRUE(eqip::verify_assignment(inst, *out.witness, o.mode));
    EXPECT_TRUE(out.stats.witness_verified);
}

TEST(SolveTwoTable, BlockLimitRejectsOversizedHalves) {
    std::vector<std::vector<std::int64_t>> a{std::vector<std::int64_t>(64, 1)};
    auto inst = make_instance(a, {1});
    EXPECT_THROW(eqip::solve_two_table<Rational>(inst, opts(Goal::count)), eqip::UnsupportedConfiguration);
}

} // namespace
