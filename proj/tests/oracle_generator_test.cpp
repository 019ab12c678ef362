#include <gtest/gtest.h>

#include <cstdint>
#include <string>
#include <vector>

#include "eqip/generator.hpp"
#include "eqip/instance_io.hpp"
#include "eqip/oracle.hpp"
#include "eqip/two_table.hpp"
#include "test_support.hpp"

using eqip::Family;
using eqip::GenSpec;
using eqip::Goal;
using eqip::Rational;
using eqip::Status;
using eqip::testing::make_instance;

namespace {

GenSpec spec_of(Family f, std::size_t n, std::size_t m, std::uint64_t seed) {
    GenSpec s;
    s.family = f;
    s.n = n;
    s.m = m;
    s.seed = seed;
    return s;
}

TEST(BruteForce, Examples) {
    auto ss = make_instance({{2, 3, 5, 7}}, {5});
    auto out = eqip::brute_force_solve(ss, Goal::count);
    EXPECT_EQ(out.status, Status::feasible);
    EXPECT_EQ(*out.solution_count, 2);

    auto bad = make_instance({{1, 1}}, {3});
    EXPECT_EQ(eqip::brute_force_solve(bad, Goal::feasibility).status, Status::infeasible);

    eqip::RawInstance raw{2, 0, {}, {}, std::vector<Rational>{-1, 2}};
    auto opt = eqip::brute_force_solve(eqip::validate_instance(raw), Goal::optimize);
    EXPECT_EQ(opt.status, Status::optimal);
    EXPECT_EQ(opt.objective, Rational(-1));
    EXPECT_EQ(opt.witness->str(), "10");
}

TEST(BruteForce, LexicographicallyLeastOptimalWitness) {
    // 1100 and 0011 both have cost 0; 0011 is lexicographically smaller
    auto inst = make_instance({{1, 1, 1, 1}}, {2}, std::vector<std::int64_t>{0, 0, 0, 0});
    auto out = eqip::brute_force_solve(inst, Goal::optimize);
    EXPECT_EQ(out.witness->str(), "0011");
    EXPECT_EQ(*out.solution_count, 6);
}

TEST(BruteForce, EnumerateInLexicographicOrder) {
    auto inst = make_instance({{1, 1, 1}}, {1});
    auto out = eqip::brute_force_solve(inst, Goal::enumerate);
    ASSERT_EQ(out.solutions.size(), 3u);
    EXPECT_EQ(out.solutions[0].str(), "001");
    EXPECT_EQ(out.solutions[2].str(), "100");
}

TEST(BruteForce, RefusesAboveCap) {
    std::vector<std::vector<std::int64_t>> a{std::vector<std::int64_t>(25, 1)};
    auto inst = make_instance(a, {1});
    EXPECT_THROW(eqip::brute_force_solve(inst, Goal::feasibility), eqip::UnsupportedConfiguration);
    auto small = make_instance({{1, 1, 1}}, {1});
    EXPECT_THROW(eqip::brute_force_solve(small, Goal::feasibility, 2), eqip::UnsupportedConfiguration);
}

TEST(BruteForce, MatchesDirectSummation) {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        auto s = spec_of(Family::random, 3 + seed % 8, 1 + seed % 3, seed);
        s.range = 2;
        s.with_objective = true;
        auto inst = eqip::gen_random(s);
        auto truth = eqip::testing::brute_summary(inst);
        auto out = eqip::brute_force_solve(inst, Goal::optimize);
        EXPECT_EQ(*out.solution_count, truth.count);
        EXPECT_EQ(out.objective, truth.optimum);
    }
}

TEST(GenRandom, Deterministic) {
    auto s = spec_of(Family::random, 10, 3, 42);
    s.with_objective = true;
    auto a = eqip::gen_random(s);
    auto b = eqip::gen_random(s);
    EXPECT_EQ(a, b);
    EXPECT_EQ(eqip::write_instance_file(a, {}), eqip::write_instance_file(b, {}));
    s.seed = 43;
    EXPECT_NE(eqip::gen_random(s), a);
}

TEST(GenRandom, RangeContainment) {
    auto s = spec_of(Family::random, 4, 2, 7);
    s.range = 1;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        s.seed = seed;
        auto inst = eqip::gen_random(s);
        for (std::size_t i = 0; i < 2; ++i) {
            for (std::size_t j = 0; j < 4; ++j) {
                EXPECT_LE(eqip::abs(inst.a(i, j)), Rational(1));
                EXPECT_TRUE(inst.a(i, j).is_integer());
            }
            EXPECT_LE(eqip::abs(inst.b()[i]), Rational(1));
        }
    }
}

TEST(GenRandom, DensityMasksEntries) {
    auto s = spec_of(Family::random, 40, 20, 9);
    s.density = 0.25;
    auto inst = eqip::gen_random(s);
    std::size_t zeros = 0;
    for (std::size_t i = 0; i < 20; ++i)
        for (std::size_t j = 0; j < 40; ++j) zeros += inst.a(i, j).is_zero();
    // expected fraction of zeros is 0.75 + 0.25/11
    EXPECT_GT(zeros, 500u);
    EXPECT_LT(zeros, 700u);
}

TEST(GenRandom, StatusMatchesOracle) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto s = spec_of(Family::random, 12, 2, seed);
        s.range = 2;
        auto inst = eqip::gen_random(s);
        eqip::TwoTableOptions o;
        o.goal = Goal::feasibility;
        EXPECT_EQ(eqip::solve_two_table<Rational>(inst, o).status,
                  eqip::brute_force_solve(inst, Goal::feasibility).status);
    }
}

TEST(GenRandom, RejectsInvalidSpecs) {
    auto s = spec_of(Family::random, 0, 1, 1);
    EXPECT_THROW(eqip::gen_random(s), eqip::ValidationError);
    s.n = 4;
    s.density = 0.0;
    EXPECT_THROW(eqip::gen_random(s), eqip::ValidationError);
    s.density = 1.5;
    EXPECT_THROW(eqip::gen_random(s), eqip::ValidationError);
    s.density = 1.0;
    s.range = 0;
    EXPECT_THROW(eqip::gen_random(s), eqip::ValidationError);
}

TEST(GenPlanted, WitnessIsFeasibleAndBoundsOptimum) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto s = spec_of(Family::planted, 12, 1 + seed % 4, seed);
        s.with_objective = true;
        auto [inst, x] = eqip::gen_planted(s);
        ASSERT_TRUE(eqip::evaluate(inst, x).feasible());
        eqip::TwoTableOptions o;
        o.goal = Goal::optimize;
        auto out = eqip::solve_two_table<Rational>(inst, o);
        ASSERT_EQ(out.status, Status::optimal);
        EXPECT_LE(*out.objective, eqip::evaluate(inst, x).objective);
        EXPECT_EQ(out.objective, eqip::brute_force_solve(inst, Goal::optimize).objective);
    }
}

TEST(SubsetSum, RunningExample) {
    std::vector<Rational> w{2, 3, 5, 7};
    Rational target = w[0] + w[1];
    auto inst = eqip::subset_sum_instance(w, target);
    EXPECT_EQ(inst.m(), 1u);
    EXPECT_EQ(inst.b()[0], Rational(5));
    EXPECT_EQ(*eqip::brute_force_solve(inst, Goal::count).solution_count, 2);
}

TEST(SubsetSum, PlantedTargetIsFeasible) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        auto s = spec_of(Family::subset_sum, 10, 1, seed);
        s.range = 50;
        auto inst = eqip::gen_subset_sum(s);
        EXPECT_EQ(inst.m(), 1u);
        for (std::size_t j = 0; j < inst.n(); ++j) {
            EXPECT_GE(inst.a(0, j), Rational(1));
            EXPECT_LE(inst.a(0, j), Rational(50));
        }
        EXPECT_NE(eqip::brute_force_solve(inst, Goal::feasibility).status, Status::infeasible);
    }
}

TEST(SubsetSum, UniformTargetMatchesOracle) {
    int infeasible = 0;
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        auto s = spec_of(Family::subset_sum, 10, 1, seed);
        s.range = 1000;
        s.planted_target = false;
        auto inst = eqip::gen_subset_sum(s);
        auto oracle = eqip::brute_force_solve(inst, Goal::feasibility).status;
        eqip::TwoTableOptions o;
        o.goal = Goal::feasibility;
        EXPECT_EQ(eqip::solve_two_table<Rational>(inst, o).status, oracle);
        infeasible += oracle == Status::infeasible;
    }
    EXPECT_GT(infeasible, 0);
}

TEST(Generator, MetadataNamesTheRng) {
    auto s = spec_of(Family::planted, 6, 2, 5);
    auto text = eqip::describe(s);
    EXPECT_NE(text.find("mt19937_64"), std::string::npos);
    EXPECT_NE(text.find("seed=5"), std::string::npos);
    EXPECT_NE(text.find("planted"), std::string::npos);
}

} // namespace
