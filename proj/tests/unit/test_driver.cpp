#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "kinmix/driver.hpp"
#include "kinmix/errors.hpp"
#include "oracles.hpp"

using namespace kinmix;

namespace {

MixtureParams mixture(double m2, double kn) {
    MixtureParams p;
    p.m2 = m2;
    p.eps1 = p.epst1 = p.eps2 = p.epst2 = kn;
    return p;
}

InitialCondition global_equilibrium() {
    InitialCondition ic;
    ic.info = {"equilibrium", "", false};
    ic.f1 = [](double, double v) { return oracle::gaussian(1.0, 0.2, 1.0, 1.0, v); };
    ic.f2 = [](double, double v) { return oracle::gaussian(0.8, 0.2, 1.0, 1.0, v); };
    ic.average1 = [](double, double) { return equilibrium_moment_vector({1.0, 0.2, 1.0}, 1.0); };
    ic.average2 = [](double, double) { return equilibrium_moment_vector({0.8, 0.2, 1.0}, 1.0); };
    return ic;
}

RunConfig small_general() {
    RunConfig c = preset_config("cosine-perturbed");
    c.domain.nx = 16;
    c.domain.nv = 32;
    c.np1 = c.np2 = 20000;
    c.dt = 0.01;
    c.t_end = 0.05;
    c.mixture.eps1 = c.mixture.epst1 = c.mixture.eps2 = c.mixture.epst2 = 1.0;
    return c;
}

std::filesystem::path scratch_dir(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / ("kinmix_test_" + name);
    std::filesystem::remove_all(dir);
    return dir;
}

}  // namespace

TEST(Driver, GlobalEquilibriumIsInvariant) {
    const ValidatedParams p = validate_params(mixture(1.0, 1.0));
    GridSpec g;
    g.nx = 16;
    MicroMacroState s = initialize(global_equilibrium(), g, 5000, 5000, 3, p);
    const MacroState m0 = s.macro;
    for (int k = 0; k < 5; ++k) step(s, p, 0.01);
    for (std::size_t i = 0; i < g.nx; ++i) {
        EXPECT_NEAR(s.macro.species1[i].n, m0.species1[i].n, 1e-12);
        EXPECT_NEAR(s.macro.species1[i].nu, m0.species1[i].nu, 1e-12);
        EXPECT_NEAR(s.macro.species2[i].E, m0.species2[i].E, 1e-12);
    }
    EXPECT_LT(s.ps1.total_abs_weight(), 1e-10);
    EXPECT_LT(s.ps2.total_abs_weight(), 1e-10);
    EXPECT_EQ(s.steps, 5u);
}

TEST(Driver, StepKeepsRemaindersMatchedAndConserves) {
    const RunConfig c = small_general();
    const ValidatedParams p = validate_params(c.mixture);
    MicroMacroState s =
        initialize(make_initial_condition(c.preset, c.beta, 1.0), c.domain, c.np1, c.np2, c.seed, p);
    const Diagnostics d0 = diagnostics(s, p);
    EXPECT_LE(d0.matching_residual, 1e-12);
    for (int k = 0; k < 5; ++k) step(s, p, c.dt);
    const Diagnostics d = diagnostics(s, p);
    EXPECT_LE(d.matching_residual, 1e-12);
    EXPECT_NEAR(d.mass1, d0.mass1, 1e-13 * d0.mass1);
    EXPECT_NEAR(d.mass2, d0.mass2, 1e-13 * d0.mass2);
    EXPECT_NEAR(d.momentum, d0.momentum, 1e-10);
    EXPECT_NEAR(d.energy, d0.energy, 1e-10 * d0.energy);
    EXPECT_NEAR(s.macro.t, 0.05, 1e-14);
}

TEST(Driver, ZeroStepRunHasOnlyTheInitialRow) {
    RunConfig c = small_general();
    c.t_end = 0.0;
    const RunResult r = run(c);
    EXPECT_EQ(r.steps, 0u);
    ASSERT_EQ(r.rows.size(), 1u);
    EXPECT_EQ(r.rows[0].t, 0.0);
}

TEST(Driver, FixedSeedIsReproducible) {
    const RunConfig c = small_general();
    const RunResult a = run(c);
    const RunResult b = run(c);
    ASSERT_EQ(a.rows.size(), b.rows.size());
    for (std::size_t k = 0; k < a.rows.size(); ++k) {
        EXPECT_EQ(a.rows[k].u_gap_inf, b.rows[k].u_gap_inf);
        EXPECT_EQ(a.rows[k].abs_weight2, b.rows[k].abs_weight2);
    }
    RunConfig other = c;
    other.seed = c.seed + 1;
    EXPECT_NE(run(other).rows.back().abs_weight1, a.rows.back().abs_weight1);
}

TEST(Driver, HomogeneousRunWritesOutputs) {
    RunConfig c = preset_config("maxwellian-maxwellian");
    c.np1 = c.np2 = 2000;
    c.dt = 1e-3;
    c.t_end = 0.01;
    c.output_every = 5;
    const auto dir = scratch_dir("homogeneous");
    const RunResult r = run(c, dir);
    ASSERT_EQ(r.rows.size(), 11u);
    EXPECT_TRUE(std::filesystem::exists(dir / "config.json"));
    EXPECT_TRUE(std::filesystem::exists(dir / "timeseries.csv"));
    for (int n : {0, 5, 10}) {
        char name[64];
        std::snprintf(name, sizeof name, "snapshot_s2_%06d.csv", n);
        EXPECT_TRUE(std::filesystem::exists(dir / name)) << name;
    }
    EXPECT_FALSE(std::filesystem::exists(dir / "snapshot_s1_000003.csv"));
    for (const TimeSeriesRow& row : r.rows) {
        EXPECT_NEAR(row.u_gap_sq, row.analytic_u_gap_sq, 1e-9);
        EXPECT_NEAR(row.T_gap, row.analytic_T_gap, 1e-9);
        EXPECT_FALSE(std::isnan(row.entropy));
    }
    std::ifstream in(dir / "config.json");
    std::stringstream text;
    text << in.rdbuf();
    EXPECT_EQ(parse_config(text.str()), c);
    std::filesystem::remove_all(dir);
}

TEST(Driver, ReferenceModeRuns) {
    RunConfig c = small_general();
    c.mode = RunMode::Reference;
    c.dt = 0.02;
    c.t_end = 0.1;
    const RunResult r = run(c);
    ASSERT_EQ(r.rows.size(), 6u);
    EXPECT_NEAR(r.rows.back().mass1, r.rows.front().mass1, 1e-12 * r.rows.front().mass1);
    EXPECT_TRUE(std::isnan(r.rows.back().abs_weight1));
}

TEST(Driver, FailuresNameTheStep) {
    RunConfig c = small_general();
    c.dt = 1.0;
    c.t_end = 2.0;
    try {
        run(c);
        FAIL() << "expected a CFL failure";
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("step 1"), std::string::npos) << e.what();
    }
}

TEST(Driver, SnapshotReconstructsTheMaxwellianPart) {
    const ValidatedParams p = validate_params(mixture(1.0, 1.0));
    GridSpec g;
    g.nx = 4;
    g.nv = 40;
    const MicroMacroState s = initialize(global_equilibrium(), g, 2000, 2000, 1, p);
    const Snapshot snap = snapshot(s, Species::Two, p);
    ASSERT_EQ(snap.x.size(), 4u);
    ASSERT_EQ(snap.v.size(), 40u);
    ASSERT_EQ(snap.f.size(), 160u);
    for (std::size_t j = 0; j < snap.v.size(); ++j) {
        EXPECT_NEAR(snap.f[j], oracle::gaussian(0.8, 0.2, 1.0, 1.0, snap.v[j]), 1e-10);
    }
}
