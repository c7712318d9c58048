#include <cmath>

#include "doctest.h"
#include "rspide/errors.hpp"
#include "rspide/time_stepper.hpp"
#include "test_models.hpp"
#include "test_oracles.hpp"

using namespace rspide;

TEST_SUITE("time_stepper") {

TEST_CASE("initial condition is the strict indicator") {
    CollocationGrid grid = uniform_grid(-8.0, 8.0, 9);  // nodes -8,-6,...,8
    Eigen::MatrixXd u0 = initial_condition(grid, 0.0, 2);
    for (int r = 0; r < 2; ++r) {
        for (int i = 0; i < 9; ++i) {
            const double want = grid.nodes[i] < 0.0 ? 1.0 : 0.0;
            CHECK(u0(r, i) == want);
        }
    }
    // node exactly at the barrier stays 0 (x < k is strict)
    CHECK(u0(0, 4) == 0.0);

    Eigen::MatrixXd u1 = initial_condition(grid, -8.0 + 1e-9, 1);
    CHECK(u1.sum() == 0.0);  // only nodes strictly below the barrier get 1
    Eigen::MatrixXd u2 = initial_condition(grid, -6.0 + 1e-9, 1);
    CHECK(u2.sum() == 1.0);

    CHECK_THROWS_AS(initial_condition(grid, -9.0, 1), Error);
    CHECK_THROWS_AS(initial_condition(grid, 8.0, 1), Error);
}

TEST_CASE("barrier snapping picks the nearest inter-node midpoint") {
    CollocationGrid grid = uniform_grid(-8.0, 8.0, 9);
    CHECK(snap_barrier_to_midpoint(grid, -0.1) == doctest::Approx(-1.0));
    CHECK(snap_barrier_to_midpoint(grid, 0.4) == doctest::Approx(1.0));
}

TEST_CASE("zero operator leaves the coefficients fixed") {
    CollocationGrid grid = uniform_grid(-2.0, 2.0, 17);
    BasisKind b{BasisFamily::Gaussian, 0.7 / grid.spacing};
    OperatorBlocks blocks;
    blocks.regimes = 1;
    blocks.nodes = 17;
    blocks.phi = gram_matrix(b, grid).matrix;
    blocks.phi_L = Eigen::MatrixXd::Zero(17, 17);

    SolverConfig cfg;
    cfg.n_steps = 5;
    cfg.horizon = 1.0;
    cfg.barrier_log = -0.1;
    ThetaStepper stepper(blocks, grid, b, cfg);

    // start from smooth data compatible with the boundary values 1 and 0
    Eigen::MatrixXd nodal(1, 17);
    for (int i = 0; i < 17; ++i) nodal(0, i) = 0.5 * std::erfc(grid.nodes[i]);
    Eigen::VectorXd coeffs = stepper.interpolate(nodal);
    Eigen::VectorXd next = stepper.step(coeffs);
    CHECK((next - coeffs).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("boundary rows pin the solution after every step") {
    MarkovLevyModel model = testmodels::vg_model(testmodels::kSocGen);
    CollocationGrid grid = uniform_grid(-8.0, 8.0, 65);
    BasisKind b{BasisFamily::Gaussian, 0.7 / grid.spacing};
    SolverConfig cfg;
    cfg.n_steps = 7;
    cfg.horizon = 1.0;
    cfg.barrier_log = snap_barrier_to_midpoint(grid, -0.1);
    SolutionSurface s = solve(model, b, grid, cfg, QuadratureConfig{});
    for (int n = 1; n <= cfg.n_steps; ++n) {
        for (int r = 0; r < 2; ++r) {
            CHECK(s.value(n, r, 0) == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(std::abs(s.value(n, r, 64)) < 1e-12);
        }
    }
}

TEST_CASE("pure diffusion matches the closed-form Normal CDF") {
    MarkovLevyModel model = testmodels::diffusion_model(0.0, 0.3);
    CollocationGrid grid = uniform_grid(-8.0, 8.0, 256);
    BasisKind b{BasisFamily::Gaussian, 0.7 / grid.spacing};
    SolverConfig cfg;
    cfg.n_steps = 200;
    cfg.horizon = 1.0;
    cfg.barrier_log = snap_barrier_to_midpoint(grid, 0.0);
    SolutionSurface s = solve(model, b, grid, cfg, QuadratureConfig{});
    double max_err = 0.0;
    for (int i = 0; i < grid.size(); ++i) {
        const double x = grid.nodes[i];
        if (std::abs(x) > 6.0) continue;
        const double want = testref::normal_cdf((cfg.barrier_log - x) / 0.3);
        max_err = std::max(max_err, std::abs(s.value(cfg.n_steps, 0, i) - want));
    }
    CHECK(max_err <= 5e-3);
}

TEST_CASE("tau = 0 slice equals the initial condition") {
    MarkovLevyModel model = testmodels::vg_model(testmodels::kAxa);
    CollocationGrid grid = uniform_grid(-8.0, 8.0, 65);
    BasisKind b{BasisFamily::Gaussian, 0.7 / grid.spacing};
    SolverConfig cfg;
    cfg.n_steps = 4;
    cfg.horizon = 1.0;
    cfg.barrier_log = -0.1;
    SolutionSurface s = solve(model, b, grid, cfg, QuadratureConfig{});
    Eigen::MatrixXd u0 = initial_condition(grid, -0.1, 2);
    CHECK((s.values[0] - u0).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("surface is monotone in x and in tau, with bounded overshoot") {
    MarkovLevyModel model = testmodels::vg_model(testmodels::kSocGen);
    CollocationGrid grid = uniform_grid(-8.0, 8.0, 256);
    BasisKind b{BasisFamily::Gaussian, 0.7 / grid.spacing};
    SolverConfig cfg;
    cfg.n_steps = 100;
    cfg.horizon = 5.0;
    cfg.barrier_log = snap_barrier_to_midpoint(grid, -0.1);
    SolutionSurface s = solve(model, b, grid, cfg, QuadratureConfig{});

    CHECK(s.max_overshoot() <= 5e-3);
    CHECK(s.max_residual <= 1e-9);

    for (int n = 0; n <= cfg.n_steps; ++n)
        for (int r = 0; r < 2; ++r)
            for (int i = 1; i + 1 < grid.size(); ++i)
                CHECK(s.value(n, r, i + 1) <= s.value(n, r, i) + 1e-3);

    // PD non-decreasing in horizon at x = k - 0.5
    const double x_probe = cfg.barrier_log - 0.5;
    for (int r = 0; r < 2; ++r) {
        double prev = -1.0;
        for (int n = 0; n <= cfg.n_steps; ++n) {
            const double v = s.evaluate(n, r, x_probe);
            CHECK(v >= prev - 1e-6);
            prev = v;
        }
    }

    // clipped values stay inside [0, 1]
    for (int r = 0; r < 2; ++r)
        for (int i = 0; i < grid.size(); ++i) {
            const double c = s.clipped(cfg.n_steps, r, i);
            CHECK(c >= 0.0);
            CHECK(c <= 1.0);
        }
}

TEST_CASE("fully implicit and Crank-Nicolson converge to the same values") {
    MarkovLevyModel model = testmodels::vg_model(testmodels::kSocGen);
    CollocationGrid grid = uniform_grid(-8.0, 8.0, 128);
    BasisKind b{BasisFamily::Gaussian, 0.7 / grid.spacing};
    SolverConfig implicit_cfg;
    implicit_cfg.theta = 0.0;
    implicit_cfg.n_steps = 400;
    implicit_cfg.horizon = 2.0;
    implicit_cfg.barrier_log = snap_barrier_to_midpoint(grid, -0.1);
    SolverConfig cn_cfg = implicit_cfg;
    cn_cfg.theta = 0.5;

    OperatorBlocks blocks = assemble_blocks(model, b, grid, QuadratureConfig{});
    SolutionSurface si = solve_with_blocks(blocks, grid, b, implicit_cfg);
    SolutionSurface sc = solve_with_blocks(blocks, grid, b, cn_cfg);
    double worst = 0.0;
    for (int r = 0; r < 2; ++r)
        for (int i = 0; i < grid.size(); ++i)
            worst = std::max(worst,
                             std::abs(si.value(400, r, i) - sc.value(400, r, i)));
    CHECK(worst <= 1e-3);
}

TEST_CASE("solver configuration validation") {
    SolverConfig cfg;
    cfg.theta = 1.5;
    CHECK_THROWS_AS(validate(cfg), Error);
    cfg.theta = 0.5;
    cfg.n_steps = 0;
    CHECK_THROWS_AS(validate(cfg), Error);
    cfg.n_steps = 10;
    cfg.horizon = -1.0;
    CHECK_THROWS_AS(validate(cfg), Error);
}

}  // TEST_SUITE
