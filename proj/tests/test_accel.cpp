#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lrgd/accel.hpp"

using namespace lrgd;

namespace {

ProblemInstance identity_instance(std::size_t n, std::size_t r, std::size_t k,
                                  std::vector<double> singulars = {}) {
    if (singulars.empty()) singulars.assign(r, 1.0);
    return make_measurements(make_ground_truth(n, r, std::move(singulars)),
                             MeasurementOperator::make_identity(n, n), k, Mode::asymmetric);
}

}  // namespace

TEST_CASE("trigger fires at the exact solution for any positive gamma") {
    ProblemInstance inst = identity_instance(4, 1, 2, {1.0});
    DenseMatrix F(4, 2), G(4, 2);
    F(0, 0) = 1.0;
    G(0, 0) = 1.0;
    AccelConfig cfg;
    cfg.trigger_mode = AccelConfig::TriggerMode::threshold;
    cfg.gamma = 1e-12;
    CHECK(trigger_check(make_asymmetric_state(F, G), inst, cfg));
}

TEST_CASE("threshold trigger agrees with the recorded residual norm") {
    ProblemInstance inst = identity_instance(6, 2, 3);
    auto [F, G] = init_asymmetric_imbalanced(6, 3, 0.5, 1.0 / 3.0, Seed{3});
    GDState s = make_asymmetric_state(F, G);
    const double resid = spectral_norm(normal_residual(s, inst));
    AccelConfig below, above;
    below.gamma = resid * 0.99;
    above.gamma = resid * 1.01;
    CHECK(trigger_check(s, inst, below) == false);
    CHECK(trigger_check(s, inst, above) == true);
}

TEST_CASE("fixed-iteration trigger is exact at t_fire") {
    ProblemInstance inst = identity_instance(6, 2, 3);
    auto [F, G] = init_asymmetric_imbalanced(6, 3, 0.5, 1.0 / 3.0, Seed{4});
    GDState s = make_asymmetric_state(F, G);
    AccelConfig cfg;
    cfg.trigger_mode = AccelConfig::TriggerMode::fixed_iteration;
    cfg.t_fire = 5;
    s.t = 4;
    CHECK(trigger_check(s, inst, cfg) == false);
    s.t = 5;
    CHECK(trigger_check(s, inst, cfg) == true);
    s.t = 6;
    CHECK(trigger_check(s, inst, cfg) == false);  // exact match only, t_fire +/- 1 stays off
}

TEST_CASE("rebalance preserves the product across random pairs") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        DenseMatrix F = gaussian_matrix(20, 5, 1.0, Seed{seed});
        DenseMatrix G = gaussian_matrix(20, 5, 0.3, Seed{seed + 100});
        DenseMatrix before = matmul(F, transpose(G));
        RebalanceResult res = rebalance_transform(F, G, 0.7);
        DenseMatrix after = matmul(res.F, transpose(res.G));
        CHECK(frobenius_norm(sub(after, before)) <= 1e-9 * std::max(1.0, frobenius_norm(before)));
        CHECK(res.clamped == 0);
        CHECK(res.smallest_d > 0.0);
    }
}

TEST_CASE("rebalance forces F^T F = beta^2 I") {
    DenseMatrix F = gaussian_matrix(15, 4, 1.0, Seed{7});
    DenseMatrix G = gaussian_matrix(15, 4, 1.0, Seed{8});
    const double beta = 0.45;
    RebalanceResult res = rebalance_transform(F, G, beta);
    DenseMatrix gram = matmul(transpose(res.F), res.F);
    DenseMatrix target = scale(DenseMatrix::identity(4), beta * beta);
    CHECK(frobenius_norm(sub(gram, target)) <= 1e-9);

    // all eigenvalues of F'^T F' within a tight band around beta^2
    auto [mn, mx] = sym_eig_range(gram);
    CHECK(mn >= 0.999 * beta * beta);
    CHECK(mx <= 1.001 * beta * beta);
}

TEST_CASE("rebalance is idempotent up to orthogonal freedom") {
    DenseMatrix F = gaussian_matrix(12, 3, 1.0, Seed{9});
    DenseMatrix G = gaussian_matrix(12, 3, 1.0, Seed{10});
    const double beta = 0.6;
    RebalanceResult once = rebalance_transform(F, G, beta);
    RebalanceResult twice = rebalance_transform(once.F, once.G, beta);
    // the Gram matrix and the product are unchanged by a second application
    CHECK(frobenius_norm(sub(matmul(transpose(twice.F), twice.F),
                             matmul(transpose(once.F), once.F))) <= 1e-9);
    CHECK(frobenius_norm(sub(matmul(twice.F, transpose(twice.G)),
                             matmul(once.F, transpose(once.G)))) <= 1e-9);
}

TEST_CASE("clamp engages on a rank-deficient F without destroying the product") {
    DenseMatrix u(10, 1), v(4, 1);
    for (std::size_t i = 0; i < 10; ++i) u(i, 0) = 1.0;
    v(0, 0) = 1.0;
    DenseMatrix F = matmul(u, transpose(v));  // rank 1, three zero singulars
    DenseMatrix G = gaussian_matrix(10, 4, 1.0, Seed{11});
    RebalanceResult res = rebalance_transform(F, G, 0.5);
    CHECK(res.clamped == 3);
    CHECK(res.F.all_finite());
    CHECK(res.G.all_finite());
    // product preservation is exact on the non-clamped subspace; the clamped
    // directions carried zero mass in F, so FG^T is still reproduced
    CHECK(frobenius_norm(sub(matmul(res.F, transpose(res.G)), matmul(F, transpose(G)))) <= 1e-9);
}

TEST_CASE("rebalance rejects a nonpositive beta") {
    DenseMatrix F = gaussian_matrix(6, 2, 1.0, Seed{12});
    CHECK_THROWS_AS(rebalance_transform(F, F, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(rebalance_transform(F, F, -1.0), std::invalid_argument);
}

TEST_CASE("run_with_accel fires exactly once at the requested iteration") {
    ProblemInstance inst = identity_instance(10, 2, 3);
    auto [F, G] = init_asymmetric_imbalanced(10, 3, 0.3, 1.0 / 3.0, Seed{13});
    GDConfig gd;
    gd.eta = 0.1;
    gd.t_max = 400;
    gd.log_stride = 10;
    AccelConfig ac;
    ac.trigger_mode = AccelConfig::TriggerMode::fixed_iteration;
    ac.t_fire = 100;
    ac.beta = 0.5;
    AccelRun out = run_with_accel(inst, make_asymmetric_state(F, G), gd, ac);
    REQUIRE(out.fire_iteration.has_value());
    CHECK(*out.fire_iteration == 100);
    CHECK(out.trace.back().loss_fro2 < out.trace.front().loss_fro2);
    // the fire iteration itself is logged
    bool logged_fire = false;
    for (const auto& rec : out.trace) logged_fire = logged_fire || rec.t == 100;
    CHECK(logged_fire);
}

TEST_CASE("t_fire = 0 rebalances before the first step") {
    ProblemInstance inst = identity_instance(8, 2, 3);
    auto [F, G] = init_asymmetric_imbalanced(8, 3, 0.3, 1.0 / 3.0, Seed{14});
    GDConfig gd;
    gd.eta = 0.1;
    gd.t_max = 50;
    gd.log_stride = 10;
    AccelConfig ac;
    ac.trigger_mode = AccelConfig::TriggerMode::fixed_iteration;
    ac.t_fire = 0;
    ac.beta = 0.4;
    AccelRun out = run_with_accel(inst, make_asymmetric_state(F, G), gd, ac);
    REQUIRE(out.fire_iteration.has_value());
    CHECK(*out.fire_iteration == 0);

    // a huge threshold is equivalent to firing immediately
    AccelConfig big;
    big.trigger_mode = AccelConfig::TriggerMode::threshold;
    big.gamma = 1e9;
    big.beta = 0.4;
    AccelRun out2 = run_with_accel(inst, make_asymmetric_state(F, G), gd, big);
    REQUIRE(out2.fire_iteration.has_value());
    CHECK(*out2.fire_iteration == 0);
    CHECK(out.trace.back().loss_fro2 == out2.trace.back().loss_fro2);
}

TEST_CASE("post-fire convergence beats the unaccelerated tail") {
    ProblemInstance inst = identity_instance(12, 2, 4);
    auto [F, G] = init_asymmetric_imbalanced(12, 4, 0.1, 1.0 / 3.0, Seed{15});
    GDConfig gd;
    gd.eta = 0.1;
    gd.t_max = 3000;
    gd.log_stride = 10;

    auto plain = run(inst, make_asymmetric_state(F, G), gd);

    AccelConfig ac;
    ac.trigger_mode = AccelConfig::TriggerMode::fixed_iteration;
    ac.t_fire = 1500;
    ac.beta = 0.5;  // 0.5 * sigma_r with unit singulars
    AccelRun accel = run_with_accel(inst, make_asymmetric_state(F, G), gd, ac);

    CHECK(accel.trace.back().loss_fro2 < plain.back().loss_fro2);
}
