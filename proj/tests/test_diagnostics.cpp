#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lrgd/diagnostics.hpp"
#include "lrgd/run.hpp"
#include "lrgd/toycase.hpp"

using namespace lrgd;

namespace {

ProblemInstance identity_instance(std::size_t n, std::size_t r, std::size_t k, Mode mode,
                                  std::vector<double> singulars = {}) {
    if (singulars.empty()) singulars.assign(r, 1.0);
    return make_measurements(make_ground_truth(n, r, std::move(singulars)),
                             MeasurementOperator::make_identity(n, n), k, mode);
}

Series geometric_series(double rho, long n, double y0 = 1.0) {
    Series s;
    double y = y0;
    for (long t = 0; t < n; ++t) {
        s.emplace_back(t, y);
        y *= rho;
    }
    return s;
}

}  // namespace

TEST_CASE("split_blocks partitions rows") {
    DenseMatrix F = gaussian_matrix(6, 3, 1.0, Seed{1});
    DenseMatrix G = gaussian_matrix(6, 3, 1.0, Seed{2});
    BlockView bv = split_blocks(F, G, 2);
    CHECK(bv.U.rows() == 2);
    CHECK(bv.J.rows() == 4);
    CHECK(bv.V.rows() == 2);
    CHECK(bv.K.rows() == 4);
    for (std::size_t j = 0; j < 3; ++j) {
        CHECK(bv.U(0, j) == F(0, j));
        CHECK(bv.J(0, j) == F(2, j));
        CHECK(bv.V(1, j) == G(1, j));
        CHECK(bv.K(3, j) == G(5, j));
    }

    BlockView none = split_blocks(F, G, 0);
    CHECK(none.U.rows() == 0);
    CHECK(none.J.rows() == 6);
    CHECK(none.K(0, 0) == G(0, 0));
    CHECK_THROWS_AS(split_blocks(F, G, 6), std::invalid_argument);  // r must stay below n
    CHECK_THROWS_AS(split_blocks(F, G, 7), std::invalid_argument);
}

TEST_CASE("record at the exact solution is all zeros") {
    ProblemInstance inst = identity_instance(5, 2, 3, Mode::asymmetric, {2.0, 1.0});
    DenseMatrix F(5, 3), G(5, 3);
    F(0, 0) = 2.0;
    F(1, 1) = 1.0;
    G(0, 0) = 1.0;
    G(1, 1) = 1.0;
    TraceRecord rec = record(make_asymmetric_state(F, G), inst);
    CHECK(rec.loss_fro2 == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(rec.loss_spec == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(rec.train_loss == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(*rec.M_t == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(*rec.P_t == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(rec.potential_At.has_value() == false);  // symmetric-only field stays unset
}

TEST_CASE("record on the toy start") {
    const double alpha = 0.5;
    ProblemInstance inst = identity_instance(6, 2, 3, Mode::asymmetric);
    auto [F, G] = init_toy(6, 2, 3, alpha);
    TraceRecord rec = record(make_asymmetric_state(F, G), inst);

    // ||J V^T|| = 0, ||U K^T|| = 0, ||U V^T - Sigma_r|| = 1 - alpha^2
    CHECK(*rec.M_t == doctest::Approx(1.0 - alpha * alpha).epsilon(1e-12));
    CHECK(*rec.P_t == doctest::Approx(1.0 - alpha * alpha).epsilon(1e-12));
    // ||J K^T|| = a0 b0 = alpha^2 / 3
    CHECK(*rec.S_t == doctest::Approx(alpha * alpha / 3.0).epsilon(1e-12));
    CHECK(*rec.norm_UmV == doctest::Approx(0.0).epsilon(1e-15));

    // Delta = F^T F - G^T G = diag(0, 0, alpha^2 - alpha^2/9) by hand
    CHECK(std::abs(*rec.delta_min) <= 1e-12);
    CHECK(*rec.delta_max == doctest::Approx(alpha * alpha * 8.0 / 9.0).epsilon(1e-12));

    // loss matches the scalar closed form
    ToyState ts = make_toy_state(alpha);
    CHECK(rec.loss_fro2 == doctest::Approx(toy_loss(ts, 6, 2)).epsilon(1e-12));
}

TEST_CASE("symmetric record carries the tail potential") {
    ProblemInstance inst = identity_instance(5, 2, 3, Mode::symmetric);
    DenseMatrix X(5, 3);
    X(0, 0) = 1.0;
    X(1, 1) = 1.0;
    X(3, 0) = 0.25;  // only tail mass
    TraceRecord rec = record(make_symmetric_state(X), inst);
    CHECK(*rec.potential_At == doctest::Approx(0.0625).epsilon(1e-14));
    CHECK(rec.theta_max.has_value());
    CHECK(rec.M_t.has_value() == false);
}

TEST_CASE("fit_linear_rate recovers an exact geometric decay") {
    Series s = geometric_series(0.9, 200);
    auto [a, b] = default_fit_window(s);
    RateFit fit = fit_linear_rate(s, a, b);
    CHECK(fit.value == doctest::Approx(0.9).epsilon(1e-12));
    CHECK(fit.r2 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fit.degenerate == false);
    CHECK(fit.samples >= 90);
}

TEST_CASE("fit_linear_rate flags a constant series as degenerate") {
    Series s;
    for (long t = 0; t < 50; ++t) s.emplace_back(t, 2.5);
    RateFit fit = fit_linear_rate(s, 0, 49);
    CHECK(fit.value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fit.degenerate == true);
}

TEST_CASE("fit_linear_rate on a noisy decay stays close") {
    Rng rng(Seed{5});
    Series s;
    double y = 1.0;
    for (long t = 0; t < 400; ++t) {
        s.emplace_back(t, y * std::exp(0.01 * rng.normal()));
        y *= 0.95;
    }
    RateFit fit = fit_linear_rate(s, 0, 399);
    CHECK(fit.value == doctest::Approx(0.95).epsilon(1e-3));
    CHECK(fit.r2 > 0.999);
}

TEST_CASE("fit_power_rate recovers an exact power law") {
    Series s;
    for (long t = 1; t <= 300; ++t)
        s.emplace_back(t, 3.0 / (static_cast<double>(t) * static_cast<double>(t)));
    RateFit fit = fit_power_rate(s, 1, 300);
    CHECK(fit.value == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(fit.r2 == doctest::Approx(1.0).epsilon(1e-12));

    Series flat;
    for (long t = 1; t <= 50; ++t) flat.emplace_back(t, 7.0);
    RateFit ffit = fit_power_rate(flat, 1, 50);
    CHECK(ffit.value == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(ffit.degenerate == true);
}

TEST_CASE("fit windows exclude nonpositive samples") {
    Series s = geometric_series(0.8, 100);
    s.emplace_back(100, 0.0);
    s.emplace_back(101, -1.0);
    auto [a, b] = default_fit_window(s);
    CHECK(b <= 99);
    RateFit fit = fit_linear_rate(s, a, b);
    CHECK(fit.value == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("imbalance drift bound holds along real GD steps") {
    ProblemInstance inst = identity_instance(8, 2, 4, Mode::asymmetric);
    auto [F, G] = init_asymmetric_imbalanced(8, 4, 0.5, 1.0 / 3.0, Seed{11});
    GDState s = make_asymmetric_state(F, G);
    const double eta = 0.1;
    for (int t = 0; t < 200; ++t) {
        GDState next = asym_step(s, inst, eta);
        CHECK(imbalance_drift_check(s, next, eta, inst));
        s = next;
    }
    // eta = 0 means no motion at all
    GDState frozen = asym_step(s, inst, 0.0);
    CHECK(imbalance_drift_check(s, frozen, 0.0, inst));
}

TEST_CASE("imbalance drift check rejects a fabricated jump") {
    ProblemInstance inst = identity_instance(6, 2, 3, Mode::asymmetric);
    auto [F, G] = init_asymmetric_imbalanced(6, 3, 0.5, 1.0 / 3.0, Seed{13});
    GDState s = make_asymmetric_state(F, G);
    GDState fake = s;
    fake.t = s.t + 1;
    fake.F = scale(s.F, 2.0);  // not a GD step: imbalance jumps by O(1)
    CHECK(imbalance_drift_check(s, fake, 0.01, inst) == false);
}

TEST_CASE("angle_stat hand cases and brute-force oracle") {
    DenseMatrix ortho(2, 2, {1, 0, 0, 1});
    AngleStat o = angle_stat(ortho);
    CHECK(o.max_sq_cos == doctest::Approx(0.0).epsilon(1e-15));

    DenseMatrix dup(2, 2, {1, 2, 2, 4});
    AngleStat d = angle_stat(dup);
    CHECK(d.max_sq_cos == doctest::Approx(1.0).epsilon(1e-12));

    DenseMatrix zr(3, 2, {1, 0, 0, 0, 0, 1});
    AngleStat z = angle_stat(zr);
    CHECK(z.excluded == 1);
    CHECK(z.max_sq_cos == doctest::Approx(0.0).epsilon(1e-15));

    DenseMatrix X = gaussian_matrix(7, 3, 1.0, Seed{17});
    AngleStat got = angle_stat(X);
    double best = 0.0;  // oracle: direct double loop over row pairs
    for (std::size_t i = 0; i < 7; ++i)
        for (std::size_t j = i + 1; j < 7; ++j) {
            double dp = 0.0, ni = 0.0, nj = 0.0;
            for (std::size_t c = 0; c < 3; ++c) {
                dp += X(i, c) * X(j, c);
                ni += X(i, c) * X(i, c);
                nj += X(j, c) * X(j, c);
            }
            best = std::max(best, dp * dp / (ni * nj));
        }
    CHECK(got.max_sq_cos == doctest::Approx(best).epsilon(1e-12));

    CHECK_THROWS_AS(angle_stat(DenseMatrix(1, 3)), std::invalid_argument);
}

TEST_CASE("null_space_diagnostic hand cases and projector oracle") {
    // K inside the row space of U -> 0
    DenseMatrix F(5, 3);
    F(0, 0) = 1.0;
    F(1, 1) = 1.0;  // rows of U span e1, e2
    DenseMatrix K(3, 3);
    K(0, 0) = 2.0;
    K(1, 1) = -3.0;
    NullSpaceDiag in = null_space_diagnostic(F, K);
    CHECK(in.value == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(in.degenerate == false);

    // K entirely in the orthogonal complement -> its own norm
    DenseMatrix Kp(3, 3);
    Kp(0, 2) = 0.7;
    NullSpaceDiag out = null_space_diagnostic(F, Kp);
    CHECK(out.value == doctest::Approx(0.7).epsilon(1e-10));

    // random case vs explicit projector ||K (I - W^T W)||
    DenseMatrix Fr = gaussian_matrix(6, 4, 1.0, Seed{19});
    DenseMatrix Kr = gaussian_matrix(4, 4, 1.0, Seed{20});
    NullSpaceDiag got = null_space_diagnostic(Fr, Kr);
    BlockView bv = split_blocks(Fr, Fr, 2);
    ThinSvd svd = thin_svd(bv.U);
    DenseMatrix W = svd.right;  // 2 x 4, orthonormal rows spanning rowspace(U)
    DenseMatrix P = sub(DenseMatrix::identity(4), matmul(transpose(W), W));
    CHECK(got.value == doctest::Approx(spectral_norm(matmul(Kr, P))).epsilon(1e-9));

    // rank-deficient U is flagged
    DenseMatrix Fd(5, 3);
    Fd(0, 0) = 1.0;
    Fd(1, 0) = 1.0;  // both top rows along e1
    NullSpaceDiag deg = null_space_diagnostic(Fd, K);
    CHECK(deg.degenerate == true);
}

TEST_CASE("sandwich invariants of the recorded norms") {
    ProblemInstance inst = identity_instance(8, 2, 4, Mode::asymmetric);
    auto [F, G] = init_asymmetric_imbalanced(8, 4, 0.6, 1.0 / 3.0, Seed{23});
    GDState s = make_asymmetric_state(F, G);
    for (int t = 0; t < 50; ++t) {
        TraceRecord rec = record(s, inst);
        CHECK(*rec.P_t <= *rec.M_t + 1e-14);
        CHECK(*rec.M_t <= std::max(*rec.P_t, *rec.S_t) + 1e-14);
        // spectral <= Frobenius on the residual
        CHECK(rec.loss_spec * rec.loss_spec <= rec.loss_fro2 * (1 + 1e-12));
        s = asym_step(s, inst, 0.1);
    }
}

TEST_CASE("extract_series pulls named fields") {
    ProblemInstance inst = identity_instance(6, 2, 3, Mode::asymmetric);
    auto [F, G] = init_asymmetric_imbalanced(6, 3, 0.5, 1.0 / 3.0, Seed{29});
    GDConfig cfg;
    cfg.eta = 0.1;
    cfg.t_max = 30;
    cfg.log_stride = 10;
    auto trace = run(inst, make_asymmetric_state(F, G), cfg);
    Series loss = extract_series(trace, "loss_fro2");
    CHECK(loss.size() == trace.size());
    CHECK(loss.front().second == trace.front().loss_fro2);
    Series mt = extract_series(trace, "M_t");
    CHECK(mt.size() == trace.size());
    CHECK_THROWS_AS(extract_series(trace, "no_such_field"), std::invalid_argument);
}
