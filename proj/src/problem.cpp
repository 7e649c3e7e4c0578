#include "lrgd/problem.hpp"

#include <stdexcept>

namespace lrgd {

GroundTruth make_ground_truth(std::size_t n, std::size_t r, std::vector<double> singulars) {
    if (r > n) throw std::invalid_argument("make_ground_truth: r exceeds n");
    if (singulars.size() != r)
        throw std::invalid_argument("make_ground_truth: expected " + std::to_string(r) +
                                    " singular values, got " + std::to_string(singulars.size()));
    for (std::size_t i = 0; i < singulars.size(); ++i) {
        if (singulars[i] <= 0.0)
            throw std::invalid_argument("make_ground_truth: singular values must be positive");
        if (i > 0 && singulars[i] > singulars[i - 1])
            throw std::invalid_argument("make_ground_truth: singular values must be nonincreasing");
    }
    GroundTruth t;
    t.n = n;
    t.r = r;
    t.singulars = std::move(singulars);
    t.Sigma = DenseMatrix(n, n);
    for (std::size_t i = 0; i < r; ++i) t.Sigma(i, i) = t.singulars[i];
    return t;
}

ProblemInstance make_measurements(GroundTruth truth, MeasurementOperator op, std::size_t k,
                                  Mode mode) {
    if (op.n1() != truth.n || op.n2() != truth.n)
        throw std::invalid_argument("make_measurements: operator dimensions do not match n");
    if (k > truth.n) throw std::invalid_argument("make_measurements: k exceeds n");
    std::vector<std::string> warnings;
    if (k < truth.r)
        warnings.push_back("under-parameterized run: k = " + std::to_string(k) +
                           " < r = " + std::to_string(truth.r));
    std::vector<double> y = op.apply(truth.Sigma);
    return ProblemInstance{std::move(truth), std::move(op), std::move(y), k, mode,
                           std::move(warnings)};
}

DenseMatrix init_symmetric(std::size_t n, std::size_t k, double alpha, Seed seed) {
    if (alpha <= 0.0) throw std::invalid_argument("init_symmetric: alpha must be positive");
    return gaussian_matrix(n, k, alpha / std::sqrt(static_cast<double>(k)), seed);
}

std::pair<DenseMatrix, DenseMatrix> init_asymmetric_imbalanced(std::size_t n, std::size_t k,
                                                               double alpha, double ratio,
                                                               Seed seed) {
    if (alpha <= 0.0) throw std::invalid_argument("init_asymmetric_imbalanced: alpha must be positive");
    if (ratio <= 0.0 || ratio > 1.0)
        throw std::invalid_argument("init_asymmetric_imbalanced: ratio must be in (0, 1]");
    const double base = 1.0 / std::sqrt(static_cast<double>(n));
    DenseMatrix F = gaussian_matrix(n, k, alpha * base, Seed{derive_seed(seed.value, 0)});
    DenseMatrix G = gaussian_matrix(n, k, ratio * alpha * base, Seed{derive_seed(seed.value, 1)});
    return {std::move(F), std::move(G)};
}

std::pair<DenseMatrix, DenseMatrix> init_toy(std::size_t n, std::size_t r, std::size_t k,
                                             double alpha) {
    if (k != r + 1) throw std::invalid_argument("init_toy: defined only for k = r + 1");
    if (n <= r) throw std::invalid_argument("init_toy: need n > r");
    DenseMatrix F(n, k), G(n, k);
    for (std::size_t i = 0; i < k; ++i) F(i, i) = alpha;
    for (std::size_t i = 0; i < r; ++i) G(i, i) = alpha;
    G(r, k - 1) = alpha / 3.0;
    return {std::move(F), std::move(G)};
}

}  // namespace lrgd
