#ifndef LRGD_PROBLEM_HPP
#define LRGD_PROBLEM_HPP

#include <string>
#include <utility>
#include <vector>

#include "lrgd/sensing.hpp"

namespace lrgd {

enum class Mode { symmetric, asymmetric };

/// Diagonal ground truth: Sigma is n x n with singulars on the leading r
/// diagonal entries and zero elsewhere.
struct GroundTruth {
    std::size_t n = 0;
    std::size_t r = 0;
    std::vector<double> singulars;  // strictly positive, nonincreasing
    DenseMatrix Sigma;

    double condition_number() const { return singulars.front() / singulars.back(); }
};

GroundTruth make_ground_truth(std::size_t n, std::size_t r, std::vector<double> singulars);

struct ProblemInstance {
    GroundTruth truth;
    MeasurementOperator op;
    std::vector<double> y;  // apply(op, Sigma)
    std::size_t k = 0;      // search rank
    Mode mode = Mode::asymmetric;
    std::vector<std::string> warnings;  // e.g. under-parameterized k < r
};

/// Measures the ground truth through op; k < r is allowed for exploration
/// (warning recorded), k > n is rejected.
ProblemInstance make_measurements(GroundTruth truth, MeasurementOperator op, std::size_t k,
                                  Mode mode);

/// X0 = alpha * X~ with X~ entries N(0, 1/k).
DenseMatrix init_symmetric(std::size_t n, std::size_t k, double alpha, Seed seed);

/// F0 = alpha * F~, G0 = (ratio * alpha) * G~, entries N(0, 1/n), independent
/// streams; default ratio 1/3 gives the slightly imbalanced start.
std::pair<DenseMatrix, DenseMatrix> init_asymmetric_imbalanced(std::size_t n, std::size_t k,
                                                               double alpha, double ratio,
                                                               Seed seed);

/// Deterministic toy start (only defined for k = r+1): F0 diagonal alpha on
/// the first k entries, G0 diagonal alpha on the first r entries and alpha/3
/// at (k, k).
std::pair<DenseMatrix, DenseMatrix> init_toy(std::size_t n, std::size_t r, std::size_t k,
                                             double alpha);

}  // namespace lrgd

#endif
