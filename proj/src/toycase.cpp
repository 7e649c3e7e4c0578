#include "lrgd/toycase.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "lrgd/diagnostics.hpp"
#include "lrgd/run.hpp"

namespace lrgd {

ToyState make_toy_state(double alpha) { return {alpha, alpha / 3.0, alpha, 0}; }

ToyState toy_step(const ToyState& s, double eta) {
    ToyState n;
    n.a = s.a - eta * s.a * s.b * s.b;
    n.b = s.b - eta * s.a * s.a * s.b;
    n.alpha_t = s.alpha_t * (1.0 + eta - eta * s.alpha_t * s.alpha_t);
    n.t = s.t + 1;
    return n;
}

double toy_loss(const ToyState& s, std::size_t /*n*/, std::size_t r) {
    const double diag = s.alpha_t * s.alpha_t - 1.0;
    const double ab = s.a * s.b;
    return static_cast<double>(r) * diag * diag + ab * ab;
}

double toy_equivalence(std::size_t n, std::size_t r, double eta, double alpha, long steps) {
    const std::size_t k = r + 1;
    GroundTruth truth = make_ground_truth(n, r, std::vector<double>(r, 1.0));
    ProblemInstance inst = make_measurements(std::move(truth),
                                             MeasurementOperator::make_identity(n, n), k,
                                             Mode::asymmetric);
    auto [F0, G0] = init_toy(n, r, k, alpha);
    GDState state = make_asymmetric_state(std::move(F0), std::move(G0));
    ToyState toy = make_toy_state(alpha);

    double dev = 0.0;
    for (long t = 0;; ++t) {
        BlockView b = split_blocks(state.F, state.G, r);
        dev = std::max(dev, std::abs(b.J(0, k - 1) - toy.a));
        dev = std::max(dev, std::abs(b.K(0, k - 1) - toy.b));
        dev = std::max(dev, std::abs(b.U(0, 0) - toy.alpha_t));
        dev = std::max(dev, frobenius_norm(sub(b.U, b.V)));
        dev = std::max(dev, frobenius_norm(matmul(b.U, transpose(b.K))));
        dev = std::max(dev, frobenius_norm(matmul(b.J, transpose(b.V))));
        if (t == steps) break;
        state = asym_step(state, inst, eta);
        toy = toy_step(toy, eta);
    }
    return dev;
}

}  // namespace lrgd
