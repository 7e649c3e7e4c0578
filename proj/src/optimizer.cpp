#include "lrgd/optimizer.hpp"

namespace lrgd {

GDState make_symmetric_state(DenseMatrix X) {
    GDState s;
    s.mode = Mode::symmetric;
    s.F = std::move(X);
    return s;
}

GDState make_asymmetric_state(DenseMatrix F, DenseMatrix G) {
    GDState s;
    s.mode = Mode::asymmetric;
    s.F = std::move(F);
    s.G = std::move(G);
    return s;
}

DenseMatrix reconstruction(const GDState& state) {
    if (state.mode == Mode::symmetric) return matmul(state.F, transpose(state.F));
    return matmul(state.F, transpose(state.G));
}

DenseMatrix normal_residual(const GDState& state, const ProblemInstance& inst) {
    return inst.op.normal(sub(reconstruction(state), inst.truth.Sigma));
}

double train_loss(const GDState& state, const ProblemInstance& inst) {
    std::vector<double> pred = inst.op.apply(reconstruction(state));
    double s = 0.0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        const double d = pred[i] - inst.y[i];
        s += d * d;
    }
    return 0.5 * s;
}

namespace {

void check_finite(const DenseMatrix& m, long t, const char* who) {
    if (!m.all_finite())
        throw DivergenceError(t, std::string(who) + ": non-finite factor entries at iteration " +
                                     std::to_string(t));
}

}  // namespace

GDState sym_step(const GDState& state, const ProblemInstance& inst, double eta) {
    if (state.mode != Mode::symmetric) throw std::logic_error("sym_step: state is not symmetric");
    DenseMatrix N = normal_residual(state, inst);
    // the loss reads X X^T through the operator, so the gradient carries the
    // symmetrized normal residual; for self-adjoint operators this is N itself
    DenseMatrix Nsym = scale(add(N, transpose(N)), 0.5);
    GDState next = state;
    next.F = sub(state.F, scale(matmul(Nsym, state.F), 2.0 * eta));
    next.t = state.t + 1;
    check_finite(next.F, next.t, "sym_step");
    return next;
}

GDState asym_step(const GDState& state, const ProblemInstance& inst, double eta) {
    if (state.mode != Mode::asymmetric) throw std::logic_error("asym_step: state is not asymmetric");
    DenseMatrix R = normal_residual(state, inst);
    GDState next = state;
    next.F = sub(state.F, scale(matmul(R, state.G), eta));
    next.G = sub(state.G, scale(matmul(transpose(R), state.F), eta));
    next.t = state.t + 1;
    check_finite(next.F, next.t, "asym_step");
    check_finite(next.G, next.t, "asym_step");
    return next;
}

GDState gd_step(const GDState& state, const ProblemInstance& inst, double eta) {
    return state.mode == Mode::symmetric ? sym_step(state, inst, eta)
                                         : asym_step(state, inst, eta);
}

double finite_diff_gradient(const ProblemInstance& inst, const GDState& state, Factor which,
                            std::size_t i, std::size_t j, double h) {
    if (h <= 0.0) throw std::invalid_argument("finite_diff_gradient: h must be positive");
    GDState plus = state;
    GDState minus = state;
    DenseMatrix& p = (which == Factor::first) ? plus.F : plus.G;
    DenseMatrix& m = (which == Factor::first) ? minus.F : minus.G;
    p(i, j) += h;
    m(i, j) -= h;
    return (train_loss(plus, inst) - train_loss(minus, inst)) / (2.0 * h);
}

}  // namespace lrgd
