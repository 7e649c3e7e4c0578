#ifndef LRGD_OPTIMIZER_HPP
#define LRGD_OPTIMIZER_HPP

#include <optional>
#include <stdexcept>

#include "lrgd/problem.hpp"

namespace lrgd {

struct GDConfig {
    double eta = 0.0;
    long t_max = 1;
    std::optional<double> stop_loss;  // absolute threshold on ||FG^T - Sigma||_F^2
    long log_stride = 1;
};

/// Current factors. Symmetric mode uses F as the single factor X; G stays
/// empty there.
struct GDState {
    Mode mode = Mode::asymmetric;
    DenseMatrix F;  // X in symmetric mode
    DenseMatrix G;
    long t = 0;
};

GDState make_symmetric_state(DenseMatrix X);
GDState make_asymmetric_state(DenseMatrix F, DenseMatrix G);

class DivergenceError : public std::runtime_error {
public:
    DivergenceError(long t, const std::string& what) : std::runtime_error(what), t_(t) {}
    long iteration() const { return t_; }

private:
    long t_;
};

/// FG^T (or XX^T) of the current factors.
DenseMatrix reconstruction(const GDState& state);

/// A*A(FG^T - Sigma); identity operators shortcut to the residual itself.
DenseMatrix normal_residual(const GDState& state, const ProblemInstance& inst);

/// 0.5 * ||A(FG^T) - y||^2
double train_loss(const GDState& state, const ProblemInstance& inst);

/// X_{t+1} = X_t - 2 eta A*A(X_t X_t^T - Sigma) X_t
GDState sym_step(const GDState& state, const ProblemInstance& inst, double eta);

/// F_{t+1} = F_t - eta R G_t, G_{t+1} = G_t - eta R^T F_t with
/// R = A*A(F_t G_t^T - Sigma) computed once from the pre-step factors.
GDState asym_step(const GDState& state, const ProblemInstance& inst, double eta);

GDState gd_step(const GDState& state, const ProblemInstance& inst, double eta);

enum class Factor { first, second };

/// Central finite difference of the training loss w.r.t. one factor entry;
/// the oracle against which the analytic steps are checked.
double finite_diff_gradient(const ProblemInstance& inst, const GDState& state, Factor which,
                            std::size_t i, std::size_t j, double h);

}  // namespace lrgd

#endif
