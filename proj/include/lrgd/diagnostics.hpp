#ifndef LRGD_DIAGNOSTICS_HPP
#define LRGD_DIAGNOSTICS_HPP

#include <optional>
#include <string>
#include <vector>

#include "lrgd/optimizer.hpp"

namespace lrgd {

/// Row partition of the asymmetric factors at the true rank: U/V are the
/// top-r rows of F/G (signal), J/K the remaining n-r rows (redundant).
struct BlockView {
    DenseMatrix U, V;  // r x k
    DenseMatrix J, K;  // (n-r) x k
};

BlockView split_blocks(const DenseMatrix& F, const DenseMatrix& G, std::size_t r);

/// One row of per-iteration diagnostics. Mode-inapplicable fields stay
/// unset (absent in the CSV), never zero.
struct TraceRecord {
    long t = 0;
    double loss_fro2 = 0.0;   // ||FG^T - Sigma||_F^2
    double loss_spec = 0.0;   // ||FG^T - Sigma||
    double train_loss = 0.0;  // 0.5 ||A(FG^T) - y||^2

    // symmetric mode
    std::optional<double> potential_At;  // sum_{i>r} ||x_i||^2
    std::optional<double> theta_max;     // max squared cosine over distinct rows
    std::optional<long> theta_excluded;  // rows dropped as numerically zero

    // asymmetric mode
    std::optional<double> delta_min, delta_max;  // extremal eigenvalues of F^T F - G^T G
    std::optional<double> M_t, P_t, S_t;         // block-norm maxima (spectral)
    std::optional<double> norm_K, norm_J, norm_UmV;
    std::optional<double> k_perp;  // ||K W_perp^T||, only when k > r

    std::optional<bool> drift_bound_ok;  // per-step imbalance drift bound
};

TraceRecord record(const GDState& state, const ProblemInstance& inst);

/// (t, value) pairs pulled out of a trace for rate fitting.
using Series = std::vector<std::pair<long, double>>;

Series extract_series(const std::vector<TraceRecord>& trace, const std::string& field);

/// Default fit window: the last 50% of positive-valued samples.
std::pair<long, long> default_fit_window(const Series& series);

struct RateFit {
    enum class Kind { linear, power };
    Kind kind = Kind::linear;
    double value = 0.0;  // rho (linear) or exponent (power)
    double r2 = 0.0;
    bool degenerate = false;  // constant series: r2 undefined, reported 0
    long t_start = 0, t_end = 0;
    std::size_t samples = 0;
};

/// OLS of ln(value) on t over [t_start, t_end]; rho = exp(slope).
RateFit fit_linear_rate(const Series& series, long t_start, long t_end);

/// OLS of ln(value) on ln(t) over [t_start, t_end] (t >= 1); exponent = slope.
RateFit fit_power_rate(const Series& series, long t_start, long t_end);

/// Checks ||Delta_{t+1} - Delta_t|| <= 2 eta^2 R^2 max(||F||, ||G||)^2 with
/// R = ||A*A(FG^T - Sigma)|| between two consecutive asymmetric states.
bool imbalance_drift_check(const GDState& cur, const GDState& next, double eta,
                           const ProblemInstance& inst);

struct AngleStat {
    double max_sq_cos = 0.0;
    long excluded = 0;  // rows with norm below 1e-300
};

/// theta = max_{j != k} (x_j . x_k)^2 / (||x_j||^2 ||x_k||^2) over rows of X.
AngleStat angle_stat(const DenseMatrix& X);

struct NullSpaceDiag {
    double value = 0.0;
    bool degenerate = false;  // U rank-deficient below 1e-12 * sigma_1(U)
};

/// ||K W_perp^T|| where W spans the row space of U (top-r rows of F) and
/// W_perp completes it to an orthonormal basis of R^k.
NullSpaceDiag null_space_diagnostic(const DenseMatrix& F, const DenseMatrix& K);

}  // namespace lrgd

#endif
