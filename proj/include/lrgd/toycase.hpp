#ifndef LRGD_TOYCASE_HPP
#define LRGD_TOYCASE_HPP

#include <cstddef>

namespace lrgd {

/// The three scalar sequences that fully describe GD on the structured toy
/// start (k = r+1, identity operator, unit singular values):
///   a  - the lone J-block signal, b - the lone K-block signal,
///   alpha_t - the shared diagonal of U = V.
struct ToyState {
    double a = 0.0;
    double b = 0.0;
    double alpha_t = 0.0;
    long t = 0;
};

ToyState make_toy_state(double alpha);

/// a' = a - eta a b^2;  b' = b - eta a^2 b;  alpha' = alpha(1 + eta - eta alpha^2).
/// All three read the pre-step values.
ToyState toy_step(const ToyState& s, double eta);

/// Exact squared Frobenius error of the structured iterate:
/// r (alpha_t^2 - 1)^2 + (a b)^2.
double toy_loss(const ToyState& s, std::size_t n, std::size_t r);

/// Runs full asymmetric GD from the toy start and the scalar recursion in
/// lockstep for `steps` iterations; returns the largest deviation between
/// the two across all structural identities.
double toy_equivalence(std::size_t n, std::size_t r, double eta, double alpha, long steps);

}  // namespace lrgd

#endif
