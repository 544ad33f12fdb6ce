#pragma once

#include <cstddef>
#include <span>
#include <vector>

// Data-parallel inner loops shared by the simulator. The kernels in
// qsprep::kern use fixed-size blocks: each block is summed independently and
// the block results are combined in index order, so a result is bit-identical
// whether the blocks are processed by one thread or many. qsprep::kern::serial
// holds plain single-pass loops kept as a reference for testing and for the
// bench_kernels comparison target.
namespace qsprep::kern {

inline constexpr std::size_t kBlock = 4096;

double sum(std::span<const double> a);
double sum_squares(std::span<const double> a);
double dot(std::span<const double> a, std::span<const double> b);

/// out[i] = sqrt(w[i] * scale). Sizes must match.
void sqrt_scaled(std::span<const double> w, double scale,
                 std::span<double> out);

/// Negates every amplitude whose trailing (stride-2) digit equals `offset`.
/// Used as the reflection about the flag subspace of an out (x) rot state.
void negate_stride2(std::span<double> a, std::size_t offset);

/// Sum of squared amplitudes over the stride-2 slice with digit `offset`.
double sum_squares_stride2(std::span<const double> a, std::size_t offset);

/// state = 2 * <psi0|state> * psi0 - state (reflection about psi0).
void reflect_about(std::span<const double> psi0, std::span<double> state);

void scale(std::span<double> a, double factor);

namespace serial {

double sum(std::span<const double> a);
double sum_squares(std::span<const double> a);
double dot(std::span<const double> a, std::span<const double> b);
void sqrt_scaled(std::span<const double> w, double scale,
                 std::span<double> out);
void reflect_about(std::span<const double> psi0, std::span<double> state);

}  // namespace serial

}  // namespace qsprep::kern
