#pragma once

#include <vector>

#include "intertwine/specfun.hpp"

namespace intertwine::detail {

// Unnormalized in-place DFT of an M^m row-major array. sign = -1 gives
// sum_x f(x) e^{-i n x}, sign = +1 the inverse direction.
void fft_cube(std::vector<Complex>& data, int m, int M, int sign);

// `count` consecutive length-M transforms stored back to back.
void fft_batch(std::vector<Complex>& data, int M, int count, int sign);

}  // namespace intertwine::detail
