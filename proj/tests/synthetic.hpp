#pragma once

#include <cstdint>

#include "ldsym/image.hpp"

namespace ldsym::testing {

/// Multi-octave value noise in [0,1].
GrayImage random_texture(int width, int height, std::uint64_t seed);

/// Random texture whose right half mirrors its left half (x -> W-1-x).
GrayImage mirrored_texture(int width, int height, std::uint64_t seed);

/// Random texture mirrored about both the vertical and horizontal midlines.
GrayImage fourfold_texture(int width, int height, std::uint64_t seed);

/// 0 left of x = edge_x, 1 from there on.
GrayImage vertical_step(int width, int height, int edge_x);

GrayImage constant_image(int width, int height, double value);

}  // namespace ldsym::testing
