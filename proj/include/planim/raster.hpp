#pragma once

#include <cstdint>
#include <vector>

#include "planim/color.hpp"
#include "planim/frames.hpp"

namespace planim::render {

inline constexpr std::int64_t kMaxPixels = 64LL * 1024 * 1024;

/// Row-major RGB image, one pixel per canvas unit.
struct Image {
  std::int64_t width = 0;
  std::int64_t height = 0;
  std::vector<Rgb> pixels;

  Image() = default;
  Image(std::int64_t w, std::int64_t h, Rgb fill = {255, 255, 255});

  Rgb& at(std::int64_t x, std::int64_t y) { return pixels[static_cast<std::size_t>(y * width + x)]; }
  const Rgb& at(std::int64_t x, std::int64_t y) const {
    return pixels[static_cast<std::size_t>(y * width + x)];
  }
  bool contains(std::int64_t x, std::int64_t y) const {
    return x >= 0 && y >= 0 && x < width && y < height;
  }

  bool operator==(const Image&) const = default;
};

/// `src` over `dst` at `opacity` permille.
Rgb blend(Rgb dst, Rgb src, int opacity);

/// Draws the frame the way its SVG form looks: white background, 2-unit
/// lines, filled shapes, centered labels in a 5x7 bitmap font. Image sprites
/// are drawn as rectangles in their fill color.
Image rasterize(const Frame& frame);

}  // namespace planim::render
