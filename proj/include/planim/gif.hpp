#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "planim/color.hpp"
#include "planim/frames.hpp"
#include "planim/raster.hpp"

namespace planim::render {

inline constexpr std::size_t kMaxPaletteSize = 256;

class GifError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// round(100 / fps) centiseconds.
std::uint16_t gif_delay_cs(int fps);

/// One palette for all images: the exact color set (sorted) when it fits,
/// otherwise a median-cut quantization.
std::vector<Rgb> build_palette(const std::vector<Image>& images,
                               std::size_t max_colors = kMaxPaletteSize);

/// GIF89a, global palette, infinite loop, same delay on every frame.
std::vector<std::uint8_t> encode_gif(const std::vector<Image>& images, int fps);

/// Rasterizes `frames` and encodes them.
std::vector<std::uint8_t> export_gif(const std::vector<Frame>& frames, int fps);

}  // namespace planim::render
