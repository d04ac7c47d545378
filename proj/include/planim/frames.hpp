#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "planim/color.hpp"
#include "planim/scene.hpp"

namespace planim::render {

inline constexpr int kDefaultFps = 30;
inline constexpr std::int64_t kCanvasMargin = 20;
inline constexpr int kOpaque = 1000;  // opacity is in permille

struct FrameSettings {
  int fps = kDefaultFps;
  /// (width, height); auto-sized from the scenes when absent.
  std::optional<std::pair<std::int64_t, std::int64_t>> canvas;
};

/// One drawable object in screen space (origin top-left, y down).
struct DrawObject {
  std::string name;
  std::int64_t x = 0;
  std::int64_t y = 0;
  std::int64_t width = 0;
  std::int64_t height = 0;
  Rgb fill;
  std::string sprite;
  int opacity = kOpaque;
  /// Set for at-goal objects; `fill` is then already darkened.
  bool darkened = false;
  std::optional<std::string> text;

  bool operator==(const DrawObject&) const = default;
};

struct DrawLine {
  std::int64_t x1 = 0;
  std::int64_t y1 = 0;
  std::int64_t x2 = 0;
  std::int64_t y2 = 0;
  Rgb color;
  int opacity = kOpaque;

  bool operator==(const DrawLine&) const = default;
};

/// Lines are drawn first, then objects in order (ascending depth, then name).
struct Frame {
  std::int64_t width = 0;
  std::int64_t height = 0;
  std::vector<DrawLine> lines;
  std::vector<DrawObject> objects;

  bool operator==(const Frame&) const = default;
};

/// Maps canvas coordinates to screen coordinates.
struct Viewport {
  std::int64_t left = 0;  // canvas x at screen x = 0
  std::int64_t top = 0;   // canvas y at screen y = 0
  std::int64_t width = 0;
  std::int64_t height = 0;

  std::int64_t screen_x(std::int64_t x) const { return x - left; }
  std::int64_t screen_y(std::int64_t y) const { return top - y; }
};

Viewport compute_viewport(const scene::SceneSequence& sequence, const FrameSettings& settings);

/// ceil(duration * fps), tolerant of floating-point noise in the product.
std::size_t interpolated_frame_count(double duration_seconds, int fps);

/// Key frame per scene plus interpolated frames per transition.
std::vector<Frame> build_frames(const scene::SceneSequence& sequence,
                                const FrameSettings& settings);

std::string to_svg(const Frame& frame, const std::map<std::string, std::string>& sprites);

/// `sprites` maps sprite id to payload, as in a VFG document.
std::vector<std::string> export_svg_frames(const scene::SceneSequence& sequence,
                                           const FrameSettings& settings,
                                           const std::map<std::string, std::string>& sprites);

/// "frame-000001.svg" for index 0.
std::string frame_file_name(std::size_t index);

}  // namespace planim::render
