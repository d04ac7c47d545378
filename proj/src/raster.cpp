#include "planim/raster.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <stdexcept>


namespace planim::render {

namespace {

using Glyph = std::array<std::uint8_t, 7>;

Glyph glyph(char c) {
  if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
  switch (c) {
    case '0': return {0x0E, 0x11, 0x13, 0x15, 0x19, 0x11, 0x0E};
    case '1': return {0x04, 0x0C, 0x04, 0x04, 0x04, 0x04, 0x0E};
    case '2': return {0x0E, 0x11, 0x01, 0x02, 0x04, 0x08, 0x1F};
    case '3': return {0x1F, 0x02, 0x04, 0x02, 0x01, 0x11, 0x0E};
    case '4': return {0x02, 0x06, 0x0A, 0x12, 0x1F, 0x02, 0x02};
    case '5': return {0x1F, 0x10, 0x1E, 0x01, 0x01, 0x11, 0x0E};
    case '6': return {0x06, 0x08, 0x10, 0x1E, 0x11, 0x11, 0x0E};
    case '7': return {0x1F, 0x01, 0x02, 0x04, 0x08, 0x08, 0x08};
    case '8': return {0x0E, 0x11, 0x11, 0x0E, 0x11, 0x11, 0x0E};
    case '9': return {0x0E, 0x11, 0x11, 0x0F, 0x01, 0x02, 0x0C};
    case 'A': return {0x0E, 0x11, 0x11, 0x1F, 0x11, 0x11, 0x11};
    case 'B': return {0x1E, 0x11, 0x11, 0x1E, 0x11, 0x11, 0x1E};
    case 'C': return {0x0E, 0x11, 0x10, 0x10, 0x10, 0x11, 0x0E};
    case 'D': return {0x1C, 0x12, 0x11, 0x11, 0x11, 0x12, 0x1C};
    case 'E': return {0x1F, 0x10, 0x10, 0x1E, 0x10, 0x10, 0x1F};
    case 'F': return {0x1F, 0x10, 0x10, 0x1E, 0x10, 0x10, 0x10};
    case 'G': return {0x0E, 0x11, 0x10, 0x17, 0x11, 0x11, 0x0F};
    case 'H': return {0x11, 0x11, 0x11, 0x1F, 0x11, 0x11, 0x11};
    case 'I': return {0x0E, 0x04, 0x04, 0x04, 0x04, 0x04, 0x0E};
    case 'J': return {0x07, 0x02, 0x02, 0x02, 0x02, 0x12, 0x0C};
    case 'K': return {0x11, 0x12, 0x14, 0x18, 0x14, 0x12, 0x11};
    case 'L': return {0x10, 0x10, 0x10, 0x10, 0x10, 0x10, 0x1F};
    case 'M': return {0x11, 0x1B, 0x15, 0x15, 0x11, 0x11, 0x11};
    case 'N': return {0x11, 0x11, 0x19, 0x15, 0x13, 0x11, 0x11};
    case 'O': return {0x0E, 0x11, 0x11, 0x11, 0x11, 0x11, 0x0E};
    case 'P': return {0x1E, 0x11, 0x11, 0x1E, 0x10, 0x10, 0x10};
    case 'Q': return {0x0E, 0x11, 0x11, 0x11, 0x15, 0x12, 0x0D};
    case 'R': return {0x1E, 0x11, 0x11, 0x1E, 0x14, 0x12, 0x11};
    case 'S': return {0x0F, 0x10, 0x10, 0x0E, 0x01, 0x01, 0x1E};
    case 'T': return {0x1F, 0x04, 0x04, 0x04, 0x04, 0x04, 0x04};
    case 'U': return {0x11, 0x11, 0x11, 0x11, 0x11, 0x11, 0x0E};
    case 'V': return {0x11, 0x11, 0x11, 0x11, 0x11, 0x0A, 0x04};
    case 'W': return {0x11, 0x11, 0x11, 0x15, 0x15, 0x15, 0x0A};
    case 'X': return {0x11, 0x11, 0x0A, 0x04, 0x0A, 0x11, 0x11};
    case 'Y': return {0x11, 0x11, 0x11, 0x0A, 0x04, 0x04, 0x04};
    case 'Z': return {0x1F, 0x01, 0x02, 0x04, 0x08, 0x10, 0x1F};
    case '-': return {0x00, 0x00, 0x00, 0x1F, 0x00, 0x00, 0x00};
    case '_': return {0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x1F};
    case '.': return {0x00, 0x00, 0x00, 0x00, 0x00, 0x0C, 0x0C};
    case ':': return {0x00, 0x0C, 0x0C, 0x00, 0x0C, 0x0C, 0x00};
    case '(': return {0x02, 0x04, 0x08, 0x08, 0x08, 0x04, 0x02};
    case ')': return {0x08, 0x04, 0x02, 0x02, 0x02, 0x04, 0x08};
    case '#': return {0x0A, 0x0A, 0x1F, 0x0A, 0x1F, 0x0A, 0x0A};
    case '/': return {0x00, 0x01, 0x02, 0x04, 0x08, 0x10, 0x00};
    case '+': return {0x00, 0x04, 0x04, 0x1F, 0x04, 0x04, 0x00};
    case ' ': return {};
    default: return {0x1F, 0x11, 0x11, 0x11, 0x11, 0x11, 0x1F};
  }
}

void plot(Image& img, std::int64_t x, std::int64_t y, Rgb c, int opacity) {
  if (img.contains(x, y)) img.at(x, y) = blend(img.at(x, y), c, opacity);
}

void draw_line(Image& img, const DrawLine& l) {
  // Collect first so a translucent line blends each pixel once.
  std::vector<std::pair<std::int64_t, std::int64_t>> px;
  std::int64_t x = l.x1, y = l.y1;
  const std::int64_t dx = std::abs(l.x2 - l.x1), dy = -std::abs(l.y2 - l.y1);
  const std::int64_t sx = l.x1 < l.x2 ? 1 : -1, sy = l.y1 < l.y2 ? 1 : -1;
  std::int64_t err = dx + dy;
  while (true) {
    for (int oy = -1; oy <= 0; ++oy) {
      for (int ox = -1; ox <= 0; ++ox) px.emplace_back(x + ox, y + oy);
    }
    if (x == l.x2 && y == l.y2) break;
    const std::int64_t e2 = 2 * err;
    if (e2 >= dy) {
      err += dy;
      x += sx;
    }
    if (e2 <= dx) {
      err += dx;
      y += sy;
    }
  }
  std::sort(px.begin(), px.end());
  px.erase(std::unique(px.begin(), px.end()), px.end());
  for (auto [qx, qy] : px) plot(img, qx, qy, l.color, l.opacity);
}

void draw_shape(Image& img, const DrawObject& o) {
  const std::int64_t x0 = std::max<std::int64_t>(o.x, 0);
  const std::int64_t y0 = std::max<std::int64_t>(o.y, 0);
  const std::int64_t x1 = std::min(o.x + o.width, img.width);
  const std::int64_t y1 = std::min(o.y + o.height, img.height);
  const bool ellipse = o.sprite == "ellipse";
  const std::int64_t w = o.width, h = o.height;
  if (!ellipse && o.opacity >= kOpaque) {
    for (std::int64_t y = y0; y < y1 && x0 < x1; ++y) {
      std::fill(&img.at(x0, y), &img.at(x1 - 1, y) + 1, o.fill);
    }
    return;
  }
  for (std::int64_t y = y0; y < y1; ++y) {
    for (std::int64_t x = x0; x < x1; ++x) {
      if (ellipse) {
        const std::int64_t ex = 2 * (x - o.x) + 1 - w;
        const std::int64_t ey = 2 * (y - o.y) + 1 - h;
        if (ex * ex * h * h + ey * ey * w * w > w * w * h * h) continue;
      }
      plot(img, x, y, o.fill, o.opacity);
    }
  }
}

void draw_text(Image& img, const DrawObject& o) {
  const std::string& text = *o.text;
  if (text.empty()) return;
  const std::int64_t n = static_cast<std::int64_t>(text.size());
  const std::int64_t width = 6 * n - 1;
  const std::int64_t left = o.x + (o.width - width) / 2;
  const std::int64_t top = o.y + (o.height - 7) / 2;
  for (std::int64_t i = 0; i < n; ++i) {
    const Glyph g = glyph(text[static_cast<std::size_t>(i)]);
    for (int row = 0; row < 7; ++row) {
      for (int col = 0; col < 5; ++col) {
        if (g[static_cast<std::size_t>(row)] & (0x10 >> col)) {
          plot(img, left + 6 * i + col, top + row, Rgb{0, 0, 0}, o.opacity);
        }
      }
    }
  }
}

}  // namespace

Image::Image(std::int64_t w, std::int64_t h, Rgb fill) : width(w), height(h) {
  if (w <= 0 || h <= 0 || w * h > kMaxPixels) {
    throw std::invalid_argument("canvas size out of range: " + std::to_string(w) + "x" +
                                std::to_string(h));
  }
  pixels.assign(static_cast<std::size_t>(w * h), fill);
}

Rgb blend(Rgb dst, Rgb src, int opacity) {
  if (opacity >= 1000) return src;
  if (opacity <= 0) return dst;
  auto mix = [&](std::uint8_t d, std::uint8_t s) {
    return static_cast<std::uint8_t>((s * opacity + d * (1000 - opacity) + 500) / 1000);
  };
  return {mix(dst.r, src.r), mix(dst.g, src.g), mix(dst.b, src.b)};
}

Image rasterize(const Frame& frame) {
  Image img(frame.width, frame.height);
  for (const auto& l : frame.lines) draw_line(img, l);
  for (const auto& o : frame.objects) {
    draw_shape(img, o);
    if (o.text) draw_text(img, o);
  }
  return img;
}

}  // namespace planim::render
