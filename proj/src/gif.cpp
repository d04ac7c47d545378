#include "planim/gif.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <mutex>
#include <string>
#include <thread>
#include <unordered_map>

namespace planim::render {

namespace {

std::uint32_t pack(Rgb c) {
  return (static_cast<std::uint32_t>(c.r) << 16) | (static_cast<std::uint32_t>(c.g) << 8) | c.b;
}

int channel(Rgb c, int axis) { return axis == 0 ? c.r : axis == 1 ? c.g : c.b; }

struct Box {
  std::vector<std::pair<Rgb, std::uint64_t>> colors;

  int widest_axis(int* range) const {
    int best = 0;
    *range = -1;
    for (int axis = 0; axis < 3; ++axis) {
      int lo = 255, hi = 0;
      for (const auto& [c, n] : colors) {
        lo = std::min(lo, channel(c, axis));
        hi = std::max(hi, channel(c, axis));
      }
      if (hi - lo > *range) {
        *range = hi - lo;
        best = axis;
      }
    }
    return best;
  }

  Rgb mean() const {
    std::uint64_t r = 0, g = 0, b = 0, total = 0;
    for (const auto& [c, n] : colors) {
      r += c.r * n;
      g += c.g * n;
      b += c.b * n;
      total += n;
    }
    auto avg = [&](std::uint64_t v) { return static_cast<std::uint8_t>((2 * v + total) / (2 * total)); };
    return {avg(r), avg(g), avg(b)};
  }
};

std::vector<Rgb> median_cut(std::vector<std::pair<Rgb, std::uint64_t>> colors, std::size_t k) {
  std::vector<Box> boxes{Box{std::move(colors)}};
  while (boxes.size() < k) {
    std::size_t pick = boxes.size();
    int best_range = 0, axis = 0;
    for (std::size_t i = 0; i < boxes.size(); ++i) {
      if (boxes[i].colors.size() < 2) continue;
      int range = 0;
      int a = boxes[i].widest_axis(&range);
      if (range > best_range) {
        best_range = range;
        pick = i;
        axis = a;
      }
    }
    if (pick == boxes.size()) break;
    auto& cs = boxes[pick].colors;
    std::sort(cs.begin(), cs.end(), [axis](const auto& a, const auto& b) {
      int ca = channel(a.first, axis), cb = channel(b.first, axis);
      return ca != cb ? ca < cb : a.first < b.first;
    });
    std::uint64_t total = 0;
    for (const auto& [c, n] : cs) total += n;
    std::uint64_t acc = 0;
    std::size_t split = 1;
    for (std::size_t i = 0; i + 1 < cs.size(); ++i) {
      acc += cs[i].second;
      split = i + 1;
      if (2 * acc >= total) break;
    }
    Box upper{{cs.begin() + static_cast<std::ptrdiff_t>(split), cs.end()}};
    cs.resize(split);
    boxes.push_back(std::move(upper));
  }
  std::vector<Rgb> palette;
  for (const auto& b : boxes) palette.push_back(b.mean());
  std::sort(palette.begin(), palette.end());
  palette.erase(std::unique(palette.begin(), palette.end()), palette.end());
  return palette;
}

std::uint8_t nearest(const std::vector<Rgb>& palette, Rgb c) {
  std::size_t best = 0;
  long best_d = -1;
  for (std::size_t i = 0; i < palette.size(); ++i) {
    long dr = c.r - palette[i].r, dg = c.g - palette[i].g, db = c.b - palette[i].b;
    long d = dr * dr + dg * dg + db * db;
    if (best_d < 0 || d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return static_cast<std::uint8_t>(best);
}

class BitWriter {
 public:
  void write(std::uint32_t code, int bits) {
    acc_ |= static_cast<std::uint64_t>(code) << nbits_;
    nbits_ += bits;
    while (nbits_ >= 8) {
      bytes_.push_back(static_cast<std::uint8_t>(acc_ & 0xFF));
      acc_ >>= 8;
      nbits_ -= 8;
    }
  }
  std::vector<std::uint8_t> finish() {
    if (nbits_ > 0) bytes_.push_back(static_cast<std::uint8_t>(acc_ & 0xFF));
    acc_ = 0;
    nbits_ = 0;
    return std::move(bytes_);
  }

 private:
  std::vector<std::uint8_t> bytes_;
  std::uint64_t acc_ = 0;
  int nbits_ = 0;
};

std::vector<std::uint8_t> lzw(const std::vector<std::uint8_t>& indices, int min_code_size,
                              std::size_t alphabet) {
  const std::uint32_t clear = 1u << min_code_size;
  const std::uint32_t eoi = clear + 1;
  BitWriter out;
  // child[code * alphabet + index] is the extended code, 0 when absent.
  std::vector<std::uint16_t> child(4096 * alphabet, 0);
  std::vector<std::size_t> used;
  int code_size = min_code_size + 1;
  std::uint32_t max_code = eoi;
  out.write(clear, code_size);
  if (indices.empty()) {
    out.write(eoi, code_size);
    return out.finish();
  }
  std::uint32_t cur = indices[0];
  for (std::size_t i = 1; i < indices.size(); ++i) {
    const std::uint32_t next = indices[i];
    const std::size_t slot = cur * alphabet + next;
    if (child[slot] != 0) {
      cur = child[slot];
      continue;
    }
    out.write(cur, code_size);
    child[slot] = static_cast<std::uint16_t>(++max_code);
    used.push_back(slot);
    if (max_code >= (1u << code_size)) ++code_size;
    if (max_code == 4095) {
      out.write(clear, code_size);
      for (std::size_t u : used) child[u] = 0;
      used.clear();
      code_size = min_code_size + 1;
      max_code = eoi;
    }
    cur = next;
  }
  out.write(cur, code_size);
  out.write(eoi, code_size);
  return out.finish();
}

void put16(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xFF));
  out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xFF));
}

void put_bytes(std::vector<std::uint8_t>& out, std::string_view s) {
  out.insert(out.end(), s.begin(), s.end());
}

}  // namespace

std::uint16_t gif_delay_cs(int fps) {
  if (fps < 1) throw GifError("fps must be at least 1");
  return static_cast<std::uint16_t>((200 + fps) / (2 * fps));
}

std::vector<Rgb> build_palette(const std::vector<Image>& images, std::size_t max_colors) {
  std::unordered_map<std::uint32_t, std::uint64_t> counts;
  for (const auto& img : images) {
    // Frames are mostly flat fills, so count runs rather than pixels.
    std::size_t i = 0;
    while (i < img.pixels.size()) {
      std::size_t j = i + 1;
      while (j < img.pixels.size() && img.pixels[j] == img.pixels[i]) ++j;
      counts[pack(img.pixels[i])] += j - i;
      i = j;
    }
  }
  const std::map<std::uint32_t, std::uint64_t> histogram(counts.begin(), counts.end());
  std::vector<std::pair<Rgb, std::uint64_t>> colors;
  for (const auto& [p, n] : histogram) {
    colors.push_back({Rgb{static_cast<std::uint8_t>(p >> 16), static_cast<std::uint8_t>(p >> 8),
                          static_cast<std::uint8_t>(p)},
                      n});
  }
  if (colors.size() <= max_colors) {
    std::vector<Rgb> palette;
    for (const auto& [c, n] : colors) palette.push_back(c);
    return palette;
  }
  return median_cut(std::move(colors), max_colors);
}

std::vector<std::uint8_t> encode_gif(const std::vector<Image>& images, int fps) {
  if (images.empty()) throw GifError("cannot encode a GIF with no frames");
  const std::uint16_t delay = gif_delay_cs(fps);
  const std::int64_t width = images.front().width;
  const std::int64_t height = images.front().height;
  if (width > 0xFFFF || height > 0xFFFF) throw GifError("canvas too large for GIF");
  for (const auto& img : images) {
    if (img.width != width || img.height != height) throw GifError("frame sizes differ");
  }
  const std::vector<Rgb> palette = build_palette(images);
  int bits = 1;
  while ((1u << bits) < palette.size()) ++bits;
  const int min_code_size = std::max(2, bits);

  std::vector<std::uint8_t> out;
  put_bytes(out, "GIF89a");
  put16(out, static_cast<std::uint32_t>(width));
  put16(out, static_cast<std::uint32_t>(height));
  out.push_back(static_cast<std::uint8_t>(0x80 | (7 << 4) | (bits - 1)));
  out.push_back(0);  // background index
  out.push_back(0);  // aspect ratio
  for (std::size_t i = 0; i < (1u << bits); ++i) {
    Rgb c = i < palette.size() ? palette[i] : Rgb{};
    out.push_back(c.r);
    out.push_back(c.g);
    out.push_back(c.b);
  }
  out.insert(out.end(), {0x21, 0xFF, 0x0B});
  put_bytes(out, "NETSCAPE2.0");
  out.insert(out.end(), {0x03, 0x01, 0x00, 0x00, 0x00});

  std::unordered_map<std::uint32_t, std::uint8_t> index_of;
  for (std::size_t i = 0; i < palette.size(); ++i) {
    index_of.emplace(pack(palette[i]), static_cast<std::uint8_t>(i));
  }
  for (const auto& img : images) {
    out.insert(out.end(), {0x21, 0xF9, 0x04, 0x00});
    put16(out, delay);
    out.insert(out.end(), {0x00, 0x00});
    out.push_back(0x2C);
    put16(out, 0);
    put16(out, 0);
    put16(out, static_cast<std::uint32_t>(width));
    put16(out, static_cast<std::uint32_t>(height));
    out.push_back(0x00);
    std::vector<std::uint8_t> indices;
    indices.reserve(img.pixels.size());
    std::uint32_t last_color = 0xFFFFFFFF;
    std::uint8_t last_index = 0;
    for (const Rgb& c : img.pixels) {
      const std::uint32_t key = pack(c);
      if (key != last_color) {
        auto [it, fresh] = index_of.try_emplace(key, 0);
        if (fresh) it->second = nearest(palette, c);
        last_color = key;
        last_index = it->second;
      }
      indices.push_back(last_index);
    }
    out.push_back(static_cast<std::uint8_t>(min_code_size));
    const std::vector<std::uint8_t> data = lzw(indices, min_code_size, palette.size());
    for (std::size_t pos = 0; pos < data.size(); pos += 255) {
      const std::size_t n = std::min<std::size_t>(255, data.size() - pos);
      out.push_back(static_cast<std::uint8_t>(n));
      out.insert(out.end(), data.begin() + static_cast<std::ptrdiff_t>(pos),
                 data.begin() + static_cast<std::ptrdiff_t>(pos + n));
    }
    out.push_back(0x00);
  }
  out.push_back(0x3B);
  return out;
}

std::vector<std::uint8_t> export_gif(const std::vector<Frame>& frames, int fps) {
  if (frames.empty()) throw GifError("cannot encode a GIF with no frames");
  std::vector<Image> images(frames.size());
  const std::size_t workers =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, 8);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < frames.size(); i = next++) {
      try {
        images[i] = rasterize(frames[i]);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < workers; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return encode_gif(images, fps);
}

}  // namespace planim::render
