#include "planim/frames.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <tuple>

#include "planim/profile.hpp"
#include "planim/rational.hpp"

namespace planim::render {

using scene::Scene;

namespace {

struct Bounds {
  std::int64_t min_x = std::numeric_limits<std::int64_t>::max();
  std::int64_t min_y = std::numeric_limits<std::int64_t>::max();
  std::int64_t max_x = std::numeric_limits<std::int64_t>::min();
  std::int64_t max_y = std::numeric_limits<std::int64_t>::min();

  void add(std::int64_t x, std::int64_t y) {
    min_x = std::min(min_x, x);
    min_y = std::min(min_y, y);
    max_x = std::max(max_x, x);
    max_y = std::max(max_y, y);
  }
  bool empty() const { return min_x > max_x; }
};

DrawObject draw_object(const std::string& name, const VisualObject& o, bool at_goal,
                       const Viewport& vp) {
  DrawObject d;
  d.name = name;
  d.x = vp.screen_x(*o.x);
  d.y = vp.screen_y(*o.y + o.height);
  d.width = o.width;
  d.height = o.height;
  d.darkened = at_goal;
  d.fill = at_goal ? o.color.darkened() : o.color;
  d.sprite = o.sprite;
  if (o.showname) d.text = o.label;
  return d;
}

DrawLine draw_line(const LineElement& l, const Viewport& vp) {
  return {vp.screen_x(l.x1), vp.screen_y(l.y1), vp.screen_x(l.x2), vp.screen_y(l.y2), l.color,
          kOpaque};
}

void sort_objects(Frame& f, const std::map<std::string, std::int64_t>& depth) {
  std::sort(f.objects.begin(), f.objects.end(), [&](const DrawObject& a, const DrawObject& b) {
    return std::tie(depth.at(a.name), a.name) < std::tie(depth.at(b.name), b.name);
  });
}

Frame key_frame(const Scene& s, const Viewport& vp) {
  Frame f;
  f.width = vp.width;
  f.height = vp.height;
  std::map<std::string, std::int64_t> depth;
  for (const auto& [name, obj] : s.objects) {
    if (!obj.visible()) continue;
    f.objects.push_back(draw_object(name, obj, s.at_goal.count(name) > 0, vp));
    depth[name] = obj.depth;
  }
  sort_objects(f, depth);
  for (const auto& l : s.lines) f.lines.push_back(draw_line(l, vp));
  return f;
}

struct Step {
  std::int64_t k;
  std::int64_t n;  // denominator: interpolated frame count + 1

  std::int64_t lerp(std::int64_t a, std::int64_t b) const {
    return a + round_half_up((b - a) * k, n);
  }
  int ramp_in() const { return static_cast<int>(round_half_up(kOpaque * k, n)); }
};

Frame between(const Scene& before, const Scene& after, Step t, const Viewport& vp) {
  Frame f;
  f.width = vp.width;
  f.height = vp.height;
  std::map<std::string, std::int64_t> depth;
  std::set<std::string> names = before.visible;
  names.insert(after.visible.begin(), after.visible.end());
  for (const auto& name : names) {
    const bool vb = before.visible.count(name) > 0;
    const bool va = after.visible.count(name) > 0;
    if (vb && va) {
      const VisualObject& a = before.objects.at(name);
      const VisualObject& b = after.objects.at(name);
      VisualObject m = a;
      m.x = t.lerp(*a.x, *b.x);
      m.y = t.lerp(*a.y, *b.y);
      m.width = t.lerp(a.width, b.width);
      m.height = t.lerp(a.height, b.height);
      f.objects.push_back(draw_object(name, m, before.at_goal.count(name) > 0, vp));
      depth[name] = m.depth;
    } else if (va) {
      const VisualObject& b = after.objects.at(name);
      DrawObject d = draw_object(name, b, after.at_goal.count(name) > 0, vp);
      d.opacity = t.ramp_in();
      f.objects.push_back(std::move(d));
      depth[name] = b.depth;
    } else {
      const VisualObject& a = before.objects.at(name);
      DrawObject d = draw_object(name, a, before.at_goal.count(name) > 0, vp);
      d.opacity = kOpaque - t.ramp_in();
      f.objects.push_back(std::move(d));
      depth[name] = a.depth;
    }
  }
  sort_objects(f, depth);

  auto key = [](const LineElement& l) { return std::tie(l.from, l.to, l.color); };
  std::vector<DrawLine> lines;
  for (const auto& l : before.lines) {
    auto it = std::find_if(after.lines.begin(), after.lines.end(),
                           [&](const LineElement& o) { return key(o) == key(l); });
    if (it != after.lines.end()) {
      LineElement m = l;
      m.x1 = t.lerp(l.x1, it->x1);
      m.y1 = t.lerp(l.y1, it->y1);
      m.x2 = t.lerp(l.x2, it->x2);
      m.y2 = t.lerp(l.y2, it->y2);
      f.lines.push_back(draw_line(m, vp));
    } else {
      DrawLine d = draw_line(l, vp);
      d.opacity = kOpaque - t.ramp_in();
      f.lines.push_back(d);
    }
  }
  for (const auto& l : after.lines) {
    bool shared = std::any_of(before.lines.begin(), before.lines.end(),
                              [&](const LineElement& o) { return key(o) == key(l); });
    if (shared) continue;
    DrawLine d = draw_line(l, vp);
    d.opacity = t.ramp_in();
    f.lines.push_back(d);
  }
  return f;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

/// `twice` is a coordinate doubled; prints "12" or "12.5".
std::string half_units(std::int64_t twice) {
  std::string s = std::to_string(twice / 2);
  if (twice % 2 != 0) {
    if (twice < 0 && twice / 2 == 0) s = "-0";
    s += ".5";
  }
  return s;
}

std::string opacity_text(int permille) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%d.%03d", permille / 1000, permille % 1000);
  return buf;
}

std::string media_type(const std::string& payload) {
  if (payload.rfind("iVBOR", 0) == 0) return "image/png";
  if (payload.rfind("/9j/", 0) == 0) return "image/jpeg";
  if (payload.rfind("R0lGOD", 0) == 0) return "image/gif";
  if (payload.rfind("PHN2Zy", 0) == 0 || payload.rfind("PD94", 0) == 0) return "image/svg+xml";
  return "image/png";
}

}  // namespace

Viewport compute_viewport(const scene::SceneSequence& sequence, const FrameSettings& settings) {
  Bounds b;
  for (const auto& s : sequence.scenes) {
    for (const auto& [name, o] : s.objects) {
      if (!o.visible()) continue;
      b.add(*o.x, *o.y);
      b.add(*o.x + o.width, *o.y + o.height);
    }
    for (const auto& l : s.lines) {
      b.add(l.x1, l.y1);
      b.add(l.x2, l.y2);
    }
  }
  if (b.empty()) b.add(0, 0);
  Viewport vp;
  vp.left = b.min_x - kCanvasMargin;
  vp.top = b.max_y + kCanvasMargin;
  vp.width = b.max_x - b.min_x + 2 * kCanvasMargin;
  vp.height = b.max_y - b.min_y + 2 * kCanvasMargin;
  if (settings.canvas) {
    vp.width = settings.canvas->first;
    vp.height = settings.canvas->second;
  }
  return vp;
}

std::size_t interpolated_frame_count(double duration_seconds, int fps) {
  double v = duration_seconds * fps;
  double r = std::round(v);
  if (std::fabs(v - r) < 1e-9) return static_cast<std::size_t>(r);
  return static_cast<std::size_t>(std::ceil(v));
}

std::vector<Frame> build_frames(const scene::SceneSequence& sequence,
                                const FrameSettings& settings) {
  if (settings.fps < 1) throw std::invalid_argument("fps must be at least 1");
  const Viewport vp = compute_viewport(sequence, settings);
  std::vector<Frame> frames;
  for (std::size_t i = 0; i < sequence.scenes.size(); ++i) {
    if (i > 0) {
      const auto n = interpolated_frame_count(sequence.transitions.at(i - 1).duration_seconds,
                                              settings.fps);
      for (std::size_t k = 1; k <= n; ++k) {
        Step t{static_cast<std::int64_t>(k), static_cast<std::int64_t>(n + 1)};
        frames.push_back(between(sequence.scenes[i - 1], sequence.scenes[i], t, vp));
      }
    }
    frames.push_back(key_frame(sequence.scenes[i], vp));
  }
  return frames;
}

std::string to_svg(const Frame& frame, const std::map<std::string, std::string>& sprites) {
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" xmlns:xlink=\"http://www.w3.org/1999/xlink\""
      << " version=\"1.1\" width=\"" << frame.width << "\" height=\"" << frame.height
      << "\" viewBox=\"0 0 " << frame.width << ' ' << frame.height << "\">\n";
  out << "<rect x=\"0\" y=\"0\" width=\"" << frame.width << "\" height=\"" << frame.height
      << "\" fill=\"#FFFFFF\"/>\n";
  for (const auto& l : frame.lines) {
    out << "<line x1=\"" << l.x1 << "\" y1=\"" << l.y1 << "\" x2=\"" << l.x2 << "\" y2=\"" << l.y2
        << "\" stroke=\"" << l.color.hex() << "\" stroke-width=\"2\"";
    if (l.opacity != kOpaque) out << " stroke-opacity=\"" << opacity_text(l.opacity) << '"';
    out << "/>\n";
  }
  for (const auto& o : frame.objects) {
    out << "<g id=\"" << xml_escape(o.name) << '"';
    if (o.opacity != kOpaque) out << " opacity=\"" << opacity_text(o.opacity) << '"';
    out << ">\n";
    const std::string box = "x=\"" + std::to_string(o.x) + "\" y=\"" + std::to_string(o.y) +
                            "\" width=\"" + std::to_string(o.width) + "\" height=\"" +
                            std::to_string(o.height) + '"';
    if (o.sprite == "ellipse") {
      out << "<ellipse cx=\"" << half_units(2 * o.x + o.width) << "\" cy=\""
          << half_units(2 * o.y + o.height) << "\" rx=\"" << half_units(o.width) << "\" ry=\""
          << half_units(o.height) << "\" fill=\"" << o.fill.hex() << "\"/>\n";
    } else if (auto it = sprites.find(o.sprite);
               !profile::is_builtin_sprite(o.sprite) && it != sprites.end()) {
      out << "<image " << box << " preserveAspectRatio=\"none\" xlink:href=\"data:"
          << media_type(it->second) << ";base64," << it->second << "\"/>\n";
      if (o.darkened) out << "<rect " << box << " fill=\"#000000\" fill-opacity=\"0.4\"/>\n";
    } else {
      out << "<rect " << box << " fill=\"" << o.fill.hex() << "\"/>\n";
    }
    if (o.text) {
      out << "<text x=\"" << half_units(2 * o.x + o.width) << "\" y=\""
          << half_units(2 * o.y + o.height)
          << "\" text-anchor=\"middle\" dominant-baseline=\"central\" font-family=\"monospace\""
          << " font-size=\"12\" fill=\"#000000\">" << xml_escape(*o.text) << "</text>\n";
    }
    out << "</g>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::vector<std::string> export_svg_frames(const scene::SceneSequence& sequence,
                                           const FrameSettings& settings,
                                           const std::map<std::string, std::string>& sprites) {
  std::vector<std::string> out;
  for (const auto& f : build_frames(sequence, settings)) out.push_back(to_svg(f, sprites));
  return out;
}

std::string frame_file_name(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "frame-%06zu.svg", index + 1);
  return buf;
}

}  // namespace planim::render
