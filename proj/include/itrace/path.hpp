#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <limits>
#include <ranges>
#include <span>
#include <utility>
#include <vector>

#include "itrace/errors.hpp"
#include "itrace/geometry.hpp"

namespace itrace {

namespace detail {

// 8-point Gauss-Legendre rule on [-1, 1].
inline constexpr std::array<double, 8> kGaussNodes = {
    -0.9602898564975363, -0.7966664774136267, -0.5255324099163290, -0.1834346424956498,
    0.1834346424956498,  0.5255324099163290,  0.7966664774136267,  0.9602898564975363};
inline constexpr std::array<double, 8> kGaussWeights = {
    0.1012285362903763, 0.2223810344533745, 0.3137066458778873, 0.3626837833783620,
    0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};

}  // namespace detail

// One piece of a path: a straight line (p0 -> p3) or a cubic Bezier.
class Segment {
 public:
  enum class Kind { line, cubic };

  static Segment line(Vec2 a, Vec2 b) { return Segment(Kind::line, {a, lerp(a, b, 1.0 / 3), lerp(a, b, 2.0 / 3), b}); }

  static Segment cubic(Vec2 p0, Vec2 p1, Vec2 p2, Vec2 p3) {
    return Segment(Kind::cubic, {p0, p1, p2, p3});
  }

  Kind kind() const { return kind_; }
  const std::array<Vec2, 4>& control() const { return p_; }
  Vec2 start() const { return p_[0]; }
  Vec2 end() const { return p_[3]; }
  double length() const { return arc_.empty() ? distance(p_[0], p_[3]) : arc_.back(); }

  Vec2 point(double t) const {
    if (kind_ == Kind::line) return lerp(p_[0], p_[3], t);
    const double u = 1.0 - t;
    return p_[0] * (u * u * u) + p_[1] * (3 * u * u * t) + p_[2] * (3 * u * t * t) + p_[3] * (t * t * t);
  }

  Vec2 derivative(double t) const {
    if (kind_ == Kind::line) return p_[3] - p_[0];
    const double u = 1.0 - t;
    return (p_[1] - p_[0]) * (3 * u * u) + (p_[2] - p_[1]) * (6 * u * t) + (p_[3] - p_[2]) * (3 * t * t);
  }

  // Curve parameter at local arc length s (clamped to the segment).
  double param_at_length(double s) const {
    const double len = length();
    if (len <= 0.0 || s <= 0.0) return 0.0;
    if (s >= len) return 1.0;
    if (kind_ == Kind::line) return s / len;

    const auto it = std::upper_bound(arc_.begin(), arc_.end(), s);
    const std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(it - arc_.begin()) - 1, arc_.size() - 2);
    const double t0 = ts_[i];
    const double target = s - arc_[i];
    double lo = t0;
    double hi = ts_[i + 1];
    double t = t0 + (hi - lo) * target / (arc_[i + 1] - arc_[i]);
    // Safeguarded Newton on the arc-length integral.
    for (int iter = 0; iter < 60; ++iter) {
      const double f = integrate(t0, t) - target;
      if (std::abs(f) < 1e-12) break;
      (f > 0.0 ? hi : lo) = t;
      const double speed = derivative(t).length();
      double next = speed > 0.0 ? t - f / speed : 0.5 * (lo + hi);
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      if (std::abs(next - t) < 1e-16) break;
      t = next;
    }
    return t;
  }

  // Portion of the curve between parameters t0 <= t1.
  Segment slice(double t0, double t1) const {
    if (kind_ == Kind::line) return line(point(t0), point(t1));
    const double rel = t1 > 0.0 ? t0 / t1 : 0.0;
    const auto mid = split(split(p_, t1).first, rel).second;
    return cubic(mid[0], mid[1], mid[2], mid[3]);
  }

  Segment reversed() const {
    return kind_ == Kind::line ? line(p_[3], p_[0]) : cubic(p_[3], p_[2], p_[1], p_[0]);
  }

  double integrate(double t0, double t1) const {
    const double half = 0.5 * (t1 - t0);
    const double mid = 0.5 * (t0 + t1);
    double sum = 0.0;
    for (std::size_t k = 0; k < detail::kGaussNodes.size(); ++k) {
      sum += detail::kGaussWeights[k] * derivative(mid + half * detail::kGaussNodes[k]).length();
    }
    return sum * half;
  }

 private:
  Segment(Kind kind, std::array<Vec2, 4> p) : kind_(kind), p_(p) {
    if (kind_ == Kind::cubic) build_table();
  }

  static std::pair<std::array<Vec2, 4>, std::array<Vec2, 4>> split(const std::array<Vec2, 4>& p, double t) {
    const Vec2 a = lerp(p[0], p[1], t), b = lerp(p[1], p[2], t), c = lerp(p[2], p[3], t);
    const Vec2 d = lerp(a, b, t), e = lerp(b, c, t);
    const Vec2 f = lerp(d, e, t);
    return {{p[0], a, d, f}, {f, e, c, p[3]}};
  }

  // Adaptive Gauss-Legendre table of (t, cumulative length) knots.
  void build_table() {
    ts_.assign(1, 0.0);
    arc_.assign(1, 0.0);
    constexpr int kSeed = 8;
    for (int k = 0; k < kSeed; ++k) {
      const double t0 = static_cast<double>(k) / kSeed;
      const double t1 = static_cast<double>(k + 1) / kSeed;
      refine(t0, t1, integrate(t0, t1), 0);
    }
  }

  void refine(double t0, double t1, double whole, int depth) {
    const double mid = 0.5 * (t0 + t1);
    const double left = integrate(t0, mid);
    const double right = integrate(mid, t1);
    if (depth >= 24 || std::abs(left + right - whole) <= 1e-10) {
      ts_.push_back(mid);
      arc_.push_back(arc_.back() + left);
      ts_.push_back(t1);
      arc_.push_back(arc_.back() + right);
      return;
    }
    refine(t0, mid, left, depth + 1);
    refine(mid, t1, right, depth + 1);
  }

  Kind kind_;
  std::array<Vec2, 4> p_;
  std::vector<double> ts_;
  std::vector<double> arc_;
};

// An arc-length parameterized sequence of segments.
class Path {
 public:
  Path() = default;

  explicit Path(std::vector<Segment> segments) : segments_(std::move(segments)) {
    cumulative_.reserve(segments_.size() + 1);
    cumulative_.push_back(0.0);
    for (const auto& s : segments_) cumulative_.push_back(cumulative_.back() + s.length());
  }

  static Path polyline(std::span<const Vec2> points) {
    if (points.empty()) throw InvalidPath("polyline needs at least one point");
    std::vector<Segment> segs;
    if (points.size() == 1) segs.push_back(Segment::line(points[0], points[0]));
    for (std::size_t i = 1; i < points.size(); ++i) segs.push_back(Segment::line(points[i - 1], points[i]));
    return Path(std::move(segs));
  }

  static Path polyline(std::initializer_list<Vec2> points) {
    return polyline(std::span<const Vec2>(points.begin(), points.size()));
  }

  static Path cubic(Vec2 p0, Vec2 p1, Vec2 p2, Vec2 p3) { return Path({Segment::cubic(p0, p1, p2, p3)}); }

  bool empty() const { return segments_.empty(); }
  const std::vector<Segment>& segments() const { return segments_; }

  double total_length() const {
    require_non_empty();
    return cumulative_.back();
  }

  Vec2 start() const {
    require_non_empty();
    return segments_.front().start();
  }

  Vec2 end() const {
    require_non_empty();
    return segments_.back().end();
  }

  // Point at arc length s; s is clamped to [0, total_length()].
  Vec2 point_at_length(double s) const {
    const auto [index, t] = locate(s);
    return segments_[index].point(t);
  }

  // Segment index and curve parameter at (clamped) arc length s.
  std::pair<std::size_t, double> locate(double s) const {
    require_non_empty();
    s = clamp_length(s);
    const auto it = std::upper_bound(cumulative_.begin() + 1, cumulative_.end(), s);
    std::size_t index = static_cast<std::size_t>(it - (cumulative_.begin() + 1));
    index = std::min(index, segments_.size() - 1);
    return {index, segments_[index].param_at_length(s - cumulative_[index])};
  }

  double clamp_length(double s) const {
    if (!(s > 0.0)) return 0.0;
    return std::min(s, cumulative_.back());
  }

  // The part of the path between arc lengths s0 and s1; empty when s1 <= s0.
  Path sub_path(double s0, double s1) const {
    require_non_empty();
    s0 = clamp_length(s0);
    s1 = clamp_length(s1);
    if (s1 <= s0) return Path();
    const auto [i0, t0] = locate(s0);
    const auto [i1, t1] = locate(s1);
    std::vector<Segment> out;
    for (std::size_t i = i0; i <= i1; ++i) {
      const double a = i == i0 ? t0 : 0.0;
      const double b = i == i1 ? t1 : 1.0;
      if (b > a) out.push_back(segments_[i].slice(a, b));
    }
    if (out.empty()) return Path();
    return Path(std::move(out));
  }

  Path reversed() const {
    std::vector<Segment> out;
    out.reserve(segments_.size());
    for (auto it = segments_.rbegin(); it != segments_.rend(); ++it) out.push_back(it->reversed());
    return Path(std::move(out));
  }

 private:
  void require_non_empty() const {
    if (segments_.empty()) throw InvalidPath("path has no segments");
  }

  std::vector<Segment> segments_;
  std::vector<double> cumulative_;
};

struct PathPoint {
  Vec2 position;
  double arc_length = 0.0;
  double proportion = 0.0;
  double distance = 0.0;
};

// Evaluation counters for the two search phases of closest_point.
struct ClosestPointTrace {
  std::size_t linear_samples = 0;
  std::size_t bidirectional_rounds = 0;
};

// Sampled closest-point search: a linear scan every 8 arc units (plus one
// sample at the path end), then a bidirectional refinement halving the step
// while it exceeds 0.5. The left probe is taken whenever it improves;
// the right probe is only considered otherwise.
inline PathPoint closest_point(const Path& path, Vec2 query, ClosestPointTrace* trace = nullptr) {
  const double path_len = path.total_length();
  double step = 8.0;
  double best_len = 0.0;
  double best_dist = std::numeric_limits<double>::infinity();
  Vec2 best = path.start();

  auto consider = [&](double len) {
    const Vec2 p = path.point_at_length(len);
    const double d = distance(p, query);
    if (d < best_dist) {
      best = p;
      best_len = len;
      best_dist = d;
      return true;
    }
    return false;
  };

  for (double scan = 0.0; scan < path_len; scan += step) {
    consider(scan);
    if (trace) ++trace->linear_samples;
  }
  consider(path_len);
  if (trace) ++trace->linear_samples;

  while (step > 0.5) {
    step /= 2;
    const double left = path.clamp_length(best_len - step);
    const double right = path.clamp_length(best_len + step);
    if (!consider(left)) consider(right);
    if (trace) ++trace->bidirectional_rounds;
  }

  return {best, best_len, path_len > 0.0 ? best_len / path_len : 0.0, best_dist};
}

struct LinkHit {
  std::size_t index = 0;
  PathPoint point;
};

// closest_point over several paths; ties go to the lowest index.
template <std::ranges::forward_range R, class Proj = std::identity>
LinkHit closest_among(const R& links, Vec2 query, Proj proj = {}) {
  std::size_t index = 0;
  LinkHit best;
  bool found = false;
  for (const auto& link : links) {
    const PathPoint hit = closest_point(std::invoke(proj, link), query);
    if (!found || hit.distance < best.point.distance) {
      best = {index, hit};
      found = true;
    }
    ++index;
  }
  if (!found) throw InvalidArgument("closest_among needs at least one link");
  return best;
}

// Link curve between two element positions: a single cubic whose inner
// control points sit at 1/3 and 2/3 of the chord, pushed sideways by 10% of
// the chord length.
inline Path link_curve(Vec2 from, Vec2 to) {
  const Vec2 chord = to - from;
  const double len = chord.length();
  if (len == 0.0) return Path::polyline({from});
  const Vec2 normal{-chord.y / len, chord.x / len};
  const Vec2 offset = normal * (0.1 * len);
  return Path::cubic(from, from + chord / 3 + offset, from + chord * (2.0 / 3) + offset, to);
}

}  // namespace itrace
