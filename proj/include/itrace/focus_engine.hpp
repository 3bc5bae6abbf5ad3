#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "itrace/errors.hpp"
#include "itrace/path.hpp"
#include "itrace/scene.hpp"

namespace itrace {

enum class ColorClass { active, related, unrelated, managed };
enum class TransparencyMode { off, fadeUnrelated, fadeAllButActive };
enum class UnpinnedVisibility { normal, semiTransparent, hidden };
enum class StopMode { viewBorder, nearMarker };

inline std::string_view to_string(ColorClass c) {
  switch (c) {
    case ColorClass::active: return "active";
    case ColorClass::related: return "related";
    case ColorClass::unrelated: return "unrelated";
    case ColorClass::managed: return "managed";
  }
  return "unrelated";
}

inline std::string_view to_string(TransparencyMode m) {
  switch (m) {
    case TransparencyMode::off: return "off";
    case TransparencyMode::fadeUnrelated: return "fadeUnrelated";
    case TransparencyMode::fadeAllButActive: return "fadeAllButActive";
  }
  return "off";
}

inline std::string_view to_string(UnpinnedVisibility m) {
  switch (m) {
    case UnpinnedVisibility::normal: return "normal";
    case UnpinnedVisibility::semiTransparent: return "semiTransparent";
    case UnpinnedVisibility::hidden: return "hidden";
  }
  return "normal";
}

inline std::string_view to_string(StopMode m) { return m == StopMode::viewBorder ? "viewBorder" : "nearMarker"; }

inline TransparencyMode parse_transparency(std::string_view s) {
  if (s == "off") return TransparencyMode::off;
  if (s == "fadeUnrelated") return TransparencyMode::fadeUnrelated;
  if (s == "fadeAllButActive") return TransparencyMode::fadeAllButActive;
  throw InvalidArgument("unknown transparency mode '" + std::string(s) + "'");
}

inline UnpinnedVisibility parse_unpinned_visibility(std::string_view s) {
  if (s == "normal") return UnpinnedVisibility::normal;
  if (s == "semiTransparent") return UnpinnedVisibility::semiTransparent;
  if (s == "hidden") return UnpinnedVisibility::hidden;
  throw InvalidArgument("unknown unpinned visibility '" + std::string(s) + "'");
}

inline StopMode parse_stop_mode(std::string_view s) {
  if (s == "viewBorder") return StopMode::viewBorder;
  if (s == "nearMarker") return StopMode::nearMarker;
  throw InvalidArgument("unknown stop mode '" + std::string(s) + "'");
}

struct EngineConfig {
  double hysteresis = 2.0;       // rival link must be closer by more than this to take over
  double near_radius = 24.0;     // nearMarker stop distance from the anchor
  double spread_step = 8.0;      // arc offset between overlapping copies
  double overlap_distance = 8.0;
  double semi_transparent_opacity = 0.3;
  bool foci_enabled_by_default = true;
};

struct FocusMarker {
  int id = 0;
  std::string origin;  // element the marker was enabled on
  std::string anchor;  // element the active link is measured from
  std::optional<std::size_t> active_link;
  double arc_length = 0.0;
  double proportion = 0.0;
  Vec2 position;
  bool foci_enabled = true;
  std::optional<std::size_t> managing_link;  // pinned link being dragged
};

struct SupportiveFocus {
  std::string id;
  int marker = 0;
  std::size_t link = 0;
  Vec2 position;
  double arc_length = 0.0;
  double proportion = 0.0;
};

struct AttractedCopy {
  std::string id;
  int marker = 0;
  std::string source;
  std::size_t link = 0;
  Vec2 position;
  double arc_length = 0.0;  // measured from the anchor
  StopMode mode = StopMode::viewBorder;
};

struct LinkStyle {
  ColorClass color = ColorClass::unrelated;
  double opacity = 1.0;
  bool pinned = false;
};

struct Progress {
  double proportion = 0.0;
  std::optional<std::size_t> link;
  Path highlighted;  // empty when nothing has been traversed
};

struct HoverInfo {
  std::string label;
  std::string highlight;  // id of the original mark
};

struct ToggleResult {
  int marker = 0;
  bool created = false;
};

namespace detail {

inline int class_rank(ColorClass c) {
  switch (c) {
    case ColorClass::managed: return 3;
    case ColorClass::active: return 2;
    case ColorClass::related: return 1;
    case ColorClass::unrelated: return 0;
  }
  return 0;
}

// Smallest arc length in [lo, hi] where inside(path(s)) flips, given
// inside(lo) != inside(hi).
template <class Pred>
double bisect_arc(const Path& path, double lo, double hi, Pred inside) {
  const bool lo_state = inside(path.point_at_length(lo));
  for (int i = 0; i < 80 && hi - lo > 1e-12; ++i) {
    const double mid = 0.5 * (lo + hi);
    (inside(path.point_at_length(mid)) == lo_state ? lo : hi) = mid;
  }
  return hi;
}

// Walking from the far end toward the start, the arc length where the path
// first enters `rect`.
inline std::optional<double> border_stop(const Path& path, const Rect& rect) {
  const double len = path.total_length();
  auto inside = [&](Vec2 p) { return rect.contains(p); };
  if (inside(path.end())) return len;
  constexpr double kWalk = 1.0;
  for (double s = len; s > 0.0;) {
    const double next = std::max(0.0, s - kWalk);
    if (inside(path.point_at_length(next))) return bisect_arc(path, next, s, inside);
    s = next;
  }
  return std::nullopt;
}

// Arc length where the path first gets `radius` away from `center`.
inline double radius_stop(const Path& path, Vec2 center, double radius) {
  const double len = path.total_length();
  auto within = [&](Vec2 p) { return distance(p, center) < radius; };
  constexpr double kWalk = 1.0;
  for (double s = 0.0; s < len;) {
    const double next = std::min(len, s + kWalk);
    if (!within(path.point_at_length(next))) {
      return within(path.point_at_length(s)) ? bisect_arc(path, s, next, within) : s;
    }
    s = next;
  }
  return len;
}

}  // namespace detail

// Interactive focus-transition state machine. Commands mutate the session
// sequentially; every derived quantity (foci, styles, progress) is a pure
// function of the stored state.
class TraceSession {
 public:
  explicit TraceSession(std::shared_ptr<const Scene> scene, EngineConfig config = {})
      : scene_(std::move(scene)), config_(config) {
    if (!scene_) throw InvalidArgument("session needs a scene");
  }

  const Scene& scene() const { return *scene_; }
  const EngineConfig& config() const { return config_; }
  const std::map<int, FocusMarker>& markers() const { return markers_; }
  const std::vector<AttractedCopy>& copies() const { return copies_; }
  TransparencyMode transparency() const { return transparency_; }
  UnpinnedVisibility unpinned_visibility() const { return unpinned_visibility_; }
  bool is_pinned(std::size_t link) const { return pinned_.contains(link); }

  std::vector<std::size_t> pinned_links() const {
    std::vector<std::size_t> out;
    for (const auto& [id, p] : pinned_) out.push_back(id);
    return out;
  }

  const FocusMarker& marker(int id) const {
    const auto it = markers_.find(id);
    if (it == markers_.end()) throw NotFound("marker " + std::to_string(id));
    return it->second;
  }

  // Geometry currently drawn for the link, oriented away from `from`.
  const Path& link_path(std::size_t link, const std::string& from) const {
    const VisualLink& l = scene_->link(link);
    if (const auto it = pinned_.find(link); it != pinned_.end()) {
      return from == l.b ? it->second.backward : it->second.forward;
    }
    return l.from(from);
  }

  ToggleResult toggle_focus_marker(const std::string& element) {
    const ElementInfo& info = scene_->element(element);
    for (auto it = markers_.begin(); it != markers_.end(); ++it) {
      if (it->second.origin == element || it->second.anchor == element) {
        const int id = it->first;
        std::erase_if(copies_, [id](const AttractedCopy& c) { return c.marker == id; });
        markers_.erase(it);
        return {id, false};
      }
    }
    int id = 1;
    while (markers_.contains(id)) ++id;
    FocusMarker m;
    m.id = id;
    m.origin = element;
    m.anchor = element;
    m.position = info.position;
    m.foci_enabled = config_.foci_enabled_by_default;
    markers_.emplace(id, std::move(m));
    return {id, true};
  }

  // Snaps the marker to the closest point over its anchor's links, switching
  // the active link when a rival is closer by more than the hysteresis.
  void drag_marker(int marker_id, Vec2 cursor) {
    FocusMarker& m = mutable_marker(marker_id);
    if (m.managing_link) {
      reposition_pinned(*m.managing_link, cursor);
      return;
    }
    snap(m, cursor);
    const auto& link = m.active_link;
    if (link && m.proportion >= 1.0) {
      const std::string& far = scene_->link(*link).other(m.anchor);
      if (scene_->element(far).bundle) {
        m.anchor = far;
        m.active_link.reset();
        m.arc_length = 0.0;
        m.proportion = 0.0;
        m.position = scene_->element(far).position;
        snap(m, cursor);
      }
    }
  }

  void end_drag() {
    for (auto& [id, m] : markers_) m.managing_link.reset();
  }

  void toggle_foci(int marker_id) {
    FocusMarker& m = mutable_marker(marker_id);
    m.foci_enabled = !m.foci_enabled;
  }

  // One focus per non-active link of the anchor, at the marker's proportion.
  std::vector<SupportiveFocus> supportive_foci(int marker_id) const {
    const FocusMarker& m = marker(marker_id);
    std::vector<SupportiveFocus> out;
    if (!m.foci_enabled || !m.active_link) return out;
    for (std::size_t link : scene_->links_of(m.anchor)) {
      if (link == *m.active_link) continue;
      const Path& path = link_path(link, m.anchor);
      const double len = path.total_length();
      const double arc = m.proportion * len;
      out.push_back({"focus-" + std::to_string(m.id) + "-" + std::to_string(link), m.id, link,
                     path.point_at_length(arc), arc, len > 0.0 ? arc / len : m.proportion});
    }
    return out;
  }

  // Color class and opacity per link id. Several markers combine by class
  // precedence (managed > active > related > unrelated) and maximum opacity.
  std::vector<LinkStyle> style_links() const {
    const auto& links = scene_->links();
    std::vector<LinkStyle> out(links.size());
    for (std::size_t id = 0; id < links.size(); ++id) {
      LinkStyle& s = out[id];
      if (pinned_.contains(id)) {
        s = {ColorClass::managed, 1.0, true};
        continue;
      }
      bool any = false;
      for (const auto& [mid, m] : markers_) {
        ColorClass c = ColorClass::unrelated;
        double opacity = transparency_ == TransparencyMode::off ? 1.0 : 1.0 - m.proportion;
        if (m.active_link == id) {
          c = ColorClass::active;
          opacity = 1.0;
        } else if (links[id].touches(m.anchor)) {
          c = ColorClass::related;
          opacity = transparency_ == TransparencyMode::fadeAllButActive ? 1.0 - m.proportion : 1.0;
        }
        if (!any || detail::class_rank(c) > detail::class_rank(s.color)) s.color = c;
        s.opacity = any ? std::max(s.opacity, opacity) : opacity;
        any = true;
      }
      if (unpinned_visibility_ == UnpinnedVisibility::semiTransparent) s.opacity = config_.semi_transparent_opacity;
      if (unpinned_visibility_ == UnpinnedVisibility::hidden) s.opacity = 0.0;
    }
    return out;
  }

  // Progress value and the traversed part of the active link only.
  Progress progress(int marker_id) const {
    const FocusMarker& m = marker(marker_id);
    if (!m.active_link) return {};
    const Path& path = link_path(*m.active_link, m.anchor);
    return {m.proportion, m.active_link, path.sub_path(0.0, m.arc_length)};
  }

  // Pulls copies of the anchor's related elements along their links, either
  // to the border of the marker's view or to a fixed radius around the anchor.
  void attract_copies(int marker_id, StopMode mode) {
    const FocusMarker& m = marker(marker_id);
    const auto& links = scene_->links_of(m.anchor);
    if (links.empty()) return;
    std::erase_if(copies_, [&](const AttractedCopy& c) { return c.marker == m.id; });

    const View* marker_view = scene_->view_at(m.position);
    const Rect rect = marker_view ? marker_view->rect : scene_->view(scene_->element(m.anchor).view_id).rect;
    const Vec2 anchor_pos = scene_->element(m.anchor).position;

    std::vector<Vec2> placed;
    for (std::size_t link : links) {
      const std::string& source = scene_->link(link).other(m.anchor);
      const Path& path = link_path(link, m.anchor);
      std::optional<double> arc;
      if (mode == StopMode::viewBorder) arc = detail::border_stop(path, rect);
      if (!arc) {
        arc = detail::radius_stop(path, anchor_pos, config_.near_radius);
        while (*arc < path.total_length() && overlaps_any(placed, path.point_at_length(*arc))) {
          arc = std::min(path.total_length(), *arc + config_.spread_step);
        }
      }
      const Vec2 pos = path.point_at_length(*arc);
      placed.push_back(pos);
      copies_.push_back({"copy-" + std::to_string(m.id) + "-" + source, m.id, source, link, pos, *arc, mode});
    }
  }

  void pin_link(int marker_id) {
    FocusMarker& m = mutable_marker(marker_id);
    if (!m.active_link) throw InvalidState("marker " + std::to_string(marker_id) + " has no active link");
    const VisualLink& l = scene_->link(*m.active_link);
    pinned_.try_emplace(*m.active_link, Pinned{l.forward, l.backward});
    m.managing_link = m.active_link;
  }

  // Re-routes a pinned link as anchor -> cursor -> far endpoint.
  void reposition_pinned(std::size_t link, Vec2 cursor) {
    const auto it = pinned_.find(link);
    if (it == pinned_.end()) throw InvalidState("link " + std::to_string(link) + " is not pinned");
    const VisualLink& l = scene_->link(link);
    it->second.forward = Path::polyline({scene_->element(l.a).position, cursor, scene_->element(l.b).position});
    it->second.backward = it->second.forward.reversed();
    for (auto& [id, m] : markers_) {
      if (m.active_link != link) continue;
      if (m.managing_link == link) {
        const Path& path = link_path(link, m.anchor);
        m.arc_length = distance(path.start(), cursor);
        m.proportion = path.total_length() > 0.0 ? m.arc_length / path.total_length() : 0.0;
        m.position = cursor;
      } else {
        reseat(m);
      }
    }
  }

  void unpin_link(std::size_t link) {
    scene_->link(link);
    if (pinned_.erase(link) == 0) throw InvalidState("link " + std::to_string(link) + " is not pinned");
    for (auto& [id, m] : markers_) {
      if (m.managing_link == link) m.managing_link.reset();
      if (m.active_link == link) reseat(m);
    }
  }

  void set_transparency(TransparencyMode mode) { transparency_ = mode; }
  void set_unpinned_visibility(UnpinnedVisibility mode) { unpinned_visibility_ = mode; }

  // Label and original mark for whatever sits under the pointer.
  HoverInfo hover(const std::string& target) const {
    auto of_element = [&](const std::string& id) {
      const ElementInfo& e = scene_->element(id);
      return HoverInfo{e.label, e.id};
    };
    if (scene_->has_element(target)) return of_element(target);
    if (target.starts_with("marker-")) return of_element(marker(parse_int(target.substr(7), target)).anchor);
    for (const auto& c : copies_) {
      if (c.id == target) return of_element(c.source);
    }
    if (target.starts_with("focus-")) {
      const std::string rest = target.substr(6);
      const auto dash = rest.find('-');
      if (dash != std::string::npos) {
        const auto it = markers_.find(parse_int(rest.substr(0, dash), target));
        const std::size_t link = static_cast<std::size_t>(parse_int(rest.substr(dash + 1), target));
        if (it != markers_.end() && link < scene_->links().size() && scene_->link(link).touches(it->second.anchor)) {
          return of_element(scene_->link(link).other(it->second.anchor));
        }
      }
    }
    throw NotFound("hover target " + target);
  }

 private:
  struct Pinned {
    Path forward;
    Path backward;
  };

  static int parse_int(const std::string& s, const std::string& context) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(s, &used);
      if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw NotFound("target " + context);
  }

  FocusMarker& mutable_marker(int id) {
    const auto it = markers_.find(id);
    if (it == markers_.end()) throw NotFound("marker " + std::to_string(id));
    return it->second;
  }

  void snap(FocusMarker& m, Vec2 cursor) {
    const auto& links = scene_->links_of(m.anchor);
    if (links.empty()) return;
    std::vector<PathPoint> hits;
    hits.reserve(links.size());
    std::size_t best = 0;
    for (std::size_t i = 0; i < links.size(); ++i) {
      hits.push_back(closest_point(link_path(links[i], m.anchor), cursor));
      if (hits[i].distance < hits[best].distance) best = i;
    }
    if (m.active_link) {
      const auto cur = std::find(links.begin(), links.end(), *m.active_link);
      if (cur != links.end()) {
        const auto ci = static_cast<std::size_t>(cur - links.begin());
        if (best != ci && !(hits[best].distance < hits[ci].distance - config_.hysteresis)) best = ci;
      }
    }
    m.active_link = links[best];
    m.arc_length = hits[best].arc_length;
    m.proportion = hits[best].proportion;
    m.position = hits[best].position;
  }

  void reseat(FocusMarker& m) {
    const Path& path = link_path(*m.active_link, m.anchor);
    m.arc_length = m.proportion * path.total_length();
    m.position = path.point_at_length(m.arc_length);
  }

  bool overlaps_any(const std::vector<Vec2>& placed, Vec2 p) const {
    return std::any_of(placed.begin(), placed.end(),
                       [&](Vec2 q) { return distance(p, q) < config_.overlap_distance; });
  }

  std::shared_ptr<const Scene> scene_;
  EngineConfig config_;
  std::map<int, FocusMarker> markers_;
  std::vector<AttractedCopy> copies_;
  std::map<std::size_t, Pinned> pinned_;
  TransparencyMode transparency_ = TransparencyMode::off;
  UnpinnedVisibility unpinned_visibility_ = UnpinnedVisibility::normal;
};

}  // namespace itrace
