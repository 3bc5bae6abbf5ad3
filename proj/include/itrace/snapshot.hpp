#pragma once

#include "itrace/focus_engine.hpp"
#include "itrace/format.hpp"

namespace itrace {

namespace detail {

inline Json optional_index(const std::optional<std::size_t>& v) { return v ? Json(*v) : Json(nullptr); }

inline Json path_json(const Path& path) {
  Json segs = Json::array();
  for (const auto& s : path.segments()) {
    Json pts = Json::array();
    if (s.kind() == Segment::Kind::line) {
      pts.push_back(point_json(s.start()));
      pts.push_back(point_json(s.end()));
    } else {
      for (const auto& p : s.control()) pts.push_back(point_json(p));
    }
    segs.push_back(std::move(pts));
  }
  return segs;
}

}  // namespace detail

// Full engine state as sent to clients after every command.
inline Json session_snapshot(const TraceSession& session) {
  const Scene& scene = session.scene();
  Json markers = Json::array();
  Json foci = Json::array();
  Json progress = Json::array();
  for (const auto& [id, m] : session.markers()) {
    markers.push_back({{"id", m.id},
                       {"origin", m.origin},
                       {"anchor", m.anchor},
                       {"activeLink", detail::optional_index(m.active_link)},
                       {"arcLength", normalized(m.arc_length)},
                       {"proportion", normalized(m.proportion)},
                       {"position", point_json(m.position)},
                       {"fociEnabled", m.foci_enabled},
                       {"managing", detail::optional_index(m.managing_link)}});
    for (const auto& f : session.supportive_foci(id)) {
      foci.push_back({{"id", f.id},
                      {"marker", f.marker},
                      {"link", f.link},
                      {"position", point_json(f.position)},
                      {"arcLength", normalized(f.arc_length)}});
    }
    const Progress p = session.progress(id);
    progress.push_back({{"marker", id},
                        {"proportion", normalized(p.proportion)},
                        {"link", detail::optional_index(p.link)},
                        {"highlightLength", normalized(p.highlighted.empty() ? 0.0 : p.highlighted.total_length())}});
  }

  Json copies = Json::array();
  for (const auto& c : session.copies()) {
    copies.push_back({{"id", c.id},
                      {"marker", c.marker},
                      {"source", c.source},
                      {"link", c.link},
                      {"position", point_json(c.position)},
                      {"stopMode", to_string(c.mode)}});
  }

  Json styles = Json::array();
  const auto computed = session.style_links();
  for (std::size_t i = 0; i < computed.size(); ++i) {
    Json entry = {{"link", i},
                  {"colorClass", to_string(computed[i].color)},
                  {"opacity", normalized(computed[i].opacity)},
                  {"pinned", computed[i].pinned}};
    if (computed[i].pinned) entry["path"] = detail::path_json(session.link_path(i, scene.link(i).a));
    styles.push_back(std::move(entry));
  }

  Json elements = Json::array();
  for (const auto& b : scene.relationship().bundles) {
    elements.push_back({{"id", b.id}, {"kind", "bundle"}, {"view", b.view_id}, {"position", point_json(b.position)}});
  }

  Json snap = Json::object();
  snap["markers"] = std::move(markers);
  snap["foci"] = std::move(foci);
  snap["copies"] = std::move(copies);
  snap["linkStyles"] = std::move(styles);
  snap["progress"] = std::move(progress);
  snap["elements"] = std::move(elements);
  snap["settings"] = {{"transparency", to_string(session.transparency())},
                      {"unpinnedVisibility", to_string(session.unpinned_visibility())}};
  return snap;
}

// Static scene description for renderers.
inline Json scene_json(const Scene& scene) {
  Json views = Json::array();
  auto add_view = [&](const View& v) {
    views.push_back({{"id", v.id},
                     {"kind", to_string(v.kind)},
                     {"rect", Json::array({normalized(v.rect.x), normalized(v.rect.y), normalized(v.rect.w),
                                           normalized(v.rect.h)})}});
  };
  for (const auto& v : scene.graph().views()) {
    if (v.kind != ViewKind::relationshipView) add_view(v);
  }
  for (const auto& v : scene.relationship().views) add_view(v);

  Json elements = Json::array();
  for (const auto& e : scene.graph().entities()) {
    elements.push_back({{"id", e.id},
                        {"kind", to_string(e.type)},
                        {"label", e.label},
                        {"view", e.view_id},
                        {"position", point_json(e.position)}});
  }
  for (const auto& b : scene.relationship().bundles) {
    elements.push_back({{"id", b.id},
                        {"kind", "bundle"},
                        {"label", scene.element(b.id).label},
                        {"view", b.view_id},
                        {"position", point_json(b.position)}});
  }

  Json links = Json::array();
  for (const auto& l : scene.links()) {
    links.push_back({{"id", l.id},
                     {"a", l.a},
                     {"b", l.b},
                     {"kind", l.kind == LinkKind::direct ? "direct" : "leg"},
                     {"path", detail::path_json(l.forward)}});
  }
  Json out = Json::object();
  out["views"] = std::move(views);
  out["elements"] = std::move(elements);
  out["links"] = std::move(links);
  return out;
}

}  // namespace itrace
