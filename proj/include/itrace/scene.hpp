#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "itrace/bundling.hpp"
#include "itrace/dataset.hpp"
#include "itrace/path.hpp"

namespace itrace {

// Anything a link can end at: an entity or a bundle element.
struct ElementInfo {
  std::string id;
  std::string label;
  Vec2 position;
  std::string view_id;
  bool bundle = false;
};

enum class LinkKind { direct, leg };

struct VisualLink {
  std::size_t id = 0;
  std::string a;
  std::string b;
  LinkKind kind = LinkKind::direct;
  Path forward;   // a -> b
  Path backward;  // b -> a

  bool touches(const std::string& element) const { return a == element || b == element; }
  const std::string& other(const std::string& element) const { return element == a ? b : a; }
  const Path& from(const std::string& element) const { return element == b ? backward : forward; }
};

// The rendered link structure of a dataset: direct links, and with bundling
// enabled the legs through relationship-view bundle elements.
class Scene {
 public:
  explicit Scene(Dataset dataset, const RelationshipLayout& layout = {})
      : graph_(std::move(dataset.graph)), bundling_(dataset.bundling) {
    for (const auto& e : graph_.entities()) {
      elements_.emplace(e.id, ElementInfo{e.id, e.label, e.position, e.view_id, false});
    }
    if (bundling_) {
      relationship_ = build_relationship_views(graph_, layout);
      routing_ = route_links(graph_, relationship_);
      for (const auto& b : relationship_.bundles) {
        const Bicluster& bc = graph_.biclusters()[b.bicluster];
        const std::string label =
            "Bundle " + b.id.substr(7) + " (" + std::to_string(bc.left.size()) + "x" + std::to_string(bc.right.size()) + ")";
        if (!elements_.emplace(b.id, ElementInfo{b.id, label, b.position, b.view_id, true}).second) {
          throw InvalidArgument("bundle id " + b.id + " collides with an entity id");
        }
      }
      for (auto idx : routing_.direct) add_link(graph_.relations()[idx].a, graph_.relations()[idx].b, LinkKind::direct);
      for (const auto& leg : routing_.legs) add_link(leg.element, leg.bundle, LinkKind::leg);
    } else {
      for (std::size_t i = 0; i < graph_.relations().size(); ++i) {
        routing_.direct.push_back(i);
        add_link(graph_.relations()[i].a, graph_.relations()[i].b, LinkKind::direct);
      }
      routing_.assignment.resize(graph_.relations().size());
    }
  }

  const RelationGraph& graph() const { return graph_; }
  bool bundling() const { return bundling_; }
  const RelationshipViews& relationship() const { return relationship_; }
  const Routing& routing() const { return routing_; }
  const std::vector<VisualLink>& links() const { return links_; }

  const VisualLink& link(std::size_t id) const {
    if (id >= links_.size()) throw NotFound("link " + std::to_string(id));
    return links_[id];
  }

  bool has_element(const std::string& id) const { return elements_.contains(id); }

  const ElementInfo& element(const std::string& id) const {
    const auto it = elements_.find(id);
    if (it == elements_.end()) throw NotFound("element " + id);
    return it->second;
  }

  // Link ids touching the element, ascending.
  const std::vector<std::size_t>& links_of(const std::string& id) const {
    static const std::vector<std::size_t> none;
    element(id);
    const auto it = incident_.find(id);
    return it == incident_.end() ? none : it->second;
  }

  // Data or relationship view containing p, if any.
  const View* view_at(Vec2 p) const {
    for (const auto& v : graph_.views()) {
      if (v.rect.contains(p)) return &v;
    }
    for (const auto& v : relationship_.views) {
      if (v.rect.contains(p)) return &v;
    }
    return nullptr;
  }

  const View& view(const std::string& id) const {
    for (const auto& v : relationship_.views) {
      if (v.id == id) return v;
    }
    return graph_.view(id);
  }

 private:
  void add_link(const std::string& a, const std::string& b, LinkKind kind) {
    const std::size_t id = links_.size();
    Path forward = link_curve(element(a).position, element(b).position);
    Path backward = forward.reversed();
    links_.push_back({id, a, b, kind, std::move(forward), std::move(backward)});
    incident_[a].push_back(id);
    incident_[b].push_back(id);
  }

  RelationGraph graph_;
  bool bundling_ = false;
  RelationshipViews relationship_;
  Routing routing_;
  std::map<std::string, ElementInfo> elements_;
  std::vector<VisualLink> links_;
  std::map<std::string, std::vector<std::size_t>> incident_;
};

}  // namespace itrace
