#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdio>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "itrace/relation_model.hpp"

namespace itrace {

// Node in a relationship view through which one bicluster's links are routed.
struct BundleElement {
  std::string id;
  std::size_t bicluster = 0;  // index into RelationGraph::biclusters()
  std::string view_id;
  Vec2 position;
};

struct RelationshipLayout {
  double gap_margin = 20.0;
};

struct RelationshipViews {
  std::vector<View> views;
  std::vector<BundleElement> bundles;  // ordered by bicluster index

  const BundleElement* find(const std::string& id) const {
    for (const auto& b : bundles) {
      if (b.id == id) return &b;
    }
    return nullptr;
  }
};

inline std::string bundle_id(std::size_t bicluster) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "bundle-%03zu", bicluster);
  return buf;
}

// One relationship view per adjacent pair of data views, placed in the gap
// between them (or reused when the dataset already declares one there). Bundle
// elements are stacked vertically: larger biclusters first, then by id.
inline RelationshipViews build_relationship_views(const RelationGraph& graph, const RelationshipLayout& layout = {}) {
  RelationshipViews out;
  const auto data = graph.data_views();
  for (std::size_t i = 0; i + 1 < data.size(); ++i) {
    const View& left = *data[i];
    const View& right = *data[i + 1];
    const double gap_left = left.rect.right();
    const double gap_right = right.rect.left();

    std::optional<View> rel;
    for (const auto& v : graph.views()) {
      if (v.kind == ViewKind::relationshipView && v.rect.center().x > gap_left && v.rect.center().x < gap_right) {
        rel = v;
        break;
      }
    }
    if (!rel) {
      const double gap = gap_right - gap_left;
      const double margin = gap > 2 * layout.gap_margin ? layout.gap_margin : gap / 4;
      const double top = std::min(left.rect.top(), right.rect.top());
      const double bottom = std::max(left.rect.bottom(), right.rect.bottom());
      rel = View{"rel-" + left.id + "-" + right.id, ViewKind::relationshipView,
                 {gap_left + margin, top, gap - 2 * margin, bottom - top}};
    }

    std::vector<std::size_t> members;
    const auto& all = graph.biclusters();
    for (std::size_t b = 0; b < all.size(); ++b) {
      if (all[b].left_view == left.id && all[b].right_view == right.id) members.push_back(b);
    }
    std::stable_sort(members.begin(), members.end(), [&](std::size_t a, std::size_t b) {
      return all[a].pair_count() > all[b].pair_count();
    });
    for (std::size_t k = 0; k < members.size(); ++k) {
      const double y = rel->rect.top() + rel->rect.h * static_cast<double>(k + 1) / static_cast<double>(members.size() + 1);
      out.bundles.push_back({bundle_id(members[k]), members[k], rel->id, {rel->rect.center().x, y}});
    }
    out.views.push_back(std::move(*rel));
  }
  std::sort(out.bundles.begin(), out.bundles.end(),
            [](const BundleElement& a, const BundleElement& b) { return a.bicluster < b.bicluster; });
  return out;
}

// Connection between a data element and a bundle element.
struct Leg {
  std::string element;
  std::string bundle;
  bool operator==(const Leg&) const = default;
};

struct Routing {
  std::vector<std::size_t> direct;                      // relation indices drawn as direct links
  std::vector<std::optional<std::size_t>> assignment;   // relation index -> bundles[] index
  std::vector<Leg> legs;

  std::size_t rendered_path_count() const { return direct.size() + legs.size(); }
};

// Every relation covered by a bicluster goes through the bundle of the
// largest covering bicluster (lowest id on ties); one leg is drawn per
// (element, bundle) pair that carries at least one routed relation.
inline Routing route_links(const RelationGraph& graph, const RelationshipViews& rel) {
  const auto& biclusters = graph.biclusters();
  std::map<std::pair<std::string, std::string>, std::size_t> owner;
  for (std::size_t k = 0; k < rel.bundles.size(); ++k) {
    const Bicluster& bc = biclusters[rel.bundles[k].bicluster];
    for (const auto& l : bc.left) {
      for (const auto& r : bc.right) {
        auto [it, fresh] = owner.emplace(std::pair(l, r), k);
        if (fresh) continue;
        const Bicluster& held = biclusters[rel.bundles[it->second].bicluster];
        if (bc.pair_count() > held.pair_count()) it->second = k;
      }
    }
  }

  Routing out;
  out.assignment.resize(graph.relations().size());
  std::vector<std::pair<std::set<std::string>, std::set<std::string>>> ends(rel.bundles.size());
  for (std::size_t i = 0; i < graph.relations().size(); ++i) {
    const auto& r = graph.relations()[i];
    auto it = owner.find({r.a, r.b});
    if (it == owner.end()) it = owner.find({r.b, r.a});
    if (it == owner.end()) {
      out.direct.push_back(i);
      continue;
    }
    out.assignment[i] = it->second;
    const Bicluster& bc = biclusters[rel.bundles[it->second].bicluster];
    const bool a_left = std::binary_search(bc.left.begin(), bc.left.end(), r.a) &&
                        std::binary_search(bc.right.begin(), bc.right.end(), r.b);
    ends[it->second].first.insert(a_left ? r.a : r.b);
    ends[it->second].second.insert(a_left ? r.b : r.a);
  }
  for (std::size_t k = 0; k < rel.bundles.size(); ++k) {
    for (const auto& e : ends[k].first) out.legs.push_back({e, rel.bundles[k].id});
    for (const auto& e : ends[k].second) out.legs.push_back({e, rel.bundles[k].id});
  }
  return out;
}

}  // namespace itrace
