#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "itrace/errors.hpp"
#include "itrace/geometry.hpp"

namespace itrace {

enum class EntityType { person, location, organization, generic };
enum class ViewKind { map, barChart, nodeLinkGraph, relationshipView };

inline std::string_view to_string(EntityType t) {
  switch (t) {
    case EntityType::person: return "person";
    case EntityType::location: return "location";
    case EntityType::organization: return "organization";
    case EntityType::generic: return "generic";
  }
  return "generic";
}

inline std::string_view to_string(ViewKind k) {
  switch (k) {
    case ViewKind::map: return "map";
    case ViewKind::barChart: return "barChart";
    case ViewKind::nodeLinkGraph: return "nodeLinkGraph";
    case ViewKind::relationshipView: return "relationshipView";
  }
  return "map";
}

inline EntityType parse_entity_type(std::string_view s) {
  if (s == "person") return EntityType::person;
  if (s == "location") return EntityType::location;
  if (s == "organization") return EntityType::organization;
  if (s == "generic") return EntityType::generic;
  throw InvalidArgument("unknown entity type '" + std::string(s) + "'");
}

inline ViewKind parse_view_kind(std::string_view s) {
  if (s == "map") return ViewKind::map;
  if (s == "barChart") return ViewKind::barChart;
  if (s == "nodeLinkGraph") return ViewKind::nodeLinkGraph;
  if (s == "relationshipView") return ViewKind::relationshipView;
  throw InvalidArgument("unknown view kind '" + std::string(s) + "'");
}

struct View {
  std::string id;
  ViewKind kind = ViewKind::map;
  Rect rect;
};

struct Entity {
  std::string id;
  EntityType type = EntityType::generic;
  std::string label;
  Vec2 position;
  std::string view_id;
};

// Unordered 1:1 relation between elements of two different views.
struct IndividualRelation {
  std::string a;
  std::string b;
};

// Closed all-pairs-related block between two views. Both sides are kept
// sorted by id.
struct Bicluster {
  std::string left_view;
  std::string right_view;
  std::vector<std::string> left;
  std::vector<std::string> right;

  std::size_t pair_count() const { return left.size() * right.size(); }
  bool operator==(const Bicluster&) const = default;
};

struct BiclusterChain {
  std::size_t first = 0;   // index into RelationGraph::biclusters()
  std::size_t second = 0;
  std::vector<std::string> shared;
};

// ---------------------------------------------------------------------------
// Closed bicluster mining over a 0/1 matrix.

class BinaryMatrix {
 public:
  BinaryMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, boost::dynamic_bitset<>(cols)) {}

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  bool at(std::size_t r, std::size_t c) const { return rows_[r].test(c); }
  void set(std::size_t r, std::size_t c, bool v = true) { rows_[r].set(c, v); }
  const boost::dynamic_bitset<>& row(std::size_t r) const { return rows_[r]; }
  std::size_t count() const {
    std::size_t n = 0;
    for (const auto& r : rows_) n += r.count();
    return n;
  }

 private:
  std::size_t cols_;
  std::vector<boost::dynamic_bitset<>> rows_;
};

struct IndexBicluster {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;

  auto operator<=>(const IndexBicluster&) const = default;
};

namespace detail {

inline std::vector<std::size_t> bit_indices(const boost::dynamic_bitset<>& bits) {
  std::vector<std::size_t> out;
  out.reserve(bits.count());
  for (auto i = bits.find_first(); i != boost::dynamic_bitset<>::npos; i = bits.find_next(i)) out.push_back(i);
  return out;
}

// Prefix-preserving closure extension over columns (LCM style): every closed
// column set with row support >= min_rows is reached exactly once.
class ClosedMiner {
 public:
  ClosedMiner(const BinaryMatrix& m, std::size_t min_side) : m_(m), min_side_(min_side), col_rows_(m.cols()) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      col_rows_[c].resize(m.rows());
      for (std::size_t r = 0; r < m.rows(); ++r) col_rows_[c].set(r, m.at(r, c));
    }
  }

  std::vector<IndexBicluster> run() {
    out_.clear();
    boost::dynamic_bitset<> all(m_.rows());
    all.set();
    if (all.count() >= min_side_ && m_.rows() > 0) {
      const auto closed = closure(all);
      emit(all, closed);
      extend(closed, all, 0);
    }
    std::sort(out_.begin(), out_.end());
    return std::move(out_);
  }

 private:
  boost::dynamic_bitset<> closure(const boost::dynamic_bitset<>& rows) const {
    boost::dynamic_bitset<> cols(m_.cols());
    for (std::size_t c = 0; c < m_.cols(); ++c) cols.set(c, rows.is_subset_of(col_rows_[c]));
    return cols;
  }

  void emit(const boost::dynamic_bitset<>& rows, const boost::dynamic_bitset<>& cols) {
    if (cols.count() >= min_side_) out_.push_back({bit_indices(rows), bit_indices(cols)});
  }

  void extend(const boost::dynamic_bitset<>& cols, const boost::dynamic_bitset<>& rows, std::size_t from) {
    for (std::size_t e = from; e < m_.cols(); ++e) {
      if (cols.test(e)) continue;
      const auto support = rows & col_rows_[e];
      if (support.count() < min_side_) continue;
      const auto next = closure(support);
      bool prefix_kept = true;
      for (std::size_t c = 0; c < e && prefix_kept; ++c) prefix_kept = next.test(c) == cols.test(c);
      if (!prefix_kept) continue;
      emit(support, next);
      extend(next, support, e + 1);
    }
  }

  const BinaryMatrix& m_;
  std::size_t min_side_;
  std::vector<boost::dynamic_bitset<>> col_rows_;
  std::vector<IndexBicluster> out_;
};

}  // namespace detail

// All maximal all-ones submatrices with at least min_side rows and columns,
// sorted by (rows, cols).
inline std::vector<IndexBicluster> mine_closed_biclusters(const BinaryMatrix& m, std::size_t min_side = 2) {
  if (min_side == 0) min_side = 1;
  return detail::ClosedMiner(m, min_side).run();
}

// Shared middle set when b1's right view feeds b2's left view.
inline std::optional<std::vector<std::string>> chain_biclusters(const Bicluster& b1, const Bicluster& b2) {
  if (b1.right_view != b2.left_view) {
    throw InvalidArgument("cannot chain " + b1.left_view + "->" + b1.right_view + " with " + b2.left_view +
                          "->" + b2.right_view);
  }
  std::vector<std::string> shared;
  std::set_intersection(b1.right.begin(), b1.right.end(), b2.left.begin(), b2.left.end(),
                        std::back_inserter(shared));
  if (shared.empty()) return std::nullopt;
  return shared;
}

// ---------------------------------------------------------------------------

// Entities and relations of one dataset. Immutable once built; the
// biclusters of every adjacent data-view pair are mined on construction.
class RelationGraph {
 public:
  RelationGraph() = default;

  RelationGraph(std::vector<View> views, std::vector<Entity> entities, std::vector<IndividualRelation> relations)
      : views_(std::move(views)), entities_(std::move(entities)), relations_(std::move(relations)) {
    for (std::size_t i = 0; i < views_.size(); ++i) {
      if (!view_index_.emplace(views_[i].id, i).second) throw InvalidArgument("duplicate view id " + views_[i].id);
      if (views_[i].rect.w < 0 || views_[i].rect.h < 0) throw InvalidArgument("negative view size " + views_[i].id);
      for (std::size_t j = 0; j < i; ++j) {
        if (overlaps(views_[i].rect, views_[j].rect)) {
          throw InvalidArgument("views " + views_[j].id + " and " + views_[i].id + " overlap");
        }
      }
    }
    for (std::size_t i = 0; i < entities_.size(); ++i) {
      const Entity& e = entities_[i];
      if (!entity_index_.emplace(e.id, i).second) throw InvalidArgument("duplicate entity id " + e.id);
      const View& v = view(e.view_id);
      if (v.kind == ViewKind::relationshipView) throw InvalidArgument("entity " + e.id + " in a relationship view");
      if (!v.rect.contains(e.position)) throw InvalidArgument("entity " + e.id + " lies outside view " + v.id);
      adjacency_[e.id];
    }
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto& r : relations_) {
      const Entity& a = entity(r.a);
      const Entity& b = entity(r.b);
      if (a.view_id == b.view_id) throw InvalidArgument("relation " + r.a + "-" + r.b + " within one view");
      if (!seen.emplace(std::min(r.a, r.b), std::max(r.a, r.b)).second) {
        throw InvalidArgument("duplicate relation " + r.a + "-" + r.b);
      }
      adjacency_[r.a].insert(r.b);
      adjacency_[r.b].insert(r.a);
    }

    const auto data = data_views();
    for (std::size_t i = 0; i + 1 < data.size(); ++i) {
      auto mined = mine_biclusters(data[i]->id, data[i + 1]->id);
      biclusters_.insert(biclusters_.end(), mined.begin(), mined.end());
    }
    for (std::size_t i = 0; i < biclusters_.size(); ++i) {
      for (std::size_t j = 0; j < biclusters_.size(); ++j) {
        if (biclusters_[i].right_view != biclusters_[j].left_view) continue;
        if (auto shared = chain_biclusters(biclusters_[i], biclusters_[j])) {
          chains_.push_back({i, j, std::move(*shared)});
        }
      }
    }
  }

  const std::vector<View>& views() const { return views_; }
  const std::vector<Entity>& entities() const { return entities_; }
  const std::vector<IndividualRelation>& relations() const { return relations_; }
  const std::vector<Bicluster>& biclusters() const { return biclusters_; }
  const std::vector<BiclusterChain>& chains() const { return chains_; }

  bool has_entity(const std::string& id) const { return entity_index_.contains(id); }

  const Entity& entity(const std::string& id) const {
    const auto it = entity_index_.find(id);
    if (it == entity_index_.end()) throw NotFound("entity " + id);
    return entities_[it->second];
  }

  const View& view(const std::string& id) const {
    const auto it = view_index_.find(id);
    if (it == view_index_.end()) throw NotFound("view " + id);
    return views_[it->second];
  }

  bool related(const std::string& a, const std::string& b) const { return neighbours(a).contains(b); }

  const std::set<std::string>& neighbours(const std::string& id) const {
    const auto it = adjacency_.find(id);
    if (it == adjacency_.end()) throw NotFound("entity " + id);
    return it->second;
  }

  // Individually related entities, grouped by owning view.
  std::map<std::string, std::vector<std::string>> related_elements(const std::string& id) const {
    std::map<std::string, std::vector<std::string>> out;
    for (const auto& other : neighbours(id)) out[entity(other).view_id].push_back(other);
    return out;
  }

  // Data views (everything but relationship views) ordered left to right.
  std::vector<const View*> data_views() const {
    std::vector<const View*> out;
    for (const auto& v : views_) {
      if (v.kind != ViewKind::relationshipView) out.push_back(&v);
    }
    std::sort(out.begin(), out.end(), [](const View* a, const View* b) {
      return std::pair(a->rect.x, a->id) < std::pair(b->rect.x, b->id);
    });
    return out;
  }

  std::vector<std::string> entities_in(const std::string& view_id) const {
    std::vector<std::string> out;
    for (const auto& e : entities_) {
      if (e.view_id == view_id) out.push_back(e.id);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::vector<Bicluster> mine_biclusters(const std::string& left_view, const std::string& right_view,
                                         std::size_t min_side = 2) const {
    if (left_view == right_view) throw InvalidArgument("bicluster views must differ");
    view(left_view);
    view(right_view);
    const auto left = entities_in(left_view);
    const auto right = entities_in(right_view);
    BinaryMatrix m(left.size(), right.size());
    for (std::size_t r = 0; r < left.size(); ++r) {
      const auto& adj = neighbours(left[r]);
      for (std::size_t c = 0; c < right.size(); ++c) m.set(r, c, adj.contains(right[c]));
    }
    std::vector<Bicluster> out;
    for (const auto& b : mine_closed_biclusters(m, min_side)) {
      Bicluster bc{left_view, right_view, {}, {}};
      for (auto r : b.rows) bc.left.push_back(left[r]);
      for (auto c : b.cols) bc.right.push_back(right[c]);
      out.push_back(std::move(bc));
    }
    return out;
  }

 private:
  std::vector<View> views_;
  std::vector<Entity> entities_;
  std::vector<IndividualRelation> relations_;
  std::map<std::string, std::size_t> view_index_;
  std::map<std::string, std::size_t> entity_index_;
  std::map<std::string, std::set<std::string>> adjacency_;
  std::vector<Bicluster> biclusters_;
  std::vector<BiclusterChain> chains_;
};

}  // namespace itrace
