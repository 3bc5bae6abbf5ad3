#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "itrace/bundling.hpp"
#include "itrace/dataset.hpp"
#include "itrace/errors.hpp"
#include "itrace/wordlists.hpp"

namespace itrace {

enum class Density { low, high };

inline std::string_view to_string(Density d) { return d == Density::low ? "low" : "high"; }

inline Density parse_density(std::string_view s) {
  if (s == "low") return Density::low;
  if (s == "high") return Density::high;
  throw InvalidArgument("unknown density '" + std::string(s) + "'");
}

struct GenSpec {
  std::uint64_t seed = 1;
  std::size_t entities_per_type = 50;
  Density density = Density::low;
  bool bundling = false;
  Rect map_rect{20, 20, 400, 560};
  Rect bar_rect{620, 20, 400, 560};
  Rect graph_rect{1220, 20, 400, 560};
  std::size_t band_min = 8;   // total bi-groups per dataset
  std::size_t band_max = 16;
  std::size_t max_attempts = 100;
  double margin = 10.0;

  int density_percent() const { return density == Density::low ? 10 : 20; }
};

struct GenMeta {
  std::size_t bicluster_count = 0;
  std::size_t retry_count = 0;
  std::size_t relations_per_pair = 0;
};

struct Generated {
  Dataset dataset;
  Json document;
  GenMeta meta;
};

namespace detail {

// Portable draws on top of mt19937_64: the standard distributions are
// implementation-defined, which would break byte-identical regeneration.
class Draw {
 public:
  explicit Draw(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  std::size_t between(std::size_t lo, std::size_t hi) { return lo + static_cast<std::size_t>(below(hi - lo + 1)); }

  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[static_cast<std::size_t>(below(i))]);
  }

 private:
  std::mt19937_64 engine_;
};

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t attempt) {
  std::uint64_t z = seed * 0x9E3779B97F4A7C15ULL + attempt + 0xD1B54A32D192ED03ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Fraction of the target ones placed inside planted blocks. Dense matrices
// need most ones inside blocks: stray ones are limited by the no-extra-group
// rule below.
struct BlockShare {
  double lo = 0.0, hi = 0.0;
};

inline BlockShare block_share(Density d) { return d == Density::low ? BlockShare{0.25, 0.4} : BlockShare{0.8, 0.95}; }

// Largest block count whose blocks can still hold share.lo of the target
// while leaving two free rows and columns.
inline std::size_t max_blocks(std::size_t n, std::size_t target, Density d) {
  const double free = static_cast<double>(n) - 2.0;
  return static_cast<std::size_t>(free * free / (block_share(d).lo * static_cast<double>(target)));
}

// A 0/1 matrix with exactly `target` ones whose closed biclusters (both
// sides >= 2) are exactly `blocks` planted all-ones blocks. Remaining ones
// are added only when no two rows end up sharing two columns outside a
// planted block. Returns false when the fill stalls.
inline bool plant_matrix(Draw& draw, std::size_t n, std::size_t target, std::size_t blocks, Density density,
                         BinaryMatrix& out) {
  const BlockShare share = block_share(density);
  const double mid = 0.5 * (share.lo + share.hi);
  const double side = std::sqrt(mid * static_cast<double>(target) / static_cast<double>(blocks));
  const std::size_t lo = std::max<std::size_t>(2, static_cast<std::size_t>(side) - 1);
  const std::size_t hi = std::max<std::size_t>(lo, static_cast<std::size_t>(side) + 1);

  std::vector<std::pair<std::size_t, std::size_t>> sides;
  std::size_t area = 0;
  bool fits = false;
  for (int tries = 0; tries < 64 && !fits; ++tries) {
    sides.clear();
    std::size_t row_sum = 0, col_sum = 0;
    area = 0;
    for (std::size_t b = 0; b < blocks; ++b) {
      sides.emplace_back(draw.between(lo, hi), draw.between(lo, hi));
      row_sum += sides.back().first;
      col_sum += sides.back().second;
      area += sides.back().first * sides.back().second;
    }
    const auto a = static_cast<double>(area), t = static_cast<double>(target);
    fits = row_sum <= n && col_sum <= n && a >= share.lo * t && a <= share.hi * t;
  }
  if (!fits) return false;

  std::vector<std::size_t> rows(n), cols(n);
  for (std::size_t i = 0; i < n; ++i) rows[i] = cols[i] = i;
  draw.shuffle(rows);
  draw.shuffle(cols);

  BinaryMatrix m(n, n);
  std::vector<long> block_of(n, -1);
  std::vector<boost::dynamic_bitset<>> col_rows(n, boost::dynamic_bitset<>(n));
  std::size_t ri = 0, ci = 0;
  for (std::size_t b = 0; b < blocks; ++b) {
    for (std::size_t i = 0; i < sides[b].first; ++i) {
      const std::size_t r = rows[ri + i];
      block_of[r] = static_cast<long>(b);
      for (std::size_t j = 0; j < sides[b].second; ++j) {
        m.set(r, cols[ci + j]);
        col_rows[cols[ci + j]].set(r);
      }
    }
    ri += sides[b].first;
    ci += sides[b].second;
  }

  std::vector<std::pair<std::size_t, std::size_t>> cells;
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      if (!m.at(r, c)) cells.emplace_back(r, c);
    }
  }
  draw.shuffle(cells);
  std::size_t ones = area;
  for (const auto& [r, c] : cells) {
    if (ones >= target) break;
    bool ok = true;
    for (auto r2 = col_rows[c].find_first(); ok && r2 != boost::dynamic_bitset<>::npos; r2 = col_rows[c].find_next(r2)) {
      if (block_of[r] >= 0 && block_of[r] == block_of[r2]) ok = false;
      else if (m.row(r).intersects(m.row(r2))) ok = false;
    }
    if (!ok) continue;
    m.set(r, c);
    col_rows[c].set(r);
    ++ones;
  }
  if (ones != target) return false;
  out = std::move(m);
  return true;
}

inline std::string padded_id(const char* prefix, std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s-%02zu", prefix, i);
  return buf;
}

template <std::size_t N>
std::string pick_label(const std::array<std::string_view, N>& list, std::size_t i) {
  std::string label(list[i % N]);
  if (i >= N) label += " #" + std::to_string(i / N + 1);
  return label;
}

}  // namespace detail

// Synthetic study dataset: three entity types in a map, a bar chart and a
// node-link graph, with an exact relation count per adjacent view pair and a
// bounded number of mined bi-groups.
inline Generated generate(const GenSpec& spec) {
  const std::size_t n = spec.entities_per_type;
  if (n < 2) throw InvalidArgument("need at least two entities per type");
  if ((n * n * static_cast<std::size_t>(spec.density_percent())) % 100 != 0) {
    throw InvalidArgument("density does not give an integral relation count");
  }
  const std::size_t per_pair = n * n * static_cast<std::size_t>(spec.density_percent()) / 100;
  constexpr std::size_t kPairs = 2;
  const std::size_t k_lo = (spec.band_min + kPairs - 1) / kPairs;
  const std::size_t k_band = spec.band_max / kPairs;
  if (k_lo == 0 || k_lo > k_band) throw InvalidArgument("bi-group band cannot be split over two view pairs");
  const std::size_t k_hi = std::min(k_band, detail::max_blocks(n, per_pair, spec.density));
  if (k_lo > k_hi) {
    throw GenerationFailed("density " + std::string(to_string(spec.density)) + " supports at most " +
                           std::to_string(k_hi * kPairs) + " bi-groups, band starts at " + std::to_string(spec.band_min));
  }

  std::size_t last_count = 0;
  for (std::size_t attempt = 0; attempt < spec.max_attempts; ++attempt) {
    detail::Draw draw(detail::mix_seed(spec.seed, attempt));

    std::vector<Entity> entities;
    for (std::size_t i = 0; i < n; ++i) {
      const Rect& r = spec.map_rect;
      entities.push_back({detail::padded_id("loc", i), EntityType::location, detail::pick_label(words::kLocations, i),
                          {r.x + spec.margin + draw.unit() * (r.w - 2 * spec.margin),
                           r.y + spec.margin + draw.unit() * (r.h - 2 * spec.margin)},
                          "map"});
    }
    for (std::size_t i = 0; i < n; ++i) {
      const Rect& r = spec.bar_rect;
      const double band = (r.h - 2 * spec.margin) / static_cast<double>(n);
      entities.push_back({detail::padded_id("org", i), EntityType::organization,
                          detail::pick_label(words::kOrganizations, i),
                          {r.center().x, r.y + spec.margin + (static_cast<double>(i) + 0.5) * band}, "bar"});
    }
    for (std::size_t i = 0; i < n; ++i) {
      const Rect& r = spec.graph_rect;
      entities.push_back({detail::padded_id("per", i), EntityType::person, detail::pick_label(words::kFamilies, i),
                          {r.x + spec.margin + draw.unit() * (r.w - 2 * spec.margin),
                           r.y + spec.margin + draw.unit() * (r.h - 2 * spec.margin)},
                          "graph"});
    }

    std::vector<IndividualRelation> relations;
    bool planted = true;
    const char* prefixes[3] = {"loc", "org", "per"};
    for (std::size_t p = 0; p < kPairs && planted; ++p) {
      const std::size_t blocks = draw.between(k_lo, k_hi);
      BinaryMatrix m(n, n);
      planted = detail::plant_matrix(draw, n, per_pair, blocks, spec.density, m);
      for (std::size_t r = 0; planted && r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
          if (m.at(r, c)) relations.push_back({detail::padded_id(prefixes[p], r), detail::padded_id(prefixes[p + 1], c)});
        }
      }
    }
    if (!planted) continue;

    std::vector<View> views = {{"map", ViewKind::map, spec.map_rect},
                               {"bar", ViewKind::barChart, spec.bar_rect},
                               {"graph", ViewKind::nodeLinkGraph, spec.graph_rect}};
    const RelationGraph draft(std::move(views), std::move(entities), std::move(relations));
    RelationGraph with_rel = draft;
    if (spec.bundling) {
      auto all_views = draft.views();
      for (auto& v : build_relationship_views(draft).views) all_views.push_back(std::move(v));
      with_rel = RelationGraph(std::move(all_views), draft.entities(), draft.relations());
    }
    Json doc = dataset_document(with_rel, spec.bundling);
    Dataset ds = parse_dataset(doc);
    last_count = ds.graph.biclusters().size();
    if (last_count < spec.band_min || last_count > spec.band_max) continue;
    return {std::move(ds), std::move(doc), {last_count, attempt, per_pair}};
  }
  throw GenerationFailed("no dataset within bi-group band [" + std::to_string(spec.band_min) + "," +
                         std::to_string(spec.band_max) + "] after " + std::to_string(spec.max_attempts) +
                         " attempts (last bi-group count " + std::to_string(last_count) + ")");
}

inline Json generation_meta(const GenSpec& spec, const GenMeta& meta) {
  return {{"seed", spec.seed},
          {"density", to_string(spec.density)},
          {"bundling", spec.bundling},
          {"entitiesPerType", spec.entities_per_type},
          {"relationsPerPair", meta.relations_per_pair},
          {"biclusterCount", meta.bicluster_count},
          {"retryCount", meta.retry_count}};
}

}  // namespace itrace
