#include <catch_amalgamated.hpp>

#include <map>

#include "itrace/generator.hpp"

using namespace itrace;

TEST_CASE("same seed gives a byte-identical document", "[generator]") {
  GenSpec spec;
  spec.seed = 42;
  spec.bundling = true;
  const auto a = generate(spec);
  const auto b = generate(spec);
  CHECK(a.document.dump() == b.document.dump());
  CHECK(generation_meta(spec, a.meta).dump() == generation_meta(spec, b.meta).dump());
  spec.seed = 43;
  CHECK(generate(spec).document.dump() != a.document.dump());
}

TEST_CASE("relation counts per view pair follow the density", "[generator]") {
  for (Density d : {Density::low, Density::high}) {
    GenSpec spec;
    spec.seed = 8;
    spec.density = d;
    const auto gen = generate(spec);
    const auto& g = gen.dataset.graph;
    CHECK(g.entities().size() == 150);
    std::map<std::pair<std::string, std::string>, std::size_t> per_pair;
    for (const auto& r : g.relations()) ++per_pair[{g.entity(r.a).view_id, g.entity(r.b).view_id}];
    const std::size_t want = d == Density::low ? 250 : 500;
    CHECK(per_pair.size() == 2);
    CHECK(per_pair[{"map", "bar"}] == want);
    CHECK(per_pair[{"bar", "graph"}] == want);
    CHECK(gen.meta.relations_per_pair == want);
  }
}

TEST_CASE("bi-group count lands in the band", "[generator]") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    for (Density d : {Density::low, Density::high}) {
      GenSpec spec;
      spec.seed = seed;
      spec.density = d;
      const auto gen = generate(spec);
      const auto n = gen.dataset.graph.biclusters().size();
      CHECK(n >= 8);
      CHECK(n <= 16);
      CHECK(gen.meta.bicluster_count == n);
    }
  }
}

TEST_CASE("entities sit inside their views with a margin", "[generator]") {
  GenSpec spec;
  spec.seed = 19;
  const auto gen = generate(spec);
  const auto& g = gen.dataset.graph;
  for (const auto& e : g.entities()) {
    CHECK(g.view(e.view_id).rect.contains_with_margin(e.position, spec.margin));
    const char* prefix = e.type == EntityType::location ? "loc-" : e.type == EntityType::organization ? "org-" : "per-";
    CHECK(e.id.starts_with(prefix));
  }
  CHECK(g.entity("loc-00").label.find('(') != std::string::npos);
}

TEST_CASE("bundled documents declare the relationship views", "[generator]") {
  GenSpec spec;
  spec.seed = 6;
  spec.bundling = true;
  const auto gen = generate(spec);
  CHECK(gen.document.at("bundling") == true);
  std::size_t rel = 0;
  for (const auto& v : gen.dataset.graph.views()) rel += v.kind == ViewKind::relationshipView ? 1 : 0;
  CHECK(rel == 2);
  spec.bundling = false;
  CHECK_FALSE(generate(spec).document.contains("bundling"));
}

TEST_CASE("bands the generator cannot meet are rejected", "[generator]") {
  GenSpec spec;
  spec.density = Density::high;
  spec.band_min = 12;
  spec.band_max = 16;
  CHECK_THROWS_AS(generate(spec), GenerationFailed);

  spec.density = Density::low;
  spec.max_attempts = 0;
  CHECK_THROWS_AS(generate(spec), GenerationFailed);

  spec.band_min = 3;
  spec.band_max = 3;
  CHECK_THROWS_AS(generate(spec), InvalidArgument);
  CHECK_THROWS_AS(parse_density("medium"), InvalidArgument);
}
