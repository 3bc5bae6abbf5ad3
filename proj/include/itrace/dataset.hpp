#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "itrace/errors.hpp"
#include "itrace/format.hpp"
#include "itrace/relation_model.hpp"

namespace itrace {

// A loaded dataset document plus the rendering flag that travels with it.
struct Dataset {
  RelationGraph graph;
  bool bundling = false;
};

namespace detail {

inline const Json& require(const Json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) throw InvalidArgument(std::string("dataset: missing field '") + key + "'");
  return obj.at(key);
}

}  // namespace detail

// Parses {views:[{id,kind,rect}], entities:[{id,type,label,view,pos}],
// relations:[[a,b],...], bundling?}.
inline Dataset parse_dataset(const Json& doc) {
  std::vector<View> views;
  std::vector<Entity> entities;
  std::vector<IndividualRelation> relations;
  try {
    for (const auto& v : detail::require(doc, "views")) {
      const auto& r = detail::require(v, "rect");
      if (!r.is_array() || r.size() != 4) throw InvalidArgument("dataset: view rect must be [x,y,w,h]");
      views.push_back({detail::require(v, "id").get<std::string>(),
                       parse_view_kind(detail::require(v, "kind").get<std::string>()),
                       {r[0].get<double>(), r[1].get<double>(), r[2].get<double>(), r[3].get<double>()}});
    }
    for (const auto& e : detail::require(doc, "entities")) {
      const auto& p = detail::require(e, "pos");
      if (!p.is_array() || p.size() != 2) throw InvalidArgument("dataset: entity pos must be [x,y]");
      entities.push_back({detail::require(e, "id").get<std::string>(),
                          parse_entity_type(detail::require(e, "type").get<std::string>()),
                          e.value("label", std::string{}),
                          {p[0].get<double>(), p[1].get<double>()},
                          detail::require(e, "view").get<std::string>()});
    }
    for (const auto& r : detail::require(doc, "relations")) {
      if (!r.is_array() || r.size() != 2) throw InvalidArgument("dataset: relation must be [idA,idB]");
      relations.push_back({r[0].get<std::string>(), r[1].get<std::string>()});
    }
  } catch (const nlohmann::json::exception& ex) {
    throw InvalidArgument(std::string("dataset: ") + ex.what());
  }
  Dataset out{RelationGraph(std::move(views), std::move(entities), std::move(relations)), false};
  out.bundling = doc.value("bundling", false);
  return out;
}

inline Dataset read_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw NotFound("dataset file " + path);
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const nlohmann::json::parse_error& ex) {
    throw InvalidArgument("dataset " + path + ": " + ex.what());
  }
  return parse_dataset(doc);
}

inline Json dataset_document(const RelationGraph& graph, bool bundling) {
  Json doc = Json::object();
  Json views = Json::array();
  for (const auto& v : graph.views()) {
    views.push_back({{"id", v.id},
                     {"kind", to_string(v.kind)},
                     {"rect", Json::array({normalized(v.rect.x), normalized(v.rect.y), normalized(v.rect.w),
                                           normalized(v.rect.h)})}});
  }
  Json entities = Json::array();
  for (const auto& e : graph.entities()) {
    entities.push_back({{"id", e.id},
                        {"type", to_string(e.type)},
                        {"label", e.label},
                        {"view", e.view_id},
                        {"pos", point_json(e.position)}});
  }
  Json relations = Json::array();
  for (const auto& r : graph.relations()) relations.push_back(Json::array({r.a, r.b}));
  doc["views"] = std::move(views);
  doc["entities"] = std::move(entities);
  doc["relations"] = std::move(relations);
  if (bundling) doc["bundling"] = true;
  return doc;
}

}  // namespace itrace
