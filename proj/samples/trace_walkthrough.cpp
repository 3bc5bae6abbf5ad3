// Generates a small study dataset, enables a focus marker on a map location
// and walks it along its links, printing what a renderer would show.

#include <cstdio>

#include "itrace/itrace.hpp"

int main() {
  itrace::GenSpec spec;
  spec.seed = 7;
  const auto generated = itrace::generate(spec);
  std::printf("%zu entities, %zu relations, %zu bi-groups\n", generated.dataset.graph.entities().size(),
              generated.dataset.graph.relations().size(), generated.dataset.graph.biclusters().size());

  auto scene = std::make_shared<const itrace::Scene>(generated.dataset);
  itrace::TraceSession session(scene);
  session.set_transparency(itrace::TransparencyMode::fadeUnrelated);

  const std::string start = "loc-00";
  const int marker = session.toggle_focus_marker(start).marker;
  const auto& links = scene->links_of(start);
  if (links.empty()) {
    std::printf("%s has no links\n", start.c_str());
    return 0;
  }
  const auto& path = session.link_path(links.front(), start);
  for (double p : {0.25, 0.5, 1.0}) {
    session.drag_marker(marker, path.point_at_length(p * path.total_length()));
    const auto& m = session.marker(marker);
    std::printf("proportion %.2f on link %zu, %zu supportive foci\n", m.proportion, *m.active_link,
                session.supportive_foci(marker).size());
  }
  // Back inside the map view, copies of the related organizations stop at its border.
  session.drag_marker(marker, path.point_at_length(0.1 * path.total_length()));
  session.attract_copies(marker, itrace::StopMode::viewBorder);
  for (const auto& c : session.copies()) {
    std::printf("copy of %s (%s) at (%.1f, %.1f)\n", c.source.c_str(), session.hover(c.id).label.c_str(),
                c.position.x, c.position.y);
  }
  return 0;
}
