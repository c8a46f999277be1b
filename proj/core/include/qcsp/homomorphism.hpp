#pragma once

#include <map>
#include <optional>
#include <vector>

#include "qcsp/graph.hpp"
#include "qcsp/search.hpp"

namespace qcsp {

// A total map source -> target; image[v - 1] is the image of vertex v.
struct Homomorphism {
  std::vector<int> image;

  [[nodiscard]] int operator()(int v) const { return image.at(static_cast<std::size_t>(v - 1)); }
  friend bool operator==(const Homomorphism&, const Homomorphism&) = default;
};

// Source vertex -> required target vertex.
using Pins = std::map<int, int>;

// Exhaustive edge scan.
bool is_homomorphism(const Graph& source, const Graph& target, const std::vector<int>& image);

// Complete backtracking search with arc consistency. Variables are chosen
// smallest-domain first, values in ascending order, so witnesses are
// reproducible.
std::optional<Homomorphism> find_homomorphism(const Graph& source, const Graph& target,
                                              const Pins& pins = {});

// As find_homomorphism, with an allowed-image list per source vertex.
std::optional<Homomorphism> find_list_homomorphism(const Graph& source, const Graph& target,
                                                   std::vector<VertexMask> lists);

std::optional<Homomorphism> find_surjective_homomorphism(const Graph& source,
                                                         const Graph& target);

// Does g retract onto the copy of h given by embedding (h vertex -> g vertex)?
// Throws std::invalid_argument unless the embedding is total, injective and
// carries every edge of h to an edge of g.
bool retraction_exists(const Graph& g, const Pins& embedding, const Graph& h);

ConstraintNetwork network_from_graph(const Graph& source, const Graph& target);

}  // namespace qcsp
