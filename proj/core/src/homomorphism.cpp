#include "qcsp/homomorphism.hpp"

#include <set>
#include <stdexcept>
#include <string>

namespace qcsp {

bool is_homomorphism(const Graph& source, const Graph& target, const std::vector<int>& image) {
  if (static_cast<int>(image.size()) != source.size()) return false;
  for (int img : image) {
    if (img < 1 || img > target.size()) return false;
  }
  for (auto [u, v] : source.edges()) {
    if (!target.has_edge(image[static_cast<std::size_t>(u - 1)],
                         image[static_cast<std::size_t>(v - 1)])) {
      return false;
    }
  }
  return true;
}

ConstraintNetwork network_from_graph(const Graph& source, const Graph& target) {
  ConstraintNetwork net(source.size(), target);
  for (auto [u, v] : source.edges()) net.add_edge(u - 1, v - 1);
  return net;
}

std::optional<Homomorphism> find_list_homomorphism(const Graph& source, const Graph& target,
                                                   std::vector<VertexMask> lists) {
  if (static_cast<int>(lists.size()) != source.size()) {
    throw std::invalid_argument("one list per source vertex required");
  }
  const ConstraintNetwork net = network_from_graph(source, target);
  SearchEngine engine(net, std::move(lists));
  if (auto s = engine.find()) return Homomorphism{std::move(*s)};
  return std::nullopt;
}

std::optional<Homomorphism> find_homomorphism(const Graph& source, const Graph& target,
                                              const Pins& pins) {
  std::vector<VertexMask> lists(static_cast<std::size_t>(source.size()), full_mask(target.size()));
  for (auto [s, t] : pins) {
    if (s < 1 || s > source.size() || t < 1 || t > target.size()) {
      throw std::invalid_argument("pin " + std::to_string(s) + "->" + std::to_string(t) +
                                  " out of range");
    }
    lists[static_cast<std::size_t>(s - 1)] = vertex_bit(t);
  }
  return find_list_homomorphism(source, target, std::move(lists));
}

std::optional<Homomorphism> find_surjective_homomorphism(const Graph& source,
                                                         const Graph& target) {
  if (target.size() > source.size()) return std::nullopt;
  const ConstraintNetwork net = network_from_graph(source, target);
  SearchOptions options;
  options.decompose = false;
  SearchEngine engine(net,
                      std::vector<VertexMask>(static_cast<std::size_t>(source.size()),
                                              full_mask(target.size())),
                      options);
  if (auto s = engine.find_surjective()) return Homomorphism{std::move(*s)};
  return std::nullopt;
}

bool retraction_exists(const Graph& g, const Pins& embedding, const Graph& h) {
  if (static_cast<int>(embedding.size()) != h.size()) {
    throw std::invalid_argument("embedding must map every vertex of the retract");
  }
  std::set<int> image;
  for (auto [hv, gv] : embedding) {
    if (hv < 1 || hv > h.size() || gv < 1 || gv > g.size()) {
      throw std::invalid_argument("embedding pair out of range");
    }
    if (!image.insert(gv).second) throw std::invalid_argument("embedding is not injective");
  }
  for (auto [a, b] : h.edges()) {
    if (!g.has_edge(embedding.at(a), embedding.at(b))) {
      throw std::invalid_argument("embedding does not carry edge " + std::to_string(a) + "-" +
                                  std::to_string(b));
    }
  }
  Pins inverse;
  for (auto [hv, gv] : embedding) inverse[gv] = hv;
  return find_homomorphism(g, h, inverse).has_value();
}

}  // namespace qcsp
