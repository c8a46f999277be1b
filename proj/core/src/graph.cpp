#include "qcsp/graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace qcsp {

ReflexivityWord::ReflexivityWord(std::string_view bits) : bits_(bits) {
  if (bits_.empty()) throw std::invalid_argument("reflexivity word must be nonempty");
  for (char c : bits_) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("reflexivity word may only contain 0 and 1: '" + bits_ + "'");
    }
  }
}

std::size_t ReflexivityWord::ones() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), '1'));
}

ReflexivityWord ReflexivityWord::rotated(std::size_t k) const {
  ReflexivityWord out = *this;
  if (!bits_.empty()) {
    std::rotate(out.bits_.begin(), out.bits_.begin() + static_cast<std::ptrdiff_t>(k % size()),
                out.bits_.end());
  }
  return out;
}

ReflexivityWord ReflexivityWord::reversed() const {
  ReflexivityWord out = *this;
  std::reverse(out.bits_.begin(), out.bits_.end());
  return out;
}

Graph::Graph(int vertices) {
  if (vertices < 0) throw std::invalid_argument("negative vertex count");
  adjacency_.resize(static_cast<std::size_t>(vertices));
}

int Graph::add_vertex() {
  adjacency_.emplace_back();
  return size();
}

void Graph::check_vertex(int v) const {
  if (v < 1 || v > size()) {
    throw std::invalid_argument("vertex " + std::to_string(v) + " outside 1.." +
                                std::to_string(size()));
  }
}

void Graph::add_edge(int u, int v) {
  check_vertex(u);
  check_vertex(v);
  auto insert = [](std::vector<int>& list, int x) {
    auto it = std::lower_bound(list.begin(), list.end(), x);
    if (it != list.end() && *it == x) return false;
    list.insert(it, x);
    return true;
  };
  if (insert(adjacency_[static_cast<std::size_t>(u - 1)], v)) {
    ++edge_count_;
    if (u != v) insert(adjacency_[static_cast<std::size_t>(v - 1)], u);
  }
}

bool Graph::has_edge(int u, int v) const {
  check_vertex(u);
  check_vertex(v);
  const auto& list = adjacency_[static_cast<std::size_t>(u - 1)];
  return std::binary_search(list.begin(), list.end(), v);
}

std::span<const int> Graph::neighbours(int v) const {
  check_vertex(v);
  return adjacency_[static_cast<std::size_t>(v - 1)];
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(edge_count_);
  for (int u = 1; u <= size(); ++u) {
    for (int v : neighbours(u)) {
      if (u <= v) out.emplace_back(u, v);
    }
  }
  return out;
}

void Graph::set_label(const std::string& name, int v) {
  check_vertex(v);
  if (auto it = labels_.find(name); it != labels_.end() && it->second != v) {
    throw std::invalid_argument("label '" + name + "' already names vertex " +
                                std::to_string(it->second));
  }
  for (const auto& [other, w] : labels_) {
    if (w == v && other != name) {
      throw std::invalid_argument("vertex " + std::to_string(v) + " already labelled '" + other +
                                  "'");
    }
  }
  labels_[name] = v;
}

std::optional<int> Graph::vertex(std::string_view label) const {
  if (auto it = labels_.find(label); it != labels_.end()) return it->second;
  return std::nullopt;
}

Graph make_path(const ReflexivityWord& word) {
  if (word.size() == 0) throw std::invalid_argument("path word must be nonempty");
  const int n = static_cast<int>(word.size());
  Graph g(n);
  for (int i = 1; i <= n; ++i) {
    if (word.loop(static_cast<std::size_t>(i))) g.add_loop(i);
    if (i < n) g.add_edge(i, i + 1);
  }
  return g;
}

Graph make_cycle(const ReflexivityWord& word) {
  if (word.size() < 3) throw std::invalid_argument("cycle word needs length >= 3");
  const int n = static_cast<int>(word.size());
  Graph g(n);
  for (int i = 1; i <= n; ++i) {
    if (word.loop(static_cast<std::size_t>(i))) g.add_loop(i);
    g.add_edge(i, i % n + 1);
  }
  return g;
}

Graph make_path(std::string_view word) { return make_path(ReflexivityWord(word)); }
Graph make_cycle(std::string_view word) { return make_cycle(ReflexivityWord(word)); }

Graph make_clique(int k) {
  Graph g(k);
  for (int u = 1; u <= k; ++u)
    for (int v = u + 1; v <= k; ++v) g.add_edge(u, v);
  return g;
}

Graph direct_product(const Graph& g, const Graph& h) {
  const int nh = h.size();
  Graph out(g.size() * nh);
  auto id = [nh](int a, int b) { return (a - 1) * nh + b; };
  for (int a = 1; a <= g.size(); ++a) {
    for (int c : g.neighbours(a)) {
      for (int b = 1; b <= nh; ++b) {
        for (int d : h.neighbours(b)) out.add_edge(id(a, b), id(c, d));
      }
    }
  }
  return out;
}

Graph power(const Graph& g, int k) {
  if (k < 1) throw std::invalid_argument("power exponent must be >= 1");
  Graph out = g;
  for (int i = 1; i < k; ++i) out = direct_product(out, g);
  return out;
}

ReflexivityWord cycle_normal_form(const ReflexivityWord& word) {
  if (word.size() < 3) throw std::invalid_argument("cycle word needs length >= 3");
  ReflexivityWord best = word;
  const ReflexivityWord mirror = word.reversed();
  for (std::size_t k = 0; k < word.size(); ++k) {
    best = std::min({best, word.rotated(k), mirror.rotated(k)});
  }
  return best;
}

LoopStructure loop_structure(const ReflexivityWord& word) {
  if (word.size() < 3) throw std::invalid_argument("cycle word needs length >= 3");
  LoopStructure out;
  out.e = static_cast<int>(word.ones());
  out.d = static_cast<int>(word.zeros());
  if (out.e == 0) {
    out.kind = LoopKind::kIrreflexive;
    return out;
  }
  if (out.d == 0) {
    out.kind = LoopKind::kReflexive;
    return out;
  }
  // Rotate so the word starts right after a loop: runs then never wrap.
  const std::string& s = word.str();
  const std::size_t n = s.size();
  std::size_t start = 0;
  while (s[start] != '1') ++start;
  std::vector<int> gaps;
  char previous = '1';
  int current_gap = 0;
  for (std::size_t i = 1; i <= n; ++i) {
    const char c = s[(start + i) % n];
    if (c == '0') {
      ++current_gap;
    } else {
      if (previous == '0') {
        gaps.push_back(current_gap);
        current_gap = 0;
      }
    }
    previous = c;
  }
  if (gaps.size() == 1) {
    out.kind = LoopKind::kSingleRun;
    return out;
  }
  out.kind = LoopKind::kDisconnected;
  DSpectrum spectrum;
  spectrum.gap_lengths = gaps;
  for (int gap : gaps) spectrum.entries.push_back((gap + 1) / 2);
  spectrum.max_entry = *std::max_element(spectrum.entries.begin(), spectrum.entries.end());
  for (std::size_t i = 0; i < gaps.size(); ++i) {
    if (spectrum.entries[i] == spectrum.max_entry) {
      ++spectrum.k;
      spectrum.g_plus = std::max(spectrum.g_plus, gaps[i]);
    }
  }
  out.spectrum = std::move(spectrum);
  return out;
}

std::string_view to_string(LoopKind kind) {
  switch (kind) {
    case LoopKind::kIrreflexive: return "irreflexive";
    case LoopKind::kReflexive: return "reflexive";
    case LoopKind::kSingleRun: return "single-run";
    case LoopKind::kDisconnected: return "disconnected";
  }
  return "unknown";
}

}  // namespace qcsp
