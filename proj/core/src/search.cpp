#include "qcsp/search.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace qcsp {

VertexMask full_mask(int n) {
  if (n >= 64) return ~VertexMask{0};
  return (VertexMask{1} << n) - 1;
}

int popcount(VertexMask m) { return std::popcount(m); }

int lowest_vertex(VertexMask m) { return m == 0 ? 0 : std::countr_zero(m) + 1; }

std::vector<int> mask_vertices(VertexMask m) {
  std::vector<int> out;
  while (m != 0) {
    out.push_back(std::countr_zero(m) + 1);
    m &= m - 1;
  }
  return out;
}

VertexMask mask_of(std::span<const int> vertices) {
  VertexMask m = 0;
  for (int v : vertices) m |= vertex_bit(v);
  return m;
}

ConstraintNetwork::ConstraintNetwork(int variables, const Graph& target)
    : target_size_(target.size()),
      arcs_(static_cast<std::size_t>(variables)),
      self_edge_(static_cast<std::size_t>(variables), false) {
  if (target.size() > kMaxTargetVertices) {
    throw std::invalid_argument("target graphs are limited to " +
                                std::to_string(kMaxTargetVertices) + " vertices");
  }
  adjacency_.resize(static_cast<std::size_t>(target.size()));
  for (int t = 1; t <= target.size(); ++t) {
    adjacency_[static_cast<std::size_t>(t - 1)] = mask_of(target.neighbours(t));
    if (target.has_loop(t)) looped_ |= vertex_bit(t);
  }
}

void ConstraintNetwork::add_edge(int a, int b) {
  if (a == b) {
    self_edge_[static_cast<std::size_t>(a)] = true;
    return;
  }
  arcs_[static_cast<std::size_t>(a)].push_back({b, ArcKind::kEdge});
  arcs_[static_cast<std::size_t>(b)].push_back({a, ArcKind::kEdge});
}

void ConstraintNetwork::add_equal(int a, int b) {
  if (a == b) return;
  arcs_[static_cast<std::size_t>(a)].push_back({b, ArcKind::kEqual});
  arcs_[static_cast<std::size_t>(b)].push_back({a, ArcKind::kEqual});
}

VertexMask ConstraintNetwork::support(VertexMask m) const {
  VertexMask out = 0;
  while (m != 0) {
    out |= adjacency_[static_cast<std::size_t>(std::countr_zero(m))];
    m &= m - 1;
  }
  return out;
}

SearchEngine::SearchEngine(const ConstraintNetwork& network, std::vector<VertexMask> domains,
                           SearchOptions options)
    : network_(network),
      options_(std::move(options)),
      domains_(std::move(domains)),
      ranges_(domains_),
      played_(domains_.size(), false),
      queued_(domains_.size(), false) {
  const auto n = static_cast<std::size_t>(network_.variables());
  if (domains_.size() != n) throw std::invalid_argument("one domain per variable required");
  if (!options_.universal.empty() && options_.universal.size() != n) {
    throw std::invalid_argument("universal flags must cover every variable");
  }
  for (std::size_t v = 0; v < n; ++v) {
    domains_[v] &= network_.all();
    if (network_.self_edge(static_cast<int>(v))) domains_[v] &= network_.looped();
    if (domains_[v] == 0) consistent_ = false;
    queue_.push_back(static_cast<int>(v));
    queued_[v] = true;
  }
  if (consistent_) consistent_ = propagate();
}

bool SearchEngine::restrict(int var, VertexMask mask) {
  const auto i = static_cast<std::size_t>(var);
  const VertexMask narrowed = domains_[i] & mask;
  if (narrowed == domains_[i]) return true;
  trail_.emplace_back(var, domains_[i]);
  domains_[i] = narrowed;
  if (narrowed == 0) return false;
  if (!queued_[i]) {
    queued_[i] = true;
    queue_.push_back(var);
  }
  return true;
}

bool SearchEngine::propagate() {
  bool ok = true;
  while (ok && !queue_.empty()) {
    const int x = queue_.back();
    queue_.pop_back();
    queued_[static_cast<std::size_t>(x)] = false;
    const VertexMask dx = domain(x);
    const VertexMask edge_support = network_.support(dx);
    for (const Arc& arc : network_.arcs(x)) {
      const VertexMask allowed = arc.kind == ArcKind::kEdge ? edge_support : dx;
      if (!restrict(arc.other, allowed)) {
        ok = false;
        break;
      }
    }
  }
  for (int v : queue_) queued_[static_cast<std::size_t>(v)] = false;
  queue_.clear();
  return ok;
}

void SearchEngine::push() { levels_.push_back(trail_.size()); }

void SearchEngine::pop() {
  const std::size_t mark = levels_.back();
  levels_.pop_back();
  while (trail_.size() > mark) {
    auto [var, old] = trail_.back();
    trail_.pop_back();
    domains_[static_cast<std::size_t>(var)] = old;
  }
}

bool SearchEngine::fixed(int v) const { return popcount(domain(v)) == 1; }

bool SearchEngine::universals_intact() const {
  if (options_.universal.empty()) return true;
  for (std::size_t v = 0; v < domains_.size(); ++v) {
    if (options_.universal[v] && !played_[v] && domains_[v] != ranges_[v]) return false;
  }
  return true;
}

int SearchEngine::priority(int v) const {
  return options_.priority.empty() ? 0 : options_.priority[static_cast<std::size_t>(v)];
}

std::vector<int> SearchEngine::value_order(int var) const {
  std::vector<int> values = mask_vertices(domain(var));
  if (!options_.preferred.empty()) {
    const int p = options_.preferred[static_cast<std::size_t>(var)];
    if (auto it = std::find(values.begin(), values.end(), p); it != values.end()) {
      std::rotate(values.begin(), it, it + 1);
    }
  }
  return values;
}

std::vector<int> SearchEngine::open_variables() const {
  std::vector<int> out;
  for (int v = 0; v < network_.variables(); ++v) {
    if (!fixed(v)) out.push_back(v);
  }
  return out;
}

std::vector<std::vector<int>> SearchEngine::components(std::span<const int> vars) const {
  std::vector<std::vector<int>> out;
  if (!options_.decompose) {
    if (!vars.empty()) out.emplace_back(vars.begin(), vars.end());
    return out;
  }
  // 0 = not in vars, 1 = unvisited, 2 = visited
  std::vector<char> state(domains_.size(), 0);
  for (int v : vars) state[static_cast<std::size_t>(v)] = 1;
  for (int root : vars) {
    if (state[static_cast<std::size_t>(root)] != 1) continue;
    std::vector<int> comp{root};
    state[static_cast<std::size_t>(root)] = 2;
    for (std::size_t head = 0; head < comp.size(); ++head) {
      for (const Arc& arc : network_.arcs(comp[head])) {
        auto& s = state[static_cast<std::size_t>(arc.other)];
        if (s == 1) {
          s = 2;
          comp.push_back(arc.other);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return a.size() < b.size(); });
  return out;
}

int SearchEngine::choose(std::span<const int> vars) const {
  int best = -1;
  for (int v : vars) {
    if (fixed(v)) continue;
    if (best < 0) {
      best = v;
      continue;
    }
    const auto key = [&](int x) { return std::make_tuple(priority(x), popcount(domain(x)), x); };
    if (key(v) < key(best)) best = v;
  }
  return best;
}

std::vector<int> SearchEngine::solution() const {
  std::vector<int> out(domains_.size());
  for (std::size_t v = 0; v < domains_.size(); ++v) out[v] = lowest_vertex(domains_[v]);
  return out;
}

bool SearchEngine::solve_all(std::span<const int> vars) {
  std::vector<int> open;
  for (int v : vars)
    if (!fixed(v)) open.push_back(v);
  for (const auto& comp : components(open)) {
    if (!solve_component(comp)) return false;
  }
  return true;
}

bool SearchEngine::solve_component(std::span<const int> comp) {
  ++nodes_;
  const int x = choose(comp);
  if (x < 0) return true;
  for (int value : value_order(x)) {
    push();
    if (restrict(x, vertex_bit(value)) && propagate() && solve_all(comp)) {
      levels_.pop_back();  // keep the assignment
      return true;
    }
    pop();
  }
  return false;
}

std::optional<std::vector<int>> SearchEngine::find() {
  if (!consistent_) return std::nullopt;
  if (!options_.universal.empty() &&
      std::find(options_.universal.begin(), options_.universal.end(), true) !=
          options_.universal.end()) {
    throw std::logic_error("find() is existential; use decide() for universal variables");
  }
  const auto open = open_variables();
  push();
  if (!solve_all(open)) {
    pop();
    return std::nullopt;
  }
  levels_.pop_back();
  return solution();
}

std::string SearchEngine::memo_key(std::span<const int> comp) const {
  std::string key;
  key.reserve(comp.size() * 4 + 16);
  for (int v : comp) {
    key += std::to_string(v);
    key += ',';
  }
  key += '|';
  std::vector<std::pair<int, int>> frontier;
  std::vector<char> inside(domains_.size(), 0);
  for (int v : comp) inside[static_cast<std::size_t>(v)] = 1;
  for (int v : comp) {
    for (const Arc& arc : network_.arcs(v)) {
      if (!inside[static_cast<std::size_t>(arc.other)]) {
        frontier.emplace_back(arc.other, lowest_vertex(domain(arc.other)));
      }
    }
  }
  std::sort(frontier.begin(), frontier.end());
  frontier.erase(std::unique(frontier.begin(), frontier.end()), frontier.end());
  for (auto [var, value] : frontier) {
    key += std::to_string(var);
    key += '=';
    key += std::to_string(value);
    key += ',';
  }
  return key;
}

bool SearchEngine::decide_all(std::span<const int> vars) {
  std::vector<int> open;
  for (int v : vars)
    if (!fixed(v)) open.push_back(v);
  for (const auto& comp : components(open)) {
    if (!decide_component(comp)) return false;
  }
  return true;
}

bool SearchEngine::decide_component(std::span<const int> comp) {
  std::string key;
  if (options_.memo) {
    key = memo_key(comp);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  }
  ++nodes_;
  const int x = choose(comp);
  bool result = true;
  if (x >= 0) {
    const auto xi = static_cast<std::size_t>(x);
    const bool universal = !options_.universal.empty() && options_.universal[xi];
    result = universal;
    for (int value : universal ? mask_vertices(domain(x)) : value_order(x)) {
      push();
      played_[xi] = true;
      const bool ok = restrict(x, vertex_bit(value)) && propagate() && universals_intact() &&
                      decide_all(comp);
      played_[xi] = false;
      pop();
      if (universal && !ok) {
        result = false;
        break;
      }
      if (!universal && ok) {
        result = true;
        break;
      }
    }
  }
  if (options_.memo) memo_.emplace(std::move(key), result);
  return result;
}

bool SearchEngine::decide() {
  if (!consistent_ || !universals_intact()) return false;
  return decide_all(open_variables());
}

bool SearchEngine::surjective_possible() const {
  VertexMask covered = 0;
  VertexMask candidates = 0;
  int open = 0;
  for (VertexMask d : domains_) {
    if (popcount(d) == 1) {
      covered |= d;
    } else {
      candidates |= d;
      ++open;
    }
  }
  const VertexMask uncovered = network_.all() & ~covered;
  return (uncovered & ~candidates) == 0 && popcount(uncovered) <= open;
}

bool SearchEngine::surjective_search() {
  ++nodes_;
  if (!surjective_possible()) return false;
  const auto open = open_variables();
  const int x = choose(open);
  if (x < 0) return true;
  for (int value : value_order(x)) {
    push();
    if (restrict(x, vertex_bit(value)) && propagate() && surjective_search()) {
      levels_.pop_back();
      return true;
    }
    pop();
  }
  return false;
}

std::optional<std::vector<int>> SearchEngine::find_surjective() {
  if (!consistent_) return std::nullopt;
  push();
  if (!surjective_search()) {
    pop();
    return std::nullopt;
  }
  levels_.pop_back();
  return solution();
}

bool SearchEngine::enumerate_search(const std::function<bool(std::span<const int>)>& visitor) {
  ++nodes_;
  const auto open = open_variables();
  const int x = choose(open);
  if (x < 0) {
    const auto s = solution();
    return visitor(s);
  }
  for (int value : value_order(x)) {
    push();
    const bool stop = restrict(x, vertex_bit(value)) && propagate() && enumerate_search(visitor);
    pop();
    if (stop) return true;
  }
  return false;
}

bool SearchEngine::enumerate(const std::function<bool(std::span<const int>)>& visitor) {
  if (!consistent_) return false;
  return enumerate_search(visitor);
}

}  // namespace qcsp
