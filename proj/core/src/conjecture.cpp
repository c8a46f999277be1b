#include <algorithm>
#include <mutex>
#include <set>

#include "qcsp/errors.hpp"
#include "qcsp/reductions.hpp"
#include "parallel.hpp"

namespace qcsp {

namespace {

// All maps 1..m -> 1..m that are homomorphisms of the labelled copy.
std::vector<std::vector<int>> labelled_maps(const Graph& gadget, const Graph& target, int m) {
  std::vector<int> label(static_cast<std::size_t>(m));
  for (int k = 1; k <= m; ++k) label[k - 1] = *gadget.vertex(std::to_string(k));
  std::vector<std::vector<int>> out;
  std::vector<int> f;
  auto rec = [&](auto& self) -> void {
    const auto k = f.size();
    if (k == static_cast<std::size_t>(m)) {
      out.push_back(f);
      return;
    }
    for (int t = 1; t <= m; ++t) {
      bool ok = true;
      for (std::size_t a = 0; a <= k && ok; ++a) {
        const int img = a == k ? t : f[a];
        if (gadget.has_edge(label[a], label[k]) && !target.has_edge(img, t)) ok = false;
      }
      if (!ok) continue;
      f.push_back(t);
      self(self);
      f.pop_back();
    }
  };
  rec(rec);
  return out;
}

bool surjective(const std::vector<int>& f) { return std::set<int>(f.begin(), f.end()).size() == f.size(); }

Pins pins_for(const Graph& gadget, const ConjectureCase& c) {
  Pins pins;
  for (std::size_t k = 0; k < c.f.size(); ++k) pins[*gadget.vertex(std::to_string(k + 1))] = c.f[k];
  pins[*gadget.vertex("x")] = c.i;
  pins[*gadget.vertex("y")] = c.j;
  return pins;
}

}  // namespace

ConjectureReport check_conjecture_gen(int m, bool allow_large, unsigned threads) {
  if (m < 4) throw std::invalid_argument("conjecture needs m >= 4");
  if (m > 5 && !allow_large) throw GuardError("conjecture check beyond m = 5 needs allow_large");
  const Graph gadget = edge_gadget(m);
  const Graph target = make_cycle(std::string(static_cast<std::size_t>(m), '1'));
  std::vector<std::vector<int>> maps;
  for (auto& f : labelled_maps(gadget, target, m))
    if (!surjective(f)) maps.push_back(std::move(f));

  ConjectureReport report;
  report.m = m;
  report.maps = maps.size();
  report.cases = maps.size() * static_cast<std::uint64_t>(m) * static_cast<std::uint64_t>(m);
  std::mutex mu;
  detail::parallel_for(maps.size(), threads, [&](std::size_t idx) {
    for (int i = 1; i <= m; ++i) {
      for (int j = 1; j <= m; ++j) {
        ConjectureCase c{maps[idx], i, j};
        if (find_homomorphism(gadget, target, pins_for(gadget, c))) continue;
        const std::lock_guard lock(mu);
        report.counterexamples.push_back(std::move(c));
      }
    }
  });
  std::sort(report.counterexamples.begin(), report.counterexamples.end(), [](const auto& a, const auto& b) {
    return std::tie(a.f, a.i, a.j) < std::tie(b.f, b.i, b.j);
  });
  report.holds = report.counterexamples.empty();
  return report;
}

bool replays(int m, const ConjectureCase& c) {
  const Graph gadget = edge_gadget(m);
  const Graph target = make_cycle(std::string(static_cast<std::size_t>(m), '1'));
  if (c.f.size() != static_cast<std::size_t>(m) || surjective(c.f)) return false;
  if (c.i < 1 || c.i > m || c.j < 1 || c.j > m) return false;
  for (int a = 1; a <= m; ++a)
    for (int b = 1; b <= m; ++b)
      if (gadget.has_edge(*gadget.vertex(std::to_string(a)), *gadget.vertex(std::to_string(b))) &&
          !target.has_edge(c.f[a - 1], c.f[b - 1]))
        return false;
  return !find_homomorphism(gadget, target, pins_for(gadget, c)).has_value();
}

}  // namespace qcsp
