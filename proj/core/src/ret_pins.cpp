#include <algorithm>
#include <functional>
#include <set>

#include "qcsp/reductions.hpp"

namespace qcsp {

namespace {

class PinSearch {
 public:
  PinSearch(const ReflexivityWord& word, int max_steps) : word_(word.str()), m_(static_cast<int>(word.size())) {
    adj_.assign(static_cast<std::size_t>(m_), {});
    for (int i = 0; i < m_; ++i) {
      const int j = (i + 1) % m_;
      adj_[i].push_back(j);
      adj_[j].push_back(i);
      if (looped(i)) adj_[i].push_back(i);
    }
    std::vector<int> phi;
    enumerate(phi);
    for (int len = 0; len <= max_steps; ++len)
      for (int bits = 0; bits < (1 << len); ++bits) {
        std::string s;
        for (int k = 0; k < len; ++k) s += (bits >> k & 1) ? '1' : '0';
        steps_.push_back(s);
      }
    // sources_[s][t]: universal values from which walk s can end on t.
    sources_.assign(steps_.size(), std::vector<unsigned>(static_cast<std::size_t>(m_), 0));
    for (std::size_t s = 0; s < steps_.size(); ++s)
      for (int u = 0; u < m_; ++u)
        for (int t : reach(u, steps_[s])) sources_[s][t] |= 1U << u;
  }

  std::optional<std::vector<RetPin>> run(int max_pins) {
    for (int k = 1; k <= max_pins; ++k) {
      std::vector<std::pair<int, std::size_t>> chosen;
      if (dfs(chosen, k)) {
        std::vector<RetPin> out;
        for (const auto& [p, s] : chosen) out.push_back({p + 1, steps_[s]});
        return out;
      }
    }
    return std::nullopt;
  }

 private:
  [[nodiscard]] bool looped(int v) const { return word_[static_cast<std::size_t>(v)] == '1'; }

  void enumerate(std::vector<int>& phi) {
    const auto i = static_cast<int>(phi.size());
    if (i == m_) {
      if (std::count(adj_[phi.back()].begin(), adj_[phi.back()].end(), phi.front()) == 0) return;
      automorphic_.push_back(std::set<int>(phi.begin(), phi.end()).size() == static_cast<std::size_t>(m_));
      endos_.push_back(phi);
      return;
    }
    std::vector<int> next;
    if (i == 0) {
      for (int t = 0; t < m_; ++t) next.push_back(t);
    } else {
      next = adj_[phi.back()];
    }
    for (int t : next) {
      if (looped(i) && !looped(t)) continue;
      phi.push_back(t);
      enumerate(phi);
      phi.pop_back();
    }
  }

  [[nodiscard]] std::set<int> reach(int from, const std::string& steps) const {
    std::set<int> cur{from};
    for (char c : steps) {
      std::set<int> next;
      for (int s : cur)
        for (int t : adj_[s])
          if (c == '0' || looped(t)) next.insert(t);
      cur = std::move(next);
    }
    return cur;
  }

  // Calls f(endo index, tuple index) for every universal tuple the endomorphism answers.
  template <class F>
  void cover(const std::vector<std::pair<int, std::size_t>>& pins, F f) const {
    for (std::size_t e = 0; e < endos_.size(); ++e) {
      std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t j, std::size_t acc) {
        if (j == pins.size()) {
          f(e, acc);
          return;
        }
        const unsigned mask = sources_[pins[j].second][endos_[e][pins[j].first]];
        for (int u = 0; u < m_; ++u)
          if (mask >> u & 1) rec(j + 1, acc * static_cast<std::size_t>(m_) + static_cast<std::size_t>(u));
      };
      rec(0, 0);
    }
  }

  [[nodiscard]] std::size_t tuples(std::size_t k) const {
    std::size_t t = 1;
    for (std::size_t i = 0; i < k; ++i) t *= static_cast<std::size_t>(m_);
    return t;
  }

  [[nodiscard]] bool answers_every_play(const std::vector<std::pair<int, std::size_t>>& pins) const {
    std::vector<char> seen(tuples(pins.size()), 0);
    cover(pins, [&](std::size_t, std::size_t t) { seen[t] = 1; });
    return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
  }

  [[nodiscard]] bool forces_automorphism(const std::vector<std::pair<int, std::size_t>>& pins) const {
    const std::size_t n = tuples(pins.size());
    std::vector<char> fold(n, 0);
    cover(pins, [&](std::size_t e, std::size_t t) {
      if (!automorphic_[e]) fold[t] = 1;
    });
    return std::find(fold.begin(), fold.end(), 0) != fold.end();
  }

  bool dfs(std::vector<std::pair<int, std::size_t>>& chosen, int k) {
    if (static_cast<int>(chosen.size()) == k) return forces_automorphism(chosen);
    const int first = chosen.empty() ? 0 : chosen.back().first + 1;
    for (int p = first; p < m_; ++p) {
      for (std::size_t s = 0; s < steps_.size(); ++s) {
        chosen.emplace_back(p, s);
        if (answers_every_play(chosen) && dfs(chosen, k)) return true;
        chosen.pop_back();
      }
    }
    return false;
  }

  std::string word_;
  int m_;
  std::vector<std::vector<int>> adj_;
  std::vector<std::vector<int>> endos_;
  std::vector<bool> automorphic_;
  std::vector<std::string> steps_;
  std::vector<std::vector<unsigned>> sources_;
};

}  // namespace

std::optional<std::vector<RetPin>> find_ret_pins(const ReflexivityWord& word, int max_pins, int max_steps) {
  if (word.size() < 3 || word.size() > 12) throw std::invalid_argument("pin search needs a cycle of 3..12 vertices");
  return PinSearch(word, max_steps).run(max_pins);
}

}  // namespace qcsp
