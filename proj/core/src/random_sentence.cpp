#include "qcsp/random_sentence.hpp"

#include <random>
#include <stdexcept>
#include <string>

namespace qcsp {

PHSentence random_sentence(std::uint64_t seed, const RandomSentenceOptions& opts) {
  if (opts.max_variables < 1) throw std::invalid_argument("max_variables must be >= 1");
  std::mt19937_64 rng(seed);
  auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  auto chance = [&](double p) { return std::uniform_real_distribution<double>(0, 1)(rng) < p; };

  const int n = uniform(1, opts.max_variables);
  PHSentence s;
  for (int i = 1; i <= n; ++i) {
    const auto q = chance(0.5) ? Quantifier::kForall : Quantifier::kExists;
    const std::string name = "x" + std::to_string(i);
    if (!s.blocks.empty() && s.blocks.back().quantifier == q && chance(0.5)) {
      s.blocks.back().variables.push_back(name);
      continue;
    }
    QuantBlock b{q, {name}, std::nullopt};
    if (chance(opts.range_rate)) {
      std::vector<int> r;
      for (int v = 1; v <= opts.template_size; ++v)
        if (chance(0.5)) r.push_back(v);
      if (r.empty()) r.push_back(uniform(1, opts.template_size));
      b.range = std::move(r);
    }
    s.blocks.push_back(std::move(b));
  }
  const int atoms = uniform(0, opts.max_atoms);
  for (int k = 0; k < atoms; ++k) {
    std::string a = "x" + std::to_string(uniform(1, n));
    std::string b = "x" + std::to_string(uniform(1, n));
    s.matrix.push_back(chance(opts.equality_rate) ? eq(std::move(a), std::move(b))
                                                  : edge(std::move(a), std::move(b)));
  }
  return s;
}

std::vector<PHSentence> random_suite(std::uint64_t seed, std::size_t count,
                                     const RandomSentenceOptions& opts) {
  std::vector<PHSentence> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_sentence(seed + i, opts));
  return out;
}

void for_each_small_sentence(int max_variables, bool with_equalities,
                             const std::function<void(const PHSentence&)>& visit) {
  for (int n = 1; n <= max_variables; ++n) {
    std::vector<Atom> possible;
    for (int i = 1; i <= n; ++i) {
      for (int j = i; j <= n; ++j) {
        possible.push_back(edge("x" + std::to_string(i), "x" + std::to_string(j)));
        if (with_equalities && i != j) {
          possible.push_back(eq("x" + std::to_string(i), "x" + std::to_string(j)));
        }
      }
    }
    for (unsigned pattern = 0; pattern < (1u << n); ++pattern) {
      PHSentence s;
      for (int i = 1; i <= n; ++i) {
        s.blocks.push_back({(pattern >> (i - 1)) & 1u ? Quantifier::kForall : Quantifier::kExists,
                            {"x" + std::to_string(i)},
                            std::nullopt});
      }
      for (unsigned long subset = 0; subset < (1ul << possible.size()); ++subset) {
        s.matrix.clear();
        for (std::size_t k = 0; k < possible.size(); ++k)
          if ((subset >> k) & 1ul) s.matrix.push_back(possible[k]);
        visit(s);
      }
    }
  }
}

}  // namespace qcsp
