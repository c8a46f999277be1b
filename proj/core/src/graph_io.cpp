#include <charconv>
#include <sstream>
#include <string>
#include <vector>

#include "qcsp/errors.hpp"
#include "qcsp/graph.hpp"

namespace qcsp {
namespace {

std::vector<std::string> split_words(std::string_view line) {
  std::vector<std::string> words;
  std::istringstream in{std::string(line)};
  for (std::string w; in >> w;) words.push_back(w);
  return words;
}

int to_int(const std::string& word, int line) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(word.data(), word.data() + word.size(), value);
  if (ec != std::errc() || ptr != word.data() + word.size()) {
    throw ParseError("expected integer, got '" + word + "'", line, 1);
  }
  return value;
}

}  // namespace

Graph parse_graph(std::string_view text) {
  Graph g;
  bool sized = false;
  int line_no = 0;
  std::istringstream in{std::string(text)};
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto words = split_words(line);
    if (words.empty()) continue;
    const std::string& key = words[0];
    auto need = [&](std::size_t count) {
      if (words.size() != count) {
        throw ParseError("'" + key + "' takes " + std::to_string(count - 1) + " argument(s)",
                         line_no, 1);
      }
    };
    try {
      if (key == "vertices") {
        need(2);
        if (sized) throw ParseError("duplicate 'vertices' line", line_no, 1);
        const int n = to_int(words[1], line_no);
        if (n < 0) throw ParseError("negative vertex count", line_no, 1);
        g = Graph(n);
        sized = true;
      } else if (!sized) {
        throw ParseError("'vertices N' must come first", line_no, 1);
      } else if (key == "loop") {
        need(2);
        g.add_loop(to_int(words[1], line_no));
      } else if (key == "edge") {
        need(3);
        g.add_edge(to_int(words[1], line_no), to_int(words[2], line_no));
      } else if (key == "label") {
        need(3);
        g.set_label(words[1], to_int(words[2], line_no));
      } else {
        throw ParseError("unknown directive '" + key + "'", line_no, 1);
      }
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), line_no, 1);
    }
  }
  if (!sized) throw ParseError("missing 'vertices N' line", 0, 0);
  return g;
}

std::string format_graph(const Graph& g) {
  std::ostringstream out;
  out << "vertices " << g.size() << '\n';
  for (auto [u, v] : g.edges()) {
    if (u == v) {
      out << "loop " << u << '\n';
    } else {
      out << "edge " << u << ' ' << v << '\n';
    }
  }
  for (const auto& [name, v] : g.labels()) out << "label " << name << ' ' << v << '\n';
  return out.str();
}

}  // namespace qcsp
