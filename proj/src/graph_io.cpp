#include "hmgf/graph_io.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <system_error>
#include <tuple>
#include <vector>

namespace hmgf {
namespace {

std::vector<std::string_view> tokenize(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i == line.size()) break;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

double parse_weight(std::string_view token, std::size_t line) {
  double w = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), w);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw GraphError("malformed weight '" + std::string(token) + "'", line);
  }
  return w;
}

}  // namespace

HeteroGraph parse_graph(std::istream& in) {
  GraphBuilder builder;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    auto tokens = tokenize(raw);
    if (tokens.empty() || tokens.front().front() == '#') continue;

    const std::string_view kind = tokens.front();
    std::size_t arity = 0;
    if (kind == "F") {
      arity = 3;
    } else if (kind == "P") {
      arity = 4;
    } else {
      throw GraphError("unknown record type '" + std::string(kind) + "'", line_no);
    }
    if (tokens.size() > arity && tokens[arity].front() == '#') tokens.resize(arity);
    if (tokens.size() != arity) {
      throw GraphError("expected " + std::to_string(arity - 1) + " fields after '" +
                           std::string(kind) + "', got " + std::to_string(tokens.size() - 1),
                       line_no);
    }

    try {
      const VertexId u = builder.add_vertex(tokens[1]);
      const VertexId v = builder.add_vertex(tokens[2]);
      if (kind == "F") {
        builder.add_friend(u, v);
      } else {
        builder.add_potential(u, v, parse_weight(tokens[3], line_no));
      }
    } catch (const GraphError& e) {
      if (e.line() != 0) throw;
      throw GraphError(e.what(), line_no);
    }
  }
  return std::move(builder).build();
}

HeteroGraph parse_graph(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_graph(in);
}

HeteroGraph read_graph_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw GraphError("cannot open graph file '" + path.string() + "'");
  return parse_graph(in);
}

std::string format_weight(double w) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), w);
  return std::string(buf.data(), ptr);
}

void write_graph(const HeteroGraph& g, std::ostream& out) {
  auto ordered = [&](VertexId u, VertexId v) {
    const std::string& a = g.label(u);
    const std::string& b = g.label(v);
    return a < b ? std::pair(&a, &b) : std::pair(&b, &a);
  };
  auto by_labels = [](const auto& x, const auto& y) {
    return std::tie(*x.first, *x.second) < std::tie(*y.first, *y.second);
  };

  using LabelPair = std::pair<const std::string*, const std::string*>;
  std::vector<LabelPair> friends;
  for (const auto& [u, v] : g.friend_edge_list()) friends.push_back(ordered(u, v));
  std::sort(friends.begin(), friends.end(), by_labels);
  for (const auto& [a, b] : friends) out << "F " << *a << ' ' << *b << '\n';

  std::vector<std::pair<LabelPair, double>> potentials;
  for (const auto& e : g.potential_edge_list()) potentials.emplace_back(ordered(e.u, e.v), e.weight);
  std::sort(potentials.begin(), potentials.end(),
            [&](const auto& x, const auto& y) { return by_labels(x.first, y.first); });
  for (const auto& [ends, w] : potentials) {
    out << "P " << *ends.first << ' ' << *ends.second << ' ' << format_weight(w) << '\n';
  }
}

std::string write_graph(const HeteroGraph& g) {
  std::ostringstream out;
  write_graph(g, out);
  return out.str();
}

void write_graph_file(const HeteroGraph& g, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw GraphError("cannot write graph file '" + path.string() + "'");
  write_graph(g, out);
}

}  // namespace hmgf
