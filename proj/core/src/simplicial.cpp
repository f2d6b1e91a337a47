#include "bwave/simplicial.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace bwave {
namespace {

std::string format_simplex(const std::vector<int>& s) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
  os << "]";
  return os.str();
}

}  // namespace

SimplicialComplex::SimplicialComplex(std::vector<std::vector<int>> simplices) {
  std::set<std::vector<int>> all;
  for (auto& s : simplices) {
    if (s.empty()) throw std::invalid_argument("empty simplex in complex");
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
      throw std::invalid_argument("simplex " + format_simplex(s) + " repeats a vertex");
    all.insert(s);
  }
  for (const auto& s : all) {
    if (s.size() < 2) continue;
    for (std::size_t omit = 0; omit < s.size(); ++omit) {
      std::vector<int> face;
      for (std::size_t i = 0; i < s.size(); ++i)
        if (i != omit) face.push_back(s[i]);
      if (!all.count(face))
        throw std::invalid_argument("complex is not closed: face " + format_simplex(face) + " of " +
                                    format_simplex(s) + " is missing");
    }
  }
  for (const auto& s : all) {
    const std::size_t k = s.size() - 1;
    if (by_dimension_.size() <= k) by_dimension_.resize(k + 1);
    by_dimension_[k].push_back(s);
  }
}

SimplicialComplex SimplicialComplex::closure(const std::vector<std::vector<int>>& generators) {
  std::set<std::vector<int>> all;
  for (auto g : generators) {
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    const std::size_t n = g.size();
    if (n == 0 || n > 20) throw std::invalid_argument("generator simplex must have 1..20 vertices");
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
      std::vector<int> face;
      for (std::size_t i = 0; i < n; ++i)
        if (mask & (1u << i)) face.push_back(g[i]);
      all.insert(face);
    }
  }
  return SimplicialComplex(std::vector<std::vector<int>>(all.begin(), all.end()));
}

SimplicialComplex SimplicialComplex::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (!j.contains("simplices") || !j["simplices"].is_array())
    throw std::invalid_argument("simplicial complex JSON needs a \"simplices\" array");
  std::vector<std::vector<int>> simplices;
  for (const auto& s : j["simplices"]) simplices.push_back(s.get<std::vector<int>>());
  return SimplicialComplex(std::move(simplices));
}

SimplicialComplex SimplicialComplex::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

const std::vector<std::vector<int>>& SimplicialComplex::simplices(int dimension) const {
  static const std::vector<std::vector<int>> empty;
  if (dimension < 0 || dimension >= static_cast<int>(by_dimension_.size())) return empty;
  return by_dimension_[static_cast<std::size_t>(dimension)];
}

std::size_t SimplicialComplex::size() const {
  std::size_t n = 0;
  for (const auto& level : by_dimension_) n += level.size();
  return n;
}

SimplicialComplex octahedron_surface() {
  // Vertices 0/1 on the x axis, 2/3 on y, 4/5 on z; one triangle per octant.
  std::vector<std::vector<int>> faces;
  for (int a : {0, 1})
    for (int b : {2, 3})
      for (int c : {4, 5}) faces.push_back({a, b, c});
  return SimplicialComplex::closure(faces);
}

}  // namespace bwave
