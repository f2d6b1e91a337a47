#pragma once

#include <string>
#include <vector>

namespace bwave {

/// Finite abstract simplicial complex. Every simplex is stored as a sorted
/// vertex list, which fixes its orientation.
class SimplicialComplex {
 public:
  SimplicialComplex() = default;

  /// Validates downward closure; throws std::invalid_argument naming the
  /// first missing face.
  explicit SimplicialComplex(std::vector<std::vector<int>> simplices);

  /// Adds every face of the given simplices.
  static SimplicialComplex closure(const std::vector<std::vector<int>>& generators);

  /// Parses {"simplices": [[0],[1],[0,1],...]}.
  static SimplicialComplex from_json(const std::string& text);
  static SimplicialComplex from_json_file(const std::string& path);

  /// Simplices of dimension k (k+1 vertices), lexicographically sorted.
  const std::vector<std::vector<int>>& simplices(int dimension) const;
  int dimension() const { return static_cast<int>(by_dimension_.size()) - 1; }
  std::size_t size() const;

 private:
  std::vector<std::vector<std::vector<int>>> by_dimension_;
};

SimplicialComplex octahedron_surface();

}  // namespace bwave
