#include "magspec/generators.hpp"

#include "magspec/error.hpp"

namespace magspec {

FundamentalGraph make_zd(int dim) {
  if (dim < 1) throw Error(ErrorCode::BadParams, "zd needs d >= 1");
  std::vector<Edge> edges;
  for (int s = 0; s < dim; ++s) {
    Edge e{0, 0, std::vector<int>(dim, 0), 0.0};
    e.index[s] = 1;
    edges.push_back(std::move(e));
  }
  return FundamentalGraph(dim, {"v"}, std::move(edges));
}

FundamentalGraph make_hexagonal() {
  std::vector<Edge> edges = {
      {0, 1, {0, 0}, 0.0},
      {0, 1, {-1, 0}, 0.0},
      {0, 1, {0, -1}, 0.0},
  };
  return FundamentalGraph(2, {"a", "b"}, std::move(edges));
}

FundamentalGraph make_kagome() {
  // v1 = 0, v2 = 1, v3 = 2.
  std::vector<Edge> edges = {
      {0, 2, {0, 0}, 0.0},  {0, 1, {0, 0}, 0.0},  {1, 2, {0, 0}, 0.0},
      {0, 2, {-1, 0}, 0.0}, {1, 0, {0, 1}, 0.0},  {2, 1, {1, -1}, 0.0},
  };
  return FundamentalGraph(2, {"v1", "v2", "v3"}, std::move(edges));
}

PeriodicEmbedding kagome_embedding() { return {{{0.0, 0.0}, {0.0, 0.5}, {0.5, 0.0}}}; }

FundamentalGraph make_decorated(int dim, const FundamentalGraph& decoration) {
  if (dim < 1) throw Error(ErrorCode::BadParams, "decorated needs d >= 1");
  if (!decoration.is_connected()) throw Error(ErrorCode::BadParams, "decoration must be connected");
  std::vector<Edge> edges;
  for (int s = 0; s < dim; ++s) {
    Edge e{0, 0, std::vector<int>(dim, 0), 0.0};
    e.index[s] = 1;
    edges.push_back(std::move(e));
  }
  for (const Edge& e : decoration.edges()) edges.push_back({e.tail, e.head, std::vector<int>(dim, 0), 0.0});
  return FundamentalGraph(dim, decoration.vertex_names(), std::move(edges));
}

FundamentalGraph make_path(int n) {
  if (n < 1) throw Error(ErrorCode::BadParams, "path needs at least one vertex");
  std::vector<std::string> names;
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) names.push_back("p" + std::to_string(i));
  for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, {0}, 0.0});
  return FundamentalGraph(1, std::move(names), std::move(edges));
}

FundamentalGraph make_five_vertex_example() {
  // bottom = 0, top = 1, centre = 2, left = 3, right = 4
  std::vector<Edge> edges = {
      {0, 4, {0}, 0.0}, {0, 3, {0}, 0.0}, {1, 4, {0}, 0.0}, {1, 3, {0}, 0.0},
      {1, 2, {0}, 0.0}, {3, 2, {0}, 0.0}, {2, 4, {0}, 0.0},
  };
  return FundamentalGraph(1, {"bottom", "top", "centre", "left", "right"}, std::move(edges));
}

}  // namespace magspec
