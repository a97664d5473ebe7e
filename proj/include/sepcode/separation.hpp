#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "sepcode/embgraph.hpp"

namespace sepcode {

/// [V0, V1, ..., Vp]: V0 is the boundary pool, parts V1..Vp are pairwise
/// non-adjacent. hooks[i - 1] is a node of V0 adjacent to Vi, or kNoNode when
/// V0 is empty.
struct Separation {
  std::vector<NodeSet> parts;
  std::vector<NodeId> hooks;
  std::size_t level = 0;

  [[nodiscard]] std::size_t part_count() const noexcept { return parts.empty() ? 0 : parts.size() - 1; }
  [[nodiscard]] const NodeSet &pool() const { return parts.front(); }
};

/// l_0 = n, l_k = max(1, log2 applied k times to n).
[[nodiscard]] double ell(double n, std::size_t k);
/// Same, with n given as log2(n), for n too large for a double.
[[nodiscard]] double ell_log2(double log2_n, std::size_t k);

/// Degree bound r = max(1, floor(l^2)) and component bound r^2 used at a level.
struct LevelBounds {
  std::size_t degree;
  std::size_t component;
  std::size_t pack; // floor(l^4), the per-part node budget of the clustering
};
[[nodiscard]] LevelBounds level_bounds(double ell_k);

[[nodiscard]] Separation trivial_separation(const EmbeddedGraph &g);

/// V' u V'' u V''': planarizer nodes, nodes of degree above the degree bound,
/// and heavy separator nodes of a decomposition of g minus V'. Every component
/// of g minus the result has at most bounds.component nodes.
[[nodiscard]] NodeSet fragment(const EmbeddedGraph &g, const LevelBounds &bounds);

/// Level-k refinement of `prev` for connected g, using l_k(n) with n = node_count(g).
[[nodiscard]] Separation refine(const EmbeddedGraph &g, const Separation &prev, std::size_t k);
/// Same with explicit l (used when the caller fixes n differently).
[[nodiscard]] Separation refine_with_ell(const EmbeddedGraph &g, const Separation &prev, std::size_t k, double ell_k);

/// Predicate on a candidate part (host node ids, sorted): true when the part is small enough.
using PartFits = std::function<bool(const NodeSet &)>;

/// Refinement of `prev` whose parts all satisfy `fits`. Components of
/// g - V0 that do not fit are split by planar separators (whose nodes join V0)
/// until they fit; single nodes that still do not fit join V0. Components
/// are then clustered around hooks exactly as in refine, with `fits` as the
/// capacity test.
[[nodiscard]] Separation refine_to_fit(const EmbeddedGraph &g, const Separation &prev, std::size_t k,
                                       const PartFits &fits);

struct PropertyResult {
  std::string name;
  bool pass = true;
  std::string witness;
  double measured = 0;
  double bound = 0;
};

struct SeparationReport {
  std::vector<PropertyResult> items;
  [[nodiscard]] bool all_pass() const;
  [[nodiscard]] const PropertyResult *find(const std::string &name) const;
};

struct CheckParams {
  double ell_k = 1;             // l used for the S3/S5 envelopes
  double envelope_constant = 0; // c in ceil(n / l^1.5) + c sqrt(n)
  std::size_t part_bound = 0;   // S4 bound; 0 disables
  /// Size measure for S4; defaults to |Vi| + nbr(Vi).
  std::function<std::size_t(const NodeSet &)> part_size;
  const Separation *prev = nullptr; // enables R1-R3
};

/// S1-S5 (and R1-R3 when prev is given) with witnesses on failure.
[[nodiscard]] SeparationReport check_separation(const EmbeddedGraph &g, const Separation &sep,
                                                const CheckParams &params);

/// ceil(n / l^1.5) + c sqrt(n).
[[nodiscard]] double envelope(double n, double ell_k, double c);

} // namespace sepcode
