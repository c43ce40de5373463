#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "deltoid/algebra.hpp"
#include "deltoid/permutation.hpp"

namespace deltoid {

class VertexCollision : public Error {
 public:
  using Error::Error;
};

/// Path lifting could not separate the candidate preimages even after the
/// maximum number of subdivisions; the path runs too close to the deltoid.
class LiftAmbiguity : public Error {
 public:
  using Error::Error;
};

class EndpointMismatch : public Error {
 public:
  using Error::Error;
};

inline constexpr double kAmbiguityRatio = 0.25;
inline constexpr int kMaxDoublings = 12;
inline constexpr double kEndpointTolerance = 1e-6;
inline constexpr double kVertexSeparation = 1e-6;
inline constexpr int kMaxTreeDepth = 8;

// Preimages ---------------------------------------------------------------------

struct PreimageSet {
  /// The four solutions of f(z) = w, ordered by their y-coordinate.
  std::array<AffinePoint, 4> points;
  /// ||f(z) - w||_inf per point.
  std::array<double, 4> residuals;
  double min_separation = 0.0;
  /// w is (numerically) a critical value: two preimages closer than 1e-8,
  /// or w on the deltoid.
  bool near_critical = false;
};

PreimageSet preimages(const AffinePoint& w);

/// Iterated preimages of the basepoint (0,0). Level k holds 4^k vertices;
/// the children of vertex i at level k are 4i, ..., 4i+3 at level k+1, so a
/// vertex index read in base 4 is its address word.
class PreimageTree {
 public:
  static PreimageTree build(int depth);

  int depth() const { return static_cast<int>(levels_.size()) - 1; }
  std::span<const AffinePoint> level(int k) const { return levels_.at(static_cast<std::size_t>(k)); }
  const AffinePoint& vertex(int k, std::size_t index) const { return levels_.at(static_cast<std::size_t>(k)).at(index); }

  /// Address word (first letter = level-1 child) of a level-k vertex.
  static std::vector<int> word(int k, std::size_t index);
  static std::size_t index_of(std::span<const int> word);

 private:
  std::vector<std::vector<AffinePoint>> levels_;
};

inline PreimageTree build_tree(int depth) { return PreimageTree::build(depth); }

// Loops and lifting ----------------------------------------------------------------

struct LoopPath {
  /// Closed polyline: samples.front() == samples.back().
  std::vector<AffinePoint> samples;
  /// Tangent-line parameter when the loop lies in a single tangent line.
  std::optional<Complex> line_param;
  int orientation = 1;
};

inline constexpr double kDefaultLoopRadius = 0.5;
inline constexpr int kDefaultLoopSamples = 256;
/// Loops must keep |deltoid_residual| at least this large.
inline constexpr double kLoopClearance = 1e-3;

/// Generator eta_k, k in {1,2,3}. eta_3 lies in the tangent line y = x: in
/// the chart s -> (1+s, 1+s) it runs from s = -1 (the basepoint) along the
/// real axis to the circle |s + 2| = radius, once around that circle
/// counterclockwise, and back. eta_1 and eta_2 are its images under
/// (x, y) -> (w x, w^2 y) and its square.
LoopPath generator_loop(int k, double radius = kDefaultLoopRadius, int n_samples = kDefaultLoopSamples);

LoopPath reversed(const LoopPath& loop);

struct LiftedPath {
  std::vector<AffinePoint> samples;
  AffinePoint endpoint;
  /// Number of bisections that were needed.
  int subdivisions = 0;
};

/// Continuous lift of the polyline `path` through f, starting at `start`
/// (a preimage of the first sample).
LiftedPath lift_path(const LoopPath& path, const AffinePoint& start);

/// The action of the loop on every level of the tree: element k-1 is the
/// permutation of the 4^k level-k vertices obtained by lifting through f^k.
std::vector<Permutation> monodromy_perms(const LoopPath& loop, const PreimageTree& tree);
/// Action on the deepest level of the tree.
Permutation monodromy_perm(const LoopPath& loop, const PreimageTree& tree);

/// Generator actions for a tree, computed once, plus word evaluation.
class MonodromyAction {
 public:
  explicit MonodromyAction(const PreimageTree& tree, double radius = kDefaultLoopRadius,
                           int n_samples = kDefaultLoopSamples);

  int depth() const { return depth_; }
  /// Action of eta_k (k = 1, 2, 3) on level `level` (default: deepest).
  const Permutation& generator(int k, int level = -1) const;
  /// Action of the reversed loop of eta_k.
  const Permutation& inverse_generator(int k, int level = -1) const;
  /// Letters are +-1, +-2, +-3 (negative = inverse). The loop of w1 w2 acts
  /// as word_perm(w1).then(word_perm(w2)).
  Permutation word_perm(std::span<const int> word, int level = -1) const;

 private:
  int depth_;
  std::array<std::vector<Permutation>, 3> perms_;
  std::array<std::vector<Permutation>, 3> inverse_perms_;
};

Permutation word_perm(std::span<const int> word, const PreimageTree& tree);
/// "1 2 -1" -> {1, 2, -1}
std::vector<int> parse_word(std::string_view text);

struct WordOrder {
  std::vector<int> word;
  std::uint64_t order = 0;
};

struct RelationReport {
  int depth = 0;
  bool involutions_ok = false;  ///< g_k^2 = id
  bool inverses_ok = false;     ///< reversed loop acts as g_k^-1 = g_k
  bool braid_ok = false;        ///< g_j g_k g_j = g_k g_j g_k
  bool coxeter_ok = false;      ///< (g_j g_k)^3 = id
  bool generators_distinct = false;
  std::uint64_t coxeter_element_order = 0;  ///< order of g_1 g_2 g_3
  std::vector<WordOrder> word_orders;
  std::array<Permutation, 3> generators;

  bool all_ok() const { return involutions_ok && inverses_ok && braid_ok && coxeter_ok && generators_distinct; }
};

RelationReport relation_report(const MonodromyAction& action, int level);
/// Builds the depth-n tree and checks the affine Coxeter relations on it.
RelationReport verify_relations(int depth);

}  // namespace deltoid
