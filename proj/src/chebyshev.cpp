#include "deltoid/chebyshev.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "deltoid/curve.hpp"

namespace deltoid {

namespace {

constexpr double kBranchPointClearance = 1e-12;
constexpr double kStartMatch = 1e-6;

struct ArcBuilder {
  int eps;
  ChebyshevArc arc;
  double angle_minus2 = 0.0;
  double angle_plus2 = 0.0;

  void push(Complex s) {
    if (!arc.samples.empty()) {
      const Complex prev = arc.samples.back();
      angle_minus2 += std::arg((s + 2.0) / (prev + 2.0));
      angle_plus2 += std::arg((s - 2.0) / (prev - 2.0));
    }
    arc.samples.push_back(s);
  }

  // Continue from the last sample to a lift of b, where a is the s'-value
  // already lifted. Bisects [a, b] linearly while the two square roots are
  // not clearly separated relative to the step.
  void step(Complex a, Complex b, int depth) {
    const Complex root = principal_sqrt(2.0 + static_cast<double>(eps) * b);
    const Complex prev = arc.samples.back();
    const double dp = std::abs(prev - root), dm = std::abs(prev + root);
    const double near = std::min(dp, dm), far = std::max(dp, dm);
    if (near <= kAmbiguityRatio * far) {
      push(dp <= dm ? root : -root);
      return;
    }
    if (depth >= kMaxDoublings) throw LiftAmbiguity("chebyshev_lift_1d: square roots not separated");
    const Complex mid = 0.5 * (a + b);
    step(a, mid, depth + 1);
    step(mid, b, depth + 1);
  }
};

int winding(double angle) { return static_cast<int>(std::lround(angle / (2.0 * std::numbers::pi))); }

}  // namespace

ChebyshevLift chebyshev_lift_1d(std::span<const Complex> s_target, int eps) {
  if (eps != 1 && eps != -1) throw DomainError("chebyshev_lift_1d: eps must be +1 or -1");
  if (s_target.empty()) throw DomainError("chebyshev_lift_1d: empty path");
  for (const Complex& s : s_target) {
    if (!is_finite(s)) throw DomainError("chebyshev_lift_1d: non-finite sample");
    if (std::abs(s - 2.0) < kBranchPointClearance || std::abs(s + 2.0) < kBranchPointClearance) {
      throw DomainError("chebyshev_lift_1d: path passes through -2 or 2");
    }
  }

  const Complex r0 = principal_sqrt(2.0 + static_cast<double>(eps) * s_target[0]);
  ChebyshevLift out;
  for (std::size_t a = 0; a < 2; ++a) {
    ArcBuilder b{eps, {}};
    b.push(a == 0 ? r0 : -r0);
    for (std::size_t i = 1; i < s_target.size(); ++i) b.step(s_target[i - 1], s_target[i], 0);
    ChebyshevArc& arc = b.arc;
    arc.start = arc.samples.front();
    arc.end = arc.samples.back();
    const double tol = 1e-9 * std::max(1.0, std::abs(arc.start));
    arc.closed = std::abs(arc.end - arc.start) <= tol;
    if (arc.closed) {
      arc.winding_minus2 = winding(b.angle_minus2);
      arc.winding_plus2 = winding(b.angle_plus2);
    }
    out.arcs[a] = std::move(arc);
  }
  const double tol = 1e-9 * std::max(1.0, std::abs(r0));
  out.arcs_exchanged = !out.arcs[0].closed && std::abs(out.arcs[0].end - out.arcs[1].start) <= tol &&
                       std::abs(out.arcs[1].end - out.arcs[0].start) <= tol;
  return out;
}

int chart_sign(Complex t) {
  if (t == Complex{} || !is_finite(t)) throw DomainError("chart_sign: t must be finite and nonzero");
  const Complex inv = 1.0 / t;
  const Complex r = principal_sqrt(inv * inv);
  return std::abs(r - inv) <= std::abs(r + inv) ? 1 : -1;
}

namespace {

struct OracleState {
  const PreimageTree& tree;
  std::vector<std::vector<std::uint32_t>> images;
};

std::size_t nearest_vertex(std::span<const AffinePoint> level, const AffinePoint& p) {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < level.size(); ++i) {
    const double d = distance(level[i], p);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  if (!(best_d <= kEndpointTolerance)) {
    throw EndpointMismatch("chebyshev oracle: arc end misses every vertex by " + format_double(best_d));
  }
  return best;
}

// The node's path lies in the tangent line t_v with 1/t_v^2 = t_parent.
// In the parent's chart (principal root R of t_parent) the two candidate
// lines are t = +-1/R, and f(sigma_t(s)) = sigma_{t_parent}(eps (s^2 - 2))
// with eps = R t.
void lift_node(OracleState& st, int level, std::size_t vertex, Complex t_parent,
               const std::vector<Complex>& parent_path) {
  const AffinePoint v = st.tree.vertex(level, vertex);
  const Complex inv_r = 1.0 / principal_sqrt(t_parent);
  const int eps = tangent_line_residual(inv_r, v) <= tangent_line_residual(-inv_r, v) ? 1 : -1;
  const Complex t_v = static_cast<double>(eps) * inv_r;
  const Complex s_v = sigma_inverse(t_v, SqrtBranch::Principal, v);

  ChebyshevLift lift = chebyshev_lift_1d(parent_path, eps);
  const std::size_t a = std::abs(lift.arcs[0].start - s_v) <= std::abs(lift.arcs[1].start - s_v) ? 0 : 1;
  ChebyshevArc& arc = lift.arcs[a];
  if (!(std::abs(arc.start - s_v) <= kStartMatch)) {
    throw EndpointMismatch("chebyshev oracle: no arc starts at the vertex");
  }
  const AffinePoint end = sigma(t_v, SqrtBranch::Principal, arc.end);
  st.images[static_cast<std::size_t>(level - 1)][vertex] =
      static_cast<std::uint32_t>(nearest_vertex(st.tree.level(level), end));
  if (level == st.tree.depth()) return;
  for (std::size_t c = 4 * vertex; c < 4 * vertex + 4; ++c) lift_node(st, level + 1, c, t_v, arc.samples);
}

}  // namespace

std::vector<Permutation> chebyshev_oracle_perms(const LoopPath& loop, const PreimageTree& tree) {
  if (!loop.line_param) throw DomainError("chebyshev oracle: loop must lie in a tangent line");
  const int n = tree.depth();
  if (n < 1) throw DomainError("chebyshev oracle: tree depth must be at least 1");
  const Complex t0 = *loop.line_param;
  std::vector<Complex> base;
  base.reserve(loop.samples.size());
  for (const AffinePoint& p : loop.samples) {
    if (!(tangent_line_residual(t0, p) <= 1e-9 * std::max(1.0, sup_norm(p)))) {
      throw DomainError("chebyshev oracle: loop leaves its tangent line");
    }
    base.push_back(sigma_inverse(t0, SqrtBranch::Principal, p));
  }
  OracleState st{tree, std::vector<std::vector<std::uint32_t>>(static_cast<std::size_t>(n))};
  for (int k = 1; k <= n; ++k) st.images[static_cast<std::size_t>(k - 1)].assign(tree.level(k).size(), 0);
  for (std::size_t v = 0; v < 4; ++v) lift_node(st, 1, v, t0, base);

  std::vector<Permutation> perms;
  for (auto& img : st.images) perms.emplace_back(std::move(img));
  return perms;
}

}  // namespace deltoid
