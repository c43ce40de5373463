#include "deltoid/monodromy.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <map>
#include <numbers>
#include <sstream>
#include <thread>

#include "deltoid/curve.hpp"
#include "deltoid/dynamics.hpp"

namespace deltoid {

namespace {

constexpr double kNearCriticalSeparation = 1e-8;
constexpr double kChildResidual = 1e-8;

AffinePoint newton_polish(AffinePoint z, const AffinePoint& w) {
  for (int it = 0; it < 4; ++it) {
    const AffinePoint r = apply_f(z) - w;
    // J = [[-2, 2y], [2x, -2]]
    const Complex det = 4.0 - 4.0 * z.x * z.y;
    if (std::abs(det) < 1e-300) break;
    const Complex dx = (-2.0 * r.x - 2.0 * z.y * r.y) / det;
    const Complex dy = (-2.0 * z.x * r.x - 2.0 * r.y) / det;
    const AffinePoint next{z.x - dx, z.y - dy};
    if (!(sup_norm(apply_f(next) - w) < sup_norm(r))) break;
    z = next;
  }
  return z;
}

}  // namespace

PreimageSet preimages(const AffinePoint& w) {
  if (!is_finite(w)) throw DomainError("preimages: w must be finite");
  const Complex w1 = w.x, w2 = w.y;
  // x = (y^2 - w1)/2 substituted into x^2 - 2y = w2.
  const QuarticRoots q = solve_monic_quartic(0.0, -2.0 * w1, -8.0, w1 * w1 - 4.0 * w2);
  PreimageSet out;
  for (std::size_t i = 0; i < 4; ++i) {
    const Complex y = q.roots[i];
    out.points[i] = newton_polish({(y * y - w1) / 2.0, y}, w);
    out.residuals[i] = sup_norm(apply_f(out.points[i]) - w);
  }
  out.min_separation = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = i + 1; j < 4; ++j) {
      out.min_separation = std::min(out.min_separation, distance(out.points[i], out.points[j]));
    }
  }
  const double scale = std::max(1.0, sup_norm(w));
  out.near_critical = out.min_separation < kNearCriticalSeparation ||
                      std::abs(deltoid_residual(w)) <= 1e-9 * std::pow(scale, 4);
  return out;
}

PreimageTree PreimageTree::build(int depth) {
  if (depth < 0 || depth > kMaxTreeDepth) throw DomainError("build_tree: depth must be in [0, 8]");
  PreimageTree tree;
  tree.levels_.push_back({AffinePoint{0.0, 0.0}});
  for (int k = 1; k <= depth; ++k) {
    const auto& parents = tree.levels_.back();
    std::vector<AffinePoint> level(parents.size() * 4);
    for (std::size_t i = 0; i < parents.size(); ++i) {
      const PreimageSet ps = preimages(parents[i]);
      for (std::size_t c = 0; c < 4; ++c) {
        if (!(ps.residuals[c] <= kChildResidual)) {
          throw Error("build_tree: preimage residual " + format_double(ps.residuals[c]) + " at level " +
                      std::to_string(k));
        }
        level[4 * i + c] = ps.points[c];
      }
    }
    // Sweep by Re(x) to find any pair closer than the separation threshold.
    std::vector<std::size_t> order(level.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return level[a].x.real() < level[b].x.real(); });
    for (std::size_t a = 0; a < order.size(); ++a) {
      for (std::size_t b = a + 1; b < order.size(); ++b) {
        const AffinePoint& p = level[order[a]];
        const AffinePoint& q = level[order[b]];
        if (q.x.real() - p.x.real() > kVertexSeparation) break;
        if (distance(p, q) <= kVertexSeparation) {
          throw VertexCollision("build_tree: vertices " + std::to_string(order[a]) + " and " +
                                std::to_string(order[b]) + " at level " + std::to_string(k) + " collide");
        }
      }
    }
    tree.levels_.push_back(std::move(level));
  }
  return tree;
}

std::vector<int> PreimageTree::word(int k, std::size_t index) {
  std::vector<int> w(static_cast<std::size_t>(k));
  for (int i = k - 1; i >= 0; --i) {
    w[static_cast<std::size_t>(i)] = static_cast<int>(index % 4);
    index /= 4;
  }
  return w;
}

std::size_t PreimageTree::index_of(std::span<const int> word) {
  std::size_t index = 0;
  for (int a : word) {
    if (a < 0 || a > 3) throw DomainError("index_of: letters must be in {0,1,2,3}");
    index = 4 * index + static_cast<std::size_t>(a);
  }
  return index;
}

LoopPath generator_loop(int k, double radius, int n_samples) {
  if (k < 1 || k > 3) throw DomainError("generator_loop: k must be 1, 2 or 3");
  if (!(radius > 0.0 && radius < 1.0)) throw DomainError("generator_loop: radius must lie in (0, 1)");
  if (n_samples < 64) throw DomainError("generator_loop: n_samples must be at least 64");

  // Segment from s = -1 to -2 + radius, the circle, and the same segment back.
  const int n_seg = n_samples - 1;
  const double total = 2.0 * (1.0 - radius) + 2.0 * std::numbers::pi * radius;
  const int n_line = std::max(1, static_cast<int>(std::lround(n_seg * (1.0 - radius) / total)));
  const int n_circ = n_seg - 2 * n_line;
  if (n_circ < 8) throw DomainError("generator_loop: too few samples for the circle");

  std::vector<Complex> s;
  s.reserve(static_cast<std::size_t>(n_samples));
  for (int i = 0; i <= n_line; ++i) s.emplace_back(-1.0 - (1.0 - radius) * i / n_line, 0.0);
  for (int j = 1; j < n_circ; ++j) s.push_back(-2.0 + std::polar(radius, 2.0 * std::numbers::pi * j / n_circ));
  for (int i = n_line; i >= 0; --i) s.push_back(s[static_cast<std::size_t>(i)]);

  LoopPath loop;
  loop.samples.reserve(s.size());
  const Complex cx = k == 3 ? Complex(1.0) : (k == 1 ? kOmega : kOmega2);
  const Complex cy = k == 3 ? Complex(1.0) : (k == 1 ? kOmega2 : kOmega);
  for (const Complex& si : s) {
    const Complex v = 1.0 + si;
    loop.samples.push_back({cx * v, cy * v});
  }
  loop.line_param = cx;
  loop.orientation = 1;
  for (const AffinePoint& p : loop.samples) {
    if (!(std::abs(deltoid_residual(p)) >= kLoopClearance)) {
      throw DomainError("generator_loop: sample too close to the deltoid");
    }
  }
  return loop;
}

LoopPath reversed(const LoopPath& loop) {
  LoopPath r = loop;
  std::reverse(r.samples.begin(), r.samples.end());
  r.orientation = -loop.orientation;
  return r;
}

namespace {

constexpr std::uint32_t kKeyUnit = 1u << kMaxDoublings;

/// Lifts a polyline through f repeatedly. Level 0 is the polyline itself;
/// level j is the lift of level j-1 started at the vertex of the current
/// node. Points are addressed by integer keys, kKeyUnit per polyline
/// segment, and memoized per level so that a child can ask its parent for
/// intermediate points during subdivision.
class LiftEngine {
 public:
  LiftEngine(std::span<const AffinePoint> base, int levels)
      : base_(base), memo_(static_cast<std::size_t>(levels) + 1) {
    if (base_.size() < 2) throw DomainError("lift: path needs at least two samples");
  }

  std::uint32_t end_key() const { return static_cast<std::uint32_t>(base_.size() - 1) * kKeyUnit; }
  int subdivisions() const { return subdivisions_; }

  void start_node(int level, const AffinePoint& start) {
    auto& m = memo_[static_cast<std::size_t>(level)];
    m.clear();
    m.emplace(0u, start);
  }

  /// Walks the current node of `level` along the whole path; returns the endpoint.
  AffinePoint walk(int level) {
    for (std::uint32_t key = kKeyUnit; key <= end_key(); key += kKeyUnit) point_at(level, key);
    return memo_[static_cast<std::size_t>(level)].at(end_key());
  }

  AffinePoint point_at(int level, std::uint32_t key) {
    if (level == 0) return base_point(key);
    auto& m = memo_[static_cast<std::size_t>(level)];
    auto it = m.lower_bound(key);
    if (it != m.end() && it->first == key) return it->second;
    --it;
    return advance(level, it->first, it->second, key);
  }

  const std::map<std::uint32_t, AffinePoint>& memo(int level) const {
    return memo_[static_cast<std::size_t>(level)];
  }

 private:
  AffinePoint base_point(std::uint32_t key) const {
    const std::size_t seg = key / kKeyUnit;
    const std::uint32_t frac = key % kKeyUnit;
    if (frac == 0) return base_[seg];
    const double t = static_cast<double>(frac) / kKeyUnit;
    return base_[seg] + t * (base_[seg + 1] - base_[seg]);
  }

  AffinePoint advance(int level, std::uint32_t k0, AffinePoint p0, std::uint32_t k1) {
    const PreimageSet ps = preimages(point_at(level - 1, k1));
    std::array<double, 4> d;
    for (std::size_t i = 0; i < 4; ++i) d[i] = distance(p0, ps.points[i]);
    std::size_t best = 0;
    for (std::size_t i = 1; i < 4; ++i) {
      if (d[i] < d[best]) best = i;
    }
    double second = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < 4; ++i) {
      if (i != best) second = std::min(second, d[i]);
    }
    if (d[best] <= kAmbiguityRatio * second) {
      memo_[static_cast<std::size_t>(level)][k1] = ps.points[best];
      return ps.points[best];
    }
    if (k1 - k0 <= 1) {
      throw LiftAmbiguity("lift: preimages not separated after " + std::to_string(kMaxDoublings) +
                          " subdivisions at level " + std::to_string(level));
    }
    ++subdivisions_;
    const std::uint32_t mid = k0 + (k1 - k0) / 2;
    const AffinePoint pm = advance(level, k0, p0, mid);
    return advance(level, mid, pm, k1);
  }

  std::span<const AffinePoint> base_;
  std::vector<std::map<std::uint32_t, AffinePoint>> memo_;
  int subdivisions_ = 0;
};

void require_preimage(const AffinePoint& start, const AffinePoint& base) {
  if (!(sup_norm(apply_f(start) - base) <= 1e-8)) {
    throw DomainError("lift_path: start is not a preimage of the first sample");
  }
}

std::size_t match_child(std::span<const AffinePoint> level, std::size_t parent, const AffinePoint& p) {
  std::size_t best = 4 * parent;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t c = 4 * parent; c < 4 * parent + 4; ++c) {
    const double d = distance(level[c], p);
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  if (!(best_d <= kEndpointTolerance)) {
    throw EndpointMismatch("monodromy: lifted endpoint misses every vertex by " + format_double(best_d));
  }
  return best;
}

/// images[j-1][i] = endpoint vertex of the lift through f^j started at level-j vertex i.
void lift_subtree(LiftEngine& engine, const PreimageTree& tree, int level, std::size_t vertex,
                  std::size_t parent_end, std::vector<std::vector<std::uint32_t>>& images) {
  engine.start_node(level, tree.vertex(level, vertex));
  const AffinePoint end = engine.walk(level);
  const std::size_t matched = match_child(tree.level(level), parent_end, end);
  images[static_cast<std::size_t>(level - 1)][vertex] = static_cast<std::uint32_t>(matched);
  if (level == tree.depth()) return;
  for (std::size_t c = 4 * vertex; c < 4 * vertex + 4; ++c) {
    lift_subtree(engine, tree, level + 1, c, matched, images);
  }
}

}  // namespace

LiftedPath lift_path(const LoopPath& path, const AffinePoint& start) {
  if (path.samples.empty()) throw DomainError("lift_path: empty path");
  require_preimage(start, path.samples.front());
  LiftedPath out;
  if (path.samples.size() == 1) {
    out.samples = {start};
    out.endpoint = start;
    return out;
  }
  LiftEngine engine(path.samples, 1);
  engine.start_node(1, start);
  out.endpoint = engine.walk(1);
  out.samples.reserve(path.samples.size());
  for (std::size_t i = 0; i < path.samples.size(); ++i) {
    out.samples.push_back(engine.memo(1).at(static_cast<std::uint32_t>(i) * kKeyUnit));
  }
  out.subdivisions = engine.subdivisions();
  return out;
}

std::vector<Permutation> monodromy_perms(const LoopPath& loop, const PreimageTree& tree) {
  const int n = tree.depth();
  if (n < 1) throw DomainError("monodromy_perm: tree depth must be at least 1");
  if (loop.samples.size() < 2 || !(loop.samples.front() == loop.samples.back())) {
    throw DomainError("monodromy_perm: loop must be closed");
  }
  if (!(sup_norm(loop.samples.front() - tree.vertex(0, 0)) <= 1e-12)) {
    throw DomainError("monodromy_perm: loop must start at the tree basepoint");
  }

  // Each level-1 subtree is independent; every task owns its engine and
  // writes only to the entries of its own subtree, so the result does not
  // depend on scheduling.
  std::vector<std::vector<std::uint32_t>> images(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) images[static_cast<std::size_t>(k - 1)].assign(tree.level(k).size(), 0);
  auto run = [&](std::size_t v) {
    LiftEngine engine(loop.samples, n);
    lift_subtree(engine, tree, 1, v, 0, images);
  };
  const unsigned hw = std::thread::hardware_concurrency();
  if (hw > 1) {
    std::vector<std::future<void>> tasks;
    for (std::size_t v = 0; v < 4; ++v) tasks.push_back(std::async(std::launch::async, run, v));
    for (auto& t : tasks) t.get();
  } else {
    for (std::size_t v = 0; v < 4; ++v) run(v);
  }

  std::vector<Permutation> perms;
  perms.reserve(images.size());
  for (auto& img : images) perms.emplace_back(std::move(img));
  return perms;
}

Permutation monodromy_perm(const LoopPath& loop, const PreimageTree& tree) {
  return monodromy_perms(loop, tree).back();
}

MonodromyAction::MonodromyAction(const PreimageTree& tree, double radius, int n_samples) : depth_(tree.depth()) {
  for (int k = 1; k <= 3; ++k) {
    const LoopPath loop = generator_loop(k, radius, n_samples);
    perms_[static_cast<std::size_t>(k - 1)] = monodromy_perms(loop, tree);
    inverse_perms_[static_cast<std::size_t>(k - 1)] = monodromy_perms(reversed(loop), tree);
  }
}

const Permutation& MonodromyAction::inverse_generator(int k, int level) const {
  if (k < 1 || k > 3) throw DomainError("inverse_generator: k must be 1, 2 or 3");
  if (level == -1) level = depth_;
  if (level < 1 || level > depth_) throw DomainError("inverse_generator: level out of range");
  return inverse_perms_[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(level - 1)];
}

const Permutation& MonodromyAction::generator(int k, int level) const {
  if (k < 1 || k > 3) throw DomainError("generator: k must be 1, 2 or 3");
  if (level == -1) level = depth_;
  if (level < 1 || level > depth_) throw DomainError("generator: level out of range");
  return perms_[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(level - 1)];
}

Permutation MonodromyAction::word_perm(std::span<const int> word, int level) const {
  if (level == -1) level = depth_;
  if (level < 1 || level > depth_) throw DomainError("word_perm: level out of range");
  Permutation p = Permutation::identity(generator(1, level).size());
  for (int letter : word) {
    const int k = std::abs(letter);
    if (k < 1 || k > 3) throw DomainError("word_perm: letters must be +-1, +-2 or +-3");
    p = p.then(letter > 0 ? generator(k, level) : inverse_generator(k, level));
  }
  return p;
}

Permutation word_perm(std::span<const int> word, const PreimageTree& tree) {
  return MonodromyAction(tree).word_perm(word);
}

std::vector<int> parse_word(std::string_view text) {
  std::vector<int> word;
  std::string s(text);
  for (char& c : s) {
    if (c == ',') c = ' ';
  }
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(tok, &used);
    } catch (const std::exception&) {
      throw ParseError("parse_word: bad letter '" + tok + "'");
    }
    if (used != tok.size() || v == 0 || std::abs(v) > 3) throw ParseError("parse_word: bad letter '" + tok + "'");
    word.push_back(v);
  }
  return word;
}

RelationReport relation_report(const MonodromyAction& action, int level) {
  RelationReport r;
  r.depth = level;
  for (int k = 1; k <= 3; ++k) r.generators[static_cast<std::size_t>(k - 1)] = action.generator(k, level);
  const auto& g = r.generators;

  r.involutions_ok = true;
  r.inverses_ok = true;
  for (int k = 1; k <= 3; ++k) {
    const Permutation& gk = g[static_cast<std::size_t>(k - 1)];
    const Permutation& back = action.inverse_generator(k, level);
    r.involutions_ok = r.involutions_ok && gk.then(gk).is_identity();
    // The reversed loop must undo the loop, and for an involution it is the loop itself.
    r.inverses_ok = r.inverses_ok && gk.then(back).is_identity() && back == gk;
  }
  r.braid_ok = true;
  r.coxeter_ok = true;
  r.generators_distinct = true;
  for (std::size_t j = 0; j < 3; ++j) {
    for (std::size_t k = 0; k < 3; ++k) {
      if (j == k) continue;
      const Permutation jk = g[j].then(g[k]);
      r.coxeter_ok = r.coxeter_ok && jk.power(3).is_identity();
      r.braid_ok = r.braid_ok && jk.then(g[j]) == g[k].then(g[j]).then(g[k]);
      r.generators_distinct = r.generators_distinct && !(g[j] == g[k]);
    }
  }
  const std::vector<std::vector<int>> words = {{1}, {2}, {3}, {1, 2}, {1, 3}, {2, 3}, {1, 2, 3}};
  for (const auto& w : words) r.word_orders.push_back({w, action.word_perm(w, level).order()});
  r.coxeter_element_order = r.word_orders.back().order;
  return r;
}

RelationReport verify_relations(int depth) {
  if (depth < 1 || depth > 6) throw DomainError("verify_relations: depth must be in [1, 6]");
  const MonodromyAction action(build_tree(depth));
  return relation_report(action, depth);
}

}  // namespace deltoid
