#pragma once

#include <array>
#include <span>
#include <vector>

#include "deltoid/algebra.hpp"
#include "deltoid/monodromy.hpp"
#include "deltoid/permutation.hpp"

namespace deltoid {

/// One lift of an s'-path through s -> eps (s^2 - 2).
struct ChebyshevArc {
  std::vector<Complex> samples;
  Complex start;
  Complex end;
  bool closed = false;
  /// Winding numbers around -2 and +2; meaningful only when closed.
  int winding_minus2 = 0;
  int winding_plus2 = 0;
};

struct ChebyshevLift {
  /// arcs[0] starts at +sqrt(2 + eps s'_0), arcs[1] at its negative.
  std::array<ChebyshevArc, 2> arcs;
  /// The two arcs end at each other's start (a double cover of the loop).
  bool arcs_exchanged = false;
};

/// Along a tangent line, f acts in the chart sigma_t as s -> eps (s^2 - 2),
/// where eps = +1 or -1 records which square root of 1/t^2 the target
/// chart uses. Lifts the path `s_target` (in the target chart) to the two
/// continuous solutions of eps (s^2 - 2) = s'. Consecutive samples are
/// subdivided linearly until the continuation is unambiguous.
ChebyshevLift chebyshev_lift_1d(std::span<const Complex> s_target, int eps = 1);

/// +1 if the principal square root of 1/t^2 is 1/t, else -1.
int chart_sign(Complex t);

/// Permutations of the tree levels induced by a loop lying in one tangent
/// line, computed purely from one-variable square-root continuation along
/// the tangent lines (never solving f(z) = w in two variables). Element k-1
/// acts on level k.
std::vector<Permutation> chebyshev_oracle_perms(const LoopPath& loop, const PreimageTree& tree);

}  // namespace deltoid
