#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace deltoid {

/// A bijection of {0, ..., n-1}; images()[i] is the image of i.
class Permutation {
 public:
  Permutation() = default;
  /// Throws DomainError unless `images` is a bijection.
  explicit Permutation(std::vector<std::uint32_t> images);

  static Permutation identity(std::size_t n);

  std::size_t size() const { return images_.size(); }
  std::uint32_t operator()(std::size_t i) const { return images_[i]; }
  const std::vector<std::uint32_t>& images() const { return images_; }

  /// Apply *this first, then `next`: result(i) = next(this(i)).
  Permutation then(const Permutation& next) const;
  Permutation inverse() const;
  Permutation power(unsigned k) const;
  bool is_identity() const;

  /// Cycles of length >= 2, each starting at its smallest element, ordered
  /// by that element.
  std::vector<std::vector<std::uint32_t>> cycles() const;
  /// lcm of the cycle lengths. Throws if it does not fit in 64 bits.
  std::uint64_t order() const;
  /// "(0 3)(1 2 5)"; the identity prints as "()".
  std::string cycle_notation() const;

  /// Induced action on consecutive blocks of `block` points, e.g. the
  /// depth n-1 action from a depth n action with block = 4. Throws if the
  /// blocks are not permuted as wholes.
  Permutation block_action(std::size_t block) const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::uint32_t> images_;
};

}  // namespace deltoid
