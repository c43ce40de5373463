#include "deltoid/permutation.hpp"

#include <limits>
#include <numeric>

#include "deltoid/algebra.hpp"

namespace deltoid {

Permutation::Permutation(std::vector<std::uint32_t> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (std::uint32_t v : images_) {
    if (v >= images_.size() || seen[v]) throw DomainError("Permutation: images are not a bijection");
    seen[v] = true;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<std::uint32_t> id(n);
  std::iota(id.begin(), id.end(), 0u);
  Permutation p;
  p.images_ = std::move(id);
  return p;
}

Permutation Permutation::then(const Permutation& next) const {
  if (next.size() != size()) throw DomainError("Permutation::then: size mismatch");
  Permutation p;
  p.images_.resize(size());
  for (std::size_t i = 0; i < size(); ++i) p.images_[i] = next.images_[images_[i]];
  return p;
}

Permutation Permutation::inverse() const {
  Permutation p;
  p.images_.resize(size());
  for (std::size_t i = 0; i < size(); ++i) p.images_[images_[i]] = static_cast<std::uint32_t>(i);
  return p;
}

Permutation Permutation::power(unsigned k) const {
  Permutation result = identity(size());
  for (unsigned i = 0; i < k; ++i) result = result.then(*this);
  return result;
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < size(); ++i) {
    if (images_[i] != i) return false;
  }
  return true;
}

std::vector<std::vector<std::uint32_t>> Permutation::cycles() const {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<bool> seen(size(), false);
  for (std::uint32_t start = 0; start < size(); ++start) {
    if (seen[start]) continue;
    std::vector<std::uint32_t> cycle;
    for (std::uint32_t v = start; !seen[v]; v = images_[v]) {
      seen[v] = true;
      cycle.push_back(v);
    }
    if (cycle.size() > 1) out.push_back(std::move(cycle));
  }
  return out;
}

std::uint64_t Permutation::order() const {
  std::uint64_t ord = 1;
  for (const auto& c : cycles()) {
    const std::uint64_t len = c.size();
    const std::uint64_t g = std::gcd(ord, len);
    if (ord / g > std::numeric_limits<std::uint64_t>::max() / len) {
      throw Error("Permutation::order: overflow");
    }
    ord = ord / g * len;
  }
  return ord;
}

std::string Permutation::cycle_notation() const {
  const auto cs = cycles();
  if (cs.empty()) return "()";
  std::string out;
  for (const auto& c : cs) {
    out += '(';
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i) out += ' ';
      out += std::to_string(c[i]);
    }
    out += ')';
  }
  return out;
}

Permutation Permutation::block_action(std::size_t block) const {
  if (block == 0 || size() % block != 0) throw DomainError("block_action: block size must divide size");
  const std::size_t n = size() / block;
  std::vector<std::uint32_t> img(n);
  for (std::size_t b = 0; b < n; ++b) {
    const std::uint32_t target = images_[b * block] / block;
    for (std::size_t j = 1; j < block; ++j) {
      if (images_[b * block + j] / block != target) throw Error("block_action: blocks are not preserved");
    }
    img[b] = target;
  }
  return Permutation(std::move(img));
}

}  // namespace deltoid
