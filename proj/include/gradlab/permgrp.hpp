#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "gradlab/words.hpp"

namespace gradlab {

/// A permutation of {0..degree-1}, stored as its image array.
class Perm {
 public:
  Perm() = default;
  explicit Perm(std::vector<int> images);  // throws unless a bijection
  static Perm identity(std::size_t degree);
  /// Skips the bijection check; for images computed from other permutations.
  static Perm unchecked(std::vector<int> images);
  /// Builds a permutation from disjoint cycles, e.g. {{0,1,2},{3,4}}.
  static Perm from_cycles(std::size_t degree, const std::vector<std::vector<int>>& cycles);

  std::size_t degree() const { return images_.size(); }
  int act(int point) const;  // throws std::out_of_range
  int operator[](std::size_t point) const { return images_[point]; }
  const std::vector<int>& images() const { return images_; }

  bool is_identity() const;
  Perm inverse() const;
  Perm pow(long long e) const;
  /// Smallest point moved, or -1.
  int first_moved_point() const;

  friend bool operator==(const Perm&, const Perm&) = default;
  friend auto operator<=>(const Perm&, const Perm&) = default;

 private:
  std::vector<int> images_;
};

/// Apply p, then q.
Perm compose(const Perm& p, const Perm& q);

/// Product of generator images along a word (letters applied left to right).
Perm evaluate(std::span<const Letter> w, std::span<const Perm> generator_images, std::size_t degree);

/// Places p on points [offset, offset + p.degree()) of a permutation of the given degree.
Perm embed(const Perm& p, std::size_t offset, std::size_t degree);

struct PermHash {
  std::size_t operator()(const Perm& p) const noexcept;
};

/// A permutation group with a deterministic stabilizer chain built on
/// construction. Base points are the smallest points moved by the element
/// that forces a new level.
class PermGroup {
 public:
  PermGroup(std::size_t degree, std::vector<Perm> generators);

  std::size_t degree() const { return degree_; }
  const std::vector<Perm>& generators() const { return generators_; }
  const std::vector<int>& base() const { return base_; }

  /// Exact order; throws ResourceExhausted if it does not fit in 64 bits.
  std::uint64_t order() const;
  bool contains(const Perm& g) const;

  /// Orbit of a point under the generators, in BFS discovery order.
  std::vector<int> orbit(int point) const;

  /// All elements, BFS order from the identity over generators. Throws
  /// ResourceExhausted above `cap`.
  std::vector<Perm> elements(std::size_t cap = 1'000'000) const;

 private:
  struct Level {
    int base_point = 0;
    std::vector<int> gen_ids;       // strong generators fixing earlier base points
    std::vector<int> parent_gen;    // Schreier tree: generator reaching the point, -1 root, -2 absent
    std::vector<int> parent_point;
    std::vector<int> orbit;
  };

  void build();
  void rebuild_orbit(Level& level) const;
  Perm transversal(const Level& level, int point) const;
  /// Strips g through levels [from, end). Returns the residue and the level it
  /// failed at (levels_.size() if it sifted through).
  std::pair<Perm, std::size_t> strip(Perm g, std::size_t from) const;

  std::size_t degree_;
  std::vector<Perm> generators_;
  std::vector<Perm> strong_;
  std::vector<int> base_;
  std::vector<Level> levels_;
};

inline std::uint64_t group_order(const PermGroup& g) { return g.order(); }

/// |g| / |<h_generators>|. Throws std::invalid_argument if a listed generator
/// is not a member of g.
std::uint64_t subgroup_index(const PermGroup& g, std::span<const Perm> h_generators);

/// Diagonal action of several groups given by generator images on the
/// disjoint union of their point sets. All lists must have the same length.
/// The resulting group is the image of the intersection of kernels.
std::vector<Perm> diagonal_images(const std::vector<std::vector<Perm>>& image_lists);

/// Subgroup generated by the s-th powers of all elements of g.
PermGroup power_subgroup(const PermGroup& g, long long s, std::size_t cap = 1'000'000);

}  // namespace gradlab
