#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fcone {

/// Marked points are labelled 1..m.
using Label = int;

/// Largest supported number of marked points (labels are bits of a 64-bit mask).
inline constexpr int kMaxMarkedPoints = 62;

/// A subset of {1, ..., m}, stored as a bitmask (bit i-1 <-> label i).
class Subset {
 public:
  Subset() = default;
  Subset(int ambient, std::uint64_t mask);

  static Subset of(int ambient, std::initializer_list<Label> labels);
  static Subset of(int ambient, const std::vector<Label>& labels);
  static Subset singleton(int ambient, Label i);
  static Subset full(int ambient);

  int ambient() const { return ambient_; }
  std::uint64_t mask() const { return mask_; }
  int size() const;
  bool empty() const { return mask_ == 0; }
  bool contains(Label i) const;
  bool is_full() const;
  Label min_label() const;

  Subset complement() const;
  Subset united(const Subset& other) const;
  bool disjoint(const Subset& other) const { return (mask_ & other.mask_) == 0; }

  std::vector<Label> labels() const;

  bool operator==(const Subset&) const = default;

 private:
  int ambient_ = 0;
  std::uint64_t mask_ = 0;
};

/// Orders by ambient size, then cardinality, then lexicographically on sorted
/// labels. This is the display and serialization order everywhere.
struct SubsetOrder {
  bool operator()(const Subset& a, const Subset& b) const;
};

/// "1,3,4".
std::string to_string(const Subset& s);
/// Inverse of to_string; whitespace around labels is ignored.
Subset parse_subset(std::string_view text, int ambient);

enum class KeyMode { ComplementIdentified, Raw };

/// Representative of a boundary key. In complement-identified mode this is the
/// smaller of S and S^c, with ties going to the half that contains label 1.
Subset canonical_key(const Subset& s, KeyMode mode);

/// Unordered partition of {1..m} into four nonempty blocks, blocks sorted by
/// their smallest label.
struct FourPartition {
  std::array<Subset, 4> parts;

  int ambient() const { return parts[0].ambient(); }
  bool operator==(const FourPartition&) const = default;
};

/// "{1}|{2}|{3}|{4,5}".
std::string to_string(const FourPartition& p);
FourPartition parse_partition(std::string_view text, int ambient);

/// Checks the FourPartition invariants (disjoint, nonempty, covering, sorted).
bool is_canonical(const FourPartition& p);

/// Applies a permutation of labels (perm[i-1] is the image of i) and
/// re-canonicalizes the block order.
FourPartition relabel(const FourPartition& p, const std::vector<Label>& perm);
Subset relabel(const Subset& s, const std::vector<Label>& perm);

/// Visits every 4-block partition of {1..m} exactly once. Order is
/// lexicographic in the restricted-growth string (block index of label 1,
/// label 2, ...), which lists blocks by first appearance.
void for_each_four_partition(int m, const std::function<void(const FourPartition&)>& visit);
std::vector<FourPartition> enumerate_four_partitions(int m);

/// Number of 4-block partitions of an m-set, S(m, 4).
std::uint64_t four_partition_count(int m);

struct PartitionShape {
  /// Block sizes in non-increasing order.
  std::array<int, 4> sizes{};
  /// Size of the block holding the designated special label, if any.
  std::optional<int> special_part_size;

  bool operator==(const PartitionShape&) const = default;
  auto operator<=>(const PartitionShape&) const = default;
};

PartitionShape shape_of(const FourPartition& p, std::optional<Label> special);
std::string to_string(const PartitionShape& shape);

struct ShapeClass {
  PartitionShape shape;
  /// First partition with this shape in enumeration order.
  FourPartition representative;
  std::uint64_t orbit_size = 0;
};

/// Distinct shapes of 4-block partitions of {1..m}, listed in order of first
/// appearance in the partition enumeration.
std::vector<ShapeClass> enumerate_shapes(int m, std::optional<Label> special);

}  // namespace fcone
