#include "fcone/combinat.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <sstream>
#include <stdexcept>

namespace fcone {

namespace {

std::uint64_t full_mask(int ambient) {
  return ambient == 0 ? 0 : (~std::uint64_t{0} >> (64 - ambient));
}

void check_ambient(int ambient) {
  if (ambient < 1 || ambient > kMaxMarkedPoints) {
    throw std::invalid_argument("number of marked points out of range: " + std::to_string(ambient));
  }
}

void check_label(int ambient, Label i) {
  if (i < 1 || i > ambient) {
    throw std::invalid_argument("label " + std::to_string(i) + " outside {1.." + std::to_string(ambient) + "}");
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

Subset::Subset(int ambient, std::uint64_t mask) : ambient_(ambient), mask_(mask) {
  check_ambient(ambient);
  if ((mask & ~full_mask(ambient)) != 0) {
    throw std::invalid_argument("subset mask has labels beyond " + std::to_string(ambient));
  }
}

Subset Subset::of(int ambient, std::initializer_list<Label> labels) {
  return of(ambient, std::vector<Label>(labels));
}

Subset Subset::of(int ambient, const std::vector<Label>& labels) {
  check_ambient(ambient);
  std::uint64_t mask = 0;
  for (Label i : labels) {
    check_label(ambient, i);
    mask |= std::uint64_t{1} << (i - 1);
  }
  return Subset(ambient, mask);
}

Subset Subset::singleton(int ambient, Label i) { return of(ambient, {i}); }

Subset Subset::full(int ambient) {
  check_ambient(ambient);
  return Subset(ambient, full_mask(ambient));
}

int Subset::size() const { return std::popcount(mask_); }

bool Subset::contains(Label i) const {
  return i >= 1 && i <= ambient_ && ((mask_ >> (i - 1)) & 1U) != 0;
}

bool Subset::is_full() const { return mask_ == full_mask(ambient_); }

Label Subset::min_label() const {
  if (mask_ == 0) throw std::logic_error("min_label of empty subset");
  return std::countr_zero(mask_) + 1;
}

Subset Subset::complement() const { return Subset(ambient_, full_mask(ambient_) & ~mask_); }

Subset Subset::united(const Subset& other) const {
  if (other.ambient_ != ambient_) throw std::invalid_argument("subsets of different label sets");
  return Subset(ambient_, mask_ | other.mask_);
}

std::vector<Label> Subset::labels() const {
  std::vector<Label> out;
  out.reserve(static_cast<std::size_t>(size()));
  for (std::uint64_t rest = mask_; rest != 0; rest &= rest - 1) {
    out.push_back(std::countr_zero(rest) + 1);
  }
  return out;
}

bool SubsetOrder::operator()(const Subset& a, const Subset& b) const {
  if (a.ambient() != b.ambient()) return a.ambient() < b.ambient();
  if (a.size() != b.size()) return a.size() < b.size();
  const std::uint64_t diff = a.mask() ^ b.mask();
  if (diff == 0) return false;
  // Equal cardinality: the set holding the smallest differing label sorts first.
  return (a.mask() & (diff & -diff)) != 0;
}

std::string to_string(const Subset& s) {
  std::string out;
  for (Label i : s.labels()) {
    if (!out.empty()) out += ',';
    out += std::to_string(i);
  }
  return out;
}

Subset parse_subset(std::string_view text, int ambient) {
  std::vector<Label> labels;
  text = trim(text);
  if (text.empty()) return Subset(ambient, 0);
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto token = trim(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (token.empty() || !std::all_of(token.begin(), token.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      throw std::invalid_argument("malformed subset: '" + std::string(text) + "'");
    }
    labels.push_back(std::stoi(std::string(token)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  const std::size_t count = labels.size();
  Subset s = Subset::of(ambient, labels);
  if (static_cast<std::size_t>(s.size()) != count) {
    throw std::invalid_argument("repeated label in subset: '" + std::string(text) + "'");
  }
  return s;
}

Subset canonical_key(const Subset& s, KeyMode mode) {
  const int m = s.ambient();
  const int k = s.size();
  if (mode == KeyMode::Raw) {
    if (k < 2) throw std::invalid_argument("raw boundary key needs at least two labels: {" + to_string(s) + "}");
    return s;
  }
  if (k < 1 || k > m - 1) {
    throw std::invalid_argument("empty or full subset has no complement-identified key: {" + to_string(s) + "}");
  }
  const Subset c = s.complement();
  if (k < m - k) return s;
  if (k > m - k) return c;
  return s.contains(1) ? s : c;
}

std::string to_string(const FourPartition& p) {
  std::string out;
  for (std::size_t b = 0; b < p.parts.size(); ++b) {
    if (b != 0) out += '|';
    out += '{' + to_string(p.parts[b]) + '}';
  }
  return out;
}

FourPartition parse_partition(std::string_view text, int ambient) {
  FourPartition p;
  std::size_t block = 0;
  std::size_t start = 0;
  text = trim(text);
  while (true) {
    const auto bar = text.find('|', start);
    auto token = trim(text.substr(start, bar == std::string_view::npos ? std::string_view::npos : bar - start));
    if (block >= 4 || token.size() < 2 || token.front() != '{' || token.back() != '}') {
      throw std::invalid_argument("malformed partition: '" + std::string(text) + "'");
    }
    p.parts[block++] = parse_subset(token.substr(1, token.size() - 2), ambient);
    if (bar == std::string_view::npos) break;
    start = bar + 1;
  }
  if (block != 4) throw std::invalid_argument("partition needs four blocks: '" + std::string(text) + "'");
  std::sort(p.parts.begin(), p.parts.end(), [](const Subset& a, const Subset& b) {
    return a.empty() || (!b.empty() && a.min_label() < b.min_label());
  });
  if (!is_canonical(p)) throw std::invalid_argument("not a partition into four nonempty blocks: '" + std::string(text) + "'");
  return p;
}

bool is_canonical(const FourPartition& p) {
  const int m = p.ambient();
  std::uint64_t seen = 0;
  for (std::size_t b = 0; b < 4; ++b) {
    const Subset& part = p.parts[b];
    if (part.ambient() != m || part.empty() || (seen & part.mask()) != 0) return false;
    if (b > 0 && p.parts[b - 1].min_label() >= part.min_label()) return false;
    seen |= part.mask();
  }
  return seen == full_mask(m);
}

Subset relabel(const Subset& s, const std::vector<Label>& perm) {
  std::vector<Label> image;
  for (Label i : s.labels()) image.push_back(perm.at(static_cast<std::size_t>(i - 1)));
  return Subset::of(s.ambient(), image);
}

FourPartition relabel(const FourPartition& p, const std::vector<Label>& perm) {
  FourPartition out;
  for (std::size_t b = 0; b < 4; ++b) out.parts[b] = relabel(p.parts[b], perm);
  std::sort(out.parts.begin(), out.parts.end(),
            [](const Subset& a, const Subset& b) { return a.min_label() < b.min_label(); });
  return out;
}

void for_each_four_partition(int m, const std::function<void(const FourPartition&)>& visit) {
  if (m < 4) throw std::invalid_argument("no four-block partitions of " + std::to_string(m) + " labels");
  check_ambient(m);
  std::array<std::uint64_t, 4> blocks{};
  // Restricted-growth recursion: label i joins an existing block or opens the
  // next one; blocks still to be opened must fit into the remaining labels.
  std::function<void(int, int)> place = [&](int label, int used) {
    if (label > m) {
      if (used != 4) return;
      FourPartition p;
      for (std::size_t b = 0; b < 4; ++b) p.parts[b] = Subset(m, blocks[b]);
      visit(p);
      return;
    }
    const int remaining = m - label + 1;
    if (4 - used > remaining) return;
    const std::uint64_t bit = std::uint64_t{1} << (label - 1);
    for (int b = 0; b < used; ++b) {
      blocks[static_cast<std::size_t>(b)] |= bit;
      place(label + 1, used);
      blocks[static_cast<std::size_t>(b)] &= ~bit;
    }
    if (used < 4) {
      blocks[static_cast<std::size_t>(used)] |= bit;
      place(label + 1, used + 1);
      blocks[static_cast<std::size_t>(used)] &= ~bit;
    }
  };
  place(1, 0);
}

std::vector<FourPartition> enumerate_four_partitions(int m) {
  std::vector<FourPartition> out;
  if (m >= 4 && m <= kMaxMarkedPoints) out.reserve(static_cast<std::size_t>(four_partition_count(m)));
  for_each_four_partition(m, [&](const FourPartition& p) { out.push_back(p); });
  return out;
}

std::uint64_t four_partition_count(int m) {
  if (m < 4) return 0;
  // S(m,4) = (4^m - 4*3^m + 6*2^m - 4) / 24, computed by the recurrence to stay in range.
  std::array<std::uint64_t, 5> row{1, 0, 0, 0, 0};
  for (int i = 1; i <= m; ++i) {
    for (int k = 4; k >= 1; --k) row[static_cast<std::size_t>(k)] = static_cast<std::uint64_t>(k) * row[static_cast<std::size_t>(k)] + row[static_cast<std::size_t>(k - 1)];
    row[0] = 0;
  }
  return row[4];
}

PartitionShape shape_of(const FourPartition& p, std::optional<Label> special) {
  PartitionShape shape;
  for (std::size_t b = 0; b < 4; ++b) {
    shape.sizes[b] = p.parts[b].size();
    if (special && p.parts[b].contains(*special)) shape.special_part_size = p.parts[b].size();
  }
  std::sort(shape.sizes.begin(), shape.sizes.end(), std::greater<>());
  if (special && !shape.special_part_size) {
    throw std::invalid_argument("special label " + std::to_string(*special) + " not in partition");
  }
  return shape;
}

std::string to_string(const PartitionShape& shape) {
  std::ostringstream out;
  out << shape.sizes[0] << '+' << shape.sizes[1] << '+' << shape.sizes[2] << '+' << shape.sizes[3];
  if (shape.special_part_size) out << " (special in block of size " << *shape.special_part_size << ')';
  return out.str();
}

std::vector<ShapeClass> enumerate_shapes(int m, std::optional<Label> special) {
  if (m < 4) throw std::invalid_argument("no four-block partitions of " + std::to_string(m) + " labels");
  if (special) check_label(m, *special);
  std::vector<ShapeClass> out;
  std::map<PartitionShape, std::size_t> index;
  for_each_four_partition(m, [&](const FourPartition& p) {
    const PartitionShape shape = shape_of(p, special);
    auto [it, inserted] = index.try_emplace(shape, out.size());
    if (inserted) out.push_back(ShapeClass{shape, p, 0});
    ++out[it->second].orbit_size;
  });
  return out;
}

}  // namespace fcone
