#pragma once

#include <compare>
#include <string>
#include <vector>

namespace localpt {

struct Box {
  int i = 0, j = 0;
  auto operator<=>(const Box&) const = default;
  // componentwise order on the Young diagram
  bool below_or_equal(const Box& o) const { return i <= o.i && j <= o.j; }
};

using Partition = std::vector<int>;

std::string partition_string(const Partition& p);
Partition parse_partition(const std::string& s);
bool is_partition(const Partition& p);
int size_of(const Partition& p);

std::vector<Partition> partitions_of(int d);

struct PartitionStats {
  Partition conjugate;
  int n = 0;            // sum over boxes of the row index
  int n_conjugate = 0;  // the same statistic of the conjugate
};
PartitionStats conjugate_and_stats(const Partition& p);

// Boxes in lexicographic (row-major) order; this order indexes every box-indexed vector and matrix.
std::vector<Box> boxes_of(const Partition& p);
int box_index(const Partition& p, const Box& b);  // -1 if b not in p
std::string box_var(const Box& b);                // "p_i_j"
std::string box_key(const Box& b);                // "i_j"

struct SkewShape {
  Partition mu;            // complement inside the ambient partition
  std::vector<Box> boxes;  // sorted
  std::vector<int> box_ids;
  bool contains(const Box& b) const;
  int size() const { return int(boxes.size()); }
};

bool is_upward_closed(const Partition& lambda, const std::vector<Box>& s);
bool is_edge_connected(const std::vector<Box>& s);

// All nonempty connected upward-closed subsets, ordered by size then box list.
std::vector<SkewShape> connected_skew_shapes(const Partition& lambda);

// Vectors indexed by box_index / shape index.
using RPP = std::vector<int>;
using SkewMultiplicity = std::vector<int>;

bool is_rpp(const Partition& lambda, const RPP& n);
RPP box_sums(const Partition& lambda, const std::vector<SkewShape>& shapes, const SkewMultiplicity& m);
int weight(const std::vector<SkewShape>& shapes, const SkewMultiplicity& m);
SkewMultiplicity decompose_rpp(const Partition& lambda, const RPP& n);
int expected_dimension(const Partition& lambda, const RPP& n);

// All multiplicity tuples with weight at most max_weight, in lexicographic order.
std::vector<SkewMultiplicity> multiplicities_up_to(const std::vector<SkewShape>& shapes, int max_weight);

}  // namespace localpt
