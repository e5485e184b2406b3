#include "localpt/shapes.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace localpt {

std::string partition_string(const Partition& p) {
  std::string s;
  for (size_t k = 0; k < p.size(); ++k) s += (k ? "," : "") + std::to_string(p[k]);
  return s;
}

Partition parse_partition(const std::string& s) {
  Partition p;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    size_t pos = 0;
    int v = std::stoi(item, &pos);
    if (pos != item.size()) throw std::invalid_argument("bad partition: " + s);
    p.push_back(v);
  }
  if (!is_partition(p)) throw std::invalid_argument("not a partition: " + s);
  return p;
}

bool is_partition(const Partition& p) {
  for (size_t k = 0; k < p.size(); ++k) {
    if (p[k] <= 0) return false;
    if (k && p[k] > p[k - 1]) return false;
  }
  return true;
}

int size_of(const Partition& p) {
  int s = 0;
  for (int x : p) s += x;
  return s;
}

std::vector<Partition> partitions_of(int d) {
  std::vector<Partition> out;
  Partition cur;
  std::function<void(int, int)> rec = [&](int rest, int maxpart) {
    if (rest == 0) {
      out.push_back(cur);
      return;
    }
    for (int k = std::min(rest, maxpart); k >= 1; --k) {
      cur.push_back(k);
      rec(rest - k, k);
      cur.pop_back();
    }
  };
  if (d >= 0) rec(d, d);
  return out;
}

PartitionStats conjugate_and_stats(const Partition& p) {
  PartitionStats st;
  if (!p.empty()) {
    st.conjugate.assign(p[0], 0);
    for (int row : p)
      for (int j = 0; j < row; ++j) st.conjugate[j]++;
  }
  for (size_t i = 0; i < p.size(); ++i) st.n += int(i) * p[i];
  for (size_t j = 0; j < st.conjugate.size(); ++j) st.n_conjugate += int(j) * st.conjugate[j];
  return st;
}

std::vector<Box> boxes_of(const Partition& p) {
  std::vector<Box> b;
  for (size_t i = 0; i < p.size(); ++i)
    for (int j = 0; j < p[i]; ++j) b.push_back({int(i), j});
  return b;
}

int box_index(const Partition& p, const Box& b) {
  if (b.i < 0 || b.j < 0 || b.i >= int(p.size()) || b.j >= p[b.i]) return -1;
  int k = 0;
  for (int i = 0; i < b.i; ++i) k += p[i];
  return k + b.j;
}

std::string box_var(const Box& b) { return "p_" + std::to_string(b.i) + "_" + std::to_string(b.j); }
std::string box_key(const Box& b) { return std::to_string(b.i) + "_" + std::to_string(b.j); }

bool SkewShape::contains(const Box& b) const { return std::binary_search(boxes.begin(), boxes.end(), b); }

bool is_upward_closed(const Partition& lambda, const std::vector<Box>& s) {
  for (const Box& b : s)
    for (const Box& c : boxes_of(lambda))
      if (b.below_or_equal(c) && std::find(s.begin(), s.end(), c) == s.end()) return false;
  return true;
}

bool is_edge_connected(const std::vector<Box>& s) {
  if (s.empty()) return false;
  std::vector<bool> seen(s.size(), false);
  std::vector<size_t> stack{0};
  seen[0] = true;
  size_t count = 1;
  while (!stack.empty()) {
    size_t k = stack.back();
    stack.pop_back();
    for (size_t l = 0; l < s.size(); ++l) {
      if (seen[l]) continue;
      int d = std::abs(s[k].i - s[l].i) + std::abs(s[k].j - s[l].j);
      if (d == 1) {
        seen[l] = true;
        ++count;
        stack.push_back(l);
      }
    }
  }
  return count == s.size();
}

std::vector<SkewShape> connected_skew_shapes(const Partition& lambda) {
  std::vector<SkewShape> out;
  // enumerate sub-partitions mu of lambda row by row
  Partition mu;
  std::function<void(size_t, int)> rec = [&](size_t row, int bound) {
    if (row == lambda.size()) {
      SkewShape s;
      Partition m = mu;
      while (!m.empty() && m.back() == 0) m.pop_back();
      s.mu = m;
      for (size_t i = 0; i < lambda.size(); ++i)
        for (int j = mu[i]; j < lambda[i]; ++j) s.boxes.push_back({int(i), j});
      if (s.boxes.empty() || !is_edge_connected(s.boxes)) return;
      for (const Box& b : s.boxes) s.box_ids.push_back(box_index(lambda, b));
      out.push_back(std::move(s));
      return;
    }
    for (int k = 0; k <= std::min(bound, lambda[row]); ++k) {
      mu.push_back(k);
      rec(row + 1, k);
      mu.pop_back();
    }
  };
  rec(0, lambda.empty() ? 0 : lambda[0]);
  std::sort(out.begin(), out.end(), [](const SkewShape& x, const SkewShape& y) {
    if (x.boxes.size() != y.boxes.size()) return x.boxes.size() < y.boxes.size();
    return x.boxes < y.boxes;
  });
  return out;
}

bool is_rpp(const Partition& lambda, const RPP& n) {
  auto bs = boxes_of(lambda);
  if (n.size() != bs.size()) return false;
  for (size_t k = 0; k < bs.size(); ++k) {
    if (n[k] < 0) return false;
    Box r{bs[k].i, bs[k].j + 1}, d{bs[k].i + 1, bs[k].j};
    int ir = box_index(lambda, r), id = box_index(lambda, d);
    if (ir >= 0 && n[ir] < n[k]) return false;
    if (id >= 0 && n[id] < n[k]) return false;
  }
  return true;
}

RPP box_sums(const Partition& lambda, const std::vector<SkewShape>& shapes, const SkewMultiplicity& m) {
  RPP n(size_of(lambda), 0);
  for (size_t s = 0; s < shapes.size(); ++s)
    for (int id : shapes[s].box_ids) n[id] += m[s];
  return n;
}

int weight(const std::vector<SkewShape>& shapes, const SkewMultiplicity& m) {
  int w = 0;
  for (size_t s = 0; s < shapes.size(); ++s) w += shapes[s].size() * m[s];
  return w;
}

SkewMultiplicity decompose_rpp(const Partition& lambda, const RPP& n) {
  if (!is_rpp(lambda, n)) throw std::invalid_argument("not a reverse plane partition");
  auto shapes = connected_skew_shapes(lambda);
  auto bs = boxes_of(lambda);
  SkewMultiplicity m(shapes.size(), 0);
  RPP rest = n;
  for (;;) {
    std::vector<Box> support;
    for (size_t k = 0; k < bs.size(); ++k)
      if (rest[k] > 0) support.push_back(bs[k]);
    if (support.empty()) break;
    // split the support into edge-connected components; each is a connected skew shape
    std::vector<int> comp(support.size(), -1);
    int ncomp = 0;
    for (size_t s = 0; s < support.size(); ++s) {
      if (comp[s] >= 0) continue;
      std::vector<size_t> stack{s};
      comp[s] = ncomp;
      while (!stack.empty()) {
        size_t k = stack.back();
        stack.pop_back();
        for (size_t l = 0; l < support.size(); ++l)
          if (comp[l] < 0 && std::abs(support[k].i - support[l].i) + std::abs(support[k].j - support[l].j) == 1) {
            comp[l] = ncomp;
            stack.push_back(l);
          }
      }
      ++ncomp;
    }
    for (int c = 0; c < ncomp; ++c) {
      std::vector<Box> part;
      for (size_t s = 0; s < support.size(); ++s)
        if (comp[s] == c) part.push_back(support[s]);
      std::sort(part.begin(), part.end());
      auto it = std::find_if(shapes.begin(), shapes.end(), [&](const SkewShape& sh) { return sh.boxes == part; });
      if (it == shapes.end()) throw std::logic_error("support component is not a connected skew shape");
      m[it - shapes.begin()] += 1;
      for (const Box& b : part) rest[box_index(lambda, b)] -= 1;
    }
  }
  return m;
}

int expected_dimension(const Partition& lambda, const RPP& n) {
  if (lambda.empty()) return 0;
  auto bs = boxes_of(lambda);
  int total = n[0];
  for (size_t k = 0; k < bs.size(); ++k)
    for (int a = 0; a <= 1; ++a)
      for (int b = 0; b <= 1; ++b) {
        int l = box_index(lambda, {bs[k].i + a, bs[k].j + b});
        if (l < 0) continue;
        int sign = ((a + b) % 2) ? -1 : 1;
        total -= sign * (n[l] - n[k]);
      }
  return total;
}

std::vector<SkewMultiplicity> multiplicities_up_to(const std::vector<SkewShape>& shapes, int max_weight) {
  std::vector<SkewMultiplicity> out;
  SkewMultiplicity cur(shapes.size(), 0);
  std::function<void(size_t, int)> rec = [&](size_t s, int left) {
    if (s == shapes.size()) {
      out.push_back(cur);
      return;
    }
    for (int k = 0; k * shapes[s].size() <= left; ++k) {
      cur[s] = k;
      rec(s + 1, left - k * shapes[s].size());
    }
    cur[s] = 0;
  };
  if (max_weight >= 0) rec(0, max_weight);
  return out;
}

}  // namespace localpt
