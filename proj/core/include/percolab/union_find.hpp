#pragma once

#include <cstdint>
#include <vector>

namespace percolab {

// Disjoint-set forest with union by size and path halving. Roots are chosen
// deterministically (larger size wins, equal sizes keep the smaller index) so
// component structure never depends on thread scheduling or platform.
class union_find {
 public:
  explicit union_find(int32_t n) : parent_(n), size_(n, 1) {
    for (int32_t i = 0; i < n; ++i) parent_[i] = i;
  }

  int32_t find(int32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  // Returns true if u and v were in different components.
  bool unite(int32_t u, int32_t v) {
    int32_t a = find(u), b = find(v);
    if (a == b) return false;
    if (size_[a] < size_[b] || (size_[a] == size_[b] && b < a)) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    return true;
  }

  bool connected(int32_t u, int32_t v) { return find(u) == find(v); }
  int32_t component_size(int32_t x) { return size_[find(x)]; }
  int32_t num_vertices() const { return static_cast<int32_t>(parent_.size()); }

  void reset() {
    for (int32_t i = 0; i < num_vertices(); ++i) {
      parent_[i] = i;
      size_[i] = 1;
    }
  }

 private:
  std::vector<int32_t> parent_;
  std::vector<int32_t> size_;
};

}  // namespace percolab
