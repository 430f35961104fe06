#pragma once

#include <algorithm>
#include <string>
#include <vector>

namespace dpcob {

/// Integer partition, parts in non-increasing order.
using Partition = std::vector<int>;

/// All partitions of n in reverse-lexicographic order: (n), (n-1,1), ..., (1,...,1).
inline std::vector<Partition> partitions(int n) {
  std::vector<Partition> out;
  Partition cur;
  auto rec = [&](auto&& self, int rest, int max_part) -> void {
    if (rest == 0) {
      out.push_back(cur);
      return;
    }
    for (int k = std::min(rest, max_part); k >= 1; --k) {
      cur.push_back(k);
      self(self, rest - k, k);
      cur.pop_back();
    }
  };
  if (n >= 0) rec(rec, n, n);
  return out;
}

inline std::string to_string(const Partition& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(p[i]);
  }
  return s + ")";
}

}  // namespace dpcob
