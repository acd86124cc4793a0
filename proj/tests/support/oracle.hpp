#pragma once

// Brute-force transcription of the preference index and net flow for
// equal-weight tables with step (usual) preference functions. Integer
// arithmetic only: every quantity is kept as a numerator over a fixed
// denominator, so nothing here shares code with the library kernel.

#include <cstddef>
#include <set>
#include <vector>

namespace oracle {

struct Result {
  long long criteria = 0;      // n
  long long opponents = 0;     // m - 1
  std::vector<std::vector<long long>> wins;  // Pi(i,k) * n
  std::vector<long long> plus;               // phi+ * n(m-1)
  std::vector<long long> minus;              // phi- * n(m-1)
  std::vector<long long> net;                // phi  * n(m-1)
  std::vector<std::vector<std::size_t>> classes;  // alternative indices, best first
};

inline Result brute_force(const std::vector<std::vector<int>>& scores) {
  Result r;
  const std::size_t m = scores.size();
  const std::size_t n = scores.front().size();
  r.criteria = static_cast<long long>(n);
  r.opponents = static_cast<long long>(m) - 1;
  r.wins.assign(m, std::vector<long long>(m, 0));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = 0; k < m; ++k) {
      if (i == k) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (scores[i][j] > scores[k][j]) ++r.wins[i][k];
      }
    }
  }
  r.plus.assign(m, 0);
  r.minus.assign(m, 0);
  r.net.assign(m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = 0; k < m; ++k) {
      if (i == k) continue;
      r.plus[i] += r.wins[i][k];
      r.minus[i] += r.wins[k][i];
    }
    r.net[i] = r.plus[i] - r.minus[i];
  }
  // Class index of an alternative = number of distinct net values above it.
  std::set<long long, std::greater<>> distinct(r.net.begin(), r.net.end());
  for (long long value : distinct) {
    auto& cls = r.classes.emplace_back();
    for (std::size_t i = 0; i < m; ++i) {
      if (r.net[i] == value) cls.push_back(i);
    }
  }
  return r;
}

}  // namespace oracle
