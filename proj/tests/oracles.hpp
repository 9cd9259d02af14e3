#pragma once

// Independent reference computations for the tests. None of these call the
// library code they check.

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace oracle {

using Real = boost::multiprecision::cpp_bin_float_50;

/// Mutual information in bits of two binary indicators observed over the
/// same documents, summed over the four cells of their empirical joint.
inline long double mutual_information(const std::vector<int>& x, const std::vector<int>& y) {
  const std::size_t m = x.size();
  std::array<std::array<long double, 2>, 2> joint{};
  for (std::size_t i = 0; i < m; ++i) joint[x[i]][y[i]] += 1.0L;
  long double mi = 0.0L;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const long double pxy = joint[a][b] / m;
      if (pxy == 0.0L) continue;
      const long double px = (joint[a][0] + joint[a][1]) / m;
      const long double py = (joint[0][b] + joint[1][b]) / m;
      mi += pxy * std::log2(pxy / (px * py));
    }
  }
  return mi;
}

struct Exact {
  Real h;      // H(c)
  Real h_cw;   // H(c | w)
  Real ig;
  Real rig;
};

inline Real entropy50(const Real& p) {
  using boost::multiprecision::log;
  if (p <= 0 || p >= 1) return Real(0);
  const Real ln2 = log(Real(2));
  return -(p * log(p) + (1 - p) * log(1 - p)) / ln2;
}

/// 50-digit evaluation from M, |D_k|, |D^j| and w_jk.
inline Exact exact_cell(long m, long dk, long dj, long w) {
  Exact e;
  const Real M(m);
  e.h = entropy50(Real(dk) / M);
  Real hcw = 0;
  if (dj > 0) hcw += Real(dj) / M * entropy50(Real(w) / Real(dj));
  if (m - dj > 0) hcw += Real(m - dj) / M * entropy50(Real(dk - w) / Real(m - dj));
  e.h_cw = hcw;
  e.ig = e.h - e.h_cw;
  e.rig = e.h == 0 ? Real(0) : e.ig / e.h;
  return e;
}

/// Whitespace-split word set of a text.
inline std::set<std::string> word_set(const std::string& text) {
  std::istringstream in(text);
  std::set<std::string> out;
  for (std::string w; in >> w;) out.insert(w);
  return out;
}

/// |A ∩ B| by nested loops.
inline std::size_t intersection_size(const std::vector<std::string>& a,
                                     const std::vector<std::string>& b) {
  std::size_t n = 0;
  for (const auto& x : a) {
    for (const auto& y : b) {
      if (x == y) {
        ++n;
        break;
      }
    }
  }
  return n;
}

}  // namespace oracle
