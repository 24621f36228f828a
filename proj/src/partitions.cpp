#include "qshelf/partitions.hpp"

#include <stdexcept>
#include <string>

namespace qshelf {

namespace {

int norm2(long long x) { return static_cast<int>(((x % 2) + 2) % 2); }

int multiplicity(const Parts& parts, int p) {
  int c = 0;
  for (int x : parts) {
    if (x == p)
      ++c;
    else if (x < p)
      break;
  }
  return c;
}

}  // namespace

Int partition_count(int n) {
  if (n < 0) return 0;
  std::vector<Int> ways(static_cast<size_t>(n) + 1);
  ways[0] = 1;
  for (int p = 1; p <= n; ++p)
    for (int s = p; s <= n; ++s)
      ways[static_cast<size_t>(s)] += ways[static_cast<size_t>(s - p)];
  return ways[static_cast<size_t>(n)];
}

ConditionProfile official_profile(int k, int j, int i) {
  ConditionProfile pr;
  pr.k = k;
  pr.min_part = j + 1;
  pr.bounded_part = j + 1;
  pr.bounded_mult_max = k - i;
  pr.parity = norm2(static_cast<long long>(k - 1) * j + i + k);
  return pr;
}

ConditionProfile ghost_profile(int k, int j, int i) {
  ConditionProfile pr = official_profile(k, j, i);
  pr.parity = norm2(static_cast<long long>(k - 1) * j + i + k + 1);
  if (j < 0) {
    // first ghost: the floor and the bound at part j+1 = 0 are both vacuous
    pr.min_part = 1;
    pr.bounded_part = 0;
  }
  return pr;
}

ConditionProfile h_profile(int k, int J, int j, int l, int i) {
  ConditionProfile pr;
  pr.k = k;
  pr.min_part = J + 1;
  pr.bounded_part = J + 1;
  pr.bounded_mult_max = k - i;
  pr.parity = norm2(static_cast<long long>(k - 1) * j + l - k);
  pr.ceiling = j;
  if (l - 2 >= 0) pr.ceiling_mults.push_back(l - 2);
  pr.ceiling_mults.push_back(l - 1);
  return pr;
}

bool satisfies(const Parts& parts, const ConditionProfile& pr) {
  const int len = static_cast<int>(parts.size());
  const int k = pr.k;
  if (len > 0 && parts.back() < pr.min_part) return false;
  if (pr.ceiling && len > 0 && parts.front() > *pr.ceiling) return false;
  if (pr.bounded_part > 0 &&
      multiplicity(parts, pr.bounded_part) > pr.bounded_mult_max)
    return false;
  if (!pr.ceiling_mults.empty()) {
    int m = multiplicity(parts, *pr.ceiling);
    if (std::find(pr.ceiling_mults.begin(), pr.ceiling_mults.end(), m) ==
        pr.ceiling_mults.end())
      return false;
  }
  for (int t = 0; t + k - 1 < len; ++t)
    if (parts[static_cast<size_t>(t)] - parts[static_cast<size_t>(t + k - 1)] < 2)
      return false;
  for (int t = 0; t + k - 2 < len; ++t) {
    if (parts[static_cast<size_t>(t)] - parts[static_cast<size_t>(t + k - 2)] > 1)
      continue;
    long long sum = 0;
    for (int s = t; s <= t + k - 2; ++s) sum += parts[static_cast<size_t>(s)];
    if (norm2(sum) != pr.parity) return false;
  }
  return true;
}

Int count_with_profile(int n, const ConditionProfile& pr) {
  Int c = 0;
  for_each_matching(n, pr, [&](const Parts&) { ++c; });
  return c;
}

Int count_official_at(int k, int j, int i, int n) {
  return count_with_profile(n, official_profile(k, j, i));
}

Int count_official(int k, int r, int n) {
  int j = (r - 1) / (k - 1);
  int i = r - (k - 1) * j;  // 1 <= i <= k-1
  Int c = count_official_at(k, j, i, n);
  if (i == 1 && j >= 1) {
    Int alt = count_official_at(k, j - 1, k, n);
    if (alt != c)
      throw std::logic_error("edge decompositions disagree at r=" +
                             std::to_string(r) + ", n=" + std::to_string(n));
  }
  return c;
}

Int count_ghost_at(int k, int j, int i, int n) {
  return count_with_profile(n, ghost_profile(k, j, i));
}

Int count_ghost(int k, int r, int n) {
  if (r == 1) return count_ghost_at(k, -1, k, n);
  int j = (r - 2) / (k - 1);
  int i = 2 + (r - 2) % (k - 1);  // 2 <= i <= k, uniquely
  return count_ghost_at(k, j, i, n);
}

Int count_h(int k, int J, int j, int l, int i, int n) {
  bool vanish = (k % 2 == 1) ? norm2(l - i) != 0 : norm2(j - J + l - i) != 0;
  if (vanish) return 0;
  return count_with_profile(n, h_profile(k, J, j, l, i));
}

}  // namespace qshelf
