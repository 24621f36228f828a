#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "qshelf/series.hpp"

namespace qshelf {

// Nonincreasing positive parts.
using Parts = std::vector<int>;

// Number of unrestricted partitions of n.
Int partition_count(int n);

// Visit every partition of n with parts in [min_part, max_part], in
// lexicographic-descending order. n = 0 yields exactly the empty partition.
template <typename Visitor>
void for_each_partition(int n, int max_part, int min_part, Visitor&& visit) {
  if (min_part < 1) min_part = 1;
  Parts buf;
  auto rec = [&](auto&& self, int remaining, int cap) -> void {
    if (remaining == 0) {
      visit(static_cast<const Parts&>(buf));
      return;
    }
    for (int p = std::min(remaining, cap); p >= min_part; --p) {
      int rest = remaining - p;
      if (rest != 0 && rest < min_part) continue;
      buf.push_back(p);
      self(self, rest, p);
      buf.pop_back();
    }
  };
  rec(rec, n, max_part);
}

template <typename Visitor>
void for_each_partition(int n, Visitor&& visit) {
  for_each_partition(n, n, 1, std::forward<Visitor>(visit));
}

// One clause set from the combinatorial side: window geometry from k, a
// minimum part, a multiplicity bound at one part, flat-window parity, and
// optionally a ceiling whose multiplicity is confined to a small set.
struct ConditionProfile {
  int k = 2;
  int min_part = 1;            // every part >= this
  int bounded_part = 0;        // if > 0: m_{bounded_part} <= bounded_mult_max
  int bounded_mult_max = 0;
  int parity = 0;              // flat (k-1)-window sums must be == this mod 2
  std::optional<int> ceiling;  // largest part <= *ceiling
  std::vector<int> ceiling_mults;  // if nonempty, m_{*ceiling} must be a member
};

ConditionProfile official_profile(int k, int j, int i);
// j may be -1 with i = k: the first-ghost reading.
ConditionProfile ghost_profile(int k, int j, int i);
ConditionProfile h_profile(int k, int J, int j, int l, int i);

bool satisfies(const Parts& parts, const ConditionProfile& profile);

// Visit the qualifying partitions of n only, pruned to the profile's part
// range during generation.
template <typename Visitor>
void for_each_matching(int n, const ConditionProfile& profile, Visitor&& visit) {
  int max_part = profile.ceiling ? std::min(n, *profile.ceiling) : n;
  for_each_partition(n, max_part, std::max(1, profile.min_part),
                     [&](const Parts& parts) {
                       if (satisfies(parts, profile)) visit(parts);
                     });
}

Int count_with_profile(int n, const ConditionProfile& profile);

// b_{k,r}(n); decomposes r = (k-1)j + i canonically and, at edge indices
// admitting two decompositions, asserts both agree.
Int count_official(int k, int r, int n);
Int count_official_at(int k, int j, int i, int n);

// Ghost counts; r = 1 is read through (j, i) = (-1, k).
Int count_ghost(int k, int r, int n);
Int count_ghost_at(int k, int j, int i, int n);

// h-entry count, zero without enumeration on parity-vanishing cells.
Int count_h(int k, int J, int j, int l, int i, int n);

}  // namespace qshelf
