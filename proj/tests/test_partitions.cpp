#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <qshelf/partitions.hpp>
#include <qshelf/series.hpp>

#include <vector>

using namespace qshelf;

namespace {

// Filter-only oracle: enumerate every partition of n, no pruning, and apply
// the full clause check.
Int count_unpruned(int n, const ConditionProfile& pr) {
  Int c = 0;
  for_each_partition(n, [&](const Parts& parts) {
    if (satisfies(parts, pr)) ++c;
  });
  return c;
}

}  // namespace

TEST_CASE("partition function values") {
  std::vector<long long> expect{1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42};
  for (int n = 0; n <= 10; ++n)
    CHECK(partition_count(n) == Int(expect[static_cast<size_t>(n)]));
  CHECK(partition_count(40) == 37338);
  CHECK(partition_count(100) == 190569292);
}

TEST_CASE("enumeration is exact and lexicographic descending") {
  std::vector<Parts> got;
  for_each_partition(4, [&](const Parts& p) { got.push_back(p); });
  std::vector<Parts> expect{{4}, {3, 1}, {2, 2}, {2, 1, 1}, {1, 1, 1, 1}};
  CHECK(got == expect);

  int zero_count = 0;
  for_each_partition(0, [&](const Parts& p) {
    CHECK(p.empty());
    ++zero_count;
  });
  CHECK(zero_count == 1);

  long long forty = 0;
  for_each_partition(40, [&](const Parts&) { ++forty; });
  CHECK(Int(forty) == partition_count(40));
  CHECK(forty == 37338);

  // bounded enumeration: partitions of 8 with parts in [2, 5]
  std::vector<Parts> expect85{{5, 3}, {4, 4}, {4, 2, 2}, {3, 3, 2}, {2, 2, 2, 2}};
  std::vector<Parts> got85;
  for_each_partition(8, 5, 2, [&](const Parts& p) { got85.push_back(p); });
  CHECK(got85 == expect85);
}

TEST_CASE("clause checks on specific partitions") {
  auto off33 = official_profile(3, 0, 3);
  CHECK(satisfies({5}, off33));
  CHECK(!satisfies({3, 2}, off33));  // flat window sums to 5, target is even
  CHECK(satisfies({}, off33));

  // k=2 official r=2, canonical (j,i) = (1,1): even parts, gaps >= 2
  auto off22 = official_profile(2, 1, 1);
  CHECK(satisfies({6}, off22));
  CHECK(satisfies({4, 2}, off22));
  CHECK(!satisfies({3, 2}, off22));  // odd part
  CHECK(!satisfies({2, 2}, off22));  // gap 0
  CHECK(!satisfies({6, 1}, off22));  // part below the floor j+1 = 2

  CHECK(satisfies({}, ghost_profile(3, 0, 2)));
  CHECK(satisfies({}, h_profile(3, 0, 2, 1, 1)));
  CHECK(!satisfies({}, h_profile(3, 0, 2, 3, 1)));  // m_j = 0 not in {1,2}
}

TEST_CASE("official counts") {
  CHECK(count_official(2, 2, 6) == 2);  // 6 and 4+2
  CHECK(count_official(3, 3, 5) == 1);  // only (5)
  for (int k = 2; k <= 5; ++k)
    for (int r = 1; r <= 2 * k; ++r) CHECK(count_official(k, r, 0) == 1);
}

TEST_CASE("zeroth-shelf counts match the product sides") {
  for (int k = 2; k <= 4; ++k)
    for (int i = 1; i <= k; ++i) {
      Series b = product_side(k, i, 22);
      for (int n = 0; n <= 22; ++n) CHECK(b.coeff(n) == count_official_at(k, 0, i, n));
    }
}

TEST_CASE("ghost counts and decomposition identities") {
  std::vector<long long> g2{1, 1, 1, 1, 3};
  for (int n = 0; n <= 4; ++n)
    CHECK(count_ghost(3, 2, n) == Int(g2[static_cast<size_t>(n)]));
  for (int k = 2; k <= 5; ++k)
    for (int r = 1; r <= 2 * k - 3; ++r) CHECK(count_ghost(k, r, 0) == 1);

  // edge ghost equals the next shelf's second official
  for (int n = 0; n <= 16; ++n) {
    CHECK(count_ghost(3, 3, n) == count_official(3, 4, n));
    CHECK(count_ghost(3, 5, n) == count_official(3, 6, n));
    CHECK(count_ghost(4, 4, n) == count_official(4, 5, n));
  }
  // the first ghost reads as the second official
  for (int n = 0; n <= 16; ++n) {
    CHECK(count_ghost(2, 1, n) == count_official(2, 2, n));
    CHECK(count_ghost(3, 1, n) == count_official(3, 2, n));
    CHECK(count_ghost(4, 1, n) == count_official(4, 2, n));
  }
}

TEST_CASE("h counts one step past the identity shelf") {
  // k = 3, J = 0, j = 1: all parts equal 1, at most two of them
  CHECK(count_h(3, 0, 1, 1, 1, 0) == 1);
  CHECK(count_h(3, 0, 1, 1, 1, 1) == 0);
  CHECK(count_h(3, 0, 1, 1, 3, 0) == 1);
  CHECK(count_h(3, 0, 1, 2, 2, 0) == 1);
  CHECK(count_h(3, 0, 1, 2, 2, 1) == 1);
  CHECK(count_h(3, 0, 1, 2, 2, 2) == 0);
  CHECK(count_h(3, 0, 1, 3, 1, 0) == 0);
  CHECK(count_h(3, 0, 1, 3, 1, 1) == 1);
  CHECK(count_h(3, 0, 1, 3, 1, 2) == 1);
  CHECK(count_h(3, 0, 1, 3, 1, 3) == 0);
  CHECK(count_h(3, 0, 1, 3, 3, 1) == 0);  // bound k-i = 0 kills the only candidate

  // parity-vanishing cells are zero without enumeration
  CHECK(count_h(3, 0, 1, 2, 1, 0) == 0);
  CHECK(count_h(3, 0, 1, 1, 2, 0) == 0);
  // k even uses the shifted parity rule
  CHECK(count_h(4, 0, 1, 1, 1, 0) == 0);
  CHECK(count_h(4, 0, 1, 1, 2, 0) == 1);
}

TEST_CASE("h count matches a hand-iterated recursion step") {
  // k=3, J=0, i=1, j=2, l=1: recursion gives 1 + q + q^2
  std::vector<long long> expect{1, 1, 1, 0, 0};
  for (int n = 0; n <= 4; ++n)
    CHECK(count_h(3, 0, 2, 1, 1, n) == Int(expect[static_cast<size_t>(n)]));
}

TEST_CASE("pruned counting agrees with filter-only enumeration") {
  for (int n = 0; n <= 18; ++n)
    for (int k : {2, 3, 4}) {
      CHECK(count_with_profile(n, official_profile(k, 1, 1)) ==
            count_unpruned(n, official_profile(k, 1, 1)));
      CHECK(count_with_profile(n, ghost_profile(k, 1, 2)) ==
            count_unpruned(n, ghost_profile(k, 1, 2)));
      CHECK(count_with_profile(n, h_profile(k, 0, 3, 2, 2)) ==
            count_unpruned(n, h_profile(k, 0, 3, 2, 2)));
    }
}

TEST_CASE("relaxing the multiplicity bound never lowers a count") {
  for (int n = 0; n <= 15; ++n) {
    auto pr = official_profile(3, 1, 3);
    Int prev = count_with_profile(n, pr);
    for (int b = 1; b <= 3; ++b) {
      pr.bounded_mult_max = b;
      Int cur = count_with_profile(n, pr);
      CHECK(cur >= prev);
      prev = cur;
    }
  }
}

TEST_CASE("edge counts match across shelves") {
  for (int k : {2, 3, 4})
    for (int J : {0, 1})
      for (int n = 0; n <= 18; ++n)
        CHECK(count_official_at(k, J + 1, 1, n) == count_official_at(k, J, k, n));
}
