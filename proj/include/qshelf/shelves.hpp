#pragma once

#include <json.hpp>

#include <map>
#include <stdexcept>

#include "qshelf/series.hpp"

namespace qshelf {

// Address of one series: r = (k-1)j + i with 1 <= i <= k.
struct ShelfIndex {
  int k = 2;
  int j = 0;
  int i = 1;
  long long r() const { return static_cast<long long>(k - 1) * j + i; }
};

enum class Provenance { product_side, recursion, closed_form };

// A strict q-power division demanded by the shelf recursions hit a nonzero
// coefficient below the divided power: a falsification certificate at this
// truncation, naming the official under construction.
struct RecursionFailedError : std::runtime_error {
  ShelfIndex where;
  Exp exponent;
  Int coefficient;
  RecursionFailedError(ShelfIndex w, Exp e, Int c);
};

// Deliberate corruption for negative-control tests. recursion_ghost adds
// delta to the coefficient of q^exponent in the ghost with key r as soon as
// it is built; compare is consumed by the verify engine instead.
struct Fault {
  enum class Stage { none, compare, recursion_ghost };
  Stage stage = Stage::none;
  long long r = 0;
  Exp exponent = 0;
  Int delta = 1;
};

class ShelfTable {
 public:
  ShelfTable(int k, int j_max, Exp order);

  int k() const { return k_; }
  int j_max() const { return j_max_; }
  Exp order() const { return order_; }

  bool has_official(long long r) const { return officials_.count(r) > 0; }
  bool has_ghost(long long r) const { return ghosts_.count(r) > 0; }
  const Series& official(long long r) const;
  const Series& ghost(long long r) const;
  Provenance official_provenance(long long r) const;
  Provenance ghost_provenance(long long r) const;

  const std::map<long long, Series>& officials() const { return officials_; }
  const std::map<long long, Series>& ghosts() const { return ghosts_; }

  void set_official(long long r, Series s, Provenance p);
  void set_ghost(long long r, Series s, Provenance p);

 private:
  int k_;
  int j_max_;
  Exp order_;
  std::map<long long, Series> officials_;
  std::map<long long, Series> ghosts_;
  std::map<long long, Provenance> official_prov_;
  std::map<long long, Provenance> ghost_prov_;
};

// Shelf 0 from the product sides, then per shelf: ghosts by the unit
// divisions, officials on the next shelf by the strict q-power divisions.
// Builds internally above N to absorb the order lost to those divisions and
// stores every entry truncated to exactly N.
ShelfTable build_by_recursion(int k, int j_max, Exp N,
                              const Fault* fault = nullptr);

// The general closed forms, j >= 0; officials take 1 <= i <= k, ghosts
// 2 <= i <= k.
Series closed_form_official(int k, int j, int i, Exp N);
Series closed_form_ghost(int k, int j, int i, Exp N);

// The two closed-form expressions for B_{(k-1)j+1} agree: shelf j-1 at
// position k versus shelf j at position 1. Requires j >= 1.
bool edge_match_check(int k, int j, Exp N);

enum class EHStrength { weak, standard, strong };

struct EHReport {
  int k = 2;
  int j = 0;
  int i = 1;
  bool ghost = false;
  EHStrength strength = EHStrength::standard;
  Exp f = 0;    // valuation of B - 1 (order + 1 if that difference vanishes)
  Int leading;  // coefficient at f (weak) or at the threshold (others)
  bool pass = false;
};

// B_{(k-1)j+i} = 1 + q^{j+1}(...) for i <= k-1, 1 + q^{j+2}(...) for i = k;
// strong additionally wants coefficient exactly 1 at the threshold. Ghosts
// (i in 2..k) follow the same thresholds.
EHReport eh_check(const ShelfTable& table, int j, int i, EHStrength strength,
                  bool ghost = false);

// The defined extension of the first ghost: B~_1 = B_2.
Series ghost_extension_b1(const ShelfTable& table);

// Ghost decomposition into officials: the i = k edge collapses to the next
// shelf's second official; i in 2..k-1 splits into a shifted official plus
// the neighbour official on the same shelf.
bool ghost_decomposition_check(int k, int J, int i, Exp N);

nlohmann::json table_to_json(const ShelfTable& table);

}  // namespace qshelf
