#pragma once

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

#include "qshelf/series.hpp"

namespace qshelf {

// Transfer-matrix machinery for rewriting a fixed shelf-J row in terms of an
// arbitrary later shelf j, and for pushing j to infinity.
//
// Conventions: h matrices are k x k with entry (i, l) holding the coefficient
// of the shelf-j official l in the expansion of the shelf-J official i.  Rows
// are updated by right-multiplication, so stepping j -> j+1 multiplies by the
// A matrix of the target shelf.

struct NoStabilizationError : std::runtime_error {
  int k = 0;
  int J = 0;
  int i = 0;
  int j_reached = 0;
  NoStabilizationError(int k_, int J_, int i_, int j_reached_,
                       const std::string& what_);
};

struct HMatrix {
  int k = 2;
  int J = 0;
  int j = 0;
  Exp order = 0;
  // entries are polynomials; coefficients above this exponent must vanish
  Exp degree_bound = 0;
  std::vector<std::vector<Series>> entries;  // [i-1][l-1], k x k

  const Series& at(int i, int l) const {
    return entries[static_cast<size_t>(i - 1)][static_cast<size_t>(l - 1)];
  }
};

enum class TransferKind { A, B, Btilde };

// A and B are k x k and inverse to each other; Btilde is (k-1) x k and sends
// the official vector of shelf j to its ghost vector.  B rows are Laurent.
struct TransferMatrix {
  int k = 2;
  int j = 0;
  TransferKind kind = TransferKind::A;
  std::vector<std::vector<Series>> entries;

  int rows() const { return static_cast<int>(entries.size()); }
  const Series& at(int r, int c) const {
    return entries[static_cast<size_t>(r - 1)][static_cast<size_t>(c - 1)];
  }
};

HMatrix h_identity(int k, int J, Exp order);

// One shelf step j -> j+1 by the row recursions.  Checks the parity pattern
// and the polynomial degree bound of every produced entry.
HMatrix h_step(const HMatrix& h);

TransferMatrix build_transfer(int k, int j, TransferKind kind, Exp order);

// Product route (identity times A_{J+1} ... A_j) and iterated h_step route.
HMatrix h_build(int k, int J, int j, Exp order);
HMatrix h_build_stepped(int k, int J, int j, Exp order);

TransferMatrix mat_mul(const TransferMatrix& a, const TransferMatrix& b);
std::vector<Series> mat_apply(const TransferMatrix& m,
                              const std::vector<Series>& v);

// Column of the h matrix that carries row i's mass at shelf j; the other of
// columns {1, 2} is identically zero there.
int tracked_column(int k, int J, int i, int j);

// Stabilized tracked column for row i, truncated to the requested order.
// Throws NoStabilizationError if the iteration misbehaves.
Series h_limit(int k, int J, int i, Exp order);

nlohmann::json hmatrix_to_json(const HMatrix& h);
nlohmann::json transfer_to_json(const TransferMatrix& m);

}  // namespace qshelf
