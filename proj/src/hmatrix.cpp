#include "qshelf/hmatrix.hpp"

#include <utility>

namespace qshelf {

namespace {

int norm2(long long x) { return static_cast<int>(((x % 2) + 2) % 2); }

// When stepping into a new shelf, column l draws on column l' of the previous
// shelf only for one parity of l': the same parity as l for odd k, the
// opposite one for even k.
bool parity_match(int k, int l, int lp) {
  return k % 2 == 1 ? norm2(l - lp) == 0 : norm2(l - lp) == 1;
}

// One row of the shelf step into shelf jn: column l collects the admissible
// columns l' <= k-l+1 and picks up (1+q^jn) q^{(l-2) jn} for l >= 2.
std::vector<Series> step_row(const std::vector<Series>& row, int k, int jn,
                             Exp order) {
  std::vector<Series> out;
  out.reserve(static_cast<size_t>(k));
  for (int l = 1; l <= k; ++l) {
    Series sum = Series::zero(order);
    for (int lp = 1; lp <= k - l + 1; ++lp)
      if (parity_match(k, l, lp)) sum = sum + row[static_cast<size_t>(lp - 1)];
    if (l >= 2)
      sum = mul_binomial(sum.shifted(static_cast<Exp>(l - 2) * jn), 1, jn)
                .truncated(order);
    out.push_back(std::move(sum));
  }
  return out;
}

std::string kind_name(TransferKind kind) {
  switch (kind) {
    case TransferKind::A:
      return "A";
    case TransferKind::B:
      return "B";
    default:
      return "Btilde";
  }
}

}  // namespace

NoStabilizationError::NoStabilizationError(int k_, int J_, int i_,
                                           int j_reached_,
                                           const std::string& what_)
    : std::runtime_error(what_ + " (k=" + std::to_string(k_) +
                         ", J=" + std::to_string(J_) +
                         ", i=" + std::to_string(i_) +
                         ", j=" + std::to_string(j_reached_) + ")"),
      k(k_),
      J(J_),
      i(i_),
      j_reached(j_reached_) {}

HMatrix h_identity(int k, int J, Exp order) {
  if (k < 2) throw std::invalid_argument("k must be at least 2");
  if (J < 0) throw std::invalid_argument("J must be nonnegative");
  HMatrix h;
  h.k = k;
  h.J = J;
  h.j = J;
  h.order = order;
  h.degree_bound = 0;
  h.entries.assign(static_cast<size_t>(k),
                   std::vector<Series>(static_cast<size_t>(k),
                                       Series::zero(order)));
  for (int i = 0; i < k; ++i)
    h.entries[static_cast<size_t>(i)][static_cast<size_t>(i)] =
        Series::one(order);
  return h;
}

HMatrix h_step(const HMatrix& h) {
  HMatrix out;
  out.k = h.k;
  out.J = h.J;
  out.j = h.j + 1;
  out.order = h.order;
  out.degree_bound = h.degree_bound + static_cast<Exp>(h.k - 1) * out.j;
  out.entries.reserve(static_cast<size_t>(h.k));
  for (int i = 1; i <= h.k; ++i)
    out.entries.push_back(
        step_row(h.entries[static_cast<size_t>(i - 1)], h.k, out.j, h.order));

  for (int i = 1; i <= out.k; ++i)
    for (int l = 1; l <= out.k; ++l) {
      const Series& s = out.at(i, l);
      bool vanish = out.k % 2 == 1
                        ? norm2(l - i) != 0
                        : norm2(static_cast<long long>(out.j) - out.J + l - i) != 0;
      if (vanish && !s.is_zero())
        throw std::logic_error("parity pattern violated in shelf step");
      for (Exp e = out.degree_bound + 1; e <= out.order; ++e)
        if (s.coeff(e) != 0)
          throw std::logic_error("degree bound violated in shelf step");
    }
  return out;
}

TransferMatrix build_transfer(int k, int j, TransferKind kind, Exp order) {
  if (k < 2) throw std::invalid_argument("k must be at least 2");
  TransferMatrix m;
  m.k = k;
  m.j = j;
  m.kind = kind;
  const Series z = Series::zero(order);

  if (kind == TransferKind::A) {
    if (j < 1) throw std::invalid_argument("A matrices start at shelf 1");
    m.entries.assign(static_cast<size_t>(k),
                     std::vector<Series>(static_cast<size_t>(k), z));
    // rows k and k-1 come straight from the edge recursions; every earlier
    // row adds one binomial term at column k-i+1 to the row two below it
    m.entries[static_cast<size_t>(k - 1)][0] = Series::one(order);
    m.entries[static_cast<size_t>(k - 2)][1] = binomial(1, j, order);
    for (int i = k - 2; i >= 1; --i) {
      auto row = m.entries[static_cast<size_t>(i + 1)];
      int c = k - i + 1;
      row[static_cast<size_t>(c - 1)] = mul_binomial(
          Series::monomial(1, static_cast<Exp>(c - 2) * j, order), 1, j);
      m.entries[static_cast<size_t>(i - 1)] = std::move(row);
    }
    return m;
  }

  if (kind == TransferKind::B) {
    if (j < 1) throw std::invalid_argument("B matrices start at shelf 1");
    m.entries.assign(static_cast<size_t>(k),
                     std::vector<Series>(static_cast<size_t>(k), z));
    Series u = unit_div(Series::one(order), binomial(1, j, order));
    m.entries[0][static_cast<size_t>(k - 1)] = Series::one(order);
    m.entries[1][static_cast<size_t>(k - 2)] = u;
    for (int i = 3; i <= k; ++i) {
      Series w = u.shifted(-static_cast<Exp>(j) * (i - 2));
      m.entries[static_cast<size_t>(i - 1)][static_cast<size_t>(k - i)] = w;
      m.entries[static_cast<size_t>(i - 1)][static_cast<size_t>(k - i + 2)] =
          -w;
    }
    return m;
  }

  if (j < 0) throw std::invalid_argument("ghost matrices start at shelf 0");
  m.entries.assign(static_cast<size_t>(k - 1),
                   std::vector<Series>(static_cast<size_t>(k), z));
  Series v = unit_div(Series::one(order), binomial(1, j + 1, order));
  Series vq = v.shifted(j + 1).truncated(order);
  for (int t = 1; t <= k - 2; ++t) {
    m.entries[static_cast<size_t>(t - 1)][static_cast<size_t>(t - 1)] = v;
    m.entries[static_cast<size_t>(t - 1)][static_cast<size_t>(t + 1)] = vq;
  }
  m.entries[static_cast<size_t>(k - 2)][static_cast<size_t>(k - 2)] = v;
  return m;
}

HMatrix h_build(int k, int J, int j, Exp order) {
  if (j < J) throw std::invalid_argument("target shelf precedes the start");
  HMatrix h = h_identity(k, J, order);
  for (int s = J + 1; s <= j; ++s) {
    TransferMatrix a = build_transfer(k, s, TransferKind::A, order);
    std::vector<std::vector<Series>> next(
        static_cast<size_t>(k),
        std::vector<Series>(static_cast<size_t>(k), Series::zero(order)));
    for (int r = 0; r < k; ++r)
      for (int c = 0; c < k; ++c) {
        Series sum = Series::zero(order);
        for (int t = 0; t < k; ++t)
          sum = sum + h.entries[static_cast<size_t>(r)][static_cast<size_t>(t)] *
                          a.entries[static_cast<size_t>(t)][static_cast<size_t>(c)];
        next[static_cast<size_t>(r)][static_cast<size_t>(c)] =
            sum.truncated(order);
      }
    h.entries = std::move(next);
    h.j = s;
    h.degree_bound += static_cast<Exp>(k - 1) * s;
  }
  return h;
}

HMatrix h_build_stepped(int k, int J, int j, Exp order) {
  if (j < J) throw std::invalid_argument("target shelf precedes the start");
  HMatrix h = h_identity(k, J, order);
  while (h.j < j) h = h_step(h);
  return h;
}

TransferMatrix mat_mul(const TransferMatrix& a, const TransferMatrix& b) {
  if (a.entries.empty() || b.entries.empty() ||
      a.entries[0].size() != b.entries.size())
    throw std::invalid_argument("matrix shapes do not match");
  TransferMatrix out;
  out.k = a.k;
  out.j = b.j;
  out.kind = a.kind;
  size_t rows = a.entries.size();
  size_t mid = b.entries.size();
  size_t cols = b.entries[0].size();
  out.entries.assign(rows, std::vector<Series>(cols));
  for (size_t r = 0; r < rows; ++r)
    for (size_t c = 0; c < cols; ++c) {
      Series sum = a.entries[r][0] * b.entries[0][c];
      for (size_t t = 1; t < mid; ++t)
        sum = sum + a.entries[r][t] * b.entries[t][c];
      out.entries[r][c] = std::move(sum);
    }
  return out;
}

std::vector<Series> mat_apply(const TransferMatrix& m,
                              const std::vector<Series>& v) {
  if (m.entries.empty() || m.entries[0].size() != v.size())
    throw std::invalid_argument("vector length does not match the matrix");
  std::vector<Series> out;
  out.reserve(m.entries.size());
  for (const auto& row : m.entries) {
    Series sum = row[0] * v[0];
    for (size_t t = 1; t < row.size(); ++t) sum = sum + row[t] * v[t];
    out.push_back(std::move(sum));
  }
  return out;
}

int tracked_column(int k, int J, int i, int j) {
  long long v = k % 2 == 1 ? i : static_cast<long long>(j) - J + i;
  return norm2(v) == 1 ? 1 : 2;
}

Series h_limit(int k, int J, int i, Exp order) {
  if (k < 2) throw std::invalid_argument("k must be at least 2");
  if (i < 1 || i > k) throw std::invalid_argument("row index out of range");
  if (J < 0) throw std::invalid_argument("J must be nonnegative");
  std::vector<Series> row(static_cast<size_t>(k), Series::zero(order));
  row[static_cast<size_t>(i - 1)] = Series::one(order);
  Series tracked = row[static_cast<size_t>(tracked_column(k, J, i, J) - 1)];
  int agree = 0;
  for (int j = J + 1;; ++j) {
    if (j > J + 4 * order + 16)
      throw NoStabilizationError(k, J, i, j,
                                 "tracked column failed to stabilize");
    row = step_row(row, k, j, order);
    int lt = tracked_column(k, J, i, j);
    if (!row[static_cast<size_t>(2 - lt)].is_zero())
      throw NoStabilizationError(k, J, i, j, "off-parity column is nonzero");
    const Series& cur = row[static_cast<size_t>(lt - 1)];
    auto mm = first_mismatch(cur, tracked);
    if (mm && *mm <= static_cast<Exp>(j) - J - 3)
      throw NoStabilizationError(k, J, i, j, "frozen prefix changed");
    if (!mm) {
      ++agree;
      if (agree >= 2 && j >= J + order + 2) return cur;
    } else {
      agree = 0;
    }
    tracked = cur;
  }
}

namespace {

nlohmann::json grid_to_json(const std::vector<std::vector<Series>>& grid) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : grid) {
    nlohmann::json cells = nlohmann::json::array();
    for (const auto& s : row) cells.push_back(series_to_json(s));
    rows.push_back(std::move(cells));
  }
  return rows;
}

}  // namespace

nlohmann::json hmatrix_to_json(const HMatrix& h) {
  return nlohmann::json{{"kind", "h"},
                        {"k", h.k},
                        {"J", h.J},
                        {"j", h.j},
                        {"order", h.order},
                        {"entries", grid_to_json(h.entries)}};
}

nlohmann::json transfer_to_json(const TransferMatrix& m) {
  return nlohmann::json{{"kind", kind_name(m.kind)},
                        {"k", m.k},
                        {"j", m.j},
                        {"entries", grid_to_json(m.entries)}};
}

}  // namespace qshelf
