#pragma once

#include <json.hpp>

#include <optional>
#include <string>

#include "qshelf/shelves.hpp"

namespace qshelf {

// One verification suite run: a fixed list of independent cells, each an
// exact coefficient comparison.  Cells are evaluated possibly in parallel,
// but the report always carries the first failure in cell order, so output
// is deterministic for a given job spec.

struct VerifyReport {
  std::string suite;
  bool pass = true;
  long long cells = 0;
  nlohmann::json certificate;  // null when passing

  nlohmann::json to_json() const;
};

VerifyReport verify_andrews_bressoud(int k_max, long long n_max, int jobs = 1,
                                     const Fault* fault = nullptr);
VerifyReport verify_official_counts(int k_max, int J_max, long long n_max,
                                    int jobs = 1, const Fault* fault = nullptr);
VerifyReport verify_ghost_counts(int k_max, int J_max, long long n_max,
                                 int jobs = 1, const Fault* fault = nullptr);
VerifyReport verify_recursion(int k_max, int j_max, Exp order, int jobs = 1,
                              const Fault* fault = nullptr);
VerifyReport verify_edge_matching(int k_max, int j_max, Exp order,
                                  int jobs = 1, const Fault* fault = nullptr);
// strength = nullopt runs both the standard and strong forms
VerifyReport verify_eh(int k_max, int j_max,
                       std::optional<EHStrength> strength = std::nullopt,
                       int jobs = 1, const Fault* fault = nullptr);
VerifyReport verify_matrix(int k_min, int k_max, int j_max, Exp order,
                           int jobs = 1, const Fault* fault = nullptr);
VerifyReport verify_h_limit(int k_max, int J_max, Exp order, int jobs = 1,
                            const Fault* fault = nullptr);
VerifyReport verify_hcomb(int k_min, int k_max, int J_max, long long n_max,
                          int jobs = 1, const Fault* fault = nullptr);
VerifyReport verify_jacobi(int k_max, Exp order, int jobs = 1,
                           const Fault* fault = nullptr);
VerifyReport verify_dictionary(int k_max, int j_max, Exp order, int jobs = 1,
                               const Fault* fault = nullptr);

}  // namespace qshelf
