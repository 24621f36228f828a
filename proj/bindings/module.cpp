#include <pybind11/pybind11.h>

#include <optional>
#include <string>

#include <json.hpp>

#include "qshelf/bivariate.hpp"
#include "qshelf/hmatrix.hpp"
#include "qshelf/partitions.hpp"
#include "qshelf/shelves.hpp"
#include "qshelf/verify.hpp"

namespace py = pybind11;
using namespace qshelf;

namespace {

// Coefficients overflow machine words well inside useful orders; route every
// integer through the decimal string so Python sees exact values.
py::object big(const Int& v) {
  return py::module_::import("builtins").attr("int")(v.str());
}

py::list coeffs(const Series& s) {
  py::list out;
  for (Exp e = 0; e <= s.order(); ++e) out.append(big(s.coeff(e)));
  return out;
}

py::object json_obj(const nlohmann::json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

std::optional<EHStrength> parse_strength(const std::string& s) {
  if (s.empty()) return std::nullopt;
  if (s == "weak") return EHStrength::weak;
  if (s == "standard") return EHStrength::standard;
  if (s == "strong") return EHStrength::strong;
  throw std::invalid_argument("strength must be weak, standard, or strong");
}

}  // namespace

PYBIND11_MODULE(_qshelf, m) {
  m.doc() =
      "Truncated q-series for the shelf construction: closed forms, partition "
      "counts, transfer matrices, dictionary series, and verification suites";

  m.def(
      "series",
      [](int k, int i, int j, bool ghost, Exp order) {
        return coeffs(ghost ? closed_form_ghost(k, j, i, order)
                            : closed_form_official(k, j, i, order));
      },
      py::arg("k"), py::arg("i"), py::arg("j") = 0, py::arg("ghost") = false,
      py::arg("order") = 60,
      "Coefficients 0..order of an official or ghost series from the closed "
      "forms");

  m.def(
      "product_side",
      [](int k, int i, Exp order) { return coeffs(product_side(k, i, order)); },
      py::arg("k"), py::arg("i"), py::arg("order") = 60,
      "Coefficients of the shelf-0 product for (k, i)");

  m.def(
      "theta_quotient",
      [](int k, int i, Exp order) {
        return coeffs(theta_quotient(k, i, order));
      },
      py::arg("k"), py::arg("i"), py::arg("order") = 60,
      "Coefficients of the alternating theta sum over the Euler product");

  m.def(
      "count_official",
      [](int k, int r, int n) { return big(count_official(k, r, n)); },
      py::arg("k"), py::arg("r"), py::arg("n"),
      "Partitions of n satisfying the official conditions for series r");

  m.def(
      "count_ghost",
      [](int k, int r, int n) { return big(count_ghost(k, r, n)); },
      py::arg("k"), py::arg("r"), py::arg("n"),
      "Partitions of n satisfying the ghost conditions for series r");

  m.def(
      "count_h",
      [](int k, int J, int j, int l, int i, int n) {
        return big(count_h(k, J, j, l, i, n));
      },
      py::arg("k"), py::arg("J"), py::arg("j"), py::arg("l"), py::arg("i"),
      py::arg("n"), "Partitions of n counted by one h-matrix entry");

  m.def(
      "h_entry",
      [](int k, int J, int j, int i, int l, Exp order) {
        return coeffs(h_build(k, J, j, order).at(i, l));
      },
      py::arg("k"), py::arg("J"), py::arg("j"), py::arg("i"), py::arg("l"),
      py::arg("order") = 60, "Coefficients of one h-matrix entry");

  m.def(
      "h_limit",
      [](int k, int J, int i, Exp order) {
        return coeffs(h_limit(k, J, i, order));
      },
      py::arg("k"), py::arg("J"), py::arg("i"), py::arg("order") = 60,
      "Coefficients of the stabilized h-row limit (equals the official "
      "series)");

  m.def(
      "dictionary_terms",
      [](int k, int i, bool ghost, Exp order) {
        return json_obj(bivariate_to_json(ghost ? jtildetilde(k, i, order)
                                                : jtilde(k, i, order)));
      },
      py::arg("k"), py::arg("i"), py::arg("ghost") = false,
      py::arg("order") = 60,
      "Two-variable series terms [{a, b, c}] sorted by (b, a)");

  m.def(
      "dictionary_series",
      [](int k, int i, int j, bool ghost, Exp order) {
        BivariateSeries s =
            ghost ? jtildetilde(k, i, order) : jtilde(k, i, order);
        return coeffs(specialize(s, j));
      },
      py::arg("k"), py::arg("i"), py::arg("j"), py::arg("ghost") = false,
      py::arg("order") = 60,
      "Coefficients of the dictionary series specialized at x = q^j");

  m.def(
      "verify_products",
      [](int k_max, long long n_max, int jobs) {
        return json_obj(verify_andrews_bressoud(k_max, n_max, jobs).to_json());
      },
      py::arg("k_max") = 6, py::arg("n_max") = 30, py::arg("jobs") = 1);

  m.def(
      "verify_counts",
      [](int k_max, int J_max, long long n_max, int jobs) {
        return json_obj(
            verify_official_counts(k_max, J_max, n_max, jobs).to_json());
      },
      py::arg("k_max") = 4, py::arg("J_max") = 2, py::arg("n_max") = 25,
      py::arg("jobs") = 1);

  m.def(
      "verify_ghost_counts",
      [](int k_max, int J_max, long long n_max, int jobs) {
        return json_obj(
            verify_ghost_counts(k_max, J_max, n_max, jobs).to_json());
      },
      py::arg("k_max") = 4, py::arg("J_max") = 2, py::arg("n_max") = 25,
      py::arg("jobs") = 1);

  m.def(
      "verify_recursion",
      [](int k_max, int j_max, Exp order, int jobs) {
        return json_obj(verify_recursion(k_max, j_max, order, jobs).to_json());
      },
      py::arg("k_max") = 5, py::arg("j_max") = 8, py::arg("order") = 60,
      py::arg("jobs") = 1);

  m.def(
      "verify_edge_match",
      [](int k_max, int j_max, Exp order, int jobs) {
        return json_obj(
            verify_edge_matching(k_max, j_max, order, jobs).to_json());
      },
      py::arg("k_max") = 6, py::arg("j_max") = 8, py::arg("order") = 60,
      py::arg("jobs") = 1);

  m.def(
      "verify_eh",
      [](int k_max, int j_max, const std::string& strength, int jobs) {
        return json_obj(
            verify_eh(k_max, j_max, parse_strength(strength), jobs).to_json());
      },
      py::arg("k_max") = 5, py::arg("j_max") = 12, py::arg("strength") = "",
      py::arg("jobs") = 1);

  m.def(
      "verify_matrix",
      [](int k_min, int k_max, int j_max, Exp order, int jobs) {
        return json_obj(
            verify_matrix(k_min, k_max, j_max, order, jobs).to_json());
      },
      py::arg("k_min") = 3, py::arg("k_max") = 5, py::arg("j_max") = 6,
      py::arg("order") = 40, py::arg("jobs") = 1);

  m.def(
      "verify_h_limit",
      [](int k_max, int J_max, Exp order, int jobs) {
        return json_obj(verify_h_limit(k_max, J_max, order, jobs).to_json());
      },
      py::arg("k_max") = 5, py::arg("J_max") = 3, py::arg("order") = 40,
      py::arg("jobs") = 1);

  m.def(
      "verify_hcomb",
      [](int k_min, int k_max, int J_max, long long n_max, int jobs) {
        return json_obj(
            verify_hcomb(k_min, k_max, J_max, n_max, jobs).to_json());
      },
      py::arg("k_min") = 3, py::arg("k_max") = 4, py::arg("J_max") = 2,
      py::arg("n_max") = 22, py::arg("jobs") = 1);

  m.def(
      "verify_jacobi",
      [](int k_max, Exp order, int jobs) {
        return json_obj(verify_jacobi(k_max, order, jobs).to_json());
      },
      py::arg("k_max") = 6, py::arg("order") = 100, py::arg("jobs") = 1);

  m.def(
      "verify_dictionary",
      [](int k_max, int j_max, Exp order, int jobs) {
        return json_obj(verify_dictionary(k_max, j_max, order, jobs).to_json());
      },
      py::arg("k_max") = 5, py::arg("j_max") = 5, py::arg("order") = 50,
      py::arg("jobs") = 1);
}
