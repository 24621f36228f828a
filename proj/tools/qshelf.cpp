#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qshelf/bivariate.hpp"
#include "qshelf/hmatrix.hpp"
#include "qshelf/partitions.hpp"
#include "qshelf/shelves.hpp"
#include "qshelf/verify.hpp"

namespace {

using namespace qshelf;

struct Ctx {
  Exp order = 60;
  bool order_given = false;
  std::string format = "table";
  int jobs = 1;
  std::string output;
};

// --order wins, then the environment, then the per-command default.
Exp resolve_order(const Ctx& ctx, Exp fallback) {
  if (ctx.order_given) return ctx.order;
  const char* v = std::getenv("QSHELF_DEFAULT_ORDER");
  if (!v || !*v) return fallback;
  char* end = nullptr;
  long long n = std::strtoll(v, &end, 10);
  if (end == v || *end != '\0' || n < 0)
    throw std::invalid_argument(
        "QSHELF_DEFAULT_ORDER must be a nonnegative integer");
  return n;
}

void emit(const Ctx& ctx, const std::string& text) {
  if (ctx.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(ctx.output, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open output file: " + ctx.output);
  f << text;
}

std::string render_series(const Series& s, const std::string& format) {
  std::ostringstream out;
  if (format == "json") {
    out << series_to_json(s).dump(2) << "\n";
  } else if (format == "csv") {
    out << "exponent,coefficient\n";
    for (Exp e = s.valuation(); e <= s.order(); ++e)
      if (s.coeff(e) != 0) out << e << "," << s.coeff(e).str() << "\n";
  } else {
    out << to_pretty_string(s) << "\n";
  }
  return out.str();
}

std::string render_bivariate(const BivariateSeries& s,
                             const std::string& format) {
  nlohmann::json arr = bivariate_to_json(s);
  std::ostringstream out;
  if (format == "json") {
    out << arr.dump(2) << "\n";
    return out.str();
  }
  if (format == "csv") out << "a,b,c\n";
  for (const auto& e : arr) {
    long long a = e.at("a").get<long long>();
    long long b = e.at("b").get<long long>();
    std::string c = e.at("c").get<std::string>();
    if (format == "csv")
      out << a << "," << b << "," << c << "\n";
    else
      out << "x^" << a << " q^" << b << ": " << c << "\n";
  }
  return out.str();
}

std::string render_hmatrix(const HMatrix& h, const std::string& format) {
  std::ostringstream out;
  if (format == "json") {
    out << hmatrix_to_json(h).dump(2) << "\n";
  } else if (format == "csv") {
    out << "row,col,exponent,coefficient\n";
    for (int i = 1; i <= h.k; ++i)
      for (int l = 1; l <= h.k; ++l) {
        const Series& s = h.at(i, l);
        for (Exp e = s.valuation(); e <= s.order(); ++e)
          if (s.coeff(e) != 0)
            out << i << "," << l << "," << e << "," << s.coeff(e).str() << "\n";
      }
  } else {
    for (int i = 1; i <= h.k; ++i)
      for (int l = 1; l <= h.k; ++l)
        out << "h[" << i << "][" << l << "] = " << to_pretty_string(h.at(i, l))
            << "\n";
  }
  return out.str();
}

std::string render_transfer(const TransferMatrix& t, const std::string& format) {
  std::ostringstream out;
  if (format == "json") {
    out << transfer_to_json(t).dump(2) << "\n";
  } else if (format == "csv") {
    out << "row,col,exponent,coefficient\n";
    for (int r = 1; r <= t.rows(); ++r)
      for (int c = 1; c <= t.k; ++c) {
        const Series& s = t.at(r, c);
        for (Exp e = s.valuation(); e <= s.order(); ++e)
          if (s.coeff(e) != 0)
            out << r << "," << c << "," << e << "," << s.coeff(e).str() << "\n";
      }
  } else {
    for (int r = 1; r <= t.rows(); ++r)
      for (int c = 1; c <= t.k; ++c)
        out << "M[" << r << "][" << c << "] = " << to_pretty_string(t.at(r, c))
            << "\n";
  }
  return out.str();
}

int cmd_series(const Ctx& ctx, int k, int i, int j, bool ghost,
               const std::string& source) {
  if (k < 2) throw std::invalid_argument("--k must be at least 2");
  if (j < 0) throw std::invalid_argument("--j must be nonnegative");
  Exp N = resolve_order(ctx, 60);
  Series s;
  if (source == "product") {
    if (ghost)
      throw std::invalid_argument("the product sides have no ghost variant");
    if (j != 0)
      throw std::invalid_argument("--source product is the shelf-0 family");
    if (i < 1 || i > k) throw std::invalid_argument("--i must be in 1..k");
    s = product_side(k, i, N);
  } else if (source == "closed") {
    if (ghost) {
      if (i < 2 || i > k)
        throw std::invalid_argument("ghost series take --i in 2..k");
      s = closed_form_ghost(k, j, i, N);
    } else {
      if (i < 1 || i > k) throw std::invalid_argument("--i must be in 1..k");
      s = closed_form_official(k, j, i, N);
    }
  } else {
    throw std::invalid_argument("--source must be closed or product");
  }
  emit(ctx, render_series(s, ctx.format));
  return 0;
}

int cmd_count(const Ctx& ctx, int k, const std::string& kind, long long r,
              int J, int j, int l, int i, long long n_max,
              const std::string& witness) {
  if (k < 2) throw std::invalid_argument("--k must be at least 2");
  if (n_max < 0) throw std::invalid_argument("--n-max must be nonnegative");

  ConditionProfile profile;
  long long r_col = r;
  std::function<Int(long long)> counter;
  if (kind == "official") {
    if (r < 1) throw std::invalid_argument("official counts take --r >= 1");
    int jj = static_cast<int>((r - 1) / (k - 1));
    int ii = static_cast<int>((r - 1) % (k - 1)) + 1;
    profile = official_profile(k, jj, ii);
    counter = [=](long long n) {
      return count_official(k, static_cast<int>(r), static_cast<int>(n));
    };
  } else if (kind == "ghost") {
    if (r < 1) throw std::invalid_argument("ghost counts take --r >= 1");
    if (r == 1) {
      profile = ghost_profile(k, -1, k);
    } else {
      int jj = static_cast<int>((r - 2) / (k - 1));
      int ii = static_cast<int>((r - 2) % (k - 1)) + 2;
      profile = ghost_profile(k, jj, ii);
    }
    counter = [=](long long n) {
      return count_ghost(k, static_cast<int>(r), static_cast<int>(n));
    };
  } else if (kind == "h") {
    if (J < 0 || j <= J)
      throw std::invalid_argument("h counts need 0 <= J < j");
    if (l < 1 || l > k || i < 1 || i > k)
      throw std::invalid_argument("--l and --i must be in 1..k");
    profile = h_profile(k, J, j, l, i);
    r_col = static_cast<long long>(k - 1) * j + l;
    counter = [=](long long n) {
      return count_h(k, J, j, l, i, static_cast<int>(n));
    };
  } else {
    throw std::invalid_argument("--kind must be official, ghost, or h");
  }

  std::ostringstream out;
  if (ctx.format == "json") {
    nlohmann::json rows = nlohmann::json::array();
    for (long long n = 0; n <= n_max; ++n) {
      nlohmann::json row{{"k", k},
                         {"r", r_col},
                         {"n", n},
                         {"kind", kind},
                         {"count", counter(n).str()}};
      if (kind == "h") {
        row["J"] = J;
        row["j"] = j;
        row["l"] = l;
        row["i"] = i;
      }
      rows.push_back(std::move(row));
    }
    out << rows.dump(2) << "\n";
  } else {
    out << (ctx.format == "csv" ? "k,r,n,kind,count\n" : "k r n kind count\n");
    const char* sep = ctx.format == "csv" ? "," : " ";
    for (long long n = 0; n <= n_max; ++n)
      out << k << sep << r_col << sep << n << sep << kind << sep
          << counter(n).str() << "\n";
  }
  emit(ctx, out.str());

  if (!witness.empty()) {
    std::ostringstream w;
    for (long long n = 0; n <= n_max; ++n)
      for_each_matching(static_cast<int>(n), profile, [&](const Parts& parts) {
        w << nlohmann::json(parts).dump() << "\n";
      });
    if (witness == "-") {
      std::cout << w.str();
    } else {
      std::ofstream f(witness, std::ios::binary);
      if (!f)
        throw std::invalid_argument("cannot open witness file: " + witness);
      f << w.str();
    }
  }
  return 0;
}

int cmd_hmatrix(const Ctx& ctx, int k, int J, int j,
                const std::string& transfer, bool limit, int i) {
  if (k < 2) throw std::invalid_argument("--k must be at least 2");
  Exp N = resolve_order(ctx, 60);
  if (limit) {
    if (J < 0) throw std::invalid_argument("--J must be nonnegative");
    if (i < 1 || i > k)
      throw std::invalid_argument("--limit needs --i in 1..k");
    emit(ctx, render_series(h_limit(k, J, i, N), ctx.format));
    return 0;
  }
  if (!transfer.empty()) {
    TransferKind kind;
    if (transfer == "A")
      kind = TransferKind::A;
    else if (transfer == "B")
      kind = TransferKind::B;
    else if (transfer == "Btilde")
      kind = TransferKind::Btilde;
    else
      throw std::invalid_argument("--transfer must be A, B, or Btilde");
    int j_min = kind == TransferKind::Btilde ? 0 : 1;
    if (j < j_min)
      throw std::invalid_argument("--j is too small for this transfer kind");
    emit(ctx, render_transfer(build_transfer(k, j, kind, N), ctx.format));
    return 0;
  }
  if (J < 0 || j < J)
    throw std::invalid_argument("h matrices need 0 <= J <= j");
  emit(ctx, render_hmatrix(h_build(k, J, j, N), ctx.format));
  return 0;
}

int cmd_dictionary(const Ctx& ctx, int k, int i, bool ghost, int specialize_j) {
  if (k < 2) throw std::invalid_argument("--k must be at least 2");
  Exp N = resolve_order(ctx, 60);
  BivariateSeries s;
  if (ghost) {
    if (i < 1 || i > k - 1)
      throw std::invalid_argument("the ghost dictionary takes --i in 1..k-1");
    s = jtildetilde(k, i, N);
  } else {
    if (i < 1 || i > k) throw std::invalid_argument("--i must be in 1..k");
    s = jtilde(k, i, N);
  }
  if (specialize_j >= 0)
    emit(ctx, render_series(specialize(s, specialize_j), ctx.format));
  else
    emit(ctx, render_bivariate(s, ctx.format));
  return 0;
}

Fault parse_fault(const std::string& text) {
  std::vector<std::string> pieces;
  std::string cur;
  for (char ch : text) {
    if (ch == ':') {
      pieces.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  pieces.push_back(cur);
  if (pieces.size() != 4)
    throw std::invalid_argument(
        "--inject-fault expects stage:r:exponent:delta");
  Fault f;
  if (pieces[0] == "compare")
    f.stage = Fault::Stage::compare;
  else if (pieces[0] == "recursion-ghost")
    f.stage = Fault::Stage::recursion_ghost;
  else
    throw std::invalid_argument(
        "fault stage must be compare or recursion-ghost");
  f.r = std::stoll(pieces[1]);
  f.exponent = std::stoll(pieces[2]);
  f.delta = Int(pieces[3]);
  if (f.r < 0) throw std::invalid_argument("fault r must be nonnegative");
  if (f.exponent < 0)
    throw std::invalid_argument("fault exponent must be nonnegative");
  if (f.delta == 0) throw std::invalid_argument("fault delta must be nonzero");
  return f;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{
      "andrews-bressoud", "counts", "ghost-counts", "recursion",
      "edge-match",       "eh",     "matrix",       "h-limit",
      "hcomb",            "jacobi", "dictionary"};
  return names;
}

VerifyReport run_suite(const std::string& suite, const Ctx& ctx, int k,
                       int j_max, int J_max, long long n_max,
                       std::optional<EHStrength> strength, const Fault* fault) {
  auto kk = [&](int d) { return k < 0 ? d : k; };
  auto jm = [&](int d) { return j_max < 0 ? d : j_max; };
  auto Jm = [&](int d) { return J_max < 0 ? d : J_max; };
  auto nm = [&](long long d) { return n_max < 0 ? d : n_max; };
  if (suite == "andrews-bressoud")
    return verify_andrews_bressoud(kk(6), nm(30), ctx.jobs, fault);
  if (suite == "counts")
    return verify_official_counts(kk(4), Jm(2), nm(25), ctx.jobs, fault);
  if (suite == "ghost-counts")
    return verify_ghost_counts(kk(4), Jm(2), nm(25), ctx.jobs, fault);
  if (suite == "recursion")
    return verify_recursion(kk(5), jm(8), resolve_order(ctx, 60), ctx.jobs,
                            fault);
  if (suite == "edge-match")
    return verify_edge_matching(kk(6), jm(8), resolve_order(ctx, 60), ctx.jobs,
                                fault);
  if (suite == "eh") return verify_eh(kk(5), jm(12), strength, ctx.jobs, fault);
  if (suite == "matrix") {
    int top = kk(5);
    return verify_matrix(std::min(3, top), top, jm(6), resolve_order(ctx, 40),
                         ctx.jobs, fault);
  }
  if (suite == "h-limit")
    return verify_h_limit(kk(5), Jm(3), resolve_order(ctx, 40), ctx.jobs,
                          fault);
  if (suite == "hcomb") {
    int top = kk(4);
    return verify_hcomb(std::min(3, top), top, Jm(2), nm(22), ctx.jobs, fault);
  }
  if (suite == "jacobi")
    return verify_jacobi(kk(6), resolve_order(ctx, 100), ctx.jobs, fault);
  if (suite == "dictionary")
    return verify_dictionary(kk(5), jm(5), resolve_order(ctx, 50), ctx.jobs,
                             fault);
  throw std::invalid_argument("unknown suite: " + suite);
}

// The per-report CSV shape: one row per checked (k, j, i, kind, strength).
int cmd_verify_eh_csv(const Ctx& ctx, int k, int j_max,
                      std::optional<EHStrength> strength, const Fault* fault) {
  int k_max = k < 0 ? 5 : k;
  int top_j = j_max < 0 ? 12 : j_max;
  std::vector<EHStrength> strengths;
  if (strength)
    strengths.push_back(*strength);
  else
    strengths = {EHStrength::standard, EHStrength::strong};
  auto strength_name = [](EHStrength s) {
    switch (s) {
      case EHStrength::weak: return "weak";
      case EHStrength::standard: return "standard";
      default: return "strong";
    }
  };
  std::ostringstream out;
  out << "k,j,i,kind,strength,f,pass\n";
  bool all_pass = true;
  nlohmann::json cert;
  for (int kv = 2; kv <= k_max; ++kv)
    for (int j = 0; j <= top_j; ++j) {
      ShelfTable table =
          build_by_recursion(kv, j, 2 * (static_cast<Exp>(j) + 2), fault);
      for (int i = 1; i <= kv; ++i)
        for (int ghost = 0; ghost <= (i >= 2 ? 1 : 0); ++ghost)
          for (EHStrength st : strengths) {
            // same scope as the suite: k = 2 ghosts satisfy only the
            // standard form (their q^{j+2} term cancels)
            if (ghost && st == EHStrength::strong && kv == 2) continue;
            EHReport rep = eh_check(table, j, i, st, ghost != 0);
            out << kv << "," << j << "," << i << ","
                << (ghost ? "ghost" : "official") << "," << strength_name(st)
                << "," << rep.f << "," << (rep.pass ? "true" : "false")
                << "\n";
            if (!rep.pass && all_pass) {
              all_pass = false;
              cert = nlohmann::json{{"suite", "eh"},
                                    {"k", kv},
                                    {"j", j},
                                    {"i", i},
                                    {"kind", ghost ? "ghost" : "official"},
                                    {"strength", strength_name(st)},
                                    {"exponent", rep.f},
                                    {"leading", rep.leading.str()}};
            }
          }
    }
  emit(ctx, out.str());
  if (!all_pass) {
    std::cerr << cert.dump() << "\n";
    return 1;
  }
  return 0;
}

int cmd_verify(const Ctx& ctx, const std::string& suite, int k, int j_max,
               int J_max, long long n_max, const std::string& strength_str,
               const std::string& fault_str) {
  std::optional<EHStrength> strength;
  if (!strength_str.empty()) {
    if (strength_str == "weak")
      strength = EHStrength::weak;
    else if (strength_str == "standard")
      strength = EHStrength::standard;
    else if (strength_str == "strong")
      strength = EHStrength::strong;
    else
      throw std::invalid_argument(
          "--strength must be weak, standard, or strong");
  }
  Fault fault;
  const Fault* fp = nullptr;
  if (!fault_str.empty()) {
    fault = parse_fault(fault_str);
    fp = &fault;
  }

  std::vector<std::string> selected;
  if (suite == "all") {
    selected = suite_names();
  } else {
    const auto& names = suite_names();
    if (std::find(names.begin(), names.end(), suite) == names.end())
      throw std::invalid_argument("unknown suite: " + suite);
    selected.push_back(suite);
  }

  if (suite == "eh" && ctx.format == "csv")
    return cmd_verify_eh_csv(ctx, k, j_max, strength, fp);

  std::vector<VerifyReport> reports;
  reports.reserve(selected.size());
  for (const auto& name : selected)
    reports.push_back(
        run_suite(name, ctx, k, j_max, J_max, n_max, strength, fp));
  bool pass = true;
  for (const auto& r : reports) pass = pass && r.pass;

  std::ostringstream out;
  if (ctx.format == "json") {
    nlohmann::json doc{{"pass", pass}, {"reports", nlohmann::json::array()}};
    for (const auto& r : reports) doc["reports"].push_back(r.to_json());
    out << doc.dump(2) << "\n";
  } else if (ctx.format == "csv") {
    out << "suite,pass,cells\n";
    for (const auto& r : reports)
      out << r.suite << "," << (r.pass ? "true" : "false") << "," << r.cells
          << "\n";
  } else {
    for (const auto& r : reports) {
      out << r.suite << ": " << (r.pass ? "PASS" : "FAIL") << " (" << r.cells
          << " cells)\n";
      if (!r.pass) out << r.certificate.dump(2) << "\n";
    }
  }
  emit(ctx, out.str());

  if (!pass) {
    for (const auto& r : reports)
      if (!r.pass) {
        std::cerr << r.certificate.dump() << "\n";
        break;
      }
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Shelf series, partition counts, and verification suites for the "
      "Andrews-Bressoud families"};
  app.require_subcommand(1);

  Ctx ctx;
  app.add_option("--order", ctx.order,
                 "Truncation order N (default: QSHELF_DEFAULT_ORDER or 60)");
  app.add_option("--format", ctx.format, "Output format")
      ->check(CLI::IsMember({"table", "json", "csv"}));
  app.add_option("--jobs", ctx.jobs, "Worker threads for verification")
      ->check(CLI::PositiveNumber);
  app.add_option("--output", ctx.output, "Write output to a file");

  int s_k = -1, s_i = -1, s_j = 0;
  bool s_ghost = false;
  std::string s_source = "closed";
  auto* series = app.add_subcommand("series", "Print one shelf series");
  series->fallthrough();
  series->add_option("--k", s_k, "Family parameter k")->required();
  series->add_option("--i", s_i, "Position on the shelf")->required();
  series->add_option("--j,--shelf", s_j, "Shelf index (default 0)");
  series->add_flag("--ghost", s_ghost, "Print the ghost variant");
  series->add_option("--source", s_source, "closed | product");

  int c_k = -1, c_J = -1, c_j = -1, c_l = -1, c_i = -1;
  long long c_r = -1, c_n = 30;
  std::string c_kind = "official", c_witness;
  auto* count = app.add_subcommand("count", "Print partition counts");
  count->fallthrough();
  count->add_option("--k", c_k, "Family parameter k")->required();
  count->add_option("--kind", c_kind, "official | ghost | h");
  count->add_option("--r", c_r, "Series index for official/ghost counts");
  count->add_option("--J", c_J, "Starting shelf for h counts");
  count->add_option("--j", c_j, "Target shelf for h counts");
  count->add_option("--l", c_l, "Column for h counts");
  count->add_option("--i", c_i, "Row for h counts");
  count->add_option("--n-max", c_n, "Largest n to count (default 30)");
  count->add_option("--witness", c_witness,
                    "Stream qualifying partitions as JSON lines to this path "
                    "('-' for stdout)");

  int m_k = -1, m_J = 0, m_j = -1, m_i = -1;
  bool m_limit = false;
  std::string m_transfer;
  auto* hmat = app.add_subcommand("hmatrix", "Print h or transfer matrices");
  hmat->fallthrough();
  hmat->add_option("--k", m_k, "Family parameter k")->required();
  hmat->add_option("--J", m_J, "Starting shelf (default 0)");
  hmat->add_option("--j", m_j, "Target shelf");
  hmat->add_option("--transfer", m_transfer, "A | B | Btilde");
  hmat->add_flag("--limit", m_limit, "Print the stabilized row limit");
  hmat->add_option("--i", m_i, "Row for --limit");

  int d_k = -1, d_i = -1, d_spec = -1;
  bool d_ghost = false;
  auto* dict = app.add_subcommand("dictionary", "Print two-variable series");
  dict->fallthrough();
  dict->add_option("--k", d_k, "Family parameter k")->required();
  dict->add_option("--i", d_i, "Series index")->required();
  dict->add_flag("--ghost", d_ghost, "Print the ghost variant");
  dict->add_option("--specialize", d_spec, "Specialize x to q^j")
      ->check(CLI::NonNegativeNumber);

  std::string v_suite, v_strength, v_fault;
  int v_k = -1, v_jmax = -1, v_Jmax = -1;
  long long v_nmax = -1;
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->fallthrough();
  verify->add_option("suite", v_suite,
                     "Suite name (andrews-bressoud, counts, ghost-counts, "
                     "recursion, edge-match, eh, matrix, h-limit, hcomb, "
                     "jacobi, dictionary, all)")
      ->required();
  verify->add_option("--k", v_k, "Largest k to check");
  verify->add_option("--j-max", v_jmax, "Largest shelf to check");
  verify->add_option("--J-max", v_Jmax, "Largest starting shelf to check");
  verify->add_option("--n-max", v_nmax, "Largest n for enumerations");
  verify->add_option("--strength", v_strength, "weak | standard | strong")
      ->check(CLI::IsMember({"weak", "standard", "strong"}));
  verify->add_option("--inject-fault", v_fault,
                     "Corrupt one coefficient: stage:r:exponent:delta with "
                     "stage in {compare, recursion-ghost}");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  ctx.order_given = app.count("--order") > 0;

  try {
    if (series->parsed())
      return cmd_series(ctx, s_k, s_i, s_j, s_ghost, s_source);
    if (count->parsed())
      return cmd_count(ctx, c_k, c_kind, c_r, c_J, c_j, c_l, c_i, c_n,
                       c_witness);
    if (hmat->parsed())
      return cmd_hmatrix(ctx, m_k, m_J, m_j, m_transfer, m_limit, m_i);
    if (dict->parsed()) return cmd_dictionary(ctx, d_k, d_i, d_ghost, d_spec);
    if (verify->parsed())
      return cmd_verify(ctx, v_suite, v_k, v_jmax, v_Jmax, v_nmax, v_strength,
                        v_fault);
  } catch (const RecursionFailedError& e) {
    nlohmann::json cert{{"reason", "strict division left a remainder"},
                        {"k", e.where.k},
                        {"j", e.where.j},
                        {"i", e.where.i},
                        {"exponent", e.exponent},
                        {"coefficient", e.coefficient.str()}};
    std::cerr << cert.dump() << "\n";
    return 1;
  } catch (const NoStabilizationError& e) {
    nlohmann::json cert{{"reason", e.what()},
                        {"k", e.k},
                        {"J", e.J},
                        {"i", e.i},
                        {"j", e.j_reached}};
    std::cerr << cert.dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
