// hkd: batch front end for Hilbert-Kunz density computations.
//
//   hkd pspace   --d 2 [--grid 64] [--csv out.csv] [--json out.json]
//   hkd curve    --d 2 --strata "[[2,-1]]" [--check-degree]
//   hkd segre    --factors '[{"type":"pspace","d":1},{"type":"pspace","d":1}]'
//   hkd estimate --ring R.json [--ideal I.json] --p 2 --n-max 7 [--tol 1/100] [--grid 64]
//   hkd ehk      --ring R.json [--ideal I.json] --p 2 --n-max 5
//   hkd dim1     --ring R.json [--ideal I.json] --p 2
//   hkd compare  --ring R.json [--ideal I.json] --p 2 --n-max 7 [--tol 1/20]
//
// Results go to stdout as JSON unless --json is given. Failures print
// {"error":{"code":...,"message":...}} on stderr. Exit codes: 0 ok, 1
// computation error, 2 bad input, 3 compare tolerance not met.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hkd/hkd.h"

using nlohmann::json;

namespace {

struct Failure {
  std::string code;
  std::string message;
  int exit_code;
};

int exit_code_for(hkd_status s) {
  switch (s) {
    case HKD_ERR_INVALID_ARGUMENT:
    case HKD_ERR_PARSE:
    case HKD_ERR_SCHEMA: return 2;
    default: return 1;
  }
}

void check(hkd_status s) {
  if (s != HKD_OK) throw Failure{hkd_status_name(s), hkd_last_error(), exit_code_for(s)};
}

[[noreturn]] void bad_input(const std::string& message) { throw Failure{"invalid_argument", message, 2}; }

// Owning wrappers for library handles and strings.
struct Deleter {
  void operator()(hkd_piecewise* p) const { hkd_piecewise_free(p); }
  void operator()(hkd_ring* p) const { hkd_ring_free(p); }
  void operator()(hkd_ideal* p) const { hkd_ideal_free(p); }
  void operator()(hkd_density* p) const { hkd_density_free(p); }
  void operator()(hkd_report* p) const { hkd_report_free(p); }
};
template <class T>
using Handle = std::unique_ptr<T, Deleter>;

std::string take(char* s) {
  std::string out = s ? s : "";
  hkd_string_free(s);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{"io_error", "cannot read " + path, 2};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Failure{"io_error", "cannot write " + path, 1};
  out << text;
  if (!out) throw Failure{"io_error", "write failed for " + path, 1};
}

// "@file" reads the payload from a file, anything else is inline JSON.
std::string inline_or_file(const std::string& arg) { return !arg.empty() && arg[0] == '@' ? read_file(arg.substr(1)) : arg; }

json parse(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Failure{"parse_error", what + ": " + e.what(), 2};
  }
}

struct Outputs {
  std::string json_path;
  std::string csv_path;

  void emit(const json& j) const {
    const std::string text = j.dump(2) + "\n";
    if (json_path.empty())
      std::fwrite(text.data(), 1, text.size(), stdout);
    else
      write_file(json_path, text);
  }
  void csv(const std::string& text) const {
    if (!csv_path.empty()) write_file(csv_path, text);
  }
};

json density_json(const hkd_density* d) {
  char* s = nullptr;
  check(hkd_density_to_json(d, &s));
  return json::parse(take(s));
}

std::string sample_csv(const hkd_piecewise* f, std::uint64_t grid) {
  char* s = nullptr;
  check(hkd_piecewise_sample_csv(f, grid, &s));
  return take(s);
}

std::string sample_csv(const hkd_density* d, std::uint64_t grid) {
  hkd_piecewise* f = nullptr;
  check(hkd_density_function(d, &f));
  Handle<hkd_piecewise> h(f);
  return sample_csv(f, grid);
}

struct Problem {
  Handle<hkd_ring> ring;
  Handle<hkd_ideal> ideal;
};

Problem load_problem(const std::string& ring_path, const std::string& ideal_path) {
  Problem pr;
  hkd_ring* r = nullptr;
  check(hkd_ring_from_json(read_file(ring_path).c_str(), &r));
  pr.ring.reset(r);
  hkd_ideal* i = nullptr;
  if (ideal_path.empty())
    check(hkd_ideal_maximal(r, &i));
  else
    check(hkd_ideal_from_json(r, read_file(ideal_path).c_str(), &i));
  pr.ideal.reset(i);
  return pr;
}

std::string rational_text(const std::string& s, const char* flag) {
  int sign = 0;
  if (hkd_rational_compare(s.c_str(), "0", &sign) != HKD_OK) bad_input(std::string(flag) + " must be a rational p/q");
  if (sign < 0) bad_input(std::string(flag) + " must be nonnegative");
  return s;
}

// ---- subcommands ----------------------------------------------------------

void run_pspace(unsigned d, std::uint64_t grid, const Outputs& out) {
  hkd_density* raw = nullptr;
  check(hkd_projective_space(d, &raw));
  Handle<hkd_density> dens(raw);
  out.csv(sample_csv(raw, grid));
  out.emit(density_json(raw));
}

void run_curve(std::uint64_t d, const std::string& strata, bool check_degree, std::uint64_t grid, const Outputs& out) {
  hkd_density* raw = nullptr;
  check(hkd_curve(d, strata.c_str(), check_degree ? 1 : 0, &raw));
  Handle<hkd_density> dens(raw);
  char* e = nullptr;
  check(hkd_ehk_curve(d, strata.c_str(), &e));
  json j = density_json(raw);
  j["ehk_formula"] = take(e);
  out.csv(sample_csv(raw, grid));
  out.emit(j);
}

struct Factor {
  Handle<hkd_piecewise> density;
  std::uint64_t e0 = 0;
  unsigned dim = 0;
};

Factor load_factor(const json& spec) {
  if (!spec.is_object() || !spec.contains("type") || !spec["type"].is_string())
    bad_input("each factor needs a \"type\"");
  const std::string type = spec["type"];
  Factor f;
  hkd_density* raw = nullptr;
  auto uint_field = [&](const char* key) -> std::uint64_t {
    if (!spec.contains(key) || !spec[key].is_number_unsigned()) bad_input(type + " factor needs a nonnegative \"" + key + "\"");
    return spec[key].get<std::uint64_t>();
  };
  if (type == "pspace") {
    const auto d = uint_field("d");
    check(hkd_projective_space(static_cast<std::uint32_t>(d), &raw));
    f.e0 = 1;
    f.dim = static_cast<unsigned>(d + 1);
  } else if (type == "curve") {
    const auto d = uint_field("d");
    if (!spec.contains("strata")) bad_input("curve factor needs \"strata\"");
    const bool chk = spec.value("check_degree", false);
    check(hkd_curve(d, spec["strata"].dump().c_str(), chk ? 1 : 0, &raw));
    f.e0 = d;
    f.dim = 2;
  } else if (type == "piecewise") {
    if (!spec.contains("density")) bad_input("piecewise factor needs \"density\"");
    f.e0 = uint_field("e0");
    f.dim = static_cast<unsigned>(uint_field("dim"));
    hkd_piecewise* p = nullptr;
    check(hkd_piecewise_from_json(spec["density"].dump().c_str(), &p));
    f.density.reset(p);
    return f;
  } else {
    bad_input("unknown factor type \"" + type + "\"");
  }
  Handle<hkd_density> dens(raw);
  hkd_piecewise* p = nullptr;
  check(hkd_density_function(raw, &p));
  f.density.reset(p);
  return f;
}

void run_segre(const std::string& factors_text, std::uint64_t grid, const Outputs& out) {
  const json spec = parse(factors_text, "--factors");
  if (!spec.is_array() || spec.empty()) bad_input("--factors must be a nonempty JSON list");
  std::vector<Factor> factors;
  for (const auto& s : spec) factors.push_back(load_factor(s));

  // HSd cutoffs: the largest support end among the densities.
  std::string cutoff = "1";
  for (const auto& f : factors) {
    char* b = nullptr;
    char* e = nullptr;
    check(hkd_piecewise_support(f.density.get(), &b, &e));
    take(b);
    if (!e) continue;
    const std::string end = take(e);
    int sign = 0;
    check(hkd_rational_compare(end.c_str(), cutoff.c_str(), &sign));
    if (sign > 0) cutoff = end;
  }
  std::vector<Handle<hkd_piecewise>> hsds;
  std::vector<const hkd_piecewise*> hs, fs;
  for (const auto& f : factors) {
    hkd_piecewise* h = nullptr;
    check(hkd_hsd(f.e0, f.dim, cutoff.c_str(), &h));
    hsds.emplace_back(h);
    hs.push_back(h);
    fs.push_back(f.density.get());
  }
  hkd_density* raw = nullptr;
  check(hkd_segre_combine(hs.data(), fs.data(), hs.size(), &raw));
  Handle<hkd_density> dens(raw);
  out.csv(sample_csv(raw, grid));
  out.emit(density_json(raw));
}

Handle<hkd_report> estimate(const Problem& pr, std::uint64_t p, std::uint64_t n_max, const std::string& tol,
                            std::uint64_t grid) {
  hkd_report* rep = nullptr;
  check(hkd_density_estimate(pr.ring.get(), pr.ideal.get(), p, n_max, tol.c_str(), grid, &rep));
  return Handle<hkd_report>(rep);
}

void run_estimate(const Problem& pr, std::uint64_t p, std::uint64_t n_max, const std::string& tol, std::uint64_t grid,
                  const Outputs& out) {
  const auto rep = estimate(pr, p, n_max, tol, grid);
  char* s = nullptr;
  check(hkd_report_to_json(rep.get(), &s));
  const json j = json::parse(take(s));
  std::uint64_t n = 0;
  check(hkd_report_final_n(rep.get(), &n));
  if (!out.csv_path.empty()) {
    check(hkd_density_sample_csv(pr.ring.get(), pr.ideal.get(), p, n, &s));
    out.csv(take(s));
  }
  out.emit(j);
}

std::optional<json> closed_form(const Problem& pr) {
  hkd_density* raw = nullptr;
  const hkd_status st = hkd_closed_form_for(pr.ring.get(), pr.ideal.get(), &raw);
  if (st == HKD_ERR_UNSUPPORTED) return std::nullopt;
  check(st);
  Handle<hkd_density> dens(raw);
  return density_json(raw);
}

void run_ehk(const Problem& pr, std::uint64_t p, std::uint64_t n_max, const Outputs& out) {
  json series = json::array();
  std::string csv = "n,q,ehk_rational\n";
  std::uint64_t q = 1;
  for (std::uint64_t n = 0; n <= n_max; ++n) {
    char* s = nullptr;
    check(hkd_ehk_riemann(pr.ring.get(), pr.ideal.get(), p, n, &s));
    const std::string v = take(s);
    series.push_back({std::to_string(n), v});
    csv += std::to_string(n) + "," + std::to_string(q) + "," + v + "\n";
    if (n < n_max) q *= p;
  }
  json j{{"p", p}, {"ehk_riemann", series}};
  const auto cf = closed_form(pr);
  j["closed_form_ehk"] = cf ? (*cf)["ehk"] : json(nullptr);
  j["closed_form_provenance"] = cf ? (*cf)["provenance"] : json(nullptr);
  out.csv(csv);
  out.emit(j);
}

void run_dim1(const Problem& pr, std::uint64_t p, std::uint64_t grid, const Outputs& out) {
  hkd_density* raw = nullptr;
  check(hkd_dim1_density(pr.ring.get(), pr.ideal.get(), p, &raw));
  Handle<hkd_density> dens(raw);
  out.csv(sample_csv(raw, grid));
  out.emit(density_json(raw));
}

int run_compare(const Problem& pr, std::uint64_t p, std::uint64_t n_max, const std::string& tol, std::uint64_t grid,
                const Outputs& out) {
  hkd_density* raw = nullptr;
  check(hkd_closed_form_for(pr.ring.get(), pr.ideal.get(), &raw));
  Handle<hkd_density> closed(raw);
  hkd_piecewise* cf = nullptr;
  check(hkd_density_function(raw, &cf));
  Handle<hkd_piecewise> closed_f(cf);

  const auto rep = estimate(pr, p, n_max, "0", grid);
  hkd_piecewise* g = nullptr;
  check(hkd_report_final_density(rep.get(), &g));
  Handle<hkd_piecewise> est_f(g);

  char* s = nullptr;
  check(hkd_piecewise_sup_diff_sampled(cf, g, grid, &s));
  const std::string sup = take(s);
  check(hkd_density_ehk(raw, &s));
  const std::string closed_ehk = take(s);
  check(hkd_report_final_ehk(rep.get(), &s));
  const std::string est_ehk = take(s);
  check(hkd_rational_distance(closed_ehk.c_str(), est_ehk.c_str(), &s));
  const std::string diff = take(s);
  int sign = 0;
  check(hkd_rational_compare(diff.c_str(), tol.c_str(), &sign));
  const bool success = sign < 0;
  std::uint64_t n = 0;
  check(hkd_report_final_n(rep.get(), &n));

  const json j{{"p", p},
               {"final_n", n},
               {"grid", grid},
               {"tol", tol},
               {"closed_form", density_json(raw)},
               {"ehk_closed_form", closed_ehk},
               {"ehk_estimate", est_ehk},
               {"ehk_difference", diff},
               {"sup_diff_sampled", sup},
               {"success", success}};
  out.csv(sample_csv(g, grid));
  out.emit(j);
  return success ? 0 : 3;
}

void print_error(const std::string& code, const std::string& message) {
  const json j{{"error", {{"code", code}, {"message", message}}}};
  std::cerr << j.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hilbert-Kunz density functions: closed forms and exact limit estimates.\n"
               "HKD_THREADS caps worker threads (default: all cores)."};
  app.require_subcommand(1);

  Outputs out;
  std::string ring_path, ideal_path, strata, factors, tol;
  std::uint64_t d = 0, p = 2, n_max = 5, grid = 64;
  bool check_degree = false;

  auto add_outputs = [&](CLI::App* sub) {
    sub->add_option("--json", out.json_path, "Write JSON here instead of stdout");
    sub->add_option("--csv", out.csv_path, "Write plot-ready CSV here");
    sub->add_option("--grid", grid, "Sampling grid denominator")->check(CLI::PositiveNumber);
  };
  auto add_problem = [&](CLI::App* sub) {
    sub->add_option("--ring", ring_path, "Ring spec JSON file")->required();
    sub->add_option("--ideal", ideal_path, "Ideal JSON file (default: the maximal ideal)");
    sub->add_option("--p", p, "Characteristic")->check(CLI::PositiveNumber);
  };

  auto* pspace = app.add_subcommand("pspace", "Density of projective space P^d");
  pspace->add_option("--d", d, "Dimension d >= 1")->required();
  add_outputs(pspace);

  auto* curve = app.add_subcommand("curve", "Density of a curve from Harder-Narasimhan data");
  curve->add_option("--d", d, "Degree of the curve")->required();
  curve->add_option("--strata", strata, "[[rank, slope], ...] inline or @file")->required();
  curve->add_flag("--check-degree", check_degree, "Require sum r_i a_i = -d");
  add_outputs(curve);

  auto* segre = app.add_subcommand("segre", "Density of a Segre product");
  segre->add_option("--factors", factors,
                    "List of {\"type\":\"pspace\",\"d\":..} | {\"type\":\"curve\",\"d\":..,\"strata\":..} | "
                    "{\"type\":\"piecewise\",\"e0\":..,\"dim\":..,\"density\":{..}}, inline or @file")
      ->required();
  add_outputs(segre);

  auto* est = app.add_subcommand("estimate", "g_n for n = 1..n_max with convergence monitoring");
  add_problem(est);
  est->add_option("--n-max", n_max, "Largest n")->check(CLI::PositiveNumber);
  est->add_option("--tol", tol, "Stop once sup |g_n - g_(n-1)| <= tol")->default_str("0");
  add_outputs(est);

  auto* ehk = app.add_subcommand("ehk", "Exact colength ratios l(R/I^[q])/q^d for n = 0..n_max");
  add_problem(ehk);
  ehk->add_option("--n-max", n_max, "Largest n");
  add_outputs(ehk);

  auto* dim1 = app.add_subcommand("dim1", "Exact density of a reduced one-dimensional ring");
  add_problem(dim1);
  add_outputs(dim1);

  auto* compare = app.add_subcommand("compare", "Closed form against the limit estimate");
  add_problem(compare);
  compare->add_option("--n-max", n_max, "Largest n")->check(CLI::PositiveNumber);
  compare->add_option("--tol", tol, "Success iff |e_HK closed - e_HK estimate| < tol")->default_str("1/20");
  add_outputs(compare);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    print_error("usage", e.what());
    return 2;
  }

  try {
    if (pspace->parsed()) {
      run_pspace(static_cast<unsigned>(d), grid, out);
    } else if (curve->parsed()) {
      run_curve(d, inline_or_file(strata), check_degree, grid, out);
    } else if (segre->parsed()) {
      run_segre(inline_or_file(factors), grid, out);
    } else if (est->parsed()) {
      const auto pr = load_problem(ring_path, ideal_path);
      run_estimate(pr, p, n_max, rational_text(tol.empty() ? "0" : tol, "--tol"), grid, out);
    } else if (ehk->parsed()) {
      const auto pr = load_problem(ring_path, ideal_path);
      run_ehk(pr, p, n_max, out);
    } else if (dim1->parsed()) {
      const auto pr = load_problem(ring_path, ideal_path);
      run_dim1(pr, p, grid, out);
    } else if (compare->parsed()) {
      if (!compare->count("--n-max")) n_max = 7;
      const auto pr = load_problem(ring_path, ideal_path);
      return run_compare(pr, p, n_max, rational_text(tol.empty() ? "1/20" : tol, "--tol"), grid, out);
    }
  } catch (const Failure& f) {
    print_error(f.code, f.message);
    return f.exit_code;
  } catch (const std::exception& e) {
    print_error("internal_error", e.what());
    return 1;
  }
  return 0;
}
