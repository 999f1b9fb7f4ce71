#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "posetcalc/canonical.hpp"
#include "posetcalc/catalog.hpp"
#include "posetcalc/exponent.hpp"
#include "posetcalc/factor.hpp"
#include "posetcalc/harness.hpp"
#include "posetcalc/poset.hpp"

namespace {

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path);
  if (!f) throw posetcalc::poset_error("cannot write '" + path + "'");
  f << content;
}

int run_canon(const std::string& pfile, const std::string& qfile) {
  posetcalc::Poset p = posetcalc::read_poset_file(pfile);
  if (qfile.empty()) {
    std::cout << posetcalc::canonical_key(p).hex() << "\n";
    return 0;
  }
  posetcalc::Poset q = posetcalc::read_poset_file(qfile);
  auto iso = posetcalc::find_isomorphism(p, q);
  if (!iso) {
    std::cout << "not isomorphic\n";
    return 1;
  }
  std::cout << "isomorphic\n";
  for (std::size_t i = 0; i < iso->size(); ++i) std::cout << i << " -> " << (*iso)[i] << "\n";
  return 0;
}

int run_render(const std::string& pfile, const std::string& dot) {
  posetcalc::Poset p = posetcalc::read_poset_file(pfile);
  std::string out = posetcalc::to_dot(p);
  if (dot.empty() || dot == "-")
    std::cout << out;
  else
    write_file(dot, out);
  return 0;
}

int run_exp(const std::string& pfile, const std::string& qfile, long cap, const std::string& dot,
            bool stats) {
  posetcalc::Poset p = posetcalc::read_poset_file(pfile);
  posetcalc::Poset q = posetcalc::read_poset_file(qfile);
  posetcalc::ExpPoset e = posetcalc::exponent(p, q, cap);
  std::cout << "|P^Q| = " << e.maps.size() << "\n";
  std::cout << "h = " << (e.base.empty() ? -1 : posetcalc::heights(e.base).total) << "\n";
  std::cout << "components = " << posetcalc::components(e.base).count << "\n";
  std::cout << "|D| = " << posetcalc::d_set(e).size() << "\n";
  if (q.empty()) {
    std::cout << "|C| = undefined (Q empty)\n";
  } else {
    std::cout << "|C| = " << posetcalc::c_poset(e).poset.size() << "\n";
  }
  if (stats && !e.base.empty()) {
    posetcalc::HeightProfile h = posetcalc::heights(e.base);
    std::vector<int> hist(h.total + 1, 0);
    for (int v : h.per_element) ++hist[v];
    std::cout << "levels =";
    for (int v : hist) std::cout << " " << v;
    std::cout << "\n";
  }
  if (!dot.empty()) write_file(dot, posetcalc::to_dot(e.base, "exponent"));
  return 0;
}

int run_factor(const std::string& pfile, int catalog_limit, const std::string& cache_dir) {
  posetcalc::Poset p = posetcalc::read_poset_file(pfile);
  posetcalc::Catalog cat(catalog_limit, cache_dir);
  cat.ensure(std::min(catalog_limit, std::max(1, p.size())));
  posetcalc::FactorMultiset f = posetcalc::factorize(p, cat);
  std::cout << "poset " << posetcalc::canonical_key(p).hex() << " (n=" << p.size() << ")\n";
  if (f.factors.empty()) {
    std::cout << "trivial (no nontrivial irreducible factors)\n";
    return 0;
  }
  for (std::size_t i = 0; i < f.factors.size(); ++i)
    std::cout << f.factors[i].first.hex() << " size=" << f.representatives[i].size() << " x"
              << f.factors[i].second << "\n";
  return 0;
}

int run_enumerate(int n, bool connected, bool count_only, const std::string& cache_dir) {
  posetcalc::Catalog cat(std::max(n, 1), cache_dir);
  cat.ensure(n);
  const auto& posets = cat.posets(n);
  std::vector<int> indices;
  for (int i = 0; i < static_cast<int>(posets.size()); ++i)
    if (!connected || posetcalc::is_connected(posets[i])) indices.push_back(i);
  if (count_only) {
    std::cout << indices.size() << "\n";
    return 0;
  }
  for (int i : indices) {
    std::cout << cat.keys(n)[i].hex();
    for (auto [a, b] : posets[i].cover_pairs()) std::cout << " " << a << "<" << b;
    std::cout << "\n";
  }
  return 0;
}

int run_verify(std::vector<std::string> which, const posetcalc::CheckConfig& cfg,
               const std::string& json_path, const std::string& md_path) {
  if (which.empty()) which.push_back("all");
  std::vector<std::string> names;
  for (const std::string& w : which) {
    if (w == "all")
      for (const std::string& n : posetcalc::check_names()) names.push_back(n);
    else
      names.push_back(w);
  }
  std::vector<posetcalc::VerificationReport> reports = posetcalc::run_checks(names, cfg);
  for (const auto& r : reports) {
    const char* verdict = !r.pass() ? "FAIL" : (!r.inconclusive.empty() ? "INCONCLUSIVE" : "PASS");
    std::cout << verdict << " " << r.check_name << " cases=" << r.cases_attempted
              << " skipped=" << r.cases_skipped_cap << " failures=" << r.failures.size()
              << " inconclusive=" << r.inconclusive.size();
    if (!r.discoveries.empty()) std::cout << " discoveries=" << r.discoveries.size();
    std::cout << " (" << r.elapsed_seconds << "s)\n";
    for (const auto& f : r.failures)
      std::cout << "  failure: " << f.case_id << ": " << f.explanation << "\n";
    for (const auto& d : r.discoveries) std::cout << "  discovery: " << d << "\n";
  }
  if (!json_path.empty()) write_file(json_path, posetcalc::reports_json(reports));
  if (!md_path.empty()) write_file(md_path, posetcalc::reports_markdown(reports));
  return posetcalc::reports_exit_code(reports);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"posetcalc: finite poset arithmetic, exponentiation, factorization, and an "
               "exhaustive identity-verification harness"};
  app.require_subcommand(1);

  // canon
  std::string canon_p, canon_q;
  CLI::App* canon = app.add_subcommand("canon", "Canonical key of a poset; with two files, "
                                                "test isomorphism and print a witness map");
  canon->add_option("P", canon_p, "poset file")->required();
  canon->add_option("Q", canon_q, "optional second poset file");

  // render
  std::string render_p, render_dot;
  CLI::App* render = app.add_subcommand("render", "Emit the Hasse diagram as DOT");
  render->add_option("P", render_p, "poset file")->required();
  render->add_option("--dot", render_dot, "output file ('-' for stdout)");

  // exp
  std::string exp_p, exp_q, exp_dot;
  long exp_cap = 100000;
  bool exp_stats = false;
  CLI::App* exp = app.add_subcommand("exp", "Build P^Q and print its statistics");
  exp->add_option("P", exp_p, "poset file")->required();
  exp->add_option("Q", exp_q, "poset file")->required();
  exp->add_option("--cap", exp_cap, "element cap for the exponent poset");
  exp->add_option("--dot", exp_dot, "write the exponent Hasse diagram as DOT");
  exp->add_flag("--stats", exp_stats, "print the level histogram too");

  // factor
  std::string factor_p, factor_cache;
  int factor_limit = 8;
  CLI::App* factor = app.add_subcommand("factor", "Directly irreducible factorization");
  factor->add_option("P", factor_p, "poset file")->required();
  factor->add_option("--catalog-limit", factor_limit, "largest catalog size for divisor scans");
  factor->add_option("--cache-dir", factor_cache, "catalog cache directory");

  // enumerate
  int enum_n = 0;
  bool enum_connected = false, enum_count_only = false;
  std::string enum_cache;
  CLI::App* enumerate = app.add_subcommand("enumerate", "All posets of size n up to isomorphism");
  enumerate->add_option("--n", enum_n, "poset size")->required();
  enumerate->add_flag("--connected", enum_connected, "connected posets only");
  enumerate->add_flag("--count-only", enum_count_only, "print only the count");
  enumerate->add_option("--cache-dir", enum_cache, "catalog cache directory");

  // verify
  std::vector<std::string> verify_which;
  posetcalc::CheckConfig cfg;
  std::string verify_json, verify_md;
  CLI::App* verify = app.add_subcommand(
      "verify", "Run verification checks: all|prop1|lemma9|t2|t4t8|t5|l6l7|main|open");
  verify->add_option("checks", verify_which, "which checks to run");
  verify->add_option("--n-max", cfg.n_max, "operand size bound (0 = per-check default)");
  verify->add_option("--cap", cfg.cap, "exponent element cap");
  verify->add_option("--jobs", cfg.jobs, "worker threads (0 = hardware)");
  verify->add_option("--witness-max", cfg.witness_n_max, "witness search size bound");
  verify->add_option("--catalog-limit", cfg.catalog_limit, "factor oracle catalog bound");
  verify->add_option("--sample-rate", cfg.sample_rate, "fast-path confirmation sample rate");
  verify->add_option("--cache-dir", cfg.cache_dir, "catalog cache directory");
  verify->add_option("--json", verify_json, "write a JSON report");
  verify->add_option("--md", verify_md, "write a Markdown report");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*canon) return run_canon(canon_p, canon_q);
    if (*render) return run_render(render_p, render_dot);
    if (*exp) return run_exp(exp_p, exp_q, exp_cap, exp_dot, exp_stats);
    if (*factor) return run_factor(factor_p, factor_limit, factor_cache);
    if (*enumerate) return run_enumerate(enum_n, enum_connected, enum_count_only, enum_cache);
    if (*verify) return run_verify(verify_which, cfg, verify_json, verify_md);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
