// kelab command-line driver.
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "kelab/errors.hpp"
#include "kelab/suites.hpp"

namespace {

std::optional<std::uint64_t> env_seed() {
  const char* s = std::getenv("KELAB_SEED");
  if (!s || !*s) return std::nullopt;
  try {
    std::size_t used = 0;
    const auto v = std::stoull(s, &used);
    if (used != std::string(s).size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw kelab::ConfigError(std::string("KELAB_SEED is not a nonnegative integer: ") + s);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kelab: numerical checks for Kähler-Einstein potentials"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run one verification suite");
  std::string suite, domain, out;
  std::optional<int> p, q, m, n, samples;
  std::optional<double> ricci, tol;
  std::optional<std::uint64_t> seed;
  run->add_option("suite", suite, "suite name (see `kelab list`)")->required();
  run->add_option("--domain", domain, "Ball, Polydisc, TypeI, TypeII, TypeIII, TypeIV, HalfPlaneProduct, Flat");
  run->add_option("--p", p);
  run->add_option("--q", q);
  run->add_option("--m", m);
  run->add_option("--n", n);
  run->add_option("--ricci", ricci, "Ricci constant K");
  run->add_option("--samples", samples);
  run->add_option("--seed", seed);
  run->add_option("--tol", tol);
  run->add_option("--out", out, "write the JSON report here (stdout otherwise)");

  auto* all = app.add_subcommand("run-all", "run every suite listed in a config file");
  std::string config;
  int jobs = 1;
  all->add_option("--config", config, "JSON config")->required();
  all->add_option("--jobs", jobs, "concurrent suites")->check(CLI::PositiveNumber);

  auto* list = app.add_subcommand("list", "list suites and the operations they exercise");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*list) {
      for (const auto& s : kelab::suite_catalog()) {
        std::cout << s.name << "\n  " << s.summary << "\n  operations:";
        for (const auto& op : s.operations) std::cout << " " << op;
        std::cout << "\n";
      }
      return 0;
    }
    if (*all) {
      return kelab::run_all(config, jobs, std::cerr, env_seed());
    }

    kelab::json cfg = kelab::json::object();
    if (!domain.empty()) cfg["domain"] = domain;
    if (p) cfg["p"] = *p;
    if (q) cfg["q"] = *q;
    if (m) cfg["m"] = *m;
    if (n) cfg["n"] = *n;
    if (ricci) cfg["ricci"] = *ricci;
    if (samples) cfg["samples"] = *samples;
    if (tol) cfg["tol"] = *tol;
    if (seed) cfg["seed"] = *seed;
    if (const auto s = env_seed()) cfg["seed"] = *s;
    if (!domain.empty() && !n && !p && !m) {
      std::cerr << "error: --domain needs its size parameter (--n, --p/--q or --m)\n";
      return 2;
    }
    if (suite == "cheng-yau" && !out.empty())
      cfg["csv"] = std::filesystem::path(out).replace_extension(".csv").string();

    const auto report = kelab::run_suite(suite, cfg);
    const std::string text = report.to_json().dump(2);
    if (out.empty()) {
      std::cout << text << "\n";
    } else {
      std::ofstream f(out);
      if (!f) {
        std::cerr << "error: cannot write " << out << "\n";
        return 2;
      }
      f << text << "\n";
    }
    std::cerr << (report.pass ? "PASS " : "FAIL ") << suite << " max residual " << report.max_residual << " in "
              << report.runtime_ms << " ms\n";
    return report.pass ? 0 : 1;
  } catch (const kelab::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const kelab::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
