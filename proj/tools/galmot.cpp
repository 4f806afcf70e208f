#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <set>

#include "galmot/cli.hpp"
#include "galmot/error.hpp"

namespace {

const char* describe(const std::string& name) {
  if (name == "identities") return "class-function identities over the group fleet";
  if (name == "torsor") return "weighted fixed-point counts against direct counts, and condition (*)";
  if (name == "theta") return "theta maps on colorings against counts over F_q^n";
  if (name == "recursion") return "uniqueness recursion against the Artin expansion";
  if (name == "fibers") return "fiber sizes of X_1 -> X_2 for the cyclic subgroups of the cover group";
  if (name == "counterexample") return "point counts of X x G and V before and after theta_2";
  if (name == "density") return "Artin class frequencies against the Chebotarev prediction";
  if (name == "count") return "number of etale F_q-points with Artin class in the coloring";
  if (name == "artin-table") return "etale F_q-points per Artin class";
  if (name == "motive") return "normal form of the motive of a coloring";
  if (name == "theta-count") return "count of the theta_n image over F_q";
  return "";
}

}  // namespace

int main(int argc, char** argv) {
  using galmot::cli::RunConfig;
  CLI::App app{"Artin-symbol counts, colorings and formal motives of Galois covers"};
  app.require_subcommand(1);

  RunConfig config;
  std::string out;
  std::set<std::string> names(galmot::cli::suite_names().begin(), galmot::cli::suite_names().end());
  names.insert(galmot::cli::experiment_names().begin(), galmot::cli::experiment_names().end());
  for (const auto& name : names) {
    CLI::App* sub = app.add_subcommand(name, describe(name));
    sub->add_option("--cover", config.covers, "cover spec: kummer:m=<m>, roots:n=<n>, prod(<spec>,<spec>)");
    sub->add_option("--coloring", config.coloring, "trivial, full, order=<m> or classes=[<order>@<rep>,...]");
    sub->add_option("--q", config.qs, "comma-separated field sizes")->delimiter(',');
    sub->add_option("--n", config.ns, "comma-separated theta exponents")->delimiter(',');
    sub->add_option("--max-order", config.max_order, "largest group order in the fleet");
    sub->add_option("--jobs", config.jobs, "worker threads");
    sub->add_option("--out", out, "write the report here instead of stdout");
    sub->add_option("--primes", config.primes, "prime set P: all, none, or a comma-separated list");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  config.command = app.get_subcommands().front()->get_name();

  galmot::cli::Report report;
  try {
    report = galmot::cli::run(config);
  } catch (const galmot::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }

  if (out.empty()) {
    std::cout << report.tsv;
  } else {
    std::ofstream file(out, std::ios::binary);
    file << report.tsv;
    if (!file) {
      std::cerr << "error: cannot write " << out << '\n';
      return 2;
    }
  }
  for (const auto& f : report.failures) std::cerr << "FAIL: " << f << '\n';
  return report.ok ? 0 : 1;
}
