// hodgep_cli: batch front end over the hodgep library.
//
//   hodgep_cli jw --builtin C2-siegel
//   hodgep_cli bggpage --builtin A1-modular --lambda 0 --i 1
//   hodgep_cli stdcomplex verify --builtin A1-modular --lambda 2,0 --dmax 4 --prime 5
//   hodgep_cli fzip iso a.json b.json
//   hodgep_cli --job job.json

#include <iostream>

#include "CLI11.hpp"
#include "hodgep/cli/job.hpp"

using hodgep::cli::JobSpec;
using hodgep::cli::json;

namespace {

struct Common {
  std::string builtin, datum_file, mu, lambda, H, out, format = "json";
  std::optional<int> dmax, i, a;
  std::optional<long long> prime;
  bool casimir = false;
};

void add_datum(CLI::App* sc, Common& c) {
  auto* b = sc->add_option("--builtin", c.builtin, "builtin datum name");
  auto* d = sc->add_option("--datum", c.datum_file, "root datum JSON file");
  b->excludes(d);
  sc->add_option("--mu", c.mu, "cocharacter, comma separated");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hodge-theoretic BGG bookkeeping, standard complexes and F-zips"};
  app.require_subcommand(0, 1);
  Common c;
  std::string job_file;
  bool verbose = false, golden = false;
  app.add_option("--job", job_file, "run a JSON job file");
  app.add_option("--out", c.out, "write the report to FILE (atomically)");
  app.add_option("--format", c.format, "json or table")->check(CLI::IsMember({"json", "table"}));
  app.add_flag("--verbose", verbose, "progress messages on stderr");
  app.add_flag("--golden", golden, "canonical byte-stable JSON");
  app.fallthrough();

  auto* jw = app.add_subcommand("jw", "minimal coset representatives ^J W");
  add_datum(jw, c);

  auto* bgg = app.add_subcommand("bggpage", "BGG page for a dominant weight");
  add_datum(bgg, c);
  bgg->add_option("--lambda", c.lambda, "highest weight, comma separated")->required();
  bgg->add_option("--i", c.i, "cohomological degree for the summand list");
  bgg->add_option("--prime", c.prime, "attach a p-smallness verdict");
  bgg->add_option("--H", c.H, "alternative cocharacter representative");

  auto* stdc = app.add_subcommand("stdcomplex", "truncated standard complexes");
  std::string stdc_action;
  stdc->add_option("action", stdc_action, "build or verify")->required()->check(CLI::IsMember({"build", "verify"}));
  add_datum(stdc, c);
  stdc->add_option("--lambda", c.lambda, "highest weight of V")->required();
  stdc->add_option("--dmax", c.dmax, "truncation bound on the Sym-degree");
  stdc->add_option("--prime", c.prime, "work over F_p (also builds p-Std)");
  stdc->add_flag("--casimir", c.casimir, "extract the Casimir-isotypic subcomplex");

  auto* fz = app.add_subcommand("fzip", "F-zip operations");
  std::string fz_action;
  std::vector<std::string> fz_inputs;
  fz->add_option("action", fz_action, "validate|type|tensor|dual|iso")
      ->required()
      ->check(CLI::IsMember({"validate", "type", "tensor", "dual", "iso"}));
  fz->add_option("inputs", fz_inputs, "F-zip JSON files")->required();

  auto* kos = app.add_subcommand("kostant", "Kostant identity for ∧(u_-)");
  add_datum(kos, c);
  kos->add_option("--a", c.a, "single degree");

  auto* self = app.add_subcommand("selftest", "run the invariant matrix over the builtins");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  JobSpec job;
  try {
    if (!job_file.empty()) {
      if (!app.get_subcommands().empty()) throw hodgep::Error("--job cannot be combined with a subcommand");
      job = hodgep::cli::job_from_json(hodgep::cli::read_json_file(job_file));
    } else {
      if (app.get_subcommands().empty()) {
        std::cerr << app.help();
        return 1;
      }
      auto* sc = app.get_subcommands().front();
      job.command = sc->get_name();
      job.builtin = c.builtin;
      job.datum_file = c.datum_file;
      json& p = job.parameters;
      if (!c.mu.empty()) p["mu"] = c.mu;
      if (!c.lambda.empty()) p["lambda"] = c.lambda;
      if (!c.H.empty()) p["H"] = c.H;
      if (c.dmax) p["dmax"] = *c.dmax;
      if (c.i) p["i"] = *c.i;
      if (c.a) p["a"] = *c.a;
      if (c.prime) p["prime"] = *c.prime;
      if (sc == stdc) {
        job.action = stdc_action;
        if (c.casimir) p["casimir"] = true;
      }
      if (sc == fz) {
        job.action = fz_action;
        p["inputs"] = fz_inputs;
      }
      (void)jw, (void)bgg, (void)kos, (void)self;
    }
    if (!c.out.empty()) job.output = c.out;
    if (c.format != "json") job.format = c.format;
    job.verbose = job.verbose || verbose;
    job.golden = job.golden || golden;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  auto res = hodgep::cli::run(job, &std::cerr);
  try {
    if (job.output.empty()) std::cout << res.report;
    else hodgep::cli::write_atomic(job.output, res.report);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  if (res.status != 0) std::cerr << "error: " << res.error << "\n";
  return res.status;
}
