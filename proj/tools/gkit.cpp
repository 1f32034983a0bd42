#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "gkit/dsl.hpp"
#include "gkit/json_io.hpp"

namespace {

int emit_error(std::ostream& out, gkit::ErrorCode code, const std::string& message) {
  out << gkit::error_to_json(gkit::Error(code, message)).dump() << "\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gkit: Witt vectors, Cohen rings and Greenberg transforms over imperfect fields"};
  app.prefix_command();

  std::string script_path, out_path, etale, ring = "unramified(2)";
  uint32_t prime = 2;
  std::vector<std::string> pbasis{"t"};
  gkit::SessionConfig config;
  config.limits = gkit::GreenbergLimits::from_env();
  size_t n = 0;

  app.add_option("--script", script_path, "Script file to run")->check(CLI::ExistingFile);
  app.add_option("--out", out_path, "Write all JSON output to this file");
  app.add_option("--jobs", config.jobs, "Worker threads for the Greenberg transform")->check(CLI::Range(1, 256));
  app.add_option("--seed", config.seed, "Seed for selftest");
  app.add_option("--stage", config.stage, "Default relative-perfection stage for greenberg")->check(CLI::Range(0, 8));
  auto* n_opt = app.add_option("--n", n, "Default unit level for units ppow-solve");
  app.add_option("--prime", prime, "Inline mode: the prime p")->check(CLI::Range(2, 997));
  app.add_option("--pbasis", pbasis, "Inline mode: comma-separated p-basis names")->delimiter(',')->allow_extra_args(false);
  app.add_option("--etale", etale, "Inline mode: etale polynomial in y");
  app.add_option("--ring", ring, "Inline mode: ring A, e.g. 'eisenstein(2, E = pi^2 - p)'");
  app.footer(
      "Inline commands follow the options, e.g.\n"
      "  gkit --prime 2 witt add '(1,0)' '(1,0)'\n"
      "  gkit selftest --seed 42\n"
      "Environment: GKIT_MONOMIAL_CAP, GKIT_SYMBOL_CAP override resource limits.");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return emit_error(std::cout, gkit::ErrorCode::InvalidArgument, e.what());
  }
  if (*n_opt) config.n = n;
  config.limits.jobs = config.jobs;

  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) return emit_error(std::cout, gkit::ErrorCode::InvalidArgument, "cannot write '" + out_path + "'");
  }
  std::ostream& out = out_path.empty() ? std::cout : file;

  const auto rest = app.remaining();
  std::string source;
  if (!script_path.empty()) {
    if (!rest.empty()) return emit_error(out, gkit::ErrorCode::InvalidArgument, "--script and an inline command are exclusive");
    std::ifstream in(script_path);
    std::stringstream ss;
    ss << in.rdbuf();
    source = ss.str();
  } else {
    if (rest.empty()) {
      std::cerr << app.help();
      return 1;
    }
    std::ostringstream s;
    s << "base { p = " << prime << "; pbasis = [";
    for (size_t i = 0; i < pbasis.size(); ++i) s << (i ? ", " : "") << pbasis[i];
    s << "];";
    if (!etale.empty()) s << " etale = " << etale << ";";
    s << " }\nring A = " << ring << ";\n";
    for (size_t i = 0; i < rest.size(); ++i) s << (i ? " " : "") << rest[i];
    s << "\n";
    source = s.str();
  }
  return gkit::run_source(source, config, out);
}
