// ufe_workbench: generate workloads, run command scripts with certificate
// checking, and time explain on the wide/balanced shapes.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "ufe/ufe.hpp"

namespace {

int run_gen(const std::string& shape, unsigned n_exp, std::size_t queries,
            std::uint64_t seed, const std::string& out_path) {
  const auto w = ufe::make_workload(ufe::parse_shape(shape), n_exp, queries, seed);
  if (out_path.empty() || out_path == "-") {
    ufe::write_script(std::cout, w);
    return 0;
  }
  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "error: cannot open " << out_path << " for writing\n";
    return 1;
  }
  ufe::write_script(out, w);
  return 0;
}

int run_file(const std::string& script_path, const std::string& proofs_path) {
  std::ifstream in(script_path);
  if (!in) {
    std::cerr << "error: cannot open " << script_path << '\n';
    return 1;
  }
  std::ofstream proofs_file;
  std::ostream* proofs = &std::cout;
  if (!proofs_path.empty()) {
    proofs_file.open(proofs_path);
    if (!proofs_file) {
      std::cerr << "error: cannot open " << proofs_path << " for writing\n";
      return 1;
    }
    proofs = &proofs_file;
  }

  ufe::ScriptReport r;
  try {
    r = ufe::run_script(in, *proofs);
  } catch (const ufe::script_error& e) {
    std::cerr << "error: " << script_path << ": " << e.what() << '\n';
    return 2;
  }
  std::cerr << "commands=" << r.commands
            << " effective_unions=" << r.effective_unions
            << " redundant_unions=" << r.redundant_unions
            << " validated_proofs=" << r.validated_proofs
            << " none=" << r.none_results << " failures=" << r.failures << '\n';
  if (r.failures != 0) {
    std::cerr << "error: certificate failed validation\n";
    return 3;
  }
  return 0;
}

int run_bench(const std::string& shape, unsigned n_exp, std::size_t queries,
              std::uint64_t seed, const std::string& csv_path) {
  const auto rec = ufe::bench(ufe::parse_shape(shape), n_exp, queries, seed);
  if (csv_path.empty()) {
    std::cout << ufe::csv_header << '\n' << ufe::csv_row(rec) << '\n';
    return 0;
  }
  // Append, writing the header only into a fresh file.
  const bool fresh = !std::ifstream(csv_path).good() ||
                     std::ifstream(csv_path).peek() == std::ifstream::traits_type::eof();
  std::ofstream out(csv_path, std::ios::app);
  if (!out) {
    std::cerr << "error: cannot open " << csv_path << " for writing\n";
    return 1;
  }
  if (fresh) out << ufe::csv_header << '\n';
  out << ufe::csv_row(rec) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Union-find with explain: workloads, certificates, benchmarks"};
  app.require_subcommand(1);

  std::string shape = "wide";
  unsigned n_exp = 10;
  std::size_t queries = 1000;
  std::uint64_t seed = 42;
  std::string out_path;
  std::string script_path;
  std::string proofs_path;
  std::string csv_path;

  const auto add_workload_opts = [&](CLI::App* sub) {
    sub->add_option("--shape", shape, "wide or balanced")
        ->check(CLI::IsMember({"wide", "balanced"}));
    sub->add_option("--n", n_exp, "log2 of the element count")
        ->check(CLI::Range(1u, ufe::max_n_exp));
    sub->add_option("--queries", queries, "number of explain queries");
    sub->add_option("--seed", seed, "query generator seed");
  };

  auto* gen = app.add_subcommand("gen", "write a workload as a script");
  add_workload_opts(gen);
  gen->add_option("--out", out_path, "output script (default stdout)");

  auto* run = app.add_subcommand("run", "execute a script, emitting certificates");
  run->add_option("file", script_path, "script to run")->required();
  run->add_option("--emit-proofs", proofs_path,
                  "write certificates here instead of stdout");

  auto* bench = app.add_subcommand("bench", "time unions and explains");
  add_workload_opts(bench);
  bench->add_option("--csv", csv_path, "append the result row to this file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) return run_gen(shape, n_exp, queries, seed, out_path);
    if (*run) return run_file(script_path, proofs_path);
    if (*bench) return run_bench(shape, n_exp, queries, seed, csv_path);
  } catch (const std::bad_alloc&) {
    std::cerr << "error: out of memory\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
