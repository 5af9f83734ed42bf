#pragma once

// Workload generators, the command-script runner, and the benchmark driver
// behind the ufe_workbench tool.
//
// Script format, one command per line, '#' starts a comment:
//   init N
//   union A B
//   explain A B

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ufe/certificates.hpp"
#include "ufe/engine.hpp"

namespace ufe {

enum class Shape { wide, balanced };

inline const char* to_string(Shape s) {
  return s == Shape::wide ? "wide" : "balanced";
}

inline Shape parse_shape(std::string_view name) {
  if (name == "wide") return Shape::wide;
  if (name == "balanced") return Shape::balanced;
  throw std::invalid_argument("unknown shape '" + std::string(name) + "'");
}

/// Largest supported exponent; 2^30 elements already needs tens of GiB.
inline constexpr unsigned max_n_exp = 30;

struct Workload {
  Shape shape = Shape::wide;
  unsigned n_exp = 0;
  std::uint64_t seed = 0;
  UnionLog unions;
  std::vector<UnionPair> queries;

  std::size_t elements() const { return std::size_t{1} << n_exp; }
  friend bool operator==(const Workload&, const Workload&) = default;
};

namespace detail {

inline void check_n_exp(unsigned n_exp) {
  if (n_exp == 0) throw std::invalid_argument("n_exp must be at least 1");
  if (n_exp > max_n_exp) throw std::invalid_argument("n_exp too large");
}

}  // namespace detail

/// (i, i+1) for consecutive i. Union by size turns this into a star rooted
/// at 0, and explaining the two ends needs every union.
inline UnionLog wide_unions(unsigned n_exp) {
  detail::check_n_exp(n_exp);
  const std::size_t n = std::size_t{1} << n_exp;
  UnionLog us;
  us.reserve(n - 1);
  for (Elem i = 0; i + 1 < n; ++i) us.emplace_back(i, i + 1);
  return us;
}

/// Round k joins blocks of size 2^k pairwise: (i, i + 2^k) for i a multiple
/// of 2^(k+1). Union by size builds binomial trees of depth n_exp.
inline UnionLog balanced_unions(unsigned n_exp) {
  detail::check_n_exp(n_exp);
  const std::size_t n = std::size_t{1} << n_exp;
  UnionLog us;
  us.reserve(n - 1);
  for (unsigned k = 0; k < n_exp; ++k) {
    const std::size_t half = std::size_t{1} << k;
    for (Elem i = 0; i < n; i += 2 * half) us.emplace_back(i, i + half);
  }
  return us;
}

/// Uniform query pairs from a seeded mt19937_64, reduced modulo n.
inline std::vector<UnionPair> uniform_queries(std::size_t n,
                                              std::size_t count,
                                              std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<UnionPair> qs;
  qs.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const Elem x = static_cast<Elem>(rng() % n);
    const Elem y = static_cast<Elem>(rng() % n);
    qs.emplace_back(x, y);
  }
  return qs;
}

inline Workload make_workload(Shape shape, unsigned n_exp,
                              std::size_t query_count, std::uint64_t seed) {
  Workload w;
  w.shape = shape;
  w.n_exp = n_exp;
  w.seed = seed;
  w.unions = shape == Shape::wide ? wide_unions(n_exp) : balanced_unions(n_exp);
  w.queries = uniform_queries(w.elements(), query_count, seed);
  return w;
}

inline Workload gen_wide(unsigned n_exp, std::size_t query_count = 0,
                         std::uint64_t seed = 0) {
  return make_workload(Shape::wide, n_exp, query_count, seed);
}

inline Workload gen_balanced(unsigned n_exp, std::size_t query_count = 0,
                             std::uint64_t seed = 0) {
  return make_workload(Shape::balanced, n_exp, query_count, seed);
}

/// Writes the workload as a runnable script.
inline void write_script(std::ostream& os, const Workload& w) {
  os << "# shape=" << to_string(w.shape) << " n_exp=" << w.n_exp
     << " seed=" << w.seed << " queries=" << w.queries.size() << '\n';
  os << "init " << w.elements() << '\n';
  for (const auto& [a, b] : w.unions) os << "union " << a << ' ' << b << '\n';
  for (const auto& [x, y] : w.queries) {
    os << "explain " << x << ' ' << y << '\n';
  }
}

// ---------------------------------------------------------------------------
// Script execution.

class script_error : public std::runtime_error {
 public:
  script_error(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

struct ScriptReport {
  std::size_t commands = 0;
  std::size_t effective_unions = 0;
  std::size_t redundant_unions = 0;
  std::size_t validated_proofs = 0;
  std::size_t none_results = 0;
  std::size_t failures = 0;
};

namespace detail {

inline std::size_t parse_count(const std::string& token, std::size_t line) {
  if (token.empty() || token.find_first_not_of("0123456789") != std::string::npos) {
    throw script_error(line, "expected a non-negative integer, got '" + token + "'");
  }
  try {
    return static_cast<std::size_t>(std::stoull(token));
  } catch (const std::out_of_range&) {
    throw script_error(line, "integer out of range: " + token);
  }
}

}  // namespace detail

/// Runs a script against one Engine. Every explain writes one certificate
/// line (or "none") to proofs_out and is checked against the engine's log;
/// a certificate that fails the check stops the run and counts as a failure.
inline ScriptReport run_script(std::istream& in, std::ostream& proofs_out) {
  ScriptReport report;
  std::optional<Engine> engine;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string::npos) {
      raw.resize(hash);
    }
    std::istringstream words(raw);
    std::vector<std::string> tok;
    for (std::string w; words >> w;) tok.push_back(w);
    if (tok.empty()) continue;

    const std::string& cmd = tok[0];
    const std::size_t want = cmd == "init" ? 2 : 3;
    if (cmd != "init" && cmd != "union" && cmd != "explain") {
      throw script_error(line_no, "unknown command '" + cmd + "'");
    }
    if (tok.size() != want) {
      throw script_error(line_no, "'" + cmd + "' takes " +
                                      std::to_string(want - 1) + " argument(s)");
    }
    ++report.commands;

    if (cmd == "init") {
      if (engine) throw script_error(line_no, "duplicate init");
      engine.emplace(detail::parse_count(tok[1], line_no));
      continue;
    }
    if (!engine) throw script_error(line_no, "'" + cmd + "' before init");
    const Elem a = detail::parse_count(tok[1], line_no);
    const Elem b = detail::parse_count(tok[2], line_no);
    for (Elem e : {a, b}) {
      if (e >= engine->size()) {
        throw script_error(line_no, range_error(e, engine->size()).what());
      }
    }

    if (cmd == "union") {
      if (engine->add_union(a, b)) {
        ++report.effective_unions;
      } else {
        ++report.redundant_unions;
      }
      continue;
    }

    const auto proof = engine->explain(a, b);
    if (!proof) {
      proofs_out << "none\n";
      ++report.none_results;
      continue;
    }
    write_proof(proofs_out, *proof);
    proofs_out << '\n';
    bool ok = false;
    try {
      ok = check(engine->log().view(), *proof) == Conclusion{a, b};
    } catch (const proof_rejected&) {
      ok = false;
    }
    if (!ok) {
      ++report.failures;
      return report;
    }
    ++report.validated_proofs;
  }
  return report;
}

inline ScriptReport run_script(const std::string& text,
                               std::ostream& proofs_out) {
  std::istringstream in(text);
  return run_script(in, proofs_out);
}

// ---------------------------------------------------------------------------
// Benchmark.

struct BenchRecord {
  Shape shape = Shape::wide;
  unsigned n_exp = 0;
  std::size_t elements = 0;
  double union_seconds = 0;
  double explain_seconds = 0;
  std::size_t queries = 0;
  double mean_assm_count = 0;
};

inline constexpr const char* csv_header =
    "shape,n_exp,elements,union_seconds,explain_seconds,queries,mean_assm_count";

inline std::string csv_row(const BenchRecord& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%s,%u,%zu,%.6f,%.6f,%zu,%.3f",
                to_string(r.shape), r.n_exp, r.elements, r.union_seconds,
                r.explain_seconds, r.queries, r.mean_assm_count);
  return buf;
}

/// Times the union phase and the explain phase separately on a monotonic
/// clock. Proof statistics are collected outside the timed region.
inline BenchRecord bench(Shape shape, unsigned n_exp, std::size_t query_count,
                         std::uint64_t seed) {
  using clock = std::chrono::steady_clock;
  const Workload w = make_workload(shape, n_exp, query_count, seed);
  BenchRecord r;
  r.shape = shape;
  r.n_exp = n_exp;
  r.elements = w.elements();
  r.queries = w.queries.size();

  const auto t0 = clock::now();
  Engine e(w.elements());
  for (const auto& [a, b] : w.unions) {
    if (!e.add_union(a, b)) {
      throw std::logic_error("generated workload has a redundant union");
    }
  }
  const auto t1 = clock::now();

  std::uint64_t assm_total = 0;
  std::chrono::nanoseconds explain_time{0};
  for (const auto& [x, y] : w.queries) {
    const auto s = clock::now();
    const auto proof = e.explain(x, y);
    explain_time += clock::now() - s;
    if (!proof) throw std::logic_error("workload query has no explanation");
    assm_total += proof_stats(*proof).assm_count;
  }

  r.union_seconds = std::chrono::duration<double>(t1 - t0).count();
  r.explain_seconds = std::chrono::duration<double>(explain_time).count();
  r.mean_assm_count =
      r.queries == 0 ? 0.0 : static_cast<double>(assm_total) / r.queries;
  return r;
}

}  // namespace ufe
