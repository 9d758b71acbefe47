#pragma once

// Command implementations behind the `omd` executable. Each command writes
// its payload to `out`, diagnostics to `log`, and returns the process exit
// code.

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include "omd/composer.hpp"
#include "omd/io.hpp"

namespace omd::cli {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int verify_failed = 1;
inline constexpr int nonexistent = 2;
inline constexpr int budget = 3;
inline constexpr int parse = 4;
inline constexpr int usage = 5;
}  // namespace exit_code

struct Config {
  std::uint64_t seed = 0;
  std::uint64_t budget = default_budget;
  std::string format = "json";  // json | grid | latex
  std::string out;              // empty: write to `out` stream
};

inline int code_for(errc e) {
  switch (e) {
    case errc::nonexistent:
    case errc::k_too_small:
    case errc::odd_order: return exit_code::nonexistent;
    case errc::search_exhausted: return exit_code::budget;
    case errc::parse_error: return exit_code::parse;
    case errc::verification_failed: return exit_code::verify_failed;
    default: return exit_code::usage;
  }
}

namespace detail {

inline bool emit(const std::string& payload, const Config& cfg, std::ostream& out, std::ostream& log) {
  if (cfg.out.empty()) {
    out << payload;
    return true;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) {
    log << "error: cannot write " << cfg.out << "\n";
    return false;
  }
  f << payload;
  return static_cast<bool>(f);
}

inline std::string render(const Construction& c, const Config& cfg) {
  if (cfg.format == "grid") return to_grid(c.design);
  if (cfg.format == "latex") return to_latex(c.design);
  json j = design_to_json(c.design);
  json meta;
  meta["construction"] = c.path;
  meta["seed"] = cfg.seed;
  meta["budget"] = cfg.budget;
  meta["transversal"] = c.transversal ? transversal_to_json(*c.transversal) : json(nullptr);
  if (c.hole) meta["hole"] = hole_to_json(*c.hole);
  meta["verification"] = report_to_json(c.report);
  j["meta"] = std::move(meta);
  return j.dump(1) + "\n";
}

inline std::optional<std::string> read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) return std::nullopt;
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace detail

/// Builds OMD(n, k), writes it in the configured format and reports the
/// construction path on `log`.
inline int cmd_generate(int n, int k, const Config& cfg, std::ostream& out, std::ostream& log) {
  if (cfg.format != "json" && cfg.format != "grid" && cfg.format != "latex") {
    log << "error: unknown format " << cfg.format << "\n";
    return exit_code::usage;
  }
  try {
    auto c = construct(n, k, BuildConfig{cfg.seed, cfg.budget});
    const auto payload = detail::render(c, cfg);
    if (!detail::emit(payload, cfg, out, log)) return exit_code::usage;
    log << "OMD(" << n << "," << k << "): side " << c.design.side() << ", " << c.report.nonempty
        << " blocks, construction " << c.path << ", verified, transversal "
        << (c.transversal ? "certified" : "not found") << "\n";
    return exit_code::ok;
  } catch (const error& e) {
    log << "error: " << e.what() << "\n";
    return code_for(e.code());
  }
}

/// Verifies a design file. A transversal stored under meta.transversal is
/// certified as well.
inline int cmd_verify(const std::string& path, const Config& cfg, std::ostream& out, std::ostream& log) {
  const auto text = detail::read_file(path);
  if (!text) {
    log << "error: cannot read " << path << "\n";
    return exit_code::parse;
  }
  DesignArray arr(0, 2, 1, Complete{2});
  json doc;
  try {
    doc = json::parse(*text);
    arr = design_from_json(doc);
  } catch (const json::exception& e) {
    log << "error: " << e.what() << "\n";
    return exit_code::parse;
  } catch (const error& e) {
    log << "error: " << e.what() << "\n";
    return exit_code::parse;
  }

  const auto rep = verify(arr);
  json result;
  result["design"] = report_to_json(rep);
  bool ok = rep.passed;
  if (doc.contains("meta") && doc["meta"].is_object() && doc["meta"].contains("transversal") &&
      doc["meta"]["transversal"].is_array()) {
    Transversal t;
    for (const auto& c : doc["meta"]["transversal"]) {
      if (!c.is_array() || c.size() != 2 || !c[0].is_number_integer() || !c[1].is_number_integer()) {
        log << "error: malformed transversal entry\n";
        return exit_code::parse;
      }
      t.cells.push_back({c[0].get<int>(), c[1].get<int>()});
    }
    const auto trep = verify_transversal(arr, t);
    result["transversal"] = report_to_json(trep);
    ok = ok && trep.passed;
  }
  if (!detail::emit(result.dump(1) + "\n", cfg, out, log)) return exit_code::usage;
  for (const auto& c : rep.checks)
    if (!c.passed) log << "check " << c.name << " failed: " << c.counterexample << "\n";
  return ok ? exit_code::ok : exit_code::verify_failed;
}

/// Searches for a transversal of the design in `path`.
inline int cmd_transversal(const std::string& path, const Config& cfg, std::ostream& out, std::ostream& log) {
  const auto text = detail::read_file(path);
  if (!text) {
    log << "error: cannot read " << path << "\n";
    return exit_code::parse;
  }
  try {
    const auto arr = design_from_string(*text);
    const auto res = find_transversal(arr, cfg.budget);
    log << "transversal search: " << to_string(res.status) << " after " << res.nodes << " nodes\n";
    if (!res.found()) return res.status == search_status::exhausted ? exit_code::budget : exit_code::verify_failed;
    if (!detail::emit(transversal_to_json(*res.value).dump() + "\n", cfg, out, log)) return exit_code::usage;
    return exit_code::ok;
  } catch (const error& e) {
    log << "error: " << e.what() << "\n";
    return code_for(e.code());
  }
}

struct SweepRow {
  int n = 0;
  int k = 0;
  std::string status;  // verified | nonexistent | exhausted | FAILED
  std::string path;
  int side = 0;
  int nonempty = 0;
  bool counting_law = false;
  bool transversal = false;
};

inline std::vector<SweepRow> sweep(int n_max, int k_max, const Config& cfg) {
  std::vector<SweepRow> rows;
  for (int k = 1; k <= k_max; ++k) {
    for (int n = 2 * k; n <= n_max; n += 2 * k) {
      SweepRow row{n, k, "", "-", 0, 0, false, false};
      try {
        const auto c = construct(n, k, BuildConfig{cfg.seed, cfg.budget});
        row.path = c.path;
        row.side = c.design.side();
        row.nonempty = c.report.nonempty;
        const int per_line = n / (2 * k);
        row.counting_law = c.report.nonempty == n * (n - 1) / (2 * k) &&
                           std::all_of(c.report.per_row.begin(), c.report.per_row.end(),
                                       [&](int x) { return x == per_line; }) &&
                           std::all_of(c.report.per_col.begin(), c.report.per_col.end(),
                                       [&](int x) { return x == per_line; });
        row.transversal = c.transversal.has_value();
        row.status = row.counting_law ? "verified" : "FAILED";
      } catch (const error& e) {
        if (e.code() == errc::nonexistent) row.status = "nonexistent";
        else if (e.code() == errc::search_exhausted) row.status = "exhausted";
        else row.status = "FAILED";
        row.path = e.what();
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

inline bool expected_nonexistent(int n, int k) { return !nonexistence_reason(n, k).empty(); }

/// Generates and verifies every (n, k) with n = 0 mod 2k, n <= n_max,
/// k <= k_max. Nonzero exit on any unexpected outcome: 1 if a case failed
/// or an admissible case was rejected, otherwise 3 if a search ran out of
/// budget.
inline int cmd_sweep(int n_max, int k_max, const Config& cfg, std::ostream& out, std::ostream& log) {
  const auto rows = sweep(n_max, k_max, cfg);
  std::ostringstream os;
  os << std::left << std::setw(5) << "n" << std::setw(4) << "k" << std::setw(13) << "status" << std::setw(6)
     << "side" << std::setw(8) << "blocks" << std::setw(12) << "transversal" << "construction\n";
  bool failed = false, exhausted = false;
  for (const auto& r : rows) {
    os << std::left << std::setw(5) << r.n << std::setw(4) << r.k << std::setw(13) << r.status << std::setw(6)
       << r.side << std::setw(8) << r.nonempty << std::setw(12) << (r.transversal ? "yes" : "-") << r.path << "\n";
    if (r.status == "FAILED") failed = true;
    if (r.status == "exhausted") exhausted = true;
    if (r.status == "nonexistent" && !expected_nonexistent(r.n, r.k)) failed = true;
  }
  if (!detail::emit(os.str(), cfg, out, log)) return exit_code::usage;
  log << rows.size() << " cases\n";
  if (failed) return exit_code::verify_failed;
  if (exhausted) return exit_code::budget;
  return exit_code::ok;
}

}  // namespace omd::cli
