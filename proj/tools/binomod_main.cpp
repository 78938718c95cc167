// binomod: command-line surface over the shared library. Every run prints a
// single JSON report on stdout (windows can opt into CSV); diagnostics go to
// stderr. Exit codes: 0 success, 1 invariant violation, 2 usage, 3 budget
// exhausted, 4 I/O.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "binomod.h"
#include "json.hpp"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvariant = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;
constexpr int kExitIo = 4;

int exit_code_for(binomod_status status) {
  switch (status) {
    case BINOMOD_OK:
      return kExitOk;
    case BINOMOD_ERR_ARGUMENT:
    case BINOMOD_ERR_DOMAIN:
    case BINOMOD_ERR_OVERFLOW:
      return kExitUsage;
    case BINOMOD_ERR_BUDGET:
      return kExitBudget;
    case BINOMOD_ERR_INVARIANT:
    case BINOMOD_ERR_INTERNAL:
      return kExitInvariant;
  }
  return kExitInvariant;
}

// One report per run; violations empty exactly when the exit code is 0.
struct Report {
  std::string command;
  json parameters = json::object();
  json results = json::array();
  std::vector<std::string> violations;
  std::chrono::steady_clock::time_point started = std::chrono::steady_clock::now();

  json to_json() const {
    auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - started)
                       .count();
    return json{{"command", command},
                {"parameters", parameters},
                {"results", results},
                {"violations", violations},
                {"elapsed_ms", elapsed}};
  }

  int emit(int code, const std::string& out_path = "") const {
    int final_code = (code == kExitOk && !violations.empty()) ? kExitInvariant : code;
    std::string text = to_json().dump(2);
    if (!out_path.empty()) {
      std::ofstream file(out_path);
      if (!file || !(file << text << "\n")) {
        std::cerr << "error: cannot write " << out_path << "\n";
        return kExitIo;
      }
    }
    std::cout << text << "\n";
    return final_code;
  }

  // Records a failed library call and maps it to the exit class.
  int fail(binomod_status status) {
    violations.push_back(binomod_last_error());
    std::cerr << "error: " << binomod_last_error() << "\n";
    return exit_code_for(status);
  }
};

const char* branch_name(binomod_search_branch branch) {
  switch (branch) {
    case BINOMOD_BRANCH_EVEN:
      return "even";
    case BINOMOD_BRANCH_ODD:
      return "odd";
    case BINOMOD_BRANCH_FALLBACK:
      return "fallback";
    case BINOMOD_BRANCH_NONE:
      break;
  }
  return "none";
}

json witness_json(const binomod_witness* w) {
  json record{
      {"p", binomod_witness_p(w)},
      {"kind", binomod_witness_get_kind(w) == BINOMOD_WITNESS_PRIME_WITNESS
                   ? "prime-witness"
                   : "composite-counterexample"},
      {"n", binomod_witness_n(w)},
      {"binom_residue", binomod_witness_binom_residue(w)},
      {"floor_residue", binomod_witness_floor_residue(w)},
      {"branch", branch_name(binomod_witness_get_branch(w))},
  };
  if (binomod_witness_has_progression_index(w))
    record["progression_index"] = binomod_witness_progression_index(w);
  else
    record["progression_index"] = nullptr;
  return record;
}

struct BinomArgs {
  int64_t n = 0;
  uint64_t k = 0;
  uint64_t m = 2;
  std::string engine = "auto";
};

int run_binom(const BinomArgs& args) {
  Report report;
  report.command = "binom";
  report.parameters = {{"n", args.n}, {"k", args.k}, {"m", args.m}, {"engine", args.engine}};

  if (args.n < 0 && args.engine != "auto") {
    std::cerr << "error: negative n requires --engine auto\n";
    report.violations.push_back("negative n requires --engine auto");
    return report.emit(kExitUsage);
  }

  uint64_t value = 0;
  json record{{"n", args.n}, {"k", args.k}, {"m", args.m}, {"engine", args.engine}};
  binomod_status status = BINOMOD_OK;
  uint64_t un = args.n < 0 ? 0 : static_cast<uint64_t>(args.n);

  if (args.engine == "auto") {
    status = binomod_binom_mod_integer(args.n, args.k, args.m, &value);
  } else if (args.engine == "pascal") {
    status = binomod_binom_mod_pascal(un, args.k, args.m, &value);
  } else if (args.engine == "lucas") {
    int is_prime = 0;
    status = binomod_is_prime(args.m, &is_prime);
    if (status == BINOMOD_OK && !is_prime) {
      std::cerr << "error: --engine lucas requires a prime modulus\n";
      report.violations.push_back("lucas engine requires a prime modulus");
      return report.emit(kExitUsage);
    }
    if (status == BINOMOD_OK) status = binomod_binom_mod_prime(un, args.k, args.m, &value);
  } else if (args.engine == "prime-power") {
    binomod_factorization* f = nullptr;
    status = binomod_factorize(args.m, &f);
    if (status == BINOMOD_OK) {
      uint64_t p = 0;
      uint32_t b = 0;
      if (binomod_factorization_size(f) != 1) {
        binomod_factorization_free(f);
        std::cerr << "error: --engine prime-power requires a prime-power modulus\n";
        report.violations.push_back("prime-power engine requires a prime-power modulus");
        return report.emit(kExitUsage);
      }
      status = binomod_factorization_entry(f, 0, &p, &b);
      binomod_factorization_free(f);
      if (status == BINOMOD_OK) {
        uint64_t modulus = 0;
        status = binomod_binom_mod_prime_power(un, args.k, p, b, &value, &modulus);
      }
    }
  } else {  // crt
    status = binomod_binom_mod(un, args.k, args.m, &value);
  }
  if (status != BINOMOD_OK) return report.emit(report.fail(status));

  record["value"] = value;
  record["modulus"] = args.m;

  if (args.engine != "auto") {
    uint64_t oracle = 0;
    status = binomod_binom_mod_pascal(un, args.k, args.m, &oracle);
    if (status != BINOMOD_OK) return report.emit(report.fail(status));
    bool match = oracle == value;
    record["cross_check"] = {{"engine", "pascal"}, {"value", oracle}, {"match", match}};
    if (!match)
      report.violations.push_back("engine " + args.engine + " disagrees with pascal oracle: " +
                                  std::to_string(value) + " vs " + std::to_string(oracle));
  }

  report.results.push_back(record);
  return report.emit(report.violations.empty() ? kExitOk : kExitInvariant);
}

struct PeriodArgs {
  uint64_t m = 2;
  bool verify = false;
  uint64_t budget = 1000000;
};

json profile_json(const binomod_period_profile* profile) {
  json factors = json::array();
  for (size_t i = 0; i < binomod_period_profile_size(profile); ++i) {
    uint64_t p = 0;
    uint32_t b = 0, c = 0, e = 0;
    binomod_period_profile_entry(profile, i, &p, &b, &c, &e);
    factors.push_back({{"p", p}, {"b", b}, {"c", c}, {"exponent", e}});
  }
  return json{{"m", binomod_period_profile_m(profile)},
              {"length", binomod_period_profile_length(profile)},
              {"factors", factors}};
}

int run_period(const PeriodArgs& args) {
  Report report;
  report.command = "period";
  report.parameters = {{"m", args.m}, {"verify", args.verify}, {"budget", args.budget}};

  binomod_period_profile* profile = nullptr;
  binomod_status status = binomod_period_profile_compute(args.m, &profile);
  if (status != BINOMOD_OK) return report.emit(report.fail(status));
  json record = profile_json(profile);
  uint64_t length = binomod_period_profile_length(profile);
  binomod_period_profile_free(profile);

  if (args.verify) {
    uint64_t measured = 0;
    status = binomod_minimal_period_bruteforce(args.m, args.budget, 0, &measured);
    if (status != BINOMOD_OK) return report.emit(report.fail(status));
    record["measured"] = measured;
    record["verified"] = measured == length;
    if (measured != length)
      report.violations.push_back("measured period " + std::to_string(measured) +
                                  " differs from formula " + std::to_string(length) +
                                  " for m=" + std::to_string(args.m));
  }

  report.results.push_back(record);
  return report.emit(report.violations.empty() ? kExitOk : kExitInvariant);
}

int run_prime_test(uint64_t p) {
  Report report;
  report.command = "prime-test";
  report.parameters = {{"p", p}};

  int is_prime = 0;
  binomod_witness* witness = nullptr;
  binomod_status status = binomod_prime_characterization(p, &is_prime, &witness);
  if (status != BINOMOD_OK) return report.emit(report.fail(status));

  json record{{"p", p}, {"is_prime", is_prime != 0}};
  if (witness) {
    record["witness"] = witness_json(witness);
    binomod_witness_free(witness);
  }
  report.results.push_back(record);
  return report.emit(kExitOk);
}

struct WitnessArgs {
  uint64_t p = 4;
  uint64_t k_max = 10000;
};

int run_witness(const WitnessArgs& args) {
  Report report;
  report.command = "witness";
  report.parameters = {{"p", args.p}, {"k_max", args.k_max}};

  binomod_witness* witness = nullptr;
  binomod_status status = binomod_prime_witness(args.p, args.k_max, &witness);
  if (status != BINOMOD_OK) return report.emit(report.fail(status));
  if (binomod_witness_get_branch(witness) == BINOMOD_BRANCH_FALLBACK)
    std::cerr << "note: progression start not coprime to the period; "
                 "fell back to a direct prime scan for p="
              << args.p << "\n";
  report.results.push_back(witness_json(witness));
  binomod_witness_free(witness);
  return report.emit(kExitOk);
}

struct SweepArgs {
  uint64_t lo = 2;
  uint64_t hi = 2;
  std::vector<std::string> checks;
  std::string out_path;
  uint64_t budget = 1000000;
  uint64_t k_max = 10000;
};

// thm11: primes pass the indicator sweep up to 5p; composites yield a
// verified counterexample and the decision procedure agrees with the
// deterministic primality test.
bool sweep_thm11(uint64_t m, json& record, std::string& error, binomod_status& status) {
  int reference = 0;
  status = binomod_is_prime(m, &reference);
  if (status != BINOMOD_OK) return false;

  int characterized = 0;
  binomod_witness* witness = nullptr;
  status = binomod_prime_characterization(m, &characterized, &witness);
  if (status != BINOMOD_OK) return false;
  if ((characterized != 0) != (reference != 0)) {
    if (witness) binomod_witness_free(witness);
    error = "characterization disagrees with deterministic primality for p=" +
            std::to_string(m);
    return false;
  }

  if (reference) {
    record["mode"] = "prime";
    for (uint64_t n = 0; n <= 5 * m; ++n) {
      uint64_t value = 0;
      status = binomod_indicator(n, m, &value);
      if (status != BINOMOD_OK) return false;
      if (value != 0) {
        error = "indicator nonzero at n=" + std::to_string(n) + " for prime p=" +
                std::to_string(m);
        return false;
      }
    }
  } else {
    record["mode"] = "composite";
    if (witness) {
      record["witness_n"] = binomod_witness_n(witness);
      binomod_witness_free(witness);
      witness = nullptr;
    }
    binomod_witness* counter = nullptr;
    status = binomod_composite_counterexample(m, &counter);
    if (status != BINOMOD_OK) return false;
    record["counterexample_n"] = binomod_witness_n(counter);
    binomod_witness_free(counter);
  }
  if (witness) binomod_witness_free(witness);
  return true;
}

bool sweep_thm14(uint64_t m, uint64_t budget, json& record, std::string& error,
                 binomod_status& status) {
  binomod_period_profile* profile = nullptr;
  status = binomod_period_profile_compute(m, &profile);
  if (status != BINOMOD_OK) return false;
  uint64_t formula = binomod_period_profile_length(profile);
  binomod_period_profile_free(profile);

  uint64_t measured = 0;
  status = binomod_minimal_period_bruteforce(m, budget, 0, &measured);
  if (status != BINOMOD_OK) return false;
  record["formula"] = formula;
  record["measured"] = measured;
  if (measured != formula) {
    error = "measured period " + std::to_string(measured) + " differs from formula " +
            std::to_string(formula) + " for m=" + std::to_string(m);
    return false;
  }
  return true;
}

bool sweep_corollary(uint64_t m, bool want_cor15, json& record, std::string& error,
                     binomod_status& status) {
  int m_sq_divides = 0;
  int prime_power_iff = 0;
  status = binomod_verify_corollaries(m, &m_sq_divides, &prime_power_iff);
  if (status != BINOMOD_OK) return false;
  bool ok = want_cor15 ? m_sq_divides != 0 : prime_power_iff != 0;
  record["holds"] = ok;
  if (!ok)
    error = std::string(want_cor15 ? "m^2 does not divide l(m)"
                                   : "l(m) = m^2 equivalence fails") +
            " for m=" + std::to_string(m);
  return ok;
}

bool sweep_lem21(uint64_t m, json& record, std::string& error, binomod_status& status) {
  std::mt19937_64 rng(m);
  std::uniform_int_distribution<uint64_t> dist(1, 1000000);
  int sampled = 0;
  json samples = json::array();
  for (int attempts = 0; sampled < 8 && attempts < 100000; ++attempts) {
    uint64_t n = dist(rng);
    if (std::gcd(n, m) != 1) continue;
    ++sampled;
    int holds = 0;
    status = binomod_check_shift_coprime(n, m, &holds);
    if (status != BINOMOD_OK) return false;
    samples.push_back(n);
    if (!holds) {
      error = "shift identity fails at n=" + std::to_string(n) + ", m=" + std::to_string(m);
      return false;
    }
  }
  record["samples"] = samples;
  return true;
}

bool sweep_lem22(uint64_t m, json& record, std::string& error, binomod_status& status) {
  int64_t lo = -2 * static_cast<int64_t>(m);
  int64_t hi = 4 * static_cast<int64_t>(m);
  record["k_lo"] = lo;
  record["k_hi"] = hi;
  for (int64_t k = lo; k <= hi; ++k) {
    int holds = 0;
    status = binomod_check_reflection_even(m, k, &holds);
    if (status != BINOMOD_OK) return false;
    if (!holds) {
      error = "reflection fails at k=" + std::to_string(k) + ", m=" + std::to_string(m);
      return false;
    }
  }
  return true;
}

bool sweep_thm24(uint64_t m, uint64_t k_max, json& record, std::string& error,
                 binomod_status& status) {
  binomod_witness* witness = nullptr;
  status = binomod_prime_witness(m, k_max, &witness);
  if (status != BINOMOD_OK) return false;
  if (binomod_witness_get_branch(witness) == BINOMOD_BRANCH_FALLBACK)
    std::cerr << "note: progression start not coprime to the period; "
                 "fell back to a direct prime scan for p="
              << m << "\n";
  record["q"] = binomod_witness_n(witness);
  record["branch"] = branch_name(binomod_witness_get_branch(witness));
  binomod_witness_free(witness);
  (void)error;
  return true;
}

int run_sweep(const SweepArgs& args) {
  static const std::vector<std::string> kAllChecks = {"thm11", "thm14", "cor15", "cor16",
                                                      "lem21", "lem22", "thm24"};
  Report report;
  report.command = "sweep";

  std::vector<std::string> selected = args.checks.empty() ? kAllChecks : args.checks;
  std::set<std::string> known(kAllChecks.begin(), kAllChecks.end());
  for (const std::string& check : selected) {
    if (!known.count(check)) {
      std::cerr << "error: unknown check '" << check << "'\n";
      return kExitUsage;
    }
  }
  report.parameters = {{"lo", args.lo},     {"hi", args.hi},     {"checks", selected},
                       {"budget", args.budget}, {"k_max", args.k_max}};

  if (args.lo < 2 || args.lo > args.hi) {
    std::cerr << "error: sweep range requires 2 <= lo <= hi\n";
    return kExitUsage;
  }

  for (uint64_t m = args.lo; m <= args.hi; ++m) {
    for (const std::string& check : kAllChecks) {
      if (std::find(selected.begin(), selected.end(), check) == selected.end()) continue;
      // Applicability: lem22 needs even m; thm24 needs composite m >= 4.
      if (check == "lem22" && m % 2 != 0) continue;
      if (check == "thm24") {
        int is_prime = 0;
        binomod_status status = binomod_is_prime(m, &is_prime);
        if (status != BINOMOD_OK) return report.emit(report.fail(status));
        if (m < 4 || is_prime) continue;
      }

      json record{{"m", m}, {"check", check}};
      std::string error;
      binomod_status status = BINOMOD_OK;
      bool ok = false;
      if (check == "thm11")
        ok = sweep_thm11(m, record, error, status);
      else if (check == "thm14")
        ok = sweep_thm14(m, args.budget, record, error, status);
      else if (check == "cor15")
        ok = sweep_corollary(m, true, record, error, status);
      else if (check == "cor16")
        ok = sweep_corollary(m, false, record, error, status);
      else if (check == "lem21")
        ok = sweep_lem21(m, record, error, status);
      else if (check == "lem22")
        ok = sweep_lem22(m, record, error, status);
      else
        ok = sweep_thm24(m, args.k_max, record, error, status);

      if (!ok && status != BINOMOD_OK) {
        // Library refusal (budget, domain): abort the sweep with its exit class.
        return report.emit(report.fail(status));
      }
      record["ok"] = ok;
      if (!ok) {
        report.violations.push_back(error);
        std::cerr << "violation: " << error << "\n";
      }
      report.results.push_back(record);
    }
  }
  return report.emit(report.violations.empty() ? kExitOk : kExitInvariant, args.out_path);
}

struct WindowArgs {
  uint64_t m = 2;
  int64_t start = 0;
  uint64_t count = 1;
  std::string format = "json";
  std::string out_path;
  uint64_t budget = 1000000;
};

int run_window(const WindowArgs& args) {
  Report report;
  report.command = "window";
  report.parameters = {{"m", args.m},
                       {"start", args.start},
                       {"count", args.count},
                       {"format", args.format}};

  if (args.count > args.budget) {
    std::cerr << "error: count " << args.count << " exceeds budget " << args.budget << "\n";
    report.violations.push_back("window count exceeds budget");
    return report.emit(kExitBudget);
  }

  binomod_window* window = nullptr;
  binomod_status status = binomod_sequence_window_compute(args.m, args.start, args.count, &window);
  if (status != BINOMOD_OK) return report.emit(report.fail(status));

  if (args.format == "csv") {
    std::string csv = "n,value\n";
    for (size_t i = 0; i < binomod_window_size(window); ++i) {
      uint64_t value = 0;
      binomod_window_value(window, i, &value);
      csv += std::to_string(binomod_window_start(window) + static_cast<int64_t>(i));
      csv += ',';
      csv += std::to_string(value);
      csv += '\n';
    }
    binomod_window_free(window);
    if (!args.out_path.empty()) {
      std::ofstream file(args.out_path);
      if (!file || !(file << csv)) {
        std::cerr << "error: cannot write " << args.out_path << "\n";
        return kExitIo;
      }
      return kExitOk;
    }
    std::cout << csv;
    return kExitOk;
  }

  for (size_t i = 0; i < binomod_window_size(window); ++i) {
    uint64_t value = 0;
    binomod_window_value(window, i, &value);
    report.results.push_back(
        {{"n", binomod_window_start(window) + static_cast<int64_t>(i)}, {"value", value}});
  }
  binomod_window_free(window);
  return report.emit(kExitOk, args.out_path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"binomial residues mod m, sequence periods, and prime witnesses"};
  app.require_subcommand(1);

  BinomArgs binom_args;
  CLI::App* binom = app.add_subcommand("binom", "C(n, k) mod m");
  binom->add_option("n", binom_args.n, "upper index (may be negative)")->required();
  binom->add_option("k", binom_args.k, "lower index")->required();
  binom->add_option("m", binom_args.m, "modulus (>= 2)")->required();
  binom->add_option("--engine", binom_args.engine, "evaluation engine")
      ->check(CLI::IsMember({"auto", "pascal", "lucas", "prime-power", "crt"}));

  PeriodArgs period_args;
  CLI::App* period = app.add_subcommand("period", "minimal period of n -> C(n, m) mod m");
  period->add_option("m", period_args.m, "modulus (>= 2)")->required();
  period->add_flag("--verify", period_args.verify, "brute-force the window and compare");
  period->add_option("--budget", period_args.budget, "max window period length");

  uint64_t prime_test_p = 2;
  CLI::App* prime_test = app.add_subcommand("prime-test", "binomial prime characterization");
  prime_test->add_option("p", prime_test_p, "integer to test (>= 2)")->required();

  WitnessArgs witness_args;
  CLI::App* witness = app.add_subcommand("witness", "prime witness for a composite modulus");
  witness->add_option("p", witness_args.p, "composite integer (>= 4)")->required();
  witness->add_option("--k-max", witness_args.k_max, "progression search cap");

  SweepArgs sweep_args;
  CLI::App* sweep = app.add_subcommand("sweep", "batch theorem checks over a range of moduli");
  sweep->add_option("lo", sweep_args.lo, "first modulus")->required();
  sweep->add_option("hi", sweep_args.hi, "last modulus")->required();
  sweep->add_option("--checks", sweep_args.checks,
                    "subset of thm11,thm14,cor15,cor16,lem21,lem22,thm24")
      ->delimiter(',');
  sweep->add_option("-o,--output", sweep_args.out_path, "also write the report here");
  sweep->add_option("--budget", sweep_args.budget, "period verification budget");
  sweep->add_option("--k-max", sweep_args.k_max, "witness search cap");

  WindowArgs window_args;
  CLI::App* window = app.add_subcommand("window", "contiguous values of C(n, m) mod m");
  window->add_option("m", window_args.m, "modulus (>= 2)")->required();
  window->add_option("start", window_args.start, "first index (may be negative)")->required();
  window->add_option("count", window_args.count, "number of values")->required();
  window->add_option("--format", window_args.format, "output format")
      ->check(CLI::IsMember({"json", "csv"}));
  window->add_option("-o,--output", window_args.out_path, "write output to this path");
  window->add_option("--budget", window_args.budget, "max window size");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  if (binom->parsed()) return run_binom(binom_args);
  if (period->parsed()) return run_period(period_args);
  if (prime_test->parsed()) return run_prime_test(prime_test_p);
  if (witness->parsed()) return run_witness(witness_args);
  if (sweep->parsed()) return run_sweep(sweep_args);
  if (window->parsed()) return run_window(window_args);
  return kExitUsage;
}
