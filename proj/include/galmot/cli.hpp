#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "galmot/prime_set.hpp"

namespace galmot::cli {

struct RunConfig {
  std::string command;
  /// Cover specs; empty means the command's default set.
  std::vector<std::string> covers;
  std::string coloring;
  /// Field sizes; empty means the command's default list.
  std::vector<std::uint64_t> qs;
  /// Exponents for theta; empty means the command's default list.
  std::vector<std::uint64_t> ns;
  std::size_t max_order = 24;
  std::size_t jobs = 1;
  /// `all`, `none`, or a comma-separated prime list.
  std::string primes = "all";
};

struct Report {
  std::string tsv;
  bool ok = true;
  /// One line per violated check, naming the instance.
  std::vector<std::string> failures;
};

const std::vector<std::string>& suite_names();
const std::vector<std::string>& experiment_names();

/// Parses every spec in the config and checks the flags the command needs.
/// Throws ParseError, ColoringError or BadPrime; no work is done.
void validate(const RunConfig& config);

/// Runs a suite or an experiment by name. Calls validate first.
Report run(const RunConfig& config);

PrimeSet parse_prime_set(const std::string& text);

/// Runs fn(0..count-1) on `jobs` threads. Results must be written by index;
/// the first exception by task index is rethrown after all workers finish.
inline void parallel_for(std::size_t count, std::size_t jobs, const std::function<void(std::size_t)>& fn) {
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::max<std::size_t>(1, std::min(jobs, count));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace galmot::cli
