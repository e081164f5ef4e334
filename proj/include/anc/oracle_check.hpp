#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace anc {

struct OracleReport {
  std::string name;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

// Recursive inner-product cache vs direct summation over random data.
OracleReport check_cache_vs_oracle(std::size_t samples, std::size_t order,
                                   std::size_t window, std::uint64_t seed,
                                   bool inject_fault = false);

// Fast inner-product-domain FAP vs the naive materialized implementation,
// several random configurations.
OracleReport check_fap_vs_naive(std::size_t configs, std::size_t samples,
                                std::uint64_t seed, bool inject_fault = false);

// Recursively maintained RLS inverse vs explicit inversion of the weighted
// autocorrelation sum.
OracleReport check_rls_vs_direct(std::size_t steps, std::uint64_t seed,
                                 bool inject_fault = false);

std::vector<OracleReport> run_all_oracle_checks(std::size_t samples,
                                                std::uint64_t seed,
                                                bool inject_fault = false);

}  // namespace anc
