#pragma once
// Identity suites shared by the `verify` subcommand and the acceptance runner.
// Each suite returns named residuals against fixed thresholds.

#include <cstdint>
#include <string>
#include <vector>

#include "abf/qspecial.hpp"

namespace abf::verify {

struct Check {
  std::string name;
  double residual = 0.0;
  double threshold = 0.0;
  bool exact = false;  // passes only on residual == 0
  bool pass() const;
};

struct Suite {
  std::string name;
  std::vector<Check> checks;
  std::vector<std::string> notes;  // reported, not asserted
  double seconds = 0.0;

  bool pass() const;
  // failing check with the largest residual/threshold, else the tightest passing one
  const Check* worst() const;
  void add(std::string name, double residual, double threshold);
  void add_exact(std::string name, double residual);
};

Suite weights_suite(const std::vector<int>& ks, const std::vector<double>& xs, int n_u,
                    std::uint64_t seed, const Truncation& tr = {});
Suite lhp_suite(const std::vector<int>& ks, const std::vector<double>& xs,
                const Truncation& tr = {});
Suite partition_suite(const std::vector<int>& ks, const std::vector<double>& xs,
                      const Truncation& tr = {});
Suite gamma_suite(int k, double x, const Truncation& tr = {});
Suite fpoly_suite(const std::vector<int>& ks, double x, int n_max, std::uint64_t seed,
                  const Truncation& tr = {});
Suite trace_suite(int k, double x, std::uint64_t seed, const Truncation& tr = {});
Suite modular_suite(int k, const std::vector<double>& xs, const Truncation& tr = {});
Suite continuum_suite(const std::vector<int>& ks);
Suite rpoly_suite(const std::vector<int>& ks, std::uint64_t seed);
Suite dual_path_suite(const std::vector<int>& ks, int n_sets, std::uint64_t seed);
Suite scaling_suite(int k, int a, double beta, const std::vector<double>& xs,
                    const Truncation& tr = {});

// Every suite at one (k, x); the lattice-trace and continuum suites need k >= 3.
std::vector<Suite> full_suite(int k, double x, const Truncation& tr = {});

}  // namespace abf::verify
