// Copyright 2026 The lotlab Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef LOTLAB_CLI_HPP
#define LOTLAB_CLI_HPP

#include "lotlab/instances.hpp"
#include "lotlab/reductions.hpp"
#include "lotlab/solvers.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace lotlab
{

/// Largest dimension `generate` accepts.
inline constexpr std::size_t kGenerateDimCap = 64;

/// Exit codes of the command-line tool.
enum ExitCode : int
{
   exit_ok = 0,
   exit_violation = 1,
   exit_error = 2, ///< budget, validation, parse and usage errors
};

/// Uniform integer in [lo, hi] drawn by rejection from a 64-bit Mersenne
/// twister, so the sequence does not depend on the standard library.
std::int64_t uniform_int( std::mt19937_64& engine, std::int64_t lo, std::int64_t hi );

// Generators draw every value in a fixed order: field by field in the order
// of the canonical JSON schema, each tensor row-major. Costs are uniform in
// [0, max_cost], demands in [0, max_demand].

UflInstance generate_ufl( std::size_t facilities, std::size_t clients, std::int64_t max_cost,
                          std::uint64_t seed );
JrpInstance generate_jrp( std::size_t items, std::size_t periods, std::int64_t max_cost,
                          std::int64_t max_demand, std::uint64_t seed );
MiuMplsInstance generate_miumpls( std::size_t items, std::size_t plants, std::size_t periods,
                                  std::int64_t max_cost, std::int64_t max_demand,
                                  std::uint64_t seed );

/// FNV-1a 64 of the canonical JSON, as 16 hex digits.
std::string instance_digest( const AnyInstance& instance );

/// Outcome of one reduction round trip checked by `verify`.
struct VerifyOutcome
{
   std::int64_t source_optimum = 0;
   std::int64_t target_optimum = 0;
   Omega omega;
   std::vector<ReductionCertificate> certificates;
   std::optional<std::string> violation; ///< first failed property
};

/// Solves both sides, maps the optima forward and backward and checks equal
/// optima, exact forward costs, non-increasing backward costs and optimal
/// round trips. Throws BudgetExceeded from the oracles.
VerifyOutcome verify_reduction( const UflInstance& instance, const OracleLimits& limits = {} );
VerifyOutcome verify_reduction( const JrpInstance& instance, const OracleLimits& limits = {} );

/// Entry point of the `lotlab` tool; `args` excludes the program name.
/// Returns one of ExitCode.
int run_cli( const std::vector<std::string>& args, std::ostream& out, std::ostream& err );

} // namespace lotlab

#endif
