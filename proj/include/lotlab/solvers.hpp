// Copyright 2026 The lotlab Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef LOTLAB_SOLVERS_HPP
#define LOTLAB_SOLVERS_HPP

#include "lotlab/instances.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace lotlab
{

/// Enumeration budgets of the exact oracles. Counts refer to binaries that
/// are actually enumerated; see `fix_free_binaries`.
struct OracleLimits
{
   std::size_t transfer_setup_bits = 20; ///< Y bits of MIUMPLS
   std::size_t setup_bits = 16;          ///< y bits per item of MIUMPLS
   std::size_t subset_bits = 20;         ///< facilities of UFL
   std::size_t joint_bits = 16;          ///< Y' bits of JRP

   /// Binaries whose fixed cost is zero are pinned open instead of being
   /// enumerated. Opening a free arc never hurts, so the optimum is unchanged.
   bool fix_free_binaries = true;
};

/// A 0/1 vector enumerated in lexicographic order (position 0 most
/// significant). Pinned positions keep their value and are skipped.
class SetupPattern
{
 public:
   explicit SetupPattern( std::size_t size ) : bits_( size, 0 ), pinned_( size, false ) {}

   std::size_t size() const { return bits_.size(); }
   int operator[]( std::size_t k ) const { return bits_[k]; }
   const std::vector<int>& bits() const { return bits_; }

   void pin( std::size_t k, int value )
   {
      bits_[k] = value;
      pinned_[k] = true;
   }

   std::size_t free_bits() const;

   /// Resets every free position to 0.
   void reset();

   /// Advances to the lexicographic successor over free positions; returns
   /// false (and leaves all free positions 0) after the last pattern.
   bool next();

 private:
   std::vector<int> bits_;
   std::vector<bool> pinned_;
};

/// Single-item uncapacitated lot-sizing plan.
struct LotSizingPlan
{
   bool feasible = false;
   std::vector<std::int64_t> produced;
   std::vector<std::int64_t> stock;
   std::vector<int> setup;
   std::int64_t cost = 0;
};

/// Exact single-item lot sizing restricted to `allowed` production periods
/// (O(NT^2) dynamic program over zero-inventory production segments).
/// Infeasibility is returned, not thrown.
LotSizingPlan wagner_whitin( const std::vector<std::int64_t>& demand,
                             const std::vector<std::int64_t>& setup,
                             const std::vector<std::int64_t>& unit,
                             const std::vector<std::int64_t>& holding,
                             const std::vector<bool>& allowed );

// Exact oracles. All throw BudgetExceeded when an enumeration budget is
// violated and break ties towards the lexicographically smallest pattern.

/// Enumerates transfer setups Y, then per item its production setups y, and
/// prices each fixed pattern with min_cost_flow. Returned binaries are 1
/// exactly where the matching flow is positive.
MiuMplsSolution solve_miumpls_exact( const MiuMplsInstance& instance,
                                     const OracleLimits& limits = {} );

/// Enumerates nonempty facility subsets; clients go to the cheapest open
/// facility (lowest index on ties).
UflSolution solve_ufl_exact( const UflInstance& instance, const OracleLimits& limits = {} );

/// Enumerates joint setup patterns and solves each item by wagner_whitin on
/// the periods left open.
JrpSolution solve_jrp_exact( const JrpInstance& instance, const OracleLimits& limits = {} );

AnySolution solve_exact( const AnyInstance& instance, const OracleLimits& limits = {} );

/// Integer cost of an oracle solution.
std::int64_t solution_cost( const AnySolution& solution );

/// Decision version: is there a solution of cost at most `threshold`?
struct Decision
{
   bool yes = false;
   std::int64_t optimum = 0;
   std::optional<AnySolution> witness; ///< optimal solution, present iff yes
};

Decision decide( const AnyInstance& instance, std::int64_t threshold,
                 const OracleLimits& limits = {} );

} // namespace lotlab

#endif
