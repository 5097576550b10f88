// Copyright 2026 The lotlab Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef LOTLAB_INSTANCES_HPP
#define LOTLAB_INSTANCES_HPP

#include "lotlab/rational.hpp"
#include "lotlab/tensor.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace lotlab
{

/// Upper bound on every instance datum. Keeps every objective sum the
/// library forms inside signed 64-bit range under checked arithmetic.
inline constexpr std::int64_t kValueCap = std::int64_t{ 1 } << 40;

/// Ordered plant pairs (p, l) with p != l are stored in NP*(NP-1) slots;
/// the diagonal has no slot at all.
std::size_t transfer_slot( std::size_t plants, std::size_t from, std::size_t to );
std::pair<std::size_t, std::size_t> transfer_pair( std::size_t plants, std::size_t slot );

/// Multi-item uncapacitated multi-plant lot-sizing with fixed transfer costs.
struct MiuMplsInstance
{
   std::size_t items = 0;
   std::size_t plants = 0;
   std::size_t periods = 0;

   Tensor<std::int64_t, 3> demand;       ///< d[i][p][t]
   Tensor<std::int64_t, 3> setup_cost;   ///< f[i][p][t]
   Tensor<std::int64_t, 3> unit_cost;    ///< c[i][p][t]
   Tensor<std::int64_t, 3> holding_cost; ///< h[i][p][t]
   Tensor<std::int64_t, 3> transfer_cost;       ///< r[i][slot(p,l)][t]
   Tensor<std::int64_t, 2> transfer_setup_cost; ///< F[slot(p,l)][t]

   MiuMplsInstance() = default;
   /// Zero-filled instance of the given dimensions.
   MiuMplsInstance( std::size_t items, std::size_t plants, std::size_t periods );

   std::size_t transfer_slots() const { return plants * ( plants - 1 ); }

   std::int64_t& r( std::size_t i, std::size_t p, std::size_t l, std::size_t t )
   {
      return transfer_cost( i, transfer_slot( plants, p, l ), t );
   }
   std::int64_t r( std::size_t i, std::size_t p, std::size_t l, std::size_t t ) const
   {
      return transfer_cost( i, transfer_slot( plants, p, l ), t );
   }
   std::int64_t& F( std::size_t p, std::size_t l, std::size_t t )
   {
      return transfer_setup_cost( transfer_slot( plants, p, l ), t );
   }
   std::int64_t F( std::size_t p, std::size_t l, std::size_t t ) const
   {
      return transfer_setup_cost( transfer_slot( plants, p, l ), t );
   }

   friend bool operator==( const MiuMplsInstance&, const MiuMplsInstance& ) = default;
};

/// Full variable assignment of the MIUMPLS model.
struct MiuMplsSolution
{
   Tensor<Rational, 3> produced; ///< x[i][p][t]
   Tensor<Rational, 3> stock;    ///< s[i][p][t], end of period
   Tensor<Rational, 3> shipped;  ///< w[i][slot(p,l)][t]
   Tensor<int, 3> setup;         ///< y[i][p][t]
   Tensor<int, 2> transfer_setup; ///< Y[slot(p,l)][t]
   Rational cost;

   MiuMplsSolution() = default;
   /// All-zero solution shaped for `instance`.
   explicit MiuMplsSolution( const MiuMplsInstance& instance );

   friend bool operator==( const MiuMplsSolution&, const MiuMplsSolution& ) = default;
};

/// Uncapacitated facility location.
struct UflInstance
{
   std::size_t facilities = 0;
   std::size_t clients = 0;
   std::vector<std::int64_t> opening_cost; ///< q[j]
   Tensor<std::int64_t, 2> service_cost;   ///< v[l][j]

   UflInstance() = default;
   UflInstance( std::size_t facilities, std::size_t clients );

   friend bool operator==( const UflInstance&, const UflInstance& ) = default;
};

struct UflSolution
{
   std::vector<int> open;           ///< open[j] in {0,1}
   std::vector<std::size_t> assign; ///< facility serving client l
   std::int64_t cost = 0;

   friend bool operator==( const UflSolution&, const UflSolution& ) = default;
};

/// Joint-replenishment problem.
struct JrpInstance
{
   std::size_t items = 0;
   std::size_t periods = 0;
   Tensor<std::int64_t, 2> demand;       ///< d'[i][t]
   Tensor<std::int64_t, 2> setup_cost;   ///< f'[i][t]
   std::vector<std::int64_t> joint_setup_cost; ///< F'[t]
   Tensor<std::int64_t, 2> unit_cost;    ///< c'[i][t]
   Tensor<std::int64_t, 2> holding_cost; ///< h'[i][t]

   JrpInstance() = default;
   JrpInstance( std::size_t items, std::size_t periods );

   friend bool operator==( const JrpInstance&, const JrpInstance& ) = default;
};

struct JrpSolution
{
   Tensor<Rational, 2> produced; ///< x'[i][t]
   Tensor<Rational, 2> stock;    ///< s'[i][t]
   Tensor<int, 2> setup;         ///< y'[i][t]
   std::vector<int> joint_setup; ///< Y'[t]
   Rational cost;

   JrpSolution() = default;
   explicit JrpSolution( const JrpInstance& instance );

   friend bool operator==( const JrpSolution&, const JrpSolution& ) = default;
};

using AnyInstance = std::variant<MiuMplsInstance, UflInstance, JrpInstance>;
using AnySolution = std::variant<MiuMplsSolution, UflSolution, JrpSolution>;

/// "miumpls", "ufl" or "jrp".
std::string_view problem_tag( const AnyInstance& instance );

// Validation. Each returns its argument or throws ValidationError naming
// the offending tensor and index.
const MiuMplsInstance& validate( const MiuMplsInstance& instance );
const UflInstance& validate( const UflInstance& instance );
const JrpInstance& validate( const JrpInstance& instance );
const AnyInstance& validate( const AnyInstance& instance );

// JSON. Canonical form: sorted keys, integers only, compact, one trailing newline.
AnyInstance parse_instance( std::string_view text );
std::string serialize_instance( const AnyInstance& instance );
AnySolution parse_solution( std::string_view text );
std::string serialize_solution( const AnySolution& solution );

/// Outcome of recomputing a solution against its instance.
struct CheckReport
{
   std::optional<std::string> violation; ///< first violated condition
   Rational cost;                        ///< recomputed objective

   bool feasible() const { return !violation.has_value(); }
};

// Recompute the objective from scratch and test every balance, linking,
// sign and integrality condition. Shape mismatches throw ValidationError.
CheckReport evaluate_and_check( const MiuMplsInstance& instance, const MiuMplsSolution& solution );
CheckReport evaluate_and_check( const UflInstance& instance, const UflSolution& solution );
CheckReport evaluate_and_check( const JrpInstance& instance, const JrpSolution& solution );

} // namespace lotlab

#endif
