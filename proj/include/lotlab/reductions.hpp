// Copyright 2026 The lotlab Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef LOTLAB_REDUCTIONS_HPP
#define LOTLAB_REDUCTIONS_HPP

#include "lotlab/instances.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace lotlab
{

/// Reductions refuse any instance whose penalty reaches this value.
inline constexpr std::int64_t kOmegaLimit = std::int64_t{ 1 } << 62;

/// The penalty price of forbidden devices in a reduced instance, together
/// with the terms it was computed from: value = (sum of terms) * multiplier.
struct Omega
{
   std::int64_t value = 0;
   std::vector<std::pair<std::string, std::int64_t>> terms;
   std::int64_t multiplier = 0;
};

/// (max q + max v) * (NC + 1).
Omega omega_ufl( const UflInstance& instance );

/// (max f' + max c' + max h' + max F') * (NT + 1).
Omega omega_jrp( const JrpInstance& instance );

/// Single-item, single-period instance with one plant per facility
/// (plants 0..NS-1) followed by one plant per client (plants NS..NS+NC-1).
/// Throws OverflowError when the penalty does not fit the instance value cap.
MiuMplsInstance reduce_ufl_to_umpls( const UflInstance& instance );

/// Two-plant instance: plant 0 produces at the source costs, plant 1 holds
/// the demand; every other device is priced at the penalty.
MiuMplsInstance reduce_jrp_to_miu2pls( const JrpInstance& instance );

enum class MapDirection
{
   forward,  ///< source problem -> lot-sizing instance
   backward, ///< lot-sizing instance -> source problem
};

/// Costs on both sides of a reduction. `source_cost` is measured on the
/// UFL/JRP side and `target_cost` on the lot-sizing side, whatever the
/// direction of the mapping.
struct ReductionCertificate
{
   Rational source_cost;
   Rational target_cost;
   MapDirection direction = MapDirection::forward;
   bool equal = false;
};

ReductionCertificate make_certificate( Rational source_cost, Rational target_cost,
                                       MapDirection direction );

/// {"direction":..., "equal":..., "source_cost":..., "target_cost":...}
std::string certificate_json( const ReductionCertificate& certificate );

template <typename Solution>
struct Mapped
{
   Solution solution;
   ReductionCertificate certificate;
};

/// Opens the plants of open facilities, ships one unit along every
/// facility-client assignment. Cost is preserved exactly.
Mapped<MiuMplsSolution> map_ufl_solution_forward( const UflInstance& ufl,
                                                  const UflSolution& solution );

/// Recovers a facility location solution from a feasible solution of the
/// reduced instance whose cost is below the penalty. A client fed by split
/// or indirect flow is assigned whole to its cheapest open inflow source
/// (cheapest open facility when part of its supply used a penalised
/// device). The returned cost never exceeds the input cost.
Mapped<UflSolution> map_umpls_solution_backward( const UflInstance& ufl,
                                                 const MiuMplsSolution& solution );

/// Produces at plant 0, ships everything the same period, stores at plant 1.
Mapped<MiuMplsSolution> map_jrp_solution_forward( const JrpInstance& jrp,
                                                  const JrpSolution& solution );

/// Reads the production plan off plant 0 and the stock off plant 1. Throws
/// MappingError when the solution uses a penalised device (plant-1
/// production, reverse transfer, plant-0 storage).
Mapped<JrpSolution> map_miu2pls_solution_backward( const JrpInstance& jrp,
                                                   const MiuMplsSolution& solution );

} // namespace lotlab

#endif
