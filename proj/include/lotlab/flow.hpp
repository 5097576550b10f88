// Copyright 2026 The lotlab Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef LOTLAB_FLOW_HPP
#define LOTLAB_FLOW_HPP

#include "lotlab/instances.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace lotlab
{

enum class ArcKind
{
   production, ///< source -> (p,t)
   holding,    ///< (p,t) -> (p,t+1)
   transfer,   ///< (p,t) -> (l,t)
};

struct FlowArc
{
   std::size_t from = 0;
   std::size_t to = 0;
   std::int64_t cost = 0;
   bool open = true; ///< closed arcs carry no flow

   // Lot-sizing coordinates of the arc; `dest` is only meaningful for transfers.
   ArcKind kind = ArcKind::production;
   std::size_t plant = 0;
   std::size_t dest = 0;
   std::size_t period = 0;
};

/// Single-commodity network with one supply node. Every open arc is
/// uncapacitated; node demands are nonnegative and the source supplies
/// their total.
struct FlowNetwork
{
   std::size_t nodes = 0;
   std::size_t source = 0;
   std::vector<std::int64_t> demand; ///< per node; demand[source] must be 0
   std::vector<FlowArc> arcs;

   std::int64_t total_demand() const;
};

struct FlowResult
{
   bool feasible = false;
   std::vector<std::int64_t> flow; ///< per arc, parallel to FlowNetwork::arcs
   std::int64_t cost = 0;
};

/// Minimum-cost flow by successive shortest paths (Dijkstra with node
/// potentials). Flows are integral. Throws ValidationError on negative arc
/// costs or demands.
FlowResult min_cost_flow( const FlowNetwork& network );

/// Network of item `item` with its production setups fixed to `setup`
/// (indexed [p*NT+t]) and transfer setups fixed to `transfer_setup`
/// (indexed [slot*NT+t]). Node (p,t) has id p*NT+t; the source is NP*NT.
FlowNetwork build_item_network( const MiuMplsInstance& instance, std::size_t item,
                                std::span<const int> setup, std::span<const int> transfer_setup );

} // namespace lotlab

#endif
