// Copyright 2026 The lotlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "lotlab/solvers.hpp"

#include "lotlab/errors.hpp"
#include "lotlab/flow.hpp"

#include <limits>
#include <stdexcept>

namespace lotlab
{

std::size_t
SetupPattern::free_bits() const
{
   std::size_t n = 0;
   for( bool pinned : pinned_ )
      n += pinned ? 0 : 1;
   return n;
}

void
SetupPattern::reset()
{
   for( std::size_t k = 0; k < bits_.size(); ++k )
      if( !pinned_[k] )
         bits_[k] = 0;
}

bool
SetupPattern::next()
{
   for( std::size_t k = bits_.size(); k-- > 0; )
   {
      if( pinned_[k] )
         continue;
      if( bits_[k] == 0 )
      {
         bits_[k] = 1;
         return true;
      }
      bits_[k] = 0;
   }
   return false;
}

// ---------------------------------------------------------------------------

LotSizingPlan
wagner_whitin( const std::vector<std::int64_t>& demand, const std::vector<std::int64_t>& setup,
               const std::vector<std::int64_t>& unit, const std::vector<std::int64_t>& holding,
               const std::vector<bool>& allowed )
{
   const std::size_t NT = demand.size();
   if( setup.size() != NT || unit.size() != NT || holding.size() != NT || allowed.size() != NT )
      throw ValidationError( "wagner_whitin: per-period vectors differ in length" );

   constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max();
   constexpr std::size_t kNoProduction = static_cast<std::size_t>( -1 );

   // best[t]: cheapest plan covering periods [0, t) with zero stock after t-1.
   // start[t]: production period of the last segment, or kNoProduction when
   // period t-1 has no demand and is carried over from best[t-1].
   std::vector<std::int64_t> best( NT + 1, kInf );
   std::vector<std::size_t> start( NT + 1, kNoProduction );
   best[0] = 0;
   for( std::size_t t = 1; t <= NT; ++t )
   {
      if( demand[t - 1] == 0 && best[t - 1] != kInf )
         best[t] = best[t - 1];
      for( std::size_t k = 0; k < t; ++k )
      {
         if( !allowed[k] || best[k] == kInf )
            continue;
         std::int64_t segment = setup[k];
         std::int64_t carry = unit[k]; // unit cost of a unit produced in k, consumed in u
         std::int64_t amount = 0;
         for( std::size_t u = k; u < t; ++u )
         {
            if( u > k )
               carry = checked_add( carry, holding[u - 1] );
            segment = checked_add( segment, checked_mul( demand[u], carry ) );
            amount = checked_add( amount, demand[u] );
         }
         if( amount == 0 )
            continue;
         std::int64_t total = checked_add( best[k], segment );
         if( total < best[t] )
         {
            best[t] = total;
            start[t] = k;
         }
      }
   }

   LotSizingPlan plan;
   if( best[NT] == kInf )
      return plan;
   plan.feasible = true;
   plan.cost = best[NT];
   plan.produced.assign( NT, 0 );
   plan.stock.assign( NT, 0 );
   plan.setup.assign( NT, 0 );
   for( std::size_t t = NT; t > 0; )
   {
      if( start[t] == kNoProduction )
      {
         --t;
         continue;
      }
      std::size_t k = start[t];
      std::int64_t amount = 0;
      for( std::size_t u = k; u < t; ++u )
         amount += demand[u];
      plan.produced[k] = amount;
      plan.setup[k] = 1;
      t = k;
   }
   std::int64_t level = 0;
   for( std::size_t t = 0; t < NT; ++t )
   {
      level = level + plan.produced[t] - demand[t];
      plan.stock[t] = level;
   }
   return plan;
}

// ---------------------------------------------------------------------------

namespace
{

constexpr std::int64_t kNoBound = std::numeric_limits<std::int64_t>::max();

struct ItemOptimum
{
   std::int64_t cost = 0;
   std::vector<int> setup;
   FlowNetwork network;
   FlowResult flow;
};

/// Cheapest production-setup pattern of one item under fixed transfer
/// setups, considering only totals strictly below `cutoff`.
std::optional<ItemOptimum>
best_item_plan( const MiuMplsInstance& in, std::size_t item, SetupPattern pattern,
                const std::vector<int>& transfer_setup, std::int64_t cutoff )
{
   const std::size_t NT = in.periods;
   std::optional<ItemOptimum> best;
   do
   {
      std::int64_t bound = best ? std::min( best->cost, cutoff ) : cutoff;
      std::int64_t setup_total = 0;
      for( std::size_t k = 0; k < pattern.size(); ++k )
         if( pattern[k] )
            setup_total = checked_add( setup_total, in.setup_cost( item, k / NT, k % NT ) );
      if( setup_total >= bound )
         continue;
      FlowNetwork net = build_item_network( in, item, pattern.bits(), transfer_setup );
      FlowResult flow = min_cost_flow( net );
      if( !flow.feasible )
         continue;
      std::int64_t total = checked_add( setup_total, flow.cost );
      if( total < bound )
         best = ItemOptimum{ total, pattern.bits(), std::move( net ), std::move( flow ) };
   } while( pattern.next() );
   return best;
}

std::string
budget_message( const char* what, std::size_t bits, std::size_t limit )
{
   return std::string( what ) + " budget exceeded: " + std::to_string( bits ) +
          " enumerated bits > limit " + std::to_string( limit );
}

} // namespace

MiuMplsSolution
solve_miumpls_exact( const MiuMplsInstance& in, const OracleLimits& limits )
{
   validate( in );
   const std::size_t NI = in.items, NP = in.plants, NT = in.periods, NA = in.transfer_slots();

   SetupPattern transfer_pattern( NA * NT );
   if( limits.fix_free_binaries )
      for( std::size_t a = 0; a < NA; ++a )
         for( std::size_t t = 0; t < NT; ++t )
            if( in.transfer_setup_cost( a, t ) == 0 )
               transfer_pattern.pin( a * NT + t, 1 );
   if( transfer_pattern.free_bits() > limits.transfer_setup_bits )
      throw BudgetExceeded( budget_message( "transfer setup (Ybits)", transfer_pattern.free_bits(),
                                            limits.transfer_setup_bits ) );

   std::vector<SetupPattern> item_patterns;
   for( std::size_t i = 0; i < NI; ++i )
   {
      SetupPattern pattern( NP * NT );
      if( limits.fix_free_binaries )
         for( std::size_t p = 0; p < NP; ++p )
            for( std::size_t t = 0; t < NT; ++t )
               if( in.setup_cost( i, p, t ) == 0 )
                  pattern.pin( p * NT + t, 1 );
      if( pattern.free_bits() > limits.setup_bits )
         throw BudgetExceeded( budget_message( "production setup (ybits)", pattern.free_bits(),
                                               limits.setup_bits ) );
      item_patterns.push_back( std::move( pattern ) );
   }

   std::int64_t best_total = kNoBound;
   std::vector<ItemOptimum> best_items;
   do
   {
      std::int64_t total = 0;
      for( std::size_t k = 0; k < transfer_pattern.size(); ++k )
         if( transfer_pattern[k] )
            total = checked_add( total, in.transfer_setup_cost( k / NT, k % NT ) );
      if( total >= best_total )
         continue;
      std::vector<ItemOptimum> items;
      for( std::size_t i = 0; i < NI; ++i )
      {
         std::int64_t cutoff = best_total == kNoBound ? kNoBound : best_total - total;
         auto item = best_item_plan( in, i, item_patterns[i], transfer_pattern.bits(), cutoff );
         if( !item )
            break;
         total = checked_add( total, item->cost );
         items.push_back( std::move( *item ) );
      }
      if( items.size() == NI && total < best_total )
      {
         best_total = total;
         best_items = std::move( items );
      }
   } while( transfer_pattern.next() );

   // Opening every setup is always feasible, so an optimum exists.
   if( best_items.size() != NI )
      throw std::logic_error( "solve_miumpls_exact: no feasible pattern found" );

   MiuMplsSolution sol( in );
   for( std::size_t i = 0; i < NI; ++i )
   {
      const ItemOptimum& item = best_items[i];
      for( std::size_t a = 0; a < item.network.arcs.size(); ++a )
      {
         const FlowArc& arc = item.network.arcs[a];
         const std::int64_t amount = item.flow.flow[a];
         switch( arc.kind )
         {
         case ArcKind::production:
            sol.produced( i, arc.plant, arc.period ) = amount;
            break;
         case ArcKind::holding:
            sol.stock( i, arc.plant, arc.period ) = amount;
            break;
         case ArcKind::transfer:
            sol.shipped( i, transfer_slot( NP, arc.plant, arc.dest ), arc.period ) = amount;
            break;
         }
      }
   }
   for( std::size_t i = 0; i < NI; ++i )
      for( std::size_t p = 0; p < NP; ++p )
         for( std::size_t t = 0; t < NT; ++t )
            sol.setup( i, p, t ) = sol.produced( i, p, t ).is_positive() ? 1 : 0;
   for( std::size_t a = 0; a < NA; ++a )
      for( std::size_t t = 0; t < NT; ++t )
      {
         int used = 0;
         for( std::size_t i = 0; i < NI; ++i )
            used |= sol.shipped( i, a, t ).is_positive() ? 1 : 0;
         sol.transfer_setup( a, t ) = used;
      }

   CheckReport check = evaluate_and_check( in, sol );
   if( !check.feasible() || check.cost > Rational( best_total ) )
      throw std::logic_error( "solve_miumpls_exact: extracted plan disagrees with search" );
   sol.cost = check.cost;
   return sol;
}

UflSolution
solve_ufl_exact( const UflInstance& in, const OracleLimits& limits )
{
   validate( in );
   const std::size_t NS = in.facilities, NC = in.clients;
   if( NS > limits.subset_bits )
      throw BudgetExceeded( budget_message( "facility subset (subset_bits)", NS,
                                            limits.subset_bits ) );

   SetupPattern subset( NS );
   std::int64_t best_cost = kNoBound;
   UflSolution best;
   while( subset.next() )
   {
      std::int64_t cost = 0;
      for( std::size_t j = 0; j < NS; ++j )
         if( subset[j] )
            cost = checked_add( cost, in.opening_cost[j] );
      if( cost >= best_cost )
         continue;
      std::vector<std::size_t> assign( NC );
      for( std::size_t l = 0; l < NC; ++l )
      {
         std::size_t chosen = NS;
         for( std::size_t j = 0; j < NS; ++j )
            if( subset[j] && ( chosen == NS || in.service_cost( l, j ) < in.service_cost( l, chosen ) ) )
               chosen = j;
         assign[l] = chosen;
         cost = checked_add( cost, in.service_cost( l, chosen ) );
      }
      if( cost < best_cost )
      {
         best_cost = cost;
         best.open = subset.bits();
         best.assign = std::move( assign );
         best.cost = cost;
      }
   }
   return best;
}

JrpSolution
solve_jrp_exact( const JrpInstance& in, const OracleLimits& limits )
{
   validate( in );
   const std::size_t NI = in.items, NT = in.periods;

   SetupPattern joint( NT );
   if( limits.fix_free_binaries )
      for( std::size_t t = 0; t < NT; ++t )
         if( in.joint_setup_cost[t] == 0 )
            joint.pin( t, 1 );
   if( joint.free_bits() > limits.joint_bits )
      throw BudgetExceeded( budget_message( "joint setup (joint_bits)", joint.free_bits(),
                                            limits.joint_bits ) );

   std::vector<std::vector<std::int64_t>> demand( NI ), setup( NI ), unit( NI ), holding( NI );
   for( std::size_t i = 0; i < NI; ++i )
      for( std::size_t t = 0; t < NT; ++t )
      {
         demand[i].push_back( in.demand( i, t ) );
         setup[i].push_back( in.setup_cost( i, t ) );
         unit[i].push_back( in.unit_cost( i, t ) );
         holding[i].push_back( in.holding_cost( i, t ) );
      }

   std::int64_t best_total = kNoBound;
   std::vector<LotSizingPlan> best_plans;
   do
   {
      std::int64_t total = 0;
      std::vector<bool> allowed( NT );
      for( std::size_t t = 0; t < NT; ++t )
      {
         allowed[t] = joint[t] == 1;
         if( allowed[t] )
            total = checked_add( total, in.joint_setup_cost[t] );
      }
      if( total >= best_total )
         continue;
      std::vector<LotSizingPlan> plans;
      for( std::size_t i = 0; i < NI && total < best_total; ++i )
      {
         LotSizingPlan plan = wagner_whitin( demand[i], setup[i], unit[i], holding[i], allowed );
         if( !plan.feasible )
            break;
         total = checked_add( total, plan.cost );
         plans.push_back( std::move( plan ) );
      }
      if( plans.size() == NI && total < best_total )
      {
         best_total = total;
         best_plans = std::move( plans );
      }
   } while( joint.next() );

   if( best_plans.size() != NI )
      throw std::logic_error( "solve_jrp_exact: no feasible joint pattern found" );

   JrpSolution sol( in );
   for( std::size_t i = 0; i < NI; ++i )
      for( std::size_t t = 0; t < NT; ++t )
      {
         sol.produced( i, t ) = best_plans[i].produced[t];
         sol.stock( i, t ) = best_plans[i].stock[t];
         sol.setup( i, t ) = best_plans[i].setup[t];
         sol.joint_setup[t] |= best_plans[i].setup[t];
      }
   CheckReport check = evaluate_and_check( in, sol );
   if( !check.feasible() || check.cost > Rational( best_total ) )
      throw std::logic_error( "solve_jrp_exact: assembled plan disagrees with search" );
   sol.cost = check.cost;
   return sol;
}

AnySolution
solve_exact( const AnyInstance& instance, const OracleLimits& limits )
{
   return std::visit(
       [&]( const auto& in ) -> AnySolution
       {
          using T = std::decay_t<decltype( in )>;
          if constexpr( std::is_same_v<T, MiuMplsInstance> )
             return solve_miumpls_exact( in, limits );
          else if constexpr( std::is_same_v<T, UflInstance> )
             return solve_ufl_exact( in, limits );
          else
             return solve_jrp_exact( in, limits );
       },
       instance );
}

std::int64_t
solution_cost( const AnySolution& solution )
{
   return std::visit(
       []( const auto& sol ) -> std::int64_t
       {
          using T = std::decay_t<decltype( sol )>;
          if constexpr( std::is_same_v<T, UflSolution> )
             return sol.cost;
          else
             return sol.cost.as_integer();
       },
       solution );
}

Decision
decide( const AnyInstance& instance, std::int64_t threshold, const OracleLimits& limits )
{
   AnySolution optimal = solve_exact( instance, limits );
   Decision decision;
   decision.optimum = solution_cost( optimal );
   decision.yes = decision.optimum <= threshold;
   if( decision.yes )
      decision.witness = std::move( optimal );
   return decision;
}

} // namespace lotlab
