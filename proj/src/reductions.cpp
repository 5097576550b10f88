// Copyright 2026 The lotlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "lotlab/reductions.hpp"

#include "lotlab/errors.hpp"

#include "json.hpp"

#include <algorithm>

namespace lotlab
{

namespace
{

Omega
finish_omega( std::vector<std::pair<std::string, std::int64_t>> terms, std::int64_t multiplier )
{
   Omega omega;
   std::int64_t sum = 0;
   for( const auto& [name, value] : terms )
      sum = checked_add( sum, value );
   std::int64_t value = 0;
   try
   {
      value = checked_mul( sum, multiplier );
   }
   catch( const OverflowError& )
   {
      throw OverflowError( "penalty value overflows 64-bit arithmetic" );
   }
   if( value >= kOmegaLimit )
      throw OverflowError( "penalty value " + std::to_string( value ) + " reaches 2^62" );
   omega.value = value;
   omega.terms = std::move( terms );
   omega.multiplier = multiplier;
   return omega;
}

void
require_representable( const Omega& omega )
{
   if( omega.value > kValueCap )
      throw OverflowError( "penalty value " + std::to_string( omega.value ) +
                           " exceeds the 2^40 data cap of the reduced instance" );
}

std::int64_t
max_of( const std::vector<std::int64_t>& values )
{
   return values.empty() ? 0 : *std::max_element( values.begin(), values.end() );
}

void
require_feasible( const CheckReport& report, const char* what )
{
   if( !report.feasible() )
      throw MappingError( std::string( what ) + " is infeasible: " + *report.violation );
}

} // namespace

Omega
omega_ufl( const UflInstance& in )
{
   validate( in );
   return finish_omega( { { "max q", max_of( in.opening_cost ) },
                          { "max v", max_of( in.service_cost.flat() ) } },
                        static_cast<std::int64_t>( in.clients ) + 1 );
}

Omega
omega_jrp( const JrpInstance& in )
{
   validate( in );
   return finish_omega( { { "max f'", max_of( in.setup_cost.flat() ) },
                          { "max c'", max_of( in.unit_cost.flat() ) },
                          { "max h'", max_of( in.holding_cost.flat() ) },
                          { "max F'", max_of( in.joint_setup_cost ) } },
                        static_cast<std::int64_t>( in.periods ) + 1 );
}

MiuMplsInstance
reduce_ufl_to_umpls( const UflInstance& ufl )
{
   const Omega omega = omega_ufl( ufl );
   require_representable( omega );
   const std::int64_t big = omega.value;
   const std::size_t NS = ufl.facilities, NC = ufl.clients;

   MiuMplsInstance out( 1, NS + NC, 1 );
   for( std::size_t j = 0; j < NS; ++j )
      out.setup_cost( 0, j, 0 ) = ufl.opening_cost[j];
   for( std::size_t l = 0; l < NC; ++l )
   {
      out.demand( 0, NS + l, 0 ) = 1;
      out.setup_cost( 0, NS + l, 0 ) = big;
      out.unit_cost( 0, NS + l, 0 ) = big;
   }
   for( std::size_t p = 0; p < NS + NC; ++p )
      for( std::size_t q = 0; q < NS + NC; ++q )
         if( p != q )
         {
            const bool facility_to_client = p < NS && q >= NS;
            out.r( 0, p, q, 0 ) = facility_to_client ? ufl.service_cost( q - NS, p ) : big;
         }
   return out;
}

MiuMplsInstance
reduce_jrp_to_miu2pls( const JrpInstance& jrp )
{
   const Omega omega = omega_jrp( jrp );
   require_representable( omega );
   const std::int64_t big = omega.value;

   MiuMplsInstance out( jrp.items, 2, jrp.periods );
   for( std::size_t i = 0; i < jrp.items; ++i )
      for( std::size_t t = 0; t < jrp.periods; ++t )
      {
         out.setup_cost( i, 0, t ) = jrp.setup_cost( i, t );
         out.unit_cost( i, 0, t ) = jrp.unit_cost( i, t );
         out.holding_cost( i, 0, t ) = big;
         out.r( i, 0, 1, t ) = 0;

         out.demand( i, 1, t ) = jrp.demand( i, t );
         out.setup_cost( i, 1, t ) = big;
         out.unit_cost( i, 1, t ) = big;
         out.holding_cost( i, 1, t ) = jrp.holding_cost( i, t );
         out.r( i, 1, 0, t ) = big;
      }
   for( std::size_t t = 0; t < jrp.periods; ++t )
   {
      out.F( 0, 1, t ) = jrp.joint_setup_cost[t];
      out.F( 1, 0, t ) = big;
   }
   return out;
}

ReductionCertificate
make_certificate( Rational source_cost, Rational target_cost, MapDirection direction )
{
   return { source_cost, target_cost, direction, source_cost == target_cost };
}

std::string
certificate_json( const ReductionCertificate& certificate )
{
   auto number = []( const Rational& value ) -> nlohmann::json
   {
      if( value.is_integer() )
         return value.num();
      return value.to_string();
   };
   nlohmann::json doc;
   doc["direction"] = certificate.direction == MapDirection::forward ? "forward" : "backward";
   doc["equal"] = certificate.equal;
   doc["source_cost"] = number( certificate.source_cost );
   doc["target_cost"] = number( certificate.target_cost );
   return doc.dump();
}

Mapped<MiuMplsSolution>
map_ufl_solution_forward( const UflInstance& ufl, const UflSolution& solution )
{
   require_feasible( evaluate_and_check( ufl, solution ), "UFL solution" );
   const MiuMplsInstance reduced = reduce_ufl_to_umpls( ufl );
   const std::size_t NS = ufl.facilities, NP = reduced.plants;

   MiuMplsSolution out( reduced );
   for( std::size_t j = 0; j < NS; ++j )
      out.setup( 0, j, 0 ) = solution.open[j];
   for( std::size_t l = 0; l < ufl.clients; ++l )
   {
      const std::size_t j = solution.assign[l];
      out.produced( 0, j, 0 ) += 1;
      const std::size_t slot = transfer_slot( NP, j, NS + l );
      out.shipped( 0, slot, 0 ) = 1;
      out.transfer_setup( slot, 0 ) = 1;
   }
   const CheckReport check = evaluate_and_check( reduced, out );
   require_feasible( check, "mapped lot-sizing solution" );
   out.cost = check.cost;
   return { std::move( out ), make_certificate( solution.cost, check.cost, MapDirection::forward ) };
}

Mapped<UflSolution>
map_umpls_solution_backward( const UflInstance& ufl, const MiuMplsSolution& solution )
{
   const MiuMplsInstance reduced = reduce_ufl_to_umpls( ufl );
   const CheckReport check = evaluate_and_check( reduced, solution );
   require_feasible( check, "lot-sizing solution" );
   const Omega omega = omega_ufl( ufl );
   if( omega.value > 0 && check.cost >= Rational( omega.value ) )
      throw MappingError( "solution cost " + check.cost.to_string() + " is not below the penalty " +
                          std::to_string( omega.value ) +
                          "; it uses a forbidden transfer or client production" );

   const std::size_t NS = ufl.facilities, NC = ufl.clients, NP = reduced.plants;
   UflSolution out;
   out.open.assign( NS, 0 );
   for( std::size_t j = 0; j < NS; ++j )
      out.open[j] = solution.setup( 0, j, 0 );

   // Only reachable when every cost is zero: no facility needs to be open.
   if( std::find( out.open.begin(), out.open.end(), 1 ) == out.open.end() )
      out.open[0] = 1;

   auto cheapest = [&]( std::size_t l, auto&& eligible )
   {
      std::size_t chosen = NS;
      for( std::size_t j = 0; j < NS; ++j )
         if( eligible( j ) && ( chosen == NS || ufl.service_cost( l, j ) < ufl.service_cost( l, chosen ) ) )
            chosen = j;
      return chosen;
   };

   out.assign.assign( NC, 0 );
   for( std::size_t l = 0; l < NC; ++l )
   {
      Rational direct = 0;
      for( std::size_t j = 0; j < NS; ++j )
         if( out.open[j] == 1 && solution.setup( 0, j, 0 ) == 1 )
            direct += solution.shipped( 0, transfer_slot( NP, j, NS + l ), 0 );
      if( direct == Rational( 1 ) )
         out.assign[l] = cheapest(
             l,
             [&]( std::size_t j )
             {
                return solution.setup( 0, j, 0 ) == 1 &&
                       solution.shipped( 0, transfer_slot( NP, j, NS + l ), 0 ).is_positive();
             } );
      else
         out.assign[l] = cheapest( l, [&]( std::size_t j ) { return out.open[j] == 1; } );
   }

   const CheckReport recovered = evaluate_and_check( ufl, out );
   require_feasible( recovered, "recovered UFL solution" );
   out.cost = recovered.cost.as_integer();
   if( recovered.cost > check.cost )
      throw std::logic_error( "backward map increased the cost" );
   return { std::move( out ),
            make_certificate( recovered.cost, check.cost, MapDirection::backward ) };
}

Mapped<MiuMplsSolution>
map_jrp_solution_forward( const JrpInstance& jrp, const JrpSolution& solution )
{
   const CheckReport source = evaluate_and_check( jrp, solution );
   require_feasible( source, "JRP solution" );
   const MiuMplsInstance reduced = reduce_jrp_to_miu2pls( jrp );
   const std::size_t forward = transfer_slot( 2, 0, 1 );

   MiuMplsSolution out( reduced );
   for( std::size_t i = 0; i < jrp.items; ++i )
      for( std::size_t t = 0; t < jrp.periods; ++t )
      {
         out.setup( i, 0, t ) = solution.setup( i, t );
         out.produced( i, 0, t ) = solution.produced( i, t );
         out.stock( i, 1, t ) = solution.stock( i, t );
         out.shipped( i, forward, t ) = solution.produced( i, t );
      }
   for( std::size_t t = 0; t < jrp.periods; ++t )
      out.transfer_setup( forward, t ) = solution.joint_setup[t];

   const CheckReport check = evaluate_and_check( reduced, out );
   require_feasible( check, "mapped lot-sizing solution" );
   out.cost = check.cost;
   return { std::move( out ), make_certificate( source.cost, check.cost, MapDirection::forward ) };
}

Mapped<JrpSolution>
map_miu2pls_solution_backward( const JrpInstance& jrp, const MiuMplsSolution& solution )
{
   const MiuMplsInstance reduced = reduce_jrp_to_miu2pls( jrp );
   const CheckReport check = evaluate_and_check( reduced, solution );
   require_feasible( check, "lot-sizing solution" );
   const Omega omega = omega_jrp( jrp );
   const std::size_t NI = jrp.items, NT = jrp.periods;
   const std::size_t forward = transfer_slot( 2, 0, 1 );
   const std::size_t reverse = transfer_slot( 2, 1, 0 );

   std::string device;
   for( std::size_t t = 0; t < NT && device.empty(); ++t )
   {
      if( solution.transfer_setup( reverse, t ) != 0 )
         device = "reverse transfer setup in period " + std::to_string( t );
      for( std::size_t i = 0; i < NI && device.empty(); ++i )
      {
         if( solution.setup( i, 1, t ) != 0 || solution.produced( i, 1, t ).is_positive() )
            device = "production at the demand plant";
         else if( solution.shipped( i, reverse, t ).is_positive() )
            device = "reverse transfer";
         else if( solution.stock( i, 0, t ).is_positive() )
            device = "storage at the production plant";
         if( !device.empty() )
            device += " (item " + std::to_string( i ) + ", period " + std::to_string( t ) + ")";
      }
   }

   JrpSolution out( jrp );
   if( !device.empty() )
   {
      if( omega.value > 0 )
         throw MappingError( "solution uses a penalised device: " + device );
      // All source costs are zero here, so lot-for-lot is an equally cheap plan.
      for( std::size_t i = 0; i < NI; ++i )
         for( std::size_t t = 0; t < NT; ++t )
         {
            out.produced( i, t ) = jrp.demand( i, t );
            out.setup( i, t ) = jrp.demand( i, t ) > 0 ? 1 : 0;
            out.joint_setup[t] |= out.setup( i, t );
         }
   }
   else
   {
      for( std::size_t t = 0; t < NT; ++t )
         out.joint_setup[t] = solution.transfer_setup( forward, t );
      for( std::size_t i = 0; i < NI; ++i )
         for( std::size_t t = 0; t < NT; ++t )
         {
            out.produced( i, t ) = solution.produced( i, 0, t );
            out.stock( i, t ) = solution.stock( i, 1, t );
            // An idle setup in a period without a joint setup has no JRP
            // counterpart; dropping it only lowers the cost.
            const bool idle = !solution.produced( i, 0, t ).is_positive();
            out.setup( i, t ) =
                solution.setup( i, 0, t ) == 1 && !( idle && out.joint_setup[t] == 0 ) ? 1 : 0;
         }
   }

   const CheckReport recovered = evaluate_and_check( jrp, out );
   require_feasible( recovered, "recovered JRP solution" );
   out.cost = recovered.cost;
   if( recovered.cost > check.cost )
      throw std::logic_error( "backward map increased the cost" );
   return { std::move( out ),
            make_certificate( recovered.cost, check.cost, MapDirection::backward ) };
}

} // namespace lotlab
