// Copyright 2026 The lotlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "oracles.hpp"

#include "lotlab/cli.hpp"
#include "lotlab/errors.hpp"
#include "lotlab/reductions.hpp"
#include "lotlab/solvers.hpp"

#include <doctest.h>

using namespace lotlab;

namespace
{

UflInstance
ufl_of( std::vector<std::int64_t> q, std::vector<std::vector<std::int64_t>> v )
{
   UflInstance in( q.size(), v.size() );
   in.opening_cost = q;
   for( std::size_t l = 0; l < v.size(); ++l )
      for( std::size_t j = 0; j < q.size(); ++j )
         in.service_cost( l, j ) = v[l][j];
   return in;
}

JrpInstance
reference_jrp()
{
   JrpInstance in( 1, 2 );
   in.demand( 0, 0 ) = 2;
   in.demand( 0, 1 ) = 3;
   in.setup_cost( 0, 0 ) = 5;
   in.setup_cost( 0, 1 ) = 5;
   in.joint_setup_cost = { 4, 4 };
   in.holding_cost( 0, 0 ) = 1;
   in.holding_cost( 0, 1 ) = 1;
   return in;
}

} // namespace

TEST_CASE( "omega for facility location" )
{
   Omega omega = omega_ufl( ufl_of( { 5, 2 }, { { 3, 1 }, { 0, 2 } } ) );
   CHECK( omega.value == 24 );
   CHECK( omega.multiplier == 3 );
   REQUIRE( omega.terms.size() == 2 );
   CHECK( omega.terms[0].second == 5 );
   CHECK( omega.terms[1].second == 3 );
   CHECK( omega_ufl( ufl_of( { 0 }, { { 0 } } ) ).value == 0 );
   CHECK( omega_ufl( ufl_of( { 1 }, { { 1 }, { 1 }, { 1 } } ) ).value == 8 );
}

TEST_CASE( "omega for joint replenishment" )
{
   JrpInstance in( 1, 3 );
   in.setup_cost( 0, 1 ) = 5;
   in.unit_cost( 0, 2 ) = 2;
   in.holding_cost( 0, 0 ) = 1;
   in.joint_setup_cost = { 0, 4, 0 };
   CHECK( omega_jrp( in ).value == 48 );
   CHECK( omega_jrp( JrpInstance( 2, 2 ) ).value == 0 );
   JrpInstance one( 1, 1 );
   one.setup_cost( 0, 0 ) = 7;
   CHECK( omega_jrp( one ).value == 14 );
}

TEST_CASE( "omega refuses values that would not be exact" )
{
   UflInstance wide( 1, 4000 );
   wide.opening_cost[0] = kValueCap;
   // (2^40) * 4001 < 2^62, but above the data cap of the reduced instance.
   CHECK_NOTHROW( omega_ufl( wide ) );
   CHECK_THROWS_AS( reduce_ufl_to_umpls( wide ), OverflowError );
   // (4 * 2^40) * (2^20 + 1) reaches 2^62.
   JrpInstance longest( 1, std::size_t{ 1 } << 20 );
   longest.setup_cost( 0, 0 ) = kValueCap;
   longest.unit_cost( 0, 0 ) = kValueCap;
   longest.holding_cost( 0, 0 ) = kValueCap;
   longest.joint_setup_cost[0] = kValueCap;
   CHECK_THROWS_AS( omega_jrp( longest ), OverflowError );
   longest.joint_setup_cost[0] = 0;
   CHECK( omega_jrp( longest ).value == 3 * kValueCap * ( ( std::int64_t{ 1 } << 20 ) + 1 ) );
}

TEST_CASE( "facility location reduction layout" )
{
   UflInstance ufl = generate_ufl( 2, 3, 20, 12 );
   const std::int64_t omega = omega_ufl( ufl ).value;
   MiuMplsInstance mi = reduce_ufl_to_umpls( ufl );
   CHECK_NOTHROW( validate( mi ) );
   CHECK( mi.items == 1 );
   CHECK( mi.periods == 1 );
   CHECK( mi.plants == 5 );
   std::vector<std::int64_t> demand;
   for( std::size_t p = 0; p < 5; ++p )
      demand.push_back( mi.demand( 0, p, 0 ) );
   CHECK( demand == std::vector<std::int64_t>{ 0, 0, 1, 1, 1 } );
   for( std::size_t j = 0; j < 2; ++j )
   {
      CHECK( mi.setup_cost( 0, j, 0 ) == ufl.opening_cost[j] );
      CHECK( mi.unit_cost( 0, j, 0 ) == 0 );
   }
   for( std::size_t l = 0; l < 3; ++l )
   {
      CHECK( mi.setup_cost( 0, 2 + l, 0 ) == omega );
      CHECK( mi.unit_cost( 0, 2 + l, 0 ) == omega );
   }
   for( std::size_t p = 0; p < 5; ++p )
      for( std::size_t l = 0; l < 5; ++l )
      {
         if( p == l )
            continue;
         CHECK( mi.F( p, l, 0 ) == 0 );
         if( p < 2 && l >= 2 )
            CHECK( mi.r( 0, p, l, 0 ) == ufl.service_cost( l - 2, p ) );
         else
            CHECK( mi.r( 0, p, l, 0 ) == omega );
      }
   for( auto h : mi.holding_cost.flat() )
      CHECK( h == 0 );
}

TEST_CASE( "joint replenishment reduction layout" )
{
   JrpInstance jrp = generate_jrp( 2, 3, 20, 20, 3 );
   const std::int64_t omega = omega_jrp( jrp ).value;
   MiuMplsInstance mi = reduce_jrp_to_miu2pls( jrp );
   CHECK_NOTHROW( validate( mi ) );
   CHECK( mi.plants == 2 );
   CHECK( mi.items == 2 );
   CHECK( mi.periods == 3 );
   for( std::size_t i = 0; i < 2; ++i )
      for( std::size_t t = 0; t < 3; ++t )
      {
         CHECK( mi.demand( i, 0, t ) == 0 );
         CHECK( mi.demand( i, 1, t ) == jrp.demand( i, t ) );
         CHECK( mi.setup_cost( i, 0, t ) == jrp.setup_cost( i, t ) );
         CHECK( mi.unit_cost( i, 0, t ) == jrp.unit_cost( i, t ) );
         CHECK( mi.holding_cost( i, 0, t ) == omega );
         CHECK( mi.holding_cost( i, 1, t ) == jrp.holding_cost( i, t ) );
         CHECK( mi.setup_cost( i, 1, t ) == omega );
         CHECK( mi.unit_cost( i, 1, t ) == omega );
         CHECK( mi.r( i, 0, 1, t ) == 0 );
         CHECK( mi.r( i, 1, 0, t ) == omega );
      }
   for( std::size_t t = 0; t < 3; ++t )
   {
      CHECK( mi.F( 0, 1, t ) == jrp.joint_setup_cost[t] );
      CHECK( mi.F( 1, 0, t ) == omega );
   }
   CHECK( solve_miumpls_exact( reduce_jrp_to_miu2pls( reference_jrp() ) ).cost == Rational( 12 ) );
}

TEST_CASE( "facility location solution maps" )
{
   UflInstance one = ufl_of( { 2 }, { { 3 } } );
   Mapped<MiuMplsSolution> there = map_ufl_solution_forward( one, UflSolution{ { 1 }, { 0 }, 5 } );
   CHECK( there.solution.produced( 0, 0, 0 ) == Rational( 1 ) );
   CHECK( there.solution.shipped( 0, transfer_slot( 2, 0, 1 ), 0 ) == Rational( 1 ) );
   CHECK( there.solution.cost == Rational( 5 ) );
   CHECK( there.certificate.equal );
   CHECK( there.certificate.direction == MapDirection::forward );

   // Opening everything and serving all clients from facility 0.
   UflInstance ufl = generate_ufl( 3, 4, 20, 21 );
   UflSolution all{ { 1, 1, 1 }, { 0, 0, 0, 0 }, 0 };
   std::int64_t expected = 0;
   for( auto q : ufl.opening_cost )
      expected += q;
   for( std::size_t l = 0; l < 4; ++l )
      expected += ufl.service_cost( l, 0 );
   all.cost = expected;
   there = map_ufl_solution_forward( ufl, all );
   CHECK( there.certificate.target_cost == Rational( expected ) );
   CHECK( evaluate_and_check( reduce_ufl_to_umpls( ufl ), there.solution ).feasible() );

   Mapped<UflSolution> back = map_umpls_solution_backward( ufl, there.solution );
   CHECK( back.solution == all );
   CHECK( back.certificate.equal );

   UflInstance two = ufl_of( { 3, 5 }, { { 1, 9 }, { 4, 2 } } );
   MiuMplsSolution opt = solve_miumpls_exact( reduce_ufl_to_umpls( two ) );
   CHECK( map_umpls_solution_backward( two, opt ).solution.cost == 8 );

   CHECK_THROWS_AS( map_ufl_solution_forward( two, UflSolution{ { 0, 0 }, { 0, 0 }, 0 } ),
                    MappingError );
}

TEST_CASE( "split client supply is integralized to the cheaper source" )
{
   UflInstance ufl = ufl_of( { 0, 0 }, { { 3, 7 } } );
   MiuMplsInstance mi = reduce_ufl_to_umpls( ufl );
   MiuMplsSolution split( mi );
   for( std::size_t j = 0; j < 2; ++j )
   {
      split.produced( 0, j, 0 ) = Rational( 1, 2 );
      split.setup( 0, j, 0 ) = 1;
      split.shipped( 0, transfer_slot( 3, j, 2 ), 0 ) = Rational( 1, 2 );
      split.transfer_setup( transfer_slot( 3, j, 2 ), 0 ) = 1;
   }
   CheckReport before = evaluate_and_check( mi, split );
   REQUIRE( before.feasible() );
   CHECK( before.cost == Rational( 5 ) );
   Mapped<UflSolution> back = map_umpls_solution_backward( ufl, split );
   CHECK( back.solution.assign == std::vector<std::size_t>{ 0 } );
   CHECK( back.solution.cost == 3 );
   CHECK( before.cost - Rational( back.solution.cost ) == Rational( 2 ) );
   CHECK( back.certificate.target_cost == Rational( 5 ) );
   CHECK_FALSE( back.certificate.equal );
}

TEST_CASE( "backward facility map refuses penalised solutions" )
{
   UflInstance ufl = ufl_of( { 1 }, { { 1 } } );
   MiuMplsInstance mi = reduce_ufl_to_umpls( ufl );
   // The client produces its own unit at the penalty price.
   MiuMplsSolution own( mi );
   own.produced( 0, 1, 0 ) = 1;
   own.setup( 0, 1, 0 ) = 1;
   REQUIRE( evaluate_and_check( mi, own ).feasible() );
   CHECK_THROWS_AS( map_umpls_solution_backward( ufl, own ), MappingError );
}

TEST_CASE( "joint replenishment solution maps" )
{
   JrpInstance jrp = reference_jrp();
   JrpSolution opt = solve_jrp_exact( jrp );
   Mapped<MiuMplsSolution> there = map_jrp_solution_forward( jrp, opt );
   CHECK( there.solution.cost == Rational( 12 ) );
   CHECK( there.certificate.equal );
   MiuMplsInstance mi = reduce_jrp_to_miu2pls( jrp );
   CHECK( evaluate_and_check( mi, there.solution ).feasible() );
   for( std::size_t t = 0; t < 2; ++t )
   {
      CHECK( there.solution.shipped( 0, transfer_slot( 2, 0, 1 ), t ) == opt.produced( 0, t ) );
      CHECK( there.solution.stock( 0, 1, t ) == opt.stock( 0, t ) );
      CHECK( there.solution.transfer_setup( transfer_slot( 2, 0, 1 ), t ) == opt.joint_setup[t] );
   }

   Mapped<JrpSolution> back = map_miu2pls_solution_backward( jrp, there.solution );
   CHECK( back.solution == opt );
   CHECK( back.certificate.equal );

   back = map_miu2pls_solution_backward( jrp, solve_miumpls_exact( mi ) );
   CHECK( back.solution.cost == Rational( 12 ) );

   // Idle plans map to idle plans.
   JrpInstance idle = generate_jrp( 2, 2, 20, 0, 6 );
   JrpSolution nothing( idle );
   there = map_jrp_solution_forward( idle, nothing );
   CHECK( there.solution.cost == Rational( 0 ) );
   CHECK( there.solution == MiuMplsSolution( reduce_jrp_to_miu2pls( idle ) ) );

   // Stock at the production plant is priced at the penalty.
   MiuMplsSolution held = map_jrp_solution_forward( jrp, opt ).solution;
   held.produced( 0, 0, 0 ) = 5;
   held.stock( 0, 0, 0 ) = 3;
   held.shipped( 0, transfer_slot( 2, 0, 1 ), 0 ) = 2;
   held.shipped( 0, transfer_slot( 2, 0, 1 ), 1 ) = 3;
   held.stock( 0, 1, 0 ) = 0;
   held.transfer_setup( transfer_slot( 2, 0, 1 ), 1 ) = 1;
   CheckReport report = evaluate_and_check( mi, held );
   REQUIRE( report.feasible() );
   CHECK( report.cost >= Rational( omega_jrp( jrp ).value ) );
   CHECK_THROWS_AS( map_miu2pls_solution_backward( jrp, held ), MappingError );
}

TEST_CASE( "optima agree across both reductions" )
{
   for( std::uint64_t seed = 0; seed < 40; ++seed )
   {
      UflInstance ufl = generate_ufl( 1 + seed % 4, 1 + seed % 5, 20, seed );
      CHECK( solve_ufl_exact( ufl ).cost ==
             solve_miumpls_exact( reduce_ufl_to_umpls( ufl ) ).cost.as_integer() );
      JrpInstance jrp = generate_jrp( 1 + seed % 2, 1 + seed % 3, 20, 20, seed );
      CHECK( solve_jrp_exact( jrp ).cost == solve_miumpls_exact( reduce_jrp_to_miu2pls( jrp ) ).cost );
   }
}

TEST_CASE( "certificates serialize with their four fields" )
{
   ReductionCertificate c = make_certificate( 3, 4, MapDirection::backward );
   CHECK_FALSE( c.equal );
   CHECK( certificate_json( c ) ==
          R"({"direction":"backward","equal":false,"source_cost":3,"target_cost":4})" );
}
