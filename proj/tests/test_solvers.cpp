// Copyright 2026 The lotlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "oracles.hpp"

#include "lotlab/cli.hpp"
#include "lotlab/errors.hpp"
#include "lotlab/reductions.hpp"
#include "lotlab/solvers.hpp"

#include <doctest.h>

#include <random>

using namespace lotlab;

namespace
{

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

UflInstance
small_ufl()
{
   UflInstance in( 2, 2 );
   in.opening_cost = { 3, 5 };
   in.service_cost( 0, 0 ) = 1;
   in.service_cost( 0, 1 ) = 9;
   in.service_cost( 1, 0 ) = 4;
   in.service_cost( 1, 1 ) = 2;
   return in;
}

std::string
budget_message( auto&& fn )
{
   try
   {
      fn();
   }
   catch( const BudgetExceeded& e )
   {
      return e.what();
   }
   return "";
}

} // namespace

TEST_CASE( "setup patterns count in lexicographic order over free bits" )
{
   SetupPattern pattern( 3 );
   pattern.pin( 1, 1 );
   CHECK( pattern.free_bits() == 2 );
   std::vector<std::vector<int>> seen{ pattern.bits() };
   while( pattern.next() )
      seen.push_back( pattern.bits() );
   CHECK( seen == std::vector<std::vector<int>>{ { 0, 1, 0 }, { 0, 1, 1 }, { 1, 1, 0 }, { 1, 1, 1 } } );
   // Wrapped back to the first pattern.
   CHECK( pattern.bits() == std::vector<int>{ 0, 1, 0 } );
}

TEST_CASE( "wagner_whitin examples" )
{
   LotSizingPlan plan = wagner_whitin( { 2, 3 }, { 5, 5 }, { 0, 0 }, { 1, 1 }, { true, true } );
   REQUIRE( plan.feasible );
   CHECK( plan.cost == 8 );
   CHECK( plan.produced == std::vector<std::int64_t>{ 5, 0 } );
   CHECK( plan.stock == std::vector<std::int64_t>{ 3, 0 } );
   CHECK( plan.setup == std::vector<int>{ 1, 0 } );

   plan = wagner_whitin( { 0, 0 }, { 9, 9 }, { 9, 9 }, { 9, 9 }, { true, true } );
   CHECK( plan.feasible );
   CHECK( plan.cost == 0 );
   CHECK( plan.produced == std::vector<std::int64_t>{ 0, 0 } );

   plan = wagner_whitin( { 1, 0 }, { 0, 0 }, { 0, 0 }, { 0, 0 }, { false, true } );
   CHECK_FALSE( plan.feasible );

   // Zero demand before the first allowed period is fine.
   plan = wagner_whitin( { 0, 4 }, { 1, 1 }, { 1, 1 }, { 0, 0 }, { false, true } );
   CHECK( plan.feasible );
   CHECK( plan.cost == 5 );
}

TEST_CASE( "wagner_whitin equals subset enumeration" )
{
   std::mt19937_64 rng( 5 );
   for( int k = 0; k < 150; ++k )
   {
      const auto nt = static_cast<std::size_t>( oracle::draw( rng, 1, 10 ) );
      std::vector<std::int64_t> d( nt ), f( nt ), c( nt ), h( nt );
      std::vector<bool> all( nt, true );
      for( std::size_t t = 0; t < nt; ++t )
      {
         d[t] = oracle::draw( rng, 0, 20 );
         f[t] = oracle::draw( rng, 0, 50 );
         c[t] = oracle::draw( rng, 0, 5 );
         h[t] = oracle::draw( rng, 0, 5 );
      }
      LotSizingPlan plan = wagner_whitin( d, f, c, h, all );
      CAPTURE( k );
      REQUIRE( plan.feasible );
      CHECK( plan.cost == oracle::lot_sizing( d, f, c, h ) );
   }
}

TEST_CASE( "solve_miumpls_exact examples" )
{
   MiuMplsInstance zero( 2, 2, 2 );
   zero.setup_cost.flat().assign( zero.setup_cost.size(), 3 );
   zero.transfer_setup_cost.flat().assign( zero.transfer_setup_cost.size(), 3 );
   MiuMplsSolution sol = solve_miumpls_exact( zero );
   CHECK( sol.cost == Rational( 0 ) );
   for( int bit : sol.setup.flat() )
      CHECK( bit == 0 );
   for( int bit : sol.transfer_setup.flat() )
      CHECK( bit == 0 );

   MiuMplsInstance two( 1, 2, 1 );
   two.demand( 0, 1, 0 ) = 4;
   two.setup_cost( 0, 0, 0 ) = 1;
   two.setup_cost( 0, 1, 0 ) = 100;
   two.unit_cost( 0, 0, 0 ) = 1;
   two.unit_cost( 0, 1, 0 ) = 1;
   two.r( 0, 0, 1, 0 ) = 1;
   two.F( 0, 1, 0 ) = 2;
   sol = solve_miumpls_exact( two );
   CHECK( sol.cost == Rational( 11 ) );
   CHECK( sol.produced( 0, 0, 0 ) == Rational( 4 ) );
   CHECK( sol.shipped( 0, transfer_slot( 2, 0, 1 ), 0 ) == Rational( 4 ) );
   CHECK( evaluate_and_check( two, sol ).cost == sol.cost );

   UflInstance ufl( 1, 1 );
   ufl.opening_cost[0] = 2;
   ufl.service_cost( 0, 0 ) = 3;
   CHECK( solve_miumpls_exact( reduce_ufl_to_umpls( ufl ) ).cost == Rational( 5 ) );
}

TEST_CASE( "pinning free binaries does not change the optimum" )
{
   for( std::uint64_t seed = 0; seed < 25; ++seed )
   {
      MiuMplsInstance in = generate_miumpls( 2, 2, 2, 6, 3, seed );
      // Sprinkle zero fixed costs so that some binaries are pinned.
      in.transfer_setup_cost.flat()[seed % 4] = 0;
      in.setup_cost.flat()[seed % 8] = 0;
      OracleLimits full;
      full.fix_free_binaries = false;
      CAPTURE( seed );
      CHECK( solve_miumpls_exact( in ).cost == solve_miumpls_exact( in, full ).cost );
   }
   // F = 0 everywhere: Y need not be enumerated at all.
   MiuMplsInstance in = generate_miumpls( 1, 3, 2, 9, 3, 77 );
   in.transfer_setup_cost.flat().assign( in.transfer_setup_cost.size(), 0 );
   OracleLimits none;
   none.transfer_setup_bits = 0;
   OracleLimits full;
   full.fix_free_binaries = false;
   CHECK( solve_miumpls_exact( in, none ).cost == solve_miumpls_exact( in, full ).cost );
}

TEST_CASE( "solve_miumpls_exact is deterministic and self-consistent" )
{
   for( std::uint64_t seed = 0; seed < 10; ++seed )
   {
      MiuMplsInstance in = generate_miumpls( 2, 2, 3, 10, 5, seed );
      MiuMplsSolution a = solve_miumpls_exact( in );
      MiuMplsSolution b = solve_miumpls_exact( in );
      CHECK( a == b );
      CheckReport report = evaluate_and_check( in, a );
      CHECK( report.feasible() );
      CHECK( report.cost == a.cost );
   }
}

TEST_CASE( "solve_ufl_exact examples" )
{
   UflInstance tiny( 1, 1 );
   UflSolution sol = solve_ufl_exact( tiny );
   CHECK( sol.cost == 0 );
   CHECK( sol.open == std::vector<int>{ 1 } );

   sol = solve_ufl_exact( small_ufl() );
   CHECK( sol.cost == 8 );
   CHECK( sol.open == std::vector<int>{ 1, 0 } );
   CHECK( sol.assign == std::vector<std::size_t>{ 0, 0 } );

   // Free facilities: the optimum is the sum of row minima.
   UflInstance free = generate_ufl( 4, 5, 20, 3 );
   std::fill( free.opening_cost.begin(), free.opening_cost.end(), 0 );
   std::int64_t expected = 0;
   for( std::size_t l = 0; l < free.clients; ++l )
   {
      std::int64_t best = oracle::kNone;
      for( std::size_t j = 0; j < free.facilities; ++j )
         best = std::min( best, free.service_cost( l, j ) );
      expected += best;
   }
   CHECK( solve_ufl_exact( free ).cost == expected );
}

TEST_CASE( "solve_ufl_exact equals assignment enumeration" )
{
   std::mt19937_64 rng( 8 );
   for( int k = 0; k < 60; ++k )
   {
      auto ns = static_cast<std::size_t>( oracle::draw( rng, 1, 4 ) );
      auto nc = static_cast<std::size_t>( oracle::draw( rng, 1, 4 ) );
      UflInstance in = generate_ufl( ns, nc, 20, rng() );
      UflSolution sol = solve_ufl_exact( in );
      CHECK( sol.cost == oracle::ufl( in ) );
      CHECK( evaluate_and_check( in, sol ).feasible() );
   }
}

TEST_CASE( "solve_jrp_exact examples" )
{
   JrpSolution sol = solve_jrp_exact( reference_jrp() );
   CHECK( sol.cost == Rational( 12 ) );
   CHECK( sol.joint_setup == std::vector<int>{ 1, 0 } );
   CHECK( sol.produced( 0, 0 ) == Rational( 5 ) );

   JrpInstance two( 2, 1 );
   two.demand( 0, 0 ) = 4;
   two.demand( 1, 0 ) = 5;
   two.setup_cost( 0, 0 ) = 2;
   two.setup_cost( 1, 0 ) = 3;
   two.joint_setup_cost = { 7 };
   CHECK( solve_jrp_exact( two ).cost == Rational( 12 ) );

   JrpInstance idle = generate_jrp( 2, 3, 20, 0, 1 );
   sol = solve_jrp_exact( idle );
   CHECK( sol.cost == Rational( 0 ) );
   CHECK( sol.joint_setup == std::vector<int>{ 0, 0, 0 } );
}

TEST_CASE( "solve_jrp_exact equals joint setup enumeration" )
{
   std::mt19937_64 rng( 9 );
   for( int k = 0; k < 40; ++k )
   {
      auto ni = static_cast<std::size_t>( oracle::draw( rng, 1, 2 ) );
      auto nt = static_cast<std::size_t>( oracle::draw( rng, 1, 4 ) );
      JrpInstance in = generate_jrp( ni, nt, 20, 20, rng() );
      CHECK( solve_jrp_exact( in ).cost == Rational( oracle::jrp( in ) ) );
   }
}

TEST_CASE( "budgets are enforced and named" )
{
   CHECK( budget_message( [] { solve_ufl_exact( UflInstance( 21, 1 ) ); } ).find( "subset_bits" ) !=
          std::string::npos );
   JrpInstance long_horizon( 1, 17 );
   long_horizon.joint_setup_cost.assign( 17, 1 );
   CHECK( budget_message( [&] { solve_jrp_exact( long_horizon ); } ).find( "joint_bits" ) !=
          std::string::npos );
   // Free joint setups are pinned, so they cost no budget.
   CHECK_NOTHROW( solve_jrp_exact( JrpInstance( 1, 17 ) ) );
   MiuMplsInstance big = generate_miumpls( 1, 3, 4, 5, 1, 2 );
   for( auto& value : big.transfer_setup_cost.flat() )
      value = 1;
   CHECK( budget_message( [&] { solve_miumpls_exact( big ); } ).find( "Ybits" ) !=
          std::string::npos );
   for( auto& value : big.setup_cost.flat() )
      value = 1;
   OracleLimits small;
   small.transfer_setup_bits = 64;
   small.setup_bits = 4;
   CHECK( budget_message( [&] { solve_miumpls_exact( big, small ); } ).find( "ybits" ) !=
          std::string::npos );
   OracleLimits tight;
   tight.subset_bits = 1;
   CHECK_THROWS_AS( solve_exact( AnyInstance( small_ufl() ), tight ), BudgetExceeded );
}

TEST_CASE( "decide follows the optimum" )
{
   AnyInstance ufl = small_ufl();
   Decision at8 = decide( ufl, 8 );
   CHECK( at8.yes );
   CHECK( at8.optimum == 8 );
   REQUIRE( at8.witness );
   CHECK( solution_cost( *at8.witness ) == 8 );
   Decision at7 = decide( ufl, 7 );
   CHECK_FALSE( at7.yes );
   CHECK_FALSE( at7.witness );
   for( std::int64_t k = -1; k < 20; ++k )
      CHECK( decide( ufl, k ).yes == ( k >= 8 ) );

   // A threshold that pays for everything is always met.
   JrpInstance jrp = generate_jrp( 2, 3, 20, 20, 4 );
   std::int64_t bound = 0, demand = 0;
   for( auto v : jrp.demand.flat() )
      demand += v;
   for( auto v : jrp.unit_cost.flat() )
      bound += v;
   for( auto v : jrp.holding_cost.flat() )
      bound += v;
   bound *= demand;
   for( auto v : jrp.setup_cost.flat() )
      bound += v;
   for( auto v : jrp.joint_setup_cost )
      bound += v;
   CHECK( decide( AnyInstance( jrp ), bound ).yes );
}
