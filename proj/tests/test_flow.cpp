// Copyright 2026 The lotlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "oracles.hpp"

#include "lotlab/errors.hpp"
#include "lotlab/flow.hpp"

#include <doctest.h>

#include <random>

using namespace lotlab;

namespace
{

FlowNetwork
random_network( std::mt19937_64& rng )
{
   FlowNetwork net;
   net.nodes = static_cast<std::size_t>( oracle::draw( rng, 2, 5 ) );
   net.source = 0;
   net.demand.assign( net.nodes, 0 );
   std::int64_t left = oracle::draw( rng, 0, 4 );
   while( left > 0 )
   {
      auto v = static_cast<std::size_t>( oracle::draw( rng, 1, net.nodes - 1 ) );
      ++net.demand[v];
      --left;
   }
   std::size_t open = 0;
   const auto arcs = oracle::draw( rng, 1, 9 );
   for( std::int64_t a = 0; a < arcs; ++a )
   {
      FlowArc arc;
      arc.from = oracle::draw( rng, 0, 2 ) == 0
                     ? net.source
                     : static_cast<std::size_t>( oracle::draw( rng, 0, net.nodes - 1 ) );
      arc.to = static_cast<std::size_t>( oracle::draw( rng, 0, net.nodes - 1 ) );
      if( arc.from == arc.to )
         continue;
      arc.cost = oracle::draw( rng, 0, 10 );
      arc.open = open < 7 && oracle::draw( rng, 0, 4 ) > 0;
      open += arc.open ? 1 : 0;
      net.arcs.push_back( arc );
   }
   return net;
}

} // namespace

TEST_CASE( "empty demand needs no flow" )
{
   MiuMplsInstance in( 1, 1, 1 );
   std::vector<int> setup{ 0 };
   FlowResult result = min_cost_flow( build_item_network( in, 0, setup, {} ) );
   CHECK( result.feasible );
   CHECK( result.cost == 0 );
   CHECK( result.flow == std::vector<std::int64_t>{ 0 } );
}

TEST_CASE( "single path through production and transfer" )
{
   MiuMplsInstance in( 1, 2, 1 );
   in.demand( 0, 1, 0 ) = 4;
   in.unit_cost( 0, 0, 0 ) = 1;
   in.unit_cost( 0, 1, 0 ) = 1;
   in.r( 0, 0, 1, 0 ) = 1;
   std::vector<int> setup{ 1, 0 }; // production only at plant 0
   std::vector<int> transfer{ 1, 0 };
   FlowNetwork net = build_item_network( in, 0, setup, transfer );
   FlowResult result = min_cost_flow( net );
   REQUIRE( result.feasible );
   CHECK( result.cost == 8 );
   for( std::size_t a = 0; a < net.arcs.size(); ++a )
   {
      bool used = ( net.arcs[a].kind == ArcKind::production && net.arcs[a].plant == 0 ) ||
                  ( net.arcs[a].kind == ArcKind::transfer && net.arcs[a].plant == 0 );
      CHECK( result.flow[a] == ( used ? 4 : 0 ) );
   }
}

TEST_CASE( "a demand cut off by closed arcs is infeasible" )
{
   MiuMplsInstance in( 1, 2, 1 );
   in.demand( 0, 1, 0 ) = 1;
   std::vector<int> setup{ 1, 0 };
   std::vector<int> transfer{ 0, 0 };
   CHECK_FALSE( min_cost_flow( build_item_network( in, 0, setup, transfer ) ).feasible );
}

TEST_CASE( "network layout" )
{
   MiuMplsInstance in( 1, 3, 4 );
   std::vector<int> setup( 12, 1 ), transfer( 24, 0 );
   FlowNetwork net = build_item_network( in, 0, setup, transfer );
   CHECK( net.nodes == 13 );
   CHECK( net.source == 12 );
   std::size_t production = 0, holding = 0, transfers = 0;
   for( const FlowArc& arc : net.arcs )
   {
      production += arc.kind == ArcKind::production;
      holding += arc.kind == ArcKind::holding;
      transfers += arc.kind == ArcKind::transfer;
      if( arc.kind == ArcKind::transfer )
         CHECK( arc.from % 4 == arc.to % 4 ); // same period
   }
   CHECK( production == 12 );
   CHECK( holding == 9 );
   CHECK( transfers == 24 );
   CHECK_THROWS_AS( build_item_network( in, 0, std::vector<int>( 11 ), transfer ),
                    ValidationError );
}

TEST_CASE( "invalid networks are rejected" )
{
   FlowNetwork net;
   net.nodes = 2;
   net.demand = { 0, 1 };
   net.arcs.push_back( { 0, 1, -1 } );
   CHECK_THROWS_AS( min_cost_flow( net ), ValidationError );
   net.arcs[0].cost = 1;
   net.demand = { 1, 1 };
   CHECK_THROWS_AS( min_cost_flow( net ), ValidationError );
}

TEST_CASE( "min_cost_flow matches integral flow enumeration" )
{
   std::mt19937_64 rng( 11 );
   for( int k = 0; k < 60; ++k )
   {
      FlowNetwork net = random_network( rng );
      auto expected = oracle::flow( net );
      FlowResult result = min_cost_flow( net );
      CAPTURE( k );
      REQUIRE( result.feasible == expected.has_value() );
      if( !expected )
         continue;
      CHECK( result.cost == *expected );
      // The returned flow is a feasible flow of the reported cost.
      std::vector<std::int64_t> balance( net.nodes, 0 );
      std::int64_t cost = 0;
      for( std::size_t a = 0; a < net.arcs.size(); ++a )
      {
         CHECK( result.flow[a] >= 0 );
         if( !net.arcs[a].open )
            CHECK( result.flow[a] == 0 );
         balance[net.arcs[a].from] -= result.flow[a];
         balance[net.arcs[a].to] += result.flow[a];
         cost += result.flow[a] * net.arcs[a].cost;
      }
      CHECK( cost == result.cost );
      for( std::size_t v = 1; v < net.nodes; ++v )
         CHECK( balance[v] == net.demand[v] );
   }
}
