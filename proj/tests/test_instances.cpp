// Copyright 2026 The lotlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "lotlab/cli.hpp"
#include "lotlab/errors.hpp"
#include "lotlab/instances.hpp"

#include <doctest.h>

#include <string>

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

std::string
message_of( auto&& fn )
{
   try
   {
      fn();
   }
   catch( const std::exception& e )
   {
      return e.what();
   }
   return "";
}

} // namespace

TEST_CASE( "validate accepts the smallest legal instances" )
{
   UflInstance ufl( 1, 1 );
   CHECK_NOTHROW( validate( ufl ) );
   CHECK_NOTHROW( validate( MiuMplsInstance( 1, 1, 1 ) ) );
   CHECK_NOTHROW( validate( JrpInstance( 1, 1 ) ) );
}

TEST_CASE( "validate names the offending entry" )
{
   JrpInstance jrp = reference_jrp();
   jrp.demand( 0, 1 ) = -3;
   CHECK( message_of( [&] { validate( jrp ); } ).find( "negative value d'[0][1]" ) !=
          std::string::npos );

   MiuMplsInstance mi( 1, 1, 2 );
   mi.setup_cost = Tensor<std::int64_t, 3>( { 1, 1, 3 } );
   std::string msg = message_of( [&] { validate( mi ); } );
   CHECK( msg.find( "dimension mismatch" ) != std::string::npos );
   CHECK( msg.find( "f" ) != std::string::npos );

   UflInstance ufl( 1, 2 );
   ufl.service_cost( 1, 0 ) = kValueCap + 1;
   msg = message_of( [&] { validate( ufl ); } );
   CHECK( msg.find( "2^40" ) != std::string::npos );
   CHECK( msg.find( "v[1][0]" ) != std::string::npos );
   ufl.service_cost( 1, 0 ) = kValueCap;
   CHECK_NOTHROW( validate( ufl ) );

   CHECK_THROWS_AS( validate( UflInstance( 0, 1 ) ), ValidationError );
   CHECK_THROWS_AS( validate( JrpInstance( 1, 0 ) ), ValidationError );
}

TEST_CASE( "parse_instance reads the documented schema" )
{
   AnyInstance any = parse_instance( R"({"problem":"ufl","q":[2],"v":[[3]]})" );
   const auto& ufl = std::get<UflInstance>( any );
   CHECK( ufl.facilities == 1 );
   CHECK( ufl.clients == 1 );
   CHECK( ufl.opening_cost[0] == 2 );
   CHECK( ufl.service_cost( 0, 0 ) == 3 );

   std::string msg = message_of( [] { parse_instance( R"({"problem":"tsp"})" ); } );
   CHECK( msg.find( "unknown problem tag" ) != std::string::npos );
   CHECK_THROWS_AS( parse_instance( "{" ), ParseError );
   CHECK_THROWS_AS( parse_instance( R"({"problem":"ufl","q":[2]})" ), ParseError );
   CHECK_THROWS_AS( parse_instance( R"({"problem":"ufl","q":[2],"v":[[3]],"extra":1})" ),
                    ParseError );
   CHECK_THROWS_AS( parse_instance( R"({"problem":"ufl","q":[2.5],"v":[[3]]})" ), ParseError );
   // Declared dimensions must agree with the data.
   CHECK_THROWS( parse_instance( R"({"problem":"ufl","NS":2,"q":[2],"v":[[3]]})" ) );
}

TEST_CASE( "transfer tensors accept both the nested and the keyed form" )
{
   const char* nested =
       R"({"problem":"miumpls","d":[[[0],[4]]],"f":[[[1],[100]]],"c":[[[1],[1]]],)"
       R"("h":[[[0],[0]]],"r":[[[null,[1]],[[0],null]]],"F":[[null,[2]],[[0],null]]})";
   const char* keyed =
       R"({"problem":"miumpls","d":[[[0],[4]]],"f":[[[1],[100]]],"c":[[[1],[1]]],)"
       R"("h":[[[0],[0]]],"r":[{"0,1":[1],"1,0":[0]}],"F":{"0,1":[2],"1,0":[0]}})";
   AnyInstance a = parse_instance( nested );
   AnyInstance b = parse_instance( keyed );
   CHECK( a == b );
   const auto& mi = std::get<MiuMplsInstance>( a );
   CHECK( mi.r( 0, 0, 1, 0 ) == 1 );
   CHECK( mi.F( 0, 1, 0 ) == 2 );
   // A diagonal entry is not data.
   CHECK_THROWS_AS( parse_instance( R"({"problem":"miumpls","d":[[[0],[4]]],"f":[[[1],[100]]],)"
                                    R"("c":[[[1],[1]]],"h":[[[0],[0]]],)"
                                    R"("r":[[[[5],[1]],[[0],null]]],"F":[[null,[2]],[[0],null]]})" ),
                    Error );
}

TEST_CASE( "serialization is canonical and round-trips" )
{
   UflInstance ufl( 1, 1 );
   ufl.opening_cost[0] = 2;
   ufl.service_cost( 0, 0 ) = 3;
   std::string text = serialize_instance( ufl );
   CHECK( text.find( "\"q\":[2]" ) != std::string::npos );

   MiuMplsInstance mi = generate_miumpls( 1, 2, 1, 9, 9, 4 );
   text = serialize_instance( mi );
   CHECK( text.find( "\"r\":[[[null,[" ) != std::string::npos );

   for( std::uint64_t seed = 0; seed < 20; ++seed )
   {
      for( AnyInstance in : { AnyInstance( generate_ufl( 3, 4, 20, seed ) ),
                              AnyInstance( generate_jrp( 2, 3, 20, 20, seed ) ),
                              AnyInstance( generate_miumpls( 2, 3, 2, 20, 20, seed ) ) } )
      {
         std::string once = serialize_instance( in );
         AnyInstance back = parse_instance( once );
         CHECK( back == in );
         CHECK( serialize_instance( back ) == once );
      }
   }
}

TEST_CASE( "evaluate_and_check recomputes costs and reports violations" )
{
   MiuMplsInstance zero( 1, 2, 2 );
   MiuMplsSolution empty( zero );
   CheckReport report = evaluate_and_check( zero, empty );
   CHECK( report.feasible() );
   CHECK( report.cost == Rational( 0 ) );

   MiuMplsInstance one( 1, 1, 1 );
   one.demand( 0, 0, 0 ) = 1;
   MiuMplsSolution sol( one );
   sol.produced( 0, 0, 0 ) = 1;
   report = evaluate_and_check( one, sol );
   REQUIRE_FALSE( report.feasible() );
   CHECK( *report.violation == "x>0 requires y=1 at (0,0,0)" );

   sol.setup( 0, 0, 0 ) = 1;
   CHECK( evaluate_and_check( one, sol ).feasible() );
   sol.produced( 0, 0, 0 ) = 0;
   CHECK( evaluate_and_check( one, sol ).violation->find( "balance" ) != std::string::npos );

   JrpInstance jrp = reference_jrp();
   JrpSolution js( jrp );
   js.produced( 0, 0 ) = 5;
   js.stock( 0, 0 ) = 3;
   js.setup( 0, 0 ) = 1;
   js.joint_setup[0] = 1;
   report = evaluate_and_check( jrp, js );
   CHECK( report.feasible() );
   CHECK( report.cost == Rational( 12 ) );

   js.joint_setup[0] = 0;
   CHECK( *evaluate_and_check( jrp, js ).violation == "y'=1 requires Y'=1 at (0,0)" );

   // Shape mismatch is a usage error, not a violation.
   CHECK_THROWS_AS( evaluate_and_check( MiuMplsInstance( 1, 1, 2 ), sol ), ValidationError );
}

TEST_CASE( "fractional solutions are evaluated exactly" )
{
   UflInstance ufl( 2, 1 );
   MiuMplsInstance mi( 1, 3, 1 );
   mi.demand( 0, 2, 0 ) = 1;
   mi.r( 0, 0, 2, 0 ) = 3;
   mi.r( 0, 1, 2, 0 ) = 7;
   MiuMplsSolution sol( mi );
   sol.produced( 0, 0, 0 ) = Rational( 1, 2 );
   sol.produced( 0, 1, 0 ) = Rational( 1, 2 );
   sol.setup( 0, 0, 0 ) = 1;
   sol.setup( 0, 1, 0 ) = 1;
   sol.shipped( 0, transfer_slot( 3, 0, 2 ), 0 ) = Rational( 1, 2 );
   sol.shipped( 0, transfer_slot( 3, 1, 2 ), 0 ) = Rational( 1, 2 );
   sol.transfer_setup( transfer_slot( 3, 0, 2 ), 0 ) = 1;
   sol.transfer_setup( transfer_slot( 3, 1, 2 ), 0 ) = 1;
   CheckReport report = evaluate_and_check( mi, sol );
   CHECK( report.feasible() );
   CHECK( report.cost == Rational( 5 ) );
}

TEST_CASE( "solutions round-trip through JSON" )
{
   JrpInstance jrp = reference_jrp();
   JrpSolution js( jrp );
   js.produced( 0, 0 ) = 5;
   js.stock( 0, 0 ) = 3;
   js.setup( 0, 0 ) = 1;
   js.joint_setup[0] = 1;
   js.cost = 12;
   AnySolution back = parse_solution( serialize_solution( js ) );
   CHECK( std::get<JrpSolution>( back ) == js );

   MiuMplsInstance mi( 1, 2, 1 );
   MiuMplsSolution ms( mi );
   ms.produced( 0, 0, 0 ) = Rational( 1, 3 );
   ms.cost = Rational( 7, 3 );
   CHECK( std::get<MiuMplsSolution>( parse_solution( serialize_solution( ms ) ) ) == ms );

   UflSolution us{ { 1, 0 }, { 0, 0, 0 }, 9 };
   CHECK( std::get<UflSolution>( parse_solution( serialize_solution( us ) ) ) == us );
}
