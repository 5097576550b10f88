// Copyright 2026 The lotlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "lotlab/instances.hpp"

#include "lotlab/errors.hpp"

#include "json.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <set>
#include <sstream>

namespace lotlab
{

using json = nlohmann::json;

std::size_t
transfer_slot( std::size_t plants, std::size_t from, std::size_t to )
{
   if( from == to || from >= plants || to >= plants )
      throw std::out_of_range( "no transfer slot for plant pair (" + std::to_string( from ) +
                               "," + std::to_string( to ) + ")" );
   return from * ( plants - 1 ) + ( to < from ? to : to - 1 );
}

std::pair<std::size_t, std::size_t>
transfer_pair( std::size_t plants, std::size_t slot )
{
   std::size_t from = slot / ( plants - 1 );
   std::size_t to = slot % ( plants - 1 );
   if( to >= from )
      ++to;
   return { from, to };
}

MiuMplsInstance::MiuMplsInstance( std::size_t items_, std::size_t plants_, std::size_t periods_ )
    : items( items_ ), plants( plants_ ), periods( periods_ ),
      demand( { items_, plants_, periods_ } ), setup_cost( { items_, plants_, periods_ } ),
      unit_cost( { items_, plants_, periods_ } ), holding_cost( { items_, plants_, periods_ } ),
      transfer_cost( { items_, plants_ * ( plants_ - 1 ), periods_ } ),
      transfer_setup_cost( { plants_ * ( plants_ - 1 ), periods_ } )
{
}

MiuMplsSolution::MiuMplsSolution( const MiuMplsInstance& instance )
    : produced( { instance.items, instance.plants, instance.periods } ),
      stock( { instance.items, instance.plants, instance.periods } ),
      shipped( { instance.items, instance.transfer_slots(), instance.periods } ),
      setup( { instance.items, instance.plants, instance.periods } ),
      transfer_setup( { instance.transfer_slots(), instance.periods } )
{
}

UflInstance::UflInstance( std::size_t facilities_, std::size_t clients_ )
    : facilities( facilities_ ), clients( clients_ ), opening_cost( facilities_, 0 ),
      service_cost( { clients_, facilities_ } )
{
}

JrpInstance::JrpInstance( std::size_t items_, std::size_t periods_ )
    : items( items_ ), periods( periods_ ), demand( { items_, periods_ } ),
      setup_cost( { items_, periods_ } ), joint_setup_cost( periods_, 0 ),
      unit_cost( { items_, periods_ } ), holding_cost( { items_, periods_ } )
{
}

JrpSolution::JrpSolution( const JrpInstance& instance )
    : produced( { instance.items, instance.periods } ),
      stock( { instance.items, instance.periods } ), setup( { instance.items, instance.periods } ),
      joint_setup( instance.periods, 0 )
{
}

std::string_view
problem_tag( const AnyInstance& instance )
{
   static constexpr std::string_view tags[] = { "miumpls", "ufl", "jrp" };
   return tags[instance.index()];
}

// ---------------------------------------------------------------------------
// validation

namespace
{

template <typename Index>
std::string
index_text( const Index& idx )
{
   std::string out;
   for( auto k : idx )
      out += "[" + std::to_string( k ) + "]";
   return out;
}

template <std::size_t N>
std::string
shape_text( const std::array<std::size_t, N>& shape )
{
   std::string out = "[";
   for( std::size_t k = 0; k < N; ++k )
      out += ( k ? "," : "" ) + std::to_string( shape[k] );
   return out + "]";
}

template <std::size_t N>
void
check_tensor( const Tensor<std::int64_t, N>& tensor, const std::string& name,
              const std::array<std::size_t, N>& expected )
{
   if( tensor.shape() != expected )
      throw ValidationError( "dimension mismatch: " + name + " has shape " +
                             shape_text( tensor.shape() ) + ", expected " +
                             shape_text( expected ) );
   for( std::size_t pos = 0; pos < tensor.size(); ++pos )
   {
      std::int64_t value = tensor.flat()[pos];
      if( value < 0 )
         throw ValidationError( "negative value " + name + index_text( tensor.unravel( pos ) ) );
      if( value > kValueCap )
         throw ValidationError( "value above 2^40 " + name + index_text( tensor.unravel( pos ) ) );
   }
}

void
check_vector( const std::vector<std::int64_t>& values, const std::string& name,
              std::size_t expected )
{
   if( values.size() != expected )
      throw ValidationError( "dimension mismatch: " + name + " has " +
                             std::to_string( values.size() ) + " entries, expected " +
                             std::to_string( expected ) );
   for( std::size_t k = 0; k < values.size(); ++k )
   {
      if( values[k] < 0 )
         throw ValidationError( "negative value " + name + "[" + std::to_string( k ) + "]" );
      if( values[k] > kValueCap )
         throw ValidationError( "value above 2^40 " + name + "[" + std::to_string( k ) + "]" );
   }
}

void
check_positive( std::size_t value, const char* name )
{
   if( value < 1 )
      throw ValidationError( std::string( name ) + " must be at least 1" );
}

} // namespace

const MiuMplsInstance&
validate( const MiuMplsInstance& in )
{
   check_positive( in.items, "NI" );
   check_positive( in.plants, "NP" );
   check_positive( in.periods, "NT" );
   const std::array<std::size_t, 3> ipt{ in.items, in.plants, in.periods };
   check_tensor( in.demand, "d", ipt );
   check_tensor( in.setup_cost, "f", ipt );
   check_tensor( in.unit_cost, "c", ipt );
   check_tensor( in.holding_cost, "h", ipt );
   check_tensor( in.transfer_cost, "r", { in.items, in.transfer_slots(), in.periods } );
   check_tensor( in.transfer_setup_cost, "F", { in.transfer_slots(), in.periods } );
   return in;
}

const UflInstance&
validate( const UflInstance& in )
{
   check_positive( in.facilities, "NS" );
   check_positive( in.clients, "NC" );
   check_vector( in.opening_cost, "q", in.facilities );
   check_tensor( in.service_cost, "v", { in.clients, in.facilities } );
   return in;
}

const JrpInstance&
validate( const JrpInstance& in )
{
   check_positive( in.items, "NI" );
   check_positive( in.periods, "NT" );
   const std::array<std::size_t, 2> it{ in.items, in.periods };
   check_tensor( in.demand, "d'", it );
   check_tensor( in.setup_cost, "f'", it );
   check_vector( in.joint_setup_cost, "F'", in.periods );
   check_tensor( in.unit_cost, "c'", it );
   check_tensor( in.holding_cost, "h'", it );
   return in;
}

const AnyInstance&
validate( const AnyInstance& instance )
{
   std::visit( []( const auto& in ) { validate( in ); }, instance );
   return instance;
}

// ---------------------------------------------------------------------------
// JSON

namespace
{

std::int64_t
read_int( const json& node, const std::string& where )
{
   if( node.is_number_unsigned() )
   {
      auto value = node.get<std::uint64_t>();
      if( value > static_cast<std::uint64_t>( std::numeric_limits<std::int64_t>::max() ) )
         throw ValidationError( "value above 2^40 " + where );
      return static_cast<std::int64_t>( value );
   }
   if( node.is_number_integer() )
      return node.get<std::int64_t>();
   throw ParseError( "expected integer at " + where );
}

Rational
read_rational( const json& node, const std::string& where )
{
   if( node.is_string() )
   {
      try
      {
         return Rational::parse( node.get<std::string>() );
      }
      catch( const OverflowError& )
      {
         throw ParseError( "rational out of range at " + where );
      }
   }
   return Rational( read_int( node, where ) );
}

int
read_binary( const json& node, const std::string& where )
{
   std::int64_t value = read_int( node, where );
   if( value < std::numeric_limits<int>::min() || value > std::numeric_limits<int>::max() )
      throw ParseError( "indicator out of range at " + where );
   return static_cast<int>( value );
}

const json&
field( const json& doc, const char* key )
{
   auto it = doc.find( key );
   if( it == doc.end() )
      throw ParseError( std::string( "missing field \"" ) + key + "\"" );
   return *it;
}

void
reject_unknown( const json& doc, std::initializer_list<const char*> allowed )
{
   for( const auto& item : doc.items() )
   {
      if( std::none_of( allowed.begin(), allowed.end(),
                        [&]( const char* key ) { return item.key() == key; } ) )
         throw ParseError( "unknown field \"" + item.key() + "\"" );
   }
}

/// Reads a rectangular nested array of depth N into a tensor, deriving the
/// shape from first elements and reporting the first ragged row.
template <typename T, std::size_t N, typename Leaf>
Tensor<T, N>
read_tensor( const json& node, const std::string& name, Leaf leaf )
{
   std::array<std::size_t, N> shape{};
   const json* probe = &node;
   for( std::size_t k = 0; k < N; ++k )
   {
      if( !probe->is_array() )
         throw ParseError( "expected array at " + name );
      shape[k] = probe->size();
      if( probe->empty() )
      {
         for( std::size_t rest = k + 1; rest < N; ++rest )
            shape[rest] = 0;
         break;
      }
      probe = &( *probe )[0];
   }

   Tensor<T, N> out( shape );
   std::size_t pos = 0;
   std::function<void( const json&, std::size_t, const std::string& )> walk =
       [&]( const json& at, std::size_t depth, const std::string& path )
   {
      if( depth == N )
      {
         out.flat()[pos++] = leaf( at, path );
         return;
      }
      if( !at.is_array() )
         throw ParseError( "expected array at " + path );
      if( at.size() != shape[depth] )
         throw ValidationError( "dimension mismatch: " + path + " has " +
                                std::to_string( at.size() ) + " entries, expected " +
                                std::to_string( shape[depth] ) );
      for( std::size_t k = 0; k < at.size(); ++k )
         walk( at[k], depth + 1, path + "[" + std::to_string( k ) + "]" );
   };
   walk( node, 0, name );
   return out;
}

/// Reads one per-pair block: either a [p][l] array with null diagonal or an
/// object keyed "p,l". Produces plants*(plants-1) rows of `periods` leaves.
template <typename T, typename Leaf>
std::vector<std::vector<T>>
read_pair_block( const json& node, const std::string& name, std::size_t plants,
                 std::size_t periods, Leaf leaf )
{
   const std::size_t slots = plants * ( plants - 1 );
   std::vector<std::vector<T>> rows( slots );
   std::vector<bool> seen( slots, false );

   auto read_row = [&]( const json& row, std::size_t p, std::size_t l, const std::string& path )
   {
      if( !row.is_array() )
         throw ParseError( "expected array at " + path );
      if( row.size() != periods )
         throw ValidationError( "dimension mismatch: " + path + " has " +
                                std::to_string( row.size() ) + " entries, expected " +
                                std::to_string( periods ) );
      std::size_t slot = transfer_slot( plants, p, l );
      if( seen[slot] )
         throw ParseError( "duplicate entry " + path );
      seen[slot] = true;
      for( std::size_t t = 0; t < periods; ++t )
         rows[slot].push_back( leaf( row[t], path + "[" + std::to_string( t ) + "]" ) );
   };

   if( node.is_array() )
   {
      if( node.size() != plants )
         throw ValidationError( "dimension mismatch: " + name + " has " +
                                std::to_string( node.size() ) + " entries, expected " +
                                std::to_string( plants ) );
      for( std::size_t p = 0; p < plants; ++p )
      {
         const std::string ppath = name + "[" + std::to_string( p ) + "]";
         const json& inner = node[p];
         if( !inner.is_array() )
            throw ParseError( "expected array at " + ppath );
         if( inner.size() != plants )
            throw ValidationError( "dimension mismatch: " + ppath + " has " +
                                   std::to_string( inner.size() ) + " entries, expected " +
                                   std::to_string( plants ) );
         for( std::size_t l = 0; l < plants; ++l )
         {
            const std::string path = ppath + "[" + std::to_string( l ) + "]";
            if( p == l )
            {
               if( !inner[l].is_null() )
                  throw ValidationError( "diagonal entry " + path + " must be null" );
               continue;
            }
            read_row( inner[l], p, l, path );
         }
      }
   }
   else if( node.is_object() )
   {
      for( const auto& item : node.items() )
      {
         const std::string& key = item.key();
         auto comma = key.find( ',' );
         std::size_t p = 0, l = 0;
         try
         {
            if( comma == std::string::npos )
               throw std::invalid_argument( key );
            std::size_t used = 0;
            p = std::stoul( key.substr( 0, comma ), &used );
            if( used != comma )
               throw std::invalid_argument( key );
            l = std::stoul( key.substr( comma + 1 ), &used );
            if( used != key.size() - comma - 1 )
               throw std::invalid_argument( key );
         }
         catch( const std::logic_error& )
         {
            throw ParseError( "bad plant pair key \"" + key + "\" in " + name );
         }
         if( p >= plants || l >= plants || p == l )
            throw ValidationError( "plant pair \"" + key + "\" out of range in " + name );
         read_row( item.value(), p, l, name + "[\"" + key + "\"]" );
      }
   }
   else
      throw ParseError( "expected array or object at " + name );

   for( std::size_t slot = 0; slot < slots; ++slot )
   {
      if( !seen[slot] )
      {
         auto [p, l] = transfer_pair( plants, slot );
         throw ValidationError( "missing entry " + name + "[" + std::to_string( p ) + "][" +
                                std::to_string( l ) + "]" );
      }
   }
   return rows;
}

template <typename T, typename ToJson>
json
write_pair_block( std::size_t plants, std::size_t periods,
                  const std::function<T( std::size_t, std::size_t )>& value, ToJson to_json )
{
   json block = json::array();
   for( std::size_t p = 0; p < plants; ++p )
   {
      json row = json::array();
      for( std::size_t l = 0; l < plants; ++l )
      {
         if( p == l )
         {
            row.push_back( nullptr );
            continue;
         }
         json series = json::array();
         std::size_t slot = transfer_slot( plants, p, l );
         for( std::size_t t = 0; t < periods; ++t )
            series.push_back( to_json( value( slot, t ) ) );
         row.push_back( std::move( series ) );
      }
      block.push_back( std::move( row ) );
   }
   return block;
}

template <typename T, std::size_t N, typename ToJson>
json
write_tensor( const Tensor<T, N>& tensor, ToJson to_json )
{
   std::function<json( std::size_t, std::size_t& )> build = [&]( std::size_t depth,
                                                                  std::size_t& pos ) -> json
   {
      json out = json::array();
      for( std::size_t k = 0; k < tensor.extent( depth ); ++k )
      {
         if( depth + 1 == N )
            out.push_back( to_json( tensor.flat()[pos++] ) );
         else
            out.push_back( build( depth + 1, pos ) );
      }
      return out;
   };
   std::size_t pos = 0;
   return build( 0, pos );
}

json
rational_json( const Rational& value )
{
   if( value.is_integer() )
      return value.num();
   return value.to_string();
}

auto int_leaf = []( const json& node, const std::string& path ) { return read_int( node, path ); };
auto rational_leaf = []( const json& node, const std::string& path )
{ return read_rational( node, path ); };
auto binary_leaf = []( const json& node, const std::string& path )
{ return read_binary( node, path ); };
auto identity = []( auto value ) { return json( value ); };

std::size_t
read_dim( const json& doc, const char* key, std::size_t derived )
{
   auto it = doc.find( key );
   if( it == doc.end() )
      return derived;
   std::int64_t value = read_int( *it, key );
   if( value < 0 )
      throw ValidationError( std::string( "negative value " ) + key );
   if( static_cast<std::size_t>( value ) != derived )
      throw ValidationError( std::string( "dimension mismatch: " ) + key + " = " +
                             std::to_string( value ) + " but data has " +
                             std::to_string( derived ) );
   return derived;
}

json
parse_document( std::string_view text )
{
   json doc;
   try
   {
      doc = json::parse( text.begin(), text.end() );
   }
   catch( const json::parse_error& e )
   {
      throw ParseError( std::string( "malformed JSON: " ) + e.what() );
   }
   if( !doc.is_object() )
      throw ParseError( "expected a JSON object" );
   return doc;
}

std::string
problem_of( const json& doc )
{
   const json& tag = field( doc, "problem" );
   if( !tag.is_string() )
      throw ParseError( "field \"problem\" must be a string" );
   return tag.get<std::string>();
}

std::string
dump( const json& doc )
{
   return doc.dump() + "\n";
}

MiuMplsInstance
parse_miumpls( const json& doc )
{
   reject_unknown( doc, { "problem", "NI", "NP", "NT", "d", "f", "c", "h", "r", "F" } );
   MiuMplsInstance in;
   in.demand = read_tensor<std::int64_t, 3>( field( doc, "d" ), "d", int_leaf );
   in.items = read_dim( doc, "NI", in.demand.extent( 0 ) );
   in.plants = read_dim( doc, "NP", in.demand.extent( 1 ) );
   in.periods = read_dim( doc, "NT", in.demand.extent( 2 ) );
   in.setup_cost = read_tensor<std::int64_t, 3>( field( doc, "f" ), "f", int_leaf );
   in.unit_cost = read_tensor<std::int64_t, 3>( field( doc, "c" ), "c", int_leaf );
   in.holding_cost = read_tensor<std::int64_t, 3>( field( doc, "h" ), "h", int_leaf );
   if( in.items < 1 || in.plants < 1 || in.periods < 1 )
      throw ValidationError( "NI, NP and NT must be at least 1" );

   const json& r = field( doc, "r" );
   if( !r.is_array() || r.size() != in.items )
      throw ValidationError( "dimension mismatch: r must list " + std::to_string( in.items ) +
                             " items" );
   in.transfer_cost = Tensor<std::int64_t, 3>( { in.items, in.transfer_slots(), in.periods } );
   for( std::size_t i = 0; i < in.items; ++i )
   {
      auto rows = read_pair_block<std::int64_t>( r[i], "r[" + std::to_string( i ) + "]",
                                                 in.plants, in.periods, int_leaf );
      for( std::size_t slot = 0; slot < rows.size(); ++slot )
         for( std::size_t t = 0; t < in.periods; ++t )
            in.transfer_cost( i, slot, t ) = rows[slot][t];
   }
   auto rows = read_pair_block<std::int64_t>( field( doc, "F" ), "F", in.plants, in.periods,
                                              int_leaf );
   in.transfer_setup_cost = Tensor<std::int64_t, 2>( { in.transfer_slots(), in.periods } );
   for( std::size_t slot = 0; slot < rows.size(); ++slot )
      for( std::size_t t = 0; t < in.periods; ++t )
         in.transfer_setup_cost( slot, t ) = rows[slot][t];
   validate( in );
   return in;
}

UflInstance
parse_ufl( const json& doc )
{
   reject_unknown( doc, { "problem", "NS", "NC", "q", "v" } );
   UflInstance in;
   const json& q = field( doc, "q" );
   if( !q.is_array() )
      throw ParseError( "expected array at q" );
   for( std::size_t j = 0; j < q.size(); ++j )
      in.opening_cost.push_back( read_int( q[j], "q[" + std::to_string( j ) + "]" ) );
   in.service_cost = read_tensor<std::int64_t, 2>( field( doc, "v" ), "v", int_leaf );
   in.facilities = read_dim( doc, "NS", in.opening_cost.size() );
   in.clients = read_dim( doc, "NC", in.service_cost.extent( 0 ) );
   validate( in );
   return in;
}

JrpInstance
parse_jrp( const json& doc )
{
   reject_unknown( doc, { "problem", "NI", "NT", "d_", "f_", "F_", "c_", "h_" } );
   JrpInstance in;
   in.demand = read_tensor<std::int64_t, 2>( field( doc, "d_" ), "d'", int_leaf );
   in.setup_cost = read_tensor<std::int64_t, 2>( field( doc, "f_" ), "f'", int_leaf );
   in.unit_cost = read_tensor<std::int64_t, 2>( field( doc, "c_" ), "c'", int_leaf );
   in.holding_cost = read_tensor<std::int64_t, 2>( field( doc, "h_" ), "h'", int_leaf );
   const json& joint = field( doc, "F_" );
   if( !joint.is_array() )
      throw ParseError( "expected array at F'" );
   for( std::size_t t = 0; t < joint.size(); ++t )
      in.joint_setup_cost.push_back( read_int( joint[t], "F'[" + std::to_string( t ) + "]" ) );
   in.items = read_dim( doc, "NI", in.demand.extent( 0 ) );
   in.periods = read_dim( doc, "NT", in.demand.extent( 1 ) );
   validate( in );
   return in;
}

json
to_json( const MiuMplsInstance& in )
{
   json doc;
   doc["problem"] = "miumpls";
   doc["NI"] = in.items;
   doc["NP"] = in.plants;
   doc["NT"] = in.periods;
   doc["d"] = write_tensor( in.demand, identity );
   doc["f"] = write_tensor( in.setup_cost, identity );
   doc["c"] = write_tensor( in.unit_cost, identity );
   doc["h"] = write_tensor( in.holding_cost, identity );
   json r = json::array();
   for( std::size_t i = 0; i < in.items; ++i )
      r.push_back( write_pair_block<std::int64_t>(
          in.plants, in.periods,
          [&]( std::size_t slot, std::size_t t ) { return in.transfer_cost( i, slot, t ); },
          identity ) );
   doc["r"] = std::move( r );
   doc["F"] = write_pair_block<std::int64_t>(
       in.plants, in.periods,
       [&]( std::size_t slot, std::size_t t ) { return in.transfer_setup_cost( slot, t ); },
       identity );
   return doc;
}

json
to_json( const UflInstance& in )
{
   json doc;
   doc["problem"] = "ufl";
   doc["NS"] = in.facilities;
   doc["NC"] = in.clients;
   doc["q"] = in.opening_cost;
   doc["v"] = write_tensor( in.service_cost, identity );
   return doc;
}

json
to_json( const JrpInstance& in )
{
   json doc;
   doc["problem"] = "jrp";
   doc["NI"] = in.items;
   doc["NT"] = in.periods;
   doc["d_"] = write_tensor( in.demand, identity );
   doc["f_"] = write_tensor( in.setup_cost, identity );
   doc["F_"] = in.joint_setup_cost;
   doc["c_"] = write_tensor( in.unit_cost, identity );
   doc["h_"] = write_tensor( in.holding_cost, identity );
   return doc;
}

MiuMplsSolution
parse_miumpls_solution( const json& doc )
{
   reject_unknown( doc, { "problem", "x", "s", "w", "y", "Y", "cost" } );
   MiuMplsSolution sol;
   sol.produced = read_tensor<Rational, 3>( field( doc, "x" ), "x", rational_leaf );
   sol.stock = read_tensor<Rational, 3>( field( doc, "s" ), "s", rational_leaf );
   sol.setup = read_tensor<int, 3>( field( doc, "y" ), "y", binary_leaf );
   const std::size_t items = sol.produced.extent( 0 );
   const std::size_t plants = sol.produced.extent( 1 );
   const std::size_t periods = sol.produced.extent( 2 );
   if( items < 1 || plants < 1 || periods < 1 )
      throw ValidationError( "solution x must have nonzero dimensions" );
   const std::size_t slots = plants * ( plants - 1 );

   const json& w = field( doc, "w" );
   if( !w.is_array() || w.size() != items )
      throw ValidationError( "dimension mismatch: w must list " + std::to_string( items ) +
                             " items" );
   sol.shipped = Tensor<Rational, 3>( { items, slots, periods } );
   for( std::size_t i = 0; i < items; ++i )
   {
      auto rows = read_pair_block<Rational>( w[i], "w[" + std::to_string( i ) + "]", plants,
                                             periods, rational_leaf );
      for( std::size_t slot = 0; slot < slots; ++slot )
         for( std::size_t t = 0; t < periods; ++t )
            sol.shipped( i, slot, t ) = rows[slot][t];
   }
   auto rows = read_pair_block<int>( field( doc, "Y" ), "Y", plants, periods, binary_leaf );
   sol.transfer_setup = Tensor<int, 2>( { slots, periods } );
   for( std::size_t slot = 0; slot < slots; ++slot )
      for( std::size_t t = 0; t < periods; ++t )
         sol.transfer_setup( slot, t ) = rows[slot][t];
   sol.cost = read_rational( field( doc, "cost" ), "cost" );
   return sol;
}

UflSolution
parse_ufl_solution( const json& doc )
{
   reject_unknown( doc, { "problem", "open", "assign", "cost" } );
   UflSolution sol;
   const json& open = field( doc, "open" );
   const json& assign = field( doc, "assign" );
   if( !open.is_array() || !assign.is_array() )
      throw ParseError( "open and assign must be arrays" );
   for( std::size_t j = 0; j < open.size(); ++j )
      sol.open.push_back( read_binary( open[j], "open[" + std::to_string( j ) + "]" ) );
   for( std::size_t l = 0; l < assign.size(); ++l )
   {
      std::int64_t j = read_int( assign[l], "assign[" + std::to_string( l ) + "]" );
      if( j < 0 )
         throw ValidationError( "negative value assign[" + std::to_string( l ) + "]" );
      sol.assign.push_back( static_cast<std::size_t>( j ) );
   }
   sol.cost = read_int( field( doc, "cost" ), "cost" );
   return sol;
}

JrpSolution
parse_jrp_solution( const json& doc )
{
   reject_unknown( doc, { "problem", "x_", "s_", "y_", "Y_", "cost" } );
   JrpSolution sol;
   sol.produced = read_tensor<Rational, 2>( field( doc, "x_" ), "x'", rational_leaf );
   sol.stock = read_tensor<Rational, 2>( field( doc, "s_" ), "s'", rational_leaf );
   sol.setup = read_tensor<int, 2>( field( doc, "y_" ), "y'", binary_leaf );
   const json& joint = field( doc, "Y_" );
   if( !joint.is_array() )
      throw ParseError( "expected array at Y'" );
   for( std::size_t t = 0; t < joint.size(); ++t )
      sol.joint_setup.push_back( read_binary( joint[t], "Y'[" + std::to_string( t ) + "]" ) );
   sol.cost = read_rational( field( doc, "cost" ), "cost" );
   return sol;
}

json
to_json( const MiuMplsSolution& sol )
{
   const std::size_t items = sol.produced.extent( 0 );
   const std::size_t plants = sol.produced.extent( 1 );
   const std::size_t periods = sol.produced.extent( 2 );
   json doc;
   doc["problem"] = "miumpls";
   doc["x"] = write_tensor( sol.produced, rational_json );
   doc["s"] = write_tensor( sol.stock, rational_json );
   doc["y"] = write_tensor( sol.setup, identity );
   json w = json::array();
   for( std::size_t i = 0; i < items; ++i )
      w.push_back( write_pair_block<Rational>(
          plants, periods,
          [&]( std::size_t slot, std::size_t t ) { return sol.shipped( i, slot, t ); },
          rational_json ) );
   doc["w"] = std::move( w );
   doc["Y"] = write_pair_block<int>(
       plants, periods,
       [&]( std::size_t slot, std::size_t t ) { return sol.transfer_setup( slot, t ); },
       identity );
   doc["cost"] = rational_json( sol.cost );
   return doc;
}

json
to_json( const UflSolution& sol )
{
   json doc;
   doc["problem"] = "ufl";
   doc["open"] = sol.open;
   doc["assign"] = sol.assign;
   doc["cost"] = sol.cost;
   return doc;
}

json
to_json( const JrpSolution& sol )
{
   json doc;
   doc["problem"] = "jrp";
   doc["x_"] = write_tensor( sol.produced, rational_json );
   doc["s_"] = write_tensor( sol.stock, rational_json );
   doc["y_"] = write_tensor( sol.setup, identity );
   doc["Y_"] = sol.joint_setup;
   doc["cost"] = rational_json( sol.cost );
   return doc;
}

} // namespace

AnyInstance
parse_instance( std::string_view text )
{
   json doc = parse_document( text );
   std::string tag = problem_of( doc );
   if( tag == "miumpls" )
      return parse_miumpls( doc );
   if( tag == "ufl" )
      return parse_ufl( doc );
   if( tag == "jrp" )
      return parse_jrp( doc );
   throw ParseError( "unknown problem tag \"" + tag + "\"" );
}

std::string
serialize_instance( const AnyInstance& instance )
{
   return dump( std::visit( []( const auto& in ) { return to_json( in ); }, instance ) );
}

AnySolution
parse_solution( std::string_view text )
{
   json doc = parse_document( text );
   std::string tag = problem_of( doc );
   if( tag == "miumpls" )
      return parse_miumpls_solution( doc );
   if( tag == "ufl" )
      return parse_ufl_solution( doc );
   if( tag == "jrp" )
      return parse_jrp_solution( doc );
   throw ParseError( "unknown problem tag \"" + tag + "\"" );
}

std::string
serialize_solution( const AnySolution& solution )
{
   return dump( std::visit( []( const auto& sol ) { return to_json( sol ); }, solution ) );
}

// ---------------------------------------------------------------------------
// evaluation

namespace
{

std::string
at( std::initializer_list<std::size_t> idx )
{
   std::string out = "(";
   bool first = true;
   for( std::size_t k : idx )
   {
      out += ( first ? "" : "," ) + std::to_string( k );
      first = false;
   }
   return out + ")";
}

template <std::size_t N, typename T>
void
require_shape( const Tensor<T, N>& tensor, const std::array<std::size_t, N>& expected,
               const char* name )
{
   if( tensor.shape() != expected )
      throw ValidationError( std::string( "shape mismatch: solution field " ) + name +
                             " has shape " + shape_text( tensor.shape() ) + ", expected " +
                             shape_text( expected ) );
}

} // namespace

CheckReport
evaluate_and_check( const MiuMplsInstance& in, const MiuMplsSolution& sol )
{
   const std::size_t NI = in.items, NP = in.plants, NT = in.periods, NA = in.transfer_slots();
   require_shape( sol.produced, { NI, NP, NT }, "x" );
   require_shape( sol.stock, { NI, NP, NT }, "s" );
   require_shape( sol.setup, { NI, NP, NT }, "y" );
   require_shape( sol.shipped, { NI, NA, NT }, "w" );
   require_shape( sol.transfer_setup, { NA, NT }, "Y" );

   CheckReport report;
   Rational cost = 0;
   for( std::size_t i = 0; i < NI; ++i )
      for( std::size_t p = 0; p < NP; ++p )
         for( std::size_t t = 0; t < NT; ++t )
         {
            cost += Rational( in.unit_cost( i, p, t ) ) * sol.produced( i, p, t );
            cost += Rational( in.setup_cost( i, p, t ) ) * Rational( sol.setup( i, p, t ) );
            cost += Rational( in.holding_cost( i, p, t ) ) * sol.stock( i, p, t );
         }
   for( std::size_t i = 0; i < NI; ++i )
      for( std::size_t a = 0; a < NA; ++a )
         for( std::size_t t = 0; t < NT; ++t )
            cost += Rational( in.transfer_cost( i, a, t ) ) * sol.shipped( i, a, t );
   for( std::size_t a = 0; a < NA; ++a )
      for( std::size_t t = 0; t < NT; ++t )
         cost += Rational( in.transfer_setup_cost( a, t ) ) * Rational( sol.transfer_setup( a, t ) );
   report.cost = cost;

   auto fail = [&]( std::string message )
   {
      if( !report.violation )
         report.violation = std::move( message );
   };

   for( std::size_t i = 0; i < NI; ++i )
      for( std::size_t p = 0; p < NP; ++p )
         for( std::size_t t = 0; t < NT; ++t )
            if( sol.setup( i, p, t ) != 0 && sol.setup( i, p, t ) != 1 )
               fail( "y is not binary at " + at( { i, p, t } ) );
   for( std::size_t a = 0; a < NA; ++a )
      for( std::size_t t = 0; t < NT; ++t )
         if( sol.transfer_setup( a, t ) != 0 && sol.transfer_setup( a, t ) != 1 )
         {
            auto [p, l] = transfer_pair( NP, a );
            fail( "Y is not binary at " + at( { p, l, t } ) );
         }

   for( std::size_t i = 0; i < NI; ++i )
      for( std::size_t p = 0; p < NP; ++p )
         for( std::size_t t = 0; t < NT; ++t )
         {
            if( sol.produced( i, p, t ).is_negative() )
               fail( "negative x at " + at( { i, p, t } ) );
            if( sol.stock( i, p, t ).is_negative() )
               fail( "negative s at " + at( { i, p, t } ) );
         }
   for( std::size_t i = 0; i < NI; ++i )
      for( std::size_t a = 0; a < NA; ++a )
         for( std::size_t t = 0; t < NT; ++t )
            if( sol.shipped( i, a, t ).is_negative() )
            {
               auto [p, l] = transfer_pair( NP, a );
               fail( "negative w at " + at( { i, p, l, t } ) );
            }

   for( std::size_t i = 0; i < NI; ++i )
      for( std::size_t p = 0; p < NP; ++p )
         for( std::size_t t = 0; t < NT; ++t )
            if( sol.produced( i, p, t ).is_positive() && sol.setup( i, p, t ) != 1 )
               fail( "x>0 requires y=1 at " + at( { i, p, t } ) );
   for( std::size_t i = 0; i < NI; ++i )
      for( std::size_t a = 0; a < NA; ++a )
         for( std::size_t t = 0; t < NT; ++t )
            if( sol.shipped( i, a, t ).is_positive() && sol.transfer_setup( a, t ) != 1 )
            {
               auto [p, l] = transfer_pair( NP, a );
               fail( "w>0 requires Y=1 at " + at( { i, p, l, t } ) );
            }

   for( std::size_t i = 0; i < NI; ++i )
      for( std::size_t p = 0; p < NP; ++p )
         for( std::size_t t = 0; t < NT; ++t )
         {
            Rational lhs = sol.produced( i, p, t );
            if( t > 0 )
               lhs += sol.stock( i, p, t - 1 );
            Rational rhs = sol.stock( i, p, t ) + Rational( in.demand( i, p, t ) );
            for( std::size_t l = 0; l < NP; ++l )
            {
               if( l == p )
                  continue;
               lhs += sol.shipped( i, transfer_slot( NP, l, p ), t );
               rhs += sol.shipped( i, transfer_slot( NP, p, l ), t );
            }
            if( lhs != rhs )
               fail( "balance violated at " + at( { i, p, t } ) + ": inflow " + lhs.to_string() +
                     " != outflow " + rhs.to_string() );
         }
   return report;
}

CheckReport
evaluate_and_check( const UflInstance& in, const UflSolution& sol )
{
   if( sol.open.size() != in.facilities || sol.assign.size() != in.clients )
      throw ValidationError( "shape mismatch: solution has " + std::to_string( sol.open.size() ) +
                             " facilities and " + std::to_string( sol.assign.size() ) +
                             " clients, expected " + std::to_string( in.facilities ) + " and " +
                             std::to_string( in.clients ) );
   CheckReport report;
   auto fail = [&]( std::string message )
   {
      if( !report.violation )
         report.violation = std::move( message );
   };
   std::int64_t cost = 0;
   for( std::size_t j = 0; j < in.facilities; ++j )
   {
      if( sol.open[j] != 0 && sol.open[j] != 1 )
         fail( "open is not binary at (" + std::to_string( j ) + ")" );
      else if( sol.open[j] == 1 )
         cost = checked_add( cost, in.opening_cost[j] );
   }
   for( std::size_t l = 0; l < in.clients; ++l )
   {
      std::size_t j = sol.assign[l];
      if( j >= in.facilities )
      {
         fail( "client " + std::to_string( l ) + " assigned to unknown facility " +
               std::to_string( j ) );
         continue;
      }
      if( sol.open[j] != 1 )
         fail( "client " + std::to_string( l ) + " assigned to closed facility " +
               std::to_string( j ) );
      cost = checked_add( cost, in.service_cost( l, j ) );
   }
   report.cost = cost;
   return report;
}

CheckReport
evaluate_and_check( const JrpInstance& in, const JrpSolution& sol )
{
   const std::size_t NI = in.items, NT = in.periods;
   require_shape( sol.produced, { NI, NT }, "x'" );
   require_shape( sol.stock, { NI, NT }, "s'" );
   require_shape( sol.setup, { NI, NT }, "y'" );
   if( sol.joint_setup.size() != NT )
      throw ValidationError( "shape mismatch: solution field Y' has " +
                             std::to_string( sol.joint_setup.size() ) + " entries, expected " +
                             std::to_string( NT ) );

   CheckReport report;
   auto fail = [&]( std::string message )
   {
      if( !report.violation )
         report.violation = std::move( message );
   };

   Rational cost = 0;
   for( std::size_t i = 0; i < NI; ++i )
      for( std::size_t t = 0; t < NT; ++t )
      {
         cost += Rational( in.unit_cost( i, t ) ) * sol.produced( i, t );
         cost += Rational( in.setup_cost( i, t ) ) * Rational( sol.setup( i, t ) );
         cost += Rational( in.holding_cost( i, t ) ) * sol.stock( i, t );
      }
   for( std::size_t t = 0; t < NT; ++t )
      cost += Rational( in.joint_setup_cost[t] ) * Rational( sol.joint_setup[t] );
   report.cost = cost;

   for( std::size_t i = 0; i < NI; ++i )
      for( std::size_t t = 0; t < NT; ++t )
         if( sol.setup( i, t ) != 0 && sol.setup( i, t ) != 1 )
            fail( "y' is not binary at " + at( { i, t } ) );
   for( std::size_t t = 0; t < NT; ++t )
      if( sol.joint_setup[t] != 0 && sol.joint_setup[t] != 1 )
         fail( "Y' is not binary at (" + std::to_string( t ) + ")" );
   for( std::size_t i = 0; i < NI; ++i )
      for( std::size_t t = 0; t < NT; ++t )
      {
         if( sol.produced( i, t ).is_negative() )
            fail( "negative x' at " + at( { i, t } ) );
         if( sol.stock( i, t ).is_negative() )
            fail( "negative s' at " + at( { i, t } ) );
      }
   for( std::size_t i = 0; i < NI; ++i )
      for( std::size_t t = 0; t < NT; ++t )
      {
         if( sol.produced( i, t ).is_positive() && sol.setup( i, t ) != 1 )
            fail( "x'>0 requires y'=1 at " + at( { i, t } ) );
         if( sol.setup( i, t ) == 1 && sol.joint_setup[t] != 1 )
            fail( "y'=1 requires Y'=1 at " + at( { i, t } ) );
      }
   for( std::size_t i = 0; i < NI; ++i )
      for( std::size_t t = 0; t < NT; ++t )
      {
         Rational lhs = sol.produced( i, t );
         if( t > 0 )
            lhs += sol.stock( i, t - 1 );
         Rational rhs = sol.stock( i, t ) + Rational( in.demand( i, t ) );
         if( lhs != rhs )
            fail( "balance violated at " + at( { i, t } ) + ": inflow " + lhs.to_string() +
                  " != outflow " + rhs.to_string() );
      }
   return report;
}

} // namespace lotlab
