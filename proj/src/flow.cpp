// Copyright 2026 The lotlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "lotlab/flow.hpp"

#include "lotlab/errors.hpp"

#include <functional>
#include <limits>
#include <queue>

namespace lotlab
{

std::int64_t
FlowNetwork::total_demand() const
{
   std::int64_t total = 0;
   for( std::int64_t d : demand )
      total = checked_add( total, d );
   return total;
}

namespace
{

constexpr std::int64_t kUnreached = std::numeric_limits<std::int64_t>::max();

struct ResidualEdge
{
   std::size_t to;
   std::int64_t capacity;
   std::int64_t cost;
   std::size_t reverse;
   std::size_t arc; ///< index into FlowNetwork::arcs, or npos for sink edges
};

constexpr std::size_t npos = static_cast<std::size_t>( -1 );

class Residual
{
 public:
   explicit Residual( std::size_t nodes ) : adjacency_( nodes ) {}

   void add( std::size_t from, std::size_t to, std::int64_t capacity, std::int64_t cost,
             std::size_t arc )
   {
      adjacency_[from].push_back( { to, capacity, cost, adjacency_[to].size(), arc } );
      adjacency_[to].push_back( { from, 0, -cost, adjacency_[from].size() - 1, npos } );
   }

   std::size_t size() const { return adjacency_.size(); }
   std::vector<ResidualEdge>& edges( std::size_t node ) { return adjacency_[node]; }

 private:
   std::vector<std::vector<ResidualEdge>> adjacency_;
};

} // namespace

FlowResult
min_cost_flow( const FlowNetwork& network )
{
   if( network.demand.size() != network.nodes || network.source >= network.nodes )
      throw ValidationError( "flow network: demand vector does not match node count" );
   if( network.demand[network.source] != 0 )
      throw ValidationError( "flow network: source node cannot carry demand" );
   for( std::int64_t d : network.demand )
      if( d < 0 )
         throw ValidationError( "flow network: negative node demand" );
   for( const FlowArc& arc : network.arcs )
   {
      if( arc.cost < 0 )
         throw ValidationError( "flow network: negative arc cost" );
      if( arc.from >= network.nodes || arc.to >= network.nodes )
         throw ValidationError( "flow network: arc endpoint out of range" );
   }

   const std::int64_t required = network.total_demand();
   const std::size_t sink = network.nodes;
   Residual graph( network.nodes + 1 );
   for( std::size_t a = 0; a < network.arcs.size(); ++a )
   {
      const FlowArc& arc = network.arcs[a];
      if( arc.open && arc.from != arc.to )
         graph.add( arc.from, arc.to, required, arc.cost, a );
   }
   for( std::size_t v = 0; v < network.nodes; ++v )
      if( network.demand[v] > 0 )
         graph.add( v, sink, network.demand[v], 0, npos );

   FlowResult result;
   result.flow.assign( network.arcs.size(), 0 );

   std::vector<std::int64_t> potential( graph.size(), 0 );
   std::vector<std::int64_t> dist( graph.size() );
   std::vector<std::size_t> parent_node( graph.size() );
   std::vector<std::size_t> parent_edge( graph.size() );
   std::int64_t sent = 0;

   while( sent < required )
   {
      std::fill( dist.begin(), dist.end(), kUnreached );
      using Entry = std::pair<std::int64_t, std::size_t>;
      std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
      dist[network.source] = 0;
      queue.push( { 0, network.source } );
      while( !queue.empty() )
      {
         auto [d, u] = queue.top();
         queue.pop();
         if( d != dist[u] )
            continue;
         auto& edges = graph.edges( u );
         for( std::size_t e = 0; e < edges.size(); ++e )
         {
            const ResidualEdge& edge = edges[e];
            if( edge.capacity <= 0 )
               continue;
            std::int64_t reduced = edge.cost + potential[u] - potential[edge.to];
            std::int64_t candidate = checked_add( d, reduced );
            if( candidate < dist[edge.to] )
            {
               dist[edge.to] = candidate;
               parent_node[edge.to] = u;
               parent_edge[edge.to] = e;
               queue.push( { candidate, edge.to } );
            }
         }
      }
      if( dist[sink] == kUnreached )
         return result;

      for( std::size_t v = 0; v < graph.size(); ++v )
         if( dist[v] != kUnreached )
            potential[v] = checked_add( potential[v], dist[v] );

      std::int64_t push = required - sent;
      for( std::size_t v = sink; v != network.source; v = parent_node[v] )
         push = std::min( push, graph.edges( parent_node[v] )[parent_edge[v]].capacity );
      for( std::size_t v = sink; v != network.source; v = parent_node[v] )
      {
         ResidualEdge& edge = graph.edges( parent_node[v] )[parent_edge[v]];
         edge.capacity -= push;
         graph.edges( v )[edge.reverse].capacity += push;
      }
      sent += push;
   }

   for( std::size_t u = 0; u < network.nodes; ++u )
      for( const ResidualEdge& edge : graph.edges( u ) )
         if( edge.arc != npos )
            result.flow[edge.arc] = required - edge.capacity;

   std::int64_t cost = 0;
   for( std::size_t a = 0; a < network.arcs.size(); ++a )
      cost = checked_add( cost, checked_mul( result.flow[a], network.arcs[a].cost ) );
   result.feasible = true;
   result.cost = cost;
   return result;
}

FlowNetwork
build_item_network( const MiuMplsInstance& in, std::size_t item, std::span<const int> setup,
                    std::span<const int> transfer_setup )
{
   const std::size_t NP = in.plants, NT = in.periods;
   if( setup.size() != NP * NT || transfer_setup.size() != in.transfer_slots() * NT )
      throw ValidationError( "setup pattern does not match instance dimensions" );

   FlowNetwork net;
   net.nodes = NP * NT + 1;
   net.source = NP * NT;
   net.demand.assign( net.nodes, 0 );
   auto node = [NT]( std::size_t p, std::size_t t ) { return p * NT + t; };

   for( std::size_t p = 0; p < NP; ++p )
      for( std::size_t t = 0; t < NT; ++t )
         net.demand[node( p, t )] = in.demand( item, p, t );

   for( std::size_t p = 0; p < NP; ++p )
      for( std::size_t t = 0; t < NT; ++t )
         net.arcs.push_back( { net.source, node( p, t ), in.unit_cost( item, p, t ),
                               setup[p * NT + t] == 1, ArcKind::production, p, p, t } );
   for( std::size_t p = 0; p < NP; ++p )
      for( std::size_t t = 0; t + 1 < NT; ++t )
         net.arcs.push_back( { node( p, t ), node( p, t + 1 ), in.holding_cost( item, p, t ),
                               true, ArcKind::holding, p, p, t } );
   for( std::size_t slot = 0; slot < in.transfer_slots(); ++slot )
   {
      auto [p, l] = transfer_pair( NP, slot );
      for( std::size_t t = 0; t < NT; ++t )
         net.arcs.push_back( { node( p, t ), node( l, t ), in.transfer_cost( item, slot, t ),
                               transfer_setup[slot * NT + t] == 1, ArcKind::transfer, p, l,
                               t } );
   }
   return net;
}

} // namespace lotlab
