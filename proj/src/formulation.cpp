// Copyright 2026 The lotlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "lotlab/formulation.hpp"

#include "lotlab/errors.hpp"

#include <algorithm>
#include <cctype>

namespace lotlab
{

namespace
{

bool
valid_name( std::string_view name )
{
   if( name.empty() || name.size() > 255 )
      return false;
   if( !( std::isalpha( static_cast<unsigned char>( name[0] ) ) || name[0] == '_' ) )
      return false;
   return std::all_of( name.begin(), name.end(),
                       []( char ch )
                       {
                          return std::isalnum( static_cast<unsigned char>( ch ) ) || ch == '_' ||
                                 ch == '.';
                       } );
}

} // namespace

MipModel::MipModel( std::string name ) : name_( std::move( name ) )
{
   if( !valid_name( name_ ) )
      throw ValidationError( "invalid model name \"" + name_ + "\"" );
}

std::size_t
MipModel::add_variable( MipVariable variable )
{
   if( !valid_name( variable.name ) )
      throw ValidationError( "invalid variable name \"" + variable.name + "\"" );
   if( variable.upper && *variable.upper < variable.lower )
      throw ValidationError( "empty domain for variable " + variable.name );
   auto [it, inserted] = variable_index_.emplace( variable.name, variables_.size() );
   if( !inserted )
      throw ValidationError( "duplicate variable " + variable.name );
   variables_.push_back( std::move( variable ) );
   return it->second;
}

void
MipModel::add_row( MipRow row )
{
   if( !valid_name( row.name ) )
      throw ValidationError( "invalid row name \"" + row.name + "\"" );
   std::sort( row.coefficients.begin(), row.coefficients.end(),
              []( const auto& a, const auto& b ) { return a.first < b.first; } );
   for( std::size_t k = 0; k < row.coefficients.size(); ++k )
   {
      if( row.coefficients[k].first >= variables_.size() )
         throw ValidationError( "row " + row.name + " references an undeclared variable" );
      if( k > 0 && row.coefficients[k].first == row.coefficients[k - 1].first )
         throw ValidationError( "row " + row.name + " repeats variable " +
                                variables_[row.coefficients[k].first].name );
   }
   if( !row_index_.emplace( row.name, rows_.size() ).second )
      throw ValidationError( "duplicate row " + row.name );
   rows_.push_back( std::move( row ) );
}

std::optional<std::size_t>
MipModel::find_variable( std::string_view name ) const
{
   auto it = variable_index_.find( std::string( name ) );
   if( it == variable_index_.end() )
      return std::nullopt;
   return it->second;
}

std::int64_t
compute_big_m( const MiuMplsInstance& in, std::size_t item, std::size_t period, LinkKind )
{
   std::int64_t total = 0;
   for( std::size_t p = 0; p < in.plants; ++p )
      for( std::size_t t = period; t < in.periods; ++t )
         total = checked_add( total, in.demand( item, p, t ) );
   return total;
}

// ---------------------------------------------------------------------------

namespace
{

std::string
tag( char prefix, std::size_t value )
{
   return std::string( "_" ) + prefix + std::to_string( value + 1 );
}

std::string
x_name( std::size_t i, std::size_t p, std::size_t t )
{
   return "x" + tag( 'i', i ) + tag( 'p', p ) + tag( 't', t );
}
std::string
s_name( std::size_t i, std::size_t p, std::size_t t )
{
   return "s" + tag( 'i', i ) + tag( 'p', p ) + tag( 't', t );
}
std::string
y_name( std::size_t i, std::size_t p, std::size_t t )
{
   return "y" + tag( 'i', i ) + tag( 'p', p ) + tag( 't', t );
}
std::string
w_name( std::size_t i, std::size_t p, std::size_t l, std::size_t t )
{
   return "w" + tag( 'i', i ) + tag( 'p', p ) + tag( 'l', l ) + tag( 't', t );
}
std::string
big_y_name( std::size_t p, std::size_t l, std::size_t t )
{
   return "Y" + tag( 'p', p ) + tag( 'l', l ) + tag( 't', t );
}

std::string
jx_name( std::size_t i, std::size_t t )
{
   return "x" + tag( 'i', i ) + tag( 't', t );
}
std::string
js_name( std::size_t i, std::size_t t )
{
   return "s" + tag( 'i', i ) + tag( 't', t );
}
std::string
jy_name( std::size_t i, std::size_t t )
{
   return "y" + tag( 'i', i ) + tag( 't', t );
}
std::string
jbig_y_name( std::size_t t )
{
   return "Y" + tag( 't', t );
}

MipVariable
continuous( std::string name, std::int64_t objective )
{
   return { std::move( name ), 0, std::nullopt, false, objective };
}

MipVariable
binary( std::string name, std::int64_t objective )
{
   return { std::move( name ), 0, 1, true, objective };
}

} // namespace

MipModel
build_mip_miumpls( const MiuMplsInstance& in )
{
   validate( in );
   const std::size_t NI = in.items, NP = in.plants, NT = in.periods, NA = in.transfer_slots();
   MipModel model( "miumpls" );

   Tensor<std::size_t, 3> x( { NI, NP, NT } ), s( { NI, NP, NT } ), y( { NI, NP, NT } );
   Tensor<std::size_t, 3> w( { NI, NA, NT } );
   Tensor<std::size_t, 2> big_y( { NA, NT } );

   for( std::size_t i = 0; i < NI; ++i )
      for( std::size_t p = 0; p < NP; ++p )
         for( std::size_t t = 0; t < NT; ++t )
            x( i, p, t ) = model.add_variable( continuous( x_name( i, p, t ), in.unit_cost( i, p, t ) ) );
   for( std::size_t i = 0; i < NI; ++i )
      for( std::size_t p = 0; p < NP; ++p )
         for( std::size_t t = 0; t < NT; ++t )
            s( i, p, t ) =
                model.add_variable( continuous( s_name( i, p, t ), in.holding_cost( i, p, t ) ) );
   for( std::size_t i = 0; i < NI; ++i )
      for( std::size_t a = 0; a < NA; ++a )
      {
         auto [p, l] = transfer_pair( NP, a );
         for( std::size_t t = 0; t < NT; ++t )
            w( i, a, t ) = model.add_variable(
                continuous( w_name( i, p, l, t ), in.transfer_cost( i, a, t ) ) );
      }
   for( std::size_t i = 0; i < NI; ++i )
      for( std::size_t p = 0; p < NP; ++p )
         for( std::size_t t = 0; t < NT; ++t )
            y( i, p, t ) = model.add_variable( binary( y_name( i, p, t ), in.setup_cost( i, p, t ) ) );
   for( std::size_t a = 0; a < NA; ++a )
   {
      auto [p, l] = transfer_pair( NP, a );
      for( std::size_t t = 0; t < NT; ++t )
         big_y( a, t ) = model.add_variable(
             binary( big_y_name( p, l, t ), in.transfer_setup_cost( a, t ) ) );
   }

   for( std::size_t i = 0; i < NI; ++i )
      for( std::size_t p = 0; p < NP; ++p )
         for( std::size_t t = 0; t < NT; ++t )
         {
            MipRow row{ "bal" + tag( 'i', i ) + tag( 'p', p ) + tag( 't', t ), RowSense::equal,
                        in.demand( i, p, t ), {} };
            row.coefficients.emplace_back( x( i, p, t ), 1 );
            if( t > 0 )
               row.coefficients.emplace_back( s( i, p, t - 1 ), 1 );
            row.coefficients.emplace_back( s( i, p, t ), -1 );
            for( std::size_t l = 0; l < NP; ++l )
            {
               if( l == p )
                  continue;
               row.coefficients.emplace_back( w( i, transfer_slot( NP, l, p ), t ), 1 );
               row.coefficients.emplace_back( w( i, transfer_slot( NP, p, l ), t ), -1 );
            }
            model.add_row( std::move( row ) );
         }
   for( std::size_t i = 0; i < NI; ++i )
      for( std::size_t p = 0; p < NP; ++p )
         for( std::size_t t = 0; t < NT; ++t )
         {
            const std::int64_t big_m = compute_big_m( in, i, t, LinkKind::production );
            model.add_row( { "prod" + tag( 'i', i ) + tag( 'p', p ) + tag( 't', t ),
                             RowSense::less_equal,
                             0,
                             { { x( i, p, t ), 1 }, { y( i, p, t ), -big_m } } } );
         }
   for( std::size_t i = 0; i < NI; ++i )
      for( std::size_t a = 0; a < NA; ++a )
      {
         auto [p, l] = transfer_pair( NP, a );
         for( std::size_t t = 0; t < NT; ++t )
         {
            const std::int64_t big_m = compute_big_m( in, i, t, LinkKind::transfer );
            model.add_row( { "trans" + tag( 'i', i ) + tag( 'p', p ) + tag( 'l', l ) + tag( 't', t ),
                             RowSense::less_equal,
                             0,
                             { { w( i, a, t ), 1 }, { big_y( a, t ), -big_m } } } );
         }
      }
   return model;
}

MipModel
build_mip_jrp( const JrpInstance& in )
{
   validate( in );
   const std::size_t NI = in.items, NT = in.periods;
   MipModel model( "jrp" );

   Tensor<std::size_t, 2> x( { NI, NT } ), s( { NI, NT } ), y( { NI, NT } );
   std::vector<std::size_t> big_y( NT );
   for( std::size_t i = 0; i < NI; ++i )
      for( std::size_t t = 0; t < NT; ++t )
         x( i, t ) = model.add_variable( continuous( jx_name( i, t ), in.unit_cost( i, t ) ) );
   for( std::size_t i = 0; i < NI; ++i )
      for( std::size_t t = 0; t < NT; ++t )
         s( i, t ) = model.add_variable( continuous( js_name( i, t ), in.holding_cost( i, t ) ) );
   for( std::size_t i = 0; i < NI; ++i )
      for( std::size_t t = 0; t < NT; ++t )
         y( i, t ) = model.add_variable( binary( jy_name( i, t ), in.setup_cost( i, t ) ) );
   for( std::size_t t = 0; t < NT; ++t )
      big_y[t] = model.add_variable( binary( jbig_y_name( t ), in.joint_setup_cost[t] ) );

   for( std::size_t i = 0; i < NI; ++i )
      for( std::size_t t = 0; t < NT; ++t )
      {
         MipRow row{ "bal" + tag( 'i', i ) + tag( 't', t ), RowSense::equal, in.demand( i, t ), {} };
         row.coefficients.emplace_back( x( i, t ), 1 );
         if( t > 0 )
            row.coefficients.emplace_back( s( i, t - 1 ), 1 );
         row.coefficients.emplace_back( s( i, t ), -1 );
         model.add_row( std::move( row ) );
      }
   for( std::size_t i = 0; i < NI; ++i )
      for( std::size_t t = 0; t < NT; ++t )
      {
         std::int64_t big_m = 0;
         for( std::size_t u = t; u < NT; ++u )
            big_m = checked_add( big_m, in.demand( i, u ) );
         model.add_row( { "prod" + tag( 'i', i ) + tag( 't', t ),
                          RowSense::less_equal,
                          0,
                          { { x( i, t ), 1 }, { y( i, t ), -big_m } } } );
      }
   for( std::size_t i = 0; i < NI; ++i )
      for( std::size_t t = 0; t < NT; ++t )
         model.add_row( { "joint" + tag( 'i', i ) + tag( 't', t ),
                          RowSense::less_equal,
                          0,
                          { { y( i, t ), 1 }, { big_y[t], -1 } } } );
   return model;
}

std::map<std::string, Rational>
model_point( const MiuMplsInstance& in, const MiuMplsSolution& sol )
{
   std::map<std::string, Rational> point;
   for( std::size_t i = 0; i < in.items; ++i )
      for( std::size_t p = 0; p < in.plants; ++p )
         for( std::size_t t = 0; t < in.periods; ++t )
         {
            point[x_name( i, p, t )] = sol.produced( i, p, t );
            point[s_name( i, p, t )] = sol.stock( i, p, t );
            point[y_name( i, p, t )] = sol.setup( i, p, t );
         }
   for( std::size_t a = 0; a < in.transfer_slots(); ++a )
   {
      auto [p, l] = transfer_pair( in.plants, a );
      for( std::size_t t = 0; t < in.periods; ++t )
      {
         for( std::size_t i = 0; i < in.items; ++i )
            point[w_name( i, p, l, t )] = sol.shipped( i, a, t );
         point[big_y_name( p, l, t )] = sol.transfer_setup( a, t );
      }
   }
   return point;
}

std::map<std::string, Rational>
model_point( const JrpInstance& in, const JrpSolution& sol )
{
   std::map<std::string, Rational> point;
   for( std::size_t i = 0; i < in.items; ++i )
      for( std::size_t t = 0; t < in.periods; ++t )
      {
         point[jx_name( i, t )] = sol.produced( i, t );
         point[js_name( i, t )] = sol.stock( i, t );
         point[jy_name( i, t )] = sol.setup( i, t );
      }
   for( std::size_t t = 0; t < in.periods; ++t )
      point[jbig_y_name( t )] = sol.joint_setup[t];
   return point;
}

ModelEvaluation
evaluate_model_at( const MipModel& model, const std::map<std::string, Rational>& point )
{
   std::vector<Rational> values;
   values.reserve( model.variables().size() );
   for( const MipVariable& var : model.variables() )
   {
      auto it = point.find( var.name );
      if( it == point.end() )
         throw ValidationError( "point assigns no value to variable " + var.name );
      values.push_back( it->second );
   }

   ModelEvaluation result;
   auto fail = [&]( std::string message )
   {
      if( !result.violation )
         result.violation = std::move( message );
   };

   Rational objective = 0;
   for( std::size_t k = 0; k < values.size(); ++k )
   {
      const MipVariable& var = model.variables()[k];
      objective += Rational( var.objective ) * values[k];
      if( values[k] < Rational( var.lower ) )
         fail( "variable " + var.name + " = " + values[k].to_string() + " below lower bound " +
               std::to_string( var.lower ) );
      if( var.upper && values[k] > Rational( *var.upper ) )
         fail( "variable " + var.name + " = " + values[k].to_string() + " above upper bound " +
               std::to_string( *var.upper ) );
      if( var.integer && !values[k].is_integer() )
         fail( "variable " + var.name + " = " + values[k].to_string() + " is not integral" );
   }
   result.objective = objective;

   for( const MipRow& row : model.rows() )
   {
      Rational lhs = 0;
      for( const auto& [var, coef] : row.coefficients )
         lhs += Rational( coef ) * values[var];
      const Rational rhs( row.rhs );
      const bool ok = row.sense == RowSense::equal        ? lhs == rhs
                      : row.sense == RowSense::less_equal ? lhs <= rhs
                                                          : lhs >= rhs;
      if( !ok )
      {
         const char* op = row.sense == RowSense::equal        ? " = "
                          : row.sense == RowSense::less_equal ? " <= "
                                                              : " >= ";
         fail( "row " + row.name + " violated: " + lhs.to_string() + op + rhs.to_string() +
               " does not hold" );
      }
   }
   return result;
}

} // namespace lotlab
