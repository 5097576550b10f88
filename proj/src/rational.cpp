// Copyright 2026 The lotlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "lotlab/rational.hpp"

#include "lotlab/errors.hpp"

#include <charconv>
#include <limits>
#include <numeric>

namespace lotlab
{

namespace
{

using wide = wide_int;

std::int64_t
narrow( wide value )
{
   if( value > std::numeric_limits<std::int64_t>::max() ||
       value < std::numeric_limits<std::int64_t>::min() )
      throw OverflowError( "integer overflow in exact arithmetic" );
   return static_cast<std::int64_t>( value );
}

wide
wide_gcd( wide a, wide b )
{
   if( a < 0 )
      a = -a;
   if( b < 0 )
      b = -b;
   while( b != 0 )
   {
      wide r = a % b;
      a = b;
      b = r;
   }
   return a;
}

std::int64_t
parse_int( std::string_view text )
{
   std::int64_t value = 0;
   auto [ptr, ec] = std::from_chars( text.data(), text.data() + text.size(), value );
   if( ec != std::errc() || ptr != text.data() + text.size() || text.empty() )
      throw ParseError( "not an integer: '" + std::string( text ) + "'" );
   return value;
}

} // namespace

std::int64_t
checked_add( std::int64_t a, std::int64_t b )
{
   std::int64_t out = 0;
   if( __builtin_add_overflow( a, b, &out ) )
      throw OverflowError( "integer overflow in cost arithmetic" );
   return out;
}

std::int64_t
checked_mul( std::int64_t a, std::int64_t b )
{
   std::int64_t out = 0;
   if( __builtin_mul_overflow( a, b, &out ) )
      throw OverflowError( "integer overflow in cost arithmetic" );
   return out;
}

Rational
Rational::reduced( wide num, wide den )
{
   if( den == 0 )
      throw OverflowError( "zero denominator" );
   if( den < 0 )
   {
      num = -num;
      den = -den;
   }
   wide g = wide_gcd( num, den );
   if( g > 1 )
   {
      num /= g;
      den /= g;
   }
   Rational out;
   out.num_ = narrow( num );
   out.den_ = narrow( den );
   return out;
}

Rational::Rational( std::int64_t num, std::int64_t den )
{
   *this = reduced( num, den );
}

std::int64_t
Rational::as_integer() const
{
   if( den_ != 1 )
      throw OverflowError( "value " + to_string() + " is not integral" );
   return num_;
}

Rational&
Rational::operator+=( const Rational& other )
{
   wide n = wide( num_ ) * other.den_ + wide( other.num_ ) * den_;
   wide d = wide( den_ ) * other.den_;
   return *this = reduced( n, d );
}

Rational&
Rational::operator-=( const Rational& other )
{
   return *this += -other;
}

Rational&
Rational::operator*=( const Rational& other )
{
   return *this = reduced( wide( num_ ) * other.num_, wide( den_ ) * other.den_ );
}

Rational
Rational::operator-() const
{
   if( num_ == std::numeric_limits<std::int64_t>::min() )
      throw OverflowError( "integer overflow in negation" );
   Rational out = *this;
   out.num_ = -num_;
   return out;
}

std::strong_ordering
operator<=>( const Rational& a, const Rational& b )
{
   wide lhs = wide( a.num_ ) * b.den_;
   wide rhs = wide( b.num_ ) * a.den_;
   if( lhs < rhs )
      return std::strong_ordering::less;
   if( lhs > rhs )
      return std::strong_ordering::greater;
   return std::strong_ordering::equal;
}

std::string
Rational::to_string() const
{
   if( den_ == 1 )
      return std::to_string( num_ );
   return std::to_string( num_ ) + "/" + std::to_string( den_ );
}

Rational
Rational::parse( std::string_view text )
{
   auto slash = text.find( '/' );
   if( slash == std::string_view::npos )
      return Rational( parse_int( text ) );
   std::int64_t den = parse_int( text.substr( slash + 1 ) );
   if( den == 0 )
      throw ParseError( "zero denominator in '" + std::string( text ) + "'" );
   return reduced( parse_int( text.substr( 0, slash ) ), den );
}

} // namespace lotlab
