// Copyright 2026 The lotlab Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef LOTLAB_RATIONAL_HPP
#define LOTLAB_RATIONAL_HPP

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace lotlab
{

__extension__ typedef __int128 wide_int;

/// Checked signed 64-bit helpers; throw OverflowError instead of wrapping.
std::int64_t checked_add( std::int64_t a, std::int64_t b );
std::int64_t checked_mul( std::int64_t a, std::int64_t b );

/// Exact rational number with 64-bit numerator and denominator.
///
/// Solutions carry rational amounts so that fractional points (e.g. split
/// transfers) can be evaluated without tolerances. Every operation is
/// reduced to lowest terms and throws OverflowError when the reduced result
/// does not fit.
class Rational
{
 public:
   constexpr Rational() = default;
   constexpr Rational( std::int64_t value ) : num_( value ) {}
   Rational( std::int64_t num, std::int64_t den );

   std::int64_t num() const { return num_; }
   std::int64_t den() const { return den_; }

   bool is_integer() const { return den_ == 1; }
   bool is_zero() const { return num_ == 0; }
   bool is_positive() const { return num_ > 0; }
   bool is_negative() const { return num_ < 0; }

   /// Integer value; throws OverflowError if not integral.
   std::int64_t as_integer() const;

   Rational& operator+=( const Rational& other );
   Rational& operator-=( const Rational& other );
   Rational& operator*=( const Rational& other );

   friend Rational operator+( Rational a, const Rational& b ) { return a += b; }
   friend Rational operator-( Rational a, const Rational& b ) { return a -= b; }
   friend Rational operator*( Rational a, const Rational& b ) { return a *= b; }
   Rational operator-() const;

   friend bool operator==( const Rational& a, const Rational& b ) = default;
   friend std::strong_ordering operator<=>( const Rational& a, const Rational& b );

   /// "n" for integers, "n/d" otherwise.
   std::string to_string() const;

   /// Inverse of to_string.
   static Rational parse( std::string_view text );

 private:
   static Rational reduced( wide_int num, wide_int den );

   std::int64_t num_ = 0;
   std::int64_t den_ = 1;
};

} // namespace lotlab

#endif
