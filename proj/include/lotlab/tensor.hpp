// Copyright 2026 The lotlab Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef LOTLAB_TENSOR_HPP
#define LOTLAB_TENSOR_HPP

#include <array>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace lotlab
{

/// Dense row-major N-dimensional array.
template <typename T, std::size_t N>
class Tensor
{
 public:
   using Shape = std::array<std::size_t, N>;

   Tensor() { shape_.fill( 0 ); }

   explicit Tensor( Shape shape, T fill = T{} ) : shape_( shape )
   {
      std::size_t n = 1;
      for( std::size_t extent : shape_ )
         n *= extent;
      data_.assign( n, fill );
   }

   const Shape& shape() const { return shape_; }
   std::size_t extent( std::size_t axis ) const { return shape_[axis]; }
   std::size_t size() const { return data_.size(); }

   template <typename... Idx>
   T& operator()( Idx... idx )
   {
      return data_[offset( idx... )];
   }

   template <typename... Idx>
   const T& operator()( Idx... idx ) const
   {
      return data_[offset( idx... )];
   }

   const std::vector<T>& flat() const { return data_; }
   std::vector<T>& flat() { return data_; }

   /// Multi-index of a flat position.
   Shape unravel( std::size_t pos ) const
   {
      Shape idx{};
      for( std::size_t k = N; k-- > 0; )
      {
         idx[k] = pos % shape_[k];
         pos /= shape_[k];
      }
      return idx;
   }

   friend bool operator==( const Tensor& a, const Tensor& b ) = default;

 private:
   template <typename... Idx>
   std::size_t offset( Idx... idx ) const
   {
      static_assert( sizeof...( Idx ) == N, "wrong number of indices" );
      const std::array<std::size_t, N> at{ static_cast<std::size_t>( idx )... };
      std::size_t pos = 0;
      for( std::size_t k = 0; k < N; ++k )
      {
         if( at[k] >= shape_[k] )
            throw std::out_of_range( "tensor index out of range" );
         pos = pos * shape_[k] + at[k];
      }
      return pos;
   }

   Shape shape_;
   std::vector<T> data_;
};

} // namespace lotlab

#endif
