// Copyright 2026 The lotlab Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef LOTLAB_FORMULATION_HPP
#define LOTLAB_FORMULATION_HPP

#include "lotlab/instances.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace lotlab
{

enum class RowSense
{
   less_equal,
   equal,
   greater_equal,
};

struct MipVariable
{
   std::string name;
   std::int64_t lower = 0;
   std::optional<std::int64_t> upper; ///< empty means +infinity
   bool integer = false;
   std::int64_t objective = 0;

   friend bool operator==( const MipVariable&, const MipVariable& ) = default;
};

struct MipRow
{
   std::string name;
   RowSense sense = RowSense::equal;
   std::int64_t rhs = 0;
   std::vector<std::pair<std::size_t, std::int64_t>> coefficients; ///< (variable, value)

   friend bool operator==( const MipRow&, const MipRow& ) = default;
};

/// Solver-agnostic minimisation model with integer data.
class MipModel
{
 public:
   explicit MipModel( std::string name = "lotlab" );

   const std::string& name() const { return name_; }
   const std::vector<MipVariable>& variables() const { return variables_; }
   const std::vector<MipRow>& rows() const { return rows_; }

   /// Throws ValidationError on an invalid or duplicate name.
   std::size_t add_variable( MipVariable variable );

   /// Coefficients are stored sorted by variable index. Throws
   /// ValidationError on unknown or repeated variables and duplicate names.
   void add_row( MipRow row );

   std::optional<std::size_t> find_variable( std::string_view name ) const;

   friend bool operator==( const MipModel& a, const MipModel& b )
   {
      return a.name_ == b.name_ && a.variables_ == b.variables_ && a.rows_ == b.rows_;
   }

 private:
   std::string name_;
   std::vector<MipVariable> variables_;
   std::vector<MipRow> rows_;
   std::unordered_map<std::string, std::size_t> variable_index_;
   std::unordered_map<std::string, std::size_t> row_index_;
};

enum class LinkKind
{
   production,
   transfer,
};

/// Remaining system demand of `item` from `period` on, summed over plants.
/// No useful production or transfer in that period can exceed it.
std::int64_t compute_big_m( const MiuMplsInstance& instance, std::size_t item,
                            std::size_t period, LinkKind kind );

/// Variables x, s, w (continuous) then y, Y (binary); rows: balance, then
/// production linking, then transfer linking. Names are 1-based, e.g.
/// x_i1_p2_t3, w_i1_p1_l2_t1, Y_p1_l2_t1.
MipModel build_mip_miumpls( const MiuMplsInstance& instance );

/// Variables x', s' (continuous) then y', Y' (binary); rows: balance,
/// production linking, joint linking.
MipModel build_mip_jrp( const JrpInstance& instance );

/// Assignment of every model variable taken from a solution, keyed by the
/// variable names used by the builders above.
std::map<std::string, Rational> model_point( const MiuMplsInstance& instance,
                                             const MiuMplsSolution& solution );
std::map<std::string, Rational> model_point( const JrpInstance& instance,
                                             const JrpSolution& solution );

enum class MipFormat
{
   mps, ///< free-form MPS
   lp,  ///< CPLEX LP
};

/// Deterministic text in declaration order. Integer coefficients only.
std::string emit( const MipModel& model, MipFormat format );

/// Reads back documents written by emit; not a general-purpose reader.
MipModel parse_emitted( std::string_view text, MipFormat format );

struct ModelEvaluation
{
   std::optional<std::string> violation; ///< first violated bound or row
   Rational objective;

   bool feasible() const { return !violation.has_value(); }
};

/// Exact evaluation of bounds, integrality and rows at `point`. Throws
/// ValidationError if a variable has no value.
ModelEvaluation evaluate_model_at( const MipModel& model,
                                   const std::map<std::string, Rational>& point );

} // namespace lotlab

#endif
