// Copyright 2026 The lotlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "lotlab/cli.hpp"

#include "lotlab/errors.hpp"
#include "lotlab/formulation.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

namespace lotlab
{

using nlohmann::json;

std::int64_t
uniform_int( std::mt19937_64& engine, std::int64_t lo, std::int64_t hi )
{
   if( lo > hi )
      throw std::invalid_argument( "uniform_int: empty range" );
   const std::uint64_t span = static_cast<std::uint64_t>( hi ) - static_cast<std::uint64_t>( lo );
   if( span == std::numeric_limits<std::uint64_t>::max() )
      return static_cast<std::int64_t>( engine() );
   const std::uint64_t range = span + 1;
   // Values below `threshold` would bias the residue; 2^64 mod range of them.
   const std::uint64_t threshold = ( 0 - range ) % range;
   std::uint64_t draw;
   do
      draw = engine();
   while( draw < threshold );
   return static_cast<std::int64_t>( static_cast<std::uint64_t>( lo ) + draw % range );
}

namespace
{

template <typename T, std::size_t N>
void
fill( Tensor<T, N>& tensor, std::mt19937_64& engine, std::int64_t hi )
{
   for( T& value : tensor.flat() )
      value = uniform_int( engine, 0, hi );
}

void
fill( std::vector<std::int64_t>& values, std::mt19937_64& engine, std::int64_t hi )
{
   for( std::int64_t& value : values )
      value = uniform_int( engine, 0, hi );
}

} // namespace

UflInstance
generate_ufl( std::size_t facilities, std::size_t clients, std::int64_t max_cost,
              std::uint64_t seed )
{
   std::mt19937_64 engine( seed );
   UflInstance in( facilities, clients );
   fill( in.opening_cost, engine, max_cost );
   fill( in.service_cost, engine, max_cost );
   validate( in );
   return in;
}

JrpInstance
generate_jrp( std::size_t items, std::size_t periods, std::int64_t max_cost,
              std::int64_t max_demand, std::uint64_t seed )
{
   std::mt19937_64 engine( seed );
   JrpInstance in( items, periods );
   fill( in.demand, engine, max_demand );
   fill( in.setup_cost, engine, max_cost );
   fill( in.joint_setup_cost, engine, max_cost );
   fill( in.unit_cost, engine, max_cost );
   fill( in.holding_cost, engine, max_cost );
   validate( in );
   return in;
}

MiuMplsInstance
generate_miumpls( std::size_t items, std::size_t plants, std::size_t periods,
                  std::int64_t max_cost, std::int64_t max_demand, std::uint64_t seed )
{
   std::mt19937_64 engine( seed );
   MiuMplsInstance in( items, plants, periods );
   fill( in.demand, engine, max_demand );
   fill( in.setup_cost, engine, max_cost );
   fill( in.unit_cost, engine, max_cost );
   fill( in.holding_cost, engine, max_cost );
   fill( in.transfer_cost, engine, max_cost );
   fill( in.transfer_setup_cost, engine, max_cost );
   validate( in );
   return in;
}

std::string
instance_digest( const AnyInstance& instance )
{
   std::uint64_t hash = 0xcbf29ce484222325ull;
   for( unsigned char ch : serialize_instance( instance ) )
   {
      hash ^= ch;
      hash *= 0x100000001b3ull;
   }
   char buffer[17];
   std::snprintf( buffer, sizeof( buffer ), "%016llx", static_cast<unsigned long long>( hash ) );
   return buffer;
}

namespace
{

// Shared by both reductions. `forward` maps a source solution to the
// lot-sizing side, `backward` the other way.
template <typename Source, typename SourceSolution, typename Forward, typename Backward>
VerifyOutcome
verify_chain( const Source& source, const MiuMplsInstance& reduced, Omega omega,
              const OracleLimits& limits, Forward forward, Backward backward,
              SourceSolution ( *solve_source )( const Source&, const OracleLimits& ) )
{
   VerifyOutcome outcome;
   outcome.omega = std::move( omega );
   const SourceSolution source_opt = solve_source( source, limits );
   const MiuMplsSolution target_opt = solve_miumpls_exact( reduced, limits );
   outcome.source_optimum = solution_cost( source_opt );
   outcome.target_optimum = solution_cost( target_opt );

   auto fail = [&]( std::string what )
   {
      if( !outcome.violation )
         outcome.violation = std::move( what );
   };
   const Rational opt( outcome.source_optimum );

   if( outcome.source_optimum != outcome.target_optimum )
      fail( "optima differ: source " + std::to_string( outcome.source_optimum ) + ", reduced " +
            std::to_string( outcome.target_optimum ) );

   try
   {
      auto there = forward( source, source_opt );
      outcome.certificates.push_back( there.certificate );
      if( !there.certificate.equal )
         fail( "forward map changed the cost from " + there.certificate.source_cost.to_string() +
               " to " + there.certificate.target_cost.to_string() );

      auto back = backward( source, target_opt );
      outcome.certificates.push_back( back.certificate );
      if( back.certificate.target_cost < back.certificate.source_cost )
         fail( "backward map raised the cost from " + back.certificate.target_cost.to_string() +
               " to " + back.certificate.source_cost.to_string() );
      else if( back.certificate.source_cost != opt )
         fail( "backward map of the reduced optimum costs " +
               back.certificate.source_cost.to_string() + ", optimum is " + opt.to_string() );

      // Both round trips must land on an optimum again.
      auto there_again = forward( source, back.solution );
      outcome.certificates.push_back( there_again.certificate );
      if( there_again.certificate.target_cost != opt )
         fail( "backward-forward round trip costs " +
               there_again.certificate.target_cost.to_string() );

      auto back_again = backward( source, there.solution );
      outcome.certificates.push_back( back_again.certificate );
      if( back_again.certificate.source_cost != opt )
         fail( "forward-backward round trip costs " +
               back_again.certificate.source_cost.to_string() );
   }
   catch( const MappingError& e )
   {
      fail( std::string( "solution map failed: " ) + e.what() );
   }
   return outcome;
}

} // namespace

VerifyOutcome
verify_reduction( const UflInstance& instance, const OracleLimits& limits )
{
   return verify_chain( instance, reduce_ufl_to_umpls( instance ), omega_ufl( instance ), limits,
                        map_ufl_solution_forward, map_umpls_solution_backward, &solve_ufl_exact );
}

VerifyOutcome
verify_reduction( const JrpInstance& instance, const OracleLimits& limits )
{
   return verify_chain( instance, reduce_jrp_to_miu2pls( instance ), omega_jrp( instance ), limits,
                        map_jrp_solution_forward, map_miu2pls_solution_backward,
                        &solve_jrp_exact );
}

// ---------------------------------------------------------------------------
// command line

namespace
{

std::string
read_file( const std::string& path )
{
   std::ifstream in( path, std::ios::binary );
   if( !in )
      throw ParseError( "cannot read " + path );
   std::ostringstream text;
   text << in.rdbuf();
   return text.str();
}

void
write_file( const std::string& path, const std::string& content )
{
   std::ofstream out( path, std::ios::binary | std::ios::trunc );
   if( !out || !( out << content ) )
      throw ValidationError( "cannot write " + path );
}

json
certificate_to_json( const ReductionCertificate& certificate )
{
   return json::parse( certificate_json( certificate ) );
}

json
omega_to_json( const Omega& omega )
{
   json terms = json::array();
   for( const auto& [name, value] : omega.terms )
      terms.push_back( { { "name", name }, { "value", value } } );
   return { { "value", omega.value }, { "terms", terms }, { "multiplier", omega.multiplier } };
}

std::string
omega_text( const Omega& omega )
{
   std::string text = "Omega = " + std::to_string( omega.value ) + " = (";
   for( std::size_t k = 0; k < omega.terms.size(); ++k )
   {
      if( k > 0 )
         text += " + ";
      text += omega.terms[k].first + " " + std::to_string( omega.terms[k].second );
   }
   return text + ") * " + std::to_string( omega.multiplier );
}

std::string
dims_text( const AnyInstance& instance )
{
   struct
   {
      std::string operator()( const MiuMplsInstance& in ) const
      {
         return "NI=" + std::to_string( in.items ) + " NP=" + std::to_string( in.plants ) +
                " NT=" + std::to_string( in.periods );
      }
      std::string operator()( const UflInstance& in ) const
      {
         return "NS=" + std::to_string( in.facilities ) + " NC=" + std::to_string( in.clients );
      }
      std::string operator()( const JrpInstance& in ) const
      {
         return "NI=" + std::to_string( in.items ) + " NT=" + std::to_string( in.periods );
      }
   } visitor;
   return std::visit( visitor, instance );
}

std::size_t
read_env_budget( const char* name, std::size_t fallback )
{
   const char* value = std::getenv( name );
   if( value == nullptr || *value == '\0' )
      return fallback;
   std::size_t parsed = 0;
   std::string_view text( value );
   auto [ptr, ec] = std::from_chars( text.data(), text.data() + text.size(), parsed );
   if( ec != std::errc() || ptr != text.data() + text.size() )
      throw ValidationError( std::string( name ) + " must be a nonnegative integer, got \"" +
                             value + "\"" );
   return parsed;
}

struct BudgetFlags
{
   std::optional<std::size_t> ybits;
   std::optional<std::size_t> setup_bits;
   std::optional<std::size_t> subset_bits;
   std::optional<std::size_t> joint_bits;
   bool enumerate_free = false;

   void attach( CLI::App* app )
   {
      app->add_option( "--ybits", ybits,
                       "transfer-setup bits the MIUMPLS oracle may enumerate "
                       "[env LOTLAB_BUDGET_YBITS, default 20]" );
      app->add_option( "--setup-bits", setup_bits,
                       "production-setup bits per item for MIUMPLS [default 16]" );
      app->add_option( "--subset-bits", subset_bits, "facilities the UFL oracle may enumerate "
                                                     "[default 20]" );
      app->add_option( "--joint-bits", joint_bits,
                       "joint-setup bits the JRP oracle may enumerate "
                       "[env LOTLAB_BUDGET_JOINTBITS, default 16]" );
      app->add_flag( "--enumerate-free", enumerate_free,
                     "also enumerate binaries whose fixed cost is zero" );
   }

   OracleLimits limits() const
   {
      OracleLimits limits;
      limits.transfer_setup_bits =
          ybits.value_or( read_env_budget( "LOTLAB_BUDGET_YBITS", limits.transfer_setup_bits ) );
      limits.joint_bits =
          joint_bits.value_or( read_env_budget( "LOTLAB_BUDGET_JOINTBITS", limits.joint_bits ) );
      limits.setup_bits = setup_bits.value_or( limits.setup_bits );
      limits.subset_bits = subset_bits.value_or( limits.subset_bits );
      limits.fix_free_binaries = !enumerate_free;
      return limits;
   }
};

json
limits_json( const OracleLimits& limits )
{
   return { { "ybits", limits.transfer_setup_bits },
            { "setup_bits", limits.setup_bits },
            { "subset_bits", limits.subset_bits },
            { "joint_bits", limits.joint_bits },
            { "fix_free_binaries", limits.fix_free_binaries } };
}

/// Common report skeleton; see README for the field list.
struct Report
{
   json doc;

   explicit Report( const std::string& command )
   {
      doc["command"] = command;
      doc["seed"] = nullptr;
      doc["digests"] = json::array();
      doc["costs"] = json::object();
      doc["certificates"] = json::array();
   }
};

struct Dims
{
   std::size_t ns = 0, nc = 0, ni = 0, np = 0, nt = 0;
};

void
check_dim( const char* flag, std::size_t value )
{
   if( value < 1 || value > kGenerateDimCap )
      throw ValidationError( std::string( flag ) + " must be in [1, " +
                             std::to_string( kGenerateDimCap ) + "], got " +
                             std::to_string( value ) );
}

void
check_range( const char* flag, std::int64_t value )
{
   if( value < 0 || value > kValueCap )
      throw ValidationError( std::string( flag ) + " must be in [0, 2^40], got " +
                             std::to_string( value ) );
}

/// Rejects flags that do not apply to `problem` and checks the ones that do.
void
check_dims( const std::string& problem, const Dims& dims, CLI::App* app )
{
   struct Flag
   {
      const char* name;
      std::size_t value;
   };
   const Flag all[] = { { "--ns", dims.ns },
                        { "--nc", dims.nc },
                        { "--ni", dims.ni },
                        { "--np", dims.np },
                        { "--nt", dims.nt } };
   std::vector<std::string> wanted;
   if( problem == "ufl" )
      wanted = { "--ns", "--nc" };
   else if( problem == "jrp" )
      wanted = { "--ni", "--nt" };
   else
      wanted = { "--ni", "--np", "--nt" };
   for( const Flag& flag : all )
   {
      bool applies = std::find( wanted.begin(), wanted.end(), flag.name ) != wanted.end();
      const CLI::Option* option = app->get_option_no_throw( flag.name );
      if( !applies && option != nullptr && option->count() > 0 )
         throw ValidationError( std::string( flag.name ) + " does not apply to " + problem );
      if( applies )
         check_dim( flag.name, flag.value );
   }
}

json
dims_json( const std::string& problem, const Dims& dims )
{
   if( problem == "ufl" )
      return { { "NS", dims.ns }, { "NC", dims.nc } };
   if( problem == "jrp" )
      return { { "NI", dims.ni }, { "NT", dims.nt } };
   return { { "NI", dims.ni }, { "NP", dims.np }, { "NT", dims.nt } };
}

/// Payload goes to the file when one is named, else to stdout with the
/// human-readable lines moved to stderr so stdout stays machine-readable.
struct Sink
{
   std::string path;
   std::ostream& out;
   std::ostream& err;

   std::ostream& text() const { return path.empty() ? err : out; }

   void payload( const std::string& content ) const
   {
      if( path.empty() )
         out << content;
      else
         write_file( path, content );
   }
};

// -- generate ---------------------------------------------------------------

struct GenerateArgs
{
   std::string problem;
   Dims dims;
   std::int64_t max_cost = 20;
   std::int64_t max_demand = 20;
   std::uint64_t seed = 0;
   std::string out_path;
};

int
cmd_generate( const GenerateArgs& args, CLI::App* app, Report& report, std::ostream& out,
              std::ostream& err )
{
   check_dims( args.problem, args.dims, app );
   check_range( "--max-cost", args.max_cost );
   check_range( "--max-demand", args.max_demand );
   if( args.problem == "ufl" && app->count( "--max-demand" ) > 0 )
      throw ValidationError( "--max-demand does not apply to ufl" );

   AnyInstance instance;
   if( args.problem == "ufl" )
      instance = generate_ufl( args.dims.ns, args.dims.nc, args.max_cost, args.seed );
   else if( args.problem == "jrp" )
      instance = generate_jrp( args.dims.ni, args.dims.nt, args.max_cost, args.max_demand,
                               args.seed );
   else
      instance = generate_miumpls( args.dims.ni, args.dims.np, args.dims.nt, args.max_cost,
                                   args.max_demand, args.seed );

   Sink sink{ args.out_path, out, err };
   sink.payload( serialize_instance( instance ) );
   const std::string digest = instance_digest( instance );
   sink.text() << "generated " << args.problem << " " << dims_text( instance ) << " seed "
               << args.seed << " digest " << digest << "\n";

   report.doc["seed"] = args.seed;
   report.doc["problem"] = args.problem;
   report.doc["dims"] = dims_json( args.problem, args.dims );
   report.doc["digests"].push_back( digest );
   return exit_ok;
}

// -- reduce -----------------------------------------------------------------

struct ReduceArgs
{
   std::string input;
   std::string direction;
   std::string out_path;
};

int
cmd_reduce( const ReduceArgs& args, Report& report, std::ostream& out, std::ostream& err )
{
   const AnyInstance source = parse_instance( read_file( args.input ) );
   const std::string tag( problem_tag( source ) );
   if( tag != "ufl" && tag != "jrp" )
      throw ValidationError( "expected ufl or jrp instance, got " + tag );
   const std::string natural = tag == "ufl" ? "ufl-to-umpls" : "jrp-to-miu2pls";
   if( !args.direction.empty() && args.direction != natural )
      throw ValidationError( "direction " + args.direction + " does not accept a " + tag +
                             " instance" );

   Omega omega;
   AnyInstance reduced;
   if( const auto* ufl = std::get_if<UflInstance>( &source ) )
   {
      omega = omega_ufl( *ufl );
      reduced = reduce_ufl_to_umpls( *ufl );
   }
   else
   {
      const auto& jrp = std::get<JrpInstance>( source );
      omega = omega_jrp( jrp );
      reduced = reduce_jrp_to_miu2pls( jrp );
   }

   Sink sink{ args.out_path, out, err };
   sink.payload( serialize_instance( reduced ) );
   const std::string source_digest = instance_digest( source );
   const std::string reduced_digest = instance_digest( reduced );
   sink.text() << "reduced " << tag << " " << dims_text( source ) << " (digest "
               << source_digest << ") to miumpls " << dims_text( reduced ) << " (digest "
               << reduced_digest << ")\n"
               << omega_text( omega ) << "\n";

   report.doc["direction"] = natural;
   report.doc["digests"] = { source_digest, reduced_digest };
   report.doc["omega"] = omega_to_json( omega );
   return exit_ok;
}

// -- solve ------------------------------------------------------------------

struct SolveArgs
{
   std::string input;
   std::string out_path;
   BudgetFlags budget;
};

int
cmd_solve( const SolveArgs& args, Report& report, std::ostream& out, std::ostream& err )
{
   const AnyInstance instance = parse_instance( read_file( args.input ) );
   const OracleLimits limits = args.budget.limits();
   report.doc["limits"] = limits_json( limits );
   const AnySolution solution = solve_exact( instance, limits );
   const std::int64_t cost = solution_cost( solution );

   Sink sink{ args.out_path, out, err };
   sink.payload( serialize_solution( solution ) );
   const std::string digest = instance_digest( instance );
   sink.text() << "solved " << problem_tag( instance ) << " " << dims_text( instance )
               << " (digest " << digest << "): optimal cost " << cost << "\n";

   report.doc["problem"] = std::string( problem_tag( instance ) );
   report.doc["digests"].push_back( digest );
   report.doc["costs"]["optimum"] = cost;
   return exit_ok;
}

// -- emit -------------------------------------------------------------------

struct EmitArgs
{
   std::string input;
   std::string format = "mps";
   std::string out_path;
};

int
cmd_emit( const EmitArgs& args, Report& report, std::ostream& out, std::ostream& err )
{
   const AnyInstance instance = parse_instance( read_file( args.input ) );
   MipModel model;
   if( const auto* in = std::get_if<MiuMplsInstance>( &instance ) )
      model = build_mip_miumpls( *in );
   else if( const auto* in = std::get_if<JrpInstance>( &instance ) )
      model = build_mip_jrp( *in );
   else
      throw ValidationError( "emit supports miumpls and jrp; no model is defined for " +
                             std::string( problem_tag( instance ) ) );

   const MipFormat format = args.format == "lp" ? MipFormat::lp : MipFormat::mps;
   Sink sink{ args.out_path, out, err };
   sink.payload( emit( model, format ) );

   std::size_t integers = 0;
   for( const MipVariable& var : model.variables() )
      integers += var.integer ? 1 : 0;
   const std::string digest = instance_digest( instance );
   sink.text() << "emitted " << model.name() << " model (digest " << digest << ") as "
               << args.format << ": " << model.variables().size() << " variables ("
               << integers << " integer), " << model.rows().size() << " rows\n";

   report.doc["problem"] = std::string( problem_tag( instance ) );
   report.doc["format"] = args.format;
   report.doc["digests"].push_back( digest );
   report.doc["variables"] = model.variables().size();
   report.doc["integer_variables"] = integers;
   report.doc["rows"] = model.rows().size();
   return exit_ok;
}

// -- verify -----------------------------------------------------------------

struct VerifyArgs
{
   std::string problem;
   std::size_t count = 1;
   Dims dims;
   bool vary_dims = false;
   std::int64_t max_cost = 20;
   std::int64_t max_demand = 20;
   std::uint64_t seed = 0;
   std::string replay;
   std::string replay_out = "lotlab-replay.json";
   BudgetFlags budget;
};

struct VerifyItem
{
   AnyInstance instance;
   std::optional<std::uint64_t> seed;
};

int
cmd_verify( VerifyArgs args, CLI::App* app, Report& report, std::ostream& out )
{
   const OracleLimits limits = args.budget.limits();
   report.doc["limits"] = limits_json( limits );

   // Instances are produced lazily so a budget error stops early.
   std::size_t count = args.count;
   std::optional<AnyInstance> replayed;
   if( !args.replay.empty() )
   {
      if( !args.problem.empty() || app->count( "--count" ) > 0 || app->count( "--seed" ) > 0 )
         throw ValidationError( "--replay takes the instance from the file; drop the problem, "
                                "--count and --seed" );
      replayed = parse_instance( read_file( args.replay ) );
      args.problem = std::string( problem_tag( *replayed ) );
      if( args.problem != "ufl" && args.problem != "jrp" )
         throw ValidationError( "verify expects a ufl or jrp instance, got " + args.problem );
      count = 1;
      report.doc["replay"] = args.replay;
   }
   else
   {
      if( args.problem.empty() )
         throw ValidationError( "verify needs a problem (ufl or jrp) or --replay" );
      check_dims( args.problem, args.dims, app );
      check_range( "--max-cost", args.max_cost );
      check_range( "--max-demand", args.max_demand );
      report.doc["seed"] = args.seed;
      report.doc["dims"] = dims_json( args.problem, args.dims );
      report.doc["vary_dims"] = args.vary_dims;
   }
   report.doc["problem"] = args.problem;
   report.doc["count"] = count;

   auto make = [&]( std::size_t k ) -> VerifyItem
   {
      if( replayed )
         return { *replayed, std::nullopt };
      const std::uint64_t seed = args.seed + k;
      Dims dims = args.dims;
      if( args.vary_dims )
      {
         // Dimension draws use their own stream so that the instance data
         // equals `generate` with the drawn dimensions and the same seed.
         std::mt19937_64 engine( seed ^ 0x9e3779b97f4a7c15ull );
         auto draw = [&]( std::size_t hi )
         { return static_cast<std::size_t>( uniform_int( engine, 1, static_cast<std::int64_t>( hi ) ) ); };
         if( args.problem == "ufl" )
         {
            dims.ns = draw( dims.ns );
            dims.nc = draw( dims.nc );
         }
         else
         {
            dims.ni = draw( dims.ni );
            dims.nt = draw( dims.nt );
         }
      }
      if( args.problem == "ufl" )
         return { generate_ufl( dims.ns, dims.nc, args.max_cost, seed ), seed };
      return { generate_jrp( dims.ni, dims.nt, args.max_cost, args.max_demand, seed ), seed };
   };

   std::size_t passed = 0;
   bool replay_written = false;
   json instances = json::array();
   for( std::size_t k = 0; k < count; ++k )
   {
      const VerifyItem item = make( k );
      const VerifyOutcome outcome =
          std::visit( [&]( const auto& in ) -> VerifyOutcome
                      {
                         using T = std::decay_t<decltype( in )>;
                         if constexpr( std::is_same_v<T, MiuMplsInstance> )
                            throw std::logic_error( "verify on a lot-sizing instance" );
                         else
                            return verify_reduction( in, limits );
                      },
                      item.instance );

      const std::string digest = instance_digest( item.instance );
      json entry;
      entry["index"] = k;
      entry["seed"] = item.seed ? json( *item.seed ) : json( nullptr );
      entry["digest"] = digest;
      entry["dims"] = dims_text( item.instance );
      entry["source_optimum"] = outcome.source_optimum;
      entry["target_optimum"] = outcome.target_optimum;
      entry["omega"] = outcome.omega.value;
      entry["certificates"] = json::array();
      for( const ReductionCertificate& certificate : outcome.certificates )
         entry["certificates"].push_back( certificate_to_json( certificate ) );
      entry["pass"] = !outcome.violation.has_value();
      if( outcome.violation )
         entry["violation"] = *outcome.violation;

      out << "[" << k << "] " << args.problem << " " << dims_text( item.instance );
      if( item.seed )
         out << " seed " << *item.seed;
      out << " digest " << digest << ": optimum " << outcome.source_optimum << ", reduced "
          << outcome.target_optimum << ", Omega " << outcome.omega.value << " -> "
          << ( outcome.violation ? "FAIL" : "pass" ) << "\n";
      for( const ReductionCertificate& certificate : outcome.certificates )
         out << "    " << certificate_json( certificate ) << "\n";

      if( outcome.violation )
      {
         out << "    violation: " << *outcome.violation << "\n";
         if( !replay_written && args.replay.empty() )
         {
            write_file( args.replay_out, serialize_instance( item.instance ) );
            entry["replay_file"] = args.replay_out;
            out << "    instance written to " << args.replay_out << "; rerun with "
                << "`lotlab verify --replay " << args.replay_out << "`\n";
            replay_written = true;
         }
      }
      else
         ++passed;

      report.doc["digests"].push_back( digest );
      for( const ReductionCertificate& certificate : outcome.certificates )
         report.doc["certificates"].push_back( certificate_to_json( certificate ) );
      instances.push_back( std::move( entry ) );
   }

   out << "verify " << args.problem << ": " << passed << "/" << count << " passed\n";
   report.doc["instances"] = std::move( instances );
   report.doc["passed"] = passed;
   report.doc["failed"] = count - passed;
   return passed == count ? exit_ok : exit_violation;
}

} // namespace

int
run_cli( const std::vector<std::string>& args, std::ostream& out, std::ostream& err )
{
   CLI::App app( "Exact lot-sizing laboratory: instances, reductions, oracles and MIP files.",
                 "lotlab" );
   app.require_subcommand( 1 );
   app.fallthrough();
   std::string report_path;
   bool timing = false;
   app.add_option( "--report", report_path, "write a JSON run report to this file" );
   app.add_flag( "--timing", timing, "include wall time in the report (not reproducible)" );

   const std::vector<std::string> problems = { "ufl", "jrp", "miumpls" };

   GenerateArgs gen;
   CLI::App* generate = app.add_subcommand( "generate", "write a random instance" );
   generate->add_option( "problem", gen.problem, "ufl, jrp or miumpls" )
       ->required()
       ->check( CLI::IsMember( problems ) );
   generate->add_option( "--ns", gen.dims.ns, "facilities (ufl)" );
   generate->add_option( "--nc", gen.dims.nc, "clients (ufl)" );
   generate->add_option( "--ni", gen.dims.ni, "items (jrp, miumpls)" );
   generate->add_option( "--np", gen.dims.np, "plants (miumpls)" );
   generate->add_option( "--nt", gen.dims.nt, "periods (jrp, miumpls)" );
   generate->add_option( "--max-cost", gen.max_cost, "costs are uniform in [0, max]" )
       ->capture_default_str();
   generate->add_option( "--max-demand", gen.max_demand, "demands are uniform in [0, max]" )
       ->capture_default_str();
   generate->add_option( "--seed", gen.seed, "64-bit seed of the mt19937_64 stream" )
       ->capture_default_str();
   generate->add_option( "-o,--out", gen.out_path, "output file (default: stdout)" );

   ReduceArgs red;
   CLI::App* reduce = app.add_subcommand( "reduce", "map a ufl or jrp instance to lot sizing" );
   reduce->add_option( "input", red.input, "instance file" )->required();
   reduce->add_option( "--direction", red.direction, "ufl-to-umpls or jrp-to-miu2pls" )
       ->check( CLI::IsMember( { "ufl-to-umpls", "jrp-to-miu2pls" } ) );
   reduce->add_option( "-o,--out", red.out_path, "output file (default: stdout)" );

   SolveArgs sol;
   CLI::App* solve = app.add_subcommand( "solve", "solve an instance exactly" );
   solve->add_option( "input", sol.input, "instance file" )->required();
   solve->add_option( "-o,--out", sol.out_path, "solution file (default: stdout)" );
   sol.budget.attach( solve );

   EmitArgs em;
   CLI::App* emit_cmd = app.add_subcommand( "emit", "write the MIP model of an instance" );
   emit_cmd->add_option( "input", em.input, "miumpls or jrp instance file" )->required();
   emit_cmd->add_option( "--format", em.format, "mps or lp" )
       ->check( CLI::IsMember( { "mps", "lp" } ) )
       ->capture_default_str();
   emit_cmd->add_option( "-o,--out", em.out_path, "model file (default: stdout)" );

   VerifyArgs ver;
   CLI::App* verify = app.add_subcommand( "verify", "check a reduction on random instances" );
   verify->add_option( "problem", ver.problem, "ufl or jrp" )
       ->check( CLI::IsMember( { "ufl", "jrp" } ) );
   verify->add_option( "--count", ver.count, "number of instances" )->capture_default_str();
   verify->add_option( "--ns", ver.dims.ns, "facilities (ufl)" );
   verify->add_option( "--nc", ver.dims.nc, "clients (ufl)" );
   verify->add_option( "--ni", ver.dims.ni, "items (jrp)" );
   verify->add_option( "--nt", ver.dims.nt, "periods (jrp)" );
   verify->add_flag( "--vary-dims", ver.vary_dims,
                     "draw each dimension uniformly from [1, given value]" );
   verify->add_option( "--max-cost", ver.max_cost, "costs are uniform in [0, max]" )
       ->capture_default_str();
   verify->add_option( "--max-demand", ver.max_demand, "demands are uniform in [0, max] (jrp)" )
       ->capture_default_str();
   verify->add_option( "--seed", ver.seed, "instance k uses seed + k" )->capture_default_str();
   verify->add_option( "--replay", ver.replay, "rerun the checks on one instance file" );
   verify->add_option( "--replay-out", ver.replay_out,
                       "where the first failing instance is written" )
       ->capture_default_str();
   ver.budget.attach( verify );

   try
   {
      std::vector<std::string> reversed( args.rbegin(), args.rend() );
      app.parse( reversed );
   }
   catch( const CLI::CallForHelp& e )
   {
      return app.exit( e, out, err );
   }
   catch( const CLI::ParseError& e )
   {
      app.exit( e, out, err );
      return exit_error;
   }

   const auto start = std::chrono::steady_clock::now();
   try
   {
      int code = exit_ok;
      std::optional<Report> report;
      if( generate->parsed() )
      {
         report.emplace( "generate" );
         code = cmd_generate( gen, generate, *report, out, err );
      }
      else if( reduce->parsed() )
      {
         report.emplace( "reduce" );
         code = cmd_reduce( red, *report, out, err );
      }
      else if( solve->parsed() )
      {
         report.emplace( "solve" );
         code = cmd_solve( sol, *report, out, err );
      }
      else if( emit_cmd->parsed() )
      {
         report.emplace( "emit" );
         code = cmd_emit( em, *report, out, err );
      }
      else
      {
         report.emplace( "verify" );
         code = cmd_verify( ver, verify, *report, out );
      }
      report->doc["exit_code"] = code;
      if( timing )
         report->doc["wall_time_ms"] =
             std::chrono::duration<double, std::milli>( std::chrono::steady_clock::now() - start )
                 .count();
      if( !report_path.empty() )
         write_file( report_path, report->doc.dump( 2 ) + "\n" );
      return code;
   }
   catch( const BudgetExceeded& e )
   {
      err << "lotlab: budget exceeded: " << e.what() << "\n";
   }
   catch( const Error& e )
   {
      err << "lotlab: " << e.what() << "\n";
   }
   catch( const std::logic_error& e )
   {
      // An oracle failed its own consistency check.
      err << "lotlab: internal check failed: " << e.what() << "\n";
      return exit_violation;
   }
   return exit_error;
}

} // namespace lotlab
