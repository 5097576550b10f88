// Copyright 2026 The lotlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "lotlab/errors.hpp"
#include "lotlab/formulation.hpp"

#include <charconv>
#include <sstream>

namespace lotlab
{

namespace
{

constexpr const char* kObjectiveRow = "cost";

void
check_objective_name( const MipModel& model )
{
   for( const MipRow& row : model.rows() )
      if( row.name == kObjectiveRow )
         throw ValidationError( "row name \"cost\" is reserved for the objective" );
}

char
sense_letter( RowSense sense )
{
   switch( sense )
   {
   case RowSense::less_equal:
      return 'L';
   case RowSense::greater_equal:
      return 'G';
   case RowSense::equal:
      break;
   }
   return 'E';
}

const char*
sense_operator( RowSense sense )
{
   switch( sense )
   {
   case RowSense::less_equal:
      return "<=";
   case RowSense::greater_equal:
      return ">=";
   case RowSense::equal:
      break;
   }
   return "=";
}

std::int64_t
parse_integer( std::string_view token, std::size_t line )
{
   std::int64_t value = 0;
   const char* begin = token.data();
   const char* end = token.data() + token.size();
   if( !token.empty() && token[0] == '+' )
      ++begin;
   auto [ptr, ec] = std::from_chars( begin, end, value );
   if( ec != std::errc() || ptr != end || begin == end )
      throw ParseError( "line " + std::to_string( line ) + ": expected an integer, got '" +
                        std::string( token ) + "'" );
   return value;
}

std::vector<std::string>
split( const std::string& line )
{
   std::istringstream in( line );
   std::vector<std::string> tokens;
   std::string token;
   while( in >> token )
      tokens.push_back( token );
   return tokens;
}

// ---------------------------------------------------------------------------
// free-form MPS

std::string
emit_mps( const MipModel& model )
{
   std::ostringstream out;
   out << "NAME " << model.name() << "\n";
   out << "OBJSENSE\n    MIN\n";
   out << "ROWS\n";
   out << " N  " << kObjectiveRow << "\n";
   for( const MipRow& row : model.rows() )
      out << " " << sense_letter( row.sense ) << "  " << row.name << "\n";

   // Column-major view of the rows.
   std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> columns(
       model.variables().size() );
   for( std::size_t r = 0; r < model.rows().size(); ++r )
      for( const auto& [var, coef] : model.rows()[r].coefficients )
         columns[var].emplace_back( r, coef );

   out << "COLUMNS\n";
   bool in_integer_block = false;
   for( std::size_t k = 0; k < model.variables().size(); ++k )
   {
      const MipVariable& var = model.variables()[k];
      if( var.integer != in_integer_block )
      {
         out << "    MARKER  'MARKER'  " << ( var.integer ? "'INTORG'" : "'INTEND'" ) << "\n";
         in_integer_block = var.integer;
      }
      out << "    " << var.name << "  " << kObjectiveRow << "  " << var.objective << "\n";
      for( const auto& [row, coef] : columns[k] )
         out << "    " << var.name << "  " << model.rows()[row].name << "  " << coef << "\n";
   }
   if( in_integer_block )
      out << "    MARKER  'MARKER'  'INTEND'\n";

   out << "RHS\n";
   for( const MipRow& row : model.rows() )
      if( row.rhs != 0 )
         out << "    RHS  " << row.name << "  " << row.rhs << "\n";

   out << "BOUNDS\n";
   for( const MipVariable& var : model.variables() )
   {
      if( var.integer && var.lower == 0 && var.upper == 1 )
      {
         out << " BV BND  " << var.name << "\n";
         continue;
      }
      if( var.lower != 0 )
         out << " LO BND  " << var.name << "  " << var.lower << "\n";
      if( var.upper )
         out << " UP BND  " << var.name << "  " << *var.upper << "\n";
      else if( var.integer )
         out << " PL BND  " << var.name << "\n";
   }
   out << "ENDATA\n";
   return out.str();
}

MipModel
parse_mps( std::string_view text )
{
   std::istringstream in{ std::string( text ) };
   std::string line;
   std::size_t line_no = 0;
   std::string section;

   std::string name = "lotlab";
   std::optional<std::string> objective_row;
   std::vector<MipRow> rows;
   std::unordered_map<std::string, std::size_t> row_index;
   std::vector<MipVariable> variables;
   std::unordered_map<std::string, std::size_t> variable_index;
   bool integer_block = false;
   bool ended = false;

   auto error = [&]( const std::string& what )
   { return ParseError( "MPS line " + std::to_string( line_no ) + ": " + what ); };

   while( std::getline( in, line ) )
   {
      ++line_no;
      if( line.empty() || line[0] == '*' )
         continue;
      auto tokens = split( line );
      if( tokens.empty() )
         continue;
      if( ended )
         throw error( "content after ENDATA" );

      if( !std::isspace( static_cast<unsigned char>( line[0] ) ) )
      {
         section = tokens[0];
         if( section == "NAME" )
         {
            if( tokens.size() > 1 )
               name = tokens[1];
         }
         else if( section == "ENDATA" )
            ended = true;
         else if( section != "OBJSENSE" && section != "ROWS" && section != "COLUMNS" &&
                  section != "RHS" && section != "BOUNDS" )
            throw error( "unknown section " + section );
         continue;
      }

      if( section == "OBJSENSE" )
      {
         if( tokens[0] != "MIN" && tokens[0] != "MINIMIZE" )
            throw error( "only minimisation is supported" );
      }
      else if( section == "ROWS" )
      {
         if( tokens.size() != 2 )
            throw error( "expected '<sense> <row>'" );
         if( tokens[0] == "N" )
         {
            if( objective_row )
               throw error( "more than one objective row" );
            objective_row = tokens[1];
            continue;
         }
         RowSense sense;
         if( tokens[0] == "E" )
            sense = RowSense::equal;
         else if( tokens[0] == "L" )
            sense = RowSense::less_equal;
         else if( tokens[0] == "G" )
            sense = RowSense::greater_equal;
         else
            throw error( "unknown row sense " + tokens[0] );
         if( !row_index.emplace( tokens[1], rows.size() ).second )
            throw error( "duplicate row " + tokens[1] );
         rows.push_back( { tokens[1], sense, 0, {} } );
      }
      else if( section == "COLUMNS" )
      {
         if( tokens.size() == 3 && tokens[1] == "'MARKER'" )
         {
            if( tokens[2] == "'INTORG'" )
               integer_block = true;
            else if( tokens[2] == "'INTEND'" )
               integer_block = false;
            else
               throw error( "unknown marker " + tokens[2] );
            continue;
         }
         if( tokens.size() != 3 && tokens.size() != 5 )
            throw error( "expected '<column> <row> <value> [<row> <value>]'" );
         auto [it, inserted] = variable_index.emplace( tokens[0], variables.size() );
         if( inserted )
            variables.push_back( { tokens[0], 0, std::nullopt, integer_block, 0 } );
         else if( it->second + 1 != variables.size() )
            throw error( "column " + tokens[0] + " is not contiguous" );
         for( std::size_t k = 1; k + 1 < tokens.size(); k += 2 )
         {
            std::int64_t value = parse_integer( tokens[k + 1], line_no );
            if( objective_row && tokens[k] == *objective_row )
            {
               variables[it->second].objective = value;
               continue;
            }
            auto row = row_index.find( tokens[k] );
            if( row == row_index.end() )
               throw error( "column " + tokens[0] + " names undeclared row " + tokens[k] );
            rows[row->second].coefficients.emplace_back( it->second, value );
         }
      }
      else if( section == "RHS" )
      {
         if( tokens.size() != 3 && tokens.size() != 5 )
            throw error( "expected '<set> <row> <value> [<row> <value>]'" );
         for( std::size_t k = 1; k + 1 < tokens.size(); k += 2 )
         {
            auto row = row_index.find( tokens[k] );
            if( row == row_index.end() )
               throw error( "right-hand side for undeclared row " + tokens[k] );
            rows[row->second].rhs = parse_integer( tokens[k + 1], line_no );
         }
      }
      else if( section == "BOUNDS" )
      {
         if( tokens.size() < 3 )
            throw error( "expected '<type> <set> <column> [<value>]'" );
         auto var = variable_index.find( tokens[2] );
         if( var == variable_index.end() )
            throw error( "bound for undeclared column " + tokens[2] );
         MipVariable& target = variables[var->second];
         const std::string& type = tokens[0];
         if( type == "BV" )
         {
            target.integer = true;
            target.lower = 0;
            target.upper = 1;
         }
         else if( type == "PL" )
            target.upper.reset();
         else if( type == "LO" || type == "UP" )
         {
            if( tokens.size() != 4 )
               throw error( "bound " + type + " needs a value" );
            std::int64_t value = parse_integer( tokens[3], line_no );
            if( type == "LO" )
               target.lower = value;
            else
               target.upper = value;
         }
         else
            throw error( "unsupported bound type " + type );
      }
      else
         throw error( "data outside a section" );
   }
   if( !ended )
      throw ParseError( "MPS document has no ENDATA" );
   if( !objective_row )
      throw ParseError( "MPS document has no objective row" );

   MipModel model( name );
   for( MipVariable& var : variables )
      model.add_variable( std::move( var ) );
   for( MipRow& row : rows )
      model.add_row( std::move( row ) );
   return model;
}

// ---------------------------------------------------------------------------
// CPLEX LP

constexpr std::size_t kTermsPerLine = 8;

void
write_terms( std::ostringstream& out, const MipModel& model,
             const std::vector<std::pair<std::size_t, std::int64_t>>& terms )
{
   for( std::size_t k = 0; k < terms.size(); ++k )
   {
      const auto& [var, coef] = terms[k];
      if( k > 0 && k % kTermsPerLine == 0 )
         out << "\n   ";
      if( coef < 0 )
         out << " - " << std::to_string( coef ).substr( 1 ) << " ";
      else
         out << ( k == 0 ? " " : " + " ) << coef << " ";
      out << model.variables()[var].name;
   }
}

std::string
emit_lp( const MipModel& model )
{
   std::ostringstream out;
   out << "\\Problem name: " << model.name() << "\n";
   out << "Minimize\n";
   std::vector<std::pair<std::size_t, std::int64_t>> objective;
   for( std::size_t k = 0; k < model.variables().size(); ++k )
      if( model.variables()[k].objective != 0 )
         objective.emplace_back( k, model.variables()[k].objective );
   if( objective.empty() && !model.variables().empty() )
      objective.emplace_back( 0, 0 );
   out << " " << kObjectiveRow << ":";
   write_terms( out, model, objective );
   out << "\n";

   out << "Subject To\n";
   for( const MipRow& row : model.rows() )
   {
      if( row.coefficients.empty() )
         throw ValidationError( "row " + row.name + " has no coefficients; LP cannot express it" );
      out << " " << row.name << ":";
      write_terms( out, model, row.coefficients );
      out << " " << sense_operator( row.sense ) << " " << row.rhs << "\n";
   }

   out << "Bounds\n";
   for( const MipVariable& var : model.variables() )
   {
      if( var.upper )
         out << " " << var.lower << " <= " << var.name << " <= " << *var.upper << "\n";
      else
         out << " " << var.name << " >= " << var.lower << "\n";
   }

   bool any_binary = false, any_general = false;
   for( const MipVariable& var : model.variables() )
   {
      bool is_binary = var.integer && var.lower == 0 && var.upper == 1;
      any_binary |= is_binary;
      any_general |= var.integer && !is_binary;
   }
   if( any_binary )
   {
      out << "Binaries\n";
      for( const MipVariable& var : model.variables() )
         if( var.integer && var.lower == 0 && var.upper == 1 )
            out << " " << var.name << "\n";
   }
   if( any_general )
   {
      out << "Generals\n";
      for( const MipVariable& var : model.variables() )
         if( var.integer && !( var.lower == 0 && var.upper == 1 ) )
            out << " " << var.name << "\n";
   }
   out << "End\n";
   return out.str();
}

MipModel
parse_lp( std::string_view text )
{
   std::istringstream in{ std::string( text ) };
   std::string line;
   std::size_t line_no = 0;
   std::string name = "lotlab";

   struct Line
   {
      std::size_t number;
      std::vector<std::string> tokens;
   };
   std::map<std::string, std::vector<Line>> sections;
   std::string section;
   bool ended = false;
   while( std::getline( in, line ) )
   {
      ++line_no;
      if( line.rfind( "\\Problem name:", 0 ) == 0 )
      {
         auto tokens = split( line.substr( 14 ) );
         if( tokens.size() == 1 )
            name = tokens[0];
         continue;
      }
      if( line.empty() || line[0] == '\\' )
         continue;
      auto tokens = split( line );
      if( tokens.empty() )
         continue;
      if( ended )
         throw ParseError( "LP line " + std::to_string( line_no ) + ": content after End" );
      if( !std::isspace( static_cast<unsigned char>( line[0] ) ) )
      {
         std::string header = line;
         while( !header.empty() && std::isspace( static_cast<unsigned char>( header.back() ) ) )
            header.pop_back();
         if( header == "End" )
         {
            ended = true;
            continue;
         }
         if( header != "Minimize" && header != "Subject To" && header != "Bounds" &&
             header != "Binaries" && header != "Generals" )
            throw ParseError( "LP line " + std::to_string( line_no ) + ": unknown section " +
                              header );
         if( sections.count( header ) )
            throw ParseError( "LP line " + std::to_string( line_no ) + ": repeated section " +
                              header );
         section = header;
         sections[section];
         continue;
      }
      if( section.empty() )
         throw ParseError( "LP line " + std::to_string( line_no ) + ": data outside a section" );
      sections[section].push_back( { line_no, std::move( tokens ) } );
   }
   if( !ended )
      throw ParseError( "LP document has no End" );
   if( !sections.count( "Minimize" ) )
      throw ParseError( "LP document has no Minimize section" );

   MipModel model( name );
   std::vector<MipVariable> variables;
   std::unordered_map<std::string, std::size_t> index;

   // Bounds declare every variable, in order.
   for( const Line& entry : sections["Bounds"] )
   {
      const auto& t = entry.tokens;
      MipVariable var;
      if( t.size() == 3 && t[1] == ">=" )
      {
         var.name = t[0];
         var.lower = parse_integer( t[2], entry.number );
      }
      else if( t.size() == 5 && t[1] == "<=" && t[3] == "<=" )
      {
         var.name = t[2];
         var.lower = parse_integer( t[0], entry.number );
         var.upper = parse_integer( t[4], entry.number );
      }
      else
         throw ParseError( "LP line " + std::to_string( entry.number ) + ": malformed bound" );
      if( !index.emplace( var.name, variables.size() ).second )
         throw ParseError( "LP line " + std::to_string( entry.number ) + ": duplicate bound for " +
                           var.name );
      variables.push_back( std::move( var ) );
   }
   auto lookup = [&]( const std::string& var, std::size_t number )
   {
      auto it = index.find( var );
      if( it == index.end() )
         throw ParseError( "LP line " + std::to_string( number ) + ": undeclared variable " + var );
      return it->second;
   };
   for( const char* kind : { "Binaries", "Generals" } )
      for( const Line& entry : sections[kind] )
         for( const std::string& var : entry.tokens )
            variables[lookup( var, entry.number )].integer = true;

   // Flatten a section into (token, line) pairs so that expressions may wrap.
   auto flatten = [&]( const char* which )
   {
      std::vector<std::pair<std::string, std::size_t>> tokens;
      for( const Line& entry : sections[which] )
         for( const std::string& token : entry.tokens )
            tokens.emplace_back( token, entry.number );
      return tokens;
   };

   // Reads "[+|-] coef var" terms until a sense operator or the end.
   auto read_terms = [&]( const std::vector<std::pair<std::string, std::size_t>>& tokens,
                          std::size_t& pos )
   {
      std::vector<std::pair<std::size_t, std::int64_t>> terms;
      while( pos < tokens.size() )
      {
         const std::string& token = tokens[pos].first;
         if( token == "<=" || token == ">=" || token == "=" )
            break;
         if( token.back() == ':' )
            break;
         bool negative = false;
         if( token == "+" || token == "-" )
         {
            negative = token == "-";
            ++pos;
         }
         if( pos + 1 >= tokens.size() )
            throw ParseError( "LP line " + std::to_string( tokens.back().second ) +
                              ": truncated term" );
         std::int64_t coef = parse_integer( tokens[pos].first, tokens[pos].second );
         if( negative )
            coef = -coef;
         terms.emplace_back( lookup( tokens[pos + 1].first, tokens[pos + 1].second ), coef );
         pos += 2;
      }
      return terms;
   };

   auto objective_tokens = flatten( "Minimize" );
   if( objective_tokens.empty() || objective_tokens[0].first != std::string( kObjectiveRow ) + ":" )
      throw ParseError( "LP objective must be labelled \"cost:\"" );
   std::size_t pos = 1;
   for( const auto& [var, coef] : read_terms( objective_tokens, pos ) )
      variables[var].objective = coef;
   if( pos != objective_tokens.size() )
      throw ParseError( "LP line " + std::to_string( objective_tokens[pos].second ) +
                        ": unexpected token in objective" );

   for( MipVariable& var : variables )
      model.add_variable( std::move( var ) );

   auto row_tokens = flatten( "Subject To" );
   pos = 0;
   while( pos < row_tokens.size() )
   {
      const auto& [label, number] = row_tokens[pos];
      if( label.size() < 2 || label.back() != ':' )
         throw ParseError( "LP line " + std::to_string( number ) + ": expected a row label" );
      MipRow row;
      row.name = label.substr( 0, label.size() - 1 );
      ++pos;
      row.coefficients = read_terms( row_tokens, pos );
      if( pos + 1 >= row_tokens.size() )
         throw ParseError( "LP line " + std::to_string( number ) + ": row without sense" );
      const std::string& op = row_tokens[pos].first;
      if( op == "<=" )
         row.sense = RowSense::less_equal;
      else if( op == ">=" )
         row.sense = RowSense::greater_equal;
      else if( op == "=" )
         row.sense = RowSense::equal;
      else
         throw ParseError( "LP line " + std::to_string( row_tokens[pos].second ) +
                           ": unknown row sense " + op );
      row.rhs = parse_integer( row_tokens[pos + 1].first, row_tokens[pos + 1].second );
      pos += 2;
      model.add_row( std::move( row ) );
   }
   return model;
}

} // namespace

std::string
emit( const MipModel& model, MipFormat format )
{
   check_objective_name( model );
   return format == MipFormat::mps ? emit_mps( model ) : emit_lp( model );
}

MipModel
parse_emitted( std::string_view text, MipFormat format )
{
   return format == MipFormat::mps ? parse_mps( text ) : parse_lp( text );
}

} // namespace lotlab
