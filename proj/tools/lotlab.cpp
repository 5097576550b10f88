// Copyright 2026 The lotlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "lotlab/cli.hpp"

#include <iostream>

int
main( int argc, char** argv )
{
   std::vector<std::string> args( argv + 1, argv + argc );
   return lotlab::run_cli( args, std::cout, std::cerr );
}
