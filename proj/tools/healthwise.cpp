/*
* Copyright 2026 healthwise contributors
*/
// SPDX-License-Identifier: Apache-2.0

#include "healthwise/cli.h"

#include <iostream>

int main(int argc, char** argv)
{
	std::vector<std::string> args(argv, argv + argc);
	return healthwise::cli::run(args, std::cout, std::cerr);
}
