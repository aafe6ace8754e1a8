#pragma once

// Umbrella header for the library. The command-line front end lives in
// diffkde/cli.hpp and is not included here.

#include "diffkde/assembly.hpp"
#include "diffkde/csv.hpp"
#include "diffkde/diagnostics.hpp"
#include "diffkde/error.hpp"
#include "diffkde/mesh.hpp"
#include "diffkde/oracle.hpp"
#include "diffkde/sample.hpp"
#include "diffkde/solver.hpp"
#include "diffkde/tridiagonal.hpp"
#include "diffkde/version.hpp"
