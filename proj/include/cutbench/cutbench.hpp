#pragma once

// Umbrella header for the whole workbench library.

#include "cutbench/brute_force.hpp"
#include "cutbench/cd_report.hpp"
#include "cutbench/cga.hpp"
#include "cutbench/dmrg.hpp"
#include "cutbench/errors.hpp"
#include "cutbench/friedman.hpp"
#include "cutbench/ga_common.hpp"
#include "cutbench/gaoc.hpp"
#include "cutbench/generate.hpp"
#include "cutbench/gnn.hpp"
#include "cutbench/graph.hpp"
#include "cutbench/graph_io.hpp"
#include "cutbench/hamiltonian.hpp"
#include "cutbench/lanczos.hpp"
#include "cutbench/measure.hpp"
#include "cutbench/memtrack.hpp"
#include "cutbench/metrics.hpp"
#include "cutbench/mpo.hpp"
#include "cutbench/mps.hpp"
#include "cutbench/presets.hpp"
#include "cutbench/qubo.hpp"
#include "cutbench/rng.hpp"
#include "cutbench/suite.hpp"
