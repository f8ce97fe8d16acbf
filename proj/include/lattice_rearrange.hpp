#pragma once

#include "lattice_rearrange/core.hpp"
#include "lattice_rearrange/graphs.hpp"
#include "lattice_rearrange/lor.hpp"
#include "lattice_rearrange/move_cycles.hpp"
#include "lattice_rearrange/por.hpp"
#include "lattice_rearrange/lattice2d.hpp"
#include "lattice_rearrange/oracle.hpp"
#include "lattice_rearrange/gen.hpp"
#include "lattice_rearrange/io.hpp"
#include "lattice_rearrange/bench.hpp"
