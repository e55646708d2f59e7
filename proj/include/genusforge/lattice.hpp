#pragma once

#include "genusforge/lattice/builtins.hpp"
#include "genusforge/lattice/enumerate.hpp"
#include "genusforge/lattice/json.hpp"
#include "genusforge/lattice/lattice.hpp"
#include "genusforge/lattice/roots.hpp"
