#pragma once

#include "genusforge/quadspace/gauss.hpp"
#include "genusforge/quadspace/isometry.hpp"
#include "genusforge/quadspace/json.hpp"
#include "genusforge/quadspace/space.hpp"
#include "genusforge/quadspace/subgroups.hpp"
