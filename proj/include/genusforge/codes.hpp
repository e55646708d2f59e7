#pragma once

#include "genusforge/codes/code.hpp"
#include "genusforge/codes/json.hpp"
#include "genusforge/codes/lexicode.hpp"
#include "genusforge/codes/sigma.hpp"
