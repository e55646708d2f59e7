#pragma once

#include "genusforge/modcat/data.hpp"
#include "genusforge/modcat/json.hpp"
#include "genusforge/modcat/relations.hpp"
#include "genusforge/modcat/voa.hpp"
