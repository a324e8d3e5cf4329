// qtele.hpp
// Umbrella header.

#pragma once

#include "qmat.hpp"
#include "states.hpp"
#include "channels.hpp"
#include "optimize.hpp"
#include "measures.hpp"
#include "teleport.hpp"
