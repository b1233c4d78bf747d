#pragma once

#include "hvgplane/series.hpp"
#include "hvgplane/maps.hpp"
#include "hvgplane/noise.hpp"
#include "hvgplane/systems.hpp"
#include "hvgplane/graph.hpp"
#include "hvgplane/quantifiers.hpp"
#include "hvgplane/io.hpp"
#include "hvgplane/experiment.hpp"
