#pragma once

#include "lsg/bounds.hpp"
#include "lsg/cliques.hpp"
#include "lsg/connectivity.hpp"
#include "lsg/experiment.hpp"
#include "lsg/graph.hpp"
#include "lsg/latin.hpp"
#include "lsg/patterns.hpp"
#include "lsg/rng.hpp"
#include "lsg/spectral.hpp"
