#ifndef SIGNCUT_SIGNCUT_HPP
#define SIGNCUT_SIGNCUT_HPP

#include "signcut/construct.hpp"
#include "signcut/discrete.hpp"
#include "signcut/error.hpp"
#include "signcut/graph_io.hpp"
#include "signcut/metrics.hpp"
#include "signcut/sgraph.hpp"
#include "signcut/spectral.hpp"
#include "signcut/synth.hpp"

#endif  // SIGNCUT_SIGNCUT_HPP
