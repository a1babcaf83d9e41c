#pragma once

#include "sonic/errors.hpp"
#include "sonic/units.hpp"
#include "sonic/flow_profile.hpp"
#include "sonic/acoustic_geometry.hpp"
#include "sonic/squeeze_map.hpp"
#include "sonic/fock_space.hpp"
#include "sonic/fock_json.hpp"
#include "sonic/teleport.hpp"
#include "sonic/sweep.hpp"
#include "sonic/config.hpp"
#include "sonic/pipeline.hpp"
