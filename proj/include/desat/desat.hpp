#pragma once

// Sensor-deception attack toolkit for partially observed discrete event
// systems: observers, attacker/operator tracking, attack structures, the
// supremal stealthy substructure, harm analysis, and live attack sessions.

#include "desat/attack.hpp"
#include "desat/attack_structure.hpp"
#include "desat/dfa.hpp"
#include "desat/dot.hpp"
#include "desat/dual_observers.hpp"
#include "desat/errors.hpp"
#include "desat/estimate.hpp"
#include "desat/event.hpp"
#include "desat/harm.hpp"
#include "desat/json_io.hpp"
#include "desat/observer.hpp"
#include "desat/plant.hpp"
#include "desat/session.hpp"
#include "desat/supremal.hpp"
