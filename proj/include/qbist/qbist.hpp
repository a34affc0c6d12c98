#pragma once

// Umbrella header: the SIC probability representation of finite-dimensional
// quantum states and the geometric criteria carving quantum state space out
// of the probability simplex.

#include "qbist/types.hpp"
#include "qbist/random.hpp"
#include "qbist/weyl_heisenberg.hpp"
#include "qbist/sic_system.hpp"
#include "qbist/fiducial_search.hpp"
#include "qbist/representation.hpp"
#include "qbist/structure_constants.hpp"
#include "qbist/measurement.hpp"
#include "qbist/geometry.hpp"
#include "qbist/search.hpp"
#include "qbist/io.hpp"
#include "qbist/report.hpp"
#include "qbist/reproduce.hpp"
