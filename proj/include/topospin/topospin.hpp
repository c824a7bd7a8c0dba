// Convenience umbrella: the whole library.
#pragma once

#include "topospin/cupcap.hpp"
#include "topospin/diagram.hpp"
#include "topospin/doublewell.hpp"
#include "topospin/dynamics.hpp"
#include "topospin/hamiltonian.hpp"
#include "topospin/json_io.hpp"
#include "topospin/numerics.hpp"
#include "topospin/tl_algebra.hpp"
#include "topospin/topo_basis.hpp"
#include "topospin/verification.hpp"
