#pragma once

// Everything except serialization.hpp, which needs nlohmann/json.

#include "errors.hpp"
#include "precision.hpp"
#include "modular_group.hpp"
#include "halfplane.hpp"
#include "lattice_torus.hpp"
#include "modular_forms.hpp"
#include "legendre.hpp"
#include "universal_family.hpp"
#include "git_toy.hpp"
#include "tessellation.hpp"
