#pragma once

// Umbrella header.

#include "hypls/gamma.hpp"
#include "hypls/constants.hpp"
#include "hypls/roots.hpp"
#include "hypls/quadrature.hpp"
#include "hypls/geometry.hpp"
#include "hypls/profile.hpp"
#include "hypls/families.hpp"
#include "hypls/lorentz.hpp"
#include "hypls/rearrangement.hpp"
#include "hypls/report.hpp"
#include "hypls/verifiers.hpp"
#include "hypls/battery.hpp"
#include "hypls/cli.hpp"
