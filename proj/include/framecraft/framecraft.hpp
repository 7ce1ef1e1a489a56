/**
 * @file framecraft.hpp
 * @brief Umbrella header.
 */
#pragma once

#include "framecraft/core.hpp"
#include "framecraft/majorization.hpp"
#include "framecraft/frame.hpp"
#include "framecraft/potentials.hpp"
#include "framecraft/synthesis.hpp"
#include "framecraft/perturb.hpp"
#include "framecraft/cgu.hpp"
#include "framecraft/json_io.hpp"
