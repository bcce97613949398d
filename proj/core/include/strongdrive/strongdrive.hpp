#pragma once

#include "strongdrive/analysis.hpp"
#include "strongdrive/errors.hpp"
#include "strongdrive/hamiltonians.hpp"
#include "strongdrive/linalg.hpp"
#include "strongdrive/phase_integral.hpp"
#include "strongdrive/propagator.hpp"
#include "strongdrive/strong_coupling.hpp"
