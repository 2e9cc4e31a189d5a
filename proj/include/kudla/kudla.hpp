#pragma once

#include "core.hpp"
#include "special_fn.hpp"
#include "lattice.hpp"
#include "qseries.hpp"
#include "green.hpp"
#include "forms.hpp"
#include "theta.hpp"
#include "heights.hpp"
