#pragma once

// Umbrella header.

#include "algebraic.hpp"
#include "baker.hpp"
#include "bound_engine.hpp"
#include "dominance.hpp"
#include "errors.hpp"
#include "height.hpp"
#include "instance.hpp"
#include "interval.hpp"
#include "parallel.hpp"
#include "polynomial.hpp"
#include "recurrence.hpp"
#include "report_io.hpp"
#include "roots.hpp"
#include "search.hpp"
