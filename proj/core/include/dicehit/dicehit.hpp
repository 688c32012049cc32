#pragma once

#include "dicehit/decimal.hpp"
#include "dicehit/engine.hpp"
#include "dicehit/errors.hpp"
#include "dicehit/montecarlo.hpp"
#include "dicehit/pgf_text.hpp"
#include "dicehit/poly.hpp"
#include "dicehit/predicates.hpp"
#include "dicehit/stats.hpp"
