#pragma once

#include "garchlab/csv.hpp"
#include "garchlab/detrend.hpp"
#include "garchlab/ensemble.hpp"
#include "garchlab/errors.hpp"
#include "garchlab/fit.hpp"
#include "garchlab/likelihood.hpp"
#include "garchlab/params.hpp"
#include "garchlab/seed.hpp"
#include "garchlab/simulate.hpp"
#include "garchlab/trend.hpp"
