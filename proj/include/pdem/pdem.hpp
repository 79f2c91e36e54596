#pragma once

#include "pdem/errors.hpp"
#include "pdem/specfun.hpp"
#include "pdem/jet.hpp"
#include "pdem/interval.hpp"
#include "pdem/quadrature.hpp"
#include "pdem/tridiagonal.hpp"
#include "pdem/diagnostics.hpp"
#include "pdem/refmodels.hpp"
#include "pdem/massprofiles.hpp"
#include "pdem/pct.hpp"
#include "pdem/published_forms.hpp"
#include "pdem/verify.hpp"
