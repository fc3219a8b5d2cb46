#pragma once

#include "camfolio/config.hpp"
#include "camfolio/copula.hpp"
#include "camfolio/distributions.hpp"
#include "camfolio/errors.hpp"
#include "camfolio/format.hpp"
#include "camfolio/harness.hpp"
#include "camfolio/matrix.hpp"
#include "camfolio/parallel.hpp"
#include "camfolio/quality.hpp"
#include "camfolio/rng.hpp"
#include "camfolio/runner.hpp"
#include "camfolio/scenario.hpp"
#include "camfolio/selection.hpp"
#include "camfolio/simulate.hpp"
#include "camfolio/solvers.hpp"
